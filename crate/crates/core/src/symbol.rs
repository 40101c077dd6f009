//! Terminal tokens and nonterminal labels.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Characters that have a meaning in the grammar file syntax.
pub const RESERVED: &[char] = &['(', ')', '!', '*', '@', '\''];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolError {
    #[error("empty symbol")]
    Empty,
    #[error("symbol {0:?} contains whitespace")]
    Whitespace(String),
    #[error("symbol {0:?} contains reserved character {1:?}")]
    Reserved(String, char),
}

/// Checks the lexical rules shared by tokens, labels and identifiers.
pub fn check_symbol(s: &str) -> Result<(), SymbolError> {
    if s.is_empty() {
        return Err(SymbolError::Empty);
    }
    if s.chars().any(char::is_whitespace) {
        return Err(SymbolError::Whitespace(s.to_string()));
    }
    if let Some(c) = s.chars().find(|c| RESERVED.contains(c)) {
        return Err(SymbolError::Reserved(s.to_string(), c));
    }
    Ok(())
}

macro_rules! symbol_type {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name(Arc<str>);

        impl $name {
            pub fn new(s: &str) -> Result<Self, SymbolError> {
                check_symbol(s)?;
                Ok($name(Arc::from(s)))
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl std::str::FromStr for $name {
            type Err = SymbolError;
            fn from_str(s: &str) -> Result<Self, Self::Err> {
                $name::new(s)
            }
        }

        impl AsRef<str> for $name {
            fn as_ref(&self) -> &str {
                &self.0
            }
        }
    };
}

symbol_type!(
    /// A terminal symbol, e.g. `the` or `v1`.
    Token
);

symbol_type!(
    /// A nonterminal category such as `S`, `NP` or `VP`.
    Label
);

impl fmt::Debug for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "'{}", self.0)
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Splits a whitespace-separated sentence into tokens.
pub fn tokenize(sentence: &str) -> Result<Vec<Token>, SymbolError> {
    sentence.split_whitespace().map(Token::new).collect()
}

/// Joins tokens with single spaces.
pub fn join_tokens(tokens: &[Token]) -> String {
    tokens.iter().map(Token::as_str).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_reserved_and_whitespace() {
        assert_eq!(Token::new(""), Err(SymbolError::Empty));
        assert!(matches!(Token::new("a b"), Err(SymbolError::Whitespace(_))));
        for c in RESERVED {
            let s = format!("x{c}");
            assert_eq!(Token::new(&s), Err(SymbolError::Reserved(s.clone(), *c)));
        }
        assert!(Label::new("NP").is_ok());
    }

    #[test]
    fn tokenize_splits_on_whitespace() {
        let toks = tokenize("  the dog\tlikes icecream ").unwrap();
        assert_eq!(join_tokens(&toks), "the dog likes icecream");
        assert!(tokenize("a (b").is_err());
    }
}
