use mctag_web::{center_embed_json, fragments_json, recognize_json, scramble_json};

#[test]
fn every_fragment_is_offered_and_parses() {
    let files = fragments_json();
    let files = files.as_object().unwrap();
    assert_eq!(files.len(), 6);
    let fsg = files["fsg_center_m1.mcg"].as_str().unwrap();
    assert_eq!(recognize_json(fsg, "the rat the cat chased ate the cheese")["recognized"], true);
    assert_eq!(recognize_json(fsg, "the rat the cat the dog saw chased ate the cheese")["recognized"], false);
}

#[test]
fn depth_three_matrix_shows_the_crash() {
    let m = scramble_json(3);
    assert_eq!(m["string_count"], 24);
    assert!(m["cooccurrence_count"].as_u64().unwrap() < 24);
    let c = center_embed_json(2, 3);
    assert_eq!(c["reports"][0]["crash_depth"], 3);
}
