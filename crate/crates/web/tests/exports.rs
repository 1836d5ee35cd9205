use devspell_web::{correct_sentence, distance_table, distance_table_value, transliterate};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn transliterate_both_directions() {
    assert_eq!(parse(transliterate("खाया", "to-wx"))["output"], "KAyA");
    assert_eq!(parse(transliterate("KAyA", "from-wx"))["output"], "खाया");
}

#[test]
fn transliterate_errors_are_json() {
    let v = parse(transliterate("^ZZ", "from-wx"));
    assert!(v["error"].is_string());
    assert_eq!(v["offset"], 0);
    assert!(parse(transliterate("x", "sideways"))["error"].is_string());
}

#[test]
fn table_corner_is_distance() {
    let v = parse(distance_table("खाया", "राया"));
    assert_eq!(v["a_wx"], "KAyA");
    assert_eq!(v["b_wx"], "rAyA");
    assert_eq!(v["distance"], 1);
    assert_eq!(v["matrix"][4][4], 1);
    assert_eq!(v["matrix"][0], serde_json::json!([0, 1, 2, 3, 4]));
}

#[test]
fn table_agrees_with_library() {
    let words = ["खाया", "बनाया", "खिलाया", "लाया", "पकाया", "", "क्ष"];
    for a in words {
        for b in words {
            let v = distance_table_value(a, b);
            let n = v["matrix"].as_array().unwrap().len() - 1;
            let m = v["matrix"][0].as_array().unwrap().len() - 1;
            assert_eq!(v["matrix"][n][m], v["distance"], "{a} {b}");
        }
    }
}

#[test]
fn worked_sentence() {
    let v = parse(correct_sentence("राम ने खाना रया", 10));
    assert_eq!(v["text"], "राम ने खाना खाया");
    assert_eq!(v["detected"][0]["surface"], "रया");
    assert_eq!(v["audit"]["corrections"][0]["chosen"], "खाया");
}

#[test]
fn unknown_sentence_is_left_alone() {
    let v = parse(correct_sentence("सीता ने कखग खाया", 10));
    assert_eq!(v["text"], "सीता ने कखग खाया");
    assert_eq!(v["audit"]["skipped"][0]["original"], "कखग");
}
