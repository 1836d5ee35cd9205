//! Browser bindings for the demo page in `www/`.
//!
//! Every export returns a JSON string; failures come back as
//! `{"error": "..."}` rather than as exceptions.

use devspell::{edit_distance, from_wx, to_wx, MockProvider, Pipeline};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn render(v: Value) -> String {
    v.to_string()
}

/// `direction` is `"to-wx"` or `"from-wx"`.
pub fn transliterate_value(text: &str, direction: &str) -> Value {
    match direction {
        "to-wx" => json!({ "output": to_wx(text).as_str() }),
        "from-wx" => match from_wx(text) {
            Ok(s) => json!({ "output": s }),
            Err(e) => json!({ "error": e.to_string(), "offset": e.offset }),
        },
        other => json!({ "error": format!("unknown direction {other:?}") }),
    }
}

/// The full dynamic-programming table between the WX forms of two words.
/// `matrix[i][j]` is the distance between the first `i` characters of `a`
/// and the first `j` of `b`.
pub fn distance_table_value(a: &str, b: &str) -> Value {
    let (wa, wb) = (to_wx(a).into_string(), to_wx(b).into_string());
    let ca: Vec<char> = wa.chars().collect();
    let cb: Vec<char> = wb.chars().collect();
    let mut m = vec![vec![0usize; cb.len() + 1]; ca.len() + 1];
    for (i, row) in m.iter_mut().enumerate() {
        row[0] = i;
    }
    for (j, v) in m[0].iter_mut().enumerate() {
        *v = j;
    }
    for i in 1..=ca.len() {
        for j in 1..=cb.len() {
            let sub = m[i - 1][j - 1] + usize::from(ca[i - 1] != cb[j - 1]);
            m[i][j] = sub.min(m[i - 1][j] + 1).min(m[i][j - 1] + 1);
        }
    }
    json!({
        "a_wx": wa,
        "b_wx": wb,
        "matrix": m,
        "distance": edit_distance(&wa, &wb),
    })
}

/// Corrects `text` with the bundled lexicon and gazetteers. Candidates come
/// from the built-in worked-example table, so only sentences it knows get
/// corrections; everything else is reported as detected but skipped.
pub fn correct_value(text: &str, k: usize) -> Value {
    let pipeline = Pipeline::sample().with_top_k(k.clamp(1, 100));
    let doc = pipeline.correct(text, &MockProvider::worked_example());
    let detected: Vec<Value> = pipeline
        .detect(text)
        .into_iter()
        .map(|(s, e)| json!({ "sentence": s, "index": e.word_index, "surface": e.surface }))
        .collect();
    json!({
        "text": doc.text,
        "detected": detected,
        "audit": doc.audit(),
    })
}

#[wasm_bindgen]
pub fn transliterate(text: &str, direction: &str) -> String {
    render(transliterate_value(text, direction))
}

#[wasm_bindgen(js_name = distanceTable)]
pub fn distance_table(a: &str, b: &str) -> String {
    render(distance_table_value(a, b))
}

#[wasm_bindgen(js_name = correctSentence)]
pub fn correct_sentence(text: &str, k: usize) -> String {
    render(correct_value(text, k))
}
