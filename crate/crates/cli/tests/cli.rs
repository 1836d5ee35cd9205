use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn data(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data").join(rel)
}

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_devspell"))
        .args(args)
        .env_remove("DEVSPELL_CONFIG")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    // The process may exit before reading its input.
    let _ = child.stdin.take().unwrap().write_all(stdin.as_bytes());
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn mock_table() -> String {
    data("mock/worked_example.json").to_str().unwrap().to_string()
}

#[test]
fn correct_with_mock_table() {
    let o = run(&["correct", "--mock-table", &mock_table()], "राम ने खाना रया");
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "राम ने खाना खाया");
}

#[test]
fn correct_preserves_surroundings() {
    let o = run(&["correct", "--mock-table", &mock_table()], "राम ने खाना रया\n");
    assert_eq!(stdout(&o), "राम ने खाना खाया\n");
}

#[test]
fn audit_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("audit.json");
    let o = run(
        &["correct", "--mock-table", &mock_table(), "--audit", path.to_str().unwrap()],
        "राम ने खाना रया",
    );
    assert_eq!(o.status.code(), Some(0));
    let audit: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let c = &audit["corrections"][0];
    assert_eq!(c["original"], "रया");
    assert_eq!(c["chosen"], "खाया");
    assert_eq!(c["candidates"].as_array().unwrap().len(), 5);
    assert_eq!(audit["source_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn dead_endpoint_exits_three_and_keeps_text() {
    let port = std::net::TcpListener::bind("127.0.0.1:0").unwrap().local_addr().unwrap().port();
    let endpoint = format!("http://127.0.0.1:{port}");
    let o = run(
        &["correct", "--endpoint", &endpoint, "--timeout-ms", "500"],
        "राम ने खाना रया",
    );
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(stdout(&o), "राम ने खाना रया");
    assert!(stderr(&o).contains("रया"));
}

#[test]
fn no_provider_leaves_text() {
    let o = run(&["correct"], "राम ने खाना रया");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "राम ने खाना रया");
}

#[test]
fn detect_lists_oov() {
    let o = run(&["detect"], "राम ने खाना रया। सीता ने कखग खाया।");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0\t3\tरया\n1\t2\tकखग\n");
}

#[test]
fn detect_custom_lexicon() {
    let dir = tempfile::tempdir().unwrap();
    let lex = dir.path().join("words.txt");
    std::fs::write(&lex, "राम\nने\n").unwrap();
    let o = run(&["detect", "--lexicon", lex.to_str().unwrap()], "राम ने खाना");
    assert_eq!(stdout(&o), "0\t2\tखाना\n");
}

#[test]
fn missing_lexicon_exits_one() {
    let o = run(&["detect", "--lexicon", "/no/such/words.txt"], "राम");
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).is_empty());
    assert!(stderr(&o).contains("/no/such/words.txt"));
}

#[test]
fn translit_both_ways() {
    let o = run(&["translit", "to-wx"], "राम ने खाना रया\nसीता\n");
    assert_eq!(stdout(&o), "rAma ne KAnA rayA\nsIwA\n");
    let o = run(&["translit", "from-wx"], "rAma ne KAnA rayA\nsIwA\n");
    assert_eq!(stdout(&o), "राम ने खाना रया\nसीता\n");
}

#[test]
fn malformed_wx_exits_two_with_line() {
    let o = run(&["translit", "from-wx"], "rAma\n^ZZ\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"));
}

#[test]
fn non_utf8_input_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.txt");
    std::fs::write(&f, [0x72, 0xff, 0x41]).unwrap();
    let o = run(&["translit", "to-wx", f.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn eval_empty_gold() {
    let dir = tempfile::tempdir().unwrap();
    let gold = dir.path().join("gold.tsv");
    std::fs::write(&gold, "").unwrap();
    let o = run(&["eval", gold.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().skip(1).take(5).collect();
    for (i, k) in [1, 3, 5, 10, 20].into_iter().enumerate() {
        assert!(rows[i].starts_with(&format!("{}\t{k}\t0.00\t", i + 1)), "{}", rows[i]);
    }
    assert!(stderr(&o).contains("no usable pairs"));
}

#[test]
fn eval_json() {
    let dir = tempfile::tempdir().unwrap();
    let gold = dir.path().join("gold.tsv");
    std::fs::write(&gold, "राम ने खाना रया\tराम ने खाना खाया\nएक दो\tएक\n").unwrap();
    let o = run(
        &["eval", gold.to_str().unwrap(), "--mock-table", &mock_table(), "--ks", "1,3", "--json"],
        "",
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["ks"], serde_json::json!([1, 3]));
    assert_eq!(v["accuracy"], serde_json::json!([1.0, 1.0]));
    assert_eq!(v["warnings"], 1);
    assert!(stderr(&o).contains(":2:"));
}

#[test]
fn eval_rejects_zero_k() {
    let o = run(&["eval", "/dev/null", "--ks", "0,3"], "");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn config_file_and_override() {
    let dir = tempfile::tempdir().unwrap();
    let lex = dir.path().join("words.txt");
    std::fs::write(&lex, "राम\nने\nखाना\n").unwrap();
    let cfg = dir.path().join("devspell.conf");
    std::fs::write(&cfg, format!("# test\nlexicon_path = \"{}\"\nmlm.top_k = 5\n", lex.display())).unwrap();

    let o = run(&["--config", cfg.to_str().unwrap(), "detect"], "राम ने खाना");
    assert_eq!(stdout(&o), "");

    // The flag wins over the file.
    let o = run(&["--config", cfg.to_str().unwrap(), "detect", "--top-k", "0"], "राम");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bad_config_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("devspell.conf");
    std::fs::write(&cfg, "colour = red\n").unwrap();
    let o = run(&["--config", cfg.to_str().unwrap(), "detect"], "राम");
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("colour"));
}
