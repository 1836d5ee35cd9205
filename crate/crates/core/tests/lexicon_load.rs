use std::io::Write;
use std::time::{Duration, Instant};

use devspell::Lexicon;

/// 470,000 distinct words built from consonant-vowel syllables.
fn big_wordlist() -> String {
    let consonants: Vec<char> = (0x915..=0x939).filter_map(char::from_u32).collect();
    let matras = ['\u{93E}', '\u{93F}', '\u{940}', '\u{941}', '\u{947}', '\u{94B}'];
    let mut out = String::new();
    let mut n = 0usize;
    'outer: for a in &consonants {
        for m in &matras {
            for b in &consonants {
                for c in &consonants {
                    for d in ['\u{902}', '\u{93E}', '\u{940}'] {
                        out.extend([*a, *m, *b, *c, d, '\n']);
                        n += 1;
                        if n == 470_000 {
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    out
}

#[test]
#[cfg_attr(debug_assertions, ignore = "timing budget applies to release builds")]
fn loads_470k_words_quickly() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(big_wordlist().as_bytes()).unwrap();
    let start = Instant::now();
    let lex = Lexicon::load(file.path()).unwrap();
    let took = start.elapsed();
    assert_eq!(lex.len(), 470_000);
    assert!(took < Duration::from_secs(2), "took {took:?}");
}

#[test]
fn big_list_is_exact() {
    let words = big_wordlist();
    let lex = Lexicon::from_text(&words);
    assert_eq!(lex.len(), 470_000);
    assert!(words.lines().take(1000).all(|w| lex.contains(w)));
    assert!(!lex.contains("रया"));
}
