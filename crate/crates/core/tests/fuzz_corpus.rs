//! Replays the checked-in fuzz seeds with the invariants the fuzz targets assert.

use std::fs;
use std::path::PathBuf;

use homnalg::exactla::{format_scalar, parse_scalar};
use homnalg::format::{format_lincomb, parse_lincomb, parse_str, print_document, ParseOptions};

fn seeds(target: &str) -> Vec<(PathBuf, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .map(|p| {
            let text = fs::read_to_string(&p).unwrap();
            (p, text)
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn hna_seeds_round_trip() {
    let lenient = ParseOptions { strict: false, ..ParseOptions::default() };
    for (path, text) in seeds("parse_hna") {
        let doc = parse_str(&text, &lenient).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let printed = print_document(&doc);
        let again = parse_str(&printed, &lenient).unwrap();
        assert!(again == doc, "{}", path.display());
        assert_eq!(print_document(&again), printed);
        assert!(parse_str(&text, &ParseOptions::default()).is_ok(), "{} is not valid", path.display());
    }
}

#[test]
fn lincomb_seeds_round_trip() {
    let labels: Vec<String> = ["e1", "e2", "e3", "x.y"].iter().map(|s| s.to_string()).collect();
    let mut rejected = 0;
    for (_, text) in seeds("parse_lincomb") {
        match parse_lincomb(&text, &labels) {
            Ok(v) => assert_eq!(parse_lincomb(&format_lincomb(&v, &labels), &labels).unwrap(), v),
            Err(_) => rejected += 1,
        }
    }
    // "e1 + -e2" is the deliberate negative: a sign may not follow an operator
    assert_eq!(rejected, 1);
}

#[test]
fn scalar_seeds_round_trip() {
    let mut rejected = 0;
    for (_, text) in seeds("parse_scalar") {
        match parse_scalar(&text) {
            Some(q) => assert_eq!(parse_scalar(&format_scalar(&q)), Some(q)),
            None => rejected += 1,
        }
    }
    // "1/0" and "1.5" are deliberate negatives
    assert_eq!(rejected, 2);
}
