#![no_main]

use homnalg::format::{parse_str, print_document, ParseOptions};
use homnalg::Limits;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    // a small budget keeps pathological arities from stalling the run
    let limits = Limits::new(200_000);
    let lenient = ParseOptions { strict: false, limits };
    let strict = ParseOptions { strict: true, limits };
    let _ = parse_str(text, &strict);
    if let Ok(doc) = parse_str(text, &lenient) {
        let printed = print_document(&doc);
        let again = parse_str(&printed, &lenient).expect("printed documents parse");
        assert!(again == doc, "round trip changed the document");
        assert_eq!(print_document(&again), printed);
    }
});
