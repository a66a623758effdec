#![no_main]

use homnalg::exactla::{format_scalar, parse_scalar};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Some(q) = parse_scalar(text) {
        assert_eq!(parse_scalar(&format_scalar(&q)), Some(q));
    }
});
