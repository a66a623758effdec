#![no_main]

use homnalg::format::{format_lincomb, parse_lincomb};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let labels: Vec<String> = ["e1", "e2", "e3", "x.y"].iter().map(|s| s.to_string()).collect();
    if let Ok(v) = parse_lincomb(text, &labels) {
        let printed = format_lincomb(&v, &labels);
        assert_eq!(parse_lincomb(&printed, &labels).expect("printed lincombs parse"), v);
    }
});
