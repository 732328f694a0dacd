#![no_main]
use libfuzzer_sys::fuzz_target;

use legreuel::parser::{parse_expr_list, DeclKind};
use legreuel::ring::RingSpec;

fuzz_target!(|data: &[u8]| {
    if let Ok(src) = std::str::from_utf8(data) {
        let ring = RingSpec::global(vec!["x", "y", "z", "t"]).unwrap();
        let names = [("f".to_string(), DeclKind::Poly), ("I".to_string(), DeclKind::Ideal), ("M".to_string(), DeclKind::Matrix)];
        let _ = parse_expr_list(src, &ring, &names);
    }
});
