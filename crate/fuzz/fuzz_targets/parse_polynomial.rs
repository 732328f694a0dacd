#![no_main]
use libfuzzer_sys::fuzz_target;

use legreuel::parser::parse_polynomial;
use legreuel::ring::RingSpec;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    let ring = RingSpec::local(vec!["x", "y", "z"]).unwrap();
    if let Ok(p) = parse_polynomial(src, &ring) {
        assert_eq!(parse_polynomial(&p.to_string(), &ring).unwrap(), p);
    }
});
