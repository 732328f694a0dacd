#![no_main]
use libfuzzer_sys::fuzz_target;

use legreuel::parser::parse_script;

fuzz_target!(|data: &[u8]| {
    if let Ok(src) = std::str::from_utf8(data) {
        if let Ok(ast) = parse_script(src) {
            // Canonical text must parse back to itself.
            let once = ast.to_string();
            let again = parse_script(&once).expect("canonical text parses");
            assert_eq!(once, again.to_string());
        }
    }
});
