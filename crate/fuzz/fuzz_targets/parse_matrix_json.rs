//! Matrix JSON (arrays of integer or "p/q" entries) must never panic the
//! parser, and accepted matrices must round-trip through the canonical
//! serialization.

#![no_main]

use libfuzzer_sys::fuzz_target;

use klimm::io::{matrix_from_json_str, matrix_to_json_string};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(m) = matrix_from_json_str(text) {
        let round = matrix_from_json_str(&matrix_to_json_string(&m))
            .expect("canonical form reparses");
        assert_eq!(round, m);
    }
});
