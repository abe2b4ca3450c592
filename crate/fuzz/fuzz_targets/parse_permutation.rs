//! Permutation strings must never panic the parser, and anything the parser
//! accepts must survive a display/parse round trip unchanged.

#![no_main]

use libfuzzer_sys::fuzz_target;

use klimm::perm::Permutation;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(v) = text.parse::<Permutation>() {
        let round: Permutation = v.to_string().parse().expect("display form reparses");
        assert_eq!(round, v);
    }
});
