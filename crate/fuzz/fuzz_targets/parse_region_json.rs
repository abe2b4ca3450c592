//! Region JSON (`{"n": rank, "cells": [[r, c], …]}`) must never panic the
//! parser, and accepted regions must round-trip through the canonical
//! serialization.

#![no_main]

use libfuzzer_sys::fuzz_target;

use klimm::io::{region_from_json_str, region_to_json_string};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(r) = region_from_json_str(text) {
        let round = region_from_json_str(&region_to_json_string(&r))
            .expect("canonical form reparses");
        assert_eq!(round, r);
    }
});
