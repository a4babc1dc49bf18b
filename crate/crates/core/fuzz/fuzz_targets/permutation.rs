#![no_main]

use libfuzzer_sys::fuzz_target;
use markedgroups::oracles::Permutation;

fuzz_target!(|text: &str| {
    if let Ok(p) = Permutation::parse(text) {
        let again = Permutation::parse(&p.to_string()).expect("formatted permutation parses");
        assert_eq!(again, p);
        assert!(p.then(&p.inverse()).expect("same degree").is_identity());
    }
});
