#![no_main]

use libfuzzer_sys::fuzz_target;
use markedgroups::presentations::FinitePresentation;

fuzz_target!(|text: &str| {
    if let Ok(p) = FinitePresentation::parse(text) {
        let again = FinitePresentation::parse(&p.to_string()).expect("formatted presentation parses");
        assert_eq!(again, p);
    }
});
