#![no_main]

use libfuzzer_sys::fuzz_target;
use markedgroups::oracles::CayleyTable;

fuzz_target!(|text: &str| {
    if let Ok(t) = CayleyTable::parse(text) {
        let again = CayleyTable::parse(&t.to_string()).expect("formatted table parses");
        assert_eq!(again.entries(), t.entries());
    }
});
