#![no_main]

use libfuzzer_sys::fuzz_target;
use markedgroups::engine::Machine;

fuzz_target!(|text: &str| {
    if let Ok(m) = Machine::parse(text) {
        let again = Machine::parse(&m.to_string()).expect("formatted machine parses");
        assert_eq!(again, m);
        m.start().run_for(1_000);
    }
});
