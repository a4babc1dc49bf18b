#![no_main]

use libfuzzer_sys::fuzz_target;
use markedgroups::words::{format_word, parse_word};

// First byte picks the arity, the rest is the word.
fuzz_target!(|data: &[u8]| {
    let Some((&head, rest)) = data.split_first() else {
        return;
    };
    let arity = head as usize % 26 + 1;
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    if let Ok(w) = parse_word(text, arity) {
        let again = parse_word(&format_word(&w), arity).expect("formatted word parses");
        assert_eq!(again, w);
    }
});
