#![no_main]

use conway_moonshine::CycNumber;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(c) = CycNumber::parse(text) {
        assert_eq!(CycNumber::parse(&c.to_string()).expect("display parses"), c);
    }
});
