#![no_main]

use conway_moonshine::CycNumber;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(c) = CycNumber::from_json(text) {
        assert_eq!(CycNumber::from_json(&c.to_json().to_string()).expect("own JSON parses"), c);
    }
});
