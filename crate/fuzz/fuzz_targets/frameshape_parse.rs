#![no_main]

use conway_moonshine::FrameShape;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(s) = FrameShape::parse(text) {
        let again = FrameShape::parse(&s.to_string()).expect("canonical form parses");
        assert_eq!(again, s);
    }
});
