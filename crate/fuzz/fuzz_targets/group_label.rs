#![no_main]

use conway_moonshine::modgroups::GroupLabel;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = GroupLabel::parse(text) {
        assert_eq!(GroupLabel::parse(&g.to_string()).expect("display parses"), g);
        let _ = g.involutions();
    }
});
