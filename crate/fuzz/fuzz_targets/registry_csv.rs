#![no_main]

use conway_moonshine::classdata;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(rows) = classdata::parse_registry(text) {
        let again = classdata::parse_registry(&classdata::to_csv(&rows)).expect("own CSV parses");
        assert_eq!(again.len(), rows.len());
    }
});
