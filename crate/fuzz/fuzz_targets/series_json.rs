#![no_main]

use conway_moonshine::QSeries;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(s) = QSeries::from_json(text) {
        let again = QSeries::from_json(&s.to_json().to_string()).expect("own JSON parses");
        assert!(again.strict_eq(&s).unwrap());
    }
});
