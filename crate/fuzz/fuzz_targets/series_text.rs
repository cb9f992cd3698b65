#![no_main]

use conway_moonshine::QSeries;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(s) = QSeries::parse_text(text) {
        let again = QSeries::parse_text(&s.to_text()).expect("own text parses");
        assert!(again.strict_eq(&s).unwrap());
    }
});
