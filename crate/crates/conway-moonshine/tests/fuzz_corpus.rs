//! Replays the checked-in fuzz corpus through the same round-trip checks the
//! fuzz targets run.

use std::fs;
use std::path::PathBuf;

use conway_moonshine::classdata;
use conway_moonshine::modgroups::GroupLabel;
use conway_moonshine::{CycNumber, FrameShape, QSeries};

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, String)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            (p.display().to_string(), fs::read_to_string(&p).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn frame_shape_seeds() {
    for (p, t) in seeds("frameshape_parse") {
        let s = FrameShape::parse(&t).unwrap_or_else(|e| panic!("{p}: {e}"));
        assert_eq!(FrameShape::parse(&s.to_string()).unwrap(), s);
    }
    for (p, t) in seeds("frameshape_json") {
        let s = FrameShape::from_json(&t).unwrap_or_else(|e| panic!("{p}: {e}"));
        assert_eq!(FrameShape::from_json(&s.to_json().to_string()).unwrap(), s);
    }
}

#[test]
fn group_label_seeds() {
    for (p, t) in seeds("group_label") {
        let g = GroupLabel::parse(&t).unwrap_or_else(|e| panic!("{p}: {e}"));
        assert_eq!(GroupLabel::parse(&g.to_string()).unwrap(), g);
    }
}

#[test]
fn series_seeds() {
    for (p, t) in seeds("series_text") {
        let s = QSeries::parse_text(&t).unwrap_or_else(|e| panic!("{p}: {e}"));
        assert!(QSeries::parse_text(&s.to_text()).unwrap().strict_eq(&s).unwrap());
    }
    for (p, t) in seeds("series_json") {
        let s = QSeries::from_json(&t).unwrap_or_else(|e| panic!("{p}: {e}"));
        assert!(QSeries::from_json(&s.to_json().to_string()).unwrap().strict_eq(&s).unwrap());
    }
}

#[test]
fn cyc_seeds() {
    for (p, t) in seeds("cyc_text") {
        let c = CycNumber::parse(&t).unwrap_or_else(|e| panic!("{p}: {e}"));
        assert_eq!(CycNumber::parse(&c.to_string()).unwrap(), c);
    }
    for (p, t) in seeds("cyc_json") {
        let c = CycNumber::from_json(&t).unwrap_or_else(|e| panic!("{p}: {e}"));
        assert_eq!(CycNumber::from_json(&c.to_json().to_string()).unwrap(), c);
    }
}

#[test]
fn registry_seeds() {
    for (p, t) in seeds("registry_csv") {
        let rows = classdata::parse_registry(&t).unwrap_or_else(|e| panic!("{p}: {e}"));
        assert_eq!(classdata::parse_registry(&classdata::to_csv(&rows)).unwrap().len(), rows.len());
    }
}
