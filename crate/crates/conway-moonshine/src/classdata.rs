//! The embedded table of fixed-point-free classes of `Co_0`.
//!
//! Each row gives the `Co_0` and `Co_1` class names, the Frame shape, the
//! spinor super trace `C_g`, the label of the invariance group of the twisted
//! trace function, and the corresponding monster class. The data lives in
//! `data/classes.csv` and is parsed once on first use.

use std::collections::HashMap;
use std::sync::Mutex;

use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frameshape::FrameShape;
use crate::modgroups::GroupLabel;
use crate::numbers::Rational;

const TABLE_CSV: &str = include_str!("../data/classes.csv");
const NU_SIGN_CSV: &str = include_str!("../data/nu_sign_corrections.csv");

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugacyClassRecord {
    pub co0: String,
    pub co1: String,
    pub frame_shape: FrameShape,
    /// Tabulated super trace of the canonical lift on the spinor module.
    pub c_hat: i64,
    pub label: String,
    pub monster: String,
    /// Sign relating the half-angle convention for `nu` to the tabulated
    /// `c_hat` (see [`crate::cliffordcm::spinor_supertrace_closed`]).
    pub nu_sign: i8,
}

#[derive(Deserialize)]
struct Row {
    co0: String,
    co1: String,
    frame_shape: String,
    c_hat_g: i64,
    label: String,
    monster: String,
}

#[derive(Deserialize)]
struct SignRow {
    co0: String,
    nu_sign: i8,
}

/// Parse registry CSV text with columns
/// `co0,co1,frame_shape,c_hat_g,label,monster`.
pub fn parse_registry(text: &str) -> Result<Vec<ConjugacyClassRecord>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut out = Vec::new();
    for (i, row) in rdr.deserialize::<Row>().enumerate() {
        let line = i + 2;
        let row = row.map_err(|e| {
            Error::parse(
                "registry CSV",
                e.position().map(|p| p.byte() as usize).unwrap_or(0),
                e.to_string(),
            )
        })?;
        let frame_shape = FrameShape::parse(&row.frame_shape).map_err(|e| {
            Error::invalid("registry CSV", format!("line {line}: {e}"))
        })?;
        GroupLabel::parse(&row.label)
            .map_err(|e| Error::invalid("registry CSV", format!("line {line}: {e}")))?;
        if row.co0.is_empty() {
            return Err(Error::invalid("registry CSV", format!("line {line}: empty class name")));
        }
        out.push(ConjugacyClassRecord {
            co0: row.co0,
            co1: row.co1,
            frame_shape,
            c_hat: row.c_hat_g,
            label: row.label,
            monster: row.monster,
            nu_sign: 1,
        });
    }
    Ok(out)
}

fn parse_signs(text: &str) -> Result<HashMap<String, i8>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut out = HashMap::new();
    for row in rdr.deserialize::<SignRow>() {
        let row = row.map_err(|e| Error::parse("sign CSV", 0, e.to_string()))?;
        if row.nu_sign != 1 && row.nu_sign != -1 {
            return Err(Error::invalid("sign CSV", format!("{}: sign must be +-1", row.co0)));
        }
        out.insert(row.co0, row.nu_sign);
    }
    Ok(out)
}

static REGISTRY: Lazy<Vec<ConjugacyClassRecord>> = Lazy::new(|| {
    let mut rows = parse_registry(TABLE_CSV).expect("embedded table parses");
    let signs = parse_signs(NU_SIGN_CSV).expect("embedded sign table parses");
    for r in rows.iter_mut() {
        if let Some(&s) = signs.get(&r.co0) {
            r.nu_sign = s;
        }
    }
    rows
});

pub fn registry() -> &'static [ConjugacyClassRecord] {
    &REGISTRY
}

pub fn lookup(name: &str) -> Result<&'static ConjugacyClassRecord> {
    if let Some(r) = REGISTRY.iter().find(|r| r.co0 == name) {
        return Ok(r);
    }
    let up = name.to_ascii_uppercase();
    let mut suggestions: Vec<String> = REGISTRY
        .iter()
        .filter(|r| r.co0 == up || edit_distance(&r.co0, name) <= 1)
        .map(|r| r.co0.clone())
        .collect();
    suggestions.truncate(6);
    Err(Error::NotFound {
        name: name.to_string(),
        suggestions,
    })
}

fn edit_distance(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    for i in 1..=a.len() {
        let mut cur = vec![i; b.len() + 1];
        for j in 1..=b.len() {
            let sub = prev[j - 1] + usize::from(a[i - 1] != b[j - 1]);
            cur[j] = sub.min(prev[j] + 1).min(cur[j - 1] + 1);
        }
        prev = cur;
    }
    prev[b.len()]
}

/// The data of `-g` for a registry row: its Frame shape and the super trace
/// of the matching lift, solved from the eta identity relating `g` and `-g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partner {
    pub frame_shape: FrameShape,
    pub c_value: String,
    pub provenance: &'static str,
}

static PARTNERS: Lazy<Mutex<HashMap<String, (FrameShape, Rational)>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Frame shape of `-g` and the solved scalar `C` for its lift.
pub fn derived_partner(rec: &ConjugacyClassRecord) -> Result<(FrameShape, Rational)> {
    if let Some(p) = PARTNERS.lock().unwrap().get(&rec.co0) {
        return Ok(p.clone());
    }
    let (c, report) = crate::moonshine::solve_c_neg(&rec.frame_shape, rec.c_hat, 25)?;
    if !report.pass {
        return Err(Error::Verification(format!(
            "partner of {} does not satisfy the eta identity",
            rec.co0
        )));
    }
    let p = (rec.frame_shape.negate(), c);
    PARTNERS.lock().unwrap().insert(rec.co0.clone(), p.clone());
    Ok(p)
}

impl ConjugacyClassRecord {
    pub fn group_label(&self) -> GroupLabel {
        GroupLabel::parse(&self.label).expect("registry labels are validated at load")
    }

    pub fn partner(&self) -> Result<Partner> {
        let (s, c) = derived_partner(self)?;
        Ok(Partner {
            frame_shape: s,
            c_value: c.to_string(),
            provenance: "derived",
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "co0": self.co0,
            "co1": self.co1,
            "frame_shape": self.frame_shape.to_string(),
            "c_hat_g": self.c_hat,
            "label": self.label,
            "monster": self.monster,
        })
    }
}

/// Re-emit rows in the CSV schema of the embedded table.
pub fn to_csv(rows: &[ConjugacyClassRecord]) -> String {
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    w.write_record(["co0", "co1", "frame_shape", "c_hat_g", "label", "monster"])
        .expect("in-memory write");
    for r in rows {
        w.write_record([
            r.co0.as_str(),
            r.co1.as_str(),
            &r.frame_shape.to_string(),
            &r.c_hat.to_string(),
            r.label.as_str(),
            r.monster.as_str(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_examples() {
        let a = lookup("2A").unwrap();
        assert_eq!(a.frame_shape.to_string(), "2^24/1^24");
        assert_eq!(a.c_hat, 4096);
        assert_eq!(a.label, "2-");
        assert_eq!(a.monster, "2B");

        let c = lookup("6C").unwrap();
        assert_eq!(c.frame_shape, FrameShape::parse("1^3 6^9/2^3 3^9").unwrap());
        assert_eq!(c.c_hat, -8);
        assert_eq!(c.label, "6-");
        assert_eq!(c.monster, "6E");

        match lookup("1Z") {
            Err(Error::NotFound { .. }) => {}
            other => panic!("expected not-found, got {other:?}"),
        }
        match lookup("6c") {
            Err(Error::NotFound { suggestions, .. }) => assert!(suggestions.contains(&"6C".into())),
            other => panic!("expected not-found, got {other:?}"),
        }
    }

    #[test]
    fn table_rows_are_fixed_point_free() {
        assert_eq!(registry().len(), 90);
        for r in registry() {
            assert_eq!(r.frame_shape.fixed_points(), 0, "{}", r.co0);
            assert_ne!(r.c_hat, 0, "{}", r.co0);
        }
    }

    #[test]
    fn csv_round_trip() {
        let text = to_csv(registry());
        let back = parse_registry(&text).unwrap();
        assert_eq!(back.len(), registry().len());
        for (a, b) in back.iter().zip(registry()) {
            assert_eq!(a.co0, b.co0);
            assert_eq!(a.frame_shape, b.frame_shape);
            assert_eq!(a.label, b.label);
        }
    }

    #[test]
    fn malformed_registry_rows() {
        let hdr = "co0,co1,frame_shape,c_hat_g,label,monster\n";
        assert!(parse_registry(&format!("{hdr}2A,1A,2^23/1^24,4096,2-,2B\n")).is_err());
        assert!(parse_registry(&format!("{hdr}2A,1A,2^24/1^24,x,2-,2B\n")).is_err());
        assert!(parse_registry(&format!("{hdr}2A,1A,2^24/1^24,4096,2~,2B\n")).is_err());
        assert_eq!(parse_registry(hdr).unwrap().len(), 0);
    }
}
