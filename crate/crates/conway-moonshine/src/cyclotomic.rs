//! Exact arithmetic in cyclotomic fields `Q(zeta_N)`.
//!
//! A [`CycNumber`] stores its level `N` and its coordinates in the power basis
//! `1, z, ..., z^(phi(N)-1)` where `z = exp(2 pi i / N)`. Products are reduced
//! modulo the cyclotomic polynomial immediately, so two numbers at the same
//! level are equal exactly when their coordinates are. Mixed-level operations
//! first raise both operands to the least common multiple of the levels.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numbers::{lcm_i64, parse_rational, phi, Rational};

/// Precomputed reduction data for one level.
struct Level {
    phi: usize,
    /// `pow[k]` holds the coordinates of `z^k` for `0 <= k < N`.
    pow: Vec<Vec<i64>>,
}

static LEVELS: Lazy<Mutex<HashMap<u64, Arc<Level>>>> = Lazy::new(|| Mutex::new(HashMap::new()));
static CYCLO: Lazy<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// The `n`-th cyclotomic polynomial, coefficients in ascending degree.
///
/// Computed by dividing `x^n - 1` by every `Phi_d` with `d | n`, `d < n`.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic polynomial of level 0");
    if let Some(p) = CYCLO.lock().unwrap().get(&n) {
        return p.as_ref().clone();
    }
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = exact_div(&num, &cyclotomic_polynomial(d));
        }
    }
    CYCLO.lock().unwrap().insert(n, Arc::new(num.clone()));
    num
}

/// Exact division of integer polynomials by a monic divisor.
fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1);
    let mut quo = vec![0i64; num.len() - dd];
    for i in (0..quo.len()).rev() {
        let c = rem[i + dd];
        quo[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quo
}

fn level_data(n: u64) -> Arc<Level> {
    if let Some(l) = LEVELS.lock().unwrap().get(&n) {
        return l.clone();
    }
    let poly = cyclotomic_polynomial(n);
    let ph = phi(n) as usize;
    debug_assert_eq!(poly.len(), ph + 1);
    let mut pow = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; ph];
    cur[0] = 1;
    for _ in 0..n {
        pow.push(cur.clone());
        // multiply by z, then fold the degree-phi term back using the monic relation
        let top = cur[ph - 1];
        for j in (1..ph).rev() {
            cur[j] = cur[j - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for j in 0..ph {
                cur[j] -= top * poly[j];
            }
        }
    }
    let l = Arc::new(Level { phi: ph, pow });
    LEVELS.lock().unwrap().insert(n, l.clone());
    l
}

/// An element of `Q(zeta_N)`.
#[derive(Clone, Debug)]
pub struct CycNumber {
    level: u64,
    coords: Vec<Rational>,
}

impl CycNumber {
    pub fn zero() -> Self {
        CycNumber {
            level: 1,
            coords: vec![Rational::zero()],
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        CycNumber {
            level: 1,
            coords: vec![r],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `zeta_n^k`.
    pub fn zeta(n: u64, k: i64) -> Self {
        assert!(n >= 1, "zeta of level 0");
        let l = level_data(n);
        let idx = k.rem_euclid(n as i64) as usize;
        CycNumber {
            level: n,
            coords: l.pow[idx]
                .iter()
                .map(|&c| Rational::from_integer(BigInt::from(c)))
                .collect(),
        }
    }

    /// Build `sum_j c_j zeta_n^j` from an exponent histogram of length `n`.
    pub fn from_exponent_counts(n: u64, counts: &[i64]) -> Self {
        let l = level_data(n);
        let mut acc = vec![0i64; l.phi];
        for (k, &c) in counts.iter().enumerate() {
            if c != 0 {
                for (a, &p) in acc.iter_mut().zip(&l.pow[k % n as usize]) {
                    *a += c * p;
                }
            }
        }
        CycNumber {
            level: n,
            coords: acc
                .into_iter()
                .map(|c| Rational::from_integer(BigInt::from(c)))
                .collect(),
        }
    }

    /// Build from explicit power-basis coordinates at level `n`.
    pub fn from_coords(n: u64, coords: Vec<Rational>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("cyclotomic number", "level must be positive"));
        }
        let ph = phi(n) as usize;
        if coords.len() != ph {
            return Err(Error::invalid(
                "cyclotomic number",
                format!("level {n} needs {ph} coordinates, got {}", coords.len()),
            ));
        }
        Ok(CycNumber { level: n, coords })
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Result<Rational> {
        if self.is_rational() {
            Ok(self.coords[0].clone())
        } else {
            Err(Error::NotRational(self.to_string()))
        }
    }

    /// Re-express at level `m`, which must be a multiple of the current level.
    pub fn lift(&self, m: u64) -> Self {
        assert!(m.is_multiple_of(self.level), "level {} does not divide {m}", self.level);
        if m == self.level {
            return self.clone();
        }
        let l = level_data(m);
        let step = (m / self.level) as usize;
        let mut out = vec![Rational::zero(); l.phi];
        for (j, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &p) in out.iter_mut().zip(&l.pow[(j * step) % m as usize]) {
                if p != 0 {
                    *o += c * BigInt::from(p);
                }
            }
        }
        CycNumber {
            level: m,
            coords: out,
        }
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        if self.level == other.level {
            return (self.clone(), other.clone());
        }
        let m = lcm_i64(self.level as i64, other.level as i64) as u64;
        (self.lift(m), other.lift(m))
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.level == other.level {
            return CycNumber {
                level: self.level,
                coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
            };
        }
        let (a, b) = self.common(other);
        a.add(&b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CycNumber {
            level: self.level,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CycNumber {
            level: self.level,
            coords: self.coords.iter().map(|c| c * r).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.level == 1 {
            return other.scale(&self.coords[0]);
        }
        if other.level == 1 {
            return self.scale(&other.coords[0]);
        }
        if self.level != other.level {
            let (a, b) = self.common(other);
            return a.mul(&b);
        }
        let n = self.level;
        let l = level_data(n);
        let mut raw = vec![Rational::zero(); 2 * l.phi];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        let mut out: Vec<Rational> = raw[..l.phi].to_vec();
        for (k, c) in raw.iter().enumerate().skip(l.phi) {
            if c.is_zero() {
                continue;
            }
            for (o, &p) in out.iter_mut().zip(&l.pow[k % n as usize]) {
                if p != 0 {
                    *o += c * BigInt::from(p);
                }
            }
        }
        CycNumber {
            level: n,
            coords: out,
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Complex conjugation `zeta -> zeta^-1`.
    pub fn conj(&self) -> Self {
        let n = self.level;
        let l = level_data(n);
        let mut out = vec![Rational::zero(); l.phi];
        for (j, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = (n as usize - j % n as usize) % n as usize;
            for (o, &p) in out.iter_mut().zip(&l.pow[k]) {
                if p != 0 {
                    *o += c * BigInt::from(p);
                }
            }
        }
        CycNumber {
            level: n,
            coords: out,
        }
    }

    /// Multiplicative inverse, by solving the multiplication-matrix system.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.level == 1 {
            return Some(Self::from_rational(self.coords[0].recip()));
        }
        let n = self.level;
        let ph = level_data(n).phi;
        // column j of M is self * z^j
        let cols: Vec<Vec<Rational>> = (0..ph)
            .map(|j| self.mul(&Self::zeta(n, j as i64)).coords)
            .collect();
        let mut m: Vec<Vec<Rational>> = (0..ph)
            .map(|i| {
                let mut row: Vec<Rational> = cols.iter().map(|c| c[i].clone()).collect();
                row.push(if i == 0 { Rational::one() } else { Rational::zero() });
                row
            })
            .collect();
        for col in 0..ph {
            let piv = (col..ph).find(|&r| !m[r][col].is_zero())?;
            m.swap(col, piv);
            let p = m[col][col].clone();
            for x in m[col].iter_mut() {
                *x /= &p;
            }
            for r in 0..ph {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in col..=ph {
                        let v = &m[col][c] * &f;
                        m[r][c] -= v;
                    }
                }
            }
        }
        Some(CycNumber {
            level: n,
            coords: m.into_iter().map(|r| r[ph].clone()).collect(),
        })
    }

    /// Numerical value under `z = exp(2 pi i / N)`.
    pub fn to_complex(&self) -> Complex64 {
        let n = self.level as f64;
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| {
                let t = std::f64::consts::TAU * j as f64 / n;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), t)
            })
            .sum()
    }

    /// Parse the text form produced by `Display`, e.g. `1 + -1/2·z^3 @ level 8`.
    pub fn parse(text: &str) -> Result<Self> {
        const WHAT: &str = "cyclotomic number";
        let (body, lvl) = text
            .rsplit_once('@')
            .ok_or_else(|| Error::parse(WHAT, text.len(), "missing '@ level N'"))?;
        let lvl_str = lvl.trim();
        let n: u64 = lvl_str
            .strip_prefix("level")
            .map(str::trim)
            .and_then(|s| s.parse().ok())
            .filter(|&n| (1..=1 << 16).contains(&n))
            .ok_or_else(|| Error::parse(WHAT, body.len() + 1, "expected 'level N' with N >= 1"))?;
        let mut counts: Vec<Rational> = vec![Rational::zero(); n as usize];
        let mut pos = 0;
        for term in body.split('+') {
            let t = term.trim();
            if t.is_empty() {
                return Err(Error::parse(WHAT, pos, "empty term"));
            }
            let (c, j) = match t.split_once(['·', '*']) {
                Some((c, z)) => {
                    let z = z.trim();
                    let j = z
                        .strip_prefix("z^")
                        .and_then(|e| e.trim().parse::<i64>().ok())
                        .or(if z == "z" { Some(1) } else { None })
                        .ok_or_else(|| Error::parse(WHAT, pos, format!("bad power {z:?}")))?;
                    (c.trim(), j)
                }
                None => (t, 0),
            };
            let c = parse_rational(c)
                .ok_or_else(|| Error::parse(WHAT, pos, format!("bad coefficient {c:?}")))?;
            counts[j.rem_euclid(n as i64) as usize] += c;
            pos += term.len() + 1;
        }
        let l = level_data(n);
        let mut out = vec![Rational::zero(); l.phi];
        for (k, c) in counts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &p) in out.iter_mut().zip(&l.pow[k]) {
                if p != 0 {
                    *o += c * BigInt::from(p);
                }
            }
        }
        Ok(CycNumber {
            level: n,
            coords: out,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(CycJson {
            level: self.level,
            coords: self.coords.iter().map(|c| c.to_string()).collect(),
        })
        .expect("plain struct serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: CycJson = serde_json::from_str(text).map_err(|e| {
            Error::parse("cyclotomic JSON", e.column().saturating_sub(1), e.to_string())
        })?;
        if j.level == 0 || j.level > 1 << 16 {
            return Err(Error::invalid("cyclotomic number", "level out of range"));
        }
        let coords = j
            .coords
            .iter()
            .map(|s| {
                parse_rational(s)
                    .ok_or_else(|| Error::invalid("cyclotomic number", format!("bad coordinate {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_coords(j.level, coords)
    }
}

#[derive(Serialize, Deserialize)]
struct CycJson {
    level: u64,
    coords: Vec<String>,
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.level == other.level {
            return self.coords == other.coords;
        }
        let (a, b) = self.common(other);
        a.coords == b.coords
    }
}

impl Eq for CycNumber {}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (j, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(if j == 0 { format!("{c}") } else { format!("{c}·z^{j}") });
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{} @ level {}", parts.join(" + "), self.level)
    }
}

impl From<BigRational> for CycNumber {
    fn from(r: BigRational) -> Self {
        Self::from_rational(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::{int, rat};

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12).len() - 1, phi(12) as usize);
    }

    #[test]
    fn zeta_has_order_n() {
        for n in [1u64, 2, 3, 5, 8, 12, 24, 35] {
            let z = CycNumber::zeta(n, 1);
            assert_eq!(z.pow(n), CycNumber::one(), "level {n}");
            if n > 1 {
                assert_ne!(z.pow(n - 1), CycNumber::one());
            }
        }
    }

    #[test]
    fn spot_values() {
        let i = CycNumber::zeta(4, 1);
        assert!(i.add(&CycNumber::zeta(4, -1)).is_zero());
        let w = CycNumber::zeta(3, 1);
        let one = CycNumber::one();
        let norm = one.sub(&w).mul(&one.sub(&w.conj()));
        assert_eq!(norm.to_rational().unwrap(), int(3));
    }

    #[test]
    fn norm_product_for_order_three_pairs() {
        // lambda = w for each of the 12 pairs, half-angle root nu_i = zeta_6
        let one = CycNumber::one();
        let f = CycNumber::zeta(6, 1).mul(&one.sub(&CycNumber::zeta(3, -1)));
        assert_eq!(f.pow(12).to_rational().unwrap(), int(729));
    }

    #[test]
    fn mixed_levels_lift() {
        let a = CycNumber::zeta(3, 1);
        let b = CycNumber::zeta(4, 1);
        let p = a.mul(&b);
        assert_eq!(p.level(), 12);
        assert_eq!(p, CycNumber::zeta(12, 7));
        assert_eq!(CycNumber::zeta(6, 2), CycNumber::zeta(3, 1));
    }

    #[test]
    fn to_rational_rejects_irrational() {
        assert!(CycNumber::zeta(8, 1).to_rational().is_err());
        let r = CycNumber::zeta(8, 1).add(&CycNumber::zeta(8, -1)).pow(2);
        assert_eq!(r.to_rational().unwrap(), int(2));
    }

    #[test]
    fn inverse() {
        let x = CycNumber::from_int(2).add(&CycNumber::zeta(5, 2));
        let y = x.inv().unwrap();
        assert_eq!(x.mul(&y), CycNumber::one());
        assert!(CycNumber::zero().inv().is_none());
    }

    #[test]
    fn text_and_json_round_trip() {
        let x = CycNumber::zeta(12, 5).scale(&rat(-3, 7)).add(&CycNumber::from_int(2));
        let t = x.to_string();
        assert_eq!(CycNumber::parse(&t).unwrap(), x);
        let j = x.to_json().to_string();
        assert_eq!(CycNumber::from_json(&j).unwrap(), x);
        assert!(CycNumber::parse("1 + 2·w^3 @ level 4").is_err());
        assert!(CycNumber::from_json(r#"{"level":4,"coords":["1"]}"#).is_err());
    }

    #[test]
    fn complex_value() {
        let z = CycNumber::zeta(8, 3).to_complex();
        let t = std::f64::consts::TAU * 3.0 / 8.0;
        assert!((z.re - t.cos()).abs() < 1e-12 && (z.im - t.sin()).abs() < 1e-12);
    }
}
