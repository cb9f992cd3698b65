//! Group labels of the form `n|h+e,f,...` and numeric invariance checks.
//!
//! The label `n|h+e,...` names a subgroup of the group generated by
//! `Gamma_0(n|h)` (matrices `[[a, b/h], [c n, d]]` of determinant one) and the
//! Atkin-Lehner elements `[[a e, b/h], [c n, d e]] / sqrt e` of determinant one
//! for the listed exact divisors `e` of `n/h`. The named group is the kernel of
//! a character of order dividing `h` on that ambient group. For an eta quotient
//! `eta_g` the character is its multiplier `eta_g(gamma tau) / eta_g(tau)`,
//! which is computed here exactly from Dedekind sums.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::frameshape::FrameShape;
use crate::numbers::{divisors, ext_gcd, gcd_i64, int, rat, Rational};
use crate::qseries::QSeries;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupLabel {
    pub n: u64,
    pub h: u64,
    /// Listed Atkin-Lehner divisors, ascending.
    pub al_set: Vec<u64>,
    /// `true` for `n|h-`: no involutions adjoined.
    pub minus: bool,
}

impl GroupLabel {
    /// Parse `INT ['|' INT] ('-' | '+' [INT (',' INT)*])`. Both the ASCII
    /// hyphen and U+2212 are accepted as the minus sign.
    pub fn parse(text: &str) -> Result<Self> {
        let what = "group label";
        let s = text.trim();
        let pos = text.len() - text.trim_start().len();
        let bytes: Vec<(usize, char)> = s.char_indices().collect();
        let mut i = 0;
        let read_int = |i: &mut usize, pos: usize| -> Result<u64> {
            let start = *i;
            while *i < bytes.len() && bytes[*i].1.is_ascii_digit() {
                *i += 1;
            }
            if start == *i {
                let at = bytes.get(start).map(|b| b.0).unwrap_or(s.len());
                return Err(Error::parse(what, pos + at, "expected an integer"));
            }
            let a = bytes[start].0;
            let b = bytes.get(*i).map(|x| x.0).unwrap_or(s.len());
            let v: u64 = s[a..b]
                .parse()
                .map_err(|_| Error::parse(what, pos + a, "integer out of range"))?;
            if v == 0 {
                return Err(Error::parse(what, pos + a, "integers must be positive"));
            }
            Ok(v)
        };
        let n = read_int(&mut i, pos)?;
        let mut h = 1;
        if i < bytes.len() && bytes[i].1 == '|' {
            i += 1;
            h = read_int(&mut i, pos)?;
        }
        let at = |i: usize| bytes.get(i).map(|b| b.0).unwrap_or(s.len());
        let (minus, al_set) = match bytes.get(i).map(|b| b.1) {
            Some('-') | Some('\u{2212}') => {
                i += 1;
                (true, Vec::new())
            }
            Some('+') => {
                i += 1;
                let mut v = Vec::new();
                if i < bytes.len() {
                    v.push(read_int(&mut i, pos)?);
                    while i < bytes.len() && bytes[i].1 == ',' {
                        i += 1;
                        v.push(read_int(&mut i, pos)?);
                    }
                }
                (false, v)
            }
            _ => return Err(Error::parse(what, pos + at(i), "expected '-' or '+'")),
        };
        if i < bytes.len() {
            return Err(Error::parse(what, pos + at(i), "trailing characters"));
        }
        let gl = GroupLabel {
            n,
            h,
            al_set: {
                let mut v = al_set;
                v.sort_unstable();
                v.dedup();
                v
            },
            minus,
        };
        gl.validate()?;
        Ok(gl)
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::invalid("group label", m));
        if !self.n.is_multiple_of(self.h) {
            return bad(format!("h = {} does not divide n = {}", self.h, self.n));
        }
        if 24 % self.h != 0 {
            return bad(format!("h = {} does not divide 24", self.h));
        }
        let nh = self.n / self.h;
        for &e in &self.al_set {
            if e == 1 || !nh.is_multiple_of(e) || gcd_i64(e as i64, (nh / e) as i64) != 1 {
                return bad(format!("{e} is not an exact divisor > 1 of {nh}"));
            }
        }
        Ok(())
    }

    /// Level of the underlying `Gamma_0(n/h)`.
    pub fn reduced_level(&self) -> u64 {
        self.n / self.h
    }

    /// Every Atkin-Lehner divisor in the group, closed under
    /// `e * f / gcd(e, f)^2`, including 1.
    pub fn involutions(&self) -> Vec<u64> {
        let nh = self.reduced_level();
        if self.minus {
            return vec![1];
        }
        let gens: Vec<u64> = if self.al_set.is_empty() {
            divisors(nh)
                .into_iter()
                .filter(|&e| gcd_i64(e as i64, (nh / e) as i64) == 1)
                .collect()
        } else {
            self.al_set.clone()
        };
        let mut set: BTreeSet<u64> = BTreeSet::from([1]);
        loop {
            let mut grown = false;
            let cur: Vec<u64> = set.iter().copied().collect();
            for &a in &cur {
                for &b in &gens {
                    let g = gcd_i64(a as i64, b as i64) as u64;
                    if set.insert(a * b / (g * g)) {
                        grown = true;
                    }
                }
            }
            if !grown {
                break;
            }
        }
        set.into_iter().collect()
    }

    /// Whether a matrix lies in the ambient group `Gamma_0(n|h) + <W_e>`.
    pub fn in_ambient(&self, m: &TestMatrix) -> bool {
        let e = m.scale;
        if !self.involutions().contains(&e) || m.det() != int(e as i64) {
            return false;
        }
        let h = int(self.h as i64);
        let ei = int(e as i64);
        let is_int = |r: &Rational| r.is_integer();
        is_int(&(&m.a / &ei))
            && is_int(&(&m.d / &ei))
            && is_int(&(&m.b * &h))
            && is_int(&(&m.c / int(self.n as i64)))
    }
}

impl fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.n)?;
        if self.h != 1 {
            write!(f, "|{}", self.h)?;
        }
        if self.minus {
            return write!(f, "-");
        }
        write!(f, "+")?;
        let parts: Vec<String> = self.al_set.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl std::str::FromStr for GroupLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Gamma0Sample,
    Translation1,
    AtkinLehner,
    Fricke,
}

/// `[[a, b], [c, d]] / sqrt(scale)` with `a d - b c = scale`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TestMatrix {
    #[serde(serialize_with = "ser_rat")]
    pub a: Rational,
    #[serde(serialize_with = "ser_rat")]
    pub b: Rational,
    #[serde(serialize_with = "ser_rat")]
    pub c: Rational,
    #[serde(serialize_with = "ser_rat")]
    pub d: Rational,
    pub scale: u64,
    pub provenance: Provenance,
}

fn ser_rat<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl TestMatrix {
    pub fn det(&self) -> Rational {
        &self.a * &self.d - &self.b * &self.c
    }

    /// Determinant of the scaled matrix; always 1 for valid matrices.
    pub fn scaled_det(&self) -> Rational {
        self.det() / int(self.scale as i64)
    }

    pub fn mul(&self, o: &TestMatrix) -> TestMatrix {
        TestMatrix {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
            scale: self.scale * o.scale,
            provenance: self.provenance,
        }
    }

    fn floats(&self) -> [f64; 4] {
        let s = (self.scale as f64).sqrt();
        [&self.a, &self.b, &self.c, &self.d].map(|x| x.to_f64().unwrap_or(f64::NAN) / s)
    }

    pub fn apply(&self, tau: Complex64) -> Complex64 {
        let [a, b, c, d] = self.floats();
        (tau * a + b) / (tau * c + d)
    }

    pub fn translation(t: Rational, provenance: Provenance) -> Self {
        TestMatrix {
            a: int(1),
            b: t,
            c: int(0),
            d: int(1),
            scale: 1,
            provenance,
        }
    }

    /// `[[0, -1], [n, 0]] / sqrt n`.
    pub fn fricke(n: u64) -> Self {
        TestMatrix {
            a: int(0),
            b: int(-1),
            c: int(n as i64),
            d: int(0),
            scale: n,
            provenance: Provenance::Fricke,
        }
    }
}

/// Ambient element `[[a e, b/h], [c n, d e]] / sqrt e` with lower-left `c n`.
pub fn ambient_element(gl: &GroupLabel, e: u64, c: i64, rng: &mut ChaCha8Rng) -> Result<TestMatrix> {
    let nh = gl.reduced_level();
    if !nh.is_multiple_of(e) || gcd_i64(e as i64, (nh / e) as i64) != 1 {
        return Err(Error::invalid("Atkin-Lehner divisor", format!("{e} is not exact in {nh}")));
    }
    if gcd_i64(c, e as i64) != 1 || c <= 0 {
        return Err(Error::invalid("Atkin-Lehner sample", format!("c = {c} must be positive and prime to {e}")));
    }
    // a d e - b M = 1 with M = c n / (h e)
    let m = c * (nh / e) as i64;
    let ei = e as i64;
    let d = loop {
        let d: i64 = rng.gen_range(-30..=30);
        if gcd_i64(d * ei, m) == 1 {
            break d;
        }
    };
    let (_, inv, _) = ext_gcd((d * ei).rem_euclid(m.max(1)), m.max(1));
    let a0 = if m == 1 { 0 } else { inv.rem_euclid(m) };
    let a = a0 + m * rng.gen_range(-2..=2);
    let num = a * d * ei - 1;
    if num % m != 0 {
        return Err(Error::Structural(format!("Atkin-Lehner completion failed for e = {e}")));
    }
    let b = num / m;
    let mat = TestMatrix {
        a: int(a * ei),
        b: rat(b, gl.h as i64),
        c: int(c * gl.n as i64),
        d: int(d * ei),
        scale: e,
        provenance: if e == 1 { Provenance::Gamma0Sample } else { Provenance::AtkinLehner },
    };
    debug_assert_eq!(mat.scaled_det(), int(1));
    Ok(mat)
}

/// Periodic sawtooth `((x))`.
fn sawtooth(x: &Rational) -> Rational {
    if x.is_integer() {
        Rational::zero()
    } else {
        x - x.floor() - rat(1, 2)
    }
}

/// Dedekind sum `s(d, c)` for `c > 0`.
pub fn dedekind_sum(d: i64, c: i64) -> Rational {
    let mut s = Rational::zero();
    for k in 1..c {
        s += sawtooth(&rat(k, c)) * sawtooth(&rat(d * k, c));
    }
    s
}

/// `r` with `eta(M tau) = exp(pi i r) sqrt(-i (c tau + d)) eta(tau)`, for `M` in `SL_2(Z)`.
pub fn eta_multiplier_exponent(a: i64, b: i64, c: i64, d: i64) -> Rational {
    let (a, b, c, d) = if c < 0 || (c == 0 && d < 0) { (-a, -b, -c, -d) } else { (a, b, c, d) };
    if c == 0 {
        return rat(b, 12);
    }
    rat(a + d, 12 * c) - dedekind_sum(d, c)
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if !r.is_positive() {
        return None;
    }
    let p = r.numer().sqrt();
    let q = r.denom().sqrt();
    (&p * &p == *r.numer() && &q * &q == *r.denom()).then(|| Rational::new(p, q))
}

fn to_i64(r: &Rational) -> Option<i64> {
    r.is_integer().then(|| r.to_integer().to_i64()).flatten()
}

/// Exponent `r in [0, 2)` with `eta_pi(gamma tau) = exp(pi i r) eta_pi(tau)`, or
/// `None` when `gamma` does not permute the eta factors of the shape.
pub fn shape_multiplier(shape: &FrameShape, m: &TestMatrix) -> Option<Rational> {
    let det = m.det();
    let mut r = Rational::zero();
    for (mm, k) in shape.pairs() {
        let mut found = None;
        for (m2, k2) in shape.pairs() {
            if k2 != k {
                continue;
            }
            let Some(s) = rational_sqrt(&(int(m2 as i64) / (int(mm as i64) * &det))) else {
                continue;
            };
            let mi = int(mm as i64);
            let m2i = int(m2 as i64);
            let ent = [
                &s * &mi * &m.a / &m2i,
                &s * &mi * &m.b,
                &s * &m.c / &m2i,
                &s * &m.d,
            ];
            if let [Some(a), Some(b), Some(c), Some(d)] = ent.map(|x| to_i64(&x)) {
                found = Some((a, b, c, d));
                break;
            }
        }
        let (a, b, c, d) = found?;
        r += int(k) * eta_multiplier_exponent(a, b, c, d);
    }
    let two = int(2);
    Some(&r - (&r / &two).floor() * two)
}

/// Right-multiply by a translation by `j/h` so the multiplier becomes trivial.
pub fn kernel_correct(shape: &FrameShape, gl: &GroupLabel, m: &TestMatrix) -> Result<TestMatrix> {
    let r = shape_multiplier(shape, m).ok_or_else(|| {
        Error::Structural(format!("{shape} is not permuted by an element of {gl}"))
    })?;
    let step = TestMatrix::translation(rat(1, gl.h as i64), m.provenance);
    let rs = shape_multiplier(shape, &step)
        .ok_or_else(|| Error::Structural(format!("{shape} is not invariant under 1/{}", gl.h)))?;
    let mut cur = m.clone();
    let mut rc = r;
    for _ in 0..gl.h {
        if rc.is_zero() {
            let mut out = cur;
            out.provenance = m.provenance;
            return Ok(out);
        }
        cur = cur.mul(&step);
        rc = &rc + &rs;
        rc = &rc - (&rc / int(2)).floor() * int(2);
    }
    Err(Error::Verification(format!(
        "multiplier of {shape} on {gl} is not trivialised by translations by 1/{}",
        gl.h
    )))
}

/// Sampled elements of the invariance group: translation by 1 followed by
/// kernel-corrected ambient elements cycling through the Atkin-Lehner divisors.
pub fn sample_matrices(shape: &FrameShape, gl: &GroupLabel, count: usize, rng: &mut ChaCha8Rng) -> Result<Vec<TestMatrix>> {
    let mut out = vec![TestMatrix::translation(int(1), Provenance::Translation1)];
    let invs = gl.involutions();
    let mut i = 0;
    while out.len() < count {
        let e = invs[i % invs.len()];
        i += 1;
        let c = (1..).find(|&c| gcd_i64(c, e as i64) == 1).unwrap();
        let m = ambient_element(gl, e, c, rng)?;
        out.push(kernel_correct(shape, gl, &m)?);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug)]
pub struct Evaluation {
    pub value: Complex64,
    pub tail_bound: f64,
}

fn ln_abs(r: &Rational) -> f64 {
    fn ln_big(x: &BigInt) -> f64 {
        let bits = x.bits();
        if bits < 1000 {
            x.abs().to_f64().unwrap().ln()
        } else {
            let shift = bits - 900;
            (x.abs() >> shift).to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
        }
    }
    ln_big(r.numer()) - ln_big(r.denom())
}

/// Sum a truncated series at `tau`. The tail bound extrapolates the last five
/// term magnitudes geometrically.
pub fn eval_series(s: &QSeries, tau: Complex64, tail_bound_target: f64) -> Result<Evaluation> {
    if tau.im <= 0.0 {
        return Err(Error::Numeric(format!("Im(tau) = {} is not positive", tau.im)));
    }
    let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
    let mut value = Complex64::zero();
    let mut mags: Vec<(f64, f64)> = Vec::new();
    for (e, c) in s.terms() {
        let ef = e.to_f64().unwrap_or(f64::NAN);
        let lc = ln_abs(c);
        let z = two_pi_i * tau * ef;
        let mag = (lc + z.re).exp();
        let sign = if c.is_negative() { -1.0 } else { 1.0 };
        value += Complex64::from_polar(mag, z.im) * sign;
        mags.push((ef, lc + z.re));
    }
    let tail = tail_estimate(&mags, s.order().to_f64().unwrap_or(f64::INFINITY), tau.im);
    if !(tail <= tail_bound_target) {
        return Err(Error::Numeric(format!(
            "tail bound {tail:.3e} exceeds {tail_bound_target:.1e} at Im(tau) = {:.4}",
            tau.im
        )));
    }
    Ok(Evaluation { value, tail_bound: tail })
}

/// Geometric tail estimate from the last five (exponent, log magnitude) pairs.
fn tail_estimate(mags: &[(f64, f64)], order: f64, im: f64) -> f64 {
    if mags.len() < 5 {
        // a short series is exact when every omitted term lies at or past the
        // order; treat it as a polynomial and bound by the decay of q^order
        return if order.is_infinite() || mags.is_empty() { 0.0 } else {
            let last = mags.last().unwrap();
            (last.1 - 2.0 * std::f64::consts::PI * im * (order - last.0)).exp()
        };
    }
    let tail = &mags[mags.len() - 5..];
    let (e0, l0) = tail[0];
    let (e1, l1) = tail[4];
    let slope = (l1 - l0) / (e1 - e0).max(1e-12);
    let peak = tail.iter().map(|t| t.1).fold(f64::NEG_INFINITY, f64::max);
    if slope >= 0.0 {
        return f64::INFINITY;
    }
    // terms per unit exponent near the end of the series
    let density = 4.0 / (e1 - e0).max(1e-12);
    let ratio = (slope / density).exp();
    peak.exp() * ratio / (1.0 - ratio)
}

#[derive(Clone, Debug, Serialize)]
pub struct MatrixResult {
    pub matrix: TestMatrix,
    pub max_dev: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvarianceReport {
    pub class: String,
    pub label: String,
    pub seed: u64,
    pub order: String,
    pub points_per_matrix: usize,
    pub matrices: Vec<MatrixResult>,
    pub max_dev: f64,
    pub control: Option<MatrixResult>,
    pub tol: f64,
    pub pass: bool,
}

/// Points `tau` on the isometric circle `|c tau + d| = 1`, where `gamma` preserves
/// `Im tau`; for translations, points with `Im tau` in `[0.8, 2]`.
pub fn sample_points(m: &TestMatrix, count: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    let [_, _, c, d] = m.floats();
    (0..count)
        .map(|_| {
            if c.abs() < 1e-12 {
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(0.8..2.0))
            } else {
                let x: f64 = rng.gen_range(-0.6..0.6);
                Complex64::new((-d + x) / c, (1.0 - x * x).sqrt() / c.abs())
            }
        })
        .collect()
}

fn min_im(m: &TestMatrix) -> f64 {
    let [_, _, c, _] = m.floats();
    if c.abs() < 1e-12 {
        0.8
    } else {
        0.8 / c.abs()
    }
}

/// Maximum of `|s(gamma tau) - s(tau)|` over the given points.
pub fn deviation(s: &QSeries, m: &TestMatrix, points: &[Complex64], bound: f64) -> Result<f64> {
    points
        .par_iter()
        .map(|&tau| {
            let a = eval_series(s, tau, bound)?;
            let b = eval_series(s, m.apply(tau), bound)?;
            Ok((a.value - b.value).norm() + a.tail_bound + b.tail_bound)
        })
        .collect::<Result<Vec<f64>>>()
        .map(|v| v.into_iter().fold(0.0, f64::max))
}

/// Check a series built for a shape against the group named by a label.
///
/// `build` produces the series to a requested integer order; the order is
/// raised until every evaluation meets the tail bound.
pub fn invariance_check(
    class: &str,
    shape: &FrameShape,
    gl: &GroupLabel,
    build: impl Fn(&Rational) -> Result<QSeries>,
    samples: usize,
    points: usize,
    tol: f64,
    seed: u64,
) -> Result<InvarianceReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mats = sample_matrices(shape, gl, samples, &mut rng)?;
    let pts: Vec<Vec<Complex64>> = mats.iter().map(|m| sample_points(m, points, &mut rng)).collect();
    let control = {
        let p = (2u64..)
            .find(|&p| divisors(p).len() == 2 && !(gl.n * gl.h).is_multiple_of(p))
            .unwrap();
        TestMatrix::fricke(p)
    };
    let control_pts = sample_points(&control, points, &mut rng);
    let y = mats
        .iter()
        .chain(std::iter::once(&control))
        .map(min_im)
        .fold(f64::INFINITY, f64::min);
    let bound = tol / 10.0;
    let mut order = ((45.0 / (2.0 * std::f64::consts::PI * y)).ceil() as i64).max(40);
    let series = loop {
        let s = build(&int(order))?;
        let ok = mats
            .iter()
            .zip(&pts)
            .all(|(m, p)| p.iter().all(|&t| eval_series(&s, t, bound).is_ok() && eval_series(&s, m.apply(t), bound).is_ok()));
        if ok {
            break s;
        }
        if order > 20_000 {
            return Err(Error::Numeric(format!("no order up to {order} meets the tail bound")));
        }
        order *= 2;
    };
    let mut results = Vec::new();
    for (m, p) in mats.into_iter().zip(&pts) {
        let d = deviation(&series, &m, p, bound)?;
        results.push(MatrixResult { matrix: m, max_dev: d });
    }
    let max_dev = results.iter().map(|r| r.max_dev).fold(0.0, f64::max);
    let control = deviation(&series, &control, &control_pts, f64::INFINITY)
        .ok()
        .map(|d| MatrixResult { matrix: control, max_dev: d });
    Ok(InvarianceReport {
        class: class.to_string(),
        label: gl.to_string(),
        seed,
        order: order.to_string(),
        points_per_matrix: points,
        pass: max_dev <= tol,
        matrices: results,
        max_dev,
        control,
        tol,
    })
}

/// Integer `e > 0` as a rational, for callers building matrices by hand.
pub fn one() -> Rational {
    Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_examples() {
        let a = GroupLabel::parse("2-").unwrap();
        assert_eq!((a.n, a.h, a.minus), (2, 1, true));
        assert!(a.al_set.is_empty());
        let b = GroupLabel::parse("12|2+6").unwrap();
        assert_eq!((b.n, b.h, b.al_set.clone(), b.minus), (12, 2, vec![6], false));
        let c = GroupLabel::parse("30+6,10,15").unwrap();
        assert_eq!((c.n, c.h, c.al_set.clone()), (30, 1, vec![6, 10, 15]));
        assert_eq!(GroupLabel::parse("2\u{2212}").unwrap(), a);
        assert_eq!(c.to_string(), "30+6,10,15");
        assert_eq!(b.to_string(), "12|2+6");
    }

    #[test]
    fn label_errors() {
        for bad in ["", "12", "12|", "12|5-", "12+5", "12+4,", "x-", "12-x", "0-", "12+1", "48|48-"] {
            assert!(GroupLabel::parse(bad).is_err(), "{bad:?}");
        }
        match GroupLabel::parse("12-x") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn involution_closure() {
        let g = GroupLabel::parse("30+6,10,15").unwrap();
        assert_eq!(g.involutions(), vec![1, 6, 10, 15]);
        let all = GroupLabel::parse("6+").unwrap();
        assert_eq!(all.involutions(), vec![1, 2, 3, 6]);
        assert_eq!(all.to_string(), "6+");
    }

    #[test]
    fn fricke_and_al_matrices() {
        let f = TestMatrix::fricke(2);
        assert_eq!(f.scaled_det(), int(1));
        let g = GroupLabel::parse("12|2+6").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for e in [1, 6] {
            for _ in 0..20 {
                let m = ambient_element(&g, e, 1, &mut rng).unwrap();
                assert_eq!(m.scaled_det(), int(1));
                assert!(g.in_ambient(&m));
            }
        }
    }

    #[test]
    fn dedekind_sum_values() {
        // s(1, c) = (c-1)(c-2) / (12 c)
        for c in 2..20 {
            assert_eq!(dedekind_sum(1, c), rat((c - 1) * (c - 2), 12 * c));
        }
        // reciprocity: s(d,c) + s(c,d) = (d/c + c/d + 1/(cd)) / 12 - 1/4
        for (d, c) in [(3, 7), (5, 12), (11, 4), (13, 30)] {
            let lhs = dedekind_sum(d, c) + dedekind_sum(c, d);
            let rhs = (rat(d, c) + rat(c, d) + rat(1, c * d)) / int(12) - rat(1, 4);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn eta_multiplier_of_generators() {
        // eta(tau + 1) = exp(pi i / 12) eta(tau); eta(-1/tau) = sqrt(-i tau) eta(tau)
        assert_eq!(eta_multiplier_exponent(1, 1, 0, 1), rat(1, 12));
        assert_eq!(eta_multiplier_exponent(0, -1, 1, 0), rat(-1, 4) + rat(1, 4));
    }

    #[test]
    fn multiplier_is_trivial_on_level_one_labels() {
        let s = FrameShape::parse("2^24/1^24").unwrap();
        let g = GroupLabel::parse("2-").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let m = ambient_element(&g, 1, rng.gen_range(1..4), &mut rng).unwrap();
            assert_eq!(shape_multiplier(&s, &m), Some(Rational::zero()));
        }
        assert!(shape_multiplier(&s, &TestMatrix::fricke(3)).is_none());
    }

    #[test]
    fn eval_simple_series() {
        let s = QSeries::constant(int(24), &int(5)).unwrap();
        let v = eval_series(&s, Complex64::new(0.1, 1.0), 1e-6).unwrap();
        assert!((v.value - Complex64::new(24.0, 0.0)).norm() < 1e-12);
        let q = QSeries::monomial(int(1), &rat(-1, 2), &int(10)).unwrap();
        let v = eval_series(&q, Complex64::new(0.0, 1.0), 1.0).unwrap();
        assert!((v.value.re - std::f64::consts::PI.exp()).abs() < 1e-9);
    }
}
