//! Truncated Laurent series in fractional powers of `q`.
//!
//! A [`Series`] stores exponents as integer numerators over a per-series
//! denominator `K`, a sparse map of nonzero coefficients, and a validity order
//! `O`: every coefficient below `q^O` is exact and nothing is known at or
//! above it. Arithmetic propagates the order conservatively, so a result is
//! never claimed to be known further than its inputs justify.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};
use crate::numbers::{denom_i64, lcm_i64, parse_rational, scaled_numerator, Rational};

/// Coefficient field for [`Series`].
///
/// Implemented by `BigRational` and [`CycNumber`].
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn nil() -> Self;
    fn unit() -> Self;
    fn is_nil(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn recip(&self) -> Option<Self>;
    fn from_rational(r: &Rational) -> Self;
    fn to_cyc(&self) -> CycNumber;
}

impl Scalar for BigRational {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn recip(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(BigRational::recip(self))
        }
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn to_cyc(&self) -> CycNumber {
        CycNumber::from_rational(self.clone())
    }
}

impl Scalar for CycNumber {
    fn nil() -> Self {
        CycNumber::zero()
    }
    fn unit() -> Self {
        CycNumber::one()
    }
    fn is_nil(&self) -> bool {
        CycNumber::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn recip(&self) -> Option<Self> {
        self.inv()
    }
    fn from_rational(r: &Rational) -> Self {
        CycNumber::from_rational(r.clone())
    }
    fn to_cyc(&self) -> CycNumber {
        self.clone()
    }
}

/// A truncated series `sum c_e q^(e/K) + O(q^(order/K))`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<C: Scalar> {
    denom: i64,
    terms: BTreeMap<i64, C>,
    order: i64,
}

pub type QSeries = Series<BigRational>;
pub type CycSeries = Series<CycNumber>;

fn frac(num: i64, k: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(k))
}

impl<C: Scalar> Series<C> {
    /// The empty series `O(q^order)`.
    pub fn zero(order: &Rational) -> Result<Self> {
        let k = denom_i64(order)?;
        Ok(Series {
            denom: k,
            terms: BTreeMap::new(),
            order: scaled_numerator(order, k)?,
        })
    }

    pub fn monomial(coeff: C, expo: &Rational, order: &Rational) -> Result<Self> {
        Self::from_terms(vec![(expo.clone(), coeff)], order)
    }

    pub fn constant(c: C, order: &Rational) -> Result<Self> {
        Self::monomial(c, &<Rational as Zero>::zero(), order)
    }

    /// Build from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms(terms: Vec<(Rational, C)>, order: &Rational) -> Result<Self> {
        let mut k = denom_i64(order)?;
        for (e, _) in &terms {
            k = lcm_i64(k, denom_i64(e)?);
        }
        let o = scaled_numerator(order, k)?;
        let mut map: BTreeMap<i64, C> = BTreeMap::new();
        for (e, c) in terms {
            let n = scaled_numerator(&e, k)?;
            if n >= o {
                return Err(Error::Precision(format!(
                    "term q^{e} is not below the order {order}"
                )));
            }
            accumulate(&mut map, n, c);
        }
        Ok(Series {
            denom: k,
            terms: map,
            order: o,
        }
        .normalized())
    }

    /// Internal constructor from raw numerators over `k`.
    pub(crate) fn from_raw(k: i64, terms: BTreeMap<i64, C>, order: i64) -> Self {
        debug_assert!(terms.keys().all(|&e| e < order));
        Series {
            denom: k,
            terms: terms.into_iter().filter(|(_, c)| !c.is_nil()).collect(),
            order,
        }
        .normalized()
    }

    fn normalized(mut self) -> Self {
        let mut g = self.denom.gcd(&self.order);
        for e in self.terms.keys() {
            if g == 1 {
                break;
            }
            g = g.gcd(e);
        }
        if g > 1 {
            self.denom /= g;
            self.order /= g;
            self.terms = std::mem::take(&mut self.terms)
                .into_iter()
                .map(|(e, c)| (e / g, c))
                .collect();
        }
        self
    }

    fn rescaled(&self, k: i64) -> (BTreeMap<i64, C>, i64) {
        debug_assert_eq!(k % self.denom, 0);
        let f = k / self.denom;
        (
            self.terms.iter().map(|(e, c)| (e * f, c.clone())).collect(),
            self.order * f,
        )
    }

    /// Common denominator `K` of all exponents and the order.
    pub fn denom(&self) -> i64 {
        self.denom
    }

    pub fn order(&self) -> Rational {
        frac(self.order, self.denom)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<Rational> {
        self.terms.keys().next().map(|&e| frac(e, self.denom))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// No nonzero coefficient below the order.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Rational, &C)> + '_ {
        self.terms.iter().map(move |(&e, c)| (frac(e, self.denom), c))
    }

    /// Raw `(numerator, coefficient)` pairs over [`Series::denom`].
    pub fn raw_terms(&self) -> impl Iterator<Item = (i64, &C)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    /// Coefficient of `q^e`; an error when `e` is at or beyond the order.
    pub fn coeff(&self, e: &Rational) -> Result<C> {
        if *e >= self.order() {
            return Err(Error::Precision(format!(
                "coefficient of q^{e} requested but series is only known below q^{}",
                self.order()
            )));
        }
        let prod = e * BigInt::from(self.denom);
        if !prod.is_integer() {
            return Ok(C::nil());
        }
        Ok(prod
            .to_integer()
            .to_i64()
            .and_then(|n| self.terms.get(&n).cloned())
            .unwrap_or_else(C::nil))
    }

    pub fn plus(&self, o: &Self) -> Self {
        let k = lcm_i64(self.denom, o.denom);
        let (mut a, oa) = self.rescaled(k);
        let (b, ob) = o.rescaled(k);
        let ord = oa.min(ob);
        a.retain(|&e, _| e < ord);
        for (e, c) in b {
            if e < ord {
                accumulate(&mut a, e, c);
            }
        }
        Series::from_raw(k, a, ord)
    }

    pub fn negated(&self) -> Self {
        Series {
            denom: self.denom,
            terms: self.terms.iter().map(|(&e, c)| (e, c.negated())).collect(),
            order: self.order,
        }
    }

    pub fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negated())
    }

    pub fn scaled(&self, s: &C) -> Self {
        Series::from_raw(
            self.denom,
            self.terms.iter().map(|(&e, c)| (e, c.times(s))).collect(),
            self.order,
        )
    }

    /// Add a constant; fails when the constant term is not known.
    pub fn plus_constant(&self, c: &C) -> Result<Self> {
        if self.order <= 0 {
            return Err(Error::Precision(
                "cannot add a constant to a series known only below q^0".into(),
            ));
        }
        let mut t = self.terms.clone();
        accumulate(&mut t, 0, c.clone());
        Ok(Series::from_raw(self.denom, t, self.order))
    }

    /// Product with order `min(v_a + O_b, v_b + O_a)`.
    pub fn mul(&self, o: &Self) -> Self {
        let k = lcm_i64(self.denom, o.denom);
        let (a, oa) = self.rescaled(k);
        let (b, ob) = o.rescaled(k);
        let va = a.keys().next().copied().unwrap_or(oa);
        let vb = b.keys().next().copied().unwrap_or(ob);
        let ord = (va + ob).min(vb + oa);
        let mut out: BTreeMap<i64, C> = BTreeMap::new();
        for (ea, ca) in &a {
            if ea + vb >= ord {
                break;
            }
            for (eb, cb) in &b {
                let e = ea + eb;
                if e >= ord {
                    break;
                }
                accumulate(&mut out, e, ca.times(cb));
            }
        }
        Series::from_raw(k, out, ord)
    }

    /// Multiplicative inverse; the result has order `O - 2v`.
    pub fn invert(&self) -> Result<Self> {
        let (&v, lead) = self
            .terms
            .iter()
            .next()
            .ok_or_else(|| Error::NotInvertible("no known nonzero term".into()))?;
        let inv_lead = lead
            .recip()
            .ok_or_else(|| Error::NotInvertible("leading coefficient not invertible".into()))?;
        // u = q^-v * self has terms at 0..(order - v)
        let len = (self.order - v) as usize;
        let u: Vec<(usize, &C)> = self
            .terms
            .iter()
            .skip(1)
            .map(|(&e, c)| ((e - v) as usize, c))
            .collect();
        let mut b: Vec<C> = Vec::with_capacity(len);
        b.push(inv_lead.clone());
        for n in 1..len {
            let mut s = C::nil();
            for &(i, c) in &u {
                if i > n {
                    break;
                }
                let prev = &b[n - i];
                if !prev.is_nil() {
                    s = s.plus(&c.times(prev));
                }
            }
            b.push(s.times(&inv_lead).negated());
        }
        let terms = b
            .into_iter()
            .enumerate()
            .map(|(n, c)| (n as i64 - v, c))
            .collect();
        Ok(Series::from_raw(self.denom, terms, self.order - 2 * v))
    }

    pub fn powi(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.invert()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc: Option<Self> = None;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => sq.clone(),
                    Some(a) => a.mul(&sq),
                });
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        match acc {
            Some(a) => Ok(a),
            None => Err(Error::Precision(
                "zeroth power has no meaningful order; use Series::constant".into(),
            )),
        }
    }

    /// Substitute `tau -> s * tau`: every exponent and the order scale by `s`.
    pub fn scale_tau(&self, s: &Rational) -> Result<Self> {
        if !s.is_positive() {
            return Err(Error::invalid("scale factor", format!("{s} is not positive")));
        }
        let p = s
            .numer()
            .to_i64()
            .ok_or_else(|| Error::Precision("scale numerator out of range".into()))?;
        let r = s
            .denom()
            .to_i64()
            .ok_or_else(|| Error::Precision("scale denominator out of range".into()))?;
        let k = self
            .denom
            .checked_mul(r)
            .ok_or_else(|| Error::Precision("exponent denominator overflow".into()))?;
        let order = self
            .order
            .checked_mul(p)
            .ok_or_else(|| Error::Precision("order overflow".into()))?;
        Ok(Series::from_raw(
            k,
            self.terms.iter().map(|(&e, c)| (e * p, c.clone())).collect(),
            order,
        ))
    }

    /// Substitute `tau -> tau + t`: the coefficient of `q^r` picks up `exp(2 pi i r t)`.
    pub fn shift_tau(&self, t: &Rational) -> Result<CycSeries> {
        let a = t
            .numer()
            .to_i64()
            .ok_or_else(|| Error::Precision("shift numerator out of range".into()))?;
        let b = t
            .denom()
            .to_i64()
            .ok_or_else(|| Error::Precision("shift denominator out of range".into()))?;
        let n = self.denom * b;
        let terms = self
            .terms
            .iter()
            .map(|(&e, c)| {
                let k = ((e as i128 * a as i128).rem_euclid(n as i128)) as i64;
                (e, c.to_cyc().mul(&CycNumber::zeta(n as u64, k)))
            })
            .collect();
        Ok(Series::from_raw(self.denom, terms, self.order))
    }

    /// Drop everything at or above `order`.
    pub fn truncate(&self, order: &Rational) -> Result<Self> {
        if *order > self.order() {
            return Err(Error::Precision(format!(
                "cannot extend order {} to {order}",
                self.order()
            )));
        }
        let k = lcm_i64(self.denom, denom_i64(order)?);
        let (t, _) = self.rescaled(k);
        let o = scaled_numerator(order, k)?;
        Ok(Series::from_raw(
            k,
            t.into_iter().filter(|&(e, _)| e < o).collect(),
            o,
        ))
    }

    /// Coefficients agree below the smaller of the two orders.
    pub fn agrees_with(&self, o: &Self) -> bool {
        let m = if self.order() <= o.order() {
            self.order()
        } else {
            o.order()
        };
        match (self.truncate(&m), o.truncate(&m)) {
            (Ok(a), Ok(b)) => a.terms == b.terms && a.denom == b.denom,
            _ => false,
        }
    }

    /// Exact equality; comparing series known to different orders is an error.
    pub fn strict_eq(&self, o: &Self) -> Result<bool> {
        if self.order() != o.order() {
            return Err(Error::OrderMismatch(
                self.order().to_string(),
                o.order().to_string(),
            ));
        }
        Ok(self == o)
    }

    pub fn map<D: Scalar>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        Series::from_raw(
            self.denom,
            self.terms.iter().map(|(&e, c)| (e, f(c))).collect(),
            self.order,
        )
    }

    pub fn to_cyc(&self) -> CycSeries {
        self.map(Scalar::to_cyc)
    }
}

impl CycSeries {
    /// Demote to rational coefficients; fails if any coefficient is irrational.
    pub fn to_rational(&self) -> Result<QSeries> {
        let mut t = BTreeMap::new();
        for (&e, c) in &self.terms {
            t.insert(e, c.to_rational()?);
        }
        Ok(Series::from_raw(self.denom, t, self.order))
    }
}

fn accumulate<C: Scalar>(map: &mut BTreeMap<i64, C>, e: i64, c: C) {
    if c.is_nil() {
        return;
    }
    match map.get_mut(&e) {
        Some(v) => {
            let s = v.plus(&c);
            if s.is_nil() {
                map.remove(&e);
            } else {
                *v = s;
            }
        }
        None => {
            map.insert(e, c);
        }
    }
}

/// `q^(1/24) prod_{n>=1} (1 - q^n)` via the pentagonal number theorem.
pub fn eta(order: &Rational) -> Result<QSeries> {
    let k = lcm_i64(24, denom_i64(order)?);
    let o = scaled_numerator(order, k)?;
    let f = k / 24;
    let mut terms = BTreeMap::new();
    // exponent (1 + 24 * j(3j-1)/2) / 24 for j in Z, sign (-1)^j
    let mut j: i64 = 0;
    loop {
        let mut any = false;
        for jj in if j == 0 { vec![0] } else { vec![j, -j] } {
            let e = (1 + 12 * jj * (3 * jj - 1)) * f;
            if e < o {
                any = true;
                let s = if jj.rem_euclid(2) == 0 { 1 } else { -1 };
                terms.insert(e, BigRational::from_integer(BigInt::from(s)));
            }
        }
        if !any && j > 0 {
            break;
        }
        j += 1;
    }
    Ok(Series::from_raw(k, terms, o))
}

impl QSeries {
    /// One term per line, `num/den q^{p/K}`, then an `O(q^{p/K})` trailer.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (&e, c) in &self.terms {
            s.push_str(&format!(
                "{}/{} q^{{{}/{}}}\n",
                c.numer(),
                c.denom(),
                e,
                self.denom
            ));
        }
        s.push_str(&format!("O(q^{{{}/{}}})\n", self.order, self.denom));
        s
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        const WHAT: &str = "series text";
        let mut terms = Vec::new();
        let mut order = None;
        let mut pos = 0;
        for line in text.lines() {
            let l = line.trim();
            if l.is_empty() {
                pos += line.len() + 1;
                continue;
            }
            if order.is_some() {
                return Err(Error::parse(WHAT, pos, "text after the O(...) trailer"));
            }
            if let Some(rest) = l.strip_prefix("O(") {
                let inner = rest
                    .strip_suffix(')')
                    .ok_or_else(|| Error::parse(WHAT, pos, "unclosed O("))?;
                order = Some(parse_power(inner).ok_or_else(|| {
                    Error::parse(WHAT, pos, format!("bad order {inner:?}"))
                })?);
            } else {
                let (c, p) = l
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| Error::parse(WHAT, pos, "expected 'coeff q^{p/K}'"))?;
                let c = parse_rational(c)
                    .ok_or_else(|| Error::parse(WHAT, pos, format!("bad coefficient {c:?}")))?;
                let e = parse_power(p.trim())
                    .ok_or_else(|| Error::parse(WHAT, pos, format!("bad power {p:?}")))?;
                terms.push((e, c));
            }
            pos += line.len() + 1;
        }
        let order = order.ok_or_else(|| Error::parse(WHAT, text.len(), "missing O(...) trailer"))?;
        check_exponent_ranges(&terms, &order)?;
        Series::from_terms(terms, &order)
    }

    /// Bare JSON term list `[[exp_num, K, coeff_num, coeff_den], ...]`.
    pub fn terms_to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(&e, c)| {
                    serde_json::Value::Array(vec![
                        e.into(),
                        self.denom.into(),
                        big_number(c.numer()),
                        big_number(c.denom()),
                    ])
                })
                .collect(),
        )
    }

    /// `{"order": [p, K], "terms": [...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "order": [self.order, self.denom],
            "terms": self.terms_to_json(),
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        const WHAT: &str = "series JSON";
        let v: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| Error::parse(WHAT, e.column().saturating_sub(1), e.to_string()))?;
        let bad = |m: &str| Error::invalid(WHAT, m.to_string());
        let ord = v.get("order").ok_or_else(|| bad("missing order"))?;
        let ord = match ord.as_array().map(|a| a.as_slice()) {
            Some([p, k]) => ratio_from_json(p, k).ok_or_else(|| bad("bad order"))?,
            _ => return Err(bad("order must be [p, K]")),
        };
        let terms = v
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| bad("missing terms array"))?;
        let mut out = Vec::with_capacity(terms.len());
        for t in terms {
            match t.as_array().map(|a| a.as_slice()) {
                Some([e, k, n, d]) => {
                    let ex = ratio_from_json(e, k).ok_or_else(|| bad("bad exponent"))?;
                    let c = ratio_from_json(n, d).ok_or_else(|| bad("bad coefficient"))?;
                    out.push((ex, c));
                }
                _ => return Err(bad("each term must be [exp_num, K, coeff_num, coeff_den]")),
            }
        }
        check_exponent_ranges(&out, &ord)?;
        Series::from_terms(out, &ord)
    }

    /// Numerator-free view: the list of `(exponent, coefficient)` pairs.
    pub fn to_pairs(&self) -> Vec<(Rational, Rational)> {
        self.terms().map(|(e, c)| (e, c.clone())).collect()
    }
}

/// Keep parsed exponents within a range where `numerator * K` stays in `i64`.
fn check_exponent_ranges(terms: &[(Rational, Rational)], order: &Rational) -> Result<()> {
    let lim = BigInt::from(1i64 << 30);
    let ok = |r: &Rational| r.numer().abs() < lim && r.denom() < &lim;
    let mut k = BigInt::one();
    for r in terms.iter().map(|(e, _)| e).chain(std::iter::once(order)) {
        if !ok(r) {
            return Err(Error::Precision(format!("exponent {r} out of supported range")));
        }
        k = k.lcm(r.denom());
        if k > lim {
            return Err(Error::Precision("exponent denominators too large".into()));
        }
    }
    Ok(())
}

fn big_number(n: &BigInt) -> serde_json::Value {
    match n.to_string().parse::<serde_json::Number>() {
        Ok(x) => serde_json::Value::Number(x),
        Err(_) => serde_json::Value::String(n.to_string()),
    }
}

fn json_bigint(v: &serde_json::Value) -> Option<BigInt> {
    match v {
        serde_json::Value::Number(n) => n.to_string().parse().ok(),
        serde_json::Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

fn ratio_from_json(n: &serde_json::Value, d: &serde_json::Value) -> Option<Rational> {
    let n = json_bigint(n)?;
    let d = json_bigint(d)?;
    if d.is_zero() {
        None
    } else {
        Some(BigRational::new(n, d))
    }
}

fn parse_power(s: &str) -> Option<Rational> {
    let body = s.strip_prefix("q^")?;
    let body = body.strip_prefix('{').and_then(|b| b.strip_suffix('}')).unwrap_or(body);
    parse_rational(body)
}

impl<C: Scalar> fmt::Display for Series<C> {
    /// Human-readable form such as `q^-1/2 - 24 + 276*q^1/2 + O(q^3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let cs = c.to_string();
            let cs = if cs.contains(' ') { format!("({cs})") } else { cs };
            let (neg, body) = match cs.strip_prefix('-') {
                Some(b) if !cs.starts_with('(') => (true, b.to_string()),
                _ => (false, cs),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = body == "1";
            if Zero::is_zero(&e) {
                write!(f, "{body}")?;
            } else {
                if !unit {
                    write!(f, "{body}*")?;
                }
                if e.is_one() {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{e}")?;
                }
            }
        }
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "O(q^{})", self.order())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::{int, rat};

    fn qs(terms: &[(i64, i64, i64)], order: i64) -> QSeries {
        // (exp_num, exp_den, coeff)
        QSeries::from_terms(
            terms.iter().map(|&(n, d, c)| (rat(n, d), int(c))).collect(),
            &int(order),
        )
        .unwrap()
    }

    fn eta_product_oracle(order: i64) -> QSeries {
        // q^(1/24) * prod_{n < order} (1 - q^n), multiplied out term by term
        let mut p = QSeries::constant(int(1), &int(order)).unwrap();
        for n in 1..order {
            p = p.mul(&qs(&[(0, 1, 1), (n, 1, -1)], order));
        }
        let lead = QSeries::monomial(int(1), &rat(1, 24), &(int(order) + rat(1, 24))).unwrap();
        lead.mul(&p)
    }

    #[test]
    fn monomial_examples() {
        let m = QSeries::monomial(int(1), &rat(-1, 2), &int(10)).unwrap();
        assert_eq!(m.valuation(), Some(rat(-1, 2)));
        assert_eq!(m.order(), int(10));
        let z = QSeries::monomial(int(0), &int(0), &int(5)).unwrap();
        assert!(z.is_empty());
        assert_eq!(z.order(), int(5));
        assert!(QSeries::monomial(int(1), &int(3), &int(3)).is_err());
    }

    #[test]
    fn geometric_inverse() {
        let a = qs(&[(0, 1, 1), (1, 1, -1)], 12);
        let inv = a.invert().unwrap();
        for n in 0..12 {
            assert_eq!(inv.coeff(&int(n)).unwrap(), int(1));
        }
        let one = a.mul(&inv);
        assert_eq!(one, QSeries::constant(int(1), &int(12)).unwrap());
        assert!(QSeries::zero(&int(4)).unwrap().invert().is_err());
    }

    #[test]
    fn order_rules() {
        let a = qs(&[(1, 2, 1)], 5);
        let b = qs(&[(-1, 1, 3), (2, 1, 1)], 7);
        assert_eq!(a.plus(&b).order(), int(5));
        // min(1/2 + 7, -1 + 5)
        assert_eq!(a.mul(&b).order(), int(4));
        assert_eq!(b.invert().unwrap().order(), int(9));
    }

    #[test]
    fn eta_matches_product() {
        for order in [3, 7, 12] {
            let e = eta(&int(order)).unwrap();
            let o = eta_product_oracle(order);
            assert!(e.agrees_with(&o), "order {order}");
        }
        let e = eta(&int(8)).unwrap();
        let want = [(1, 1), (25, -1), (49, -1), (121, 1), (169, 1)];
        let got: Vec<(i64, i64)> = e
            .terms()
            .map(|(x, c)| (
                (x * BigInt::from(24)).to_integer().to_i64().unwrap(),
                c.to_integer().to_i64().unwrap(),
            ))
            .collect();
        assert_eq!(got, want);
        let tiny = eta(&rat(1, 12)).unwrap();
        assert_eq!(tiny.len(), 1);
        assert_eq!(tiny.valuation(), Some(rat(1, 24)));
    }

    #[test]
    fn eta_times_inverse_is_one() {
        let e = eta(&int(10)).unwrap();
        let p = e.mul(&e.invert().unwrap());
        assert_eq!(p.valuation(), Some(int(0)));
        assert_eq!(p.len(), 1);
        assert_eq!(e.invert().unwrap().valuation(), Some(rat(-1, 24)));
    }

    #[test]
    fn scale_and_shift() {
        let e = eta(&int(6)).unwrap();
        let e2 = e.scale_tau(&int(2)).unwrap();
        assert_eq!(e2.valuation(), Some(rat(2, 24)));
        let eh = e.scale_tau(&rat(1, 2)).unwrap();
        assert_eq!(eh.valuation(), Some(rat(1, 48)));
        assert_eq!(e2.scale_tau(&rat(1, 2)).unwrap(), e);

        let ints = qs(&[(0, 1, 2), (3, 1, -5)], 6);
        assert_eq!(ints.shift_tau(&int(1)).unwrap(), ints.to_cyc());
        let half = qs(&[(1, 2, 1)], 3);
        assert_eq!(half.shift_tau(&int(1)).unwrap(), qs(&[(1, 2, -1)], 3).to_cyc());
    }

    #[test]
    fn strict_equality_needs_matching_orders() {
        let a = qs(&[(0, 1, 1)], 4);
        let b = qs(&[(0, 1, 1)], 6);
        assert!(a.agrees_with(&b));
        assert!(matches!(a.strict_eq(&b), Err(Error::OrderMismatch(..))));
        assert!(a.strict_eq(&a.clone()).unwrap());
    }

    #[test]
    fn text_round_trip() {
        let s = eta(&int(6)).unwrap().scale_tau(&rat(1, 2)).unwrap();
        let t = s.to_text();
        assert!(t.ends_with("O(q^{144/48})\n"), "{t}");
        assert_eq!(QSeries::parse_text(&t).unwrap(), s);
        assert!(QSeries::parse_text("1/1 q^{0/1}\n").is_err());
        assert!(QSeries::parse_text("1/1 q^{5/1}\nO(q^{2/1})\n").is_err());
    }

    #[test]
    fn json_round_trip_with_big_coefficients() {
        let big: BigInt = "123456789012345678901234567891".parse().unwrap();
        let s = QSeries::from_terms(
            vec![(rat(-1, 2), BigRational::new(big.clone(), BigInt::from(2)))],
            &int(3),
        )
        .unwrap();
        let j = s.to_json().to_string();
        assert!(j.contains("123456789012345678901234567891"), "{j}");
        assert_eq!(QSeries::from_json(&j).unwrap(), s);
        assert!(QSeries::from_json(r#"{"order":[1,1],"terms":[[0,1,1]]}"#).is_err());
    }

    #[test]
    fn display_form() {
        let s = qs(&[(-1, 2, 1), (0, 1, -24), (1, 2, 276)], 1);
        assert_eq!(s.to_string(), "q^-1/2 - 24 + 276*q^1/2 + O(q^1)");
    }
}
