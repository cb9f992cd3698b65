//! Frame shapes `prod m^(k_m)` and the eta quotients they define.
//!
//! A Frame shape records the characteristic polynomial
//! `det(1 - g x) = prod (1 - x^m)^(k_m)` of an automorphism of a
//! 24-dimensional lattice. The canonical text form lists the numerator and
//! denominator factors in ascending `m`, separated by `.`, for example
//! `1^3.6^9/2^3.3^9`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numbers::{denom_i64, lcm_i64, scaled_numerator, Rational};
use crate::qseries::QSeries;

const WHAT: &str = "Frame shape";

/// An eigenvalue `exp(2 pi i j / d)` with `gcd(j, d) = 1`, `0 <= j < d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootOfUnity {
    pub order: u64,
    pub exp: u64,
}

impl RootOfUnity {
    pub fn new(num: i64, den: u64) -> Self {
        let g = (num.rem_euclid(den as i64) as u64).gcd(&den);
        let d = den / g;
        RootOfUnity {
            order: d,
            exp: (num.rem_euclid(den as i64) as u64) / g,
        }
    }

    /// The inverse root.
    pub fn inverse(self) -> Self {
        RootOfUnity::new(-(self.exp as i64), self.order)
    }

    /// `-self`.
    pub fn negated(self) -> Self {
        RootOfUnity::new(2 * self.exp as i64 + self.order as i64, 2 * self.order)
    }

    /// Exponent of this root at a level `n` divisible by its order.
    pub fn exp_at(self, n: u64) -> u64 {
        debug_assert_eq!(n % self.order, 0);
        self.exp * (n / self.order)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FrameShape {
    exps: BTreeMap<u64, i64>,
}

impl FrameShape {
    /// Build from `(m, k_m)` pairs and validate.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u64, i64)>) -> Result<Self> {
        let mut exps = BTreeMap::new();
        for (m, k) in pairs {
            if m == 0 {
                return Err(Error::invalid(WHAT, "factor 0 is not allowed"));
            }
            *exps.entry(m).or_insert(0) += k;
        }
        exps.retain(|_, k| *k != 0);
        let s = FrameShape { exps };
        s.validate()?;
        Ok(s)
    }

    fn validate(&self) -> Result<()> {
        let deg: i128 = self
            .exps
            .iter()
            .map(|(&m, &k)| m as i128 * k as i128)
            .sum();
        if deg != 24 {
            return Err(Error::invalid(WHAT, format!("degree {deg}, expected 24")));
        }
        for d in self.divisor_orders() {
            let mult = self.multiplicity(d);
            if mult < 0 {
                return Err(Error::invalid(
                    WHAT,
                    format!("primitive {d}-th roots of unity would have multiplicity {mult}"),
                ));
            }
        }
        Ok(())
    }

    /// Orders `d` dividing some `m` in the support.
    fn divisor_orders(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self
            .exps
            .keys()
            .flat_map(|&m| (1..=m).filter(move |d| m % d == 0))
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Multiplicity of each primitive `d`-th root of unity as an eigenvalue.
    pub fn multiplicity(&self, d: u64) -> i64 {
        self.exps
            .iter()
            .filter(|(&m, _)| m % d == 0)
            .map(|(_, &k)| k)
            .sum()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let pairs = parse_factors(text)?;
        Self::from_pairs(pairs).map_err(|e| match e {
            Error::Invalid { msg, .. } => Error::parse(WHAT, text.len(), msg),
            other => other,
        })
    }

    pub fn k(&self, m: u64) -> i64 {
        self.exps.get(&m).copied().unwrap_or(0)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.exps.iter().map(|(&m, &k)| (m, k))
    }

    /// Trace on the 24-dimensional space: `k_1`.
    pub fn chi(&self) -> i64 {
        self.k(1)
    }

    /// Multiplicity of the eigenvalue 1, equal to `sum k_m`.
    pub fn fixed_points(&self) -> i64 {
        self.exps.values().sum()
    }

    pub fn is_fixed_point_free(&self) -> bool {
        self.fixed_points() == 0
    }

    /// Least common multiple of the support.
    pub fn level(&self) -> u64 {
        self.exps.keys().fold(1, |a, &m| lcm_i64(a as i64, m as i64) as u64)
    }

    /// Frame shape of `-g`.
    ///
    /// For odd `m`, `1 + x^m = (1 - x^(2m)) / (1 - x^m)` turns each factor
    /// `(1 - x^m)^k` of `det(1 - g x)` into `(1 - x^(2m))^k (1 - x^m)^(-k)` under
    /// `x -> -x`; even `m` are unchanged.
    pub fn negate(&self) -> Self {
        let mut out: BTreeMap<u64, i64> = BTreeMap::new();
        for (&m, &k) in &self.exps {
            if m % 2 == 1 {
                *out.entry(2 * m).or_insert(0) += k;
                *out.entry(m).or_insert(0) -= k;
            } else {
                *out.entry(m).or_insert(0) += k;
            }
        }
        out.retain(|_, k| *k != 0);
        let s = FrameShape { exps: out };
        debug_assert!(s.validate().is_ok(), "negation broke validity: {s}");
        s
    }

    /// The eigenvalue multiset as `(root, multiplicity)`, sorted by root.
    pub fn eigenvalues(&self) -> Vec<(RootOfUnity, u64)> {
        let mut out = Vec::new();
        for d in self.divisor_orders() {
            let mult = self.multiplicity(d);
            if mult == 0 {
                continue;
            }
            for j in 0..d {
                if j.gcd(&d) == 1 {
                    out.push((RootOfUnity::new(j as i64, d), mult as u64));
                }
            }
        }
        out.sort();
        out
    }

    /// All 24 eigenvalues, repeated by multiplicity.
    pub fn eigenvalue_list(&self) -> Vec<RootOfUnity> {
        self.eigenvalues()
            .into_iter()
            .flat_map(|(r, m)| std::iter::repeat_n(r, m as usize))
            .collect()
    }

    /// Canonical `[[m, k_m], ...]` JSON, ascending `m`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.exps
                .iter()
                .map(|(&m, &k)| serde_json::json!([m, k]))
                .collect(),
        )
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: Vec<(u64, i64)> = serde_json::from_str(text)
            .map_err(|e| Error::parse(WHAT, e.column().saturating_sub(1), e.to_string()))?;
        Self::from_pairs(v)
    }

    /// `eta_pi(s tau) = prod_m eta(m s tau)^(k_m)`, known below `q^order`.
    ///
    /// Expanded as `q^s P(q^s)` with `P(x) = prod_m prod_n (1 - x^(mn))^(k_m)`,
    /// whose coefficients satisfy `j p_j = -sum_{i=1..j} c_i p_(j-i)` where
    /// `c_i = sum_{m | i} k_m m sigma(i/m)`.
    pub fn eta_quotient(&self, s: &Rational, order: &Rational) -> Result<QSeries> {
        if s <= &Rational::zero() {
            return Err(Error::invalid("scale factor", format!("{s} is not positive")));
        }
        let k = lcm_i64(denom_i64(s)?, denom_i64(order)?);
        let step = scaled_numerator(s, k)?;
        let o = scaled_numerator(order, k)?;
        // terms q^(s (1 + j)) for j < count
        let count = if o <= step {
            0
        } else {
            ((o - step) + step - 1) / step
        } as usize;
        let p = self.product_coefficients(count);
        let mut terms = BTreeMap::new();
        for (j, c) in p.into_iter().enumerate() {
            if !c.is_zero() {
                terms.insert(step * (1 + j as i64), BigRational::from_integer(c));
            }
        }
        Ok(QSeries::from_raw(k, terms, o))
    }

    /// First `count` coefficients of `prod_m prod_n (1 - x^(mn))^(k_m)`.
    pub fn product_coefficients(&self, count: usize) -> Vec<BigInt> {
        if count == 0 {
            return Vec::new();
        }
        let sigma = divisor_sums(count);
        let c: Vec<i64> = (0..count)
            .map(|i| {
                if i == 0 {
                    return 0;
                }
                self.exps
                    .iter()
                    .filter(|(&m, _)| (i as u64).is_multiple_of(m))
                    .map(|(&m, &k)| k * m as i64 * sigma[i / m as usize])
                    .sum()
            })
            .collect();
        let nz: Vec<(usize, BigInt)> = c
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| (i, BigInt::from(x)))
            .collect();
        let mut p: Vec<BigInt> = Vec::with_capacity(count);
        p.push(BigInt::from(1));
        for j in 1..count {
            let mut acc = BigInt::zero();
            for (i, ci) in &nz {
                if *i > j {
                    break;
                }
                let prev = &p[j - i];
                if !prev.is_zero() {
                    acc += ci * prev;
                }
            }
            let (q, r) = acc.div_rem(&BigInt::from(j));
            debug_assert!(r.is_zero(), "non-integral eta quotient coefficient");
            p.push(-q);
        }
        p
    }
}

fn divisor_sums(n: usize) -> Vec<i64> {
    let mut s = vec![0i64; n.max(1)];
    for d in 1..n {
        let mut m = d;
        while m < n {
            s[m] += d as i64;
            m += d;
        }
    }
    s
}

fn parse_factors(text: &str) -> Result<Vec<(u64, i64)>> {
    let b = text.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    let mut sign = 1i64;
    let mut seen_slash = false;
    let mut need_sep = false;
    let mut in_list = 0usize;
    let read_int = |i: &mut usize| -> Result<u64> {
        let start = *i;
        while *i < b.len() && b[*i].is_ascii_digit() {
            *i += 1;
        }
        if start == *i {
            return Err(Error::parse(WHAT, start, "expected an integer"));
        }
        text[start..*i]
            .parse::<u64>()
            .ok()
            .filter(|&v| v <= 1 << 20)
            .ok_or_else(|| Error::parse(WHAT, start, "integer out of range"))
    };
    while i < b.len() {
        match b[i] {
            b' ' | b'\t' | b'.' => {
                i += 1;
                need_sep = false;
            }
            b'/' => {
                if seen_slash {
                    return Err(Error::parse(WHAT, i, "more than one '/'"));
                }
                if in_list == 0 {
                    return Err(Error::parse(WHAT, i, "empty numerator"));
                }
                seen_slash = true;
                sign = -1;
                in_list = 0;
                need_sep = false;
                i += 1;
            }
            c if c.is_ascii_digit() => {
                if need_sep {
                    return Err(Error::parse(WHAT, i, "factors must be separated by '.' or space"));
                }
                let m = read_int(&mut i)?;
                if m == 0 {
                    return Err(Error::parse(WHAT, i - 1, "factor 0 is not allowed"));
                }
                let mut k = 1u64;
                let mut k_sign = 1i64;
                let read_sign = |i: &mut usize| -> i64 {
                    match b.get(*i) {
                        Some(b'-') => {
                            *i += 1;
                            -1
                        }
                        Some(b'+') => {
                            *i += 1;
                            1
                        }
                        _ => 1,
                    }
                };
                need_sep = true;
                if i < b.len() && b[i] == b'^' {
                    i += 1;
                    if i < b.len() && b[i] == b'{' {
                        i += 1;
                        k_sign = read_sign(&mut i);
                        k = read_int(&mut i)?;
                        if i >= b.len() || b[i] != b'}' {
                            return Err(Error::parse(WHAT, i, "expected '}'"));
                        }
                        i += 1;
                        // a braced exponent ends the factor unambiguously
                        need_sep = false;
                    } else {
                        k_sign = read_sign(&mut i);
                        k = read_int(&mut i)?;
                    }
                }
                out.push((m, sign * k_sign * k as i64));
                in_list += 1;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(Error::parse(WHAT, i, format!("unexpected character {ch:?}")));
            }
        }
    }
    if in_list == 0 {
        return Err(Error::parse(
            WHAT,
            text.len(),
            if seen_slash { "empty denominator" } else { "empty Frame shape" },
        ));
    }
    Ok(out)
}

fn fmt_list(f: &mut fmt::Formatter<'_>, items: &[(u64, i64)]) -> fmt::Result {
    for (idx, (m, k)) in items.iter().enumerate() {
        if idx > 0 {
            write!(f, ".")?;
        }
        write!(f, "{m}^{k}")?;
    }
    Ok(())
}

impl fmt::Display for FrameShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num: Vec<(u64, i64)> = self.pairs().filter(|p| p.1 > 0).collect();
        let den: Vec<(u64, i64)> = self.pairs().filter(|p| p.1 < 0).map(|(m, k)| (m, -k)).collect();
        fmt_list(f, &num)?;
        if !den.is_empty() {
            write!(f, "/")?;
            fmt_list(f, &den)?;
        }
        Ok(())
    }
}

impl serde::Serialize for FrameShape {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl std::str::FromStr for FrameShape {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FrameShape::parse(s)
    }
}

/// The identity shape `1^24`.
pub fn identity() -> FrameShape {
    FrameShape::from_pairs([(1, 24)]).expect("1^24 is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::{int, rat};
    use num_traits::ToPrimitive;

    fn fs(s: &str) -> FrameShape {
        FrameShape::parse(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        let a = fs("2^24/1^24");
        assert_eq!(a.pairs().collect::<Vec<_>>(), vec![(1, -24), (2, 24)]);
        let c = fs("1^3 6^9/2^3 3^9");
        assert_eq!(c.pairs().collect::<Vec<_>>(), vec![(1, 3), (2, -3), (3, -9), (6, 9)]);
        assert_eq!(fs("1^{12}6^{12}/2^{12}3^{12}"), fs("1^12.6^12/2^12.3^12"));
        assert_eq!(fs("1^8 2^-8 4^8"), fs("1^8.4^8/2^8"));
        assert_eq!(fs("1^-3.3^9"), fs("3^9/1^3"));
        assert_eq!(fs("2^{-12} 4^{12}"), fs("4^12/2^12"));
        assert!(FrameShape::parse("2^--1").is_err());
        assert!(FrameShape::parse("1^23").is_err());
        assert!(FrameShape::parse("2^66^6").is_err());
        assert!(FrameShape::parse("1^24/").is_err());
        assert!(FrameShape::parse("1^24//1").is_err());
        assert!(FrameShape::parse("x").is_err());
        // degree 24 but primitive square roots would have multiplicity -1
        assert!(FrameShape::parse("1^26/2^1").is_err());
    }

    #[test]
    fn canonical_print_round_trips() {
        for s in ["2^24/1^24", "1^3.6^9/2^3.3^9", "1^24", "2^12", "1^8.2^8"] {
            assert_eq!(fs(s).to_string(), s);
        }
        let j = fs("1^3.6^9/2^3.3^9").to_json().to_string();
        assert_eq!(j, "[[1,3],[2,-3],[3,-9],[6,9]]");
        assert_eq!(FrameShape::from_json(&j).unwrap(), fs("1^3.6^9/2^3.3^9"));
    }

    #[test]
    fn chi_examples() {
        assert_eq!(fs("1^24").chi(), 24);
        assert_eq!(fs("2^24/1^24").chi(), -24);
        assert_eq!(fs("3^12/1^12").chi(), -12);
    }

    #[test]
    fn negate_examples() {
        assert_eq!(fs("1^24").negate(), fs("2^24/1^24"));
        assert_eq!(fs("3^12/1^12").negate(), fs("1^12.6^12/2^12.3^12"));
        assert_eq!(fs("5^6/1^6").negate(), fs("1^6.10^6/2^6.5^6"));
    }

    #[test]
    fn eigenvalue_examples() {
        let m = fs("2^24/1^24").eigenvalues();
        assert_eq!(m, vec![(RootOfUnity { order: 2, exp: 1 }, 24)]);
        assert_eq!(fs("1^24").eigenvalues(), vec![(RootOfUnity { order: 1, exp: 0 }, 24)]);
        let t = fs("3^12/1^12").eigenvalues();
        assert_eq!(
            t,
            vec![
                (RootOfUnity { order: 3, exp: 1 }, 12),
                (RootOfUnity { order: 3, exp: 2 }, 12)
            ]
        );
    }

    #[test]
    fn eigenvalues_by_brute_force_listing() {
        // list every m-th root k_m times (signed), then cancel
        for s in ["1^3.6^9/2^3.3^9", "2^3.3^3.5^3.30^3/1^3.6^3.10^3.15^3", "4^1.56^1/8^1.28^1"] {
            let f = fs(s);
            let mut counts: BTreeMap<RootOfUnity, i64> = BTreeMap::new();
            for (m, k) in f.pairs() {
                for j in 0..m {
                    *counts.entry(RootOfUnity::new(j as i64, m)).or_insert(0) += k;
                }
            }
            counts.retain(|_, c| *c != 0);
            let want: Vec<(RootOfUnity, u64)> =
                counts.into_iter().map(|(r, c)| (r, c as u64)).collect();
            assert_eq!(f.eigenvalues(), want, "{s}");
            assert_eq!(f.eigenvalue_list().len(), 24);
        }
    }

    #[test]
    fn delta_is_eta_to_the_24() {
        let d = identity().eta_quotient(&int(1), &int(6)).unwrap();
        let coeffs: Vec<i64> = (1..6)
            .map(|n| d.coeff(&int(n)).unwrap().to_integer().to_i64().unwrap())
            .collect();
        assert_eq!(coeffs, vec![1, -24, 252, -1472, 4830]);
    }

    #[test]
    fn eta_quotient_matches_generic_product() {
        let order = int(8);
        for s in ["2^24/1^24", "1^3.6^9/2^3.3^9", "8^6/4^6"] {
            for scale in [rat(1, 2), int(1)] {
                let f = fs(s);
                let fast = f.eta_quotient(&scale, &order).unwrap();
                let mut slow = QSeries::constant(int(1), &int(40)).unwrap();
                for (m, k) in f.pairs() {
                    let e = crate::qseries::eta(&int(40))
                        .unwrap()
                        .scale_tau(&(int(m as i64) * &scale))
                        .unwrap();
                    slow = slow.mul(&e.powi(k).unwrap());
                }
                assert!(fast.agrees_with(&slow), "{s} at scale {scale}");
                assert!(slow.order() >= order, "{s}: slow order {}", slow.order());
                assert_eq!(fast.valuation(), Some(scale.clone()));
            }
        }
    }
}
