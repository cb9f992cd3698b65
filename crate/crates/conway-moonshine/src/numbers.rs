//! Small helpers around `BigRational` shared by the other modules.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub fn lcm_i64(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        0
    } else {
        a.lcm(&b)
    }
}

/// Solve `a*x + b*y = g` with `g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Euler's totient.
pub fn phi(mut n: u64) -> u64 {
    let mut r = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            r -= r / p;
        }
        p += 1;
    }
    if n > 1 {
        r -= r / n;
    }
    r
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut v: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    v.sort_unstable();
    v
}

/// The value `r * k` as an `i64`, failing unless it is an integer.
pub fn scaled_numerator(r: &Rational, k: i64) -> Result<i64> {
    let v = r * BigInt::from(k);
    if !v.is_integer() {
        return Err(Error::Precision(format!("{r} is not a multiple of 1/{k}")));
    }
    v.to_integer()
        .to_i64()
        .ok_or_else(|| Error::Precision(format!("exponent {r} out of range")))
}

/// Denominator of `r` as an `i64`.
pub fn denom_i64(r: &Rational) -> Result<i64> {
    r.denom()
        .to_i64()
        .ok_or_else(|| Error::Precision(format!("denominator of {r} out of range")))
}

/// Parse `p` or `p/q` into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

/// `p/q` with the denominator always present.
pub fn fmt_fraction(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn sign_of(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

pub fn is_one(r: &Rational) -> bool {
    r.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totient_small() {
        let want = [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4];
        for (n, w) in (1..=12).zip(want) {
            assert_eq!(phi(n), w);
        }
    }

    #[test]
    fn ext_gcd_identity() {
        for (a, b) in [(12, 18), (-7, 5), (0, 9), (35, -14)] {
            let (g, x, y) = ext_gcd(a, b);
            assert_eq!(a * x + b * y, g);
            assert_eq!(g, gcd_i64(a, b).abs());
        }
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("-3/6"), Some(rat(-1, 2)));
        assert_eq!(parse_rational("7"), Some(int(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
