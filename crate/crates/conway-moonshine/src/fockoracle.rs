//! Graded super traces on the fermionic Fock spaces, computed mode by mode.
//!
//! The untwisted space has one fermionic mode per eigenvector and energy
//! `n + 1/2`, the twisted space one per eigenvector and energy `n >= 1` tensored
//! with `CM`. A mode with eigenvalue `eps` and energy `r` contributes the factor
//! `1 - eps q^r` to the super trace. Nothing here uses eta functions.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};
use crate::frameshape::RootOfUnity;
use crate::numbers::{int, lcm_i64, rat, Rational};
use crate::qseries::{CycSeries, QSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sector {
    Untwisted,
    Twisted,
}

#[derive(Clone, Debug)]
pub struct ModeSystem {
    pub eigenvalues: Vec<RootOfUnity>,
    pub sector: Sector,
    pub max_degree: i64,
}

impl ModeSystem {
    pub fn new(eigenvalues: Vec<RootOfUnity>, sector: Sector, max_degree: i64) -> Result<Self> {
        if eigenvalues.len() != 24 {
            return Err(Error::invalid(
                "mode system",
                format!("expected 24 eigenvalues, got {}", eigenvalues.len()),
            ));
        }
        if max_degree < 0 {
            return Err(Error::invalid("mode system", "max degree must be non-negative"));
        }
        Ok(ModeSystem { eigenvalues, sector, max_degree })
    }

    /// Mode energies in units of 1/2, below `limit` half-units.
    fn energies(&self, limit: i64) -> Vec<i64> {
        match self.sector {
            Sector::Untwisted => (0..).map(|n| 2 * n + 1).take_while(|&r| r < limit).collect(),
            Sector::Twisted => (1..).map(|n| 2 * n).take_while(|&r| r < limit).collect(),
        }
    }

    /// Shift of the grading, in half-units: `-1/2` untwisted, `+1` twisted.
    fn offset(&self) -> i64 {
        match self.sector {
            Sector::Untwisted => -1,
            Sector::Twisted => 2,
        }
    }
}

/// Multiply out `prod (1 - eps q^(r/2))` over all modes with energy below
/// `limit / 2`; exact below `q^(limit/2)`.
fn mode_product(ms: &ModeSystem, limit: i64) -> Vec<CycNumber> {
    let mut p = vec![CycNumber::zero(); limit.max(1) as usize];
    p[0] = CycNumber::one();
    for r in ms.energies(limit) {
        for ev in &ms.eigenvalues {
            let eps = CycNumber::zeta(ev.order, ev.exp as i64);
            for j in (r as usize..p.len()).rev() {
                if !p[j - r as usize].is_zero() {
                    let t = p[j - r as usize].mul(&eps);
                    p[j] = p[j].sub(&t);
                }
            }
        }
    }
    p
}

fn to_series(coeffs: Vec<CycNumber>, offset: i64, order_half: i64, scale: &CycNumber) -> Result<QSeries> {
    let terms: Vec<(Rational, CycNumber)> = coeffs
        .into_iter()
        .enumerate()
        .filter(|(j, _)| (*j as i64 + offset) < order_half)
        .map(|(j, c)| (rat(j as i64 + offset, 2), c.mul(scale)))
        .collect();
    CycSeries::from_terms(terms, &rat(order_half, 2))?.to_rational()
}

/// `q^(-1/2) prod_(n >= 0) prod_i (1 - eps_i q^(n+1/2))`, known through `q^max_degree`.
pub fn untwisted_supertrace(ms: &ModeSystem) -> Result<QSeries> {
    if ms.sector != Sector::Untwisted {
        return Err(Error::invalid("mode system", "expected the untwisted sector"));
    }
    // exact below q^(L/2) before the shift; want order max_degree + 1/2
    let limit = 2 * ms.max_degree + 2;
    let p = mode_product(ms, limit);
    to_series(p, ms.offset(), limit + ms.offset(), &CycNumber::one())
}

/// `C q prod_(n >= 1) prod_i (1 - eps_i q^n)`, known through `q^max_degree`.
pub fn twisted_supertrace(ms: &ModeSystem, c_value: &CycNumber) -> Result<QSeries> {
    if ms.sector != Sector::Twisted {
        return Err(Error::invalid("mode system", "expected the twisted sector"));
    }
    let limit = 2 * ms.max_degree;
    let p = mode_product(ms, limit.max(2));
    to_series(p, ms.offset(), 2 * ms.max_degree + 2, c_value)
}

/// Super trace by listing every set of distinct modes with total energy at
/// most `max_degree`, weighted by `(-1)^|S| prod eps`. Returns a series known
/// through `q^max_degree` (untwisted) or the mode part shifted by `q` (twisted,
/// without the `CM` factor).
pub fn enumerate_supertrace(ms: &ModeSystem) -> Result<QSeries> {
    let limit = 2 * ms.max_degree + 1 - ms.offset();
    let n = ms
        .eigenvalues
        .iter()
        .fold(1i64, |a, r| lcm_i64(a, r.order as i64)) as u64;
    let modes: Vec<(i64, u64)> = ms
        .energies(limit)
        .into_iter()
        .flat_map(|r| ms.eigenvalues.iter().map(move |ev| (r, ev.exp_at(n))))
        .collect();
    // histogram[energy][exponent of zeta_n]
    let mut hist: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
    fn walk(
        modes: &[(i64, u64)],
        start: usize,
        energy: i64,
        expo: u64,
        sign: i64,
        limit: i64,
        n: u64,
        hist: &mut BTreeMap<i64, Vec<i64>>,
    ) {
        hist.entry(energy).or_insert_with(|| vec![0; n as usize])[(expo % n) as usize] += sign;
        for i in start..modes.len() {
            let (r, e) = modes[i];
            if energy + r >= limit {
                continue;
            }
            walk(modes, i + 1, energy + r, expo + e, -sign, limit, n, hist);
        }
    }
    walk(&modes, 0, 0, 0, 1, limit, n, &mut hist);
    let terms: Vec<(Rational, CycNumber)> = hist
        .into_iter()
        .map(|(e, h)| (rat(e + ms.offset(), 2), CycNumber::from_exponent_counts(n, &h)))
        .collect();
    CycSeries::from_terms(terms, &rat(limit + ms.offset(), 2))?.to_rational()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Assembly {
    /// `V^{s natural}`
    Module,
    /// `V^{s natural}_tw`
    Twisted,
}

/// Data for one spin lift: its 24 eigenvalues and its spinor super trace.
#[derive(Clone, Debug)]
pub struct LiftData {
    pub eigenvalues: Vec<RootOfUnity>,
    pub c_value: CycNumber,
}

/// The four-term combination
/// `1/2 (t~_g +- t~_(-g) + C_g eta_g -+ C_(zg) eta_(-g))` built from mode products,
/// with `+ ... -` for the module and `- ... +` for its twisted module.
pub fn assemble_supertrace(kind: Assembly, g: &LiftData, neg: &LiftData, max_degree: i64) -> Result<QSeries> {
    let u = |d: &LiftData| {
        untwisted_supertrace(&ModeSystem::new(d.eigenvalues.clone(), Sector::Untwisted, max_degree)?)
    };
    let t = |d: &LiftData| {
        twisted_supertrace(&ModeSystem::new(d.eigenvalues.clone(), Sector::Twisted, max_degree)?, &d.c_value)
    };
    let (ug, un, tg, tn) = (u(g)?, u(neg)?, t(g)?, t(neg)?);
    let s = match kind {
        Assembly::Module => ug.plus(&un).plus(&tg).minus(&tn),
        Assembly::Twisted => ug.minus(&un).plus(&tg).plus(&tn),
    };
    s.scaled(&rat(1, 2)).truncate(&(int(max_degree) + rat(1, 2)))
}

/// Eigenvalues of `-g` from those of `g`.
pub fn negated(eigs: &[RootOfUnity]) -> Vec<RootOfUnity> {
    eigs.iter().map(|r| r.negated()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frameshape::FrameShape;

    fn eigs(s: &str) -> Vec<RootOfUnity> {
        FrameShape::parse(s).unwrap().eigenvalue_list()
    }

    #[test]
    fn identity_low_coefficients() {
        let ms = ModeSystem::new(eigs("1^24"), Sector::Untwisted, 3).unwrap();
        let s = untwisted_supertrace(&ms).unwrap();
        assert_eq!(s.coeff(&rat(-1, 2)).unwrap(), int(1));
        assert_eq!(s.coeff(&int(0)).unwrap(), int(-24));
        assert_eq!(s.coeff(&rat(1, 2)).unwrap(), int(276));
    }

    #[test]
    fn twisted_identity_vanishes() {
        let ms = ModeSystem::new(eigs("1^24"), Sector::Twisted, 4).unwrap();
        assert!(twisted_supertrace(&ms, &CycNumber::zero()).unwrap().is_empty());
    }

    #[test]
    fn enumeration_agrees_with_product() {
        for s in ["1^24", "2^24/1^24", "3^12/1^12"] {
            for sector in [Sector::Untwisted, Sector::Twisted] {
                let ms = ModeSystem::new(eigs(s), sector, 2).unwrap();
                let a = enumerate_supertrace(&ms).unwrap();
                let b = match sector {
                    Sector::Untwisted => untwisted_supertrace(&ms).unwrap(),
                    Sector::Twisted => twisted_supertrace(&ms, &CycNumber::one()).unwrap(),
                };
                assert!(a.agrees_with(&b), "{s} {sector:?}\n{a}\n{b}");
            }
        }
    }

    #[test]
    fn identity_module_assembly() {
        let e = LiftData { eigenvalues: eigs("1^24"), c_value: CycNumber::zero() };
        let z = LiftData { eigenvalues: eigs("2^24/1^24"), c_value: CycNumber::from_int(4096) };
        let s = assemble_supertrace(Assembly::Module, &e, &z, 2).unwrap();
        assert_eq!(s.coeff(&rat(-1, 2)).unwrap(), int(1));
        assert_eq!(s.coeff(&int(0)).unwrap(), int(0));
        assert_eq!(s.coeff(&rat(1, 2)).unwrap(), int(276));
        assert_eq!(s.coeff(&int(1)).unwrap(), int(-2048));
    }
}
