//! The spinor module `CM` of the Clifford algebra on 24 generators.
//!
//! `CM` is realised as the exterior algebra on `a^-_1, ..., a^-_12` applied to
//! a vector `v_tw` killed by every `a^+_k`, so basis vectors are indexed by
//! 12-bit masks `S`. The 24 orthonormal generators are paired as
//! `a^-_k = (e_(2k) + i e_(2k+1)) / sqrt 2`, `a^+_k = (e_(2k) - i e_(2k+1)) / sqrt 2`
//! (0-based generator indices). Working with `f_j = sqrt 2 e_j` keeps every
//! structure constant in `Q(i)`: each `f_j` maps a basis vector to a multiple
//! `+-1, +-i, +-2, +-2i` of another basis vector.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};
use crate::frameshape::{FrameShape, RootOfUnity};
use crate::lattice::BinaryCode;
use crate::numbers::{lcm_i64, rat, Rational};

pub const PAIRS: usize = 12;
pub const DIM: usize = 1 << PAIRS;
pub const GENERATORS: usize = 2 * PAIRS;

/// Split a Frame shape's eigenvalues into 12 inverse pairs and return one
/// representative `lambda = exp(2 pi i theta)` per pair with `theta <= 1/2`.
pub fn eigenpairs(shape: &FrameShape) -> Result<Vec<RootOfUnity>> {
    let ev: BTreeMap<RootOfUnity, u64> = shape.eigenvalues().into_iter().collect();
    pair_up(&ev)
}

fn pair_up(ev: &BTreeMap<RootOfUnity, u64>) -> Result<Vec<RootOfUnity>> {
    let mut out = Vec::new();
    for (&r, &m) in ev {
        let inv = r.inverse();
        if inv == r {
            if m % 2 == 1 {
                return Err(Error::invalid(
                    "eigenvalue pairing",
                    format!("self-inverse eigenvalue of order {} has odd multiplicity {m}", r.order),
                ));
            }
            out.extend(std::iter::repeat_n(r, m as usize / 2));
        } else if 2 * r.exp < r.order {
            if ev.get(&inv) != Some(&m) {
                return Err(Error::invalid(
                    "eigenvalue pairing",
                    format!("exp(2 pi i {}/{}) is not matched by its inverse", r.exp, r.order),
                ));
            }
            out.extend(std::iter::repeat_n(r, m as usize));
        }
    }
    if out.len() != PAIRS {
        return Err(Error::invalid(
            "eigenvalue pairing",
            format!("expected 12 pairs, found {}", out.len()),
        ));
    }
    Ok(out)
}

fn common_level(pairs: &[RootOfUnity]) -> u64 {
    pairs
        .iter()
        .fold(1i64, |a, r| lcm_i64(a, r.order as i64)) as u64
}

/// `nu = sign * prod exp(pi i theta_j)` with `lambda_j = exp(2 pi i theta_j)`, `theta_j in [0, 1)`.
pub fn nu(pairs: &[RootOfUnity], sign: i8) -> CycNumber {
    let n = common_level(pairs);
    let total: u64 = pairs.iter().map(|r| r.exp_at(n)).sum();
    let z = CycNumber::zeta(2 * n, total as i64);
    if sign < 0 {
        z.neg()
    } else {
        z
    }
}

/// `C = nu * prod_j (1 - lambda_j^-1)`.
pub fn spinor_supertrace_closed(pairs: &[RootOfUnity], nu_sign: i8) -> Result<CycNumber> {
    check_pairs(pairs)?;
    let n = common_level(pairs);
    let one = CycNumber::one();
    let mut acc = nu(pairs, nu_sign);
    for r in pairs {
        acc = acc.mul(&one.sub(&CycNumber::zeta(n, -(r.exp_at(n) as i64))));
    }
    Ok(acc)
}

/// `nu * sum_S (-1)^|S| prod_(j in S) lambda_j^-1`, summed over all 4096 subsets.
pub fn spinor_supertrace_oracle(pairs: &[RootOfUnity], nu_sign: i8) -> Result<CycNumber> {
    check_pairs(pairs)?;
    let n = common_level(pairs);
    let exps: Vec<u64> = pairs.iter().map(|r| r.exp_at(n)).collect();
    let mut hist = vec![0i64; n as usize];
    for s in 0..DIM {
        let mut e = 0u64;
        for (j, &x) in exps.iter().enumerate() {
            if s >> j & 1 == 1 {
                e += n - x % n;
            }
        }
        let parity = if (s as u32).count_ones().is_multiple_of(2) { 1 } else { -1 };
        hist[(e % n) as usize] += parity;
    }
    Ok(nu(pairs, nu_sign).mul(&CycNumber::from_exponent_counts(n, &hist)))
}

/// The same subset sum split into its even and odd halves.
pub fn spinor_supertrace_by_parity(pairs: &[RootOfUnity]) -> Result<(CycNumber, CycNumber)> {
    check_pairs(pairs)?;
    let n = common_level(pairs);
    let exps: Vec<u64> = pairs.iter().map(|r| r.exp_at(n)).collect();
    let mut even = vec![0i64; n as usize];
    let mut odd = vec![0i64; n as usize];
    for s in 0..DIM {
        let e: u64 = exps
            .iter()
            .enumerate()
            .filter(|(j, _)| s >> j & 1 == 1)
            .map(|(_, &x)| n - x % n)
            .sum();
        let h = if (s as u32).count_ones().is_multiple_of(2) { &mut even } else { &mut odd };
        h[(e % n) as usize] += 1;
    }
    Ok((
        CycNumber::from_exponent_counts(n, &even),
        CycNumber::from_exponent_counts(n, &odd),
    ))
}

fn check_pairs(pairs: &[RootOfUnity]) -> Result<()> {
    if pairs.len() != PAIRS {
        return Err(Error::invalid(
            "eigenvalue pairing",
            format!("expected 12 eigenvalues, got {}", pairs.len()),
        ));
    }
    Ok(())
}

/// Closed-form super trace of the lift of a class with the given shape.
pub fn supertrace_for_shape(shape: &FrameShape, nu_sign: i8) -> Result<CycNumber> {
    spinor_supertrace_closed(&eigenpairs(shape)?, nu_sign)
}

/// Coefficient `sign * i^ipow * 2^two` in a monomial action.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Mono {
    ipow: u8,
    two: i32,
}

impl Mono {
    const ONE: Mono = Mono { ipow: 0, two: 0 };

    fn times(self, o: Mono) -> Mono {
        Mono {
            ipow: (self.ipow + o.ipow) % 4,
            two: self.two + o.two,
        }
    }

    fn value(self) -> CycNumber {
        let i = CycNumber::zeta(4, self.ipow as i64);
        let s = if self.two >= 0 {
            Rational::from_integer(BigInt::one() << self.two as usize)
        } else {
            Rational::new(BigInt::one(), BigInt::one() << (-self.two) as usize)
        };
        i.scale(&s)
    }
}

/// Action of the rescaled generator `f_j` on basis vector `s`.
fn f_on_basis(j: usize, s: usize) -> (usize, Mono) {
    let p = j / 2;
    let b = 1usize << p;
    let below = (s & (b - 1)).count_ones();
    let sgn = if below.is_multiple_of(2) { 0 } else { 2 };
    let present = s & b != 0;
    let (t, mut m) = if present {
        // a^+ removes the vector with a factor -2
        (s & !b, Mono { ipow: (sgn + 2) % 4, two: 1 })
    } else {
        (s | b, Mono { ipow: sgn, two: 0 })
    };
    if j % 2 == 1 {
        // f = -i (a^- - a^+)
        m = m.times(Mono {
            ipow: if present { 2 + 3 } else { 3 },
            two: 0,
        });
        m.ipow %= 4;
    }
    (t, m)
}

/// A signed product `c * e_(i_1) ... e_(i_k)` of orthonormal generators,
/// stored with strictly ascending indices.
#[derive(Clone, Debug, PartialEq)]
pub struct CliffordWord {
    mask: u32,
    scalar: CycNumber,
}

impl CliffordWord {
    /// Canonicalise an arbitrary product using `e_i e_j = -e_j e_i`, `e_i^2 = -1`.
    pub fn new(indices: &[usize], scalar: CycNumber) -> Result<Self> {
        let mut mask = 0u32;
        let mut sign = 1i32;
        for &i in indices {
            if i >= GENERATORS {
                return Err(Error::invalid("Clifford word", format!("generator {i} out of range")));
            }
            let (m, s) = mul_masks(mask, 1 << i);
            mask = m;
            sign *= s;
        }
        Ok(CliffordWord {
            mask,
            scalar: if sign < 0 { scalar.neg() } else { scalar },
        })
    }

    pub fn from_mask(mask: u32, scalar: CycNumber) -> Self {
        CliffordWord { mask, scalar }
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn scalar(&self) -> &CycNumber {
        &self.scalar
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..GENERATORS).filter(|i| self.mask >> i & 1 == 1).collect()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (m, s) = mul_masks(self.mask, o.mask);
        let c = self.scalar.mul(&o.scalar);
        CliffordWord {
            mask: m,
            scalar: if s < 0 { c.neg() } else { c },
        }
    }

    /// Monomial action on a single basis vector, without the scalar.
    fn on_basis(&self, s: usize) -> (usize, Mono) {
        let mut t = s;
        let mut m = Mono::ONE;
        let idx = self.indices();
        for &j in idx.iter().rev() {
            let (t2, m2) = f_on_basis(j, t);
            t = t2;
            m = m.times(m2);
        }
        (t, m)
    }

    /// `2^(-k/2)` converting the `f` product into the `e` product.
    fn normalisation(&self) -> CycNumber {
        let k = self.mask.count_ones() as usize;
        let r = Rational::new(BigInt::one(), BigInt::one() << (k / 2));
        if k.is_multiple_of(2) {
            CycNumber::from_rational(r)
        } else {
            // 1/sqrt 2 = (z8 + z8^-1) / 2
            CycNumber::zeta(8, 1)
                .add(&CycNumber::zeta(8, -1))
                .scale(&(r * rat(1, 2)))
        }
    }
}

/// Product of canonical words: `e_C e_D = sign * e_(C xor D)`.
pub fn mul_masks(c: u32, d: u32) -> (u32, i32) {
    let mut inv = 0u32;
    let mut dd = d;
    while dd != 0 {
        let j = dd.trailing_zeros();
        inv += (c >> (j + 1)).count_ones();
        dd &= dd - 1;
    }
    inv += (c & d).count_ones();
    (c ^ d, if inv.is_multiple_of(2) { 1 } else { -1 })
}

/// An element of `CM`, dense over the 4096 basis vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinorState {
    coords: Vec<CycNumber>,
}

impl SpinorState {
    pub fn zero() -> Self {
        SpinorState {
            coords: vec![CycNumber::zero(); DIM],
        }
    }

    /// Basis vector `a^-_(i_1) ... a^-_(i_k) v_tw` for the mask `S`.
    pub fn basis(s: usize) -> Self {
        let mut x = Self::zero();
        x.coords[s] = CycNumber::one();
        x
    }

    pub fn v_tw() -> Self {
        Self::basis(0)
    }

    pub fn coord(&self, s: usize) -> &CycNumber {
        &self.coords[s]
    }

    pub fn set(&mut self, s: usize, c: CycNumber) {
        self.coords[s] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(CycNumber::is_zero)
    }

    pub fn support(&self) -> usize {
        self.coords.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn add(&self, o: &Self) -> Self {
        SpinorState {
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, c: &CycNumber) -> Self {
        SpinorState {
            coords: self.coords.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// A sparse random state with small Gaussian-rational coordinates.
    pub fn random(rng: &mut ChaCha8Rng, support: usize) -> Self {
        let mut x = Self::zero();
        for _ in 0..support {
            let s = rng.gen_range(0..DIM);
            let re = rat(rng.gen_range(-5..=5), rng.gen_range(1..=3));
            let im = rat(rng.gen_range(-5..=5), rng.gen_range(1..=3));
            x.coords[s] = CycNumber::from_rational(re).add(&CycNumber::zeta(4, 1).scale(&im));
        }
        x
    }
}

/// `a^-_k` applied to a state.
pub fn a_minus(k: usize, x: &SpinorState) -> SpinorState {
    let b = 1usize << k;
    let mut out = SpinorState::zero();
    for (s, c) in x.coords.iter().enumerate() {
        if c.is_zero() || s & b != 0 {
            continue;
        }
        let v = if (s & (b - 1)).count_ones().is_multiple_of(2) { c.clone() } else { c.neg() };
        out.coords[s | b] = out.coords[s | b].add(&v);
    }
    out
}

/// `a^+_k` applied to a state.
pub fn a_plus(k: usize, x: &SpinorState) -> SpinorState {
    let b = 1usize << k;
    let mut out = SpinorState::zero();
    for (s, c) in x.coords.iter().enumerate() {
        if c.is_zero() || s & b == 0 {
            continue;
        }
        let v = c.scale(&Rational::from_integer(BigInt::from(-2)));
        let v = if (s & (b - 1)).count_ones().is_multiple_of(2) { v } else { v.neg() };
        out.coords[s & !b] = out.coords[s & !b].add(&v);
    }
    out
}

/// Linear action of a Clifford word.
pub fn act(word: &CliffordWord, x: &SpinorState) -> SpinorState {
    let scale = word.scalar.mul(&word.normalisation());
    let mut out = SpinorState::zero();
    for (s, c) in x.coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (t, m) = word.on_basis(s);
        let v = c.mul(&m.value()).mul(&scale);
        out.coords[t] = out.coords[t].add(&v);
    }
    out
}

/// The central element: `(-1)^|S|` on basis vector `S`.
pub fn act_z(x: &SpinorState) -> SpinorState {
    SpinorState {
        coords: x
            .coords
            .iter()
            .enumerate()
            .map(|(s, c)| if (s as u32).count_ones().is_multiple_of(2) { c.clone() } else { c.neg() })
            .collect(),
    }
}

/// `<|S>, |S^c>>`: `(-1)^|S|` times the sign sorting `rev(S) ++ S^c`.
fn pairing_sign(s: usize) -> i32 {
    let full = DIM - 1;
    let mut seq: Vec<usize> = (0..PAIRS).rev().filter(|k| s >> k & 1 == 1).collect();
    seq.extend((0..PAIRS).filter(|k| (full & !s) >> k & 1 == 1));
    let mut inv = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    let par = (s.count_ones() + inv) % 2;
    if par == 0 {
        1
    } else {
        -1
    }
}

/// The invariant bilinear form normalised by `<a^-_1 ... a^-_12 v_tw, v_tw> = 1`.
pub fn bilinear_cm(a: &SpinorState, b: &SpinorState) -> CycNumber {
    let full = DIM - 1;
    let mut acc = CycNumber::zero();
    for (s, c) in a.coords.iter().enumerate() {
        let d = &b.coords[full & !s];
        if c.is_zero() || d.is_zero() {
            continue;
        }
        let v = c.mul(d);
        acc = if pairing_sign(s) > 0 { acc.add(&v) } else { acc.sub(&v) };
    }
    acc
}

/// Gram matrix entry on basis vectors.
pub fn gram_entry(s: usize, t: usize) -> i32 {
    if t == (DIM - 1) & !s {
        pairing_sign(s)
    } else {
        0
    }
}

/// Determinant of the Gram matrix on the 4096 basis vectors.
///
/// Each row has a single nonzero entry in column `S^c`, so the matrix is a
/// signed permutation matrix and the determinant is the permutation sign times
/// the product of the entries.
pub fn gram_determinant() -> i32 {
    // S -> S^c is a fixed-point-free involution: 2048 transpositions
    let perm_sign = if (DIM / 2).is_multiple_of(2) { 1 } else { -1 };
    (0..DIM).map(pairing_sign).product::<i32>() * perm_sign
}

/// Signs `s(C)` making `{+-s(C) e_C : C in code}` a group isomorphic to
/// `{+-1} x code` in which every element squares to `+1`.
#[derive(Clone, Debug)]
pub struct LiftSection {
    /// Basis codewords used to build the section.
    pub basis: Vec<u32>,
    signs: BTreeMap<u32, i32>,
}

impl LiftSection {
    pub fn sign(&self, c: u32) -> Option<i32> {
        self.signs.get(&c).copied()
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn word(&self, c: u32) -> Option<CliffordWord> {
        self.sign(c)
            .map(|s| CliffordWord::from_mask(c, CycNumber::from_int(s as i64)))
    }

    pub fn codewords(&self) -> impl Iterator<Item = (u32, i32)> + '_ {
        self.signs.iter().map(|(&c, &s)| (c, s))
    }
}

/// Codewords that are unions of generator pairs `{2k, 2k+1}` act diagonally.
fn is_pair_union(c: u32) -> bool {
    let even = c & 0x5555_55;
    let odd = (c >> 1) & 0x5555_55;
    even == odd
}

/// Build the section: basis signs are chosen so that lifts of pair-union
/// codewords fix `v_tw`; the rest of the basis gets `+1`.
pub fn golay_lift_section(code: &BinaryCode) -> Result<LiftSection> {
    let words = code.codewords();
    if words.len() != DIM {
        return Err(Error::Structural(format!("code has {} words, expected 4096", words.len())));
    }
    // basis of the pair-union subcode first, extended to the whole code
    let diag: Vec<u32> = words.iter().copied().filter(|&c| is_pair_union(c)).collect();
    let mut basis: Vec<u32> = Vec::new();
    let mut reduced: Vec<u32> = Vec::new();
    for &c in diag.iter().chain(words.iter()) {
        let mut x = c;
        for &r in &reduced {
            x = x.min(x ^ r);
        }
        if x != 0 {
            basis.push(c);
            reduced.push(x);
            reduced.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    if basis.len() != PAIRS {
        return Err(Error::Structural(format!("code has rank {}, expected 12", basis.len())));
    }
    let v = SpinorState::v_tw();
    let mut bsign = Vec::with_capacity(PAIRS);
    for &b in &basis {
        if is_pair_union(b) {
            let w = act(&CliffordWord::from_mask(b, CycNumber::one()), &v);
            let c = w.coord(0).to_rational().map_err(|_| {
                Error::Structural("pair-union lift does not act by a rational scalar".into())
            })?;
            if w.support() != 1 || (c != Rational::one() && c != -Rational::one()) {
                return Err(Error::Structural("pair-union lift does not act by +-1".into()));
            }
            bsign.push(if c == Rational::one() { 1 } else { -1 });
        } else {
            bsign.push(1);
        }
    }
    let mut signs = BTreeMap::new();
    for x in 0u32..(DIM as u32) {
        let mut mask = 0u32;
        let mut sign = 1i32;
        for (j, &b) in basis.iter().enumerate() {
            if x >> j & 1 == 1 {
                let (m, s) = mul_masks(mask, b);
                mask = m;
                sign *= s * bsign[j];
            }
        }
        if signs.insert(mask, sign).is_some() {
            return Err(Error::Structural("basis is not independent".into()));
        }
    }
    Ok(LiftSection { basis, signs })
}

/// Exhaustive closure check of `{+-s(C) e_C}`: returns the group order.
pub fn check_section_group(sec: &LiftSection) -> Result<usize> {
    let all: Vec<(u32, i32)> = sec.codewords().collect();
    for &(c, s) in &all {
        let (m, t) = mul_masks(c, c);
        if m != 0 || t * s * s != 1 {
            return Err(Error::Verification(format!("lift of {c:#08x} does not square to +1")));
        }
    }
    for &(c, s) in &all {
        for &(d, t) in &all {
            let (m, u) = mul_masks(c, d);
            match sec.sign(m) {
                Some(sm) if sm == s * t * u => {}
                _ => {
                    return Err(Error::Verification(format!(
                        "section is not multiplicative at {c:#08x}, {d:#08x}"
                    )))
                }
            }
        }
    }
    // the signed words close under products and negation; with 4096
    // distinct masks the group has 2 * 4096 elements
    Ok(2 * all.len())
}

/// `t x = 2^-12 prod_j (1 + g_j) x` over the section's basis lifts.
pub fn idempotent_apply(sec: &LiftSection, x: &SpinorState) -> SpinorState {
    let mut y = x.clone();
    for &b in &sec.basis {
        let w = sec.word(b).expect("basis word in section");
        y = y.add(&act(&w, &y));
    }
    y.scale(&CycNumber::from_rational(rat(1, DIM as i64)))
}

/// `t v_tw` as the plain average of all 4096 lifted elements applied to `v_tw`.
pub fn idempotent_on_vtw_direct(sec: &LiftSection) -> SpinorState {
    let v = SpinorState::v_tw();
    let mut acc = SpinorState::zero();
    for (c, _) in sec.codewords() {
        acc = acc.add(&act(&sec.word(c).unwrap(), &v));
    }
    acc.scale(&CycNumber::from_rational(rat(1, DIM as i64)))
}

#[derive(Clone, Debug, Serialize)]
pub struct N1Report {
    pub idempotent_on_vtw: bool,
    pub idempotent_random_states: usize,
    pub idempotent_random_pass: bool,
    pub direct_sum_agrees: bool,
    pub tv_nonzero: bool,
    pub orthogonality_checked: usize,
    pub orthogonality_failures: Vec<Vec<usize>>,
    pub norm: String,
    pub alpha_squared: String,
    pub group_order: usize,
    pub all_squares_plus_one: bool,
    pub invariant_under_lifts: bool,
    pub pass: bool,
}

/// The checks on `tau = t v_tw` used to produce an N=1 structure.
pub fn n1_checks(code: &BinaryCode, seed: u64, samples_four: usize) -> Result<N1Report> {
    let sec = golay_lift_section(code)?;
    let (group_order, squares) = match check_section_group(&sec) {
        Ok(n) => (n, true),
        Err(_) => (0, false),
    };
    let v = SpinorState::v_tw();
    let tv = idempotent_apply(&sec, &v);
    let idem = idempotent_apply(&sec, &tv) == tv;
    let direct = idempotent_on_vtw_direct(&sec) == tv;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_random = 10;
    let mut random_ok = true;
    for _ in 0..n_random {
        let x = SpinorState::random(&mut rng, 6);
        let tx = idempotent_apply(&sec, &x);
        if idempotent_apply(&sec, &tx) != tx {
            random_ok = false;
        }
    }

    let invariant = sec
        .basis
        .iter()
        .all(|&b| act(&sec.word(b).unwrap(), &tv) == tv);

    // every 2-subset and a random sample of 4-subsets
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    for i in 0..GENERATORS {
        for j in i + 1..GENERATORS {
            subsets.push(vec![i, j]);
        }
    }
    let mut seen = std::collections::BTreeSet::new();
    while seen.len() < samples_four {
        let mut c: Vec<usize> = (0..4).map(|_| rng.gen_range(0..GENERATORS)).collect();
        c.sort_unstable();
        c.dedup();
        if c.len() == 4 && seen.insert(c.clone()) {
            subsets.push(c);
        }
    }
    let mut failures = Vec::new();
    for c in &subsets {
        let w = CliffordWord::new(c, CycNumber::one())?;
        if !bilinear_cm(&act(&w, &tv), &tv).is_zero() {
            failures.push(c.clone());
        }
    }
    let norm = bilinear_cm(&tv, &tv);
    let nonzero = !tv.is_zero();
    let alpha_sq = match norm.inv() {
        Some(inv) => inv.scale(&Rational::from_integer(BigInt::from(8))).to_string(),
        None => "undefined".into(),
    };
    let pass = idem
        && random_ok
        && direct
        && nonzero
        && failures.is_empty()
        && !norm.is_zero()
        && group_order == 2 * DIM
        && squares
        && invariant;
    Ok(N1Report {
        idempotent_on_vtw: idem,
        idempotent_random_states: n_random,
        idempotent_random_pass: random_ok,
        direct_sum_agrees: direct,
        tv_nonzero: nonzero,
        orthogonality_checked: subsets.len(),
        orthogonality_failures: failures,
        norm: norm.to_string(),
        alpha_squared: alpha_sq,
        group_order,
        all_squares_plus_one: squares,
        invariant_under_lifts: invariant,
        pass,
    })
}

/// Rational value of a super trace, when it is rational.
pub fn rational_value(c: &CycNumber) -> Option<BigRational> {
    c.to_rational().ok()
}

/// Super trace `tr(z x)` of a word, computed on the explicit basis.
pub fn supertrace_of_word(w: &CliffordWord) -> CycNumber {
    let scale = w.scalar.mul(&w.normalisation());
    let mut acc = CycNumber::zero();
    for s in 0..DIM {
        let (t, m) = w.on_basis(s);
        if t == s {
            let v = m.value();
            acc = if s.count_ones() % 2 == 0 { acc.add(&v) } else { acc.sub(&v) };
        }
    }
    if acc.is_zero() {
        acc
    } else {
        acc.mul(&scale)
    }
}

/// Zero-check helper for rationals in reports.
pub fn is_zero_rational(r: &Rational) -> bool {
    r.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::int;

    fn shape(s: &str) -> FrameShape {
        FrameShape::parse(s).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        let minus = eigenpairs(&shape("2^24/1^24")).unwrap();
        assert_eq!(spinor_supertrace_closed(&minus, 1).unwrap().to_rational().unwrap(), int(4096));
        let w = eigenpairs(&shape("3^12/1^12")).unwrap();
        assert_eq!(spinor_supertrace_closed(&w, 1).unwrap().to_rational().unwrap(), int(729));
        let id = eigenpairs(&shape("1^24")).unwrap();
        assert!(spinor_supertrace_closed(&id, 1).unwrap().is_zero());
        assert!(spinor_supertrace_oracle(&id, 1).unwrap().is_zero());
    }

    #[test]
    fn unpaired_eigenvalues_are_rejected() {
        let mut ev = BTreeMap::new();
        ev.insert(RootOfUnity::new(1, 3), 12);
        ev.insert(RootOfUnity::new(1, 1), 12);
        assert!(pair_up(&ev).is_err());
    }

    #[test]
    fn ladder_operators() {
        let v = SpinorState::v_tw();
        for k in 0..PAIRS {
            assert!(a_plus(k, &v).is_zero());
            // a^+ a^- v = -2 v
            let w = a_plus(k, &a_minus(k, &v));
            assert_eq!(w, v.scale(&CycNumber::from_int(-2)));
        }
    }

    #[test]
    fn clifford_relations_on_random_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..6 {
            let x = SpinorState::random(&mut rng, 5);
            let i = rng.gen_range(0..GENERATORS);
            let mut j = rng.gen_range(0..GENERATORS);
            while j == i {
                j = rng.gen_range(0..GENERATORS);
            }
            let ei = CliffordWord::new(&[i], CycNumber::one()).unwrap();
            let ej = CliffordWord::new(&[j], CycNumber::one()).unwrap();
            let anti = act(&ei, &act(&ej, &x)).add(&act(&ej, &act(&ei, &x)));
            assert!(anti.is_zero(), "e_{i} e_{j} + e_{j} e_{i}");
            let sq = act(&ei, &act(&ei, &x));
            assert_eq!(sq, x.scale(&CycNumber::from_int(-1)), "e_{i}^2");
        }
    }

    #[test]
    fn word_canonicalisation() {
        let w = CliffordWord::new(&[3, 1], CycNumber::one()).unwrap();
        assert_eq!(w.indices(), vec![1, 3]);
        assert_eq!(w.scalar(), &CycNumber::from_int(-1));
        let sq = CliffordWord::new(&[5, 5], CycNumber::one()).unwrap();
        assert_eq!(sq.mask(), 0);
        assert_eq!(sq.scalar(), &CycNumber::from_int(-1));
    }

    #[test]
    fn polarisation_matches_generators() {
        // a^- = (e_(2k) + i e_(2k+1)) / sqrt 2 reproduces the ladder action
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = SpinorState::random(&mut rng, 8);
        let k = 5;
        let e0 = CliffordWord::new(&[2 * k], CycNumber::one()).unwrap();
        let e1 = CliffordWord::new(&[2 * k + 1], CycNumber::zeta(4, 1)).unwrap();
        let sqrt2 = CycNumber::zeta(8, 1).add(&CycNumber::zeta(8, -1));
        let lhs = act(&e0, &x).add(&act(&e1, &x)).scale(&sqrt2).scale(&CycNumber::from_rational(rat(1, 2)));
        assert_eq!(lhs, a_minus(k, &x));
    }

    #[test]
    fn bilinear_normalisation_and_degeneracy() {
        let top = SpinorState::basis(DIM - 1);
        let v = SpinorState::v_tw();
        assert_eq!(bilinear_cm(&top, &v), CycNumber::one());
        assert!(bilinear_cm(&v, &v).is_zero());
        assert_eq!(gram_determinant().abs(), 1);
    }

    #[test]
    fn bilinear_adjointness_exhaustive() {
        // <f x, y> + <x, f y> = 0 for every generator and basis pair that can pair
        for j in 0..GENERATORS {
            for s in 0..DIM {
                let (s2, m) = f_on_basis(j, s);
                let t = (DIM - 1) & !s2;
                let (t2, n) = f_on_basis(j, t);
                let lhs = m.value().scale(&int(gram_entry(s2, t) as i64));
                let rhs = n.value().scale(&int(gram_entry(s, t2) as i64));
                assert!(lhs.add(&rhs).is_zero(), "generator {j}, basis {s}");
            }
        }
    }

    #[test]
    fn z_is_top_word() {
        let omega = CliffordWord::from_mask((1 << GENERATORS) - 1, CycNumber::one());
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let x = SpinorState::random(&mut rng, 10);
        assert_eq!(act(&omega, &x), act_z(&x));
    }

    #[test]
    fn supertrace_of_z_is_dimension() {
        // str(z) = tr(z z) = 4096, matching the eigenvalue -1 closed form
        let omega = CliffordWord::from_mask((1 << GENERATORS) - 1, CycNumber::one());
        assert_eq!(supertrace_of_word(&omega).to_rational().unwrap(), int(4096));
    }
}
