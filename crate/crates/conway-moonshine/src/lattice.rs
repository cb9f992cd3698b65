//! The extended binary Golay code and the Leech lattice.
//!
//! Codewords are 24-bit masks. Leech vectors are stored as integer vectors
//! `x` standing for `x / sqrt 8`, so `<x, y> = (x . y) / 8`. In these
//! coordinates the lattice is the set of `x` with all `x_i` of one parity `m`,
//! `sum x_i = 4 m (mod 8)`, and, for `m = 0`, `{i : x_i = 2 mod 4}` a codeword;
//! for `m = 1`, `{i : x_i = 3 mod 4}` a codeword.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::frameshape::FrameShape;
use crate::numbers::Rational;

pub const LENGTH: usize = 24;

/// Quadratic residues modulo 23.
const QR23: [usize; 11] = [1, 2, 3, 4, 6, 8, 9, 12, 13, 16, 18];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryCode {
    generators: Vec<u32>,
    words: Vec<u32>,
}

/// Row-reduce masks over GF(2), returning an independent subset.
fn independent(masks: impl IntoIterator<Item = u32>) -> Vec<u32> {
    let mut basis: Vec<u32> = Vec::new();
    let mut reduced: Vec<u32> = Vec::new();
    for m in masks {
        let mut x = m;
        for &r in &reduced {
            x = x.min(x ^ r);
        }
        if x != 0 {
            basis.push(m);
            reduced.push(x);
            reduced.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis
}

impl BinaryCode {
    /// Span of the given generators; they must be independent.
    pub fn from_generators(generators: Vec<u32>) -> Result<Self> {
        if independent(generators.iter().copied()).len() != generators.len() {
            return Err(Error::Structural("generators are dependent".into()));
        }
        let k = generators.len();
        let mut words: Vec<u32> = (0u32..(1 << k))
            .map(|x| {
                generators
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| x >> j & 1 == 1)
                    .fold(0, |a, (_, &g)| a ^ g)
            })
            .collect();
        words.sort_unstable();
        Ok(BinaryCode { generators, words })
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn codewords(&self) -> &[u32] {
        &self.words
    }

    pub fn contains(&self, m: u32) -> bool {
        self.words.binary_search(&m).is_ok()
    }

    /// Number of codewords of each weight.
    pub fn weight_distribution(&self) -> BTreeMap<u32, usize> {
        let mut d = BTreeMap::new();
        for w in &self.words {
            *d.entry(w.count_ones()).or_insert(0) += 1;
        }
        d
    }

    fn check_golay(&self) -> Result<()> {
        if self.generators.len() != 12 {
            return Err(Error::Structural(format!("dimension {} is not 12", self.generators.len())));
        }
        for &a in &self.generators {
            for &b in &self.generators {
                if (a & b).count_ones() % 2 != 0 {
                    return Err(Error::Structural("generators are not mutually orthogonal".into()));
                }
            }
        }
        for &w in &self.words {
            let wt = w.count_ones();
            if wt % 4 != 0 {
                return Err(Error::Structural(format!("weight {wt} is not divisible by 4")));
            }
            if wt > 0 && wt < 8 {
                return Err(Error::Structural(format!("codeword of weight {wt}")));
            }
        }
        Ok(())
    }
}

/// Extended quadratic-residue code of length 24: the cyclic shifts of the
/// residue set modulo 23, each extended by a parity bit in position 23.
pub fn build_golay() -> Result<BinaryCode> {
    let rows = (0..23).map(|s| {
        let w: u32 = QR23.iter().fold(0, |a, &r| a | 1 << ((r + s) % 23));
        if w.count_ones() % 2 == 1 {
            w | 1 << 23
        } else {
            w
        }
    });
    let code = BinaryCode::from_generators(independent(rows))?;
    code.check_golay()?;
    Ok(code)
}

pub type Vector = [i64; LENGTH];

fn dot(a: &Vector, b: &Vector) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Membership straight from the coordinate description.
pub fn is_leech_vector(code: &BinaryCode, x: &Vector) -> bool {
    let m = x[0].rem_euclid(2);
    if x.iter().any(|v| v.rem_euclid(2) != m) {
        return false;
    }
    let s: i64 = x.iter().sum();
    if s.rem_euclid(8) != 4 * m {
        return false;
    }
    let target = if m == 0 { 2 } else { 3 };
    let mask = x
        .iter()
        .enumerate()
        .filter(|(_, v)| v.rem_euclid(4) == target)
        .fold(0u32, |a, (i, _)| a | 1 << i);
    code.contains(mask)
}

#[derive(Clone, Debug)]
pub struct IntegerLattice {
    /// Basis rows in `sqrt 8`-scaled coordinates.
    pub basis: Vec<Vector>,
    /// `<b_i, b_j>`.
    pub gram: Vec<Vec<i64>>,
}

/// Hermite normal form of integer rows; returns the nonzero rows.
fn hnf(mut rows: Vec<Vec<i128>>) -> Result<Vec<Vec<i128>>> {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut out = Vec::new();
    let mut col = 0;
    while col < ncols && !rows.is_empty() {
        // Euclid on this column
        loop {
            let nz: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][col] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| rows[i][col].abs()).unwrap();
            for &i in &nz {
                if i != p {
                    let f = rows[i][col].div_euclid(rows[p][col]);
                    let pr = rows[p].clone();
                    for (a, b) in rows[i].iter_mut().zip(&pr) {
                        *a = a.checked_sub(f.checked_mul(*b).ok_or_else(overflow)?).ok_or_else(overflow)?;
                    }
                }
            }
        }
        if let Some(p) = (0..rows.len()).find(|&i| rows[i][col] != 0) {
            let mut r = rows.swap_remove(p);
            if r[col] < 0 {
                r.iter_mut().for_each(|x| *x = -*x);
            }
            out.push(r);
        }
        col += 1;
    }
    // reduce entries above the pivots
    for i in 0..out.len() {
        let pc = out[i].iter().position(|&x| x != 0).unwrap();
        for j in 0..i {
            let f = out[j][pc].div_euclid(out[i][pc]);
            if f != 0 {
                let ri = out[i].clone();
                for (a, b) in out[j].iter_mut().zip(&ri) {
                    *a -= f * b;
                }
            }
        }
    }
    Ok(out)
}

fn overflow() -> Error {
    Error::Structural("integer overflow in lattice reduction".into())
}

/// Exact determinant by fraction-free elimination.
pub fn bareiss_det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// LLL reduction of integer rows under the standard dot product.
fn lll(mut b: Vec<Vector>, delta: f64) -> Vec<Vector> {
    let n = b.len();
    let mut k = 1;
    let gso = |b: &[Vector]| -> (Vec<Vec<f64>>, Vec<f64>) {
        let n = b.len();
        let mut mu = vec![vec![0.0; n]; n];
        let mut bs: Vec<Vec<f64>> = Vec::with_capacity(n);
        let mut norms = vec![0.0; n];
        for i in 0..n {
            let mut v: Vec<f64> = b[i].iter().map(|&x| x as f64).collect();
            for j in 0..i {
                let m = b[i].iter().zip(&bs[j]).map(|(&x, y)| x as f64 * y).sum::<f64>() / norms[j];
                mu[i][j] = m;
                for (a, y) in v.iter_mut().zip(&bs[j]) {
                    *a -= m * y;
                }
            }
            norms[i] = v.iter().map(|x| x * x).sum();
            bs.push(v);
        }
        (mu, norms)
    };
    let (mut mu, mut norms) = gso(&b);
    while k < n {
        for j in (0..k).rev() {
            let q = mu[k][j].round();
            if q != 0.0 {
                let qi = q as i64;
                let bj = b[j];
                for (a, y) in b[k].iter_mut().zip(&bj) {
                    *a -= qi * y;
                }
                let (m2, n2) = gso(&b);
                mu = m2;
                norms = n2;
            }
        }
        if norms[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * norms[k - 1] {
            k += 1;
        } else {
            b.swap(k, k - 1);
            let (m2, n2) = gso(&b);
            mu = m2;
            norms = n2;
            k = (k - 1).max(1);
        }
    }
    b
}

/// The Leech lattice: generators `2c` for Golay basis words `c`, `4(e_i + e_j)`,
/// `8 e_0` and `(-3, 1^23)`, brought to Hermite form and LLL-reduced.
pub fn build_leech(code: &BinaryCode) -> Result<IntegerLattice> {
    let mut gens: Vec<Vec<i128>> = Vec::new();
    for &c in code.generators() {
        gens.push((0..LENGTH).map(|i| if c >> i & 1 == 1 { 2 } else { 0 }).collect());
    }
    for i in 1..LENGTH {
        let mut v = vec![0i128; LENGTH];
        v[0] = 4;
        v[i] = 4;
        gens.push(v);
    }
    let mut v = vec![0i128; LENGTH];
    v[0] = 8;
    gens.push(v);
    let mut v = vec![1i128; LENGTH];
    v[0] = -3;
    gens.push(v);
    for g in &gens {
        let x: Vector = std::array::from_fn(|i| g[i] as i64);
        if !is_leech_vector(code, &x) {
            return Err(Error::Structural("generator fails the membership test".into()));
        }
    }
    let rows = hnf(gens)?;
    if rows.len() != LENGTH {
        return Err(Error::Structural(format!("rank {} is not 24", rows.len())));
    }
    let basis: Vec<Vector> = rows
        .iter()
        .map(|r| {
            let mut v = [0i64; LENGTH];
            for (a, &b) in v.iter_mut().zip(r) {
                *a = i64::try_from(b).map_err(|_| overflow())?;
            }
            Ok(v)
        })
        .collect::<Result<_>>()?;
    let basis = lll(basis, 0.99);
    let mut gram = vec![vec![0i64; LENGTH]; LENGTH];
    for i in 0..LENGTH {
        for j in 0..LENGTH {
            let d = dot(&basis[i], &basis[j]);
            if d % 8 != 0 {
                return Err(Error::Structural("Gram matrix is not integral".into()));
            }
            gram[i][j] = d / 8;
        }
    }
    let lat = IntegerLattice { basis, gram };
    let report = lat.check();
    if !report.even || report.determinant != "1" {
        return Err(Error::Structural(format!("lattice checks failed: {report:?}")));
    }
    Ok(lat)
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeReport {
    pub even: bool,
    pub determinant: String,
}

impl IntegerLattice {
    pub fn check(&self) -> LatticeReport {
        LatticeReport {
            even: (0..LENGTH).all(|i| self.gram[i][i] % 2 == 0),
            determinant: bareiss_det(&self.gram).to_string(),
        }
    }

    /// `<y, y>` for integer coefficients `y` in the basis.
    pub fn norm(&self, y: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..LENGTH {
            if y[i] == 0 {
                continue;
            }
            for j in 0..LENGTH {
                s += y[i] * self.gram[i][j] * y[j];
            }
        }
        s
    }

    pub fn vector(&self, y: &[i64]) -> Vector {
        let mut v = [0i64; LENGTH];
        for (c, b) in y.iter().zip(&self.basis) {
            for (a, x) in v.iter_mut().zip(b) {
                *a += c * x;
            }
        }
        v
    }

    /// Coordinates of `x` in the basis, when `x` is in the lattice.
    pub fn coordinates(&self, x: &Vector) -> Option<Vec<i64>> {
        // solve B^T y = x exactly
        let n = LENGTH;
        let mut m: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rational> = (0..n).map(|j| Rational::from_integer(self.basis[j][i].into())).collect();
                row.push(Rational::from_integer(x[i].into()));
                row
            })
            .collect();
        for col in 0..n {
            let p = (col..n).find(|&r| !m[r][col].is_zero())?;
            m.swap(col, p);
            let piv = m[col][col].clone();
            for c in col..=n {
                m[col][c] = &m[col][c] / &piv;
            }
            for r in 0..n {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in col..=n {
                        let v = &f * &m[col][c];
                        m[r][c] -= v;
                    }
                }
            }
        }
        (0..n)
            .map(|i| {
                let v = &m[i][n];
                if v.is_integer() {
                    v.to_integer().to_i64()
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn contains(&self, x: &Vector) -> bool {
        self.coordinates(x).is_some()
    }

    /// Count vectors of each norm up to `max_norm` by Fincke-Pohst
    /// enumeration, checking each candidate's norm exactly.
    pub fn shell_counts(&self, max_norm: i64) -> BTreeMap<i64, u64> {
        let n = LENGTH;
        // Cholesky-style decomposition Q(y) = sum_i q_ii (y_i + sum_(j>i) q_ij y_j)^2
        let mut q = vec![vec![0.0f64; n]; n];
        for i in 0..n {
            for j in 0..n {
                q[i][j] = self.gram[i][j] as f64;
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                q[j][i] = q[i][j];
                q[i][j] /= q[i][i];
            }
            for k in i + 1..n {
                for l in k..n {
                    q[k][l] -= q[k][i] * q[i][l];
                }
            }
        }
        let bound = max_norm as f64 + 1e-6;
        let top = n - 1;
        let r = (bound / q[top][top]).sqrt().floor() as i64;
        let counts: Vec<BTreeMap<i64, u64>> = (-r..=r)
            .into_par_iter()
            .map(|y_top| {
                let mut out = BTreeMap::new();
                let mut y = vec![0i64; n];
                y[top] = y_top;
                let used = q[top][top] * (y_top * y_top) as f64;
                if used <= bound {
                    self.descend(&q, &mut y, top, bound - used, max_norm, &mut out);
                }
                out
            })
            .collect();
        let mut total = BTreeMap::new();
        for c in counts {
            for (k, v) in c {
                *total.entry(k).or_insert(0) += v;
            }
        }
        total
    }

    fn descend(&self, q: &[Vec<f64>], y: &mut Vec<i64>, level: usize, rem: f64, max_norm: i64, out: &mut BTreeMap<i64, u64>) {
        if level == 0 {
            let nrm = self.norm(y);
            if nrm <= max_norm {
                *out.entry(nrm).or_insert(0) += 1;
            }
            return;
        }
        let i = level - 1;
        let c: f64 = (i + 1..y.len()).map(|j| q[i][j] * y[j] as f64).sum();
        let w = (rem.max(0.0) / q[i][i]).sqrt();
        let lo = (-c - w).ceil() as i64;
        let hi = (-c + w).floor() as i64;
        for v in lo..=hi {
            let t = v as f64 + c;
            let used = q[i][i] * t * t;
            if used <= rem + 1e-9 {
                y[i] = v;
                self.descend(q, y, i, rem - used, max_norm, out);
            }
        }
        y[i] = 0;
    }

    /// A random lattice vector with small basis coefficients.
    pub fn random_vector(&self, rng: &mut ChaCha8Rng) -> Vector {
        let y: Vec<i64> = (0..LENGTH).map(|_| rng.gen_range(-3..=3)).collect();
        self.vector(&y)
    }
}

/// Norm-4 vectors counted by shape in coordinates: `(+-4^2, 0^22)`,
/// `(+-2^8, 0^16)` on octads with an even number of minus signs, and
/// `(-+3, +-1^23)` with signs from the code.
pub fn norm4_count_by_shape(code: &BinaryCode) -> u64 {
    let octads = code.codewords().iter().filter(|w| w.count_ones() == 8).count() as u64;
    let pairs = (LENGTH * (LENGTH - 1) / 2) as u64 * 4;
    let twos = octads * (1 << 7);
    // choose the position of the 3 and a codeword for the sign pattern
    let threes = LENGTH as u64 * code.codewords().len() as u64;
    pairs + twos + threes
}

/// The standard frame `lambda_i = 8 e_i` (norm 8 in these coordinates).
pub fn coordinate_frame() -> Vec<Vector> {
    (0..LENGTH)
        .map(|i| {
            let mut v = [0i64; LENGTH];
            v[i] = 8;
            v
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct FrameReport {
    pub norms_eight: bool,
    pub orthogonal: bool,
    pub congruent_mod_2: bool,
    pub in_lattice: bool,
    pub pass: bool,
}

/// Norms, orthogonality, membership and `lambda_i - lambda_j in 2 Lambda`.
pub fn check_frame(lat: &IntegerLattice) -> FrameReport {
    let f = coordinate_frame();
    let norms_eight = f.iter().all(|v| dot(v, v) == 64);
    let mut orthogonal = true;
    let mut congruent = true;
    for i in 0..LENGTH {
        for j in i + 1..LENGTH {
            orthogonal &= dot(&f[i], &f[j]) == 0;
            let half: Vector = std::array::from_fn(|k| (f[i][k] - f[j][k]) / 2);
            congruent &= lat.contains(&half);
        }
    }
    let in_lattice = f.iter().all(|v| lat.contains(v));
    FrameReport {
        norms_eight,
        orthogonal,
        congruent_mod_2: congruent,
        in_lattice,
        pass: norms_eight && orthogonal && congruent && in_lattice,
    }
}

/// Flip the signs of the coordinates in `mask`.
pub fn sign_change(mask: u32, x: &Vector) -> Vector {
    std::array::from_fn(|i| if mask >> i & 1 == 1 { -x[i] } else { x[i] })
}

/// Frame shape `1^(24-2w) 2^w` and trace `24 - 2w` of the sign change on a codeword.
pub fn sign_change_frameshape(code: &BinaryCode, mask: u32) -> Result<(FrameShape, i64)> {
    if !code.contains(mask) {
        return Err(Error::invalid("sign change", format!("{mask:#08x} is not a codeword")));
    }
    let w = mask.count_ones() as i64;
    let shape = FrameShape::from_pairs([(1, 24 - 2 * w), (2, w)])?;
    Ok((shape, 24 - 2 * w))
}

/// Sign changes for random codeword pairs compose like the code and preserve
/// the lattice on random vectors.
pub fn check_sign_changes(code: &BinaryCode, lat: &IntegerLattice, seed: u64, pairs: usize, vectors: usize) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let words = code.codewords();
    let mut ok = true;
    for _ in 0..pairs {
        let a = words[rng.gen_range(0..words.len())];
        let b = words[rng.gen_range(0..words.len())];
        let x = lat.random_vector(&mut rng);
        ok &= sign_change(a, &sign_change(b, &x)) == sign_change(a ^ b, &x);
        ok &= code.contains(a ^ b);
    }
    for _ in 0..vectors {
        let c = words[rng.gen_range(0..words.len())];
        let x = lat.random_vector(&mut rng);
        ok &= is_leech_vector(code, &sign_change(c, &x));
    }
    ok
}

/// Integer value of a Gram determinant, when it fits.
pub fn det_i64(d: &BigInt) -> Option<i64> {
    if d.abs() < BigInt::from(i64::MAX) {
        d.to_i64()
    } else {
        None
    }
}
