//! Extensions used by the corpus. Each builder returns a verified
//! presentation except [`weyl_corrupted`].

use std::collections::BTreeMap;

use super::{rings, CorpusError};
use crate::graded::Grading;
use crate::maps::{RingMap, SigmaSystem, DEFAULT_DELTA_WORD_CAP};
use crate::pbw::{Extension, Relation};
use crate::ring::{Elem, FiniteRing};

fn single(ring: &FiniteRing, sigma: RingMap, delta: RingMap) -> Result<Extension, CorpusError> {
    let sys = SigmaSystem::new(ring, vec![sigma], vec![delta], DEFAULT_DELTA_WORD_CAP)?;
    Ok(Extension::new(sys, BTreeMap::new())?.verified()?)
}

/// `Z_2 x Z_2` with `x r = swap(r) x`.
pub fn swap_extension() -> Result<Extension, CorpusError> {
    let z2 = rings::zn(2)?;
    let r = rings::product(&z2, &z2)?;
    let swap = RingMap::endomorphism(&r, vec![vec![0, 1], vec![1, 0]])?;
    let zero = RingMap::zero_derivation(&r, &swap);
    single(&r, swap, zero)
}

/// Matrix of `d/dy` on `Z_p[y]/(y^m)`: `y^k -> k y^(k-1)`.
fn d_dy(p: u32, m: usize) -> Vec<Vec<u32>> {
    let mut mat = vec![vec![0; m]; m];
    for k in 1..m {
        mat[k - 1][k] = k as u32 % p;
    }
    mat
}

/// Matrix of `y d/dy`: `y^k -> k y^k`.
fn euler(p: u32, m: usize) -> Vec<Vec<u32>> {
    let mut mat = vec![vec![0; m]; m];
    for (k, row) in mat.iter_mut().enumerate() {
        row[k] = k as u32 % p;
    }
    mat
}

/// `Z_p[y]/(y^p)[x; d/dy]`, so `x y = y x + 1`.
pub fn weyl_like(p: u32) -> Result<Extension, CorpusError> {
    let r = rings::trunc_poly(p, p as usize)?;
    let id = RingMap::identity(&r);
    let d = RingMap::sigma_derivation(&r, &id, d_dy(p, p as usize))?;
    single(&r, id, d)
}

/// `Z_p[y]/(y^p)[x; y d/dy]`, so `x y = y x + y`.
pub fn euler_like(p: u32) -> Result<Extension, CorpusError> {
    let r = rings::trunc_poly(p, p as usize)?;
    let id = RingMap::identity(&r);
    let d = RingMap::sigma_derivation(&r, &id, euler(p, p as usize))?;
    single(&r, id, d)
}

fn weyl_euler_system() -> Result<(FiniteRing, SigmaSystem), CorpusError> {
    let r = rings::trunc_poly(2, 2)?;
    let id = RingMap::identity(&r);
    let d1 = RingMap::sigma_derivation(&r, &id, d_dy(2, 2))?;
    let d2 = RingMap::sigma_derivation(&r, &id, euler(2, 2))?;
    let sys = SigmaSystem::new(&r, vec![id.clone(), id], vec![d1, d2], DEFAULT_DELTA_WORD_CAP)?;
    Ok((r, sys))
}

/// Two commuting-up-to-a-tail derivations on `Z_2[y]/(y^2)`: `x_1` acts
/// by `d/dy`, `x_2` by `y d/dy`, and `x_2 x_1 = x_1 x_2 + x_1`.
pub fn weyl_euler_pair() -> Result<Extension, CorpusError> {
    let (r, sys) = weyl_euler_system()?;
    let mut rel = Relation::commuting(&r, 2);
    rel.linear[0] = r.one();
    Ok(Extension::new(sys, BTreeMap::from([((0, 1), rel)]))?.verified()?)
}

/// [`weyl_euler_pair`] with the tail `x_1` replaced by the constant `y`.
/// Returned unverified; verification fails on the coefficient overlap.
pub fn weyl_corrupted() -> Result<Extension, CorpusError> {
    let (r, sys) = weyl_euler_system()?;
    let mut rel = Relation::commuting(&r, 2);
    rel.constant = r.elem(&[0, 1])?;
    Ok(Extension::new(sys, BTreeMap::from([((0, 1), rel)]))?)
}

/// Truncated graded Clifford algebra: base `Z_p[y_1..y_n]/(deg >= 3)` with
/// `y_k` in degree 2, `σ = id`, `δ = 0` and
/// `x_j x_i = -x_i x_j + Σ_k (M_k)_{ij} y_k`. Only entries `i < j` of the
/// matrices are used.
pub fn clifford_trunc(p: u32, n: usize, ms: &[Vec<Vec<u32>>]) -> Result<(Extension, Grading), CorpusError> {
    let r = rings::clifford_base(p, n)?;
    if ms.len() != n || ms.iter().any(|m| m.len() != n || m.iter().any(|row| row.len() != n)) {
        return Err(CorpusError::Parameter(format!("need {n} matrices of size {n} x {n}")));
    }
    let sys = SigmaSystem::trivial(&r, n);
    let minus_one = r.from_int(-1);
    let mut rels = BTreeMap::new();
    for j in 0..n {
        for i in 0..j {
            let mut coords = vec![0; n + 1];
            for (k, m) in ms.iter().enumerate() {
                coords[k + 1] = m[i][j] % p;
            }
            let mut rel = Relation::scaled(&r, n, minus_one);
            rel.constant = r.elem(&coords)?;
            rels.insert((i, j), rel);
        }
    }
    let mut labels = vec![2; n + 1];
    labels[0] = 0;
    let grading = Grading::new(&r, labels).map_err(|e| CorpusError::Parameter(e.to_string()))?;
    Ok((Extension::new(sys, rels)?.verified()?, grading))
}

/// `M_k` all equal to the identity matrix.
pub fn identity_matrices(n: usize) -> Vec<Vec<Vec<u32>>> {
    let id: Vec<Vec<u32>> = (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect();
    vec![id; n]
}

/// Quasi-commutative extension: `x_i r = σ_i(r) x_i` and
/// `x_j x_i = d_{i,j} x_i x_j`, with missing `d` entries equal to 1.
pub fn quasi_comm(
    base: &FiniteRing,
    sigmas: Vec<RingMap>,
    d: &BTreeMap<(usize, usize), Elem>,
) -> Result<Extension, CorpusError> {
    let n = sigmas.len();
    let deltas = sigmas.iter().map(|s| RingMap::zero_derivation(base, s)).collect();
    let sys = SigmaSystem::new(base, sigmas, deltas, DEFAULT_DELTA_WORD_CAP)?;
    let rels = d.iter().map(|(&k, &v)| (k, Relation::scaled(base, n, v))).collect();
    Ok(Extension::new(sys, rels)?.verified()?)
}

/// `Z_3⟨x_1, x_2⟩` with `x_2 x_1 = 2 x_1 x_2`.
pub fn quasi_comm_z3() -> Result<Extension, CorpusError> {
    let r = rings::zn(3)?;
    let id = RingMap::identity(&r);
    quasi_comm(&r, vec![id.clone(), id], &BTreeMap::from([((0, 1), r.from_int(2))]))
}

/// `GF(4)[x; Frobenius]`.
pub fn quasi_comm_frobenius() -> Result<Extension, CorpusError> {
    let r = rings::gf4()?;
    let frob = RingMap::endomorphism(&r, vec![vec![1, 1], vec![0, 1]])?;
    quasi_comm(&r, vec![frob], &BTreeMap::new())
}

/// `Z_4⟨x_1, x_2⟩` with `x_2 x_1 = 3 x_1 x_2`.
pub fn quasi_comm_z4() -> Result<Extension, CorpusError> {
    let r = rings::zn(4)?;
    let id = RingMap::identity(&r);
    quasi_comm(&r, vec![id.clone(), id], &BTreeMap::from([((0, 1), r.from_int(3))]))
}

/// The commutative polynomial ring `R[x, y]`.
pub fn commutative_xy(base: &FiniteRing) -> Result<Extension, CorpusError> {
    Ok(Extension::polynomial_ring(base, 2)?)
}
