//! `N`-gradings of the base ring and graded skew PBW extensions.
//!
//! A grading labels each additive generator with a degree; `R_p` is the
//! span of the generators labelled `p`. Variables have degree 1, so the
//! term `r x^α` with `r ∈ R_t` sits in `A_{t + |α|}`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::pbw::{Extension, MultiIndex, SkewPoly};
use crate::radical::ElemSet;
use crate::ring::{Elem, FiniteRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradedError {
    #[error("expected {expected} degree labels, got {got}")]
    BadShape { expected: usize, got: usize },
    #[error("e_{0} * e_{1} is not homogeneous of the expected degree")]
    InhomogeneousConstant(usize, usize),
    #[error("the identity is not of degree 0")]
    IdentityNotDegreeZero,
    #[error("graded extensions must be bijective")]
    NotBijective,
    #[error("extension does not satisfy the graded conditions")]
    NotGraded,
    #[error("grading belongs to a different ring")]
    RingMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grading {
    ring: FiniteRing,
    labels: Vec<u32>,
}

impl Grading {
    pub fn new(ring: &FiniteRing, labels: Vec<u32>) -> Result<Self, GradedError> {
        let m = ring.rank();
        if labels.len() != m {
            return Err(GradedError::BadShape { expected: m, got: labels.len() });
        }
        if ring.one_coords().iter().zip(&labels).any(|(&c, &l)| c != 0 && l != 0) {
            return Err(GradedError::IdentityNotDegreeZero);
        }
        for s in 0..m {
            for t in 0..m {
                let target = labels[s] + labels[t];
                let bad = ring.products()[s][t]
                    .iter()
                    .enumerate()
                    .any(|(u, &c)| c % ring.orders()[u] != 0 && labels[u] != target);
                if bad {
                    return Err(GradedError::InhomogeneousConstant(s, t));
                }
            }
        }
        Ok(Grading { ring: ring.clone(), labels })
    }

    /// Every generator in degree 0.
    pub fn trivial(ring: &FiniteRing) -> Self {
        Self::new(ring, vec![0; ring.rank()]).expect("trivial grading")
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn max_degree(&self) -> u32 {
        self.labels.iter().copied().max().unwrap_or(0)
    }

    /// The `R_p` part of `a`.
    pub fn component(&self, a: Elem, p: u32) -> Elem {
        let coords: Vec<u32> = self
            .ring
            .coords(a)
            .into_iter()
            .zip(&self.labels)
            .map(|(c, &l)| if l == p { c } else { 0 })
            .collect();
        self.ring.from_coords(&coords).expect("rank matches")
    }

    /// `(p, a_p)` for every nonzero graded part, ascending in `p`.
    pub fn decompose(&self, a: Elem) -> Vec<(u32, Elem)> {
        let mut degrees: Vec<u32> = self.labels.clone();
        degrees.sort_unstable();
        degrees.dedup();
        degrees
            .into_iter()
            .map(|p| (p, self.component(a, p)))
            .filter(|&(_, c)| c != self.ring.zero())
            .collect()
    }

    /// `a ∈ R_p` (zero lies in every `R_p`).
    pub fn is_in_degree(&self, a: Elem, p: u32) -> bool {
        self.component(a, p) == a
    }

    /// The carrier of `R_p`.
    pub fn degree_part(&self, p: u32) -> ElemSet {
        self.ring.elements().filter(|&a| self.is_in_degree(a, p)).collect()
    }

    /// `R_0` is the prime subring and a field.
    pub fn is_connected(&self) -> bool {
        let ring = &self.ring;
        let r0 = self.degree_part(0);
        let multiples: ElemSet = (0..ring.size() as i64).map(|k| ring.from_int(k)).collect();
        if r0 != multiples {
            return false;
        }
        r0.iter().filter(|&&a| a != ring.zero()).all(|&a| match ring.inverse(a) {
            Some(b) => r0.contains(&b),
            None => false,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GradedCondition {
    /// `σ_i(R_p) ⊆ R_p`.
    SigmaPreservesDegree { i: usize },
    /// `δ_i(R_p) ⊆ R_{p+1}`.
    DeltaRaisesDegree { i: usize },
    /// `d_{i,j} ∈ R_0`.
    DInDegreeZero { i: usize, j: usize },
    /// Constant tail of `x_j x_i` in `R_2`.
    ConstantInDegreeTwo { i: usize, j: usize },
    /// Coefficient of `x_k` in the tail of `x_j x_i` in `R_1`.
    LinearInDegreeOne { i: usize, j: usize, k: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedDiagnostic {
    pub condition: GradedCondition,
    pub passed: bool,
    /// The offending generator index or structure element.
    pub witness: Option<Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedProfile {
    pub is_graded_extension: bool,
    pub connected: bool,
    pub diagnostics: Vec<GradedDiagnostic>,
}

impl GradedProfile {
    pub fn failures(&self) -> impl Iterator<Item = &GradedDiagnostic> {
        self.diagnostics.iter().filter(|d| !d.passed)
    }
}

/// Checks that `σ_i` preserve degrees, `δ_i` raise them by one, every
/// `d_{i,j}` has degree 0 and the tails have degree 2.
pub fn is_graded_extension(ext: &Extension, grading: &Grading) -> Result<GradedProfile, GradedError> {
    if ext.base() != grading.ring() {
        return Err(GradedError::RingMismatch);
    }
    if !ext.flags().bijective {
        return Err(GradedError::NotBijective);
    }
    let ring = ext.base();
    let gens = ring.generators();
    let labels = grading.labels();
    let mut diagnostics = Vec::new();
    let mut push = |condition, witness: Option<Elem>| {
        diagnostics.push(GradedDiagnostic { condition, passed: witness.is_none(), witness });
    };
    for i in 0..ext.n() {
        let sigma = &ext.system().sigmas()[i];
        let delta = &ext.system().deltas()[i];
        let bad = gens.iter().zip(labels).find(|(&e, &l)| !grading.is_in_degree(sigma.apply(e), l));
        push(GradedCondition::SigmaPreservesDegree { i }, bad.map(|(&e, _)| e));
        let bad = gens.iter().zip(labels).find(|(&e, &l)| !grading.is_in_degree(delta.apply(e), l + 1));
        push(GradedCondition::DeltaRaisesDegree { i }, bad.map(|(&e, _)| e));
    }
    for (&(i, j), rel) in ext.relations() {
        let check = |c: Elem, p: u32| (!grading.is_in_degree(c, p)).then_some(c);
        push(GradedCondition::DInDegreeZero { i, j }, check(rel.d, 0));
        push(GradedCondition::ConstantInDegreeTwo { i, j }, check(rel.constant, 2));
        for (k, &t) in rel.linear.iter().enumerate() {
            push(GradedCondition::LinearInDegreeOne { i, j, k }, check(t, 1));
        }
    }
    let ok = diagnostics.iter().all(|d| d.passed);
    Ok(GradedProfile { is_graded_extension: ok, connected: grading.is_connected(), diagnostics })
}

/// Splits `f` into its graded parts `(p, f_p)`, ascending in `p`.
pub fn homogeneous_components(
    ext: &Extension,
    grading: &Grading,
    f: &SkewPoly,
) -> Result<Vec<(u32, SkewPoly)>, GradedError> {
    if !is_graded_extension(ext, grading)?.is_graded_extension {
        return Err(GradedError::NotGraded);
    }
    let mut parts: BTreeMap<u32, Vec<(MultiIndex, Elem)>> = BTreeMap::new();
    for (alpha, r) in f.terms() {
        for (t, rt) in grading.decompose(r) {
            parts.entry(t + alpha.degree()).or_default().push((alpha.clone(), rt));
        }
    }
    Ok(parts.into_iter().map(|(p, terms)| (p, SkewPoly::from_terms(ext.n(), terms))).collect())
}

/// Every term `r x^α` has `r ∈ R_t` with `t + |α| = p`.
pub fn is_homogeneous(grading: &Grading, f: &SkewPoly, p: u32) -> bool {
    f.terms().all(|(alpha, r)| alpha.degree() <= p && grading.is_in_degree(r, p - alpha.degree()))
}
