//! Skew PBW extensions `A = σ(R)⟨x_1, ..., x_n⟩` over a finite ring.
//!
//! Elements of `A` are [`SkewPoly`] values: finite sums `Σ r_α x^α` with the
//! coefficient written on the left. All arithmetic goes through an
//! [`Extension`], which holds the twisting data and the commutation rules
//! and refuses to multiply until its overlaps have been checked.

mod armendariz;
mod enumerate;
mod extension;
mod ideal_ext;
mod multiply;
mod nil;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::ring::{Elem, RingError};

pub use armendariz::{bounded_skew_armendariz, ArmendarizOutcome, ArmendarizWitness};
pub use enumerate::{window, window_size};
pub use extension::{Extension, ExtensionFlags, OverlapFailure, OverlapKind, Relation};
pub use ideal_ext::{ClosureReport, ExtendedIdeal};
pub use nil::{
    bounded_ni_check, coefficient_criterion_member, CriterionAgreement, NiCheck, NiCheckStats,
    NiOutcome, NiViolation, NilProbe, NonNilReason, DEFAULT_EXPONENT_CAP,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PbwError {
    #[error("d_{{{0},{1}}} must be nonzero")]
    ZeroD(usize, usize),
    #[error("σ_{0} is not injective")]
    NonInjectiveSigma(usize),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("presentation is inconsistent: {0}")]
    OverlapFails(Box<OverlapFailure>),
    #[error("presentation has not been verified")]
    Unverified,
    #[error("polynomial is not proved nilpotent within the exponent cap")]
    NotProvedNilpotent,
    #[error("the given set is not an ideal of the base ring")]
    NotAnIdeal,
    #[error("search needs {needed} evaluations, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// An exponent vector `α`, ordered degree-lexicographically with `x_1` the
/// most significant variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// The exponent vector of the single variable `x_i` (0-based).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        MultiIndex(v)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn plus(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub(crate) fn bump(&self, i: usize, up: bool) -> MultiIndex {
        let mut v = self.0.clone();
        if up {
            v[i] += 1;
        } else {
            v[i] -= 1;
        }
        MultiIndex(v)
    }

    /// All multi-indices in `n` variables of total degree `<= d`, ascending.
    pub fn up_to_degree(n: usize, d: u32) -> Vec<MultiIndex> {
        fn rec(n: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if prefix.len() == n {
                out.push(MultiIndex(prefix.clone()));
                return;
            }
            for e in 0..=left {
                prefix.push(e);
                rec(n, left - e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, d, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A skew polynomial `Σ r_α x^α` in normal form. Zero coefficients are
/// never stored, so structural equality is equality in `A`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SkewPoly {
    n: usize,
    terms: BTreeMap<MultiIndex, Elem>,
}

const ZERO: Elem = Elem(0);

impl SkewPoly {
    pub fn zero(n: usize) -> Self {
        SkewPoly { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Elem) -> Self {
        Self::monomial(MultiIndex::zero(n), c)
    }

    pub fn monomial(alpha: MultiIndex, c: Elem) -> Self {
        let mut p = SkewPoly::zero(alpha.len());
        if c != ZERO {
            p.terms.insert(alpha, c);
        }
        p
    }

    /// `x_i` with coefficient `one`.
    pub fn var(n: usize, i: usize, one: Elem) -> Self {
        Self::monomial(MultiIndex::unit(n, i), one)
    }

    /// Builds from `(α, r)` pairs; repeated indices must already be merged
    /// by the caller, zero coefficients are dropped.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (MultiIndex, Elem)>) -> Self {
        let mut p = SkewPoly::zero(n);
        for (a, c) in terms {
            assert_eq!(a.len(), n, "multi-index length");
            if c != ZERO {
                p.terms.insert(a, c);
            }
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(MultiIndex::degree)
    }

    /// Leading term under the degree-lexicographic order.
    pub fn leading(&self) -> Option<(&MultiIndex, Elem)> {
        self.terms.iter().next_back().map(|(a, &c)| (a, c))
    }

    pub fn coefficient(&self, alpha: &MultiIndex) -> Elem {
        self.terms.get(alpha).copied().unwrap_or(ZERO)
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&MultiIndex, Elem)> + '_ {
        self.terms.iter().map(|(a, &c)| (a, c))
    }

    pub fn coefficients(&self) -> impl Iterator<Item = Elem> + '_ {
        self.terms.values().copied()
    }

    pub(crate) fn terms_mut(&mut self) -> &mut BTreeMap<MultiIndex, Elem> {
        &mut self.terms
    }

    pub fn is_homogeneous_in_x(&self) -> bool {
        let mut degs = self.terms.keys().map(MultiIndex::degree);
        match degs.next() {
            Some(d) => degs.all(|e| e == d),
            None => true,
        }
    }
}

impl fmt::Debug for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.terms.iter().rev().map(|(a, c)| format!("{}*{:?}", c.0, a.0)).collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
