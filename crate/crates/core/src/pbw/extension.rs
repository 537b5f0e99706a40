use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use super::{MultiIndex, PbwError, SkewPoly};
use crate::maps::SigmaSystem;
use crate::radical::ElemSet;
use crate::ring::{Elem, FiniteRing};

/// `x_j x_i = d x_i x_j + constant + Σ_k linear[k] x_k` for a pair `i < j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub d: Elem,
    pub constant: Elem,
    pub linear: Vec<Elem>,
}

impl Relation {
    /// `x_j x_i = x_i x_j`.
    pub fn commuting(ring: &FiniteRing, n: usize) -> Self {
        Relation { d: ring.one(), constant: ring.zero(), linear: vec![ring.zero(); n] }
    }

    pub fn scaled(ring: &FiniteRing, n: usize, d: Elem) -> Self {
        Relation { d, ..Self::commuting(ring, n) }
    }

    pub fn has_tail(&self) -> bool {
        self.constant != Elem(0) || self.linear.iter().any(|&t| t != Elem(0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ExtensionFlags {
    pub bijective: bool,
    pub quasi_commutative: bool,
    pub derivation_type: bool,
    pub endomorphism_type: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OverlapKind {
    /// `(x_j x_i) e` against `x_j (x_i e)`.
    Coefficient { i: usize, j: usize, e: Elem },
    /// `(x_k x_j) x_i` against `x_k (x_j x_i)`.
    Variables { i: usize, j: usize, k: usize },
    /// `x_i (ab)` against `(x_i a) b`.
    Leibniz { i: usize, a: Elem, b: Elem },
    /// `d_{i,j}` has no inverse, so `x_i x_j` cannot be rewritten back.
    NonInvertibleD { i: usize, j: usize },
}

/// Both normal forms of a failing overlap (indices 0-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlapFailure {
    pub kind: OverlapKind,
    pub lhs: SkewPoly,
    pub rhs: SkewPoly,
}

impl fmt::Display for OverlapFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            OverlapKind::Coefficient { i, j, e } => {
                write!(f, "(x{} x{}) e != x{} (x{} e) for generator index {}", j + 1, i + 1, j + 1, i + 1, e.0)
            }
            OverlapKind::Variables { i, j, k } => {
                write!(f, "(x{} x{}) x{} != x{} (x{} x{})", k + 1, j + 1, i + 1, k + 1, j + 1, i + 1)
            }
            OverlapKind::Leibniz { i, a, b } => {
                write!(f, "x{} (ab) != (x{} a) b for element indices {}, {}", i + 1, i + 1, a.0, b.0)
            }
            OverlapKind::NonInvertibleD { i, j } => write!(f, "d_{{{},{}}} is not invertible", i + 1, j + 1),
        }
    }
}

type MonoCache = RwLock<HashMap<(usize, MultiIndex), Arc<SkewPoly>>>;

/// A skew PBW presentation. Variables are 0-based internally.
pub struct Extension {
    system: SigmaSystem,
    relations: BTreeMap<(usize, usize), Relation>,
    flags: ExtensionFlags,
    verified: bool,
    pub(super) cache: MonoCache,
    pub(super) reduction: OnceLock<ElemSet>,
}

impl Clone for Extension {
    fn clone(&self) -> Self {
        Extension {
            system: self.system.clone(),
            relations: self.relations.clone(),
            flags: self.flags,
            verified: self.verified,
            cache: RwLock::new(HashMap::new()),
            reduction: OnceLock::new(),
        }
    }
}

impl PartialEq for Extension {
    fn eq(&self, other: &Self) -> bool {
        self.system == other.system && self.relations == other.relations
    }
}

impl fmt::Debug for Extension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Extension")
            .field("ring", &self.base().name())
            .field("n", &self.n())
            .field("relations", &self.relations)
            .field("flags", &self.flags)
            .field("verified", &self.verified)
            .finish()
    }
}

impl Extension {
    /// Builds an unverified presentation. Pairs missing from `relations`
    /// commute (`d = 1`, no tail).
    pub fn new(system: SigmaSystem, relations: BTreeMap<(usize, usize), Relation>) -> Result<Self, PbwError> {
        let n = system.len();
        if n == 0 {
            return Err(PbwError::ShapeMismatch("at least one variable is required".into()));
        }
        let ring = system.ring().clone();
        for (i, s) in system.sigmas().iter().enumerate() {
            if !s.is_injective() {
                return Err(PbwError::NonInjectiveSigma(i));
            }
        }
        for (&(i, j), rel) in &relations {
            if i >= j || j >= n {
                return Err(PbwError::ShapeMismatch(format!("relation key ({}, {}) needs i < j <= n", i + 1, j + 1)));
            }
            if rel.linear.len() != n {
                return Err(PbwError::ShapeMismatch(format!("relation ({}, {}) needs {n} linear tail entries", i + 1, j + 1)));
            }
            for &c in std::iter::once(&rel.d).chain([&rel.constant]).chain(&rel.linear) {
                if !ring.contains(c) {
                    return Err(PbwError::Ring(crate::ring::RingError::RingMismatch));
                }
            }
            if rel.d == ring.zero() {
                return Err(PbwError::ZeroD(i, j));
            }
        }
        let mut full = BTreeMap::new();
        for j in 0..n {
            for i in 0..j {
                let rel = relations.get(&(i, j)).cloned().unwrap_or_else(|| Relation::commuting(&ring, n));
                full.insert((i, j), rel);
            }
        }
        let no_delta = system.deltas().iter().all(|d| d.is_zero());
        let no_tail = full.values().all(|r| !r.has_tail());
        let flags = ExtensionFlags {
            bijective: system.sigmas().iter().all(|s| s.is_injective())
                && full.values().all(|r| ring.is_unit(r.d)),
            quasi_commutative: no_delta && no_tail,
            derivation_type: system.sigmas().iter().all(|s| s.is_identity()),
            endomorphism_type: no_delta,
        };
        Ok(Extension { system, relations: full, flags, verified: false, cache: RwLock::new(HashMap::new()), reduction: OnceLock::new() })
    }

    /// `R[x_1..x_n]` with the trivial system.
    pub fn polynomial_ring(ring: &FiniteRing, n: usize) -> Result<Self, PbwError> {
        Self::new(SigmaSystem::trivial(ring, n), BTreeMap::new())?.verified()
    }

    /// Runs [`Extension::verify`] and returns `self` on success.
    pub fn verified(mut self) -> Result<Self, PbwError> {
        self.verify()?;
        Ok(self)
    }

    pub fn base(&self) -> &FiniteRing {
        self.system.ring()
    }

    pub fn system(&self) -> &SigmaSystem {
        &self.system
    }

    pub fn n(&self) -> usize {
        self.system.len()
    }

    pub fn relations(&self) -> &BTreeMap<(usize, usize), Relation> {
        &self.relations
    }

    /// The rule for `x_j x_i` with `i < j`.
    pub fn relation(&self, i: usize, j: usize) -> &Relation {
        &self.relations[&(i, j)]
    }

    pub fn flags(&self) -> ExtensionFlags {
        self.flags
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub(super) fn require_verified(&self) -> Result<(), PbwError> {
        if self.verified {
            Ok(())
        } else {
            Err(PbwError::Unverified)
        }
    }

    pub fn one(&self) -> SkewPoly {
        SkewPoly::constant(self.n(), self.base().one())
    }

    pub fn constant(&self, c: Elem) -> SkewPoly {
        SkewPoly::constant(self.n(), c)
    }

    pub fn var(&self, i: usize) -> SkewPoly {
        SkewPoly::var(self.n(), i, self.base().one())
    }

    /// Checks every overlap and marks the presentation verified on success.
    pub fn verify(&mut self) -> Result<(), PbwError> {
        if let Some(failure) = self.find_overlap_failure() {
            self.verified = false;
            return Err(PbwError::OverlapFails(Box::new(failure)));
        }
        self.verified = true;
        Ok(())
    }

    /// The first failing overlap, or `None` if the presentation is
    /// consistent.
    pub fn find_overlap_failure(&self) -> Option<OverlapFailure> {
        let n = self.n();
        let ring = self.base().clone();
        for (&(i, j), rel) in &self.relations {
            if !ring.is_unit(rel.d) {
                let p = SkewPoly::zero(n);
                return Some(OverlapFailure { kind: OverlapKind::NonInvertibleD { i, j }, lhs: p.clone(), rhs: p });
            }
        }
        for i in 0..n {
            for a in ring.generators() {
                for b in ring.generators() {
                    let lhs = self.var_mul(i, &self.constant(ring.mul(a, b)));
                    let rhs = self.mul_unchecked(&self.var_mul(i, &self.constant(a)), &self.constant(b));
                    if lhs != rhs {
                        return Some(OverlapFailure { kind: OverlapKind::Leibniz { i, a, b }, lhs, rhs });
                    }
                }
            }
        }
        for j in 0..n {
            for i in 0..j {
                let xjxi = self.relation_poly(i, j);
                for e in ring.generators() {
                    let lhs = self.mul_unchecked(&xjxi, &self.constant(e));
                    let rhs = self.var_mul(j, &self.var_mul(i, &self.constant(e)));
                    if lhs != rhs {
                        return Some(OverlapFailure { kind: OverlapKind::Coefficient { i, j, e }, lhs, rhs });
                    }
                }
            }
        }
        for k in 0..n {
            for j in 0..k {
                for i in 0..j {
                    let lhs = self.mul_unchecked(&self.relation_poly(j, k), &self.var(i));
                    let rhs = self.var_mul(k, &self.relation_poly(i, j));
                    if lhs != rhs {
                        return Some(OverlapFailure { kind: OverlapKind::Variables { i, j, k }, lhs, rhs });
                    }
                }
            }
        }
        None
    }

    /// Right-hand side of `x_j x_i` for `i < j`, in normal form.
    pub fn relation_poly(&self, i: usize, j: usize) -> SkewPoly {
        let n = self.n();
        let rel = self.relation(i, j);
        let mut xij = MultiIndex::unit(n, i);
        xij = xij.bump(j, true);
        let mut terms = vec![(xij, rel.d), (MultiIndex::zero(n), rel.constant)];
        for (k, &t) in rel.linear.iter().enumerate() {
            terms.push((MultiIndex::unit(n, k), t));
        }
        SkewPoly::from_terms(n, terms)
    }
}
