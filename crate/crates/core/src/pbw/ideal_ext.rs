//! `I⟨x_1, ..., x_n⟩`: polynomials with every coefficient in an ideal `I`
//! of the base ring.

use super::{Extension, MultiIndex, PbwError, SkewPoly};
use crate::compat::{invariance, InvarianceMode};
use crate::radical::{self, ElemSet};

#[derive(Debug, Clone)]
pub struct ExtendedIdeal<'a> {
    ext: &'a Extension,
    ideal: ElemSet,
}

/// Outcome of testing whether `I⟨x⟩` absorbs products at bounded degree,
/// set against the invariance conditions on `I` that make it an ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureReport {
    pub degree_cap: u32,
    pub absorbs: bool,
    /// `(w, f, w_on_left)` with `f` in `I⟨x⟩` and the product outside.
    pub witness: Option<(SkewPoly, SkewPoly, bool)>,
    pub sigma_invariant: bool,
    pub delta_invariant: bool,
}

impl ClosureReport {
    /// Absorption observed exactly when `I` is `Σ`- and `Δ`-invariant.
    pub fn agrees(&self) -> bool {
        self.absorbs == (self.sigma_invariant && self.delta_invariant)
    }
}

impl<'a> ExtendedIdeal<'a> {
    pub fn new(ext: &'a Extension, ideal: &ElemSet) -> Result<Self, PbwError> {
        if !ideal.contains(&ext.base().zero()) || !radical::is_ideal(ext.base(), ideal) {
            return Err(PbwError::NotAnIdeal);
        }
        Ok(ExtendedIdeal { ext, ideal: ideal.clone() })
    }

    pub fn ideal(&self) -> &ElemSet {
        &self.ideal
    }

    pub fn contains(&self, f: &SkewPoly) -> bool {
        f.coefficients().all(|c| self.ideal.contains(&c))
    }

    /// Multiplies every monomial member `a x^α` (`a ∈ I`, `|α| <= cap`) on
    /// both sides by each variable and each base element.
    pub fn closure_report(&self, degree_cap: u32) -> Result<ClosureReport, PbwError> {
        self.ext.require_verified()?;
        let ext = self.ext;
        let ring = ext.base();
        let n = ext.n();
        let mut multipliers: Vec<SkewPoly> = (0..n).map(|i| ext.var(i)).collect();
        multipliers.extend(ring.elements().filter(|&e| e != ring.zero()).map(|e| ext.constant(e)));
        let mut witness = None;
        'outer: for alpha in MultiIndex::up_to_degree(n, degree_cap) {
            for &a in self.ideal.iter().filter(|&&a| a != ring.zero()) {
                let f = SkewPoly::monomial(alpha.clone(), a);
                for w in &multipliers {
                    if !self.contains(&ext.mul_unchecked(w, &f)) {
                        witness = Some((w.clone(), f, true));
                        break 'outer;
                    }
                    if !self.contains(&ext.mul_unchecked(&f, w)) {
                        witness = Some((w.clone(), f, false));
                        break 'outer;
                    }
                }
            }
        }
        Ok(ClosureReport {
            degree_cap,
            absorbs: witness.is_none(),
            witness,
            sigma_invariant: invariance(&self.ideal, ext.system(), InvarianceMode::SigmaInvariant).is_none(),
            delta_invariant: invariance(&self.ideal, ext.system(), InvarianceMode::DeltaInvariant).is_none(),
        })
    }
}
