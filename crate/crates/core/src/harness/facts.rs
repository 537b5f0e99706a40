//! Conditions evaluated on one instance, computed once and shared by every
//! check that needs them.

use std::cell::OnceCell;

use super::{Evidence, Finding, Instance, RadicalName, RigidTarget, SearchBudget, Truth, Witness};
use crate::classify::{classify_ring, RingProfile};
use crate::compat::{self, Bound, CompatResult, InvarianceMode};
use crate::graded::{self, Grading};
use crate::pbw::{bounded_ni_check, bounded_skew_armendariz, ArmendarizOutcome, NiCheck, NiOutcome, PbwError, SkewPoly};
use crate::radical::{self, ElemSet, DEFAULT_IDEAL_CAP};
use crate::ring::{Elem, FiniteRing, RingError};

/// Smallest `k` with `r^k` a nonzero idempotent. Such a power keeps `r`
/// out of every Jacobson radical containing it as an element.
pub(super) fn outside_jacobson(ring: &FiniteRing, r: Elem) -> Option<u32> {
    let mut p = r;
    for k in 1..=ring.size() as u32 {
        if p != ring.zero() && ring.mul(p, p) == p {
            return Some(k);
        }
        p = ring.mul(p, r);
    }
    None
}

pub(super) struct Facts<'a> {
    pub inst: &'a Instance,
    pub budget: SearchBudget,
    nil: ElemSet,
    profile: OnceCell<Result<RingProfile, RingError>>,
    ni: OnceCell<Result<NiCheck, PbwError>>,
    qr: OnceCell<Vec<(SkewPoly, bool)>>,
}

fn finding(name: &str, truth: Truth, evidence: Evidence) -> Finding {
    Finding { name: name.into(), truth, evidence }
}

fn exact(name: &str, failure: Option<Witness>) -> Finding {
    let truth = failure.map_or(Truth::Holds, Truth::Fails);
    finding(name, truth, Evidence::Exact)
}

/// Conjunction: the first failure wins, then any unknown.
pub(super) fn all_of(name: &str, parts: Vec<Finding>) -> Finding {
    if let Some(f) = parts.iter().find(|f| matches!(f.truth, Truth::Fails(_))) {
        return finding(name, f.truth.clone(), Evidence::Exact);
    }
    if let Some(f) = parts.iter().find(|f| matches!(f.truth, Truth::Unknown(_))) {
        return finding(name, f.truth.clone(), f.evidence);
    }
    let evidence = parts.iter().map(|f| f.evidence).find(|e| !e.is_exact()).unwrap_or(Evidence::Exact);
    finding(name, Truth::Holds, evidence)
}

/// Disjunction: an exact success wins, then any success, then any unknown.
pub(super) fn any_of(name: &str, parts: Vec<Finding>) -> Finding {
    if let Some(f) = parts.iter().find(|f| f.exact_holds()).or_else(|| parts.iter().find(|f| f.holds())) {
        return finding(name, Truth::Holds, f.evidence);
    }
    if let Some(f) = parts.iter().find(|f| matches!(f.truth, Truth::Unknown(_))) {
        return finding(name, f.truth.clone(), f.evidence);
    }
    let first = parts.into_iter().next().expect("at least one alternative");
    finding(name, first.truth, Evidence::Exact)
}

impl<'a> Facts<'a> {
    pub fn new(inst: &'a Instance, budget: SearchBudget) -> Self {
        let nil = radical::nilpotent_set(inst.extension.base());
        Facts { inst, budget, nil, profile: OnceCell::new(), ni: OnceCell::new(), qr: OnceCell::new() }
    }

    fn ring(&self) -> &FiniteRing {
        self.inst.extension.base()
    }

    fn bounded(&self) -> Evidence {
        Evidence::Bounded(self.budget)
    }

    fn profile(&self) -> Result<&RingProfile, String> {
        self.profile
            .get_or_init(|| classify_ring(self.ring(), DEFAULT_IDEAL_CAP))
            .as_ref()
            .map_err(|e| e.to_string())
    }

    pub fn ni_check(&self) -> Result<&NiCheck, String> {
        let b = &self.budget;
        self.ni
            .get_or_init(|| bounded_ni_check(&self.inst.extension, b.degree_cap, b.support_cap, b.exponent_cap, b.pair_budget))
            .as_ref()
            .map_err(|e| format!("bounded NI check: {e}"))
    }

    /// `N(R)` is an ideal.
    pub fn ring_ni(&self) -> Finding {
        match self.profile() {
            Ok(p) => exact("R is NI", p.ni_witness.map(Witness::RingNotNi)),
            Err(e) => finding("R is NI", Truth::Unknown(e), Evidence::Exact),
        }
    }

    fn contained_in_radical(&self, name: &str, which: RadicalName) -> Finding {
        match self.profile() {
            Ok(p) => {
                let rad = match which {
                    RadicalName::Prime => &p.prime_radical,
                    RadicalName::Levitzki => &p.levitzki_radical,
                };
                let out = self.nil.iter().find(|&&a| !rad.contains(a));
                exact(name, out.map(|&element| Witness::OutsideRadical { element, radical: which }))
            }
            Err(e) => finding(name, Truth::Unknown(e), Evidence::Exact),
        }
    }

    pub fn two_primal(&self) -> Finding {
        self.contained_in_radical("R is 2-primal", RadicalName::Prime)
    }

    pub fn weakly_two_primal(&self) -> Finding {
        self.contained_in_radical("R is weakly 2-primal", RadicalName::Levitzki)
    }

    fn compat_finding(&self, name: &str, r: CompatResult, weak: bool) -> Finding {
        let evidence = match r.bound {
            Bound::Exact => Evidence::Exact,
            Bound::Words(_) => self.bounded(),
        };
        match r.witness {
            Some(witness) => finding(name, Truth::Fails(Witness::Compat { witness, weak }), Evidence::Exact),
            None => finding(name, Truth::Holds, evidence),
        }
    }

    pub fn compatible(&self) -> Finding {
        self.compat_finding("R is (Σ,Δ)-compatible", compat::is_compatible(self.inst.extension.system()), false)
    }

    pub fn weak_compatible(&self) -> Finding {
        self.compat_finding("R is weak (Σ,Δ)-compatible", compat::is_weak_compatible(self.inst.extension.system()), true)
    }

    pub fn weak_sigma_compatible(&self) -> Finding {
        let r = compat::is_weak_sigma_compatible(self.inst.extension.system());
        self.compat_finding("R is weak Σ-compatible", r, true)
    }

    pub fn locally_finite(&self) -> Finding {
        exact("R is locally finite", None)
    }

    pub fn armendariz(&self) -> Finding {
        let name = "R is Σ-skew Armendariz";
        let b = &self.budget;
        match bounded_skew_armendariz(&self.inst.extension, b.degree_cap, b.support_cap, b.pair_budget, false) {
            Ok(ArmendarizOutcome::Holds { .. }) => finding(name, Truth::Holds, self.bounded()),
            Ok(ArmendarizOutcome::Fails(w)) => finding(name, Truth::Fails(Witness::Armendariz(w)), Evidence::Exact),
            Err(e) => finding(name, Truth::Unknown(e.to_string()), self.bounded()),
        }
    }

    pub fn nil_invariance(&self, mode: InvarianceMode) -> Finding {
        let name = match mode {
            InvarianceMode::SigmaInvariant => "N(R) is Σ-invariant",
            InvarianceMode::SigmaIdeal => "σ_i(N(R)) = N(R)",
            InvarianceMode::DeltaInvariant => "N(R) is Δ-invariant",
        };
        let w = compat::invariance(&self.nil, self.inst.extension.system(), mode);
        exact(name, w.map(|witness| Witness::Invariance { witness, mode }))
    }

    pub fn nil_sigma_rigid(&self) -> Finding {
        let w = compat::is_sigma_rigid_subset(self.inst.extension.system(), &self.nil);
        exact("N(R) is Σ-rigid", w.map(|witness| Witness::Rigid { witness, target: RigidTarget::Nilpotents }))
    }

    pub fn d_units(&self) -> Finding {
        let ring = self.ring();
        let bad = self.inst.extension.relations().iter().find(|(_, r)| !ring.is_unit(r.d));
        exact("every d_ij is a unit", bad.map(|(&(i, j), _)| Witness::NonUnitD { i, j }))
    }

    pub fn dedekind_finite(&self) -> Finding {
        let ring = self.ring();
        let one = ring.one();
        let bad = ring
            .elements()
            .flat_map(|a| ring.elements().map(move |b| (a, b)))
            .find(|&(a, b)| ring.mul(a, b) == one && ring.mul(b, a) != one);
        exact("one-sided inverses in R are two-sided", bad.map(|(a, b)| Witness::OneSidedInverse { a, b }))
    }

    /// The bounded face of "A is NI".
    pub fn a_ni(&self) -> Finding {
        let name = "A is NI";
        match self.ni_check() {
            Ok(c) => match &c.outcome {
                NiOutcome::Violation(v) => finding(name, Truth::Fails(Witness::Ni(v.clone())), Evidence::Exact),
                NiOutcome::ConsistentWithNi => finding(name, Truth::Holds, self.bounded()),
                NiOutcome::Inconclusive => {
                    let why = format!("{} combinations hit the exponent cap", c.stats.combinations_unknown);
                    finding(name, Truth::Unknown(why), self.bounded())
                }
            },
            Err(e) => finding(name, Truth::Unknown(e), self.bounded()),
        }
    }

    /// The bounded face of `N(A) = N(R)⟨x⟩`: the coefficient criterion
    /// against the probe on the window and on a violating combination.
    pub fn nil_extension_equality(&self) -> Finding {
        let name = "N(A) = N(R)⟨x⟩";
        let c = match self.ni_check() {
            Ok(c) => c,
            Err(e) => return finding(name, Truth::Unknown(e), self.bounded()),
        };
        if let Some(f) = c.agreement.nilpotent_outside.first() {
            return finding(name, Truth::Fails(Witness::NilpotentOutside(f.clone())), Evidence::Exact);
        }
        if let Some(f) = c.agreement.inside_not_nilpotent.first() {
            return finding(name, Truth::Fails(Witness::InsideNotNilpotent(f.clone())), Evidence::Exact);
        }
        if let NiOutcome::Violation(v) = &c.outcome {
            let ext = &self.inst.extension;
            let comb = v.combination(ext);
            if comb.coefficients().all(|x| self.nil.contains(&x)) {
                return finding(name, Truth::Fails(Witness::InsideNotNilpotent(comb)), Evidence::Exact);
            }
        }
        if c.agreement.unresolved > 0 {
            let why = format!("{} window elements were not resolved by the probe", c.agreement.unresolved);
            return finding(name, Truth::Unknown(why), self.bounded());
        }
        finding(name, Truth::Holds, self.bounded())
    }

    fn qr_results(&self) -> Option<&Vec<(SkewPoly, bool)>> {
        let c = self.ni_check().ok()?;
        Some(self.qr.get_or_init(|| {
            let ext = &self.inst.extension;
            c.nilpotent
                .iter()
                .map(|f| (f.clone(), ext.quasi_regularity_witness(f, self.budget.exponent_cap).is_ok()))
                .collect()
        }))
    }

    /// Every proved-nilpotent window element (homogeneous ones only when a
    /// grading is given) has a verified inverse of `1 + f`.
    pub fn quasi_regularity(&self, grading: Option<&Grading>) -> Finding {
        let name = if grading.is_some() {
            "homogeneous nilpotents are quasi-regular"
        } else {
            "nilpotents are quasi-regular"
        };
        let Some(results) = self.qr_results() else {
            let why = self.ni_check().err().unwrap_or_default();
            return finding(name, Truth::Unknown(why), self.bounded());
        };
        let homogeneous = |f: &SkewPoly| match grading {
            Some(g) => (0..=self.budget.degree_cap + g.max_degree()).any(|p| graded::is_homogeneous(g, f, p)),
            None => true,
        };
        match results.iter().find(|(f, ok)| !ok && homogeneous(f)) {
            Some((f, _)) => finding(name, Truth::Fails(Witness::QuasiRegularity(f.clone())), Evidence::Exact),
            None => finding(name, Truth::Holds, self.bounded()),
        }
    }

    /// Count of window nilpotents that received a quasi-regularity witness.
    pub fn quasi_regular_count(&self) -> usize {
        self.qr_results().map_or(0, |r| r.iter().filter(|(_, ok)| *ok).count())
    }

    /// Bounded face of "A is NJ": NI at the bounds and every nilpotent
    /// quasi-regular.
    pub fn a_nj(&self) -> Finding {
        all_of("A is NJ", vec![self.a_ni(), self.quasi_regularity(None)])
    }

    pub fn graded(&self, grading: &Grading) -> Finding {
        let name = "A is a graded extension";
        match graded::is_graded_extension(&self.inst.extension, grading) {
            Ok(p) => exact(name, p.failures().next().cloned().map(Witness::Graded)),
            Err(e) => finding(name, Truth::Unknown(e.to_string()), Evidence::Exact),
        }
    }

    /// `J(A) ∩ R_0` is nil: every non-nilpotent element of `R_0` has a
    /// power that is a nonzero idempotent, and `J(A)` holds none.
    pub fn jacobson_r0_nil(&self, grading: &Grading) -> Finding {
        let ring = self.ring();
        let bad = grading
            .degree_part(0)
            .into_iter()
            .find(|&r| !ring.is_nilpotent(r) && outside_jacobson(ring, r).is_none());
        exact("J(A) ∩ R_0 is nil", bad.map(Witness::Uncertified))
    }
}

impl Facts<'_> {
    /// Every proved-nilpotent window element has its coefficients in
    /// `N(R)`.
    pub fn nilpotents_in_extended_nil(&self) -> Finding {
        let name = "proved nilpotents lie in N(R)⟨x⟩";
        match self.ni_check() {
            Ok(c) => match c.agreement.nilpotent_outside.first() {
                Some(f) => finding(name, Truth::Fails(Witness::NilpotentOutside(f.clone())), Evidence::Exact),
                None => finding(name, Truth::Holds, self.bounded()),
            },
            Err(e) => finding(name, Truth::Unknown(e), self.bounded()),
        }
    }
}
