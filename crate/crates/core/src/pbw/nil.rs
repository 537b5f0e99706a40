//! Nilpotency in `A`: semi-decision by powers, the coefficient criterion,
//! and a bounded test of whether the nilpotent elements form an ideal.

use std::collections::HashMap;

use super::{window, window_size, Extension, PbwError, SkewPoly};
use crate::compat::{invariance, InvarianceMode};
use crate::radical::{self, ElemSet};
use crate::ring::Elem;

pub const DEFAULT_EXPONENT_CAP: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NonNilReason {
    /// `f^from = f^to` with `from < to` and the power nonzero.
    StabilizedPower { from: u32, to: u32 },
    /// `f^power` has positive degree and, modulo the nil ideal used for
    /// reduction, a unit leading coefficient. With every `d_{i,j}` a unit
    /// the leading coefficients of further powers are products of units.
    UnitLeadingChain { power: u32 },
    /// A non-nilpotent element of the base ring (possibly after reduction).
    NonNilpotentConstant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NilProbe {
    Nilpotent(u32),
    NotNilpotent(NonNilReason),
    Unknown(u32),
}

impl NilProbe {
    pub fn is_nilpotent(&self) -> bool {
        matches!(self, NilProbe::Nilpotent(_))
    }

    pub fn is_not_nilpotent(&self) -> bool {
        matches!(self, NilProbe::NotNilpotent(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, NilProbe::Unknown(_))
    }
}

/// Every coefficient of `f` lies in `nil`.
pub fn coefficient_criterion_member(f: &SkewPoly, nil: &ElemSet) -> bool {
    f.coefficients().all(|c| nil.contains(&c))
}

impl Extension {
    /// `N(R)` when it is an ideal stable under every `σ_i` and `δ_i`, so
    /// that `N(R)⟨x⟩` is an ideal of `A`; otherwise `{0}`.
    pub fn reduction_ideal(&self) -> &ElemSet {
        self.reduction.get_or_init(|| {
            let ring = self.base();
            let nil = radical::nilpotent_set(ring);
            let ok = radical::is_ideal(ring, &nil)
                && invariance(&nil, self.system(), InvarianceMode::SigmaInvariant).is_none()
                && invariance(&nil, self.system(), InvarianceMode::DeltaInvariant).is_none();
            if ok {
                nil
            } else {
                [ring.zero()].into_iter().collect()
            }
        })
    }

    /// Leading term of `f` after discarding coefficients in the reduction
    /// ideal.
    fn reduced_leading(&self, f: &SkewPoly) -> Option<(u32, Elem)> {
        let red = self.reduction_ideal();
        f.terms().rev().find(|(_, c)| !red.contains(c)).map(|(a, c)| (a.degree(), c))
    }

    fn certify_non_nil(&self, p: &SkewPoly) -> Option<NonNilReason> {
        let (deg, c) = self.reduced_leading(p)?;
        let ring = self.base();
        if deg == 0 {
            // Every positive-degree coefficient lies in the reduction ideal,
            // so p is congruent to the constant c.
            return (!ring.is_nilpotent(c)).then_some(NonNilReason::NonNilpotentConstant);
        }
        if self.flags().bijective && ring.is_unit(c) {
            return Some(NonNilReason::UnitLeadingChain { power: 0 });
        }
        None
    }

    /// Powers `f, f^2, ...` up to `cap`, stopping at the first certificate.
    pub fn nilpotency_probe(&self, f: &SkewPoly, cap: u32) -> Result<NilProbe, PbwError> {
        self.require_verified()?;
        Ok(self.probe_unchecked(f, cap))
    }

    pub(crate) fn probe_unchecked(&self, f: &SkewPoly, cap: u32) -> NilProbe {
        if f.is_zero() {
            return NilProbe::Nilpotent(1);
        }
        if f.degree() == Some(0) {
            let c = f.coefficient(&super::MultiIndex::zero(self.n()));
            return match self.base().nilpotency_index(c) {
                Some(k) => NilProbe::Nilpotent(k),
                None => NilProbe::NotNilpotent(NonNilReason::NonNilpotentConstant),
            };
        }
        let mut seen: HashMap<SkewPoly, u32> = HashMap::new();
        let mut p = f.clone();
        for k in 1..=cap.max(1) {
            if p.is_zero() {
                return NilProbe::Nilpotent(k);
            }
            if let Some(reason) = self.certify_non_nil(&p) {
                return NilProbe::NotNilpotent(match reason {
                    NonNilReason::UnitLeadingChain { .. } => NonNilReason::UnitLeadingChain { power: k },
                    other => other,
                });
            }
            if let Some(&from) = seen.get(&p) {
                return NilProbe::NotNilpotent(NonNilReason::StabilizedPower { from, to: k });
            }
            if k == cap.max(1) {
                break;
            }
            seen.insert(p.clone(), k);
            p = self.mul_unchecked(&p, f);
        }
        NilProbe::Unknown(cap)
    }

    /// `g = Σ_{j<k} (-f)^j` for `f` with `f^k = 0`, checked to satisfy
    /// `(1 + f) g = g (1 + f) = 1`.
    pub fn quasi_regularity_witness(&self, f: &SkewPoly, cap: u32) -> Result<SkewPoly, PbwError> {
        self.require_verified()?;
        let k = match self.probe_unchecked(f, cap) {
            NilProbe::Nilpotent(k) => k,
            _ => return Err(PbwError::NotProvedNilpotent),
        };
        let minus_f = self.neg(f);
        let mut g = SkewPoly::zero(self.n());
        let mut term = self.one();
        for _ in 0..k {
            g = self.add(&g, &term);
            term = self.mul_unchecked(&term, &minus_f);
        }
        let one_plus_f = self.add(&self.one(), f);
        let one = self.one();
        if self.mul_unchecked(&one_plus_f, &g) != one || self.mul_unchecked(&g, &one_plus_f) != one {
            return Err(PbwError::Ring(crate::ring::RingError::InvariantBroken(
                "geometric series failed to invert 1 + f".into(),
            )));
        }
        Ok(g)
    }
}

/// A proved failure of the nilpotent elements to form an ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NiViolation {
    /// `f`, `g` nilpotent, `f + g` not.
    Sum { f: SkewPoly, g: SkewPoly },
    /// `f` nilpotent, `w f` not.
    LeftProduct { w: SkewPoly, f: SkewPoly },
    /// `f` nilpotent, `f w` not.
    RightProduct { f: SkewPoly, w: SkewPoly },
}

impl NiViolation {
    /// The non-nilpotent combination.
    pub fn combination(&self, ext: &Extension) -> SkewPoly {
        match self {
            NiViolation::Sum { f, g } => ext.add(f, g),
            NiViolation::LeftProduct { w, f } => ext.mul_unchecked(w, f),
            NiViolation::RightProduct { f, w } => ext.mul_unchecked(f, w),
        }
    }

    /// The polynomials that must be nilpotent.
    pub fn nilpotent_parts(&self) -> Vec<&SkewPoly> {
        match self {
            NiViolation::Sum { f, g } => vec![f, g],
            NiViolation::LeftProduct { f, .. } | NiViolation::RightProduct { f, .. } => vec![f],
        }
    }

    /// Re-runs the probes: parts nilpotent, combination provably not.
    pub fn replay(&self, ext: &Extension, cap: u32) -> bool {
        self.nilpotent_parts().iter().all(|f| ext.probe_unchecked(f, cap).is_nilpotent())
            && ext.probe_unchecked(&self.combination(ext), cap).is_not_nilpotent()
    }

    pub fn describe(&self, ext: &Extension) -> String {
        let p = |f: &SkewPoly| ext.format_poly(f);
        match self {
            NiViolation::Sum { f, g } => {
                format!("f = {}, g = {} nilpotent; f + g = {} is not", p(f), p(g), p(&self.combination(ext)))
            }
            NiViolation::LeftProduct { w, f } => {
                format!("f = {} nilpotent; w = {}, w f = {} is not", p(f), p(w), p(&self.combination(ext)))
            }
            NiViolation::RightProduct { f, w } => {
                format!("f = {} nilpotent; w = {}, f w = {} is not", p(f), p(w), p(&self.combination(ext)))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NiOutcome {
    Violation(NiViolation),
    ConsistentWithNi,
    Inconclusive,
}

/// Window elements on which the coefficient criterion and the probe
/// disagree or could not be compared.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CriterionAgreement {
    /// Proved nilpotent, but some coefficient is outside `N(R)`.
    pub nilpotent_outside: Vec<SkewPoly>,
    /// All coefficients in `N(R)`, but proved not nilpotent.
    pub inside_not_nilpotent: Vec<SkewPoly>,
    /// Probe returned `Unknown`.
    pub unresolved: usize,
}

impl CriterionAgreement {
    pub fn mismatches(&self) -> usize {
        self.nilpotent_outside.len() + self.inside_not_nilpotent.len()
    }

    pub fn is_exact(&self) -> bool {
        self.mismatches() == 0 && self.unresolved == 0
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct NiCheckStats {
    pub window: usize,
    pub proved_nilpotent: usize,
    pub proved_not_nilpotent: usize,
    pub unknown: usize,
    pub combinations_checked: usize,
    pub combinations_unknown: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiCheck {
    pub outcome: NiOutcome,
    pub stats: NiCheckStats,
    /// Window elements proved nilpotent, in window order.
    pub nilpotent: Vec<SkewPoly>,
    pub agreement: CriterionAgreement,
}

/// Enumerates the window of polynomials with degree `<= degree_cap` and at
/// most `support_cap` terms, probes each, and tests the proved-nilpotent
/// ones for closure: first against products with the variables and the
/// base ring, then sums, then products with the whole window.
pub fn bounded_ni_check(
    ext: &Extension,
    degree_cap: u32,
    support_cap: usize,
    exponent_cap: u32,
    pair_budget: u128,
) -> Result<NiCheck, PbwError> {
    ext.require_verified()?;
    let ring = ext.base();
    let size = window_size(ext.n(), ring.size(), degree_cap, support_cap);
    if size > pair_budget {
        return Err(PbwError::BudgetExceeded { needed: size, budget: pair_budget });
    }
    let win = window(ext, degree_cap, support_cap);
    let nil_r = radical::nilpotent_set(ring);
    let mut memo: HashMap<SkewPoly, NilProbe> = HashMap::new();
    let mut probe = |f: &SkewPoly| -> NilProbe {
        if let Some(&p) = memo.get(f) {
            return p;
        }
        let p = ext.probe_unchecked(f, exponent_cap);
        memo.insert(f.clone(), p);
        p
    };

    let mut stats = NiCheckStats { window: win.len(), ..Default::default() };
    let mut nilpotent = Vec::new();
    let mut agreement = CriterionAgreement::default();
    for f in &win {
        let p = probe(f);
        let crit = coefficient_criterion_member(f, &nil_r);
        match p {
            NilProbe::Nilpotent(_) => {
                stats.proved_nilpotent += 1;
                nilpotent.push(f.clone());
                if !crit {
                    agreement.nilpotent_outside.push(f.clone());
                }
            }
            NilProbe::NotNilpotent(_) => {
                stats.proved_not_nilpotent += 1;
                if crit {
                    agreement.inside_not_nilpotent.push(f.clone());
                }
            }
            NilProbe::Unknown(_) => {
                stats.unknown += 1;
                agreement.unresolved += 1;
            }
        }
    }

    let nb = nilpotent.len() as u128;
    let needed = nb * nb.saturating_sub(1) / 2 + 2 * nb * (win.len() as u128);
    if needed > pair_budget {
        return Err(PbwError::BudgetExceeded { needed, budget: pair_budget });
    }

    let mut generators: Vec<SkewPoly> = (0..ext.n()).map(|i| ext.var(i)).collect();
    generators.extend(ring.elements().filter(|&e| e != ring.zero()).map(|e| ext.constant(e)));

    let mut unknown_seen = false;
    let mut tally = |p: NilProbe, stats: &mut NiCheckStats| {
        stats.combinations_checked += 1;
        if p.is_unknown() {
            stats.combinations_unknown += 1;
            unknown_seen = true;
        }
        p.is_not_nilpotent()
    };

    let finish = |outcome, stats, nilpotent, agreement| Ok(NiCheck { outcome, stats, nilpotent, agreement });

    for multipliers in [&generators, &win] {
        for f in &nilpotent {
            for w in multipliers.iter() {
                if tally(probe(&ext.mul_unchecked(w, f)), &mut stats) {
                    let v = NiViolation::LeftProduct { w: w.clone(), f: f.clone() };
                    return finish(NiOutcome::Violation(v), stats, nilpotent, agreement);
                }
                if tally(probe(&ext.mul_unchecked(f, w)), &mut stats) {
                    let v = NiViolation::RightProduct { f: f.clone(), w: w.clone() };
                    return finish(NiOutcome::Violation(v), stats, nilpotent, agreement);
                }
            }
        }
        if std::ptr::eq(multipliers, &generators) {
            for (a, f) in nilpotent.iter().enumerate() {
                for g in &nilpotent[a + 1..] {
                    if tally(probe(&ext.add(f, g)), &mut stats) {
                        let v = NiViolation::Sum { f: f.clone(), g: g.clone() };
                        return finish(NiOutcome::Violation(v), stats, nilpotent, agreement);
                    }
                }
            }
        }
    }
    let outcome = if unknown_seen { NiOutcome::Inconclusive } else { NiOutcome::ConsistentWithNi };
    finish(outcome, stats, nilpotent, agreement)
}
