//! Counterexample search over parametrised families of extensions.

use std::collections::BTreeMap;
use std::time::Instant;

use super::facts::Facts;
use super::{HarnessError, Instance, RigidTarget, SearchBudget, Truth, Witness};
use crate::compat;
use crate::corpus::{self, extensions, rings, CorpusError};
use crate::maps::{RingMap, SigmaSystem, DEFAULT_DELTA_WORD_CAP};
use crate::pbw::{window_size, Extension};
use crate::radical;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Property {
    /// The bounded NI check finds a violation.
    NotNi,
    NotWeakCompatible,
    /// Some `r != 0` has `r τ(r) = 0` for a composite `τ` of the `σ_i`.
    NotSigmaRigid,
    /// The base is reduced, hence NI, while the extension is not.
    NiButBaseReduced,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// `Z_p x Z_p` with `x r = swap(r) x`, one instance per prime.
    Swap { primes: Vec<u32> },
    /// `Z_p[y]/(y^m)[x; r d/dy]` for every `r` whose derivation keeps
    /// `N(R)` invariant, one base per listed `(p, m)`.
    DerivationInvariantNil { bases: Vec<(u32, usize)> },
    /// `R[x_1..x_n]` with `σ = id` and `δ = 0` for each named corpus ring
    /// and `1 <= n <= max_vars`.
    IdentitySystems { rings: Vec<String>, max_vars: usize },
}

impl Family {
    pub fn swap() -> Self {
        Family::Swap { primes: vec![2, 3] }
    }

    pub fn derivation_invariant_nil() -> Self {
        Family::DerivationInvariantNil { bases: vec![(2, 2), (2, 3), (3, 2)] }
    }

    pub fn identity_systems() -> Self {
        let rings = ["Z2", "Z3", "Z4", "Z2xZ2", "U2(Z2)", "M2(Z2)"].map(String::from).to_vec();
        Family::IdentitySystems { rings, max_vars: 2 }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Swap { .. } => "swap",
            Family::DerivationInvariantNil { .. } => "derivation-invariant-nil",
            Family::IdentitySystems { .. } => "identity-systems",
        }
    }

    /// Every member, verified, in a fixed order.
    pub fn instances(&self) -> Result<Vec<Instance>, CorpusError> {
        match self {
            Family::Swap { primes } => primes
                .iter()
                .map(|&p| {
                    let zp = rings::zn(p)?;
                    let base = rings::product(&zp, &zp)?;
                    let swap = RingMap::endomorphism(&base, vec![vec![0, 1], vec![1, 0]])?;
                    let ext = extensions::quasi_comm(&base, vec![swap], &BTreeMap::new())?;
                    Ok(Instance::new(format!("swap(Z{p}xZ{p})"), ext, None))
                })
                .collect(),
            Family::DerivationInvariantNil { bases } => {
                let mut out = Vec::new();
                for &(p, m) in bases {
                    out.extend(derivation_members(p, m)?);
                }
                Ok(out)
            }
            Family::IdentitySystems { rings: names, max_vars } => {
                let all = corpus::all()?;
                let mut out = Vec::new();
                for name in names {
                    let entry = all
                        .iter()
                        .find(|e| &e.name == name)
                        .ok_or_else(|| CorpusError::UnknownEntry(name.clone()))?;
                    for n in 1..=*max_vars {
                        let ext = Extension::polynomial_ring(&entry.ring, n)?;
                        out.push(Instance::new(format!("{name}[x1..x{n}]"), ext, None));
                    }
                }
                Ok(out)
            }
        }
    }
}

/// `δ = r d/dy` on `Z_p[y]/(y^m)`, kept when it satisfies the Leibniz rule
/// and `δ(N(R)) ⊆ N(R)`.
fn derivation_members(p: u32, m: usize) -> Result<Vec<Instance>, CorpusError> {
    let base = rings::trunc_poly(p, m)?;
    let gens = base.generators();
    let id = RingMap::identity(&base);
    let nil = radical::nilpotent_set(&base);
    let mut out = Vec::new();
    for r in base.elements() {
        let mut matrix = vec![vec![0; m]; m];
        for t in 1..m {
            let image = base.scale(base.mul(gens[t - 1], r), t as u64);
            for (s, c) in base.coords(image).into_iter().enumerate() {
                matrix[s][t] = c;
            }
        }
        let Ok(delta) = RingMap::sigma_derivation(&base, &id, matrix) else { continue };
        let sys = SigmaSystem::new(&base, vec![id.clone()], vec![delta], DEFAULT_DELTA_WORD_CAP)?;
        if compat::invariance(&nil, &sys, compat::InvarianceMode::DeltaInvariant).is_some() {
            continue;
        }
        let ext = Extension::new(sys, BTreeMap::new())?.verified()?;
        out.push(Instance::new(format!("{}[x; {} d/dy]", base.name(), base.format(r)), ext, None));
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub enum SearchOutcome {
    Found { instance: Box<Instance>, witness: Witness },
    /// No member has the property. `undecided` members ran out of budget.
    Exhausted { checked: usize, undecided: usize },
}

impl SearchOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found { .. })
    }
}

enum Probe {
    Found(Witness),
    Absent,
    Undecided,
}

fn probe(property: Property, inst: &Instance, budget: SearchBudget) -> Probe {
    let facts = Facts::new(inst, budget);
    let from = |truth: Truth| match truth {
        Truth::Fails(w) => Probe::Found(w),
        Truth::Holds => Probe::Absent,
        Truth::Unknown(_) => Probe::Undecided,
    };
    match property {
        Property::NotNi => from(facts.a_ni().truth),
        Property::NotWeakCompatible => from(facts.weak_compatible().truth),
        Property::NotSigmaRigid => match compat::is_sigma_rigid(inst.extension.system()) {
            Some(witness) => Probe::Found(Witness::Rigid { witness, target: RigidTarget::Zero }),
            None => Probe::Absent,
        },
        Property::NiButBaseReduced => {
            let ring = inst.extension.base();
            if radical::nilpotent_set(ring).len() > 1 {
                return Probe::Absent;
            }
            from(facts.a_ni().truth)
        }
    }
}

fn largest_window(instances: &[Instance], budget: &SearchBudget) -> u128 {
    let size = |e: &Extension| window_size(e.n(), e.base().size(), budget.degree_cap, budget.support_cap);
    instances.iter().map(|i| size(&i.extension)).max().unwrap_or(0)
}

/// Runs the checks for `property` on each member of `family` in order and
/// stops at the first hit.
pub fn counterexample_search(
    property: Property,
    family: &Family,
    budget: SearchBudget,
) -> Result<SearchOutcome, HarnessError> {
    let instances = family.instances()?;
    let start = Instant::now();
    let (mut checked, mut undecided) = (0, 0);
    for inst in &instances {
        if budget.time_hint.is_some_and(|t| start.elapsed() > t) {
            undecided += 1;
            continue;
        }
        checked += 1;
        match probe(property, inst, budget) {
            Probe::Found(witness) => return Ok(SearchOutcome::Found { instance: Box::new(inst.clone()), witness }),
            Probe::Absent => {}
            Probe::Undecided => undecided += 1,
        }
    }
    if !instances.is_empty() && undecided == instances.len() {
        return Err(HarnessError::BudgetExceeded { needed: largest_window(&instances, &budget), budget: budget.pair_budget });
    }
    Ok(SearchOutcome::Exhausted { checked, undecided })
}
