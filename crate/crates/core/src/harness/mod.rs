//! The NI and NJ transfer results as executable consistency checks.
//!
//! A check evaluates the hypotheses and conclusions of one statement on a
//! concrete extension. Base-ring conditions are decided exactly. Conditions
//! on the extension itself range over an infinite ring and are evaluated on
//! a bounded window of polynomials, so a positive answer from them is
//! tagged [`Evidence::Bounded`]. Negative answers always carry a
//! [`Witness`] that [`Witness::replay`] re-evaluates from scratch.

mod facts;
mod search;
mod theorems;

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use thiserror::Error;

use crate::classify::NiWitness;
use crate::compat::{word_name, CompatWitness, InvarianceMode, InvarianceWitness, MapFamily, RigidWitness};
use crate::corpus::{CorpusEntry, CorpusError};
use crate::graded::{self, GradedDiagnostic, GradedError, Grading};
use crate::pbw::{ArmendarizWitness, Extension, NiViolation, PbwError, SkewPoly};
use crate::radical::{self, ElemSet, DEFAULT_IDEAL_CAP};
use crate::ring::{Elem, RingError};

pub use search::{counterexample_search, Family, Property, SearchOutcome};
pub use theorems::{run_all, run_check, run_checks, shape_compatible};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TheoremId {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
    T8,
    T9,
    T10,
}

impl TheoremId {
    pub const ALL: [TheoremId; 10] = [
        TheoremId::T1,
        TheoremId::T2,
        TheoremId::T3,
        TheoremId::T4,
        TheoremId::T5,
        TheoremId::T6,
        TheoremId::T7,
        TheoremId::T8,
        TheoremId::T9,
        TheoremId::T10,
    ];

    pub fn number(self) -> u8 {
        TheoremId::ALL.iter().position(|&t| t == self).expect("listed") as u8 + 1
    }

    /// One-line statement of what the check encodes.
    pub fn statement(self) -> &'static str {
        match self {
            TheoremId::T1 => "over a weak (Σ,Δ)-compatible base, R is NI iff A is NI",
            TheoremId::T2 => "R 2-primal and (Σ,Δ)-compatible, or locally finite, compatible and Σ-skew Armendariz, implies A is NI",
            TheoremId::T3 => "derivation type: A is NI iff N(R) is a Δ-invariant ideal and N(A) = N(R)⟨x⟩",
            TheoremId::T4 => "A NI with N(R) Σ-rigid, N(R) a Σ-ideal with N(A) = N(R)⟨x⟩, and N(R) a Σ-rigid ideal with N*(A) = N*(R)⟨x⟩ are equivalent",
            TheoremId::T5 => "A NI implies every d_ij is a unit and one-sided inverses are two-sided",
            TheoremId::T6 => "graded A is NJ iff A is NI and J(A) ∩ R_0 is nil",
            TheoremId::T7 => "quasi-commutative bijective A over a weakly 2-primal weak Σ-compatible base is NJ",
            TheoremId::T8 => "derivation type: A is NI iff A is NJ, and then N(A) = N*(A) = N(R)⟨x⟩",
            TheoremId::T9 => "quasi-commutative: A NJ with N(A) = N(R)⟨x⟩, N(R) a Σ-ideal with N(A) = N(R)⟨x⟩, A NI with N(R) Σ-rigid, and N(R) a Σ-rigid ideal with N*(A) = N*(R)⟨x⟩ are equivalent",
            TheoremId::T10 => "derivation type: A NJ, A NI, R NI with N(A) = N(R)⟨x⟩, and R NI with N*(A) = N*(R)⟨x⟩ are equivalent",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}", self.number())
    }
}

impl FromStr for TheoremId {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let digits = s.trim().trim_start_matches(['T', 't']);
        digits
            .parse::<usize>()
            .ok()
            .and_then(|k| k.checked_sub(1))
            .and_then(|k| TheoremId::ALL.get(k).copied())
            .ok_or_else(|| HarnessError::UnknownTheorem(s.to_string()))
    }
}

/// Caps for the bounded searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub degree_cap: u32,
    pub support_cap: usize,
    pub exponent_cap: u32,
    /// Upper bound on the number of products and sums examined.
    pub pair_budget: u128,
    /// Soft limit for searches that iterate over many instances.
    pub time_hint: Option<Duration>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { degree_cap: 4, support_cap: 3, exponent_cap: 16, pair_budget: 1_000_000, time_hint: None }
    }
}

impl SearchBudget {
    pub fn new(degree_cap: u32, support_cap: usize, exponent_cap: u32, pair_budget: u128) -> Result<Self, HarnessError> {
        if degree_cap == 0 || support_cap == 0 || exponent_cap == 0 || pair_budget == 0 {
            return Err(HarnessError::InvalidBudget("every cap must be positive".into()));
        }
        Ok(SearchBudget { degree_cap, support_cap, exponent_cap, pair_budget, time_hint: None })
    }

    /// Every cap doubled.
    pub fn doubled(&self) -> Self {
        SearchBudget {
            degree_cap: self.degree_cap * 2,
            support_cap: self.support_cap * 2,
            exponent_cap: self.exponent_cap * 2,
            pair_budget: self.pair_budget.saturating_mul(2),
            time_hint: self.time_hint.map(|t| t * 2),
        }
    }
}

impl fmt::Display for SearchBudget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "degree<={} support<={} exponent<={} pairs<={}",
            self.degree_cap, self.support_cap, self.exponent_cap, self.pair_budget
        )
    }
}

/// How a positive finding was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Evidence {
    Exact,
    Bounded(SearchBudget),
}

impl Evidence {
    pub fn is_exact(&self) -> bool {
        matches!(self, Evidence::Exact)
    }
}

/// A base-ring radical named in a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadicalName {
    Prime,
    Levitzki,
}

/// The set a rigidity witness was tested against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RigidTarget {
    Zero,
    Nilpotents,
}

/// A concrete counterexample to a finding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Compat { witness: CompatWitness, weak: bool },
    Rigid { witness: RigidWitness, target: RigidTarget },
    /// `N(R)` fails the invariance condition.
    Invariance { witness: InvarianceWitness, mode: InvarianceMode },
    /// `N(R)` is not an ideal.
    RingNotNi(NiWitness),
    /// A nilpotent element outside the named radical.
    OutsideRadical { element: Elem, radical: RadicalName },
    Ni(NiViolation),
    /// A nilpotent polynomial with a coefficient outside `N(R)`.
    NilpotentOutside(SkewPoly),
    /// A polynomial with coefficients in `N(R)` that is not nilpotent.
    InsideNotNilpotent(SkewPoly),
    Armendariz(ArmendarizWitness),
    Graded(GradedDiagnostic),
    NonUnitD { i: usize, j: usize },
    /// `ab = 1` but `ba != 1`.
    OneSidedInverse { a: Elem, b: Elem },
    /// A nilpotent `f` for which `1 + f` was not inverted.
    QuasiRegularity(SkewPoly),
    /// A non-nilpotent element of `R_0` with no certificate that it lies
    /// outside `J(A)`.
    Uncertified(Elem),
}

impl Witness {
    /// Re-derives the failure from the instance alone.
    pub fn replay(&self, inst: &Instance, budget: &SearchBudget) -> bool {
        let ext = &inst.extension;
        let ring = ext.base();
        let sys = ext.system();
        let nil = radical::nilpotent_set(ring);
        let cap = budget.exponent_cap;
        let in_nil = |f: &SkewPoly| f.coefficients().all(|c| nil.contains(&c));
        match self {
            Witness::Compat { witness: w, weak } => {
                let maps = match w.family {
                    MapFamily::Sigma => sys.closure(),
                    MapFamily::Delta => sys.delta_words(),
                };
                let Some(wm) = maps.iter().find(|m| m.word == w.word) else { return false };
                let lhs = ring.mul(w.a, w.b);
                let rhs = ring.mul(w.a, wm.map.apply(w.b));
                let small = |x: Elem| if *weak { nil.contains(&x) } else { x == ring.zero() };
                match w.family {
                    MapFamily::Sigma => small(lhs) != small(rhs),
                    MapFamily::Delta => small(lhs) && !small(rhs),
                }
            }
            Witness::Rigid { witness: w, target } => {
                let set: ElemSet = match target {
                    RigidTarget::Zero => [ring.zero()].into_iter().collect(),
                    RigidTarget::Nilpotents => nil.clone(),
                };
                let Some(wm) = sys.closure().iter().find(|m| m.word == w.word) else { return false };
                !set.contains(&w.r) && set.contains(&ring.mul(w.r, wm.map.apply(w.r)))
            }
            Witness::Invariance { witness, mode } => match *witness {
                InvarianceWitness::ImageOutside { index, element } => {
                    let maps = if *mode == InvarianceMode::DeltaInvariant { sys.deltas() } else { sys.sigmas() };
                    maps.get(index).is_some_and(|m| nil.contains(&element) && !nil.contains(&m.apply(element)))
                }
                InvarianceWitness::NotInImage { index, element } => sys.sigmas().get(index).is_some_and(|m| {
                    nil.contains(&element) && !nil.iter().any(|&x| m.apply(x) == element)
                }),
            },
            Witness::RingNotNi(w) => match *w {
                NiWitness::Sum(a, b) => nil.contains(&a) && nil.contains(&b) && !nil.contains(&ring.add(a, b)),
                NiWitness::LeftProduct(r, a) => nil.contains(&a) && !nil.contains(&ring.mul(r, a)),
                NiWitness::RightProduct(a, r) => nil.contains(&a) && !nil.contains(&ring.mul(a, r)),
            },
            Witness::OutsideRadical { element, radical: which } => {
                let rad = match which {
                    RadicalName::Prime => radical::prime_radical(ring, DEFAULT_IDEAL_CAP),
                    RadicalName::Levitzki => radical::levitzki_radical(ring, DEFAULT_IDEAL_CAP),
                };
                rad.is_ok_and(|r| nil.contains(element) && !r.contains(*element))
            }
            Witness::Ni(v) => ext.is_verified() && v.replay(ext, cap),
            Witness::NilpotentOutside(f) => {
                !in_nil(f) && ext.nilpotency_probe(f, cap).is_ok_and(|p| p.is_nilpotent())
            }
            Witness::InsideNotNilpotent(f) => {
                in_nil(f) && ext.nilpotency_probe(f, cap).is_ok_and(|p| p.is_not_nilpotent())
            }
            Witness::Armendariz(w) => {
                ext.mul(&w.f, &w.g).is_ok_and(|p| p.is_zero())
                    && w.f.coefficient(&w.alpha) == w.a
                    && w.g.coefficients().any(|c| c == w.b)
                    && ring.mul(w.a, sys.sigma_power(w.alpha.exponents(), w.b)) != ring.zero()
            }
            Witness::Graded(d) => match &inst.grading {
                Some(g) => graded::is_graded_extension(ext, g)
                    .is_ok_and(|p| p.diagnostics.iter().any(|x| x.condition == d.condition && !x.passed)),
                None => false,
            },
            Witness::NonUnitD { i, j } => {
                ext.relations().get(&(*i, *j)).is_some_and(|r| !ring.is_unit(r.d))
            }
            Witness::OneSidedInverse { a, b } => {
                ring.mul(*a, *b) == ring.one() && ring.mul(*b, *a) != ring.one()
            }
            Witness::QuasiRegularity(f) => {
                ext.nilpotency_probe(f, cap).is_ok_and(|p| p.is_nilpotent())
                    && ext.quasi_regularity_witness(f, cap).is_err()
            }
            Witness::Uncertified(r) => !ring.is_nilpotent(*r) && facts::outside_jacobson(ring, *r).is_none(),
        }
    }

    /// Human-readable form, with polynomials in the expression syntax.
    pub fn describe(&self, ext: &Extension) -> String {
        let ring = ext.base();
        let e = |a: &Elem| ring.format(*a);
        let p = |f: &SkewPoly| ext.format_poly(f);
        match self {
            Witness::Compat { witness, weak } => {
                format!("{}compatibility fails: {}", if *weak { "weak " } else { "" }, witness.describe(ring))
            }
            Witness::Rigid { witness, target } => {
                let set = match target {
                    RigidTarget::Zero => "{0}",
                    RigidTarget::Nilpotents => "N(R)",
                };
                format!(
                    "r = {} lies outside {set} but r {}(r) lies inside",
                    e(&witness.r),
                    word_name(MapFamily::Sigma, &witness.word)
                )
            }
            Witness::Invariance { witness, mode } => match *witness {
                InvarianceWitness::ImageOutside { index, element } => {
                    let m = if *mode == InvarianceMode::DeltaInvariant { "δ" } else { "σ" };
                    format!("{m}{}({}) leaves N(R)", index + 1, e(&element))
                }
                InvarianceWitness::NotInImage { index, element } => {
                    format!("{} in N(R) is not σ{} of an element of N(R)", e(&element), index + 1)
                }
            },
            Witness::RingNotNi(w) => match *w {
                NiWitness::Sum(a, b) => format!("{} and {} are nilpotent, their sum is not", e(&a), e(&b)),
                NiWitness::LeftProduct(r, a) => format!("{} is nilpotent, {} times it is not", e(&a), e(&r)),
                NiWitness::RightProduct(a, r) => format!("{} is nilpotent, it times {} is not", e(&a), e(&r)),
            },
            Witness::OutsideRadical { element, radical } => {
                let name = match radical {
                    RadicalName::Prime => "the prime radical",
                    RadicalName::Levitzki => "the Levitzki radical",
                };
                format!("{} is nilpotent but not in {name}", e(element))
            }
            Witness::Ni(v) => v.describe(ext),
            Witness::NilpotentOutside(f) => format!("{} is nilpotent with a coefficient outside N(R)", p(f)),
            Witness::InsideNotNilpotent(f) => format!("{} has coefficients in N(R) but is not nilpotent", p(f)),
            Witness::Armendariz(w) => format!(
                "f = {}, g = {} multiply to 0 but a = {}, b = {} give a σ^{:?}(b) != 0",
                p(&w.f),
                p(&w.g),
                e(&w.a),
                e(&w.b),
                w.alpha.exponents()
            ),
            Witness::Graded(d) => format!("graded condition {:?} fails at {:?}", d.condition, d.witness.map(|x| e(&x))),
            Witness::NonUnitD { i, j } => format!("d_{{{},{}}} is not a unit", i + 1, j + 1),
            Witness::OneSidedInverse { a, b } => format!("{} {} = 1 but {} {} != 1", e(a), e(b), e(b), e(a)),
            Witness::QuasiRegularity(f) => format!("{} is nilpotent but 1 + f was not inverted", p(f)),
            Witness::Uncertified(r) => format!("{} has no power that is a unit or a nonzero idempotent", e(r)),
        }
    }

    /// A short stable tag for the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Witness::Compat { .. } => "compat",
            Witness::Rigid { .. } => "rigid",
            Witness::Invariance { .. } => "invariance",
            Witness::RingNotNi(_) => "ring-not-ni",
            Witness::OutsideRadical { .. } => "outside-radical",
            Witness::Ni(_) => "ni",
            Witness::NilpotentOutside(_) => "nilpotent-outside",
            Witness::InsideNotNilpotent(_) => "inside-not-nilpotent",
            Witness::Armendariz(_) => "armendariz",
            Witness::Graded(_) => "graded",
            Witness::NonUnitD { .. } => "non-unit-d",
            Witness::OneSidedInverse { .. } => "one-sided-inverse",
            Witness::QuasiRegularity(_) => "quasi-regularity",
            Witness::Uncertified(_) => "uncertified",
        }
    }

    /// The polynomials the witness is made of, labelled.
    pub fn polynomials(&self, ext: &Extension) -> Vec<(&'static str, SkewPoly)> {
        match self {
            Witness::Ni(v) => {
                let mut out = match v {
                    NiViolation::Sum { f, g } => vec![("f", f.clone()), ("g", g.clone())],
                    NiViolation::LeftProduct { w, f } | NiViolation::RightProduct { f, w } => {
                        vec![("f", f.clone()), ("w", w.clone())]
                    }
                };
                out.push(("combination", v.combination(ext)));
                out
            }
            Witness::NilpotentOutside(f) | Witness::InsideNotNilpotent(f) | Witness::QuasiRegularity(f) => {
                vec![("f", f.clone())]
            }
            Witness::Armendariz(w) => vec![("f", w.f.clone()), ("g", w.g.clone())],
            _ => Vec::new(),
        }
    }
}

/// Three-valued outcome of a condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Truth {
    Holds,
    Fails(Witness),
    Unknown(String),
}

/// One evaluated condition. `evidence` describes how `Holds` was reached;
/// `Fails` is always backed by a replayable witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub name: String,
    pub truth: Truth,
    pub evidence: Evidence,
}

impl Finding {
    pub fn holds(&self) -> bool {
        self.truth == Truth::Holds
    }

    pub fn exact_holds(&self) -> bool {
        self.holds() && self.evidence.is_exact()
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.truth {
            Truth::Fails(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Consistent,
    Violated(Witness),
    PreconditionFailed(Witness),
    Inconclusive(String),
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Consistent => "Consistent",
            Verdict::Violated(_) => "Violated",
            Verdict::PreconditionFailed(_) => "PreconditionFailed",
            Verdict::Inconclusive(_) => "Inconclusive",
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Violated(w) | Verdict::PreconditionFailed(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremReport {
    pub id: TheoremId,
    pub instance: String,
    pub budget: SearchBudget,
    pub preconditions: Vec<Finding>,
    pub conclusions: Vec<Finding>,
    /// Evaluated but not used for the verdict.
    pub observations: Vec<Finding>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

/// An extension with an optional grading of its base.
#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub extension: Extension,
    pub grading: Option<Grading>,
}

impl Instance {
    pub fn new(name: impl Into<String>, extension: Extension, grading: Option<Grading>) -> Self {
        Instance { name: name.into(), extension, grading }
    }

    /// Verified corpus entries with an extension.
    pub fn from_entry(entry: &CorpusEntry) -> Option<Self> {
        let ext = entry.extension.as_ref().filter(|e| e.is_verified())?;
        Some(Instance::new(entry.name.clone(), ext.clone(), entry.grading.clone()))
    }
}

#[derive(Debug, Clone)]
pub struct TheoremCheck<'a> {
    pub id: TheoremId,
    pub instance: &'a Instance,
    pub budget: SearchBudget,
    /// Evaluate the conclusions even when a precondition fails; they are
    /// then reported as observations.
    pub force_conclusions: bool,
}

impl<'a> TheoremCheck<'a> {
    pub fn new(id: TheoremId, instance: &'a Instance, budget: SearchBudget) -> Self {
        TheoremCheck { id, instance, budget, force_conclusions: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("{id} does not apply: {reason}")]
    WrongShape { id: TheoremId, reason: String },
    #[error("unknown theorem id {0:?}")]
    UnknownTheorem(String),
    #[error("invalid budget: {0}")]
    InvalidBudget(String),
    #[error("search budget exceeded: needed {needed}, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error(transparent)]
    Pbw(#[from] PbwError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
}
