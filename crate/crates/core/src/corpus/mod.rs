//! Built-in rings, maps and extensions with annotated expected profiles.
//!
//! The flagship examples of the theory (Weyl algebras, enveloping algebras,
//! Clifford algebras over polynomial rings) live over infinite rings. Each
//! entry here is a finite truncation that keeps the feature a check needs,
//! and its `shadows` field says which infinite example it stands in for.

pub mod extensions;
pub mod rings;

use thiserror::Error;

use crate::classify::classify_ring;
use crate::compat::{self, InvarianceMode};
use crate::graded::{self, Grading};
use crate::maps::MapError;
use crate::pbw::{bounded_ni_check, Extension, NiOutcome, PbwError};
use crate::radical::{self, DEFAULT_IDEAL_CAP};
use crate::ring::{FiniteRing, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("bad parameter: {0}")]
    Parameter(String),
    #[error("no corpus entry named {0:?}")]
    UnknownEntry(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Pbw(#[from] PbwError),
}

/// A ground-truth annotation, re-derived by [`CorpusEntry::self_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expect {
    RingNi(bool),
    RingNj(bool),
    Reduced(bool),
    Verifies(bool),
    QuasiCommutative(bool),
    DerivationType(bool),
    WeakCompatible(bool),
    Compatible(bool),
    /// `δ_i(N(R)) ⊆ N(R)` for every `i`.
    NilDeltaInvariant(bool),
    /// `bounded_ni_check` at degree 2, support 2, exponent 8 finds a
    /// violation.
    BoundedNiViolation(bool),
    Graded(bool),
    Connected(bool),
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub shadows: &'static str,
    pub ring: FiniteRing,
    pub extension: Option<Extension>,
    pub grading: Option<Grading>,
    pub expected: Vec<Expect>,
}

/// An annotation whose recomputed value differs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub expected: Expect,
    pub detail: String,
}

impl CorpusEntry {
    fn ring_only(name: &str, shadows: &'static str, ring: FiniteRing, expected: Vec<Expect>) -> Self {
        CorpusEntry { name: name.into(), shadows, ring, extension: None, grading: None, expected }
    }

    fn with_ext(name: &str, shadows: &'static str, ext: Extension, grading: Option<Grading>, expected: Vec<Expect>) -> Self {
        CorpusEntry { name: name.into(), shadows, ring: ext.base().clone(), extension: Some(ext), grading, expected }
    }

    /// Recomputes every annotation and returns the ones that disagree.
    pub fn self_check(&self) -> Vec<Mismatch> {
        let mut out = Vec::new();
        for &e in &self.expected {
            match self.recompute(e) {
                Ok(true) => {}
                Ok(false) => out.push(Mismatch { expected: e, detail: "value differs".into() }),
                Err(detail) => out.push(Mismatch { expected: e, detail }),
            }
        }
        out
    }

    fn recompute(&self, e: Expect) -> Result<bool, String> {
        let ext = || self.extension.as_ref().ok_or_else(|| "entry has no extension".to_string());
        let profile = || classify_ring(&self.ring, DEFAULT_IDEAL_CAP).map_err(|e| e.to_string());
        Ok(match e {
            Expect::RingNi(v) => profile()?.ni == v,
            Expect::RingNj(v) => profile()?.nj == v,
            Expect::Reduced(v) => profile()?.reduced == v,
            Expect::Verifies(v) => ext()?.find_overlap_failure().is_none() == v,
            Expect::QuasiCommutative(v) => ext()?.flags().quasi_commutative == v,
            Expect::DerivationType(v) => ext()?.flags().derivation_type == v,
            Expect::WeakCompatible(v) => compat::is_weak_compatible(ext()?.system()).holds() == v,
            Expect::Compatible(v) => compat::is_compatible(ext()?.system()).holds() == v,
            Expect::NilDeltaInvariant(v) => {
                let nil = radical::nilpotent_set(&self.ring);
                compat::invariance(&nil, ext()?.system(), InvarianceMode::DeltaInvariant).is_none() == v
            }
            Expect::BoundedNiViolation(v) => {
                let check = bounded_ni_check(ext()?, 2, 2, 8, 1_000_000).map_err(|e| e.to_string())?;
                matches!(check.outcome, NiOutcome::Violation(_)) == v
            }
            Expect::Graded(v) => {
                let g = self.grading.as_ref().ok_or("entry has no grading")?;
                graded::is_graded_extension(ext()?, g).map_err(|e| e.to_string())?.is_graded_extension == v
            }
            Expect::Connected(v) => self.grading.as_ref().ok_or("entry has no grading")?.is_connected() == v,
        })
    }
}

fn graded_trunc(p: u32, m: usize) -> Result<(FiniteRing, Grading), CorpusError> {
    let r = rings::trunc_poly(p, m)?;
    let g = Grading::new(&r, (0..m as u32).collect()).map_err(|e| CorpusError::Parameter(e.to_string()))?;
    Ok((r, g))
}

/// Every built-in entry, in a fixed order.
pub fn all() -> Result<Vec<CorpusEntry>, CorpusError> {
    use extensions as x;
    use Expect::*;
    let mut out = Vec::new();

    let plain = "finite ring exemplar";
    for n in [2, 3, 4, 6, 8] {
        let r = rings::zn(n)?;
        let reduced = n != 4 && n != 8;
        out.push(CorpusEntry::ring_only(&format!("Z{n}"), plain, r, vec![RingNi(true), RingNj(true), Reduced(reduced)]));
    }
    let z2 = rings::zn(2)?;
    out.push(CorpusEntry::ring_only("Z2xZ2", plain, rings::product(&z2, &z2)?, vec![RingNi(true), Reduced(true)]));
    out.push(CorpusEntry::ring_only("Z2xZ4", plain, rings::product(&z2, &rings::zn(4)?)?, vec![RingNi(true), Reduced(false)]));
    out.push(CorpusEntry::ring_only("M2(Z2)", "non-NI exemplar", rings::matrix_full(2)?, vec![RingNi(false), RingNj(false)]));
    out.push(CorpusEntry::ring_only("U2(Z2)", "NI exemplar", rings::matrix_upper(2)?, vec![RingNi(true), RingNj(true)]));
    out.push(CorpusEntry::ring_only("U2(Z3)", "NI exemplar", rings::matrix_upper(3)?, vec![RingNi(true), RingNj(true)]));
    out.push(CorpusEntry::ring_only("GF4", plain, rings::gf4()?, vec![Reduced(true)]));
    for (p, m) in [(2, 2), (2, 3), (3, 2), (2, 4)] {
        let (r, g) = graded_trunc(p, m)?;
        let mut e = CorpusEntry::ring_only(&format!("Z{p}[y]/(y^{m})"), "graded polynomial ring", r, vec![RingNi(true), Connected(true)]);
        e.grading = Some(g);
        out.push(e);
    }

    out.push(CorpusEntry::with_ext(
        "swap",
        "skew polynomial ring over a reduced ring with a non-compatible automorphism",
        x::swap_extension()?,
        None,
        vec![Reduced(true), Verifies(true), QuasiCommutative(true), WeakCompatible(false), Compatible(false), BoundedNiViolation(true)],
    ));
    for p in [2, 3] {
        let e = x::weyl_like(p)?;
        let (_, g) = graded_trunc(p, p as usize)?;
        let mut expected = vec![Verifies(true), DerivationType(true), WeakCompatible(false), NilDeltaInvariant(false), Graded(false)];
        if p == 2 {
            expected.push(BoundedNiViolation(true));
        }
        out.push(CorpusEntry::with_ext(&format!("weyl_like({p})"), "Weyl algebra / differential operator ring", e, Some(g), expected));
    }
    for p in [2, 3] {
        let e = x::euler_like(p)?;
        let (_, g) = graded_trunc(p, p as usize)?;
        out.push(CorpusEntry::with_ext(
            &format!("euler_like({p})"),
            "differential operator ring with a nil-preserving derivation",
            e,
            Some(g),
            vec![Verifies(true), DerivationType(true), WeakCompatible(true), Compatible(true), NilDeltaInvariant(true), BoundedNiViolation(false), Graded(false)],
        ));
    }
    out.push(CorpusEntry::with_ext(
        "weyl_euler_pair",
        "enveloping algebra of a two-dimensional solvable Lie algebra acting by derivations",
        x::weyl_euler_pair()?,
        None,
        vec![Verifies(true), DerivationType(true), NilDeltaInvariant(false), BoundedNiViolation(true)],
    ));
    out.push(CorpusEntry::with_ext(
        "weyl_corrupted",
        "inconsistent presentation fixture",
        x::weyl_corrupted()?,
        None,
        vec![Verifies(false)],
    ));
    let (e, g) = x::clifford_trunc(2, 2, &x::identity_matrices(2))?;
    out.push(CorpusEntry::with_ext(
        "clifford_trunc(2)",
        "graded Clifford algebra",
        e,
        Some(g),
        vec![Verifies(true), QuasiCommutative(true), Graded(true), Connected(true), RingNi(true)],
    ));
    let flip = vec![vec![0, 1], vec![1, 0]];
    let (e, g) = x::clifford_trunc(3, 2, &[flip.clone(), flip])?;
    out.push(CorpusEntry::with_ext(
        "clifford_trunc(3,flip)",
        "graded Clifford algebra with a nonzero quadratic form",
        e,
        Some(g),
        vec![Verifies(true), QuasiCommutative(false), Graded(true), Connected(true)],
    ));
    let qc = [
        ("quasi_comm(Z3,d=2)", x::quasi_comm_z3()?, true),
        ("quasi_comm(GF4,frobenius)", x::quasi_comm_frobenius()?, false),
        ("quasi_comm(Z4,d=3)", x::quasi_comm_z4()?, false),
    ];
    for (name, e, connected) in qc {
        let g = Grading::trivial(e.base());
        out.push(CorpusEntry::with_ext(
            name,
            "quantum plane / skew polynomial ring",
            e,
            Some(g),
            vec![Verifies(true), QuasiCommutative(true), WeakCompatible(true), BoundedNiViolation(false), Graded(true), Connected(connected)],
        ));
    }
    out.push(CorpusEntry::with_ext(
        "Z4[x,y]",
        "commutative polynomial ring",
        x::commutative_xy(&rings::zn(4)?)?,
        None,
        vec![Verifies(true), QuasiCommutative(true), BoundedNiViolation(false)],
    ));
    Ok(out)
}

pub fn by_name(name: &str) -> Result<CorpusEntry, CorpusError> {
    all()?.into_iter().find(|e| e.name == name).ok_or_else(|| CorpusError::UnknownEntry(name.into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_matches_its_annotations() {
        for entry in all().unwrap() {
            let bad = entry.self_check();
            assert!(bad.is_empty(), "{}: {:?}", entry.name, bad);
        }
    }

    #[test]
    fn lookup_by_name() {
        assert!(by_name("swap").is_ok());
        assert_eq!(by_name("nope").unwrap_err(), CorpusError::UnknownEntry("nope".into()));
    }
}
