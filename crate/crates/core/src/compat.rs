//! Compatibility, rigidity and invariance predicates for `(Σ, Δ)`.
//!
//! Every predicate quantifies over the whole ring, so each is an exact
//! decision except for those that range over δ-words, which stop at the
//! system's word cap and say so through [`Bound`].

use std::fmt;

use crate::maps::{SigmaSystem, WordMap};
use crate::radical::{self, ElemSet};
use crate::ring::{Elem, FiniteRing};

/// Which family of composites a witness map came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapFamily {
    Sigma,
    Delta,
}

/// A failing instance: `a`, `b` and the composite map (as a word).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatWitness {
    pub a: Elem,
    pub b: Elem,
    pub family: MapFamily,
    pub word: Vec<usize>,
}

impl CompatWitness {
    pub fn describe(&self, ring: &FiniteRing) -> String {
        format!("a = {}, b = {}, map = {}", ring.format(self.a), ring.format(self.b), word_name(self.family, &self.word))
    }
}

/// Human-readable name of a composite, e.g. `σ1∘σ2` or `id`.
pub fn word_name(family: MapFamily, word: &[usize]) -> String {
    if word.is_empty() {
        return "id".into();
    }
    let letter = match family {
        MapFamily::Sigma => "σ",
        MapFamily::Delta => "δ",
    };
    word.iter().map(|i| format!("{letter}{}", i + 1)).collect::<Vec<_>>().join("∘")
}

/// How far a quantified check went.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Exact,
    /// δ-words up to this length were checked.
    Words(usize),
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Exact => write!(f, "exact"),
            Bound::Words(w) => write!(f, "bounded(W={w})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatResult {
    pub witness: Option<CompatWitness>,
    pub bound: Bound,
}

impl CompatResult {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

fn delta_bound(system: &SigmaSystem) -> Bound {
    if system.has_nonzero_delta() {
        Bound::Words(system.word_cap())
    } else {
        Bound::Exact
    }
}

fn first_failure(
    ring: &FiniteRing,
    maps: &[WordMap],
    family: MapFamily,
    mut bad: impl FnMut(Elem, Elem, &WordMap) -> bool,
) -> Option<CompatWitness> {
    for a in ring.elements() {
        for b in ring.elements() {
            for wm in maps {
                if bad(a, b, wm) {
                    return Some(CompatWitness { a, b, family, word: wm.word.clone() });
                }
            }
        }
    }
    None
}

/// `a τ(b) = 0 ⟺ ab = 0` for every `τ` in the closure of `Σ`.
pub fn is_sigma_compatible(system: &SigmaSystem) -> CompatResult {
    let r = system.ring();
    let zero = r.zero();
    let witness = first_failure(r, system.closure(), MapFamily::Sigma, |a, b, wm| {
        (r.mul(a, wm.map.apply(b)) == zero) != (r.mul(a, b) == zero)
    });
    CompatResult { witness, bound: Bound::Exact }
}

/// `ab = 0 ⟹ a δ^β(b) = 0` for every δ-word up to the cap.
pub fn is_delta_compatible(system: &SigmaSystem) -> CompatResult {
    let r = system.ring();
    let zero = r.zero();
    let witness = first_failure(r, system.delta_words(), MapFamily::Delta, |a, b, wm| {
        r.mul(a, b) == zero && r.mul(a, wm.map.apply(b)) != zero
    });
    CompatResult { witness, bound: delta_bound(system) }
}

/// Both strict conditions; the witness is from `Σ` first.
pub fn is_compatible(system: &SigmaSystem) -> CompatResult {
    let s = is_sigma_compatible(system);
    if !s.holds() {
        return s;
    }
    is_delta_compatible(system)
}

/// `a τ(b) ∈ N(R) ⟺ ab ∈ N(R)`.
pub fn is_weak_sigma_compatible(system: &SigmaSystem) -> CompatResult {
    let r = system.ring();
    let nil = radical::nilpotent_set(r);
    let witness = first_failure(r, system.closure(), MapFamily::Sigma, |a, b, wm| {
        nil.contains(&r.mul(a, wm.map.apply(b))) != nil.contains(&r.mul(a, b))
    });
    CompatResult { witness, bound: Bound::Exact }
}

/// `ab ∈ N(R) ⟹ a δ^β(b) ∈ N(R)`.
pub fn is_weak_delta_compatible(system: &SigmaSystem) -> CompatResult {
    let r = system.ring();
    let nil = radical::nilpotent_set(r);
    let witness = first_failure(r, system.delta_words(), MapFamily::Delta, |a, b, wm| {
        nil.contains(&r.mul(a, b)) && !nil.contains(&r.mul(a, wm.map.apply(b)))
    });
    CompatResult { witness, bound: delta_bound(system) }
}

pub fn is_weak_compatible(system: &SigmaSystem) -> CompatResult {
    let s = is_weak_sigma_compatible(system);
    if !s.holds() {
        return s;
    }
    is_weak_delta_compatible(system)
}

/// A failing `r` for a rigidity condition, with the composite `τ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RigidWitness {
    pub r: Elem,
    pub word: Vec<usize>,
}

/// `r τ(r) ∈ S ⟹ r ∈ S` for all `r` and `τ` in the closure.
pub fn is_sigma_rigid_subset(system: &SigmaSystem, set: &ElemSet) -> Option<RigidWitness> {
    let ring = system.ring();
    for r in ring.elements() {
        if set.contains(&r) {
            continue;
        }
        for wm in system.closure() {
            if set.contains(&ring.mul(r, wm.map.apply(r))) {
                return Some(RigidWitness { r, word: wm.word.clone() });
            }
        }
    }
    None
}

/// `r τ(r) = 0 ⟹ r = 0`. Returns the failing `r` if any.
pub fn is_sigma_rigid(system: &SigmaSystem) -> Option<RigidWitness> {
    let zero: ElemSet = [system.ring().zero()].into_iter().collect();
    is_sigma_rigid_subset(system, &zero)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvarianceMode {
    /// `σ_i(I) ⊆ I`.
    SigmaInvariant,
    /// `σ_i(I) = I`.
    SigmaIdeal,
    /// `δ_i(I) ⊆ I`.
    DeltaInvariant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvarianceWitness {
    /// `x ∈ I` but the image under map `index` leaves `I`.
    ImageOutside { index: usize, element: Elem },
    /// `x ∈ I` is not the image of any element of `I` under `σ_index`.
    NotInImage { index: usize, element: Elem },
}

/// Checks `set` against the chosen invariance. `set` is usually an ideal
/// such as `N(R)`, but any subset is accepted.
pub fn invariance(set: &ElemSet, system: &SigmaSystem, mode: InvarianceMode) -> Option<InvarianceWitness> {
    let maps = match mode {
        InvarianceMode::DeltaInvariant => system.deltas(),
        _ => system.sigmas(),
    };
    for (index, f) in maps.iter().enumerate() {
        for &x in set {
            if !set.contains(&f.apply(x)) {
                return Some(InvarianceWitness::ImageOutside { index, element: x });
            }
        }
        if mode == InvarianceMode::SigmaIdeal {
            let image: ElemSet = set.iter().map(|&x| f.apply(x)).collect();
            if let Some(&element) = set.iter().find(|x| !image.contains(x)) {
                return Some(InvarianceWitness::NotInImage { index, element });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::RingMap;
    use crate::corpus::rings;

    fn swap_system() -> SigmaSystem {
        let r = rings::product(&rings::zn(2).unwrap(), &rings::zn(2).unwrap()).unwrap();
        let swap = RingMap::endomorphism(&r, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let zero = RingMap::zero_derivation(&r, &swap);
        SigmaSystem::new(&r, vec![swap], vec![zero], 4).unwrap()
    }

    fn dual_system(delta: Vec<Vec<u32>>) -> SigmaSystem {
        let r = rings::trunc_poly(2, 2).unwrap();
        let id = RingMap::identity(&r);
        let d = RingMap::sigma_derivation(&r, &id, delta).unwrap();
        SigmaSystem::new(&r, vec![id], vec![d], 4).unwrap()
    }

    #[test]
    fn swap_is_not_compatible() {
        let sys = swap_system();
        let r = sys.ring().clone();
        let res = is_sigma_compatible(&sys);
        let w = res.witness.unwrap();
        assert_ne!(r.mul(w.a, w.b), r.zero());
        assert!(!is_weak_sigma_compatible(&sys).holds());
        let e = r.elem(&[1, 0]).unwrap();
        assert_eq!(is_sigma_rigid(&sys).unwrap().r, e);
        assert!(is_delta_compatible(&sys).holds());
        assert_eq!(is_delta_compatible(&sys).bound, Bound::Exact);
    }

    #[test]
    fn identity_on_z4() {
        let r = rings::zn(4).unwrap();
        let sys = SigmaSystem::trivial(&r, 1);
        assert!(is_compatible(&sys).holds());
        assert!(is_sigma_rigid(&sys).is_some());
        let nil = radical::nilpotent_set(&r);
        assert!(is_sigma_rigid_subset(&sys, &nil).is_none());
        assert!(invariance(&nil, &sys, InvarianceMode::SigmaIdeal).is_none());
    }

    #[test]
    fn d_dy_on_dual_numbers() {
        let sys = dual_system(vec![vec![0, 1], vec![0, 0]]);
        let r = sys.ring().clone();
        let y = r.elem(&[0, 1]).unwrap();
        let strict = is_delta_compatible(&sys);
        assert!(!strict.holds());
        assert_eq!(strict.bound, Bound::Words(4));
        assert!(!is_weak_delta_compatible(&sys).holds());
        let nil = radical::nilpotent_set(&r);
        assert_eq!(
            invariance(&nil, &sys, InvarianceMode::DeltaInvariant),
            Some(InvarianceWitness::ImageOutside { index: 0, element: y })
        );
    }

    #[test]
    fn euler_on_dual_numbers() {
        let sys = dual_system(vec![vec![0, 0], vec![0, 1]]);
        assert!(is_delta_compatible(&sys).holds());
        assert!(is_weak_delta_compatible(&sys).holds());
        let nil = radical::nilpotent_set(sys.ring());
        assert!(invariance(&nil, &sys, InvarianceMode::DeltaInvariant).is_none());
    }

    #[test]
    fn frobenius_is_compatible() {
        let r = rings::gf4().unwrap();
        let frob = RingMap::endomorphism(&r, vec![vec![1, 1], vec![0, 1]]).unwrap();
        let zero = RingMap::zero_derivation(&r, &frob);
        let sys = SigmaSystem::new(&r, vec![frob], vec![zero], 4).unwrap();
        assert!(is_compatible(&sys).holds());
        assert!(is_sigma_rigid(&sys).is_none());
    }

    #[test]
    fn word_names() {
        assert_eq!(word_name(MapFamily::Sigma, &[]), "id");
        assert_eq!(word_name(MapFamily::Delta, &[0, 1]), "δ1∘δ2");
    }
}
