//! Additive self-maps of a finite ring: endomorphisms, σ-derivations and
//! the finite systems `(Σ, Δ)` they generate.
//!
//! A map is an `m x m` integer matrix acting on coordinate vectors. Entry
//! `(s, t)` is the `e_s`-coordinate of the image of `e_t`, taken modulo
//! `k_s`. The full image table is materialised at construction, so applying
//! a map is a lookup and two maps are equal exactly when their tables are.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::ring::{Elem, FiniteRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("map matrix must be {0} x {0}")]
    BadShape(usize),
    #[error("column {0} is not annihilated by its additive order")]
    NotAdditiveWellDefined(usize),
    #[error("not multiplicative on generators ({0}, {1})")]
    NotMultiplicative(usize, usize),
    #[error("endomorphism does not fix 1")]
    DoesNotFixOne,
    #[error("Leibniz rule fails on generators ({0}, {1})")]
    LeibnizFails(usize, usize),
    #[error("derivation does not vanish on 1")]
    DeltaOneNonzero,
    #[error("partner of a σ-derivation must be an endomorphism")]
    PartnerNotEndomorphism,
    #[error("map {index}: {reason}")]
    System { index: usize, reason: String },
    #[error("map belongs to a different ring")]
    RingMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapKind {
    Endomorphism,
    SigmaDerivation { partner: Box<RingMap> },
    /// A composite of derivations, additive only.
    Composite,
}

#[derive(Clone, PartialEq, Eq)]
pub struct RingMap {
    ring: FiniteRing,
    matrix: Vec<Vec<u32>>,
    kind: MapKind,
    images: Arc<[Elem]>,
    injective: bool,
}

impl fmt::Debug for RingMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RingMap")
            .field("matrix", &self.matrix)
            .field("kind", &self.kind_name())
            .field("injective", &self.injective)
            .finish()
    }
}

impl RingMap {
    fn from_matrix(ring: &FiniteRing, matrix: Vec<Vec<u32>>, kind: MapKind) -> Result<Self, MapError> {
        let m = ring.rank();
        if matrix.len() != m || matrix.iter().any(|row| row.len() != m) {
            return Err(MapError::BadShape(m));
        }
        let orders = ring.orders();
        let matrix: Vec<Vec<u32>> = matrix
            .iter()
            .enumerate()
            .map(|(s, row)| row.iter().map(|&x| x % orders[s]).collect())
            .collect();
        for t in 0..m {
            for s in 0..m {
                if !(orders[t] as u64 * matrix[s][t] as u64).is_multiple_of(orders[s] as u64) {
                    return Err(MapError::NotAdditiveWellDefined(t));
                }
            }
        }
        let images: Vec<Elem> = ring
            .elements()
            .map(|a| {
                let v = ring.coords(a);
                let out: Vec<u32> = (0..m)
                    .map(|s| {
                        let acc: u64 = (0..m).map(|t| matrix[s][t] as u64 * v[t] as u64).sum();
                        (acc % orders[s] as u64) as u32
                    })
                    .collect();
                ring.from_coords(&out).expect("rank checked")
            })
            .collect();
        let distinct: HashSet<Elem> = images.iter().copied().collect();
        let injective = distinct.len() == images.len();
        Ok(RingMap { ring: ring.clone(), matrix, kind, images: images.into(), injective })
    }

    /// A verified endomorphism. Non-injective endomorphisms are accepted and
    /// flagged; presentations reject them later.
    pub fn endomorphism(ring: &FiniteRing, matrix: Vec<Vec<u32>>) -> Result<Self, MapError> {
        let map = Self::from_matrix(ring, matrix, MapKind::Endomorphism)?;
        let gens = ring.generators();
        for (i, &a) in gens.iter().enumerate() {
            for (j, &b) in gens.iter().enumerate() {
                if map.apply(ring.mul(a, b)) != ring.mul(map.apply(a), map.apply(b)) {
                    return Err(MapError::NotMultiplicative(i, j));
                }
            }
        }
        if map.apply(ring.one()) != ring.one() {
            return Err(MapError::DoesNotFixOne);
        }
        Ok(map)
    }

    /// A verified σ-derivation: `δ(ab) = σ(a)δ(b) + δ(a)b` and `δ(1) = 0`.
    pub fn sigma_derivation(
        ring: &FiniteRing,
        sigma: &RingMap,
        matrix: Vec<Vec<u32>>,
    ) -> Result<Self, MapError> {
        if sigma.kind != MapKind::Endomorphism {
            return Err(MapError::PartnerNotEndomorphism);
        }
        if &sigma.ring != ring {
            return Err(MapError::RingMismatch);
        }
        let map = Self::from_matrix(
            ring,
            matrix,
            MapKind::SigmaDerivation { partner: Box::new(sigma.clone()) },
        )?;
        let gens = ring.generators();
        for (i, &a) in gens.iter().enumerate() {
            for (j, &b) in gens.iter().enumerate() {
                let lhs = map.apply(ring.mul(a, b));
                let rhs = ring.add(ring.mul(sigma.apply(a), map.apply(b)), ring.mul(map.apply(a), b));
                if lhs != rhs {
                    return Err(MapError::LeibnizFails(i, j));
                }
            }
        }
        if map.apply(ring.one()) != ring.zero() {
            return Err(MapError::DeltaOneNonzero);
        }
        Ok(map)
    }

    pub fn identity(ring: &FiniteRing) -> Self {
        let m = ring.rank();
        let matrix = (0..m).map(|s| (0..m).map(|t| u32::from(s == t)).collect()).collect();
        Self::endomorphism(ring, matrix).expect("identity is an endomorphism")
    }

    pub fn zero_derivation(ring: &FiniteRing, sigma: &RingMap) -> Self {
        let m = ring.rank();
        Self::sigma_derivation(ring, sigma, vec![vec![0; m]; m]).expect("zero map is a σ-derivation")
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn matrix(&self) -> &[Vec<u32>] {
        &self.matrix
    }

    pub fn kind(&self) -> &MapKind {
        &self.kind
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            MapKind::Endomorphism => "endomorphism",
            MapKind::SigmaDerivation { .. } => "derivation",
            MapKind::Composite => "composite",
        }
    }

    pub fn partner(&self) -> Option<&RingMap> {
        match &self.kind {
            MapKind::SigmaDerivation { partner } => Some(partner),
            _ => None,
        }
    }

    /// On a finite carrier injective, surjective and bijective coincide.
    pub fn is_injective(&self) -> bool {
        self.injective
    }

    pub fn is_surjective(&self) -> bool {
        let image: HashSet<Elem> = self.images.iter().copied().collect();
        image.len() == self.ring.size()
    }

    pub fn apply(&self, a: Elem) -> Elem {
        self.images[a.index()]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, e)| e.index() == i)
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|&e| e == self.ring.zero())
    }

    /// Same underlying function (kinds may differ).
    pub fn same_function(&self, other: &RingMap) -> bool {
        self.images == other.images
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &RingMap) -> RingMap {
        let m = self.ring.rank();
        let orders = self.ring.orders();
        let matrix: Vec<Vec<u32>> = (0..m)
            .map(|s| {
                (0..m)
                    .map(|t| {
                        let acc: u64 =
                            (0..m).map(|u| self.matrix[s][u] as u64 * other.matrix[u][t] as u64).sum();
                        (acc % orders[s] as u64) as u32
                    })
                    .collect()
            })
            .collect();
        let kind = if self.kind == MapKind::Endomorphism && other.kind == MapKind::Endomorphism {
            MapKind::Endomorphism
        } else {
            MapKind::Composite
        };
        let images: Vec<Elem> = self.ring.elements().map(|a| self.apply(other.apply(a))).collect();
        let distinct: HashSet<Elem> = images.iter().copied().collect();
        RingMap {
            ring: self.ring.clone(),
            matrix,
            kind,
            injective: distinct.len() == images.len(),
            images: images.into(),
        }
    }
}

/// A composite map together with the word of generator indices it came
/// from; `word = [i, j]` means `f_i ∘ f_j`. The empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordMap {
    pub word: Vec<usize>,
    pub map: RingMap,
}

/// Default word-length cap for δ-compositions.
pub const DEFAULT_DELTA_WORD_CAP: usize = 4;

/// `(Σ, Δ)` together with the monoid generated by `Σ` and the bounded set
/// of δ-words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaSystem {
    ring: FiniteRing,
    sigmas: Vec<RingMap>,
    deltas: Vec<RingMap>,
    closure: Vec<WordMap>,
    delta_words: Vec<WordMap>,
    word_cap: usize,
}

impl SigmaSystem {
    pub fn new(
        ring: &FiniteRing,
        sigmas: Vec<RingMap>,
        deltas: Vec<RingMap>,
        word_cap: usize,
    ) -> Result<Self, MapError> {
        if sigmas.len() != deltas.len() {
            return Err(MapError::System {
                index: sigmas.len().min(deltas.len()),
                reason: "Σ and Δ must have the same length".into(),
            });
        }
        for (i, (s, d)) in sigmas.iter().zip(&deltas).enumerate() {
            if s.ring() != ring || d.ring() != ring {
                return Err(MapError::RingMismatch);
            }
            if s.kind() != &MapKind::Endomorphism {
                return Err(MapError::System { index: i, reason: "σ must be an endomorphism".into() });
            }
            match d.partner() {
                Some(p) if p.same_function(s) => {}
                _ => {
                    return Err(MapError::System {
                        index: i,
                        reason: "δ must be a σ-derivation for the matching σ".into(),
                    })
                }
            }
        }
        let closure = sigma_closure(ring, &sigmas);
        let delta_words = delta_words(&deltas, word_cap);
        Ok(SigmaSystem { ring: ring.clone(), sigmas, deltas, closure, delta_words, word_cap })
    }

    /// `n` identity endomorphisms with zero derivations.
    pub fn trivial(ring: &FiniteRing, n: usize) -> Self {
        let id = RingMap::identity(ring);
        let zero = RingMap::zero_derivation(ring, &id);
        Self::new(ring, vec![id; n], vec![zero; n], DEFAULT_DELTA_WORD_CAP).expect("trivial system")
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.sigmas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigmas.is_empty()
    }

    pub fn sigmas(&self) -> &[RingMap] {
        &self.sigmas
    }

    pub fn deltas(&self) -> &[RingMap] {
        &self.deltas
    }

    /// The monoid generated by `Σ` under composition (includes identity).
    pub fn closure(&self) -> &[WordMap] {
        &self.closure
    }

    pub fn delta_words(&self) -> &[WordMap] {
        &self.delta_words
    }

    pub fn word_cap(&self) -> usize {
        self.word_cap
    }

    /// True when some δ is nonzero, i.e. δ-quantified checks are bounded.
    pub fn has_nonzero_delta(&self) -> bool {
        self.deltas.iter().any(|d| !d.is_zero())
    }

    /// `σ^α = σ_1^{α_1} ∘ ... ∘ σ_n^{α_n}` applied to `a`.
    pub fn sigma_power(&self, alpha: &[u32], a: Elem) -> Elem {
        let mut x = a;
        for (i, &k) in alpha.iter().enumerate().rev() {
            for _ in 0..k {
                x = self.sigmas[i].apply(x);
            }
        }
        x
    }
}

/// Fixpoint closure of `{id} ∪ Σ` under composition. Terminates because a
/// finite set has finitely many self-maps.
pub fn sigma_closure(ring: &FiniteRing, sigmas: &[RingMap]) -> Vec<WordMap> {
    let mut out = vec![WordMap { word: vec![], map: RingMap::identity(ring) }];
    let mut seen: HashSet<Arc<[Elem]>> = HashSet::new();
    seen.insert(out[0].map.images.clone());
    let mut frontier = 0;
    while frontier < out.len() {
        let current = out[frontier].clone();
        frontier += 1;
        for (i, s) in sigmas.iter().enumerate() {
            let next = s.compose(&current.map);
            if seen.insert(next.images.clone()) {
                let mut word = vec![i];
                word.extend(&current.word);
                out.push(WordMap { word, map: next });
            }
        }
    }
    out
}

/// Distinct maps `δ^β = δ_1^{β_1} ∘ ... ∘ δ_n^{β_n}` with `1 <= |β| <= cap`.
/// The word records the factors left to right.
pub fn delta_words(deltas: &[RingMap], cap: usize) -> Vec<WordMap> {
    let mut out: Vec<WordMap> = Vec::new();
    let mut seen: HashSet<Arc<[Elem]>> = HashSet::new();
    // Build words whose factor indices are non-decreasing from the left.
    let mut layer: Vec<WordMap> = deltas
        .iter()
        .enumerate()
        .map(|(i, d)| WordMap { word: vec![i], map: d.clone() })
        .collect();
    for _ in 0..cap {
        let mut next_layer = Vec::new();
        for wm in layer {
            let last = *wm.word.last().expect("non-empty word");
            for (i, d) in deltas.iter().enumerate().skip(last) {
                let mut word = wm.word.clone();
                word.push(i);
                next_layer.push(WordMap { word, map: wm.map.compose(d) });
            }
            if seen.insert(wm.map.images.clone()) {
                out.push(wm);
            }
        }
        layer = next_layer;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::rings;

    #[test]
    fn identity_is_only_endomorphism_of_z4() {
        let r = rings::zn(4).unwrap();
        assert!(RingMap::endomorphism(&r, vec![vec![1]]).unwrap().is_identity());
        assert_eq!(RingMap::endomorphism(&r, vec![vec![3]]).unwrap_err(), MapError::NotMultiplicative(0, 0));
        assert_eq!(RingMap::endomorphism(&r, vec![vec![2]]).unwrap_err(), MapError::NotMultiplicative(0, 0));
    }

    #[test]
    fn swap_is_an_automorphism() {
        let r = rings::product(&rings::zn(2).unwrap(), &rings::zn(2).unwrap()).unwrap();
        let swap = RingMap::endomorphism(&r, vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert!(swap.is_injective() && swap.is_surjective());
        let sys = SigmaSystem::new(&r, vec![swap.clone()], vec![RingMap::zero_derivation(&r, &swap)], 4).unwrap();
        assert_eq!(sys.closure().len(), 2);
    }

    #[test]
    fn frobenius_on_gf4() {
        let r = rings::gf4().unwrap();
        // 1 -> 1, w -> w^2 = w + 1
        let frob = RingMap::endomorphism(&r, vec![vec![1, 1], vec![0, 1]]).unwrap();
        // Brute-force multiplicativity on all 16 pairs.
        for a in r.elements() {
            for b in r.elements() {
                assert_eq!(frob.apply(r.mul(a, b)), r.mul(frob.apply(a), frob.apply(b)));
            }
            assert_eq!(frob.apply(a), r.mul(a, a));
        }
        let closure = sigma_closure(&r, std::slice::from_ref(&frob));
        assert_eq!(closure.len(), 2);
        assert!(frob.compose(&frob).is_identity());
    }

    #[test]
    fn derivations_of_dual_numbers() {
        let r = rings::trunc_poly(2, 2).unwrap();
        let id = RingMap::identity(&r);
        // d/dy: 1 -> 0, y -> 1
        let d = RingMap::sigma_derivation(&r, &id, vec![vec![0, 1], vec![0, 0]]).unwrap();
        let y = r.elem(&[0, 1]).unwrap();
        assert_eq!(d.apply(y), r.one());
        // y d/dy: y -> y
        let e = RingMap::sigma_derivation(&r, &id, vec![vec![0, 0], vec![0, 1]]).unwrap();
        assert_eq!(e.apply(y), y);
        assert!(RingMap::zero_derivation(&r, &id).is_zero());
        // 1 -> 1 violates δ(1) = 0 via Leibniz on (1, 1).
        assert!(RingMap::sigma_derivation(&r, &id, vec![vec![1, 0], vec![0, 0]]).is_err());
    }

    #[test]
    fn leibniz_failure_is_reported() {
        let r = rings::trunc_poly(3, 3).unwrap();
        let id = RingMap::identity(&r);
        // y -> 1, y^2 -> 0: δ(y^2) = 0 but y δ(y) + δ(y) y = 2y.
        let err = RingMap::sigma_derivation(&r, &id, vec![vec![0, 1, 0], vec![0, 0, 0], vec![0, 0, 0]]);
        assert_eq!(err.unwrap_err(), MapError::LeibnizFails(1, 1));
        // The genuine d/dy: y -> 1, y^2 -> 2y.
        let d = RingMap::sigma_derivation(&r, &id, vec![vec![0, 1, 0], vec![0, 0, 2], vec![0, 0, 0]]);
        assert!(d.is_ok());
    }

    #[test]
    fn ill_defined_matrix_is_rejected() {
        // Z2 x Z4: sending the Z2 generator to the Z4 generator is not additive.
        let r = rings::product(&rings::zn(2).unwrap(), &rings::zn(4).unwrap()).unwrap();
        let err = RingMap::endomorphism(&r, vec![vec![0, 0], vec![1, 1]]).unwrap_err();
        assert_eq!(err, MapError::NotAdditiveWellDefined(0));
    }

    #[test]
    fn closure_is_idempotent() {
        let r = rings::product(&rings::zn(2).unwrap(), &rings::zn(2).unwrap()).unwrap();
        let swap = RingMap::endomorphism(&r, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let once = sigma_closure(&r, &[swap]);
        let maps: Vec<RingMap> = once.iter().map(|w| w.map.clone()).collect();
        let twice = sigma_closure(&r, &maps);
        assert_eq!(once.len(), twice.len());
    }
}
