//! Two-sided ideals of a finite ring and the classical radicals.
//!
//! Four of the radicals are computed by different routes on purpose:
//! the Jacobson radical by invertibility search, the prime radical by
//! enumerating prime ideals, the upper nilradical as the sum of nil ideals,
//! and the Levitzki radical as the upper nilradical plus an explicit
//! nilpotence certificate. For finite rings all four coincide, which the
//! tests exploit as a cross-check.

use std::collections::{BTreeSet, HashSet};

use crate::ring::{Elem, FiniteRing, RingError};

pub type ElemSet = BTreeSet<Elem>;

/// Default ceiling on `|R|` for computations that enumerate all ideals.
pub const DEFAULT_IDEAL_CAP: usize = 256;

/// A verified two-sided ideal with an explicit carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    ring: FiniteRing,
    carrier: ElemSet,
    generators: Option<Vec<Elem>>,
}

impl Ideal {
    /// Wraps an explicit set after checking the ideal axioms.
    pub fn from_carrier(ring: &FiniteRing, carrier: ElemSet) -> Result<Self, RingError> {
        if carrier.iter().any(|&a| !ring.contains(a)) {
            return Err(RingError::RingMismatch);
        }
        if !is_ideal(ring, &carrier) {
            return Err(RingError::InvariantBroken("set is not a two-sided ideal".into()));
        }
        Ok(Ideal { ring: ring.clone(), carrier, generators: None })
    }

    fn from_mask(ring: &FiniteRing, mask: &[bool]) -> Self {
        let carrier = mask_to_set(mask);
        Ideal { ring: ring.clone(), carrier, generators: None }
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn carrier(&self) -> &ElemSet {
        &self.carrier
    }

    pub fn generators(&self) -> Option<&[Elem]> {
        self.generators.as_deref()
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.carrier.contains(&a)
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_zero(&self) -> bool {
        self.carrier.len() == 1
    }

    pub fn is_proper(&self) -> bool {
        !self.contains(self.ring.one())
    }

    pub fn is_nil(&self) -> bool {
        self.carrier.iter().all(|&a| self.ring.is_nilpotent(a))
    }
}

/// Closure checks for a two-sided ideal: contains 0, closed under `+` and
/// negation, absorbs multiplication from both sides.
pub fn is_ideal(ring: &FiniteRing, set: &ElemSet) -> bool {
    if !set.contains(&ring.zero()) {
        return false;
    }
    for &a in set {
        if !set.contains(&ring.neg(a)) {
            return false;
        }
        for &b in set {
            if !set.contains(&ring.add(a, b)) {
                return false;
            }
        }
        for r in ring.elements() {
            if !set.contains(&ring.mul(r, a)) || !set.contains(&ring.mul(a, r)) {
                return false;
            }
        }
    }
    true
}

fn mask_to_set(mask: &[bool]) -> ElemSet {
    mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| Elem(i as u32)).collect()
}

/// Additive subgroup generated by `gens`, as a membership mask.
fn additive_span(ring: &FiniteRing, gens: &[Elem]) -> Vec<bool> {
    let mut mask = vec![false; ring.size()];
    let mut queue = vec![ring.zero()];
    mask[0] = true;
    let gens: Vec<Elem> = {
        let mut g: Vec<Elem> = gens.iter().copied().filter(|&g| g != ring.zero()).collect();
        g.sort();
        g.dedup();
        g
    };
    while let Some(x) = queue.pop() {
        for &g in &gens {
            let y = ring.add(x, g);
            if !mask[y.index()] {
                mask[y.index()] = true;
                queue.push(y);
            }
        }
    }
    mask
}

fn principal_mask(ring: &FiniteRing, a: Elem) -> Vec<bool> {
    let mut products = Vec::with_capacity(ring.size());
    let mut seen = vec![false; ring.size()];
    for r in ring.elements() {
        let ra = ring.mul(r, a);
        for t in ring.elements() {
            let x = ring.mul(ra, t);
            if !seen[x.index()] {
                seen[x.index()] = true;
                products.push(x);
            }
        }
    }
    additive_span(ring, &products)
}

/// Smallest two-sided ideal containing `gens`: the additive span of all
/// `r s t` with `s` in `gens`.
pub fn ideal_generated_by(ring: &FiniteRing, gens: &[Elem]) -> Result<Ideal, RingError> {
    if gens.iter().any(|&g| !ring.contains(g)) {
        return Err(RingError::RingMismatch);
    }
    let mut mask = vec![false; ring.size()];
    mask[0] = true;
    for &g in gens {
        if mask[g.index()] && g != ring.zero() {
            continue;
        }
        let p = principal_mask(ring, g);
        let union: Vec<Elem> =
            mask_to_set(&mask).into_iter().chain(mask_to_set(&p)).collect();
        mask = additive_span(ring, &union);
    }
    let mut ideal = Ideal::from_mask(ring, &mask);
    ideal.generators = Some(gens.to_vec());
    Ok(ideal)
}

fn check_cap(ring: &FiniteRing, cap: usize) -> Result<(), RingError> {
    if ring.size() > cap {
        Err(RingError::TooLarge { size: ring.size(), cap })
    } else {
        Ok(())
    }
}

/// All two-sided ideals, found by closing the principal ideals under sums.
/// Sorted by size, then by carrier.
pub fn enumerate_ideals(ring: &FiniteRing, cap: usize) -> Result<Vec<Ideal>, RingError> {
    check_cap(ring, cap)?;
    let mut found: HashSet<Vec<bool>> = HashSet::new();
    let mut all: Vec<Vec<bool>> = Vec::new();
    for a in ring.elements() {
        let p = principal_mask(ring, a);
        if found.insert(p.clone()) {
            all.push(p);
        }
    }
    let mut start = 0;
    loop {
        let end = all.len();
        let mut fresh = Vec::new();
        for i in 0..end {
            for j in start.max(i + 1)..end {
                let union: Vec<Elem> = mask_to_set(&all[i])
                    .into_iter()
                    .chain(mask_to_set(&all[j]))
                    .collect();
                let s = additive_span(ring, &union);
                if found.insert(s.clone()) {
                    fresh.push(s);
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        start = end;
        all.extend(fresh);
    }
    let mut ideals: Vec<Ideal> = all.iter().map(|m| Ideal::from_mask(ring, m)).collect();
    ideals.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.carrier.cmp(&b.carrier)));
    Ok(ideals)
}

/// `P` is prime when it is proper and `a R b` is not inside `P` for any
/// `a, b` outside `P`.
pub fn is_prime(ideal: &Ideal) -> bool {
    let ring = ideal.ring();
    if !ideal.is_proper() {
        return false;
    }
    let outside: Vec<Elem> = ring.elements().filter(|a| !ideal.contains(*a)).collect();
    outside.iter().all(|&a| {
        outside.iter().all(|&b| ring.elements().any(|r| !ideal.contains(ring.mul(ring.mul(a, r), b))))
    })
}

/// The set of nilpotent elements `N(R)`.
pub fn nilpotent_set(ring: &FiniteRing) -> ElemSet {
    ring.elements().filter(|&a| ring.is_nilpotent(a)).collect()
}

/// `J(R) = { r : 1 - s r is a unit for every s }`.
pub fn jacobson_radical(ring: &FiniteRing) -> Result<Ideal, RingError> {
    let one = ring.one();
    let carrier: ElemSet = ring
        .elements()
        .filter(|&r| ring.elements().all(|s| ring.is_unit(ring.sub(one, ring.mul(s, r)))))
        .collect();
    Ideal::from_carrier(ring, carrier)
}

/// Intersection of all prime ideals.
pub fn prime_radical(ring: &FiniteRing, cap: usize) -> Result<Ideal, RingError> {
    let ideals = enumerate_ideals(ring, cap)?;
    let primes: Vec<&Ideal> = ideals.iter().filter(|i| is_prime(i)).collect();
    if primes.is_empty() {
        return Err(RingError::InvariantBroken("finite ring without prime ideals".into()));
    }
    let carrier: ElemSet = ring.elements().filter(|&a| primes.iter().all(|p| p.contains(a))).collect();
    Ideal::from_carrier(ring, carrier)
}

/// Sum of all nil ideals.
pub fn upper_nilradical(ring: &FiniteRing, cap: usize) -> Result<Ideal, RingError> {
    let ideals = enumerate_ideals(ring, cap)?;
    let gens: Vec<Elem> =
        ideals.iter().filter(|i| i.is_nil()).flat_map(|i| i.carrier().iter().copied()).collect();
    let mask = additive_span(ring, &gens);
    let ideal = Ideal::from_mask(ring, &mask);
    if !ideal.is_nil() {
        return Err(RingError::InvariantBroken("sum of nil ideals is not nil".into()));
    }
    Ok(ideal)
}

/// Additive span of all products `a b` with `a` in `left`, `b` in `right`.
pub fn ideal_product(ring: &FiniteRing, left: &ElemSet, right: &ElemSet) -> ElemSet {
    let products: Vec<Elem> =
        left.iter().flat_map(|&a| right.iter().map(move |&b| ring.mul(a, b))).collect();
    mask_to_set(&additive_span(ring, &products))
}

/// Least `k` with `I^k = 0`, or `None` when the power chain stabilises at a
/// nonzero ideal.
pub fn nilpotency_class(ring: &FiniteRing, ideal: &ElemSet) -> Option<usize> {
    let zero: ElemSet = [ring.zero()].into_iter().collect();
    let mut power = ideal.clone();
    let mut k = 1;
    loop {
        if power == zero {
            return Some(k);
        }
        let next = ideal_product(ring, &power, ideal);
        if next == power {
            return None;
        }
        power = next;
        k += 1;
    }
}

/// Sum of all locally nilpotent ideals. In a finite ring nil ideals are
/// nilpotent, so this is the upper nilradical; the result is certified by
/// exhibiting `I^k = 0`, which makes every finite subset generate a
/// nilpotent semigroup.
pub fn levitzki_radical(ring: &FiniteRing, cap: usize) -> Result<Ideal, RingError> {
    let ideal = upper_nilradical(ring, cap)?;
    if nilpotency_class(ring, ideal.carrier()).is_none() {
        return Err(RingError::InvariantBroken("nil ideal is not nilpotent".into()));
    }
    Ok(ideal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::rings;

    fn set(r: &FiniteRing, coords: &[&[u32]]) -> ElemSet {
        coords.iter().map(|c| r.elem(c).unwrap()).collect()
    }

    #[test]
    fn z4_radicals() {
        let r = rings::zn(4).unwrap();
        let expected = set(&r, &[&[0], &[2]]);
        assert_eq!(nilpotent_set(&r), expected);
        assert_eq!(jacobson_radical(&r).unwrap().carrier(), &expected);
        assert_eq!(prime_radical(&r, 256).unwrap().carrier(), &expected);
        assert_eq!(upper_nilradical(&r, 256).unwrap().carrier(), &expected);
        assert_eq!(levitzki_radical(&r, 256).unwrap().carrier(), &expected);
        assert_eq!(enumerate_ideals(&r, 256).unwrap().len(), 3);
    }

    #[test]
    fn product_of_fields_is_semisimple() {
        let r = rings::product(&rings::zn(2).unwrap(), &rings::zn(2).unwrap()).unwrap();
        let zero = set(&r, &[&[0, 0]]);
        assert_eq!(nilpotent_set(&r), zero);
        assert_eq!(jacobson_radical(&r).unwrap().carrier(), &zero);
        assert_eq!(prime_radical(&r, 256).unwrap().carrier(), &zero);
        let primes: Vec<Ideal> =
            enumerate_ideals(&r, 256).unwrap().into_iter().filter(is_prime).collect();
        assert_eq!(primes.len(), 2);
    }

    #[test]
    fn field_has_zero_radicals() {
        let r = rings::zn(5).unwrap();
        let zero: ElemSet = [r.zero()].into_iter().collect();
        assert_eq!(prime_radical(&r, 256).unwrap().carrier(), &zero);
        assert_eq!(levitzki_radical(&r, 256).unwrap().carrier(), &zero);
    }

    #[test]
    fn upper_triangular_radical_is_strictly_upper() {
        let r = rings::matrix_upper(2).unwrap();
        // generators e11, e12, e22
        let expected = set(&r, &[&[0, 0, 0], &[0, 1, 0]]);
        assert_eq!(jacobson_radical(&r).unwrap().carrier(), &expected);
        assert_eq!(upper_nilradical(&r, 256).unwrap().carrier(), &expected);
        assert_eq!(levitzki_radical(&r, 256).unwrap().carrier(), &expected);
    }

    #[test]
    fn full_matrix_ring_is_simple() {
        let r = rings::matrix_full(2).unwrap();
        assert_eq!(r.size(), 16);
        let zero: ElemSet = [r.zero()].into_iter().collect();
        assert_eq!(upper_nilradical(&r, 256).unwrap().carrier(), &zero);
        assert_eq!(enumerate_ideals(&r, 256).unwrap().len(), 2);
        let e12 = r.elem(&[0, 1, 0, 0]).unwrap();
        assert_eq!(ideal_generated_by(&r, &[e12]).unwrap().len(), 16);
    }

    #[test]
    fn generated_ideals() {
        let r = rings::zn(4).unwrap();
        let two = r.elem(&[2]).unwrap();
        assert_eq!(ideal_generated_by(&r, &[two]).unwrap().carrier(), &set(&r, &[&[0], &[2]]));
        assert_eq!(ideal_generated_by(&r, &[]).unwrap().carrier(), &set(&r, &[&[0]]));
        assert_eq!(ideal_generated_by(&r, &[Elem(40)]), Err(RingError::RingMismatch));
    }

    #[test]
    fn cap_is_enforced() {
        let r = rings::zn(4).unwrap();
        assert_eq!(
            prime_radical(&r, 3).unwrap_err(),
            RingError::TooLarge { size: 4, cap: 3 }
        );
    }

    #[test]
    fn from_carrier_rejects_non_ideals() {
        let r = rings::zn(4).unwrap();
        assert!(Ideal::from_carrier(&r, set(&r, &[&[0], &[1]])).is_err());
    }
}
