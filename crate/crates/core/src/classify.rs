//! Exhaustive classification of a finite ring against the usual
//! NI-adjacent predicates.

use crate::radical::{self, ElemSet, Ideal};
use crate::ring::{Elem, FiniteRing, RingError};

/// Why the nilpotent set fails to be an ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NiWitness {
    /// `a`, `b` nilpotent but `a + b` is not.
    Sum(Elem, Elem),
    /// `a` nilpotent but `r a` is not.
    LeftProduct(Elem, Elem),
    /// `a` nilpotent but `a r` is not.
    RightProduct(Elem, Elem),
}

#[derive(Debug, Clone)]
pub struct RingProfile {
    pub ni: bool,
    pub nj: bool,
    pub two_primal: bool,
    pub weakly_two_primal: bool,
    pub reduced: bool,
    pub domain: bool,
    pub symmetric: bool,
    pub reversible: bool,
    pub semicommutative: bool,
    pub right_duo: bool,
    pub left_duo: bool,
    pub abelian: bool,
    pub dedekind_finite: bool,
    /// Always true: every finite subset of a finite ring generates a finite
    /// multiplicative semigroup.
    pub locally_finite: bool,
    pub nilpotents: ElemSet,
    pub prime_radical: Ideal,
    pub levitzki_radical: Ideal,
    pub upper_nilradical: Ideal,
    pub jacobson_radical: Ideal,
    pub ni_witness: Option<NiWitness>,
}

/// First witness (in element order) that `N(R)` is not an ideal.
pub fn ni_witness(ring: &FiniteRing, nil: &ElemSet) -> Option<NiWitness> {
    for &a in nil {
        for &b in nil {
            if !nil.contains(&ring.add(a, b)) {
                return Some(NiWitness::Sum(a, b));
            }
        }
    }
    for &a in nil {
        for r in ring.elements() {
            if !nil.contains(&ring.mul(r, a)) {
                return Some(NiWitness::LeftProduct(r, a));
            }
            if !nil.contains(&ring.mul(a, r)) {
                return Some(NiWitness::RightProduct(a, r));
            }
        }
    }
    None
}

pub fn classify_ring(ring: &FiniteRing, cap: usize) -> Result<RingProfile, RingError> {
    let nilpotents = radical::nilpotent_set(ring);
    let prime_radical = radical::prime_radical(ring, cap)?;
    let levitzki_radical = radical::levitzki_radical(ring, cap)?;
    let upper_nilradical = radical::upper_nilradical(ring, cap)?;
    let jacobson_radical = radical::jacobson_radical(ring)?;

    let zero = ring.zero();
    let one = ring.one();
    let elems: Vec<Elem> = ring.elements().collect();
    let mul = |a, b| ring.mul(a, b);

    let ni_witness = ni_witness(ring, &nilpotents);
    let reduced = nilpotents.len() == 1;
    let domain = elems
        .iter()
        .all(|&a| elems.iter().all(|&b| mul(a, b) != zero || a == zero || b == zero));
    let symmetric = elems.iter().all(|&r| {
        elems.iter().all(|&s| {
            let rs = mul(r, s);
            elems.iter().all(|&t| mul(rs, t) != zero || mul(mul(r, t), s) == zero)
        })
    });
    let reversible =
        elems.iter().all(|&a| elems.iter().all(|&b| mul(a, b) != zero || mul(b, a) == zero));
    let semicommutative = elems.iter().all(|&a| {
        elems
            .iter()
            .all(|&b| mul(a, b) != zero || elems.iter().all(|&r| mul(mul(a, r), b) == zero))
    });
    // Every one-sided ideal is a finite sum of principal ones, so checking
    // `R a ⊆ a R` (resp. `a R ⊆ R a`) for every `a` suffices.
    let right_duo = elems.iter().all(|&a| {
        let a_r: ElemSet = elems.iter().map(|&r| mul(a, r)).collect();
        elems.iter().all(|&r| a_r.contains(&mul(r, a)))
    });
    let left_duo = elems.iter().all(|&a| {
        let r_a: ElemSet = elems.iter().map(|&r| mul(r, a)).collect();
        elems.iter().all(|&r| r_a.contains(&mul(a, r)))
    });
    let abelian = elems
        .iter()
        .filter(|&&e| mul(e, e) == e)
        .all(|&e| elems.iter().all(|&r| mul(e, r) == mul(r, e)));
    let dedekind_finite =
        elems.iter().all(|&a| elems.iter().all(|&b| mul(a, b) != one || mul(b, a) == one));

    Ok(RingProfile {
        ni: ni_witness.is_none(),
        nj: &nilpotents == jacobson_radical.carrier(),
        two_primal: &nilpotents == prime_radical.carrier(),
        weakly_two_primal: &nilpotents == levitzki_radical.carrier(),
        reduced,
        domain,
        symmetric,
        reversible,
        semicommutative,
        right_duo,
        left_duo,
        abelian,
        dedekind_finite,
        locally_finite: true,
        nilpotents,
        prime_radical,
        levitzki_radical,
        upper_nilradical,
        jacobson_radical,
        ni_witness,
    })
}

impl RingProfile {
    /// Named flags in a fixed order, for reports.
    pub fn flags(&self) -> Vec<(&'static str, bool)> {
        vec![
            ("NI", self.ni),
            ("NJ", self.nj),
            ("two_primal", self.two_primal),
            ("weakly_two_primal", self.weakly_two_primal),
            ("reduced", self.reduced),
            ("domain", self.domain),
            ("symmetric", self.symmetric),
            ("reversible", self.reversible),
            ("semicommutative", self.semicommutative),
            ("right_duo", self.right_duo),
            ("left_duo", self.left_duo),
            ("abelian", self.abelian),
            ("dedekind_finite", self.dedekind_finite),
            ("locally_finite", self.locally_finite),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::rings;

    #[test]
    fn full_matrix_ring_is_not_ni() {
        let r = rings::matrix_full(2).unwrap();
        let p = classify_ring(&r, 256).unwrap();
        assert!(!p.ni);
        let e12 = r.elem(&[0, 1, 0, 0]).unwrap();
        let e21 = r.elem(&[0, 0, 1, 0]).unwrap();
        assert!(p.nilpotents.contains(&e12) && p.nilpotents.contains(&e21));
        let s = r.add(e12, e21);
        assert_eq!(r.mul(s, s), r.one());
        assert!(!p.dedekind_finite || !p.ni);
        assert!(p.ni_witness.is_some());
    }

    #[test]
    fn upper_triangular_is_ni_and_nj() {
        let r = rings::matrix_upper(2).unwrap();
        let p = classify_ring(&r, 256).unwrap();
        assert!(p.ni && p.nj);
        assert_eq!(p.nilpotents.len(), 2);
        assert!(!p.reduced && !p.abelian);
    }

    #[test]
    fn z4_profile() {
        let r = rings::zn(4).unwrap();
        let p = classify_ring(&r, 256).unwrap();
        assert!(!p.reduced);
        assert!(p.ni && p.nj && p.two_primal && p.weakly_two_primal);
        assert!(p.symmetric && p.reversible && p.semicommutative && p.right_duo && p.left_duo);
        assert!(p.abelian && p.dedekind_finite && !p.domain);
    }

    #[test]
    fn field_profile() {
        let r = rings::gf4().unwrap();
        let p = classify_ring(&r, 256).unwrap();
        assert!(p.domain && p.reduced && p.ni && p.nj);
    }
}
