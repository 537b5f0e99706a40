mod common;

use common::{as_int_map, commutative_mul, random_poly};
use pbw_core::corpus;
use pbw_core::ring::Elem;
use pbw_core::{parse_poly, Extension, SkewPoly};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn verified() -> Vec<(String, Extension)> {
    corpus::all()
        .unwrap()
        .into_iter()
        .filter_map(|e| e.extension.filter(|x| x.is_verified()).map(|x| (e.name, x)))
        .collect()
}

#[test]
fn associativity_and_distributivity() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for (name, ext) in verified() {
        for _ in 0..1000 {
            let f = random_poly(&ext, &mut rng, 3, 3);
            let g = random_poly(&ext, &mut rng, 3, 3);
            let h = random_poly(&ext, &mut rng, 3, 3);
            let fg = ext.mul(&f, &g).unwrap();
            let gh = ext.mul(&g, &h).unwrap();
            assert_eq!(ext.mul(&fg, &h).unwrap(), ext.mul(&f, &gh).unwrap(), "{name}: ({f:?} {g:?}) {h:?}");
            let left = ext.mul(&f, &ext.add(&g, &h)).unwrap();
            assert_eq!(left, ext.add(&fg, &ext.mul(&f, &h).unwrap()), "{name}");
            let right = ext.mul(&ext.add(&f, &g), &h).unwrap();
            assert_eq!(right, ext.add(&ext.mul(&f, &h).unwrap(), &gh), "{name}");
        }
    }
}

#[test]
fn defining_relations_hold() {
    for (name, ext) in verified() {
        let ring = ext.base();
        let sys = ext.system();
        for i in 0..ext.n() {
            let x = ext.var(i);
            for r in ring.elements() {
                let lhs = ext.mul(&x, &ext.constant(r)).unwrap();
                let sx = ext.mul(&ext.constant(sys.sigmas()[i].apply(r)), &x).unwrap();
                let rhs = ext.add(&sx, &ext.constant(sys.deltas()[i].apply(r)));
                assert_eq!(lhs, rhs, "{name}: x{} r", i + 1);
            }
        }
        for (&(i, j), rel) in ext.relations() {
            let lhs = ext.mul(&ext.var(j), &ext.var(i)).unwrap();
            let mut rhs = ext.mul(&ext.constant(rel.d), &ext.mul(&ext.var(i), &ext.var(j)).unwrap()).unwrap();
            rhs = ext.add(&rhs, &ext.constant(rel.constant));
            for (k, &c) in rel.linear.iter().enumerate() {
                rhs = ext.add(&rhs, &ext.mul(&ext.constant(c), &ext.var(k)).unwrap());
            }
            assert_eq!(lhs, rhs, "{name}: x{} x{}", j + 1, i + 1);
        }
    }
}

#[test]
fn commutative_oracle() {
    let ext = corpus::by_name("Z4[x,y]").unwrap().extension.unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..2000 {
        let f = random_poly(&ext, &mut rng, 4, 4);
        let g = random_poly(&ext, &mut rng, 4, 4);
        let got = as_int_map(&ext, &ext.mul(&f, &g).unwrap());
        let want = commutative_mul(4, &as_int_map(&ext, &f), &as_int_map(&ext, &g));
        assert_eq!(got, want);
    }
}

#[test]
fn identity_and_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (_, ext) in verified() {
        for _ in 0..50 {
            let f = random_poly(&ext, &mut rng, 3, 4);
            assert_eq!(ext.mul(&ext.one(), &f).unwrap(), f);
            assert_eq!(ext.mul(&f, &ext.one()).unwrap(), f);
            assert!(ext.mul(&f, &SkewPoly::zero(ext.n())).unwrap().is_zero());
            assert!(ext.sub(&f, &f).is_zero());
        }
    }
}

#[test]
fn weyl_rewrite() {
    let ext = corpus::by_name("weyl_like(2)").unwrap().extension.unwrap();
    let x = parse_poly(&ext, "x").unwrap();
    let y = ext.constant(Elem(2));
    assert_eq!(ext.base().format(Elem(2)), "[0,1]");
    assert_eq!(ext.format_poly(&ext.mul(&x, &y).unwrap()), "[0,1]*x^1 + [1,0]");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn expressions_round_trip(which in any::<usize>(), seed in any::<u64>()) {
        let all = verified();
        let (_, ext) = &all[which % all.len()];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_poly(ext, &mut rng, 4, 5);
        let text = ext.format_poly(&f);
        prop_assert_eq!(parse_poly(ext, &text).unwrap(), f);
    }

    #[test]
    fn right_coefficients_are_normalised(which in any::<usize>(), c in any::<u32>(), i in any::<usize>()) {
        let all = verified();
        let (_, ext) = &all[which % all.len()];
        let ring = ext.base();
        let c = Elem(c % ring.size() as u32);
        let i = i % ext.n();
        let var = if ext.n() == 1 { "x".to_string() } else { format!("x{}", i + 1) };
        let parsed = parse_poly(ext, &format!("{var}*{}", ring.format(c))).unwrap();
        prop_assert_eq!(parsed, ext.mul(&ext.var(i), &ext.constant(c)).unwrap());
    }
}
