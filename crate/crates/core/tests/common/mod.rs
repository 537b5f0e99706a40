#![allow(dead_code)]

use std::collections::BTreeMap;

use pbw_core::ring::Elem;
use pbw_core::{Extension, MultiIndex, SkewPoly};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A random polynomial with at most `terms` terms of total degree at most
/// `degree`.
pub fn random_poly(ext: &Extension, rng: &mut ChaCha8Rng, degree: u32, terms: usize) -> SkewPoly {
    let n = ext.n();
    let size = ext.base().size() as u32;
    let count = rng.gen_range(0..=terms);
    let mut out = Vec::new();
    for _ in 0..count {
        let mut left = rng.gen_range(0..=degree);
        let mut alpha = vec![0; n];
        for slot in alpha.iter_mut() {
            let e = rng.gen_range(0..=left);
            *slot = e;
            left -= e;
        }
        out.push((MultiIndex::new(alpha), Elem(rng.gen_range(0..size))));
    }
    let mut acc = SkewPoly::zero(n);
    for (alpha, c) in out {
        acc = ext.add(&acc, &SkewPoly::monomial(alpha, c));
    }
    acc
}

/// Commutative multiplication in `Z_k[x_1..x_n]`, on exponent-vector maps.
pub fn commutative_mul(k: u32, f: &BTreeMap<Vec<u32>, u32>, g: &BTreeMap<Vec<u32>, u32>) -> BTreeMap<Vec<u32>, u32> {
    let mut out: BTreeMap<Vec<u32>, u32> = BTreeMap::new();
    for (a, &c) in f {
        for (b, &d) in g {
            let e: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            let slot = out.entry(e).or_insert(0);
            *slot = (*slot + c * d) % k;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// The terms of `f` over a cyclic base `Z_k`, as plain integers.
pub fn as_int_map(ext: &Extension, f: &SkewPoly) -> BTreeMap<Vec<u32>, u32> {
    let ring = ext.base();
    f.terms().map(|(a, c)| (a.exponents().to_vec(), ring.coords(c)[0])).filter(|(_, c)| *c != 0).collect()
}

/// `sum_{k < cap} (-f)^k`, the candidate inverse of `1 + f`.
pub fn geometric_inverse(ext: &Extension, f: &SkewPoly, cap: u32) -> SkewPoly {
    let minus_f = ext.neg(f);
    let mut term = ext.one();
    let mut acc = SkewPoly::zero(ext.n());
    for _ in 0..cap {
        acc = ext.add(&acc, &term);
        term = ext.mul(&term, &minus_f).expect("verified");
        if term.is_zero() {
            break;
        }
    }
    acc
}
