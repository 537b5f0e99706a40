//! Bounded enumeration windows of skew polynomials.

use super::{Extension, MultiIndex, SkewPoly};
use crate::ring::Elem;

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Number of nonzero polynomials in `n` variables with degree `<= d`,
/// at most `s` terms and nonzero coefficients from a ring of `q` elements.
pub fn window_size(n: usize, q: usize, d: u32, s: usize) -> u128 {
    let monomials = binomial(n as u128 + d as u128, d as u128);
    let nonzero = q.saturating_sub(1) as u128;
    (1..=s as u128)
        .map(|k| binomial(monomials, k).saturating_mul(nonzero.saturating_pow(k as u32)))
        .fold(0u128, u128::saturating_add)
}

fn subsets(len: usize, k: usize, start: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if prefix.len() == k {
        out.push(prefix.clone());
        return;
    }
    for i in start..len {
        prefix.push(i);
        subsets(len, k, i + 1, prefix, out);
        prefix.pop();
    }
}

/// All nonzero polynomials with degree `<= degree_cap` and at most
/// `support_cap` terms, ordered by degree, then support size, then the
/// monomial set, then the coefficient vector (highest term first).
pub fn window(ext: &Extension, degree_cap: u32, support_cap: usize) -> Vec<SkewPoly> {
    let n = ext.n();
    let nonzero: Vec<Elem> = ext.base().elements().filter(|&e| e != ext.base().zero()).collect();
    let monomials = MultiIndex::up_to_degree(n, degree_cap);
    let mut out = Vec::new();
    if nonzero.is_empty() {
        return out;
    }
    for d in 0..=degree_cap {
        // Monomials of degree <= d; subsets must contain one of degree d.
        let pool: Vec<&MultiIndex> = monomials.iter().filter(|m| m.degree() <= d).collect();
        for s in 1..=support_cap.min(pool.len()) {
            let mut sets = Vec::new();
            subsets(pool.len(), s, 0, &mut Vec::new(), &mut sets);
            for set in sets.iter().filter(|set| set.iter().any(|&i| pool[i].degree() == d)) {
                // Highest monomial first so coefficient vectors read like the
                // printed form.
                let ordered: Vec<&MultiIndex> = set.iter().rev().map(|&i| pool[i]).collect();
                let mut digits = vec![0usize; s];
                loop {
                    out.push(SkewPoly::from_terms(
                        n,
                        ordered.iter().zip(&digits).map(|(m, &k)| ((*m).clone(), nonzero[k])),
                    ));
                    let mut pos = s;
                    let mut done = true;
                    while pos > 0 {
                        pos -= 1;
                        digits[pos] += 1;
                        if digits[pos] < nonzero.len() {
                            done = false;
                            break;
                        }
                        digits[pos] = 0;
                    }
                    if done {
                        break;
                    }
                }
            }
        }
    }
    out
}
