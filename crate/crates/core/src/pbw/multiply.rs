//! Normal-form multiplication.
//!
//! Everything reduces to `x_i · x^γ`. If no variable of `γ` precedes `x_i`
//! the product is already a standard monomial. Otherwise write
//! `x^γ = x_j x^{γ'}` with `j` the first variable present; then
//! `x_i x_j = d x_j x_i + t_0 + Σ t_k x_k` and `x_j` is pushed through the
//! normal form of `x_i x^{γ'}` coefficient by coefficient using
//! `x_j r = σ_j(r) x_j + δ_j(r)`. Each recursive call either lowers the
//! total degree or the exponent vector, so the recursion terminates.

use std::sync::Arc;

use super::{Extension, MultiIndex, PbwError, SkewPoly};
use crate::ring::Elem;

fn add_term(p: &mut SkewPoly, ring: &crate::ring::FiniteRing, alpha: &MultiIndex, c: Elem) {
    if c == ring.zero() {
        return;
    }
    let terms = p.terms_mut();
    match terms.get_mut(alpha) {
        Some(v) => {
            let s = ring.add(*v, c);
            if s == ring.zero() {
                terms.remove(alpha);
            } else {
                *v = s;
            }
        }
        None => {
            terms.insert(alpha.clone(), c);
        }
    }
}

impl Extension {
    /// Normal form of `x_i · x^γ`.
    fn mono(&self, i: usize, gamma: &MultiIndex) -> Arc<SkewPoly> {
        let key = (i, gamma.clone());
        if let Some(p) = self.cache.read().expect("cache lock").get(&key) {
            return p.clone();
        }
        let ring = self.base();
        let result = match gamma.exponents()[..i].iter().position(|&e| e > 0) {
            None => SkewPoly::monomial(gamma.bump(i, true), ring.one()),
            Some(j) => {
                let rest = gamma.bump(j, false);
                let rel = self.relation(j, i);
                let inner = self.mono(i, &rest);
                let mut out = self.scale_left(rel.d, &self.var_mul(j, &inner));
                add_term(&mut out, ring, &rest, rel.constant);
                for (k, &t) in rel.linear.iter().enumerate() {
                    if t != ring.zero() {
                        let part = self.scale_left(t, &self.mono(k, &rest));
                        self.add_into(&mut out, &part);
                    }
                }
                out
            }
        };
        let result = Arc::new(result);
        self.cache.write().expect("cache lock").insert(key, result.clone());
        result
    }

    /// `x_i · p`.
    pub(crate) fn var_mul(&self, i: usize, p: &SkewPoly) -> SkewPoly {
        let ring = self.base();
        let sigma = &self.system().sigmas()[i];
        let delta = &self.system().deltas()[i];
        let mut out = SkewPoly::zero(self.n());
        for (beta, c) in p.terms() {
            let sc = sigma.apply(c);
            if sc != ring.zero() {
                if beta.exponents()[..i].iter().all(|&e| e == 0) {
                    add_term(&mut out, ring, &beta.bump(i, true), sc);
                } else {
                    for (gamma, m) in self.mono(i, beta).terms() {
                        add_term(&mut out, ring, gamma, ring.mul(sc, m));
                    }
                }
            }
            add_term(&mut out, ring, beta, delta.apply(c));
        }
        out
    }

    /// `c · p` with `c` in the base ring.
    pub fn scale_left(&self, c: Elem, p: &SkewPoly) -> SkewPoly {
        let ring = self.base();
        SkewPoly::from_terms(self.n(), p.terms().map(|(a, r)| (a.clone(), ring.mul(c, r))))
    }

    fn add_into(&self, acc: &mut SkewPoly, p: &SkewPoly) {
        let ring = self.base();
        for (a, c) in p.terms() {
            add_term(acc, ring, a, c);
        }
    }

    pub fn add(&self, f: &SkewPoly, g: &SkewPoly) -> SkewPoly {
        let mut out = f.clone();
        self.add_into(&mut out, g);
        out
    }

    pub fn neg(&self, f: &SkewPoly) -> SkewPoly {
        let ring = self.base();
        SkewPoly::from_terms(self.n(), f.terms().map(|(a, c)| (a.clone(), ring.neg(c))))
    }

    pub fn sub(&self, f: &SkewPoly, g: &SkewPoly) -> SkewPoly {
        self.add(f, &self.neg(g))
    }

    /// `x^α · g`, applying `x_n` first and `x_1` last.
    pub(crate) fn monomial_mul(&self, alpha: &MultiIndex, g: &SkewPoly) -> SkewPoly {
        let mut h = g.clone();
        for (i, &e) in alpha.exponents().iter().enumerate().rev() {
            for _ in 0..e {
                h = self.var_mul(i, &h);
            }
        }
        h
    }

    pub(crate) fn mul_unchecked(&self, f: &SkewPoly, g: &SkewPoly) -> SkewPoly {
        let mut out = SkewPoly::zero(self.n());
        if g.is_zero() {
            return out;
        }
        let ring = self.base();
        for (alpha, r) in f.terms() {
            for (gamma, m) in self.monomial_mul(alpha, g).terms() {
                add_term(&mut out, ring, gamma, ring.mul(r, m));
            }
        }
        out
    }

    /// Normal form of `f g`.
    pub fn mul(&self, f: &SkewPoly, g: &SkewPoly) -> Result<SkewPoly, PbwError> {
        self.require_verified()?;
        Ok(self.mul_unchecked(f, g))
    }

    /// `f^k`, with `f^0 = 1`.
    pub fn power(&self, f: &SkewPoly, k: u32) -> Result<SkewPoly, PbwError> {
        self.require_verified()?;
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul_unchecked(&acc, f);
        }
        Ok(acc)
    }

    /// Renders `f` as `[c]*x1^a*x2^b + ...`, highest term first; `x` alone
    /// when there is one variable. The zero polynomial is `0`.
    pub fn format_poly(&self, f: &SkewPoly) -> String {
        let ring = self.base();
        let n = self.n();
        if f.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = f
            .terms()
            .rev()
            .map(|(alpha, c)| {
                let mut s = ring.format(c);
                for (i, &e) in alpha.exponents().iter().enumerate() {
                    if e > 0 {
                        if n == 1 {
                            s.push_str(&format!("*x^{e}"));
                        } else {
                            s.push_str(&format!("*x{}^{e}", i + 1));
                        }
                    }
                }
                s
            })
            .collect();
        parts.join(" + ")
    }
}
