//! Bounded test of the skew Armendariz condition: `fg = 0` forces every
//! `a_i σ^{α_i}(b_j)` to vanish.

use super::{window, window_size, Extension, MultiIndex, PbwError, SkewPoly};
use crate::ring::Elem;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArmendarizWitness {
    pub f: SkewPoly,
    pub g: SkewPoly,
    pub a: Elem,
    pub alpha: MultiIndex,
    pub b: Elem,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArmendarizOutcome {
    Holds { degree_cap: u32, support_cap: usize, pairs: u128 },
    Fails(ArmendarizWitness),
}

impl ArmendarizOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, ArmendarizOutcome::Holds { .. })
    }
}

/// Checks all pairs from the window of degree `<= degree_cap` and support
/// `<= support_cap`. With `weak` set, only `a_0 + a_1 x_1 + ... + a_n x_n`
/// is enumerated and the caps are ignored.
pub fn bounded_skew_armendariz(
    ext: &Extension,
    degree_cap: u32,
    support_cap: usize,
    pair_budget: u128,
    weak: bool,
) -> Result<ArmendarizOutcome, PbwError> {
    ext.require_verified()?;
    let ring = ext.base();
    let (d, s) = if weak { (1, ext.n() + 1) } else { (degree_cap, support_cap) };
    let size = window_size(ext.n(), ring.size(), d, s);
    let pairs = size.saturating_mul(size);
    if pairs > pair_budget {
        return Err(PbwError::BudgetExceeded { needed: pairs, budget: pair_budget });
    }
    let win = window(ext, d, s);
    let sys = ext.system();
    for f in &win {
        for g in &win {
            if !ext.mul_unchecked(f, g).is_zero() {
                continue;
            }
            for (alpha, a) in f.terms() {
                for (_, b) in g.terms() {
                    if ring.mul(a, sys.sigma_power(alpha.exponents(), b)) != ring.zero() {
                        return Ok(ArmendarizOutcome::Fails(ArmendarizWitness {
                            f: f.clone(),
                            g: g.clone(),
                            a,
                            alpha: alpha.clone(),
                            b,
                        }));
                    }
                }
            }
        }
    }
    Ok(ArmendarizOutcome::Holds { degree_cap: d, support_cap: s, pairs })
}
