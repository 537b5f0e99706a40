//! Base rings used by the corpus.

use super::CorpusError;
use crate::ring::FiniteRing;

fn is_small_prime(p: u32) -> bool {
    matches!(p, 2 | 3 | 5)
}

fn check_prime(p: u32) -> Result<(), CorpusError> {
    if is_small_prime(p) {
        Ok(())
    } else {
        Err(CorpusError::Parameter(format!("p = {p} must be a prime <= 5")))
    }
}

fn unit(m: usize, t: usize) -> Vec<u32> {
    let mut v = vec![0; m];
    v[t] = 1;
    v
}

/// `Z_n` with the single generator `1`.
pub fn zn(n: u32) -> Result<FiniteRing, CorpusError> {
    if !(2..=64).contains(&n) {
        return Err(CorpusError::Parameter(format!("Z_n needs 2 <= n <= 64, got {n}")));
    }
    Ok(FiniteRing::new(format!("Z{n}"), vec![n], vec![vec![vec![1]]], vec![1])?)
}

/// Direct product `R x S`, generators of `R` first.
pub fn product(r: &FiniteRing, s: &FiniteRing) -> Result<FiniteRing, CorpusError> {
    let (mr, ms) = (r.rank(), s.rank());
    let m = mr + ms;
    let mut orders = r.orders().to_vec();
    orders.extend_from_slice(s.orders());
    let mut products = vec![vec![vec![0; m]; m]; m];
    for a in 0..mr {
        for b in 0..mr {
            products[a][b][..mr].copy_from_slice(&r.products()[a][b]);
        }
    }
    for a in 0..ms {
        for b in 0..ms {
            products[mr + a][mr + b][mr..].copy_from_slice(&s.products()[a][b]);
        }
    }
    let mut one = r.one_coords().to_vec();
    one.extend_from_slice(s.one_coords());
    Ok(FiniteRing::new(format!("{}x{}", r.name(), s.name()), orders, products, one)?)
}

/// `M_2(Z_p)` on the matrix units `e11, e12, e21, e22`.
pub fn matrix_full(p: u32) -> Result<FiniteRing, CorpusError> {
    check_prime(p)?;
    let idx = |a: usize, b: usize| 2 * a + b;
    let mut products = vec![vec![vec![0; 4]; 4]; 4];
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for d in 0..2 {
                    if b == c {
                        products[idx(a, b)][idx(c, d)] = unit(4, idx(a, d));
                    }
                }
            }
        }
    }
    Ok(FiniteRing::new(format!("M2(Z{p})"), vec![p; 4], products, vec![1, 0, 0, 1])?)
}

/// Upper triangular `U_2(Z_p)` on `e11, e12, e22`.
pub fn matrix_upper(p: u32) -> Result<FiniteRing, CorpusError> {
    check_prime(p)?;
    let units = [(0, 0), (0, 1), (1, 1)];
    let mut products = vec![vec![vec![0; 3]; 3]; 3];
    for (s, &(a, b)) in units.iter().enumerate() {
        for (t, &(c, d)) in units.iter().enumerate() {
            if b == c {
                let target = units.iter().position(|&u| u == (a, d)).expect("upper triangular");
                products[s][t] = unit(3, target);
            }
        }
    }
    Ok(FiniteRing::new(format!("U2(Z{p})"), vec![p; 3], products, vec![1, 0, 1])?)
}

/// `Z_p[y]/(y^m)` on `1, y, ..., y^(m-1)`.
pub fn trunc_poly(p: u32, m: usize) -> Result<FiniteRing, CorpusError> {
    check_prime(p)?;
    if !(2..=5).contains(&m) {
        return Err(CorpusError::Parameter(format!("truncation degree m = {m} must be in 2..=5")));
    }
    let mut products = vec![vec![vec![0; m]; m]; m];
    for a in 0..m {
        for b in 0..m {
            if a + b < m {
                products[a][b] = unit(m, a + b);
            }
        }
    }
    Ok(FiniteRing::new(format!("Z{p}[y]/(y^{m})"), vec![p; m], products, unit(m, 0))?)
}

/// The field with four elements on the basis `1, w` with `w^2 = w + 1`.
pub fn gf4() -> Result<FiniteRing, CorpusError> {
    let products = vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 1]]];
    Ok(FiniteRing::new("GF4", vec![2, 2], products, vec![1, 0])?)
}

/// `Z_p[y_1..y_n]` truncated above degree 2 in the grading where every
/// `y_k` has degree 2: the span of `1, y_1, ..., y_n` with `y_i y_j = 0`.
pub fn clifford_base(p: u32, n: usize) -> Result<FiniteRing, CorpusError> {
    check_prime(p)?;
    if !(1..=3).contains(&n) {
        return Err(CorpusError::Parameter(format!("n = {n} must be in 1..=3")));
    }
    let m = n + 1;
    let mut products = vec![vec![vec![0; m]; m]; m];
    for t in 0..m {
        products[0][t] = unit(m, t);
        products[t][0] = unit(m, t);
    }
    Ok(FiniteRing::new(format!("Z{p}[y1..y{n}]/(deg>=3)"), vec![p; m], products, unit(m, 0))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cardinalities() {
        assert_eq!(zn(4).unwrap().size(), 4);
        assert_eq!(matrix_full(2).unwrap().size(), 16);
        assert_eq!(matrix_upper(2).unwrap().size(), 8);
        assert_eq!(trunc_poly(3, 3).unwrap().size(), 27);
        assert_eq!(gf4().unwrap().size(), 4);
        assert_eq!(clifford_base(2, 2).unwrap().size(), 8);
        assert_eq!(product(&zn(2).unwrap(), &zn(3).unwrap()).unwrap().size(), 6);
    }

    #[test]
    fn matrix_ring_involution_squares_to_one() {
        let r = matrix_full(2).unwrap();
        let s = r.elem(&[0, 1, 1, 0]).unwrap();
        assert_eq!(r.pow(s, 2), r.one());
    }

    #[test]
    fn parameter_ranges() {
        assert!(matrix_full(4).is_err());
        assert!(trunc_poly(2, 9).is_err());
        assert!(zn(1).is_err());
    }
}
