//! Finite rings given by an additive cyclic decomposition and bilinear
//! structure constants.
//!
//! The additive group of a [`FiniteRing`] is `Z_{k_1} x ... x Z_{k_m}` with
//! generators `e_1..e_m`; multiplication is the bilinear extension of the
//! table `e_s * e_t = products[s][t]`. Elements are addressed by a compact
//! mixed-radix index ([`Elem`]) so that whole-ring enumeration is a range
//! scan, and small rings cache full addition/multiplication tables.

use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

/// Rings up to this many elements get precomputed operation tables.
const TABLE_LIMIT: usize = 256;

/// Hard ceiling on the cardinality accepted by [`FiniteRing::new`].
pub const MAX_RING_SIZE: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("malformed ring data: {0}")]
    BadShape(String),
    #[error("multiplication is not associative on generators ({0}, {1}, {2})")]
    NonAssociative(usize, usize, usize),
    #[error("the given identity does not act as identity on generator {0}")]
    BadIdentity(usize),
    #[error("product e_{0} * e_{1} is not compatible with the additive orders")]
    IllDefinedProduct(usize, usize),
    #[error("ring has {size} elements, above the cap of {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("element does not belong to this ring")]
    RingMismatch,
    #[error("internal invariant broken: {0}")]
    InvariantBroken(String),
}

/// An element of a [`FiniteRing`], stored as its mixed-radix index.
///
/// Coordinate `t` is `(index / (k_1 * ... * k_{t-1})) mod k_t`, so the first
/// coordinate is the least significant digit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub u32);

impl Elem {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
    Pow(u64),
}

#[derive(Debug)]
struct RingData {
    name: String,
    orders: Vec<u32>,
    products: Vec<Vec<Vec<u32>>>,
    one_coords: Vec<u32>,
    size: usize,
    one: Elem,
    add_table: Option<Vec<u32>>,
    mul_table: Option<Vec<u32>>,
    inverses: OnceLock<Vec<Option<Elem>>>,
}

/// A verified finite ring. Cloning is cheap (shared storage).
#[derive(Clone)]
pub struct FiniteRing {
    data: Arc<RingData>,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("name", &self.data.name)
            .field("orders", &self.data.orders)
            .field("size", &self.data.size)
            .finish()
    }
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
            || (self.data.name == other.data.name
                && self.data.orders == other.data.orders
                && self.data.products == other.data.products
                && self.data.one_coords == other.data.one_coords)
    }
}

impl Eq for FiniteRing {}

impl FiniteRing {
    /// Builds and verifies a ring.
    ///
    /// `products[s][t]` is the coordinate vector of `e_s * e_t`. Checks the
    /// shapes, that each product respects the additive orders, associativity
    /// on all generator triples and the identity law on all generators.
    pub fn new(
        name: impl Into<String>,
        orders: Vec<u32>,
        products: Vec<Vec<Vec<u32>>>,
        one: Vec<u32>,
    ) -> Result<Self, RingError> {
        let m = orders.len();
        if m == 0 {
            return Err(RingError::BadShape("no additive generators".into()));
        }
        if let Some(k) = orders.iter().find(|&&k| k < 2) {
            return Err(RingError::BadShape(format!("additive order {k} is below 2")));
        }
        let mut size: usize = 1;
        for &k in &orders {
            size = size
                .checked_mul(k as usize)
                .filter(|&s| s <= MAX_RING_SIZE)
                .ok_or(RingError::TooLarge { size: usize::MAX, cap: MAX_RING_SIZE })?;
        }
        if products.len() != m || products.iter().any(|row| row.len() != m) {
            return Err(RingError::BadShape(format!("structure constants must be {m} x {m}")));
        }
        if products.iter().flatten().any(|v| v.len() != m) || one.len() != m {
            return Err(RingError::BadShape(format!("element vectors must have length {m}")));
        }
        let reduce = |v: &[u32]| -> Vec<u32> { v.iter().zip(&orders).map(|(&c, &k)| c % k).collect() };
        let products: Vec<Vec<Vec<u32>>> =
            products.iter().map(|row| row.iter().map(|v| reduce(v)).collect()).collect();
        let one_coords = reduce(&one);

        // k_s e_s = 0 forces k_s (e_s e_t) = 0 and likewise for k_t.
        for s in 0..m {
            for t in 0..m {
                let v = &products[s][t];
                let ok = v.iter().zip(&orders).all(|(&c, &k)| {
                    (c as u64 * orders[s] as u64).is_multiple_of(k as u64)
                        && (c as u64 * orders[t] as u64).is_multiple_of(k as u64)
                });
                if !ok {
                    return Err(RingError::IllDefinedProduct(s, t));
                }
            }
        }

        let mut data = RingData {
            name: name.into(),
            orders,
            products,
            one_coords: one_coords.clone(),
            size,
            one: Elem(0),
            add_table: None,
            mul_table: None,
            inverses: OnceLock::new(),
        };
        data.one = data.encode(&one_coords);

        for i in 0..m {
            for j in 0..m {
                let ij = data.products[i][j].clone();
                for k in 0..m {
                    let left = data.mul_coords(&ij, &data.unit_vec(k));
                    let jk = data.products[j][k].clone();
                    let right = data.mul_coords(&data.unit_vec(i), &jk);
                    if left != right {
                        return Err(RingError::NonAssociative(i, j, k));
                    }
                }
            }
        }
        for i in 0..m {
            let e = data.unit_vec(i);
            if data.mul_coords(&one_coords, &e) != e || data.mul_coords(&e, &one_coords) != e {
                return Err(RingError::BadIdentity(i));
            }
        }

        if size <= TABLE_LIMIT {
            let mut add = vec![0u32; size * size];
            let mut mul = vec![0u32; size * size];
            let coords: Vec<Vec<u32>> = (0..size).map(|i| data.decode(Elem(i as u32))).collect();
            for a in 0..size {
                for b in 0..size {
                    add[a * size + b] = data.encode(&data.add_coords(&coords[a], &coords[b])).0;
                    mul[a * size + b] = data.encode(&data.mul_coords(&coords[a], &coords[b])).0;
                }
            }
            data.add_table = Some(add);
            data.mul_table = Some(mul);
        }

        Ok(FiniteRing { data: Arc::new(data) })
    }

    pub fn name(&self) -> &str {
        &self.data.name
    }

    pub fn orders(&self) -> &[u32] {
        &self.data.orders
    }

    pub fn products(&self) -> &[Vec<Vec<u32>>] {
        &self.data.products
    }

    pub fn one_coords(&self) -> &[u32] {
        &self.data.one_coords
    }

    /// Number of additive generators `m`.
    pub fn rank(&self) -> usize {
        self.data.orders.len()
    }

    pub fn size(&self) -> usize {
        self.data.size
    }

    pub fn zero(&self) -> Elem {
        Elem(0)
    }

    pub fn one(&self) -> Elem {
        self.data.one
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.data.size as u32).map(Elem)
    }

    /// The additive generators `e_1..e_m`.
    pub fn generators(&self) -> Vec<Elem> {
        (0..self.rank()).map(|t| self.data.encode(&self.data.unit_vec(t))).collect()
    }

    pub fn contains(&self, a: Elem) -> bool {
        a.index() < self.data.size
    }

    pub fn coords(&self, a: Elem) -> Vec<u32> {
        self.data.decode(a)
    }

    /// Strict conversion: the vector must have the right length and every
    /// coordinate must already be reduced.
    pub fn elem(&self, coords: &[u32]) -> Result<Elem, RingError> {
        if coords.len() != self.rank() || coords.iter().zip(self.orders()).any(|(&c, &k)| c >= k) {
            return Err(RingError::RingMismatch);
        }
        Ok(self.data.encode(coords))
    }

    /// Lenient conversion reducing each coordinate modulo its order.
    pub fn from_coords(&self, coords: &[u32]) -> Result<Elem, RingError> {
        if coords.len() != self.rank() {
            return Err(RingError::RingMismatch);
        }
        let reduced: Vec<u32> = coords.iter().zip(self.orders()).map(|(&c, &k)| c % k).collect();
        Ok(self.data.encode(&reduced))
    }

    /// `k * 1` for an integer `k`.
    pub fn from_int(&self, k: i64) -> Elem {
        let one = self.one();
        if k >= 0 {
            self.scale(one, k as u64)
        } else {
            self.neg(self.scale(one, k.unsigned_abs()))
        }
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.data.add_table {
            Some(t) => Elem(t[a.index() * self.data.size + b.index()]),
            None => {
                let c = self.data.add_coords(&self.data.decode(a), &self.data.decode(b));
                self.data.encode(&c)
            }
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let c: Vec<u32> =
            self.data.decode(a).iter().zip(&self.data.orders).map(|(&x, &k)| (k - x) % k).collect();
        self.data.encode(&c)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.data.mul_table {
            Some(t) => Elem(t[a.index() * self.data.size + b.index()]),
            None => {
                let c = self.data.mul_coords(&self.data.decode(a), &self.data.decode(b));
                self.data.encode(&c)
            }
        }
    }

    /// Integer multiple `k * a`.
    pub fn scale(&self, a: Elem, k: u64) -> Elem {
        let c: Vec<u32> = self
            .data
            .decode(a)
            .iter()
            .zip(&self.data.orders)
            .map(|(&x, &ord)| ((x as u64 * (k % ord as u64)) % ord as u64) as u32)
            .collect();
        self.data.encode(&c)
    }

    /// `a^k` by repeated squaring; `a^0 = 1`.
    pub fn pow(&self, a: Elem, mut k: u64) -> Elem {
        let mut base = a;
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Checked arithmetic on elements that may come from elsewhere.
    pub fn arith(&self, op: ArithOp, a: Elem, b: Elem) -> Result<Elem, RingError> {
        if !self.contains(a) || !self.contains(b) {
            return Err(RingError::RingMismatch);
        }
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Neg => self.neg(a),
            ArithOp::Pow(k) => self.pow(a, k),
        })
    }

    /// Least `k >= 1` with `a^k = 0`, if any.
    ///
    /// The power sequence of an element of a finite ring becomes periodic
    /// within `|R|` steps, so searching up to `|R|` is exhaustive.
    pub fn nilpotency_index(&self, a: Elem) -> Option<u32> {
        let mut p = a;
        for k in 1..=self.size() as u32 {
            if p == self.zero() {
                return Some(k);
            }
            p = self.mul(p, a);
        }
        None
    }

    pub fn is_nilpotent(&self, a: Elem) -> bool {
        self.nilpotency_index(a).is_some()
    }

    fn inverse_table(&self) -> &[Option<Elem>] {
        self.data.inverses.get_or_init(|| {
            let one = self.one();
            let mut inv = vec![None; self.size()];
            for a in self.elements() {
                if inv[a.index()].is_some() {
                    continue;
                }
                if let Some(b) = self.elements().find(|&b| self.mul(a, b) == one && self.mul(b, a) == one) {
                    inv[a.index()] = Some(b);
                    inv[b.index()] = Some(a);
                }
            }
            inv
        })
    }

    /// Two-sided inverse, found by exhaustive search (cached).
    pub fn inverse(&self, a: Elem) -> Option<Elem> {
        self.inverse_table()[a.index()]
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        self.inverse(a).is_some()
    }

    /// Renders an element as a bracketed coordinate vector, e.g. `[1,0]`.
    pub fn format(&self, a: Elem) -> String {
        let parts: Vec<String> = self.coords(a).iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }
}

impl RingData {
    fn unit_vec(&self, t: usize) -> Vec<u32> {
        let mut v = vec![0; self.orders.len()];
        v[t] = 1 % self.orders[t];
        v
    }

    fn encode(&self, coords: &[u32]) -> Elem {
        let mut idx: u64 = 0;
        for (&c, &k) in coords.iter().zip(&self.orders).rev() {
            idx = idx * k as u64 + c as u64;
        }
        Elem(idx as u32)
    }

    fn decode(&self, a: Elem) -> Vec<u32> {
        let mut idx = a.0;
        self.orders
            .iter()
            .map(|&k| {
                let c = idx % k;
                idx /= k;
                c
            })
            .collect()
    }

    fn add_coords(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).zip(&self.orders).map(|((&x, &y), &k)| (x + y) % k).collect()
    }

    fn mul_coords(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let m = self.orders.len();
        let mut acc = vec![0u64; m];
        for s in 0..m {
            if a[s] == 0 {
                continue;
            }
            for t in 0..m {
                if b[t] == 0 {
                    continue;
                }
                let w = a[s] as u64 * b[t] as u64;
                for (u, &c) in self.products[s][t].iter().enumerate() {
                    acc[u] = (acc[u] + w * c as u64) % self.orders[u] as u64;
                }
            }
        }
        acc.into_iter().map(|x| x as u32).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn z4() -> FiniteRing {
        FiniteRing::new("Z4", vec![4], vec![vec![vec![1]]], vec![1]).unwrap()
    }

    fn z2xz2() -> FiniteRing {
        FiniteRing::new(
            "Z2xZ2",
            vec![2, 2],
            vec![vec![vec![1, 0], vec![0, 0]], vec![vec![0, 0], vec![0, 1]]],
            vec![1, 1],
        )
        .unwrap()
    }

    #[test]
    fn z4_arithmetic() {
        let r = z4();
        assert_eq!(r.size(), 4);
        let two = r.elem(&[2]).unwrap();
        assert_eq!(r.mul(two, two), r.zero());
        assert_eq!(r.add(two, two), r.zero());
        assert_eq!(r.neg(r.one()), r.elem(&[3]).unwrap());
        assert_eq!(r.pow(r.elem(&[3]).unwrap(), 2), r.one());
        assert_eq!(r.from_int(-1), r.elem(&[3]).unwrap());
    }

    #[test]
    fn orthogonal_idempotents_multiply_to_zero() {
        let r = z2xz2();
        let a = r.elem(&[1, 0]).unwrap();
        let b = r.elem(&[0, 1]).unwrap();
        assert_eq!(r.mul(a, b), r.zero());
        assert_eq!(r.one(), r.elem(&[1, 1]).unwrap());
    }

    #[test]
    fn rejects_non_associative_constants() {
        // e1*e1 = e2, e1*e2 = e1, e2*e1 = 0, e2*e2 = e2: (e1 e1) e1 = e2 e1 = 0 but e1 (e1 e1) = e1 e2 = e1.
        let err = FiniteRing::new(
            "bad",
            vec![2, 2],
            vec![vec![vec![0, 1], vec![1, 0]], vec![vec![0, 0], vec![0, 1]]],
            vec![0, 1],
        )
        .unwrap_err();
        assert!(matches!(err, RingError::NonAssociative(..) | RingError::BadIdentity(_)));
    }

    #[test]
    fn rejects_bad_identity_and_shape() {
        let err = FiniteRing::new("bad", vec![4], vec![vec![vec![1]]], vec![2]).unwrap_err();
        assert_eq!(err, RingError::BadIdentity(0));
        let err = FiniteRing::new("bad", vec![4, 2], vec![vec![vec![1]]], vec![1]).unwrap_err();
        assert!(matches!(err, RingError::BadShape(_)));
        let err = FiniteRing::new("bad", vec![1], vec![vec![vec![0]]], vec![0]).unwrap_err();
        assert!(matches!(err, RingError::BadShape(_)));
    }

    #[test]
    fn rejects_products_incompatible_with_orders() {
        // Z2 x Z4 with e1*e2 = (0,1): 2*e1 = 0 but 2*(0,1) != 0 in Z4.
        let err = FiniteRing::new(
            "bad",
            vec![2, 4],
            vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![0, 1]]],
            vec![0, 1],
        )
        .unwrap_err();
        assert!(matches!(err, RingError::IllDefinedProduct(..)));
    }

    #[test]
    fn arith_checks_membership() {
        let r = z4();
        assert_eq!(r.arith(ArithOp::Mul, Elem(2), Elem(2)), Ok(r.zero()));
        assert_eq!(r.arith(ArithOp::Add, Elem(9), Elem(1)), Err(RingError::RingMismatch));
        assert_eq!(r.elem(&[4]), Err(RingError::RingMismatch));
        assert_eq!(r.elem(&[1, 0]), Err(RingError::RingMismatch));
    }

    #[test]
    fn units_and_nilpotency() {
        let r = z4();
        assert!(r.is_unit(Elem(1)) && r.is_unit(Elem(3)));
        assert!(!r.is_unit(Elem(2)));
        assert_eq!(r.nilpotency_index(Elem(2)), Some(2));
        assert_eq!(r.nilpotency_index(Elem(0)), Some(1));
        assert_eq!(r.nilpotency_index(Elem(1)), None);
    }
}
