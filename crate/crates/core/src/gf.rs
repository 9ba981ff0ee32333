//! Finite fields `GF(p^e)` in the polynomial-basis representation.
//!
//! An element is a polynomial of degree `< e` over `GF(p)`, encoded as the
//! integer `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`. Encodings run over `0..q`,
//! with `0` the zero element and `1` the unit.

use crate::combin::is_prime;
use crate::error::{input_err, Error, Result};

/// Largest field order accepted by [`FiniteField::new`].
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

/// A field element, identified by its integer encoding.
pub type Elem = u32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    e: u32,
    q: u64,
    /// Monic modulus, coefficients from degree 0 up to degree `e`.
    modulus: Vec<u64>,
}

impl FiniteField {
    /// Builds `GF(p^e)` over the lexicographically smallest monic irreducible
    /// of degree `e` (ordered by `(c_{e-1}, ..., c_0)`).
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return input_err(format!("field characteristic {p} is not prime"));
        }
        if e == 0 {
            return input_err("extension degree must be at least 1");
        }
        let q = p
            .checked_pow(e)
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or_else(|| Error::Input(format!("{p}^{e} exceeds the field-order cap {MAX_FIELD_ORDER}")))?;
        let modulus = (0..q)
            .map(|code| {
                let mut m = decode(code, p, e as usize);
                m.push(1);
                m
            })
            .find(|m| is_irreducible(m, p))
            .ok_or_else(|| Error::Internal(format!("no irreducible of degree {e} over GF({p})")))?;
        Ok(Self { p, e, q, modulus })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q as Elem
    }

    pub fn coefficients(&self, a: Elem) -> Vec<u64> {
        decode(a as u64, self.p, self.e as usize)
    }

    pub fn from_coefficients(&self, c: &[u64]) -> Elem {
        debug_assert!(c.len() <= self.e as usize);
        c.iter().rev().fold(0, |acc, &x| acc * self.p + x % self.p) as Elem
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let (ca, cb) = (self.coefficients(a), self.coefficients(b));
        let sum: Vec<u64> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % self.p).collect();
        self.from_coefficients(&sum)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let c: Vec<u64> = self.coefficients(a).iter().map(|&x| (self.p - x) % self.p).collect();
        self.from_coefficients(&c)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let (ca, cb) = (self.coefficients(a), self.coefficients(b));
        let mut prod = vec![0u64; 2 * self.e as usize];
        for (i, x) in ca.iter().enumerate() {
            for (j, y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let r = poly_rem(prod, &self.modulus, self.p);
        self.from_coefficients(&r[..self.e as usize])
    }

    pub fn pow(&self, a: Elem, mut exp: u64) -> Elem {
        let (mut base, mut acc) = (a, 1);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        (a != 0).then(|| self.pow(a, self.q - 2))
    }
}

/// `make_field(p, e)`; see [`FiniteField::new`].
pub fn make_field(p: u64, e: u32) -> Result<FiniteField> {
    FiniteField::new(p, e)
}

fn decode(mut code: u64, p: u64, len: usize) -> Vec<u64> {
    let mut c = vec![0; len];
    for slot in c.iter_mut() {
        *slot = code % p;
        code /= p;
    }
    c
}

fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

/// Remainder of `a` modulo the monic polynomial `m`, length preserved.
fn poly_rem(mut a: Vec<u64>, m: &[u64], p: u64) -> Vec<u64> {
    let dm = m.len() - 1;
    while let Some(da) = degree(&a) {
        if da < dm {
            break;
        }
        let lead = a[da];
        let shift = da - dm;
        for (i, &c) in m.iter().enumerate() {
            a[i + shift] = (a[i + shift] + (p - lead) * c) % p;
        }
    }
    if a.len() < dm {
        a.resize(dm, 0);
    }
    a
}

/// Exhaustive trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(m: &[u64], p: u64) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        for code in 0..p.pow(d as u32) {
            let mut div = decode(code, p, d);
            div.push(1);
            if degree(&poly_rem(m.to_vec(), &div, p)).is_none() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: [(u64, u32); 9] = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (3, 3), (3, 4)];

    #[test]
    fn prime_fields() {
        let f = make_field(3, 1).unwrap();
        assert_eq!(f.inv(2), Some(2));
        assert_eq!(f.inv(0), None);
        let g = make_field(2, 1).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(g.add(a, b), a ^ b);
            }
        }
    }

    #[test]
    fn smallest_moduli() {
        assert_eq!(make_field(3, 2).unwrap().modulus(), [1, 0, 1]);
        assert_eq!(make_field(2, 2).unwrap().modulus(), [1, 1, 1]);
        assert_eq!(make_field(2, 3).unwrap().modulus(), [1, 1, 0, 1]);
    }

    #[test]
    fn gf9_units_have_order_dividing_8() {
        let f = make_field(3, 2).unwrap();
        for x in 1..9 {
            let mut acc = 1;
            for _ in 0..8 {
                acc = f.mul(acc, x);
            }
            assert_eq!(acc, 1, "x={x}");
        }
    }

    #[test]
    fn field_axioms_by_enumeration() {
        for (p, e) in SMALL {
            let f = make_field(p, e).unwrap();
            let els: Vec<_> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "GF({p}^{e}) a={a}");
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    if a != 0 && b != 0 {
                        assert_ne!(f.mul(a, b), 0);
                    }
                }
            }
            // associativity and distributivity on the full cube up to order 81
            if f.order() <= 81 {
                for &a in &els {
                    for &b in &els {
                        for &c in &els {
                            assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                            assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                            assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(make_field(4, 1).is_err());
        assert!(make_field(3, 0).is_err());
        assert!(make_field(2, 40).is_err());
    }
}
