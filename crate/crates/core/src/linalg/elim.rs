//! Exact elimination: fraction-free (Bareiss) over the integers and
//! Gauss-Jordan over `GF(p)`. Pivots are chosen deterministically as the
//! first nonzero entry of the current column.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix::IntMatrix;
use crate::combin::is_prime;
use crate::error::{input_err, Result};

trait Scalar: Clone {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn one() -> Self;
    /// `(a d - b c) / prev`, exact by Sylvester's identity.
    fn bareiss_step(a: &Self, d: &Self, b: &Self, c: &Self, prev: &Self) -> Option<Self>;
}

impl Scalar for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn one() -> Self {
        1
    }
    fn bareiss_step(a: &Self, d: &Self, b: &Self, c: &Self, prev: &Self) -> Option<Self> {
        let num = a.checked_mul(*d)?.checked_sub(b.checked_mul(*c)?)?;
        debug_assert_eq!(num % prev, 0);
        Some(num / prev)
    }
}

impl Scalar for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn one() -> Self {
        One::one()
    }
    fn bareiss_step(a: &Self, d: &Self, b: &Self, c: &Self, prev: &Self) -> Option<Self> {
        Some((a * d - b * c) / prev)
    }
}

struct Echelon<T> {
    rank: usize,
    last_pivot: T,
    swaps: usize,
}

fn bareiss<T: Scalar>(m: &IntMatrix) -> Option<Echelon<T>> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<T> = m.entries().iter().map(|&v| T::from_i64(v)).collect();
    let mut prev = T::one();
    let (mut r, mut swaps) = (0, 0);
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i * cols + c].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.swap(p * cols + j, r * cols + j);
            }
            swaps += 1;
        }
        let pivot = a[r * cols + c].clone();
        for i in r + 1..rows {
            let lead = a[i * cols + c].clone();
            for j in c + 1..cols {
                a[i * cols + j] = T::bareiss_step(&pivot, &a[i * cols + j], &lead, &a[r * cols + j], &prev)?;
            }
            a[i * cols + c] = T::from_i64(0);
        }
        prev = pivot;
        r += 1;
    }
    Some(Echelon {
        rank: r,
        last_pivot: prev,
        swaps,
    })
}

fn echelon(m: &IntMatrix) -> Echelon<BigInt> {
    match bareiss::<i128>(m) {
        Some(e) => Echelon {
            rank: e.rank,
            last_pivot: BigInt::from(e.last_pivot),
            swaps: e.swaps,
        },
        // word-size arithmetic overflowed; redo with arbitrary precision
        None => bareiss::<BigInt>(m).expect("BigInt steps never fail"),
    }
}

/// Rank over the rationals.
pub fn rank_exact(m: &IntMatrix) -> usize {
    echelon(m).rank
}

/// Exact determinant of a square matrix.
pub fn det_exact(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return input_err(format!("determinant of a {}x{} matrix", m.rows(), m.cols()));
    }
    if m.rows() == 0 {
        return Ok(<BigInt as One>::one());
    }
    let e = echelon(m);
    if e.rank < m.rows() {
        return Ok(BigInt::zero());
    }
    Ok(if e.swaps % 2 == 1 { -e.last_pivot } else { e.last_pivot })
}

/// Rank of `m` reduced modulo the prime `p`.
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> Result<usize> {
    if !is_prime(p) {
        return input_err(format!("{p} is not prime"));
    }
    if p > u32::MAX as u64 {
        return input_err(format!("modulus {p} too large"));
    }
    let (rows, cols) = (m.rows(), m.cols());
    let pi = p as i64;
    let mut a: Vec<u64> = m.entries().iter().map(|&v| v.rem_euclid(pi) as u64).collect();
    let inv = |x: u64| {
        let (mut base, mut e, mut acc) = (x, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    };
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        for j in 0..cols {
            a.swap(piv * cols + j, r * cols + j);
        }
        let scale = inv(a[r * cols + c]);
        for j in c..cols {
            a[r * cols + j] = a[r * cols + j] * scale % p;
        }
        for i in r + 1..rows {
            let f = a[i * cols + c];
            if f == 0 {
                continue;
            }
            for j in c..cols {
                a[i * cols + j] = (a[i * cols + j] + (p - f) * a[r * cols + j]) % p;
            }
        }
        r += 1;
    }
    Ok(r)
}
