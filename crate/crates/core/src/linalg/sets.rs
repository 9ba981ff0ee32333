//! Set-inclusion matrices and their ranks over prime fields.

use super::matrix::{IntMatrix, Label};
use crate::combin::{binomial, binomial_big, is_prime};
use crate::error::{input_err, Error, Result};
use crate::perm::Symbol;
use num_traits::Zero;

/// All `k`-subsets of `[n]` in colexicographic order.
pub fn subsets_colex(n: usize, k: usize) -> Vec<Vec<Symbol>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<Symbol> = (1..=k as Symbol).collect();
    loop {
        out.push(cur.clone());
        // colex successor: bump the lowest element that can move up
        let Some(i) = (0..k).find(|&i| {
            let limit = if i + 1 < k { cur[i + 1] } else { n as Symbol + 1 };
            cur[i] + 1 < limit
        }) else {
            return out;
        };
        cur[i] += 1;
        for (j, slot) in cur.iter_mut().enumerate().take(i) {
            *slot = j as Symbol + 1;
        }
    }
}

fn check_params(t: usize, r: usize, n: usize) -> Result<()> {
    if t == 0 || t > r || r > n || t > n - r {
        return input_err(format!("need 1 <= t <= min(r, n-r); got t={t} r={r} n={n}"));
    }
    Ok(())
}

/// `W_{t,r,n}`: rows are the t-subsets, columns the r-subsets of `[n]`, both
/// in colex order; entry 1 iff the row subset lies inside the column subset.
pub fn inclusion_matrix(t: usize, r: usize, n: usize) -> Result<IntMatrix> {
    check_params(t, r, n)?;
    let rows = subsets_colex(n, t);
    let cols = subsets_colex(n, r);
    let mut w = IntMatrix::zeros(rows.len(), cols.len());
    for (i, ts) in rows.iter().enumerate() {
        for (j, rs) in cols.iter().enumerate() {
            if ts.iter().all(|x| rs.binary_search(x).is_ok()) {
                w.set(i, j, 1);
            }
        }
    }
    w.with_labels(
        Some(rows.into_iter().map(Label::Subset).collect()),
        Some(cols.into_iter().map(Label::Subset).collect()),
    )
}

/// Closed-form rank of `W_{t,r,n}` over `GF(p)`:
/// the sum of `C(n,i) - C(n,i-1)` over `0 <= i <= t` with
/// `C(r-i, t-i) != 0 (mod p)`.
pub fn wilson_rank(t: usize, r: usize, n: usize, p: u64) -> Result<u128> {
    check_params(t, r, n)?;
    if !is_prime(p) {
        return input_err(format!("{p} is not prime"));
    }
    let mut total: u128 = 0;
    for i in 0..=t {
        let c = binomial_big((r - i) as u64, (t - i) as u64);
        if (c % p).is_zero() {
            continue;
        }
        let hi = binomial(n as u64, i as u64);
        let lo = if i == 0 {
            Some(0)
        } else {
            binomial(n as u64, i as u64 - 1)
        };
        let (Some(hi), Some(lo)) = (hi, lo) else {
            return Err(Error::Input(format!("C({n},{i}) overflows")));
        };
        // i <= t <= n/2, so the difference is nonnegative
        total += hi - lo;
    }
    Ok(total)
}

/// `C(n,t) - C(n,t-1)`, the lower bound the closed form always meets.
pub fn wilson_lower(t: usize, n: usize) -> u128 {
    let hi = binomial(n as u64, t as u64).unwrap_or(u128::MAX);
    let lo = if t == 0 {
        0
    } else {
        binomial(n as u64, t as u64 - 1).unwrap_or(0)
    };
    hi.saturating_sub(lo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::elim::rank_mod_p;

    #[test]
    fn colex_order() {
        let s = subsets_colex(4, 2);
        let want: Vec<Vec<Symbol>> = vec![vec![1, 2], vec![1, 3], vec![2, 3], vec![1, 4], vec![2, 4], vec![3, 4]];
        assert_eq!(s, want);
        assert_eq!(subsets_colex(9, 3).len(), 84);
        assert_eq!(subsets_colex(3, 0), vec![Vec::<Symbol>::new()]);
    }

    #[test]
    fn small_inclusion_matrices() {
        let w = inclusion_matrix(1, 1, 2).unwrap();
        assert_eq!(
            w,
            IntMatrix::identity(2)
                .with_labels(w.row_labels().map(|l| l.to_vec()), w.col_labels().map(|l| l.to_vec()))
                .unwrap()
        );
        let w = inclusion_matrix(2, 2, 4).unwrap();
        assert_eq!(w.entries(), IntMatrix::identity(6).entries());
        let w = inclusion_matrix(2, 3, 5).unwrap();
        assert_eq!((w.rows(), w.cols()), (10, 10));
        for i in 0..10 {
            assert_eq!(w.row(i).iter().sum::<i64>(), 3);
        }
    }

    #[test]
    fn wilson_hand_value() {
        assert_eq!(wilson_rank(2, 3, 5, 2).unwrap(), 6);
        assert_eq!(rank_mod_p(&inclusion_matrix(2, 3, 5).unwrap(), 2).unwrap(), 6);
        assert_eq!(wilson_rank(1, 1, 2, 2).unwrap(), 2);
    }

    #[test]
    fn parameter_errors() {
        assert!(inclusion_matrix(0, 2, 5).is_err());
        assert!(inclusion_matrix(3, 2, 5).is_err());
        assert!(inclusion_matrix(2, 4, 5).is_err());
        assert!(wilson_rank(2, 3, 5, 4).is_err());
    }
}
