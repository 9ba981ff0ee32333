//! Matrices indexed by t-sequences: the incidence matrix of an array and the
//! small Gram sub-matrix used for the linear lower bound at `k = 3`.

use super::matrix::{gram, IntMatrix, Label};
use crate::construct::check_psca3;
use crate::coverage::{CoverageOptions, SequenceSpace, DEFAULT_MEMORY_CAP};
use crate::error::{input_err, Error, Result};
use crate::perm::{PermutationArray, Symbol};

/// `A_{X,t}`: rows are all t-sequences in rank (lexicographic) order, columns
/// are the members of `X` in array order; entry 1 iff the row sequence is a
/// subsequence of the column permutation.
pub fn incidence_matrix(x: &PermutationArray, t: usize) -> Result<IntMatrix> {
    incidence_matrix_capped(x, t, DEFAULT_MEMORY_CAP)
}

pub fn incidence_matrix_capped(x: &PermutationArray, t: usize, cap: u128) -> Result<IntMatrix> {
    let space = SequenceSpace::new(x.n(), t)?;
    let required = space.len() as u128 * x.len() as u128 * 8;
    if required > cap {
        return Err(Error::Resource {
            what: format!("incidence matrix of S({},{t}) by {} permutations", x.n(), x.len()),
            required,
            cap,
        });
    }
    let mut a = IntMatrix::zeros(space.len(), x.len());
    for (c, p) in x.perms().iter().enumerate() {
        space.for_each_covered(p, |r| a.set(r, c, 1));
    }
    let rows = (0..space.len()).map(|r| Label::Sequence(space.unrank(r))).collect();
    let cols = (0..x.len()).map(Label::Permutation).collect();
    a.with_labels(Some(rows), Some(cols))
}

/// `B = A_{X,t} A_{X,t}^T`: entry `(kappa, sigma)` counts the members of `X`
/// containing both sequences.
pub fn gram_of(x: &PermutationArray, t: usize) -> Result<IntMatrix> {
    gram(&incidence_matrix(x, t)?)
}

/// Index sequences of the square sub-matrix: `(i, n)` for `i = 1..n-1`,
/// then `(n, 1)`.
pub fn c_star_labels(n: usize) -> Vec<Label> {
    let n = n as Symbol;
    (1..n)
        .map(|i| Label::Sequence(vec![i, n]))
        .chain(std::iter::once(Label::Sequence(vec![n, 1])))
        .collect()
}

/// The sub-matrix of the pair Gram matrix of a PSCA(n,3) on
/// [`c_star_labels`], divided by the multiplicity. Fails if `x` is not
/// perfect at `k = 3`.
pub fn c_star_from_array(x: &PermutationArray, opts: &CoverageOptions) -> Result<IntMatrix> {
    if x.n() < 3 {
        return input_err("needs n >= 3");
    }
    let lambda = check_psca3(x, opts)?;
    let b = gram_of(x, 2)?;
    let idx: Vec<usize> = c_star_labels(x.n())
        .iter()
        .map(|l| b.row_index(l).expect("every pair labels a row"))
        .collect();
    b.submatrix(&idx, &idx).divide_exact(lambda as i64)
}

/// The same matrix written down from its entry rules: 3 on the diagonal, 2
/// between `(i,n)` and `(j,n)`, 0 between `(1,n)` and `(n,1)`, 1 between
/// `(i,n)` and `(n,1)` for `i >= 2`.
pub fn c_star(n: usize) -> Result<IntMatrix> {
    if n < 3 {
        return input_err("needs n >= 3");
    }
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let v = match (i == n - 1, j == n - 1) {
                _ if i == j => 3,
                (false, false) => 2,
                (true, false) if j == 0 => 0,
                (false, true) if i == 0 => 0,
                _ => 1,
            };
            m.set(i, j, v);
        }
    }
    let labels = c_star_labels(n);
    m.with_labels(Some(labels.clone()), Some(labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::elim::det_exact;
    use num_bigint::BigInt;

    #[test]
    fn trivial3_incidence() {
        let a = incidence_matrix(&PermutationArray::symmetric_group(3), 2).unwrap();
        assert_eq!((a.rows(), a.cols()), (6, 6));
        for c in 0..6 {
            assert_eq!((0..6).map(|r| a.get(r, c)).sum::<i64>(), 3);
        }
    }

    #[test]
    fn c_star_n6_literal() {
        let want = [
            [3, 2, 2, 2, 2, 0],
            [2, 3, 2, 2, 2, 1],
            [2, 2, 3, 2, 2, 1],
            [2, 2, 2, 3, 2, 1],
            [2, 2, 2, 2, 3, 1],
            [0, 1, 1, 1, 1, 3],
        ];
        let m = c_star(6).unwrap();
        for (i, row) in want.iter().enumerate() {
            assert_eq!(m.row(i), row);
        }
        assert_eq!(det_exact(&m).unwrap(), BigInt::from(21));
    }

    #[test]
    fn c_star_from_symmetric_group() {
        // S_4 is a PSCA(4,3) with multiplicity 4
        let m = c_star_from_array(&PermutationArray::symmetric_group(4), &CoverageOptions::default()).unwrap();
        assert_eq!(m, c_star(4).unwrap());
    }

    #[test]
    fn caps_and_errors() {
        let x = PermutationArray::symmetric_group(4);
        assert!(matches!(incidence_matrix_capped(&x, 2, 8), Err(Error::Resource { .. })));
        assert!(incidence_matrix(&x, 0).is_err());
        assert!(c_star(2).is_err());
        let bad = PermutationArray::new(4, vec![crate::perm::Permutation::identity(4)]).unwrap();
        assert!(c_star_from_array(&bad, &CoverageOptions::default()).is_err());
    }
}
