//! Lower and upper bounds on `g(n,k)`, the least multiplicity of a
//! PSCA(n,k), each with a trace of the inequalities that produced it.
//!
//! Lower bounds:
//! * `g(n,3) >= n/6` from a nonsingular `n x n` block of the pair Gram matrix;
//! * `g(n,j) >= (C(n,j/2) - C(n,j/2-1)) / j!` for even `j` with `j/2` prime,
//!   from the rank of a set-inclusion matrix modulo `j/2`;
//! * `g(n,k) >= g(n,j) j!/k!` for `j < k`, by iterating `g(n,k) >= g(n,k-1)/k`.
//!
//! Upper bounds: `n!/k!` (all of `S_n`), the squaring recurrence for `k = 3`,
//! and a few explicit arrays.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::combin::{binomial_big, factorial_big, is_prime};
use crate::error::{input_err, Error, Result};

fn as_string<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// One bound value and how it was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bound {
    #[serde(serialize_with = "as_string")]
    pub value: BigUint,
    /// One line per candidate considered; the winner is marked `*`.
    pub trace: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub k: usize,
    pub lower: Bound,
    pub upper: Bound,
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    if k < 2 || k > n {
        return input_err(format!("need 2 <= k <= n; got n={n} k={k}"));
    }
    Ok(())
}

fn ceil_div(a: &BigUint, b: &BigUint) -> BigUint {
    let (q, r) = a.div_rem(b);
    if r.is_zero() {
        q
    } else {
        q + 1u32
    }
}

fn pick(mut candidates: Vec<(BigUint, String)>, best_is_max: bool) -> Bound {
    let best = if best_is_max {
        candidates.iter().map(|c| &c.0).max()
    } else {
        candidates.iter().map(|c| &c.0).min()
    }
    .cloned()
    .expect("at least one candidate");
    let mut marked = false;
    let trace = candidates
        .drain(..)
        .map(|(v, why)| {
            let star = if !marked && v == best {
                marked = true;
                "*"
            } else {
                " "
            };
            format!("{star} {v} <- {why}")
        })
        .collect();
    Bound { value: best, trace }
}

/// Best lower bound on `g(n,k)`.
pub fn lower_bound_g(n: usize, k: usize) -> Result<Bound> {
    check_nk(n, k)?;
    let kfact = factorial_big(k as u64);
    let mut cands = vec![(BigUint::one(), "trivial: g(n,k) >= 1".to_string())];
    if k >= 3 {
        // g(n,3) >= n/6, then chained up to k
        let v = ceil_div(&BigUint::from(n), &kfact);
        let why = if k == 3 {
            format!("Gram block of order n: g(n,3) >= n/6 = {n}/6")
        } else {
            format!("g(n,3) >= n/6 chained to k={k}: g(n,{k}) >= n/{k}! = {n}/{kfact}")
        };
        cands.push((v, why));
    }
    for j in (4..=k).step_by(2) {
        let t = j / 2;
        if !is_prime(t as u64) {
            continue;
        }
        let hi = binomial_big(n as u64, t as u64);
        let lo = binomial_big(n as u64, t as u64 - 1);
        let num = if hi > lo { hi - lo } else { BigUint::zero() };
        let v = ceil_div(&num, &kfact);
        let chain = if j == k {
            String::new()
        } else {
            format!(", chained from j={j} to k={k}")
        };
        cands.push((
            v,
            format!(
                "inclusion-matrix rank mod {t}: g(n,{j}) >= (C({n},{t}) - C({n},{})) / {j}! = {num}/{j}!{chain}",
                t - 1
            ),
        ));
    }
    Ok(pick(cands, true))
}

/// `lambda_r` of the squaring recurrence: `lambda_1 = 1`,
/// `lambda_r = 2 (3^ceil(r/2) + 1) lambda_ceil(r/2)`.
pub fn lambda_r(r: u32) -> Result<BigUint> {
    if r == 0 {
        return input_err("r must be at least 1");
    }
    if r == 1 {
        return Ok(BigUint::one());
    }
    let h = r.div_ceil(2);
    Ok(BigUint::from(2u32) * (BigUint::from(3u32).pow(h) + 1u32) * lambda_r(h)?)
}

/// Squaring-recurrence data for `k = 3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct G3Upper {
    pub n: usize,
    /// Smallest `r` with `3^r >= n`.
    pub r: u32,
    #[serde(serialize_with = "as_string")]
    pub n_prime: BigUint,
    #[serde(serialize_with = "as_string")]
    pub lambda_r: BigUint,
    /// `ceil(log2 r)`.
    pub t: u32,
    /// `7^t 3^r`, which always dominates `lambda_r`.
    #[serde(serialize_with = "as_string")]
    pub certificate: BigUint,
    /// `2^(t-1) (3^r - 1)` when `r = 2^t`.
    #[serde(serialize_with = "opt_string")]
    pub closed_form: Option<BigUint>,
}

fn opt_string<S: Serializer>(v: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

fn ceil_log2(r: u32) -> u32 {
    if r <= 1 {
        0
    } else {
        32 - (r - 1).leading_zeros()
    }
}

/// Upper bound `g(n,3) <= lambda_r` for the least `3^r >= n`.
pub fn upper_bound_g3(n: usize) -> Result<G3Upper> {
    if n < 3 {
        return input_err(format!("n={n} below 3"));
    }
    let mut r = 1u32;
    let mut n_prime = BigUint::from(3u32);
    while n_prime < BigUint::from(n) {
        n_prime *= 3u32;
        r += 1;
    }
    let lambda = lambda_r(r)?;
    let t = ceil_log2(r);
    let certificate = BigUint::from(7u32).pow(t) * BigUint::from(3u32).pow(r);
    if lambda > certificate {
        return Err(Error::Internal(format!("lambda_{r} exceeds 7^{t} 3^{r}")));
    }
    let closed_form = r.is_power_of_two().then(|| {
        // 2^(t-1) (3^r - 1), with t = 0 read as (3 - 1)/2
        let base = BigUint::from(3u32).pow(r) - 1u32;
        if t == 0 {
            base / 2u32
        } else {
            base << (t - 1)
        }
    });
    Ok(G3Upper {
        n,
        r,
        n_prime,
        lambda_r: lambda,
        t,
        certificate,
        closed_form,
    })
}

/// Best upper bound on `g(n,k)`.
pub fn upper_bound_g(n: usize, k: usize) -> Result<Bound> {
    check_nk(n, k)?;
    let mut cands = vec![(
        factorial_big(n as u64) / factorial_big(k as u64),
        format!("all of S_{n}: g(n,k) <= n!/k!"),
    )];
    if k == 2 {
        cands.push((BigUint::one(), "a permutation and its reverse".into()));
    }
    if k == n {
        cands.push((BigUint::one(), format!("S_{k} covers each {k}-sequence once")));
    }
    if k == 4 && n <= 5 {
        cands.push((
            BigUint::one(),
            "explicit PSCA(5,4) with lambda=1, restricted to [n]".into(),
        ));
    }
    if k == 3 && n <= 5 {
        cands.push((
            BigUint::from(2u32),
            "explicit PSCA(5,3) with lambda=2, restricted to [n]".into(),
        ));
    }
    if k == 3 {
        let u = upper_bound_g3(n)?;
        cands.push((
            u.lambda_r.clone(),
            format!(
                "squaring recurrence: g({n},3) <= g({},3) <= lambda_{} = {} <= 7^{} 3^{} = {}",
                u.n_prime, u.r, u.lambda_r, u.t, u.r, u.certificate
            ),
        ));
    }
    Ok(pick(cands, false))
}

/// Both bounds, checked for consistency.
pub fn bound_report(n: usize, k: usize) -> Result<BoundReport> {
    let lower = lower_bound_g(n, k)?;
    let upper = upper_bound_g(n, k)?;
    if lower.value > upper.value {
        return Err(Error::Internal(format!(
            "lower bound {} exceeds upper bound {} at n={n} k={k}",
            lower.value, upper.value
        )));
    }
    Ok(BoundReport { n, k, lower, upper })
}

/// Convenience for tests and display: the value as `u128` when it fits.
pub fn small(v: &BigUint) -> Option<u128> {
    v.to_u128()
}
