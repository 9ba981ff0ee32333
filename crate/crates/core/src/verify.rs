//! Pass/fail certificates for declared `(n, k, lambda)` claims.

use std::fmt;

use serde::Serialize;

use crate::combin::factorial;
use crate::coverage::{coverage_table, CoverageOptions, CoverageReport};
use crate::error::{input_err, Error, Result};
use crate::perm::{KSequence, PermutationArray};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    /// Every k-sequence is covered exactly `lambda` times.
    Lambda(u32),
    /// Every k-sequence is covered at least once.
    CoveringOnly,
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claim::Lambda(l) => write!(f, "lambda={l}"),
            Claim::CoveringOnly => f.write_str("covering-only"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub sequence: KSequence,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub n: usize,
    pub k: usize,
    pub claim: Claim,
    pub verdict: Verdict,
    /// Absent only when the claim failed on size alone.
    pub report: Option<CoverageReport>,
    /// Sequences violating the claim, in rank order, capped.
    pub failures: Vec<Failure>,
    pub reason: Option<String>,
    /// `|X| / k!`, written exactly, reported when a lambda claim fails.
    pub implied_lambda: Option<String>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

fn implied_lambda(size: usize, kfact: u128) -> String {
    let g = num_integer::gcd(size as u128, kfact);
    if g == kfact {
        (size as u128 / kfact).to_string()
    } else {
        format!("{}/{}", size as u128 / g.max(1), kfact / g.max(1))
    }
}

/// Judges `x` against `claim` at sequence length `k`.
pub fn certify(x: &PermutationArray, k: usize, claim: Claim, opts: &CoverageOptions) -> Result<Certificate> {
    if k < 2 || k > x.n() {
        return input_err(format!("k={k} outside 2..={}", x.n()));
    }
    let kfact = factorial(k as u64).ok_or_else(|| Error::Input(format!("{k}! overflows")))?;
    let mut cert = Certificate {
        n: x.n(),
        k,
        claim,
        verdict: Verdict::Fail,
        report: None,
        failures: Vec::new(),
        reason: None,
        implied_lambda: None,
    };
    if let Claim::Lambda(lambda) = claim {
        if lambda == 0 {
            return input_err("claimed lambda must be positive");
        }
        if x.len() as u128 != lambda as u128 * kfact {
            cert.reason = Some("size not λ·k!".into());
            cert.implied_lambda = Some(implied_lambda(x.len(), kfact));
            return Ok(cert);
        }
    }

    let table = coverage_table(x, k, opts)?;
    let report = CoverageReport::from_table(&table, x.len(), opts.witness_cap);
    let bad = |c: u32| match claim {
        Claim::Lambda(l) => c != l,
        Claim::CoveringOnly => c == 0,
    };
    let space = table.space();
    cert.failures = table
        .counts()
        .iter()
        .enumerate()
        .filter(|&(_, &c)| bad(c))
        .take(opts.witness_cap)
        .map(|(r, &c)| Failure {
            sequence: space.sequence(r),
            multiplicity: c,
        })
        .collect();

    let pass = match claim {
        Claim::Lambda(l) => report.uniform_lambda == Some(l),
        Claim::CoveringOnly => report.min_cov >= 1,
    };
    if pass {
        cert.verdict = Verdict::Pass;
        if let Claim::Lambda(l) = claim {
            if x.len() as u128 != l as u128 * kfact {
                return Err(Error::Internal(format!(
                    "uniform lambda={l} but |X|={} is not lambda·{k}!",
                    x.len()
                )));
            }
        }
    } else {
        cert.reason = Some(match claim {
            Claim::Lambda(l) => format!(
                "coverage ranges over {}..={}, not exactly {l}",
                report.min_cov, report.max_cov
            ),
            Claim::CoveringOnly => "some sequences are uncovered".into(),
        });
        if matches!(claim, Claim::Lambda(_)) {
            cert.implied_lambda = Some(implied_lambda(x.len(), kfact));
        }
    }
    cert.report = Some(report);
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn opts() -> CoverageOptions {
        CoverageOptions::default()
    }

    #[test]
    fn symmetric_group_passes_with_quotient_lambda() {
        let c = certify(&PermutationArray::symmetric_group(4), 3, Claim::Lambda(4), &opts()).unwrap();
        assert!(c.passed());
        assert!(c.failures.is_empty());
        let c = certify(&PermutationArray::symmetric_group(4), 3, Claim::Lambda(3), &opts()).unwrap();
        assert!(!c.passed());
        assert_eq!(c.reason.as_deref(), Some("size not λ·k!"));
        assert_eq!(c.implied_lambda.as_deref(), Some("4"));
    }

    #[test]
    fn size_check_is_immediate() {
        let x = PermutationArray::new(4, vec![Permutation::identity(4)]).unwrap();
        let c = certify(&x, 3, Claim::Lambda(1), &opts()).unwrap();
        assert_eq!(c.verdict, Verdict::Fail);
        assert!(c.report.is_none());
        assert_eq!(c.implied_lambda.as_deref(), Some("1/6"));
    }

    #[test]
    fn covering_only() {
        let p = Permutation::from_digits("2413").unwrap();
        let pair = PermutationArray::new(4, vec![p.clone(), p.reversed()]).unwrap();
        assert!(certify(&pair, 2, Claim::CoveringOnly, &opts()).unwrap().passed());
        let single = PermutationArray::new(4, vec![p]).unwrap();
        let c = certify(&single, 2, Claim::CoveringOnly, &opts()).unwrap();
        assert!(!c.passed());
        assert_eq!(c.failures.len(), 6);
        assert!(c.failures.iter().all(|f| f.multiplicity == 0));
    }

    #[test]
    fn rejects_bad_parameters() {
        let x = PermutationArray::symmetric_group(3);
        assert!(certify(&x, 4, Claim::CoveringOnly, &opts()).is_err());
        assert!(certify(&x, 3, Claim::Lambda(0), &opts()).is_err());
    }
}
