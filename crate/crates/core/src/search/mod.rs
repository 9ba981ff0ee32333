//! Exhaustive searches over arrays drawn from `S_n`:
//! existence of a PSCA(n,k) with a given multiplicity, and the largest
//! number of k-sequences coverable by `m` permutations.
//!
//! Every witness returned is re-checked by [`crate::verify::certify`] or by
//! recounting coverage before it leaves this module.

mod dlx;
mod maxcov;
mod multi;

use std::time::{Duration, Instant};

use serde::{Serialize, Serializer};

use crate::combin::{binomial, factorial};
use crate::coverage::{SequenceSpace, DEFAULT_MEMORY_CAP};
use crate::error::{input_err, Error, Result};
use crate::perm::{Permutation, PermutationArray};

pub use maxcov::max_coverage;
pub use multi::exists_lambda;

/// Limits on a search; `None` means unlimited.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_time: Option<Duration>,
    pub max_nodes: Option<u64>,
}

impl Budget {
    pub fn seconds(s: u64) -> Self {
        Budget {
            max_time: Some(Duration::from_secs(s)),
            max_nodes: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    /// A witness was found; for maximisation, its optimality is proven.
    Found,
    /// The space was exhausted without a witness.
    Exhausted,
    /// The budget ran out first; any witness is only a best-so-far.
    BudgetExceeded,
}

fn secs<S: Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub witness: Option<PermutationArray>,
    /// Coverage of the witness (maximisation only).
    pub best_value: Option<u64>,
    pub nodes_explored: u64,
    #[serde(serialize_with = "secs")]
    pub elapsed: Duration,
    /// Number of optimal arrays with the identity as first member, listed as
    /// nondecreasing index sequences; only counted on request.
    pub optimal_count: Option<u64>,
}

/// Knobs shared by all searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub budget: Budget,
    /// Fix the identity as a member. Sound because coverage is invariant
    /// under relabelling the symbols, and any array can be relabelled to
    /// contain the identity.
    pub fix_identity: bool,
    /// Bytes allowed for the permutation-by-sequence tables.
    pub memory_cap: u128,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: Budget::default(),
            fix_identity: true,
            memory_cap: DEFAULT_MEMORY_CAP,
        }
    }
}

impl SearchOptions {
    pub fn with_budget(budget: Budget) -> Self {
        SearchOptions {
            budget,
            ..Self::default()
        }
    }
}

/// Node counter and clock. The clock is read every 1024 ticks.
pub(crate) struct Meter {
    start: Instant,
    nodes: u64,
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
    exceeded: bool,
}

impl Meter {
    pub(crate) fn new(b: &Budget) -> Self {
        let start = Instant::now();
        Meter {
            start,
            nodes: 0,
            max_nodes: b.max_nodes,
            deadline: b.max_time.map(|d| start + d),
            exceeded: false,
        }
    }

    /// Counts one node; false once the budget is spent.
    pub(crate) fn tick(&mut self) -> bool {
        if self.exceeded {
            return false;
        }
        self.nodes += 1;
        let over_nodes = self.max_nodes.is_some_and(|m| self.nodes > m);
        let over_time = self.nodes.is_multiple_of(1024) && self.deadline.is_some_and(|d| Instant::now() >= d);
        self.exceeded = over_nodes || over_time;
        !self.exceeded
    }

    pub(crate) fn exceeded(&self) -> bool {
        self.exceeded
    }

    pub(crate) fn outcome(&self, status: SearchStatus, witness: Option<PermutationArray>) -> SearchOutcome {
        SearchOutcome {
            status,
            witness,
            best_value: None,
            nodes_explored: self.nodes,
            elapsed: self.start.elapsed(),
            optimal_count: None,
        }
    }
}

/// `S_n` in lexicographic order with, for each member, the ranks of the
/// k-sequences it covers.
pub(crate) struct Universe {
    pub(crate) n: usize,
    pub(crate) sequences: usize,
    pub(crate) perms: Vec<Permutation>,
    pub(crate) covers: Vec<Vec<u32>>,
}

impl Universe {
    pub(crate) fn new(n: usize, k: usize, memory_cap: u128) -> Result<Self> {
        if k < 2 || k > n {
            return input_err(format!("need 2 <= k <= n; got n={n} k={k}"));
        }
        let space = SequenceSpace::new(n, k)?;
        let perms_count = factorial(n as u64);
        let per = binomial(n as u64, k as u64);
        let required = match (perms_count, per) {
            (Some(a), Some(b)) => a.saturating_mul(b).saturating_mul(4),
            _ => u128::MAX,
        };
        if required > memory_cap {
            return Err(Error::Resource {
                what: format!("coverage lists for S_{n} at k={k}"),
                required,
                cap: memory_cap,
            });
        }
        let perms: Vec<Permutation> = Permutation::all(n).collect();
        let covers = perms
            .iter()
            .map(|p| {
                let mut v = Vec::with_capacity(per.unwrap_or(0) as usize);
                space.for_each_covered(p, |r| v.push(r as u32));
                v
            })
            .collect();
        Ok(Universe {
            n,
            sequences: space.len(),
            perms,
            covers,
        })
    }

    pub(crate) fn array(&self, indices: &[usize]) -> PermutationArray {
        let perms = indices.iter().map(|&i| self.perms[i].clone()).collect();
        PermutationArray::new(self.n, perms).expect("members of S_n")
    }
}

/// Searches for a PSCA(n,k) with multiplicity 1 by exact cover: items are
/// the k-sequences, options the permutations.
pub fn exists_lambda1(n: usize, k: usize, opts: &SearchOptions) -> Result<SearchOutcome> {
    let u = Universe::new(n, k, opts.memory_cap)?;
    let rows: Vec<Vec<usize>> = u
        .covers
        .iter()
        .map(|c| c.iter().map(|&r| r as usize).collect())
        .collect();
    let mut d = dlx::Dlx::new(u.sequences, &rows);
    let mut fixed = Vec::new();
    if opts.fix_identity {
        d.select(0);
        fixed.push(0);
    }
    let mut meter = Meter::new(&opts.budget);
    Ok(match d.solve_first(&mut meter) {
        dlx::DlxResult::Found(rest) => {
            fixed.extend(rest);
            fixed.sort_unstable();
            let x = u.array(&fixed);
            confirm(&x, k, 1)?;
            meter.outcome(SearchStatus::Found, Some(x))
        }
        dlx::DlxResult::Exhausted => meter.outcome(SearchStatus::Exhausted, None),
        dlx::DlxResult::OutOfBudget => meter.outcome(SearchStatus::BudgetExceeded, None),
    })
}

fn confirm(x: &PermutationArray, k: usize, lambda: u32) -> Result<()> {
    let cert = crate::verify::certify(x, k, crate::verify::Claim::Lambda(lambda), &Default::default())?;
    if !cert.passed() {
        return Err(Error::Internal(format!(
            "search produced an array that is not a PSCA({},{k}) with lambda={lambda}",
            x.n()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(n: usize, k: usize, fix: bool) -> SearchOutcome {
        let opts = SearchOptions {
            fix_identity: fix,
            ..SearchOptions::with_budget(Budget::seconds(60))
        };
        exists_lambda1(n, k, &opts).unwrap()
    }

    #[test]
    fn lambda1_small_cases() {
        let o = run(4, 3, true);
        assert_eq!(o.status, SearchStatus::Found);
        assert_eq!(o.witness.unwrap().len(), 6);
        assert_eq!(run(5, 3, true).status, SearchStatus::Exhausted);
        let o = run(5, 4, true);
        assert_eq!(o.status, SearchStatus::Found);
        assert_eq!(o.witness.unwrap().len(), 24);
    }

    #[test]
    fn symmetry_reduction_agrees() {
        for (n, k) in [(4, 3), (5, 3), (3, 2), (4, 2)] {
            assert_eq!(run(n, k, true).status, run(n, k, false).status, "n={n} k={k}");
        }
    }

    #[test]
    fn node_budget_is_respected() {
        let opts = SearchOptions::with_budget(Budget {
            max_time: None,
            max_nodes: Some(3),
        });
        let o = exists_lambda1(5, 3, &opts).unwrap();
        assert_eq!(o.status, SearchStatus::BudgetExceeded);
        assert!(o.nodes_explored <= 4);
    }

    #[test]
    fn universe_cap() {
        assert!(matches!(Universe::new(9, 4, 1 << 20), Err(Error::Resource { .. })));
        assert!(Universe::new(3, 4, DEFAULT_MEMORY_CAP).is_err());
    }
}
