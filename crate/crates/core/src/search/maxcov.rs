//! Branch and bound for the largest number of k-sequences covered by `m`
//! permutations.
//!
//! Arrays are enumerated as nondecreasing index lists into `S_n` (lex order).
//! The bound adds the `m - depth` largest marginal gains still available to
//! the current union; gains only shrink as the union grows, so it is valid.
//! The first optimal list met is therefore the lexicographically least one.

use super::{Meter, SearchOptions, SearchOutcome, SearchStatus, Universe};
use crate::coverage::{coverage_report, CoverageOptions};
use crate::error::{input_err, Error, Result};

struct Bnb<'a> {
    u: &'a Universe,
    m: usize,
    words: usize,
    masks: Vec<u64>,
    /// `unions[d]` is the union after `d` picks.
    unions: Vec<Vec<u64>>,
    path: Vec<usize>,
    best: u64,
    best_path: Vec<usize>,
    count_all: bool,
    optimal_count: u64,
    gains: Vec<u64>,
}

impl Bnb<'_> {
    fn mask(&self, p: usize) -> &[u64] {
        &self.masks[p * self.words..(p + 1) * self.words]
    }

    fn gain(&self, union: &[u64], p: usize) -> u64 {
        self.mask(p)
            .iter()
            .zip(union)
            .map(|(a, b)| (a & !b).count_ones() as u64)
            .sum()
    }

    fn bound(&mut self, depth: usize, covered: u64, from: usize) -> u64 {
        let left = self.m - depth;
        let union = std::mem::take(&mut self.unions[depth]);
        self.gains.clear();
        for p in from..self.u.perms.len() {
            self.gains.push(self.gain(&union, p));
        }
        self.unions[depth] = union;
        let take = left.min(self.gains.len());
        let optimistic: u64 = if take == 0 {
            0
        } else if take < self.gains.len() {
            let pivot = self.gains.len() - take;
            self.gains.select_nth_unstable(pivot);
            self.gains[pivot..].iter().sum()
        } else {
            self.gains.iter().sum()
        };
        // one permutation may be reused, so never below the best single gain
        let optimistic = optimistic.max(self.gains.iter().copied().max().unwrap_or(0));
        (covered + optimistic).min(self.u.sequences as u64)
    }

    fn visit(&mut self, depth: usize, covered: u64, from: usize, meter: &mut Meter) {
        if !meter.tick() {
            return;
        }
        if depth == self.m {
            if covered > self.best {
                self.best = covered;
                self.best_path = self.path.clone();
                self.optimal_count = 1;
            } else if covered == self.best {
                self.optimal_count += 1;
            }
            return;
        }
        let b = self.bound(depth, covered, from);
        if b < self.best || (b == self.best && !self.count_all) {
            return;
        }
        for p in from..self.u.perms.len() {
            let mut next = std::mem::take(&mut self.unions[depth + 1]);
            let mut added = 0;
            for (w, (u, m)) in next.iter_mut().zip(self.unions[depth].iter().zip(self.mask(p))) {
                *w = u | m;
                added += (m & !u).count_ones() as u64;
            }
            self.unions[depth + 1] = next;
            self.path.push(p);
            self.visit(depth + 1, covered + added, p, meter);
            self.path.pop();
            if meter.exceeded() {
                return;
            }
        }
    }
}

/// Maximum coverage by `m` permutations of `S_n` at sequence length `k`.
/// With `enumerate_all`, also counts the optimal nondecreasing index lists
/// (starting at the identity when it is fixed).
pub fn max_coverage(n: usize, k: usize, m: usize, opts: &SearchOptions, enumerate_all: bool) -> Result<SearchOutcome> {
    if m == 0 {
        return input_err("m must be at least 1");
    }
    let u = Universe::new(n, k, opts.memory_cap)?;
    let words = u.sequences.div_ceil(64);
    let mut masks = vec![0u64; u.perms.len() * words];
    for (p, cov) in u.covers.iter().enumerate() {
        for &s in cov {
            masks[p * words + s as usize / 64] |= 1 << (s % 64);
        }
    }
    let mut bnb = Bnb {
        u: &u,
        m,
        words,
        masks,
        unions: vec![vec![0; words]; m + 1],
        path: Vec::with_capacity(m),
        best: 0,
        best_path: Vec::new(),
        count_all: enumerate_all,
        optimal_count: 0,
        gains: Vec::with_capacity(u.perms.len()),
    };
    let mut meter = Meter::new(&opts.budget);
    if opts.fix_identity {
        let id = bnb.mask(0).to_vec();
        bnb.unions[1] = id;
        bnb.path.push(0);
        let covered = u.covers[0].len() as u64;
        bnb.visit(1, covered, 0, &mut meter);
    } else {
        bnb.visit(0, 0, 0, &mut meter);
    }

    let witness = (!bnb.best_path.is_empty()).then(|| u.array(&bnb.best_path));
    if let Some(x) = &witness {
        let recount = coverage_report(x, k, &CoverageOptions::default())?.covered();
        if recount != bnb.best {
            return Err(Error::Internal(format!(
                "branch and bound claimed coverage {} but the witness covers {recount}",
                bnb.best
            )));
        }
    }
    let status = if meter.exceeded() {
        SearchStatus::BudgetExceeded
    } else {
        SearchStatus::Found
    };
    let mut out = meter.outcome(status, witness);
    out.best_value = (!bnb.best_path.is_empty()).then_some(bnb.best);
    out.optimal_count = (enumerate_all && status == SearchStatus::Found).then_some(bnb.optimal_count);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::Budget;
    use super::*;
    use crate::combin::binomial;

    fn best(n: usize, k: usize, m: usize, fix: bool) -> u64 {
        let opts = SearchOptions {
            fix_identity: fix,
            ..SearchOptions::with_budget(Budget::seconds(60))
        };
        let o = max_coverage(n, k, m, &opts, false).unwrap();
        assert_eq!(o.status, SearchStatus::Found);
        o.best_value.unwrap()
    }

    #[test]
    fn known_optima() {
        assert_eq!(best(5, 3, 6, true), 56);
        assert_eq!(best(3, 2, 2, true), 6);
        for (n, k) in [(4, 2), (5, 3), (6, 4), (5, 5)] {
            assert_eq!(best(n, k, 1, true) as u128, binomial(n as u64, k as u64).unwrap());
        }
    }

    #[test]
    fn identity_fixing_is_sound() {
        for (n, k, m) in [(4, 3, 2), (4, 3, 3), (4, 2, 2), (5, 3, 2)] {
            assert_eq!(best(n, k, m, true), best(n, k, m, false), "n={n} k={k} m={m}");
        }
    }

    #[test]
    fn counting_optimal_sets() {
        let opts = SearchOptions::with_budget(Budget::seconds(60));
        // with the identity fixed, only its reverse completes S(3,2)
        let o = max_coverage(3, 2, 2, &opts, true).unwrap();
        assert_eq!(o.optimal_count, Some(1));
        // (4,3) with lambda 1 exists; every optimum is a perfect array
        let o = max_coverage(4, 3, 6, &opts, true).unwrap();
        assert_eq!(o.best_value, Some(24));
        assert!(o.optimal_count.unwrap() >= 1);
    }

    #[test]
    fn rejects_zero_m() {
        assert!(max_coverage(4, 3, 0, &SearchOptions::default(), false).is_err());
    }
}
