//! Exact coverage counting: how many members of a permutation multiset
//! contain each k-sequence as a subsequence.
//!
//! k-sequences are ranked densely by a partial Lehmer code. The digit for
//! position `i` is the number of symbols smaller than `s_i` that are not used
//! earlier in the sequence, read in mixed radix `n, n-1, ..., n-k+1`. The rank
//! order is therefore the lexicographic order of sequences, and the table has
//! exactly `n (n-1) ... (n-k+1)` slots.
//!
//! Counting enumerates, for each permutation, its `C(n,k)` position subsets;
//! each subset induces exactly one covered sequence.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::combin::{binomial, falling};
use crate::error::{input_err, Error, Result};
use crate::perm::{KSequence, Permutation, PermutationArray, Symbol};

/// Default cap on dense tables.
pub const DEFAULT_MEMORY_CAP: u128 = 512 << 20;

/// Dense ranking of the k-sequences over `[n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SequenceSpace {
    n: usize,
    k: usize,
    len: usize,
}

impl SequenceSpace {
    /// Accepts `1 <= k <= n`; the incidence matrices use `t = 1`.
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k > n {
            return input_err(format!("sequence length k={k} outside 1..={n}"));
        }
        let len = falling(n as u64, k as u64)
            .filter(|&l| l <= usize::MAX as u128)
            .ok_or_else(|| Error::Input(format!("S({n},{k}) does not fit in memory")))?;
        Ok(Self {
            n,
            k,
            len: len as usize,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of k-sequences, `n!/(n-k)!`.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Rank of a sequence of distinct 1-based symbols.
    pub fn rank(&self, symbols: &[Symbol]) -> usize {
        debug_assert_eq!(symbols.len(), self.k);
        let mut rank = 0;
        for (i, &s) in symbols.iter().enumerate() {
            let smaller_used = symbols[..i].iter().filter(|&&p| p < s).count();
            rank = rank * (self.n - i) + (s as usize - 1 - smaller_used);
        }
        rank
    }

    pub fn unrank(&self, mut rank: usize) -> Vec<Symbol> {
        let mut digits = vec![0; self.k];
        for i in (0..self.k).rev() {
            let radix = self.n - i;
            digits[i] = rank % radix;
            rank /= radix;
        }
        let mut free: Vec<Symbol> = (1..=self.n as Symbol).collect();
        digits.into_iter().map(|d| free.remove(d)).collect()
    }

    pub fn sequence(&self, rank: usize) -> KSequence {
        KSequence::from_vec_unchecked(self.n, self.unrank(rank))
    }

    /// Calls `f(rank)` for each of the `C(n,k)` sequences covered by `perm`.
    pub fn for_each_covered(&self, perm: &Permutation, mut f: impl FnMut(usize)) {
        let mut prefix = [0 as Symbol; 64];
        if self.k > prefix.len() {
            let mut big = vec![0; self.k];
            self.walk(perm.symbols(), 0, 0, 0, &mut big, &mut f);
        } else {
            self.walk(perm.symbols(), 0, 0, 0, &mut prefix[..self.k], &mut f);
        }
    }

    fn walk(
        &self,
        perm: &[Symbol],
        depth: usize,
        start: usize,
        partial: usize,
        prefix: &mut [Symbol],
        f: &mut impl FnMut(usize),
    ) {
        let remaining = self.k - depth;
        for pos in start..=perm.len() - remaining {
            let s = perm[pos];
            let smaller = prefix[..depth].iter().filter(|&&p| p < s).count();
            let rank = partial * (self.n - depth) + (s as usize - 1 - smaller);
            if remaining == 1 {
                f(rank);
            } else {
                prefix[depth] = s;
                self.walk(perm, depth + 1, pos + 1, rank, prefix, f);
            }
        }
    }
}

/// Tunables for coverage counting.
#[derive(Clone, Copy, Debug)]
pub struct CoverageOptions {
    /// Maximum number of example sequences kept per witness list.
    pub witness_cap: usize,
    /// Cap on the bytes of all counting tables together.
    pub memory_cap: u128,
}

impl Default for CoverageOptions {
    fn default() -> Self {
        Self {
            witness_cap: 16,
            memory_cap: DEFAULT_MEMORY_CAP,
        }
    }
}

/// Exact per-sequence multiplicities for one array and one `k`.
#[derive(Clone, Debug)]
pub struct CoverageTable {
    space: SequenceSpace,
    counts: Vec<u32>,
}

impl CoverageTable {
    pub fn space(&self) -> SequenceSpace {
        self.space
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn get(&self, kappa: &KSequence) -> u32 {
        self.counts[self.space.rank(kappa.symbols())]
    }
}

/// Counts coverage of every k-sequence by `x`.
pub fn coverage_table(x: &PermutationArray, k: usize, opts: &CoverageOptions) -> Result<CoverageTable> {
    if k < 2 || k > x.n() {
        return input_err(format!("k={k} outside 2..={}", x.n()));
    }
    let space = SequenceSpace::new(x.n(), k)?;
    // one perm covers a sequence at most once, so counts never exceed |X|
    if x.len() as u64 > u32::MAX as u64 {
        return input_err(format!("{} permutations overflow 32-bit counters", x.len()));
    }
    let table_bytes = space.len() as u128 * 4;
    if table_bytes > opts.memory_cap {
        return Err(Error::Resource {
            what: format!("coverage table for S({},{k})", x.n()),
            required: table_bytes,
            cap: opts.memory_cap,
        });
    }
    let budget_workers = (opts.memory_cap / table_bytes).max(1) as usize;
    let workers = rayon::current_num_threads().min(budget_workers).max(1);
    let chunk = x.len().div_ceil(workers).max(1);

    let counts = if workers == 1 || x.len() <= 1 {
        let mut counts = vec![0u32; space.len()];
        for p in x.perms() {
            space.for_each_covered(p, |r| counts[r] += 1);
        }
        counts
    } else {
        x.perms()
            .par_chunks(chunk)
            .map(|perms| {
                let mut local = vec![0u32; space.len()];
                for p in perms {
                    space.for_each_covered(p, |r| local[r] += 1);
                }
                local
            })
            .reduce_with(|mut a, b| {
                a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
                a
            })
            .unwrap_or_else(|| vec![0u32; space.len()])
    };
    Ok(CoverageTable { space, counts })
}

/// Summary of a coverage table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverageReport {
    pub n: usize,
    pub k: usize,
    pub perms: usize,
    pub total_sequences: u64,
    pub min_cov: u32,
    pub max_cov: u32,
    /// coverage value -> number of sequences with that coverage
    pub histogram: BTreeMap<u32, u64>,
    pub uniform_lambda: Option<u32>,
    /// Examples attaining `min_cov` (empty when uniform), in rank order.
    pub least_covered: Vec<KSequence>,
    /// Examples attaining `max_cov` (empty when uniform), in rank order.
    pub most_covered: Vec<KSequence>,
}

impl CoverageReport {
    pub fn from_table(table: &CoverageTable, perms: usize, witness_cap: usize) -> Self {
        let space = table.space();
        let counts = table.counts();
        let mut histogram = BTreeMap::new();
        for &c in counts {
            *histogram.entry(c).or_insert(0u64) += 1;
        }
        let min_cov = counts.iter().copied().min().unwrap_or(0);
        let max_cov = counts.iter().copied().max().unwrap_or(0);
        let uniform = min_cov == max_cov;
        let collect = |target: u32| -> Vec<KSequence> {
            if uniform {
                return Vec::new();
            }
            counts
                .iter()
                .enumerate()
                .filter(|&(_, &c)| c == target)
                .take(witness_cap)
                .map(|(r, _)| space.sequence(r))
                .collect()
        };
        Self {
            n: space.n(),
            k: space.k(),
            perms,
            total_sequences: space.len() as u64,
            min_cov,
            max_cov,
            histogram,
            uniform_lambda: uniform.then_some(min_cov),
            least_covered: collect(min_cov),
            most_covered: collect(max_cov),
        }
    }

    /// Number of sequences covered at least once.
    pub fn covered(&self) -> u64 {
        self.histogram.iter().filter(|(&c, _)| c > 0).map(|(_, &m)| m).sum()
    }
}

/// Coverage report for `x` at sequence length `k`.
pub fn coverage_report(x: &PermutationArray, k: usize, opts: &CoverageOptions) -> Result<CoverageReport> {
    let table = coverage_table(x, k, opts)?;
    Ok(CoverageReport::from_table(&table, x.len(), opts.witness_cap))
}

/// `C(n,k)`: the number of k-sequences any one permutation covers.
pub fn per_permutation(n: usize, k: usize) -> u64 {
    binomial(n as u64, k as u64).expect("small parameters") as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::is_subsequence;

    fn opts() -> CoverageOptions {
        CoverageOptions::default()
    }

    #[test]
    fn rank_is_lexicographic_and_dense() {
        let space = SequenceSpace::new(5, 3).unwrap();
        assert_eq!(space.len(), 60);
        let mut prev: Option<Vec<Symbol>> = None;
        for r in 0..space.len() {
            let s = space.unrank(r);
            assert_eq!(space.rank(&s), r);
            if let Some(p) = prev {
                assert!(p < s);
            }
            prev = Some(s);
        }
        assert_eq!(space.unrank(0), vec![1, 2, 3]);
        assert_eq!(space.unrank(59), vec![5, 4, 3]);
    }

    #[test]
    fn walk_matches_brute_force() {
        let space = SequenceSpace::new(6, 3).unwrap();
        let p = Permutation::from_digits("361524").unwrap();
        let mut got = Vec::new();
        space.for_each_covered(&p, |r| got.push(r));
        got.sort();
        let want: Vec<_> = (0..space.len())
            .filter(|&r| is_subsequence(&space.sequence(r), &p).unwrap())
            .collect();
        assert_eq!(got, want);
        assert_eq!(got.len(), 20);
    }

    #[test]
    fn symmetric_group_is_uniform() {
        let r = coverage_report(&PermutationArray::symmetric_group(3), 3, &opts()).unwrap();
        assert_eq!(r.uniform_lambda, Some(1));
        assert!(r.least_covered.is_empty());
        let r = coverage_report(&PermutationArray::symmetric_group(5), 2, &opts()).unwrap();
        assert_eq!(r.uniform_lambda, Some(60));
    }

    #[test]
    fn rejects_bad_k_and_caps_memory() {
        let x = PermutationArray::symmetric_group(4);
        assert!(coverage_report(&x, 1, &opts()).is_err());
        assert!(coverage_report(&x, 5, &opts()).is_err());
        let tiny = CoverageOptions {
            memory_cap: 16,
            ..opts()
        };
        match coverage_report(&x, 3, &tiny) {
            Err(Error::Resource { required, .. }) => assert_eq!(required, 96),
            other => panic!("expected resource error, got {other:?}"),
        }
    }

    #[test]
    fn reverse_pair_covers_pairs_once() {
        let p = Permutation::from_digits("2413").unwrap();
        let x = PermutationArray::new(4, vec![p.clone(), p.reversed()]).unwrap();
        let r = coverage_report(&x, 2, &opts()).unwrap();
        assert_eq!(r.uniform_lambda, Some(1));
    }
}
