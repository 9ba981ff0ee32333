//! Exact-multiplicity search: choose a multiset of permutations covering
//! every k-sequence exactly `lambda` times.
//!
//! Each node picks the unfinished sequence with the least slack, then fills
//! its whole residual demand with a nondecreasing run of candidates, so every
//! multiset is generated once.

use super::{confirm, Meter, SearchOptions, SearchOutcome, SearchStatus, Universe};
use crate::error::{input_err, Result};

struct State<'a> {
    u: &'a Universe,
    /// `cands[s]`: permutations covering sequence `s`, ascending.
    cands: Vec<Vec<u32>>,
    residual: Vec<u32>,
    chosen: Vec<usize>,
    /// Scratch: how many more copies of each permutation still fit.
    room: Vec<u32>,
}

impl State<'_> {
    fn fits(&self, p: usize) -> bool {
        self.u.covers[p].iter().all(|&s| self.residual[s as usize] > 0)
    }

    fn apply(&mut self, p: usize) {
        for &s in &self.u.covers[p] {
            self.residual[s as usize] -= 1;
        }
        self.chosen.push(p);
    }

    fn undo(&mut self, p: usize) {
        for &s in &self.u.covers[p] {
            self.residual[s as usize] += 1;
        }
        self.chosen.pop();
    }

    /// The open sequence with the fewest usable copies relative to demand,
    /// or `Ok(None)` when all demands are met. `Err(())` signals a dead end.
    fn pick_item(&mut self) -> std::result::Result<Option<usize>, ()> {
        for p in 0..self.u.perms.len() {
            self.room[p] = self.u.covers[p]
                .iter()
                .map(|&s| self.residual[s as usize])
                .min()
                .unwrap_or(0);
        }
        let mut best: Option<(u64, usize)> = None;
        for s in 0..self.u.sequences {
            let need = self.residual[s];
            if need == 0 {
                continue;
            }
            let supply: u64 = self.cands[s].iter().map(|&p| self.room[p as usize] as u64).sum();
            if supply < need as u64 {
                return Err(());
            }
            let slack = supply - need as u64;
            if best.is_none_or(|(b, _)| slack < b) {
                best = Some((slack, s));
            }
        }
        Ok(best.map(|(_, s)| s))
    }

    fn solve(&mut self, meter: &mut Meter) -> Option<bool> {
        if !meter.tick() {
            return None;
        }
        match self.pick_item() {
            Err(()) => Some(false),
            Ok(None) => Some(true),
            Ok(Some(s)) => {
                let cands = self.cands[s].clone();
                self.fill(s, &cands, 0, meter)
            }
        }
    }

    fn fill(&mut self, s: usize, cands: &[u32], from: usize, meter: &mut Meter) -> Option<bool> {
        if self.residual[s] == 0 {
            return self.solve(meter);
        }
        for (i, &p) in cands.iter().enumerate().skip(from) {
            let p = p as usize;
            if !self.fits(p) {
                continue;
            }
            self.apply(p);
            let r = self.fill(s, cands, i, meter);
            if r != Some(false) {
                return r;
            }
            self.undo(p);
        }
        Some(false)
    }
}

/// Searches for a PSCA(n,k) with multiplicity exactly `lambda`.
pub fn exists_lambda(n: usize, k: usize, lambda: u32, opts: &SearchOptions) -> Result<SearchOutcome> {
    if lambda == 0 {
        return input_err("lambda must be at least 1");
    }
    let u = Universe::new(n, k, opts.memory_cap)?;
    let mut cands = vec![Vec::new(); u.sequences];
    for (p, cov) in u.covers.iter().enumerate() {
        for &s in cov {
            cands[s as usize].push(p as u32);
        }
    }
    let mut st = State {
        u: &u,
        cands,
        residual: vec![lambda; u.sequences],
        chosen: Vec::new(),
        room: vec![0; u.perms.len()],
    };
    if opts.fix_identity {
        st.apply(0);
    }
    let mut meter = Meter::new(&opts.budget);
    Ok(match st.solve(&mut meter) {
        Some(true) => {
            let mut idx = st.chosen.clone();
            idx.sort_unstable();
            let x = u.array(&idx);
            confirm(&x, k, lambda)?;
            meter.outcome(SearchStatus::Found, Some(x))
        }
        Some(false) => meter.outcome(SearchStatus::Exhausted, None),
        None => meter.outcome(SearchStatus::BudgetExceeded, None),
    })
}

#[cfg(test)]
mod tests {
    use super::super::{exists_lambda1, Budget};
    use super::*;

    fn opts(fix: bool) -> SearchOptions {
        SearchOptions {
            fix_identity: fix,
            ..SearchOptions::with_budget(Budget::seconds(60))
        }
    }

    #[test]
    fn lambda2_for_five_three() {
        let o = exists_lambda(5, 3, 2, &opts(true)).unwrap();
        assert_eq!(o.status, SearchStatus::Found);
        assert_eq!(o.witness.unwrap().len(), 12);
    }

    #[test]
    fn agrees_with_exact_cover_at_lambda1() {
        for (n, k) in [(3, 2), (4, 2), (4, 3), (5, 3), (4, 4), (5, 4)] {
            for fix in [true, false] {
                let a = exists_lambda(n, k, 1, &opts(fix)).unwrap().status;
                let b = exists_lambda1(n, k, &opts(fix)).unwrap().status;
                assert_eq!(a, b, "n={n} k={k} fix={fix}");
            }
        }
    }

    #[test]
    fn symmetric_group_multiplicity_is_found() {
        // S_4 covers each 3-sequence 4 times
        assert_eq!(exists_lambda(4, 3, 4, &opts(true)).unwrap().status, SearchStatus::Found);
        assert!(exists_lambda(4, 3, 0, &opts(true)).is_err());
    }
}
