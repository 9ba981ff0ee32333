//! Dancing-links exact cover (Algorithm X). Columns are chosen by fewest
//! remaining options, ties to the lowest index, so runs are reproducible.

use super::Meter;

pub(crate) enum DlxResult {
    Found(Vec<usize>),
    Exhausted,
    OutOfBudget,
}

pub(crate) struct Dlx {
    left: Vec<usize>,
    right: Vec<usize>,
    up: Vec<usize>,
    down: Vec<usize>,
    col: Vec<usize>,
    row: Vec<usize>,
    size: Vec<usize>,
    row_start: Vec<usize>,
}

impl Dlx {
    /// `rows[r]` lists the items (0-based) covered by option `r`; every row
    /// must be nonempty.
    pub(crate) fn new(items: usize, rows: &[Vec<usize>]) -> Self {
        let headers = items + 1;
        let total = headers + rows.iter().map(Vec::len).sum::<usize>();
        let mut d = Dlx {
            left: Vec::with_capacity(total),
            right: Vec::with_capacity(total),
            up: Vec::with_capacity(total),
            down: Vec::with_capacity(total),
            col: Vec::with_capacity(total),
            row: Vec::with_capacity(total),
            size: vec![0; headers],
            row_start: Vec::with_capacity(rows.len()),
        };
        for h in 0..headers {
            d.left.push(if h == 0 { items } else { h - 1 });
            d.right.push(if h == items { 0 } else { h + 1 });
            d.up.push(h);
            d.down.push(h);
            d.col.push(h);
            d.row.push(usize::MAX);
        }
        for (r, items_of_row) in rows.iter().enumerate() {
            assert!(!items_of_row.is_empty(), "empty exact-cover row");
            let first = d.col.len();
            d.row_start.push(first);
            for (i, &item) in items_of_row.iter().enumerate() {
                let c = item + 1;
                let node = d.col.len();
                d.col.push(c);
                d.row.push(r);
                d.up.push(d.up[c]);
                d.down.push(c);
                let last = d.up[c];
                d.down[last] = node;
                d.up[c] = node;
                d.size[c] += 1;
                d.left.push(if i == 0 { node } else { node - 1 });
                d.right.push(first);
                if i > 0 {
                    d.right[node - 1] = node;
                    d.left[first] = node;
                }
            }
        }
        d
    }

    fn cover(&mut self, c: usize) {
        let (l, r) = (self.left[c], self.right[c]);
        self.right[l] = r;
        self.left[r] = l;
        let mut i = self.down[c];
        while i != c {
            let mut j = self.right[i];
            while j != i {
                let (u, dn) = (self.up[j], self.down[j]);
                self.down[u] = dn;
                self.up[dn] = u;
                self.size[self.col[j]] -= 1;
                j = self.right[j];
            }
            i = self.down[i];
        }
    }

    fn uncover(&mut self, c: usize) {
        let mut i = self.up[c];
        while i != c {
            let mut j = self.left[i];
            while j != i {
                self.size[self.col[j]] += 1;
                let (u, dn) = (self.up[j], self.down[j]);
                self.down[u] = j;
                self.up[dn] = j;
                j = self.left[j];
            }
            i = self.up[i];
        }
        let (l, r) = (self.left[c], self.right[c]);
        self.right[l] = c;
        self.left[r] = c;
    }

    /// Commits option `r` permanently (used to fix a symmetry-breaking row).
    pub(crate) fn select(&mut self, r: usize) {
        let start = self.row_start[r];
        self.cover(self.col[start]);
        let mut j = self.right[start];
        while j != start {
            self.cover(self.col[j]);
            j = self.right[j];
        }
    }

    pub(crate) fn solve_first(&mut self, meter: &mut Meter) -> DlxResult {
        let mut chosen = Vec::new();
        match self.search(&mut chosen, meter) {
            Some(true) => DlxResult::Found(chosen),
            Some(false) => DlxResult::Exhausted,
            None => DlxResult::OutOfBudget,
        }
    }

    /// `Some(true)` on a solution (left in `chosen`), `None` when out of budget.
    fn search(&mut self, chosen: &mut Vec<usize>, meter: &mut Meter) -> Option<bool> {
        if !meter.tick() {
            return None;
        }
        if self.right[0] == 0 {
            return Some(true);
        }
        let mut c = self.right[0];
        let mut best = c;
        while c != 0 {
            if self.size[c] < self.size[best] {
                best = c;
            }
            c = self.right[c];
        }
        if self.size[best] == 0 {
            return Some(false);
        }
        self.cover(best);
        let mut r = self.down[best];
        let mut outcome = Some(false);
        while r != best {
            chosen.push(self.row[r]);
            let mut j = self.right[r];
            while j != r {
                self.cover(self.col[j]);
                j = self.right[j];
            }
            outcome = self.search(chosen, meter);
            let mut j = self.left[r];
            while j != r {
                self.uncover(self.col[j]);
                j = self.left[j];
            }
            if outcome != Some(false) {
                break;
            }
            chosen.pop();
            r = self.down[r];
        }
        self.uncover(best);
        outcome
    }
}
