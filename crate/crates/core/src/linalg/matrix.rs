use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{input_err, Error, Result};
use crate::perm::Symbol;

/// Row or column label of a matrix built from sequences or subsets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Label {
    Sequence(Vec<Symbol>),
    Subset(Vec<Symbol>),
    Permutation(usize),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, s: &[Symbol], open: &str, close: &str| {
            let compact = s.iter().all(|&x| x < 10);
            let parts: Vec<String> = s.iter().map(|x| x.to_string()).collect();
            write!(f, "{open}{}{close}", parts.join(if compact { "" } else { "," }))
        };
        match self {
            Label::Sequence(s) => join(f, s, "", ""),
            Label::Subset(s) => join(f, s, "{", "}"),
            Label::Permutation(i) => write!(f, "#{i}"),
        }
    }
}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
    row_labels: Option<Vec<Label>>,
    col_labels: Option<Vec<Label>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
            row_labels: None,
            col_labels: None,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return input_err("ragged rows");
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
            row_labels: None,
            col_labels: None,
        })
    }

    pub fn with_labels(mut self, rows: Option<Vec<Label>>, cols: Option<Vec<Label>>) -> Result<Self> {
        for (labels, len, what) in [(&rows, self.rows, "row"), (&cols, self.cols, "column")] {
            if let Some(l) = labels {
                if l.len() != len {
                    return input_err(format!("{} {what} labels for {len} {what}s", l.len()));
                }
                let unique: std::collections::HashSet<_> = l.iter().collect();
                if unique.len() != l.len() {
                    return input_err(format!("duplicate {what} labels"));
                }
            }
        }
        self.row_labels = rows;
        self.col_labels = cols;
        Ok(self)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[i64] {
        &self.data
    }

    pub fn row_labels(&self) -> Option<&[Label]> {
        self.row_labels.as_deref()
    }

    pub fn col_labels(&self) -> Option<&[Label]> {
        self.col_labels.as_deref()
    }

    pub fn row_index(&self, label: &Label) -> Option<usize> {
        self.row_labels.as_ref()?.iter().position(|l| l == label)
    }

    pub fn col_index(&self, label: &Label) -> Option<usize> {
        self.col_labels.as_ref()?.iter().position(|l| l == label)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t.row_labels = self.col_labels.clone();
        t.col_labels = self.row_labels.clone();
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Sub-matrix on the given row and column indices, labels carried along.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j));
            }
        }
        m.row_labels = self
            .row_labels
            .as_ref()
            .map(|l| rows.iter().map(|&i| l[i].clone()).collect());
        m.col_labels = self
            .col_labels
            .as_ref()
            .map(|l| cols.iter().map(|&j| l[j].clone()).collect());
        m
    }

    /// Gcd of all entries (0 for the zero matrix).
    pub fn content(&self) -> i64 {
        self.data.iter().fold(0i64, |g, &x| g.gcd(&x))
    }

    /// Divides every entry by `d`, which must divide all of them.
    pub fn divide_exact(&self, d: i64) -> Result<Self> {
        if d == 0 {
            return input_err("division by zero");
        }
        if let Some(x) = self.data.iter().find(|&&x| x % d != 0) {
            return input_err(format!("{d} does not divide entry {x}"));
        }
        let mut m = self.clone();
        m.data.iter_mut().for_each(|x| *x /= d);
        Ok(m)
    }

    /// Divides by [`content`](Self::content); returns the matrix and the gcd.
    pub fn normalize_content(&self) -> (Self, i64) {
        let g = self.content();
        if g == 0 {
            return (self.clone(), 0);
        }
        (self.divide_exact(g).expect("content divides every entry"), g)
    }

    /// Exact product, failing on `i64` overflow.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return input_err(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            ));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for (l, &a) in self.row(i).iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let cell = &mut out.data[i * other.cols + j];
                    *cell = a
                        .checked_mul(other.get(l, j))
                        .and_then(|v| cell.checked_add(v))
                        .ok_or_else(|| Error::Input("matrix product overflows i64".into()))?;
                }
            }
        }
        out.row_labels = self.row_labels.clone();
        out.col_labels = other.col_labels.clone();
        Ok(out)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// `B = A A^T`, labelled by the rows of `A` on both sides.
pub fn gram(a: &IntMatrix) -> Result<IntMatrix> {
    let mut b = IntMatrix::zeros(a.rows, a.rows);
    let mut support: Vec<(usize, i64)> = Vec::new();
    for c in 0..a.cols {
        support.clear();
        support.extend((0..a.rows).map(|i| (i, a.get(i, c))).filter(|&(_, v)| v != 0));
        for &(i, x) in &support {
            for &(j, y) in &support {
                let cell = &mut b.data[i * a.rows + j];
                *cell = x
                    .checked_mul(y)
                    .and_then(|v| cell.checked_add(v))
                    .ok_or_else(|| Error::Input("Gram matrix overflows i64".into()))?;
            }
        }
    }
    b.row_labels = a.row_labels.clone();
    b.col_labels = a.row_labels.clone();
    Ok(b)
}
