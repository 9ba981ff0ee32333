//! Permutations of `[n]`, k-sequences, and permutation multisets.
//!
//! Symbols are 1-based everywhere in the public surface: a permutation of
//! `[5]` is written `1 2 3 4 5`, never `0 1 2 3 4`.

use std::fmt;

use serde::Serialize;

use crate::error::{input_err, Error, Result};

/// A symbol of the ground set `[n]`, 1-based.
pub type Symbol = u16;

/// Largest ground set the crate accepts.
pub const MAX_N: usize = u16::MAX as usize;

fn check_distinct(symbols: &[Symbol], n: usize, what: &str) -> Result<()> {
    let mut seen = vec![false; n + 1];
    for &s in symbols {
        let s = s as usize;
        if s == 0 || s > n {
            return input_err(format!("{what}: symbol {s} outside 1..={n}"));
        }
        if seen[s] {
            return input_err(format!("{what}: symbol {s} repeated"));
        }
        seen[s] = true;
    }
    Ok(())
}

fn digits(s: &str) -> Result<Vec<Symbol>> {
    s.chars()
        .map(|c| {
            c.to_digit(10)
                .filter(|&d| d > 0)
                .map(|d| d as Symbol)
                .ok_or_else(|| Error::Input(format!("`{s}` is not a digit string over 1..9")))
        })
        .collect()
}

fn write_symbols(f: &mut fmt::Formatter<'_>, symbols: &[Symbol], compact: bool) -> fmt::Result {
    for (i, s) in symbols.iter().enumerate() {
        if i > 0 && !compact {
            f.write_str(" ")?;
        }
        write!(f, "{s}")?;
    }
    Ok(())
}

/// An ordering of `[n]` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Permutation {
    symbols: Vec<Symbol>,
}

impl Permutation {
    pub fn new(symbols: Vec<Symbol>) -> Result<Self> {
        if symbols.len() > MAX_N {
            return input_err(format!("permutation length {} above {MAX_N}", symbols.len()));
        }
        check_distinct(&symbols, symbols.len(), "permutation")?;
        Ok(Self { symbols })
    }

    /// Parses a compact digit string such as `"13254"` (only for `n <= 9`).
    pub fn from_digits(s: &str) -> Result<Self> {
        Self::new(digits(s)?)
    }

    pub fn identity(n: usize) -> Self {
        Self {
            symbols: (1..=n as Symbol).collect(),
        }
    }

    pub(crate) fn from_vec_unchecked(symbols: Vec<Symbol>) -> Self {
        debug_assert!(check_distinct(&symbols, symbols.len(), "permutation").is_ok());
        Self { symbols }
    }

    pub fn n(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    /// Image of position `i` (1-based), i.e. the symbol written there.
    pub fn at(&self, i: usize) -> Symbol {
        self.symbols[i - 1]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (pos, &s) in self.symbols.iter().enumerate() {
            inv[s as usize - 1] = pos as Symbol + 1;
        }
        Self { symbols: inv }
    }

    /// Product `self * other`, applying `self` first: `i -> other(self(i))`.
    pub fn then(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        Ok(Self {
            symbols: self.symbols.iter().map(|&s| other.at(s as usize)).collect(),
        })
    }

    pub fn reversed(&self) -> Self {
        Self {
            symbols: self.symbols.iter().rev().copied().collect(),
        }
    }

    /// Deletes every symbol greater than `m`.
    pub fn restrict(&self, m: usize) -> Self {
        Self {
            symbols: self.symbols.iter().copied().filter(|&s| (s as usize) <= m).collect(),
        }
    }

    /// Compact digit rendering (`12345`) when `n <= 9`, spaced otherwise.
    pub fn compact(&self) -> String {
        if self.n() <= 9 {
            self.symbols.iter().map(|s| s.to_string()).collect()
        } else {
            self.to_string()
        }
    }

    /// All permutations of `[n]` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        let mut next = Some(Self::identity(n));
        std::iter::from_fn(move || {
            let cur = next.take()?;
            let mut s = cur.symbols.clone();
            if next_lex(&mut s) {
                next = Some(Self { symbols: s });
            }
            Some(cur)
        })
    }
}

/// Advances `s` to the next lexicographic permutation; false at the last one.
fn next_lex(s: &mut [Symbol]) -> bool {
    if s.len() < 2 {
        return false;
    }
    let Some(i) = (0..s.len() - 1).rev().find(|&i| s[i] < s[i + 1]) else {
        return false;
    };
    let j = (i + 1..s.len()).rev().find(|&j| s[j] > s[i]).unwrap();
    s.swap(i, j);
    s[i + 1..].reverse();
    true
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_symbols(f, &self.symbols, false)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

/// A sequence of `k` distinct symbols of `[n]`. Serializes as its display
/// string.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KSequence {
    n: usize,
    symbols: Vec<Symbol>,
}

impl KSequence {
    pub fn new(n: usize, symbols: Vec<Symbol>) -> Result<Self> {
        if symbols.len() < 2 || symbols.len() > n {
            return input_err(format!("k-sequence length {} outside 2..={n}", symbols.len()));
        }
        check_distinct(&symbols, n, "k-sequence")?;
        Ok(Self { n, symbols })
    }

    pub fn from_digits(n: usize, s: &str) -> Result<Self> {
        Self::new(n, digits(s)?)
    }

    pub(crate) fn from_vec_unchecked(n: usize, symbols: Vec<Symbol>) -> Self {
        Self { n, symbols }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn compact(&self) -> String {
        if self.n <= 9 {
            self.symbols.iter().map(|s| s.to_string()).collect()
        } else {
            self.to_string()
        }
    }
}

impl fmt::Display for KSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_symbols(f, &self.symbols, self.n <= 9)
    }
}

impl fmt::Debug for KSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KSequence({self})")
    }
}

/// True iff the symbols of `kappa` occur in `sigma` in the same relative order.
pub fn is_subsequence(kappa: &KSequence, sigma: &Permutation) -> Result<bool> {
    if kappa.n() != sigma.n() {
        return Err(Error::SizeMismatch {
            expected: sigma.n(),
            found: kappa.n(),
        });
    }
    let mut want = kappa.symbols().iter().peekable();
    for s in sigma.symbols() {
        if want.peek() == Some(&s) {
            want.next();
        }
    }
    Ok(want.peek().is_none())
}

impl Serialize for KSequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A multiset of permutations of a common `[n]`. Duplicates are kept and
/// counted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PermutationArray {
    n: usize,
    perms: Vec<Permutation>,
}

impl PermutationArray {
    pub fn new(n: usize, perms: Vec<Permutation>) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return input_err(format!("ground-set size {n} outside 1..={MAX_N}"));
        }
        if let Some(p) = perms.iter().find(|p| p.n() != n) {
            return Err(Error::SizeMismatch {
                expected: n,
                found: p.n(),
            });
        }
        Ok(Self { n, perms })
    }

    /// Builds an array from compact digit strings (`n <= 9`).
    pub fn from_digit_strings<S: AsRef<str>>(n: usize, strings: &[S]) -> Result<Self> {
        let perms = strings
            .iter()
            .map(|s| Permutation::from_digits(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, perms)
    }

    /// All of `S_n` in lexicographic order.
    pub fn symmetric_group(n: usize) -> Self {
        Self {
            n,
            perms: Permutation::all(n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    pub fn perms(&self) -> &[Permutation] {
        &self.perms
    }

    pub fn into_perms(self) -> Vec<Permutation> {
        self.perms
    }

    /// Multiset union.
    pub fn union(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let mut perms = self.perms.clone();
        perms.extend(other.perms.iter().cloned());
        Ok(Self { n: self.n, perms })
    }

    /// Deletes every symbol above `m` from every member.
    pub fn restrict(&self, m: usize) -> Result<Self> {
        if m == 0 || m > self.n {
            return input_err(format!("cannot restrict [{}] to [{m}]", self.n));
        }
        Ok(Self {
            n: m,
            perms: self.perms.iter().map(|p| p.restrict(m)).collect(),
        })
    }

    fn map_checked(&self, sigma: &Permutation, f: impl Fn(&Permutation) -> Permutation) -> Result<Self> {
        if sigma.n() != self.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: sigma.n(),
            });
        }
        Ok(Self {
            n: self.n,
            perms: self.perms.iter().map(f).collect(),
        })
    }
}

/// `X_sigma = { pi sigma : pi in X }` with the product read left to right
/// (`pi` first, then `sigma`), so every member has `sigma` applied to its
/// symbols: `12345 -> 13254` and `43215 -> 52314` for `sigma = 13254`.
pub fn compose_right(x: &PermutationArray, sigma: &Permutation) -> Result<PermutationArray> {
    x.map_checked(sigma, |pi| pi.then(sigma).expect("sizes checked"))
}

/// Symbol relabelling `{ g(pi) : pi in X }`. Maps covered sequences
/// bijectively, so coverage histograms are unchanged.
pub fn relabel(x: &PermutationArray, g: &Permutation) -> Result<PermutationArray> {
    x.map_checked(g, |pi| Permutation {
        symbols: pi.symbols.iter().map(|&s| g.at(s as usize)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(n: usize, s: &str) -> KSequence {
        KSequence::from_digits(n, s).unwrap()
    }

    fn perm(s: &str) -> Permutation {
        Permutation::from_digits(s).unwrap()
    }

    #[test]
    fn subsequence_examples() {
        assert!(is_subsequence(&seq(5, "123"), &perm("12345")).unwrap());
        assert!(is_subsequence(&seq(9, "492"), &perm("492573681")).unwrap());
        assert!(!is_subsequence(&seq(5, "132"), &perm("12345")).unwrap());
        assert!(matches!(
            is_subsequence(&seq(4, "12"), &perm("12345")),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn rejects_bad_permutations() {
        assert!(Permutation::new(vec![1, 1, 2]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![1, 3]).is_err());
        assert!(KSequence::new(5, vec![1]).is_err());
        assert!(KSequence::new(3, vec![1, 4]).is_err());
        assert!(PermutationArray::new(4, vec![perm("123")]).is_err());
    }

    #[test]
    fn enumerates_symmetric_group() {
        let all: Vec<_> = Permutation::all(3).map(|p| p.compact()).collect();
        assert_eq!(all, ["123", "132", "213", "231", "312", "321"]);
        assert_eq!(Permutation::all(5).count(), 120);
        assert_eq!(Permutation::all(1).count(), 1);
    }

    #[test]
    fn compose_right_reproduces_worked_example() {
        let x =
            PermutationArray::from_digit_strings(5, &["12345", "43215", "35214", "14523", "25413", "53412"]).unwrap();
        let xs = compose_right(&x, &perm("13254")).unwrap();
        let got: Vec<_> = xs.perms().iter().map(|p| p.compact()).collect();
        assert_eq!(got, ["13254", "52314", "24315", "15432", "34512", "42513"]);
    }

    #[test]
    fn compose_right_small_cases() {
        let x = PermutationArray::from_digit_strings(3, &["213"]).unwrap();
        let y = compose_right(&x, &perm("321")).unwrap();
        assert_eq!(y.perms()[0].compact(), "231");
        assert_eq!(compose_right(&x, &Permutation::identity(3)).unwrap(), x);
        assert!(compose_right(&x, &perm("1234")).is_err());
    }

    #[test]
    fn compose_then_inverse_restores() {
        let x = PermutationArray::symmetric_group(4);
        let s = perm("3142");
        let back = compose_right(&compose_right(&x, &s).unwrap(), &s.inverse()).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn relabel_examples() {
        let x = PermutationArray::from_digit_strings(3, &["123"]).unwrap();
        assert_eq!(relabel(&x, &perm("231")).unwrap().perms()[0].compact(), "231");
        assert_eq!(relabel(&x, &Permutation::identity(3)).unwrap(), x);
    }

    #[test]
    fn restrict_drops_large_symbols() {
        assert_eq!(perm("492573681").restrict(5).compact(), "42531");
        let x = PermutationArray::symmetric_group(3).restrict(2).unwrap();
        assert_eq!(x.n(), 2);
        assert_eq!(x.len(), 6);
    }
}
