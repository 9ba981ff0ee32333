//! Plain-text permutation-array format.
//!
//! ```text
//! psca n=5 k=3
//! # comment
//! 1 2 3 4 5
//! 4 3 2 1 5
//! ```
//!
//! `k` is the declared intent of the file, not a verified claim.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::perm::{Permutation, PermutationArray, Symbol};

/// An array together with the `k` its header declares.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrayFile {
    pub k: usize,
    pub array: PermutationArray,
}

fn parse_err<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, msg: msg.into() })
}

fn header_field(line: usize, token: Option<&str>, key: &str) -> Result<usize> {
    let Some(tok) = token else {
        return parse_err(line, format!("header is missing `{key}=`"));
    };
    let Some(v) = tok.strip_prefix(key).and_then(|t| t.strip_prefix('=')) else {
        return parse_err(line, format!("expected `{key}=<int>`, found `{tok}`"));
    };
    v.parse()
        .or_else(|_| parse_err(line, format!("`{v}` is not a nonnegative integer")))
}

pub fn read_array(reader: impl BufRead) -> Result<ArrayFile> {
    let mut header: Option<(usize, usize)> = None;
    let mut perms = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((n, _)) = header else {
            let mut toks = line.split_whitespace();
            if toks.next() != Some("psca") {
                return parse_err(lineno, "expected header `psca n=<n> k=<k>`");
            }
            let n = header_field(lineno, toks.next(), "n")?;
            let k = header_field(lineno, toks.next(), "k")?;
            if let Some(extra) = toks.next() {
                return parse_err(lineno, format!("unexpected `{extra}` in header"));
            }
            if n == 0 || n > crate::perm::MAX_N {
                return parse_err(lineno, format!("n={n} out of range"));
            }
            header = Some((n, k));
            continue;
        };
        let symbols = line
            .split_whitespace()
            .map(|t| t.parse::<Symbol>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .or_else(|_| parse_err(lineno, "permutation entries must be integers"))?;
        if symbols.len() != n {
            return parse_err(lineno, format!("expected {n} symbols, found {}", symbols.len()));
        }
        let perm = Permutation::new(symbols).or_else(|e| parse_err(lineno, e.to_string()))?;
        perms.push(perm);
    }
    let Some((n, k)) = header else {
        return parse_err(0, "empty input: missing header");
    };
    Ok(ArrayFile {
        k,
        array: PermutationArray::new(n, perms)?,
    })
}

pub fn write_array(mut w: impl Write, array: &PermutationArray, k: usize) -> Result<()> {
    writeln!(w, "psca n={} k={k}", array.n())?;
    for p in array.perms() {
        writeln!(w, "{p}")?;
    }
    Ok(())
}

pub fn parse_array(text: &str) -> Result<ArrayFile> {
    read_array(text.as_bytes())
}

pub fn array_to_string(array: &PermutationArray, k: usize) -> String {
    let mut buf = Vec::new();
    write_array(&mut buf, array, k).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("ascii output")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_whitespace() {
        let text = "# leading comment\npsca n=3 k=2\n1 2 3  \n# mid\n\n3 2 1\t\n";
        let f = parse_array(text).unwrap();
        assert_eq!(f.k, 2);
        assert_eq!(f.array.n(), 3);
        assert_eq!(f.array.len(), 2);
        assert_eq!(f.array.perms()[1].compact(), "321");
    }

    #[test]
    fn round_trips() {
        let x = PermutationArray::symmetric_group(4);
        let f = parse_array(&array_to_string(&x, 3)).unwrap();
        assert_eq!(f.array, x);
        assert_eq!(f.k, 3);
    }

    #[test]
    fn reports_line_numbers() {
        let e = parse_array("psca n=3 k=2\n1 2 3\n1 2 2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e}");
        let e = parse_array("psca n=3 k=2\n1 2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
        assert!(parse_array("1 2 3\n").is_err());
        assert!(parse_array("psca n=3\n").is_err());
        assert!(parse_array("psca n=x k=2\n").is_err());
        assert!(parse_array("").is_err());
    }
}
