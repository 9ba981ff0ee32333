//! Finite affine planes of prime-power order, as resolutions of `[q^2]` into
//! `q + 1` parallel classes.

use std::fmt::Write as _;

use crate::combin::prime_power;
use crate::error::{input_err, Result};
use crate::gf::FiniteField;
use crate::perm::Symbol;

/// Largest plane order; points must fit in a [`Symbol`].
pub const MAX_PLANE_ORDER: u64 = 128;

/// `q + 1` partitions of `[q^2]` into `q` blocks of `q`, any two points
/// sharing a block in exactly one partition. Blocks are stored in increasing
/// order, which is the fixed total order the squaring construction uses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffinePlane {
    order: usize,
    classes: Vec<Vec<Vec<Symbol>>>,
}

impl AffinePlane {
    /// Wraps explicit classes after checking both plane invariants.
    pub fn from_classes(order: usize, mut classes: Vec<Vec<Vec<Symbol>>>) -> Result<Self> {
        for class in &mut classes {
            for block in class.iter_mut() {
                block.sort_unstable();
            }
        }
        let plane = Self { order, classes };
        plane.validate()?;
        Ok(plane)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn points(&self) -> usize {
        self.order * self.order
    }

    pub fn classes(&self) -> &[Vec<Vec<Symbol>>] {
        &self.classes
    }

    /// Block `j` of class `i`, both 1-based.
    pub fn block(&self, i: usize, j: usize) -> &[Symbol] {
        &self.classes[i - 1][j - 1]
    }

    /// Checks the partition property of each class and that every pair of
    /// points shares a block in exactly one class.
    pub fn validate(&self) -> Result<()> {
        let q = self.order;
        let pts = q * q;
        if q < 2 {
            return input_err(format!("plane order {q} below 2"));
        }
        if self.classes.len() != q + 1 {
            return input_err(format!("{} classes, expected {}", self.classes.len(), q + 1));
        }
        // a pair seen twice is the only possible failure once every class is
        // a partition into q blocks of q: the class sizes then account for
        // exactly C(q^2, 2) pair incidences
        let mut seen_pair = vec![0u64; (pts * (pts - 1) / 2).div_ceil(64)];
        for (i, class) in self.classes.iter().enumerate() {
            if class.len() != q {
                return input_err(format!("class {} has {} blocks, expected {q}", i + 1, class.len()));
            }
            let mut seen = vec![false; pts + 1];
            for block in class {
                if block.len() != q {
                    return input_err(format!("class {} has a block of size {}", i + 1, block.len()));
                }
                for &a in block {
                    let a = a as usize;
                    if a == 0 || a > pts || seen[a] {
                        return input_err(format!("class {} is not a partition of [{pts}] (point {a})", i + 1));
                    }
                    seen[a] = true;
                }
                for (x, &a) in block.iter().enumerate() {
                    for &b in &block[x + 1..] {
                        let (lo, hi) = (a.min(b) as usize - 1, a.max(b) as usize - 1);
                        let idx = hi * (hi - 1) / 2 + lo;
                        let (word, bit) = (idx / 64, 1u64 << (idx % 64));
                        if seen_pair[word] & bit != 0 {
                            return input_err(format!("points {a} and {b} share a block in more than one class"));
                        }
                        seen_pair[word] |= bit;
                    }
                }
            }
        }
        Ok(())
    }

    /// One line per block: `class=<i> block=<j>: a1 a2 ... an`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (i, class) in self.classes.iter().enumerate() {
            for (j, block) in class.iter().enumerate() {
                let pts: Vec<String> = block.iter().map(|a| a.to_string()).collect();
                writeln!(out, "class={} block={}: {}", i + 1, j + 1, pts.join(" ")).unwrap();
            }
        }
        out
    }
}

/// The plane `AG(2, q)`. Point `(x, y)` is numbered `1 + x q + y` using field
/// encodings; the slope classes `y = m x + b` come first in order of `m`, the
/// vertical class `x = c` last, and blocks within a class are ordered by
/// intercept.
pub fn affine_plane(q: u64) -> Result<AffinePlane> {
    let Some((p, e)) = prime_power(q) else {
        return input_err(format!("plane order {q} is not a prime power"));
    };
    if q > MAX_PLANE_ORDER {
        return input_err(format!("plane order {q} above the cap {MAX_PLANE_ORDER}"));
    }
    let field = FiniteField::new(p, e)?;
    let point = |x: u32, y: u32| (1 + x as u64 * q + y as u64) as Symbol;
    let mut classes = Vec::with_capacity(q as usize + 1);
    for m in field.elements() {
        let class = field
            .elements()
            .map(|b| {
                field
                    .elements()
                    .map(|x| point(x, field.add(field.mul(m, x), b)))
                    .collect()
            })
            .collect();
        classes.push(class);
    }
    classes.push(
        field
            .elements()
            .map(|c| field.elements().map(|y| point(c, y)).collect())
            .collect(),
    );
    AffinePlane::from_classes(q as usize, classes)
}

/// The order-3 plane exactly as the worked squaring example lists it.
pub fn canned_plane_order3() -> AffinePlane {
    let lit = [
        [[1, 2, 3], [4, 5, 6], [7, 8, 9]],
        [[1, 4, 7], [2, 5, 8], [3, 6, 9]],
        [[1, 5, 9], [2, 6, 7], [3, 4, 8]],
        [[1, 6, 8], [2, 4, 9], [3, 5, 7]],
    ];
    let classes = lit.iter().map(|c| c.iter().map(|b| b.to_vec()).collect()).collect();
    AffinePlane::from_classes(3, classes).expect("literal plane is valid")
}
