//! Explicit PSCA catalog and the affine-plane squaring construction.
//!
//! Squaring takes a PSCA(n,3) `X` with multiplicity `lambda` and an affine
//! plane of order `n`, and returns a PSCA(n^2,3) with multiplicity
//! `2(n+1) lambda`. For each parallel class and each `sigma` in `X` it emits
//! two permutations of `[n^2]`: the blocks of the class visited in the order
//! `sigma(1), ..., sigma(n)`, each block written as `a_{sigma(1)}, ...,
//! a_{sigma(n)}` against its increasing order `a_1 < ... < a_n` (the
//! W-element), and the same with every block string reversed (the
//! Z-element).

use rayon::prelude::*;

use crate::combin::factorial;
use crate::coverage::{coverage_table, CoverageOptions};
use crate::error::{input_err, Error, Result};
use crate::perm::{compose_right, Permutation, PermutationArray, Symbol};
use crate::plane::{affine_plane, AffinePlane};

/// A named array with the parameters it is declared to satisfy.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub n: usize,
    pub k: usize,
    /// `None` for entries that are deliberately not perfect.
    pub lambda: Option<u64>,
    pub array: PermutationArray,
}

/// A PSCA(5,4) with multiplicity one.
pub const PSCA_5_4_L1: [&str; 24] = [
    "12345", "12543", "51423", "41523", //
    "13524", "15342", "14325", "54132", //
    "52134", "21453", "24135", "42513", //
    "23514", "25341", "52431", "42315", //
    "53124", "31452", "43512", "34125", //
    "32154", "45321", "32451", "35421",
];

/// Six permutations of `[5]` covering 56 of the 60 triples.
pub const PROP1_X: [&str; 6] = ["12345", "43215", "35214", "14523", "25413", "53412"];

/// The right factor that repairs [`PROP1_X`] into a PSCA(5,3).
pub const PROP1_SIGMA: &str = "13254";

pub const CATALOG_NAMES: [&str; 5] = ["psca_5_4_l1", "psca_5_3_l2", "trivial(n)", "prop1_X", "prop1_Xsigma"];

/// Largest `n` accepted by `trivial(n)`.
pub const MAX_TRIVIAL_N: usize = 10;

fn digit_array(strings: &[&str]) -> PermutationArray {
    PermutationArray::from_digit_strings(5, strings).expect("literal permutations are valid")
}

fn prop1_xsigma() -> PermutationArray {
    let sigma = Permutation::from_digits(PROP1_SIGMA).expect("literal");
    compose_right(&digit_array(&PROP1_X), &sigma).expect("same n")
}

fn parse_trivial(name: &str) -> Option<&str> {
    name.strip_prefix("trivial(")
        .and_then(|s| s.strip_suffix(')'))
        .or_else(|| name.strip_prefix("trivial_"))
        .or_else(|| name.strip_prefix("trivial:"))
}

/// Looks up a catalog entry. `trivial(n)` (also `trivial_n`) is all of
/// `S_n`, declared at `k = n` with multiplicity one.
pub fn catalog(name: &str) -> Result<CatalogEntry> {
    let entry = |n, k, lambda, array| CatalogEntry {
        name: name.to_string(),
        n,
        k,
        lambda,
        array,
    };
    Ok(match name {
        "psca_5_4_l1" => entry(5, 4, Some(1), digit_array(&PSCA_5_4_L1)),
        "prop1_X" => entry(5, 3, None, digit_array(&PROP1_X)),
        "prop1_Xsigma" => entry(5, 3, None, prop1_xsigma()),
        "psca_5_3_l2" => entry(5, 3, Some(2), digit_array(&PROP1_X).union(&prop1_xsigma())?),
        _ => {
            let Some(arg) = parse_trivial(name) else {
                return input_err(format!(
                    "unknown catalog entry `{name}` (known: {})",
                    CATALOG_NAMES.join(", ")
                ));
            };
            let n: usize = arg
                .parse()
                .map_err(|_| Error::Input(format!("`{arg}` is not a size")))?;
            if !(2..=MAX_TRIVIAL_N).contains(&n) {
                return input_err(format!("trivial(n) needs 2 <= n <= {MAX_TRIVIAL_N}"));
            }
            entry(n, n, Some(1), PermutationArray::symmetric_group(n))
        }
    })
}

/// Multiplicity of `S_n` viewed as a PSCA(n,k): `n!/k!`.
pub fn trivial_lambda(n: usize, k: usize) -> Option<u128> {
    Some(factorial(n as u64)? / factorial(k as u64)?)
}

/// Checks that `x` is a PSCA(n,3) and returns its multiplicity.
pub fn check_psca3(x: &PermutationArray, opts: &CoverageOptions) -> Result<u32> {
    let table = coverage_table(x, 3, opts)?;
    let counts = table.counts();
    let lambda = counts[0];
    if let Some(r) = counts.iter().position(|&c| c != lambda) {
        return Err(Error::Precondition(format!(
            "input is not a PSCA({},3): sequence {} is covered {} times but {} is covered {lambda} times",
            x.n(),
            table.space().sequence(r),
            counts[r],
            table.space().sequence(0),
        )));
    }
    if lambda == 0 {
        return Err(Error::Precondition(format!(
            "input is not a PSCA({},3): sequence {} is uncovered",
            x.n(),
            table.space().sequence(0)
        )));
    }
    Ok(lambda)
}

fn block_string(block: &[Symbol], sigma: &Permutation, out: &mut Vec<Symbol>, reverse: bool) {
    let start = out.len();
    out.extend(sigma.symbols().iter().map(|&s| block[s as usize - 1]));
    if reverse {
        out[start..].reverse();
    }
}

/// The W-element (or, with `reverse`, the Z-element) for one class and one
/// `sigma`. `class` is 0-based.
pub fn square_element(plane: &AffinePlane, class: usize, sigma: &Permutation, reverse: bool) -> Permutation {
    let blocks = &plane.classes()[class];
    let mut out = Vec::with_capacity(plane.points());
    for &j in sigma.symbols() {
        block_string(&blocks[j as usize - 1], sigma, &mut out, reverse);
    }
    Permutation::from_vec_unchecked(out)
}

/// The squaring construction. Output order: all W-elements (classes outer,
/// `X` in array order), then all Z-elements in the same order.
pub fn square_construction(
    x: &PermutationArray,
    plane: &AffinePlane,
    precheck: bool,
    opts: &CoverageOptions,
) -> Result<PermutationArray> {
    if plane.order() != x.n() {
        return Err(Error::SizeMismatch {
            expected: plane.order(),
            found: x.n(),
        });
    }
    if x.is_empty() {
        return input_err("squaring needs a nonempty array");
    }
    if precheck {
        check_psca3(x, opts)?;
    }
    let points = plane.points();
    let required = 2 * (plane.order() as u128 + 1) * x.len() as u128 * points as u128 * 2;
    if required > opts.memory_cap {
        return Err(Error::Resource {
            what: format!("squared array over [{points}]"),
            required,
            cap: opts.memory_cap,
        });
    }
    let per_class: Vec<(Vec<Permutation>, Vec<Permutation>)> = (0..plane.classes().len())
        .into_par_iter()
        .map(|i| {
            let w = x.perms().iter().map(|s| square_element(plane, i, s, false)).collect();
            let z = x.perms().iter().map(|s| square_element(plane, i, s, true)).collect();
            (w, z)
        })
        .collect();
    let mut perms = Vec::with_capacity(2 * per_class.len() * x.len());
    let mut zs = Vec::with_capacity(per_class.len() * x.len());
    for (w, z) in per_class {
        perms.extend(w);
        zs.extend(z);
    }
    perms.extend(zs);
    for p in &perms {
        if p.n() != points || Permutation::new(p.symbols().to_vec()).is_err() {
            return Err(Error::Internal(format!("squaring produced a non-permutation: {p}")));
        }
    }
    PermutationArray::new(points, perms)
}

/// Number of permutations [`iterate_to_power`] produces for `r`.
pub fn power_array_len(r: u32) -> Option<u128> {
    match r {
        0 => None,
        1 => Some(6),
        _ if r % 2 == 1 => power_array_len(r + 1),
        _ => {
            let half = r / 2;
            let n = 3u128.checked_pow(half)?;
            (2 * (n + 1)).checked_mul(power_array_len(half)?)
        }
    }
}

/// A PSCA(3^r, 3) of multiplicity `lambda_r`: squaring from `S_3` for even
/// `r`, restriction of the `r + 1` array for odd `r > 1`.
pub fn iterate_to_power(r: u32, opts: &CoverageOptions) -> Result<PermutationArray> {
    if r == 0 {
        return input_err("r must be at least 1");
    }
    let n = 3u128.pow(r.min(40));
    let len = power_array_len(r).unwrap_or(u128::MAX);
    let largest = if r % 2 == 1 && r > 1 { n * 3 } else { n };
    let required = len.saturating_mul(largest).saturating_mul(2);
    if r > 10 || required > opts.memory_cap {
        return Err(Error::Resource {
            what: format!("PSCA(3^{r},3) by squaring"),
            required,
            cap: opts.memory_cap,
        });
    }
    build_power(r, opts)
}

fn build_power(r: u32, opts: &CoverageOptions) -> Result<PermutationArray> {
    if r == 1 {
        return Ok(PermutationArray::symmetric_group(3));
    }
    if r % 2 == 1 {
        let up = build_power(r + 1, opts)?;
        return up.restrict(3usize.pow(r));
    }
    let base = build_power(r / 2, opts)?;
    let plane = affine_plane(3u64.pow(r / 2))?;
    square_construction(&base, &plane, false, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::canned_plane_order3;

    fn opts() -> CoverageOptions {
        CoverageOptions::default()
    }

    #[test]
    fn worked_example_strings() {
        let plane = canned_plane_order3();
        let sigma = Permutation::from_digits("231").unwrap();
        assert_eq!(square_element(&plane, 3, &sigma, false).compact(), "492573681");
        assert_eq!(square_element(&plane, 3, &sigma, true).compact(), "294375186");
    }

    #[test]
    fn catalog_lookup() {
        assert_eq!(catalog("psca_5_4_l1").unwrap().array.len(), 24);
        assert_eq!(catalog("psca_5_3_l2").unwrap().array.len(), 12);
        assert_eq!(catalog("trivial(3)").unwrap().array.len(), 6);
        assert_eq!(catalog("trivial_4").unwrap().array.len(), 24);
        assert!(catalog("nope").is_err());
        assert!(catalog("trivial(1)").is_err());
        assert!(catalog("trivial(x)").is_err());
        assert_eq!(trivial_lambda(5, 3), Some(20));
    }

    #[test]
    fn square_rejects_mismatch_and_imperfect_input() {
        let plane = canned_plane_order3();
        let s4 = PermutationArray::symmetric_group(4);
        assert!(matches!(
            square_construction(&s4, &plane, true, &opts()),
            Err(Error::SizeMismatch { .. })
        ));
        let one = PermutationArray::new(3, vec![Permutation::identity(3)]).unwrap();
        let e = square_construction(&one, &plane, true, &opts()).unwrap_err();
        assert!(matches!(e, Error::Precondition(_)), "{e}");
        assert!(e.to_string().contains("123"));
        // skipping the check builds anyway
        assert_eq!(square_construction(&one, &plane, false, &opts()).unwrap().len(), 8);
    }

    #[test]
    fn power_sizes() {
        assert_eq!(power_array_len(1), Some(6));
        assert_eq!(power_array_len(2), Some(48));
        assert_eq!(power_array_len(3), Some(960));
        assert_eq!(power_array_len(4), Some(960));
        assert!(iterate_to_power(0, &opts()).is_err());
        assert!(matches!(iterate_to_power(9, &opts()), Err(Error::Resource { .. })));
    }

    #[test]
    fn small_powers() {
        let x1 = iterate_to_power(1, &opts()).unwrap();
        assert_eq!((x1.n(), x1.len()), (3, 6));
        let x2 = iterate_to_power(2, &opts()).unwrap();
        assert_eq!((x2.n(), x2.len()), (9, 48));
        assert_eq!(check_psca3(&x2, &opts()).unwrap(), 8);
    }
}
