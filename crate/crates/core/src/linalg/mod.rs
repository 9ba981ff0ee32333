//! Exact linear algebra over the integers and prime fields: incidence and
//! Gram matrices of permutation arrays, set-inclusion matrices, and the
//! bound calculators built on their ranks.

pub mod bounds;
pub mod elim;
pub mod matrix;
pub mod seqmat;
pub mod sets;

pub use bounds::{bound_report, lambda_r, lower_bound_g, upper_bound_g, upper_bound_g3, Bound, BoundReport, G3Upper};
pub use elim::{det_exact, rank_exact, rank_mod_p};
pub use matrix::{gram, IntMatrix, Label};
pub use seqmat::{c_star, c_star_from_array, c_star_labels, gram_of, incidence_matrix, incidence_matrix_capped};
pub use sets::{inclusion_matrix, subsets_colex, wilson_lower, wilson_rank};
