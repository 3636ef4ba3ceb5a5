//! Exact homogeneous polynomial arithmetic over `Q` and prime fields,
//! graded matrices, maximal minors, and the text format for both.

pub mod matrix;
pub mod parse;
pub mod poly;
pub mod scalar;

pub use matrix::{determinant, hilbert_burch_row, matmul, maximal_minors, subsets, GradedMatrix};
pub use parse::{format_matrix, parse_matrix, parse_poly, parse_vars_line};
pub use poly::{monomials_of_degree, HomPoly, Monomial};
pub use scalar::{Domain, Scalar, DEFAULT_PRIME};
