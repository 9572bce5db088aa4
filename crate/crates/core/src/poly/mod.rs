//! Sparse multivariate polynomials and rational functions over Q(ζ₈).

mod mpoly;
mod parse;
mod ratfunc;
pub mod vars;

pub use mpoly::{MPoly, Monomial};
pub use parse::parse_expr;
pub use ratfunc::{
    jacobian_det2, laurent_monomial, poly_substitute, ratfunc_eq, Assignment, RatFunc, DEFAULT_DEGREE_CAP,
};
pub use vars::{Role, Var, VarTable};
