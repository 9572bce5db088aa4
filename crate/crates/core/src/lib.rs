//! Exact verification of non-semi-symplectic automorphisms of Enriques
//! surfaces: Horikawa-model families, their K3 covers, bi-canonical indices,
//! Lefschetz and lattice arithmetic, and the finite classification of
//! admissible (order, index) pairs.

#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod biform;
pub mod claims;
pub mod cover;
pub mod error;
pub mod field;
pub mod linalg;
pub mod maps;
pub mod moduli;
pub mod poly;
pub mod qaut;
pub mod report;

pub use arith::{admissible_pairs, allowed_orders, GramLattice};
pub use biform::{bitwoform_pullback_ratio, index_of, k3_twoform_ratio, FormRatio};
pub use cover::{family, CoverElement, CoverRelation, FamilyKind, Frame, SurfaceFamily};
pub use error::{Error, Result};
pub use field::{FieldElem, Rational};
pub use maps::{check_equation_invariance, compose, map_order, BirMap};
pub use moduli::{check_parameter_action, moduli_number, ParameterAction};
pub use poly::{MPoly, Monomial, RatFunc, Var, VarTable};
pub use qaut::{qaut_fixed_points, qaut_ns_trace, QAut};
pub use report::{verify_all, Certificate};
