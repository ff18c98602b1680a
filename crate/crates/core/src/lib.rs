//! Exact-arithmetic models of finite-dimensional simple Lie superalgebras,
//! together with constructions of two-element generating sets and machinery
//! to certify generation by bracket closure.

pub mod error;
pub mod exactlin;
pub mod genpair;
pub mod grassmann;
pub mod models;
pub mod rootsys;
pub mod serial;
pub mod superalgebra;

pub use error::{Error, Result};
pub use exactlin::{format_scalar, parse_scalar, ExactMatrix, Scalar, SparseEchelon};
pub use genpair::{
    cartan_pair, classical_pair, even_part_pair, homogeneous_pair, theorem_pair, verify_pair,
    GeneratorCertificate, RecipeTag, Verdict,
};
pub use rootsys::{
    balanced, find_separating, simple_roots, split_by_ad, weight_table, BalancedMode,
    RootTable, SeparatingElement,
};
pub use superalgebra::{Parity, StructureReport, Subspace, SuperAlgebra, SuperVector, Weight};
