//! Shared fixtures for the criterion benches.

use liegen_core::exactlin::{int, ExactMatrix, Scalar};
use liegen_core::genpair::theorem_pair;
use liegen_core::models::{build_any, AnyFamily, CartanSpec, FamilySpec};
use liegen_core::superalgebra::SuperAlgebra;

pub fn a21() -> SuperAlgebra {
    build_any(AnyFamily::Classical(FamilySpec::a(2, 1))).unwrap()
}

pub fn w4() -> SuperAlgebra {
    build_any(AnyFamily::Cartan(CartanSpec::w(4))).unwrap()
}

pub fn h6() -> SuperAlgebra {
    build_any(AnyFamily::Cartan(CartanSpec::h(6))).unwrap()
}

/// The theorem pair for an already built algebra.
pub fn pair_for(l: &SuperAlgebra) -> (Vec<Scalar>, Vec<Scalar>) {
    let cert = theorem_pair(l).unwrap();
    (cert.x, cert.y)
}

/// A deterministic dense rational matrix for elimination benches.
pub fn dense_matrix(n: usize) -> ExactMatrix {
    let rows: Vec<Vec<Scalar>> = (0..n)
        .map(|i| (0..n).map(|j| int(((i * 31 + j * 17) % 13) as i64 - 6)).collect())
        .collect();
    ExactMatrix::from_rows(rows).unwrap()
}
