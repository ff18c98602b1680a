//! Family specifications and parameter validation for the implemented
//! families, plus the dispatching constructors.

pub mod cartan;
pub mod classical;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::superalgebra::SuperAlgebra;

pub use cartan::{build_cartan, cartan_basis};
pub use classical::{build_classical, build_classical_model, MatrixModel, MatrixSuperElement};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum ClassicalFamily {
    Gl,
    A,
    B,
    C,
    D,
    P,
    Q,
}

/// A classical-family instance. `m` is unused (zero) for the one-parameter
/// families C, P, Q.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: ClassicalFamily,
    pub m: usize,
    pub n: usize,
}

impl FamilySpec {
    pub fn gl(m: usize, n: usize) -> Self {
        FamilySpec { family: ClassicalFamily::Gl, m, n }
    }
    pub fn a(m: usize, n: usize) -> Self {
        FamilySpec { family: ClassicalFamily::A, m, n }
    }
    pub fn b(m: usize, n: usize) -> Self {
        FamilySpec { family: ClassicalFamily::B, m, n }
    }
    pub fn c(n: usize) -> Self {
        FamilySpec { family: ClassicalFamily::C, m: 0, n }
    }
    pub fn d(m: usize, n: usize) -> Self {
        FamilySpec { family: ClassicalFamily::D, m, n }
    }
    pub fn p(n: usize) -> Self {
        FamilySpec { family: ClassicalFamily::P, m: 0, n }
    }
    pub fn q(n: usize) -> Self {
        FamilySpec { family: ClassicalFamily::Q, m: 0, n }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::BadParameters(msg.to_string()));
        match self.family {
            ClassicalFamily::Gl => {
                if self.m + self.n == 0 {
                    return bad("gl(m|n) requires m + n >= 1");
                }
            }
            ClassicalFamily::A => {
                if self.m == self.n && self.n == 0 {
                    return bad("A(n,n) requires n >= 1");
                }
            }
            ClassicalFamily::B => {
                if self.n == 0 {
                    return bad("B(m,n) requires m >= 0, n > 0");
                }
            }
            ClassicalFamily::C => {
                if self.n < 2 {
                    return bad("C(n) requires n >= 2");
                }
            }
            ClassicalFamily::D => {
                if self.m < 2 || self.n == 0 {
                    return bad("D(m,n) requires m >= 2, n > 0");
                }
            }
            ClassicalFamily::P => {
                if self.n < 2 {
                    return bad("P(n) requires n >= 2");
                }
            }
            ClassicalFamily::Q => {
                if self.n < 2 {
                    return bad("Q(n) requires n >= 2");
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            ClassicalFamily::Gl => write!(f, "gl({}|{})", self.m, self.n),
            ClassicalFamily::A => write!(f, "A({},{})", self.m, self.n),
            ClassicalFamily::B => write!(f, "B({},{})", self.m, self.n),
            ClassicalFamily::C => write!(f, "C({})", self.n),
            ClassicalFamily::D => write!(f, "D({},{})", self.m, self.n),
            ClassicalFamily::P => write!(f, "P({})", self.n),
            ClassicalFamily::Q => write!(f, "Q({})", self.n),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum CartanFamily {
    W,
    S,
    Stilde,
    H,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CartanSpec {
    pub family: CartanFamily,
    /// Number of Grassmann generators (2m for S-tilde).
    pub n: usize,
}

impl CartanSpec {
    pub fn w(n: usize) -> Self {
        CartanSpec { family: CartanFamily::W, n }
    }
    pub fn s(n: usize) -> Self {
        CartanSpec { family: CartanFamily::S, n }
    }
    pub fn stilde(n: usize) -> Self {
        CartanSpec { family: CartanFamily::Stilde, n }
    }
    pub fn h(n: usize) -> Self {
        CartanSpec { family: CartanFamily::H, n }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::BadParameters(msg.to_string()));
        match self.family {
            CartanFamily::W => {
                if self.n < 3 {
                    return bad("W(n) requires n >= 3");
                }
            }
            CartanFamily::S => {
                if self.n < 4 {
                    return bad("S(n) requires n >= 4");
                }
            }
            CartanFamily::Stilde => {
                if self.n < 4 || self.n % 2 != 0 {
                    return bad("S~(2m) requires even arity 2m with m >= 2");
                }
            }
            CartanFamily::H => {
                if self.n < 5 {
                    return bad("H(n) requires n >= 5");
                }
            }
        }
        Ok(())
    }

    /// Height s of the grading.
    pub fn height(&self) -> i64 {
        let n = self.n as i64;
        match self.family {
            CartanFamily::W => n - 1,
            CartanFamily::S | CartanFamily::Stilde => n - 2,
            CartanFamily::H => n - 3,
        }
    }
}

impl fmt::Display for CartanSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            CartanFamily::W => write!(f, "W({})", self.n),
            CartanFamily::S => write!(f, "S({})", self.n),
            CartanFamily::Stilde => write!(f, "S~({})", self.n),
            CartanFamily::H => write!(f, "H({})", self.n),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum AnyFamily {
    Classical(FamilySpec),
    Cartan(CartanSpec),
}

impl fmt::Display for AnyFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyFamily::Classical(s) => s.fmt(f),
            AnyFamily::Cartan(s) => s.fmt(f),
        }
    }
}

impl AnyFamily {
    /// Families whose odd weight spaces are not all one-dimensional:
    /// A(1,1), Q(n), P(3).
    pub fn has_fat_odd_weight_spaces(&self) -> bool {
        match self {
            AnyFamily::Classical(s) => match s.family {
                ClassicalFamily::A => s.m == 1 && s.n == 1,
                ClassicalFamily::Q => true,
                ClassicalFamily::P => s.n == 3,
                _ => false,
            },
            AnyFamily::Cartan(_) => false,
        }
    }
}

/// Build any implemented family.
pub fn build_any(family: AnyFamily) -> Result<SuperAlgebra> {
    match family {
        AnyFamily::Classical(spec) => classical::build_classical(spec),
        AnyFamily::Cartan(spec) => cartan::build_cartan(spec),
    }
}
