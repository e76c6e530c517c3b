//! Exact computation with elliptic fibrations over `Q(t)` and with the
//! integral lattices attached to K3 surfaces carrying symplectic
//! automorphisms.
//!
//! Everything is exact: coefficients are arbitrary-precision rationals and
//! lattice work is done in arbitrary-precision integers.

pub mod algebra;
pub mod checks;
pub mod cli;
pub mod error;
pub mod json;
pub mod k3;
pub mod lattice;
pub mod mordell_weil;
pub mod quotients;
pub mod weierstrass;

pub use algebra::{Polynomial, RationalFunction, Rational};
pub use error::{Error, Result};
pub use lattice::IntegralLattice;
pub use weierstrass::{FiberReport, KodairaType, Place, WeierstrassModel};
