//! Khovanov homology of oriented link diagrams, Conway mutation of 2-tangles,
//! and the polynomial invariants used to tell mutants apart.

pub mod cube;
pub mod diagram;
pub mod error;
pub mod fixtures;
pub mod invariants;
pub mod tangle;
pub mod zlinalg;

pub use cube::{Bigrading, DEFAULT_CAP};
pub use diagram::{LinkName, PlanarDiagram};
pub use error::{Error, Result};
pub use invariants::{
    khovanov_homology, khovanov_homology_with, poincare_polynomial, v_polynomial, w_polynomial,
    BigradedLaurent, Coefficients, HomologyTable, Laurent, Options,
};
pub use zlinalg::{AbelianGroup, SparseIntMatrix};
