//! Exact integer linear algebra on sparse matrices.

mod int;
mod rank;
mod smith;
mod sparse;

pub use rank::{rank_mod_p, rank_over_q};
pub(crate) use smith::group_from;
pub use smith::{homology_group, smith_normal_form, AbelianGroup, SmithForm};
pub use sparse::SparseIntMatrix;
