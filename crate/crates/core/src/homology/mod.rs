//! Integer homology through Smith normal form.

mod chains;
mod cubical;
mod snf;
mod sparse;

pub use chains::{
    cubical_homology, homology_groups, induced_iso_low, ChainComplex, ChainMap, HomologyGroup,
};
pub(crate) use chains::cone_iso_low;
pub use cubical::{cubical_chains, cubical_homology_direct, cubical_iso_low};
pub use snf::{determinant, minor_gcd, smith_normal_form, IntegerMatrix, Snf};
pub use sparse::{invariant_factors, SparseMatrix};
