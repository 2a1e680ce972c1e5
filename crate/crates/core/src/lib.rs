//! Cubical sets with connections and the homotopy theory of graphs.

pub mod coherent;
pub mod cset;
pub mod cube;
pub mod dmsl;
pub mod error;
pub mod geom;
pub mod graphs;
pub mod homology;
pub mod json;
pub mod simplicial;
pub mod exec;
pub mod enriched;
pub mod report;

pub use error::{Error, Result};
pub use exec::{Config, Exec};
pub use report::{Check, Verdict};
