//! Resolution conditions, the π₀-shadow of graph localization, and the
//! diagonal identity for cubical sets.

mod graph;
mod resolution;
mod shadow;
#[cfg(test)]
mod tests;

pub use graph::{graph_homotopy_equivalences, graph_obstruction, graph_resolution, GraphDiagram, GraphTest};
pub use resolution::{
    check_resolution, constant_cubes, constant_finite, ConditionReport, Diagram, Obstruction, Predicate,
    ResolutionCandidate, ResolutionReport, WTest, WeakEquivalences,
};
pub use shadow::{diagonal_identity_check, graph_localization_shadow, ShadowReport};
