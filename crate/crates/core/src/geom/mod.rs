//! The geometric product, internal hom, triangulation and bicubical sets.

mod bicubical;
mod hom;
mod singular;
mod tensor;
mod triangulate;

pub use bicubical::{
    diagonal, diagonal_of, BicubicalModel, BicubicalSet, Constant, DiscreteRows, ExternalProduct,
};
pub use hom::{associator, curry, internal_hom, representable_product_map, InternalHom};
pub use singular::{monoidal_comparison, singular_cubes, SingularCubes};
pub use tensor::{tensor, TensorCube, TensorProduct};
pub use triangulate::{triangulate, triangulate_with, Triangulation};
