//! Combinatorial topology of generalized manifolds in products of graphs.
//!
//! The crate is `no_std` and needs only `alloc`. Every complex is finite and
//! regular; the common currency between modules is [`FacePoset`].

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod classify;
pub mod collapse;
pub mod coneembed;
pub mod error;
pub mod fibers;
pub mod gallery;
pub mod graph;
pub mod poset;
pub mod product;
pub mod simplicial;
pub mod treeembed;

pub use algebra::{
    boundary_matrices, homology_summary, smith_normal_form, surface_summary, HomologySummary,
    IntMatrix, SnfResult, SurfaceSummary,
};
pub use classify::{classify, ClassificationFlags};
pub use error::{Error, Result};
pub use graph::{graph_profile, Edge, Graph, GraphProfile};
pub use poset::{CellRecord, FacePoset, PosetBuilder};
pub use product::{build_product, Coord, ProductCell, ProductSubcomplex};
pub use simplicial::{SimplicialComplex, Subdivision};
