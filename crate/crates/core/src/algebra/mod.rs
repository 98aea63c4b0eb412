//! Exact integer linear algebra: boundary matrices, Smith normal form,
//! homology ranks and torsion, and closed-surface diagnostics.

mod homology;
mod matrix;
mod snf;
mod surface;

pub use homology::{boundary_matrices, homology_summary, HomologySummary};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, SnfResult};
pub use surface::{surface_summary, vertex_link, SurfaceSummary};
