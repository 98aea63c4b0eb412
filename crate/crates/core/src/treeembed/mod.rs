//! Embeddings of collapsible 2-complexes into products of two trees, built
//! from staircase discs, and the cellwise verification contract shared with
//! the cone embeddings.

mod induction;
mod staircase;
mod verify;

pub use induction::{embed_in_trees, embed_in_trees_observed, TreeEmbedding};
pub use staircase::{
    normalize_staircase, staircase_disc, DiscItem, EdgePath, Pendant, Segment, StaircaseArc,
    StaircaseDisc,
};
pub use verify::{disc_defect, verify_cellwise_map, CellwiseMap, Verification, Violation};
