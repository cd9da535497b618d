//! Hyperedge indexing, vertex permutations and their induced action on
//! variables, group specifications, and placement enumeration.

mod abelian;
mod group;
pub mod indexer;
mod perm;
mod placement;

pub use abelian::{abelian_relabel, AbelianLabeling};
pub use group::{all_permutations, invariant_under, is_invariant, GroupAction, GroupSpec};
pub use indexer::{binomial, EdgeKind, VarIndexer};
pub use perm::{apply_perm, IndexPermuter, VarPerm, VertexPerm};
pub use placement::{Layout, Placement, PlacementConstraint, Role, RoleMap, SlotGroup, FREE};
