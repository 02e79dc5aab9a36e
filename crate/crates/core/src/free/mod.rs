//! The free dendriform algebra over a dimonoid on decorated planar binary
//! trees.

mod carrier;
mod expr;
mod tree;

pub use carrier::{tree_vector, FreeDendCarrier};
pub use expr::{eval_expr, pair_op};
pub use tree::{parse_tree, random_tree, random_tree_seeded, Node, Tree, TreeDisplay};
