//! Hierarchical structure over artists from sales correlations: pairwise
//! Pearson correlation, the distance `sqrt(2 (1 - rho))`, a minimum spanning
//! tree and a single-linkage dendrogram.

mod correlation;
mod tree;

pub use correlation::{correlation_distance, correlation_matrix, CorrelationMatrix, DistanceMatrix};
pub use tree::{minimum_spanning_tree, single_linkage_dendrogram, CorrelationTree, TreeEdge, TreeKind};
