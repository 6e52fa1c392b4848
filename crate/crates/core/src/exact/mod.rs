//! Ground-truth solvers: exhaustive search and tree-decomposition dynamic programming.

mod brute;
mod decomposition;
mod dp;

pub(crate) use brute::best_a_response;
pub use brute::{brute_force_opt, enumeration_size};
pub use decomposition::{
    decomposition_from_order, edge_net_counts, exact_decomposition, heuristic_decomposition,
    min_fill_order, primal_graph, validate_decomposition, TreeDecomposition, Violation,
};
pub use dp::{tree_dp, tree_dp_solve, DpSolution};
