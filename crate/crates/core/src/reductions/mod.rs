//! Instance sources: the 3-colouring and Matrix Tiling reductions and seeded generators.

mod coloring;
mod generators;
mod tiling;

pub use coloring::{
    coloring_assignment, extract_coloring, from_planar_3col, ColoringExtraction, ColoringGraph,
    ColoringReduction, COLOR_PAIRS,
};
pub use generators::{
    gen_matrix_tiling, gen_planar_graph, gen_planar_grid, gen_random_satisfiable, gen_smooth,
    SMOOTH_REJECTION_CAP,
};
pub use tiling::{
    brute_force_tiling, decode_pair, encode_pair, extract_tiling, from_matrix_tiling,
    tiling_assignment, MatrixTiling, TilingReduction, TilingSolution,
};
