//! Baker-style edge partition and the PTAS for planar projection games.

use std::collections::VecDeque;
use std::time::Instant;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    exact_decomposition, heuristic_decomposition, tree_dp, validate_decomposition,
    TreeDecomposition,
};
use crate::game::{Assignment, ProjectionGame};
use crate::rational::{ceil, int, Rational};
use crate::report::{Algorithm, Guarantee, SolveReport};

/// Residual graphs with at most this many vertices get a minimum-width decomposition.
pub const EXACT_WIDTH_LIMIT: usize = 12;

#[derive(Debug, Clone)]
pub struct BakerPartition {
    pub h: usize,
    /// `classes[i]` lists the edges of class `S_{i+1}`, increasing.
    pub classes: Vec<Vec<usize>>,
    /// BFS level of every vertex (A first, then B), measured within its component.
    pub levels: Vec<usize>,
    /// `decompositions[i]` is a valid decomposition of `(V, E − S_{i+1})`.
    pub decompositions: Vec<TreeDecomposition>,
}

/// BFS levels over the primal graph; each component is explored from its smallest vertex.
pub fn bfs_levels(game: &ProjectionGame) -> Vec<usize> {
    let n_a = game.a_count();
    let n = game.vertex_count();
    let mut level = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        if level[root] != usize::MAX {
            continue;
        }
        level[root] = 0;
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            let edges = if v < n_a {
                game.a_edges(v)
            } else {
                game.b_edges(v - n_a)
            };
            for &e in edges {
                let (a, b) = game.edge(e);
                let u = if v < n_a { n_a + b } else { a };
                if level[u] == usize::MAX {
                    level[u] = level[v] + 1;
                    queue.push_back(u);
                }
            }
        }
    }
    level
}

/// The game on the same vertices without the edges of one class.
pub fn residual_game(game: &ProjectionGame, removed: &[usize]) -> ProjectionGame {
    let mut drop = vec![false; game.edge_count()];
    removed.iter().for_each(|&e| drop[e] = true);
    game.restrict_edges(|e| !drop[e]).0
}

fn decompose(game: &ProjectionGame) -> TreeDecomposition {
    exact_decomposition(game, EXACT_WIDTH_LIMIT).unwrap_or_else(|| heuristic_decomposition(game))
}

/// Splits the edges into `h` classes by the BFS level of their lower endpoint modulo `h`
/// and decomposes each residual graph.
pub fn baker_partition(game: &ProjectionGame, h: usize) -> Result<BakerPartition> {
    if h == 0 {
        return Err(Error::InvalidArgument("h must be at least 1".into()));
    }
    let levels = bfs_levels(game);
    let n_a = game.a_count();
    let mut classes = vec![Vec::new(); h];
    for (e, &(a, b)) in game.edges().iter().enumerate() {
        let low = levels[a].min(levels[n_a + b]);
        classes[low % h].push(e);
    }
    let decompositions = classes
        .iter()
        .map(|class| {
            let residual = residual_game(game, class);
            let td = decompose(&residual);
            debug_assert!(validate_decomposition(&residual, &td).is_empty());
            td
        })
        .collect();
    Ok(BakerPartition {
        h,
        classes,
        levels,
        decompositions,
    })
}

/// `|E| ≤ 3n − 6` for `n ≥ 3` vertices; `Err` carries `(edges, bound)` when violated.
pub fn planarity_sanity_check(game: &ProjectionGame) -> std::result::Result<(), (usize, usize)> {
    let n = game.vertex_count();
    if n >= 3 && game.edge_count() > 3 * n - 6 {
        Err((game.edge_count(), 3 * n - 6))
    } else {
        Ok(())
    }
}

/// `⌈1 + 1/ε⌉`.
pub fn thinning_parameter(epsilon: Rational) -> usize {
    ceil(&(Rational::one() + epsilon.recip())) as usize
}

#[derive(Debug, Clone, Default)]
pub struct PtasOptions {
    /// Run even when the Euler edge bound fails.
    pub force_nonplanar: bool,
    /// Use this `h` instead of `⌈1 + 1/ε⌉`.
    pub h_override: Option<usize>,
    /// Cap on DP states per residual solve.
    pub state_cap: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct PtasRun {
    pub report: SolveReport,
    pub h: usize,
    /// Full-game value of each residual optimum.
    pub class_values: Vec<usize>,
    /// Width of each residual decomposition.
    pub widths: Vec<usize>,
    /// Index of the class whose removal gave the returned assignment.
    pub chosen_class: usize,
}

/// Solves every residual game exactly and keeps the best assignment measured on all edges;
/// satisfies at least `(1 − 1/h)·OPT`.
pub fn ptas(game: &ProjectionGame, epsilon: Rational, options: &PtasOptions) -> Result<PtasRun> {
    let start = Instant::now();
    if epsilon.is_zero() || epsilon > Rational::one() {
        return Err(Error::InvalidArgument("ε must lie in (0, 1]".into()));
    }
    if !options.force_nonplanar {
        if let Err((edges, bound)) = planarity_sanity_check(game) {
            return Err(Error::PlanarityCheckFailed { edges, bound });
        }
    }
    let h = options
        .h_override
        .unwrap_or_else(|| thinning_parameter(epsilon));
    let partition = baker_partition(game, h)?;
    let mut best: Option<(Assignment, usize, usize)> = None;
    let mut class_values = Vec::with_capacity(h);
    for (i, class) in partition.classes.iter().enumerate() {
        let residual = residual_game(game, class);
        let solution = tree_dp(&residual, &partition.decompositions[i], options.state_cap)?;
        let value = game.count_satisfied(&solution.assignment);
        class_values.push(value);
        if best.as_ref().is_none_or(|(_, v, _)| value > *v) {
            best = Some((solution.assignment, value, i));
        }
    }
    let (phi, value, chosen_class) = best.expect("h ≥ 1 gives at least one class");
    let fraction = (int(h) - Rational::one()) / int(h);
    let report = SolveReport::new(
        Algorithm::Ptas,
        phi,
        value,
        Guarantee::FractionOfOptimum(fraction),
    )
    .timed(start);
    let widths = partition
        .decompositions
        .iter()
        .map(TreeDecomposition::width)
        .collect();
    Ok(PtasRun {
        report,
        h,
        class_values,
        widths,
        chosen_class,
    })
}
