//! Polynomial-time approximation algorithms for satisfiable projection games.
//!
//! Five procedures each carry an explicit lower bound on the number of satisfied
//! edges; [`best_of`] runs all five and keeps the best assignment. On a satisfiable
//! instance the result satisfies at least `|E| / (4·(n_A·|Σ_A|)^{1/4})` edges, see
//! [`composite_bound_met`].

mod dnc;
mod lemmas;
mod sigma_star;

use std::cell::OnceCell;
use std::time::Instant;

pub use dnc::{divide_and_conquer, divide_and_conquer_uniform};
pub use lemmas::{
    greedy_assignment, know_neighbors_neighbors, know_neighbors_neighbors_uniform,
    know_your_neighbors, satisfy_one_neighbor,
};
pub use sigma_star::{
    compute_sigma_star, compute_sigma_star_with, in_sigma_star, SigmaStarCache, SigmaStarEntry,
};

use crate::game::{Assignment, ProjectionGame};
use crate::report::{Algorithm, AlgorithmRun, Guarantee, SolveReport};
use crate::stats::{compute_stats_with, InstanceStats, Preimages};

/// Shared derived data for one game; `Σ*` is computed on first use.
pub(crate) struct Context<'g> {
    pub game: &'g ProjectionGame,
    pub pre: Preimages,
    pub stats: InstanceStats,
    star: OnceCell<SigmaStarCache>,
}

impl<'g> Context<'g> {
    pub fn new(game: &'g ProjectionGame) -> Self {
        let pre = Preimages::new(game);
        let stats = compute_stats_with(game, &pre);
        Context {
            game,
            pre,
            stats,
            star: OnceCell::new(),
        }
    }

    pub fn star(&self) -> &SigmaStarCache {
        self.star
            .get_or_init(|| compute_sigma_star_with(self.game, &self.pre, &self.stats))
    }
}

/// `satisfied ≥ |E| / (4·(n_A·|Σ_A|)^{1/4})`, checked as `(4·satisfied)^4 · n_A · |Σ_A| ≥ |E|^4`.
///
/// `n_A` counts A-vertices with at least one edge.
pub fn composite_bound_met(game: &ProjectionGame, satisfied: usize) -> bool {
    let (n_a, _) = dnc::active_counts(game);
    let lhs = (4 * satisfied as u128).pow(4) * (n_a * game.sigma_a()) as u128;
    lhs >= (game.edge_count() as u128).pow(4)
}

/// Runs the five algorithms and returns the assignment with the most satisfied edges
/// (earliest algorithm on ties). The guarantee is the largest of the five lemma bounds.
pub fn best_of(game: &ProjectionGame) -> SolveReport {
    let start = Instant::now();
    let ctx = Context::new(game);
    let mut runs = vec![satisfy_one_neighbor(game), lemmas::greedy_with(&ctx)];
    if let Some(a0) = ctx.stats.e_n_argmax {
        if let Some(first) = ctx.star().entries[a0].first() {
            runs.push(lemmas::kyn_with(&ctx, a0, first.sigma).expect("symbol taken from Σ*"));
        }
    }
    if let Some((a0, _)) = ctx.star().h_star_argmax {
        runs.push(lemmas::kynn_with(&ctx, a0));
    }
    runs.push(dnc::dnc_with(&ctx));

    let breakdown: Vec<AlgorithmRun> = runs
        .iter()
        .map(|r| AlgorithmRun {
            algorithm: r.algorithm,
            satisfied: r.satisfied,
            guarantee: r.guarantee.clone(),
        })
        .collect();
    let bound = runs
        .iter()
        .filter_map(|r| match &r.guarantee {
            Guarantee::Edges(x) => Some(*x),
            _ => None,
        })
        .max()
        .unwrap_or_default();
    let mut winner = 0;
    for (i, r) in runs.iter().enumerate() {
        if r.satisfied > runs[winner].satisfied {
            winner = i;
        }
    }
    let chosen = runs.swap_remove(winner);
    let mut report = SolveReport::new(
        Algorithm::BestOf,
        chosen.assignment,
        chosen.satisfied,
        Guarantee::Edges(bound),
    );
    report.winner = Some(chosen.algorithm);
    report.breakdown = breakdown;
    report.timed(start)
}

/// The assignment from a report after checking its value against the game.
pub fn verified(game: &ProjectionGame, report: &SolveReport) -> Option<Assignment> {
    (game.count_satisfied(&report.assignment) == report.satisfied)
        .then(|| report.assignment.clone())
}
