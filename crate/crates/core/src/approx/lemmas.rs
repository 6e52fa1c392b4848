use std::time::Instant;

use fixedbitset::FixedBitSet;

use crate::approx::sigma_star::Propagation;
use crate::approx::Context;
use crate::error::{Error, Result};
use crate::exact::best_a_response;
use crate::game::{Assignment, ProjectionGame};
use crate::rational::{frac, int, Rational};
use crate::report::{Algorithm, Guarantee, SolveReport};
use crate::stats::InstanceStats;

/// Every A-vertex gets 0; each B-vertex satisfies its lowest-indexed edge.
pub fn satisfy_one_neighbor(game: &ProjectionGame) -> SolveReport {
    let start = Instant::now();
    let a = vec![0; game.a_count()];
    let b = (0..game.b_count())
        .map(|b| game.b_edges(b).first().map_or(0, |&e| game.project(e, 0)))
        .collect();
    let phi = Assignment::new(a, b);
    let satisfied = game.count_satisfied(&phi);
    let covered = (0..game.b_count())
        .filter(|&b| game.degree_b(b) > 0)
        .count();
    SolveReport::new(
        Algorithm::OneNeighbor,
        phi,
        satisfied,
        Guarantee::Edges(int(covered)),
    )
    .timed(start)
}

/// B-vertices take `σ_b^max`; A-vertices then satisfy as many edges as they can.
pub fn greedy_assignment(game: &ProjectionGame) -> SolveReport {
    greedy_with(&Context::new(game))
}

pub(crate) fn greedy_with(ctx: &Context) -> SolveReport {
    let start = Instant::now();
    let game = ctx.game;
    let b = ctx.stats.sigma_b_max.clone();
    let a = best_a_response(game, &b);
    let phi = Assignment::new(a, b);
    let satisfied = game.count_satisfied(&phi);
    let bound = int(game.edge_count()) * ctx.stats.p_bar_max / int(game.sigma_a());
    SolveReport::new(Algorithm::Greedy, phi, satisfied, Guarantee::Edges(bound)).timed(start)
}

fn check_vertex(game: &ProjectionGame, a0: usize) -> Result<()> {
    if a0 >= game.a_count() {
        return Err(Error::InvalidArgument(format!(
            "a0 = {a0} but the game has {} A-vertices",
            game.a_count()
        )));
    }
    Ok(())
}

/// Fixes `a0 := σ`, propagates to `N(a0)`, and satisfies every edge touching `N(a0)`.
pub fn know_your_neighbors(game: &ProjectionGame, a0: usize, sigma: usize) -> Result<SolveReport> {
    check_vertex(game, a0)?;
    kyn_with(&Context::new(game), a0, sigma)
}

pub(crate) fn kyn_with(ctx: &Context, a0: usize, sigma: usize) -> Result<SolveReport> {
    let start = Instant::now();
    let game = ctx.game;
    if !ctx.star().contains(a0, sigma) {
        return Err(Error::NotInSigmaStar { vertex: a0, sigma });
    }
    let prop = Propagation::new(game, &ctx.pre, &ctx.stats, a0, sigma);
    let mut phi = Assignment::zeros(game);
    for (b, t) in prop.forced.iter().enumerate() {
        if let Some(t) = t {
            phi.b[b] = *t;
        }
    }
    for &x in &ctx.stats.two_hop[a0] {
        phi.a[x] = prop
            .first_plausible(x)
            .expect("Σ* keeps plausible sets nonempty");
    }
    let satisfied = game.count_satisfied(&phi);
    let bound = Guarantee::Edges(int(ctx.stats.e_n[a0]));
    Ok(SolveReport::new(Algorithm::KnowYourNeighbors, phi, satisfied, bound).timed(start))
}

/// Steps 3 and 4 shared by both neighbours'-neighbours variants.
fn complete(game: &ProjectionGame, prop: &Propagation, weighted: &[bool]) -> Assignment {
    let kb = game.sigma_b();
    let mut scores = vec![0usize; kb];
    let b: Vec<usize> = (0..game.b_count())
        .map(|b| {
            scores.iter_mut().for_each(|s| *s = 0);
            for &e in game.b_edges(b) {
                let a = game.edge(e).0;
                if weighted[a] {
                    let set = prop.plausible[a]
                        .as_ref()
                        .expect("weighted vertices are two-hop");
                    set.ones().for_each(|s| scores[game.project(e, s)] += 1);
                }
            }
            first_max(&scores)
        })
        .collect();
    let full = {
        let mut all = FixedBitSet::with_capacity(game.sigma_a());
        all.insert_range(..);
        all
    };
    let mut counts = vec![0usize; game.sigma_a()];
    let a = (0..game.a_count())
        .map(|a| {
            let set = prop.plausible[a].as_ref().unwrap_or(&full);
            counts.iter_mut().for_each(|c| *c = 0);
            for &e in game.a_edges(a) {
                let target = b[game.edge(e).1];
                set.ones()
                    .filter(|&s| game.project(e, s) == target)
                    .for_each(|s| counts[s] += 1);
            }
            let mut best: Option<usize> = None;
            for s in set.ones() {
                if best.is_none_or(|t| counts[s] > counts[t]) {
                    best = Some(s);
                }
            }
            best.unwrap_or(0)
        })
        .collect();
    Assignment::new(a, b)
}

fn fallback(game: &ProjectionGame) -> (Assignment, usize) {
    let phi = Assignment::zeros(game);
    let value = game.count_satisfied(&phi);
    (phi, value)
}

fn first_max(values: &[usize]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = i;
        }
    }
    best
}

/// Runs the good-edge neighbours'-neighbours procedure for every `σ ∈ Σ*_A(a0)` and keeps the best.
/// The guarantee is `max_σ h*(a0, σ) / (2·p̄^max)` over the tried symbols.
pub fn know_neighbors_neighbors(game: &ProjectionGame, a0: usize) -> Result<SolveReport> {
    check_vertex(game, a0)?;
    Ok(kynn_with(&Context::new(game), a0))
}

pub(crate) fn kynn_with(ctx: &Context, a0: usize) -> SolveReport {
    let start = Instant::now();
    let game = ctx.game;
    let mut best: Option<(Assignment, usize)> = None;
    let mut bound = int(0);
    for entry in &ctx.star().entries[a0] {
        let prop = Propagation::new(game, &ctx.pre, &ctx.stats, a0, entry.sigma);
        let mut weighted = vec![false; game.a_count()];
        entry.n2_star.iter().for_each(|&x| weighted[x] = true);
        let phi = complete(game, &prop, &weighted);
        let value = game.count_satisfied(&phi);
        if best.as_ref().is_none_or(|(_, v)| value > *v) {
            best = Some((phi, value));
        }
        if ctx.stats.p_bar_max > int(0) {
            bound = bound.max(frac(entry.h_star, 1) / (ctx.stats.p_bar_max * 2));
        }
    }
    let (phi, value) = best.unwrap_or_else(|| fallback(game));
    SolveReport::new(
        Algorithm::KnowNeighborsNeighbors,
        phi,
        value,
        Guarantee::Edges(bound),
    )
    .timed(start)
}

pub(crate) fn require_uniform(stats: &InstanceStats) -> Result<usize> {
    match stats.uniform_p {
        Some(p) if p > 0 => Ok(p),
        _ => Err(Error::UniformAssumptionViolated),
    }
}

/// Uniform-preimage variant: tries every `σ ∈ Σ_A`, skipping those that empty some plausible set,
/// and weights all of `N_2(a0)`. Guarantee `h(a0)/p`.
pub fn know_neighbors_neighbors_uniform(game: &ProjectionGame, a0: usize) -> Result<SolveReport> {
    check_vertex(game, a0)?;
    let start = Instant::now();
    let ctx = Context::new(game);
    let p = require_uniform(&ctx.stats)?;
    let mut weighted = vec![false; game.a_count()];
    ctx.stats.two_hop[a0]
        .iter()
        .for_each(|&x| weighted[x] = true);
    let mut best: Option<(Assignment, usize)> = None;
    for sigma in 0..game.sigma_a() {
        let prop = Propagation::new(game, &ctx.pre, &ctx.stats, a0, sigma);
        if prop
            .plausible
            .iter()
            .flatten()
            .any(|s| s.count_ones(..) == 0)
        {
            continue;
        }
        let phi = complete(game, &prop, &weighted);
        let value = game.count_satisfied(&phi);
        if best.as_ref().is_none_or(|(_, v)| value > *v) {
            best = Some((phi, value));
        }
    }
    let (phi, value) = best.unwrap_or_else(|| fallback(game));
    let bound: Rational = frac(ctx.stats.h[a0], p);
    Ok(SolveReport::new(
        Algorithm::KnowNeighborsNeighborsUniform,
        phi,
        value,
        Guarantee::Edges(bound),
    )
    .timed(start))
}
