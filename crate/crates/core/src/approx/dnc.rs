use std::time::Instant;

use crate::approx::lemmas::require_uniform;
use crate::approx::sigma_star::Propagation;
use crate::approx::Context;
use crate::error::Result;
use crate::game::{Assignment, ProjectionGame};
use crate::rational::{int, Rational};
use crate::report::{Algorithm, Guarantee, SolveReport};

/// Vertices that are still outside every collected part, indexed A first then B.
struct Remaining {
    n_a: usize,
    alive: Vec<bool>,
}

impl Remaining {
    fn new(game: &ProjectionGame) -> Self {
        Remaining {
            n_a: game.a_count(),
            alive: vec![true; game.vertex_count()],
        }
    }
    fn a(&self, a: usize) -> bool {
        self.alive[a]
    }
    fn b(&self, b: usize) -> bool {
        self.alive[self.n_a + b]
    }
    fn edge(&self, game: &ProjectionGame, e: usize) -> bool {
        let (a, b) = game.edge(e);
        self.a(a) && self.b(b)
    }
}

/// A- and B-vertices that have at least one edge.
pub(crate) fn active_counts(game: &ProjectionGame) -> (usize, usize) {
    let n_a = (0..game.a_count())
        .filter(|&a| game.degree_a(a) > 0)
        .count();
    let n_b = (0..game.b_count())
        .filter(|&b| game.degree_b(b) > 0)
        .count();
    (n_a, n_b)
}

fn cubic_bound(game: &ProjectionGame, scale: usize, spread: usize) -> Rational {
    let (n_a, n_b) = active_counts(game);
    let m = game.edge_count() as u128;
    let den = (scale * n_a * n_b * spread) as u128;
    if den == 0 {
        int(0)
    } else {
        Rational::new(m * m * m, den)
    }
}

/// Collects disjoint good-edge neighbourhoods `N*_2(a, σ) ∪ N*(a, σ)` while one still spans
/// at least `|E|²/(16 n_A n_B)` good edges among uncollected vertices, and satisfies each part.
pub fn divide_and_conquer(game: &ProjectionGame) -> SolveReport {
    dnc_with(&Context::new(game))
}

pub(crate) fn dnc_with(ctx: &Context) -> SolveReport {
    let start = Instant::now();
    let game = ctx.game;
    let star = ctx.star();
    let (n_a, n_b) = active_counts(game);
    let m2 = game.edge_count() * game.edge_count();
    let mut rest = Remaining::new(game);
    let mut phi = Assignment::zeros(game);
    loop {
        let pick = (0..game.a_count()).find_map(|a| {
            star.entries[a]
                .iter()
                .find(|en| {
                    let live = en.e_star.iter().filter(|&&e| rest.edge(game, e)).count();
                    m2 > 0 && 16 * n_a * n_b * live >= m2
                })
                .map(|en| (a, en))
        });
        let Some((a, entry)) = pick else { break };
        let prop = Propagation::new(game, &ctx.pre, &ctx.stats, a, entry.sigma);
        for &x in &entry.n2_star {
            if rest.a(x) {
                phi.a[x] = if x == a {
                    entry.sigma
                } else {
                    prop.first_plausible(x)
                        .expect("Σ* keeps plausible sets nonempty")
                };
            }
        }
        for &b in &entry.n_star {
            if rest.b(b) {
                phi.b[b] = prop.forced[b].expect("N* lies inside N(a)");
            }
        }
        entry.n2_star.iter().for_each(|&x| rest.alive[x] = false);
        entry
            .n_star
            .iter()
            .for_each(|&b| rest.alive[rest.n_a + b] = false);
    }
    let satisfied = game.count_satisfied(&phi);
    let spread = ctx.star().h_star_max + ctx.stats.e_n_max;
    let bound = cubic_bound(game, 64, spread);
    SolveReport::new(
        Algorithm::DivideAndConquer,
        phi,
        satisfied,
        Guarantee::Edges(bound),
    )
    .timed(start)
}

/// Uniform-preimage variant: parts are `N_2(a) ∪ N(a)` while one spans at least
/// `|E|²/(4 n_A n_B)` edges among uncollected vertices; each part takes the best propagated `σ_a`.
pub fn divide_and_conquer_uniform(game: &ProjectionGame) -> Result<SolveReport> {
    let start = Instant::now();
    let ctx = Context::new(game);
    require_uniform(&ctx.stats)?;
    let (n_a, n_b) = active_counts(game);
    let m2 = game.edge_count() * game.edge_count();
    let mut rest = Remaining::new(game);
    let mut phi = Assignment::zeros(game);
    let spanned = |rest: &Remaining, a: usize| -> Vec<usize> {
        let mut out = Vec::new();
        for &b in &ctx.stats.a_neighbors[a] {
            if rest.b(b) {
                out.extend(
                    game.b_edges(b)
                        .iter()
                        .copied()
                        .filter(|&e| rest.a(game.edge(e).0)),
                );
            }
        }
        out
    };
    loop {
        let pick =
            (0..game.a_count()).find(|&a| m2 > 0 && 4 * n_a * n_b * spanned(&rest, a).len() >= m2);
        let Some(a) = pick else { break };
        let part_edges = spanned(&rest, a);
        let part_a: Vec<usize> = ctx.stats.two_hop[a]
            .iter()
            .copied()
            .filter(|&x| rest.a(x))
            .collect();
        let part_b: Vec<usize> = ctx.stats.a_neighbors[a]
            .iter()
            .copied()
            .filter(|&b| rest.b(b))
            .collect();
        let mut best: Option<(usize, Vec<(usize, usize)>, Vec<(usize, usize)>)> = None;
        for sigma in 0..game.sigma_a() {
            let prop = Propagation::new(game, &ctx.pre, &ctx.stats, a, sigma);
            let la: Vec<(usize, usize)> = part_a
                .iter()
                .map(|&x| {
                    (
                        x,
                        if x == a {
                            sigma
                        } else {
                            prop.first_plausible(x).unwrap_or(0)
                        },
                    )
                })
                .collect();
            let lb: Vec<(usize, usize)> = part_b
                .iter()
                .map(|&b| (b, prop.forced[b].unwrap_or(0)))
                .collect();
            for &(x, s) in &la {
                phi.a[x] = s;
            }
            for &(b, t) in &lb {
                phi.b[b] = t;
            }
            let hit = part_edges
                .iter()
                .filter(|&&e| game.is_satisfied(e, &phi))
                .count();
            if best.as_ref().is_none_or(|(h, _, _)| hit > *h) {
                best = Some((hit, la, lb));
            }
        }
        if let Some((_, la, lb)) = best {
            la.iter().for_each(|&(x, s)| phi.a[x] = s);
            lb.iter().for_each(|&(b, t)| phi.b[b] = t);
        }
        part_a.iter().for_each(|&x| rest.alive[x] = false);
        part_b
            .iter()
            .for_each(|&b| rest.alive[rest.n_a + b] = false);
    }
    let satisfied = game.count_satisfied(&phi);
    let bound = cubic_bound(game, 8, ctx.stats.h_max);
    Ok(SolveReport::new(
        Algorithm::DivideAndConquerUniform,
        phi,
        satisfied,
        Guarantee::Edges(bound),
    )
    .timed(start))
}
