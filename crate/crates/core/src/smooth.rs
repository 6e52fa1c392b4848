//! Smoothness measurement and the algorithms for smooth games.
//!
//! A game is μ-smooth when, for every A-vertex, any two distinct symbols project to the
//! same B-symbol on at most a μ fraction of its edges. Knowing the true labels of more
//! than `μ·d_a` neighbours then pins `a` down to a single symbol.

use std::time::Instant;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{best_a_response, brute_force_opt};
use crate::game::{Assignment, ProjectionGame};
use crate::rational::{frac, int, Rational};
use crate::report::{Algorithm, Guarantee, SolveReport};
use crate::stats::Preimages;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothnessReport {
    /// Largest collision fraction over all A-vertices and symbol pairs.
    pub mu_measured: Rational,
    /// `(a, σ, σ')` attaining `mu_measured`, first in lexicographic order.
    pub witness: Option<(usize, usize, usize)>,
    /// Worst collision fraction per A-vertex (0 for isolated vertices).
    pub per_a: Vec<Rational>,
}

/// Exact smoothness by checking every symbol pair at every A-vertex.
pub fn measure_smoothness(game: &ProjectionGame) -> SmoothnessReport {
    let ka = game.sigma_a();
    let mut mu = Rational::zero();
    let mut witness = None;
    let mut per_a = Vec::with_capacity(game.a_count());
    for a in 0..game.a_count() {
        let d = game.degree_a(a);
        let mut worst = Rational::zero();
        if d > 0 {
            for s in 0..ka {
                for t in s + 1..ka {
                    let hits = game
                        .a_edges(a)
                        .iter()
                        .filter(|&&e| game.project(e, s) == game.project(e, t))
                        .count();
                    let f = frac(hits, d);
                    if f > worst {
                        worst = f;
                    }
                    if f > mu || (witness.is_none() && f == mu) {
                        mu = f;
                        witness = Some((a, s, t));
                    }
                }
            }
        }
        per_a.push(worst);
    }
    SmoothnessReport {
        mu_measured: mu,
        witness,
        per_a,
    }
}

/// `max(mu_measured, 1 / min_a d_a)` over A-vertices with edges.
pub fn default_mu(game: &ProjectionGame, report: &SmoothnessReport) -> Rational {
    let floor = (0..game.a_count())
        .map(|a| game.degree_a(a))
        .filter(|&d| d > 0)
        .min()
        .map(|d| frac(1, d));
    floor.map_or(report.mu_measured, |f| f.max(report.mu_measured))
}

/// Per-A-vertex record of which symbols agree with every labelled B-neighbour so far.
struct Consistency {
    ka: usize,
    /// `hits[a·ka + σ]`: labelled neighbours whose edge `σ` satisfies.
    hits: Vec<u32>,
    labelled: Vec<u32>,
}

impl Consistency {
    fn new(game: &ProjectionGame) -> Self {
        let ka = game.sigma_a();
        Consistency {
            ka,
            hits: vec![0; game.a_count() * ka],
            labelled: vec![0; game.a_count()],
        }
    }

    fn apply(&mut self, game: &ProjectionGame, pre: &Preimages, b: usize, t: usize, sign: i32) {
        for &e in game.b_edges(b) {
            let a = game.edge(e).0;
            self.labelled[a] = (self.labelled[a] as i32 + sign) as u32;
            for &s in pre.of(e, t) {
                let h = &mut self.hits[a * self.ka + s];
                *h = (*h as i32 + sign) as u32;
            }
        }
    }

    fn consistent(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        let need = self.labelled[a];
        (0..self.ka).filter(move |&s| self.hits[a * self.ka + s] == need)
    }

    fn has_consistent(&self, a: usize) -> bool {
        self.consistent(a).next().is_some()
    }
}

/// Depth-first enumeration of labellings of `b_star` in lexicographic order, skipping
/// subtrees where some watched A-vertex has no consistent symbol left.
struct Enumerator<'g> {
    game: &'g ProjectionGame,
    pre: Preimages,
    b_star: Vec<usize>,
    state: Consistency,
    labels: Vec<usize>,
    watched: Vec<bool>,
    explored: u64,
    cap: Option<u64>,
    exceeded: bool,
}

impl<'g> Enumerator<'g> {
    fn new(game: &'g ProjectionGame, b_star: Vec<usize>, watched: Vec<bool>, cap: Option<u64>) -> Self {
        let state = Consistency::new(game);
        let labels = vec![0; b_star.len()];
        Enumerator {
            game,
            pre: Preimages::new(game),
            b_star,
            state,
            labels,
            watched,
            explored: 0,
            cap,
            exceeded: false,
        }
    }

    /// Calls `leaf` at every surviving full labelling; stops early when it returns `true`.
    /// Fails once more than `cap` search nodes have been visited.
    fn run(&mut self, leaf: &mut dyn FnMut(&Self) -> bool) -> Result<()> {
        self.descend(0, leaf);
        match self.cap {
            Some(cap) if self.exceeded => Err(Error::BudgetExceeded { needed: self.explored as u128, cap }),
            _ => Ok(()),
        }
    }

    fn descend(&mut self, depth: usize, leaf: &mut dyn FnMut(&Self) -> bool) -> bool {
        self.explored += 1;
        if self.cap.is_some_and(|cap| self.explored > cap) {
            self.exceeded = true;
            return true;
        }
        if depth == self.b_star.len() {
            return leaf(self);
        }
        let b = self.b_star[depth];
        for t in 0..self.game.sigma_b() {
            self.state.apply(self.game, &self.pre, b, t, 1);
            let alive = self.game.b_edges(b).iter().all(|&e| {
                let a = self.game.edge(e).0;
                !self.watched[a] || self.state.has_consistent(a)
            });
            if alive {
                self.labels[depth] = t;
                if self.descend(depth + 1, leaf) {
                    self.state.apply(self.game, &self.pre, b, t, -1);
                    return true;
                }
            }
            self.state.apply(self.game, &self.pre, b, t, -1);
        }
        false
    }

    /// Pins the given A-vertices, labels each B-vertex by majority over pinned neighbours
    /// (its enumerated label, else 0, when none is pinned), then best-responds elsewhere.
    fn complete(&self, pinned: &[Option<usize>]) -> Assignment {
        let game = self.game;
        let mut b_labels = vec![0usize; game.b_count()];
        for (i, &b) in self.b_star.iter().enumerate() {
            b_labels[b] = self.labels[i];
        }
        let mut votes = vec![0usize; game.sigma_b()];
        for (b, label) in b_labels.iter_mut().enumerate() {
            votes.iter_mut().for_each(|v| *v = 0);
            let mut any = false;
            for &e in game.b_edges(b) {
                if let Some(s) = pinned[game.edge(e).0] {
                    votes[game.project(e, s)] += 1;
                    any = true;
                }
            }
            if any {
                let mut best = 0;
                for t in 1..votes.len() {
                    if votes[t] > votes[best] {
                        best = t;
                    }
                }
                *label = best;
            }
        }
        let response = best_a_response(game, &b_labels);
        let a_labels = pinned
            .iter()
            .zip(response)
            .map(|(p, r)| p.unwrap_or(r))
            .collect();
        Assignment::new(a_labels, b_labels)
    }
}

#[derive(Debug, Clone)]
pub struct SmoothExactRun {
    pub assignment: Assignment,
    /// The sampled B-vertices, increasing.
    pub b_star: Vec<usize>,
    /// Search-tree nodes visited.
    pub explored: u64,
}

/// Samples each B-vertex with probability `min(1, c1·μ)`, enumerates labellings of the
/// sample, pins every A-vertex with a unique consistent symbol and completes the rest.
/// Returns the first completion that satisfies every edge.
///
/// `cap` bounds the number of search nodes visited.
pub fn smooth_exact(
    game: &ProjectionGame,
    mu: Rational,
    c1: Rational,
    seed: u64,
    cap: Option<u64>,
) -> Result<SmoothExactRun> {
    if mu.is_zero() {
        return Err(Error::InvalidArgument("μ must be positive".into()));
    }
    let p = (c1 * mu).min(Rational::one());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b_star: Vec<usize> = (0..game.b_count())
        .filter(|_| rng.gen_range(0..*p.denom()) < *p.numer())
        .collect();
    let target = game.edge_count();
    let mut found = None;
    let mut search = Enumerator::new(game, b_star, vec![true; game.a_count()], cap);
    search.run(&mut |s: &Enumerator| {
        let pinned: Vec<Option<usize>> = (0..game.a_count())
            .map(|a| {
                let mut it = s.state.consistent(a);
                match (it.next(), it.next()) {
                    (Some(x), None) => Some(x),
                    _ => None,
                }
            })
            .collect();
        let phi = s.complete(&pinned);
        if game.count_satisfied(&phi) == target {
            found = Some(phi);
            true
        } else {
            false
        }
    })?;
    match found {
        Some(assignment) => Ok(SmoothExactRun {
            assignment,
            b_star: search.b_star,
            explored: search.explored,
        }),
        None => Err(Error::NoSatisfyingFound),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SmoothRegime {
    /// `μ ≥ 1/4`: every B-labelling is tried.
    Exhaustive,
    /// `n_A / |E| ≥ 1/4`: one satisfied edge per A-vertex.
    Sparse,
    /// Greedy hitting set `B*` followed by enumeration.
    Hitting,
}

#[derive(Debug, Clone)]
pub struct SmoothApproxRun {
    pub report: SolveReport,
    pub regime: SmoothRegime,
    /// Hitting set chosen in the third regime, in insertion order.
    pub b_star: Vec<usize>,
}

fn active_a(game: &ProjectionGame) -> usize {
    (0..game.a_count())
        .filter(|&a| game.degree_a(a) > 0)
        .count()
}

/// Upper bound on the hitting-set size in the third regime:
/// `n_B·(μ|E| + n_A) / ((3/4)|E| − μ|E| − n_A)` when the denominator is positive.
pub fn hitting_set_bound(game: &ProjectionGame, mu: Rational) -> Option<Rational> {
    let m = int(game.edge_count());
    let n_a = int(game.a_count());
    let den = m * Rational::new(3, 4);
    let taken = mu * m + n_a;
    (den > taken).then(|| int(game.b_count()) * taken / (den - taken))
}

/// Deterministic constant-factor algorithm for satisfiable μ-smooth games; satisfies at
/// least a quarter of the edges. `cap` bounds brute force in the first regime and search nodes in the third.
pub fn smooth_approx(
    game: &ProjectionGame,
    mu: Rational,
    cap: Option<u64>,
) -> Result<SmoothApproxRun> {
    let start = Instant::now();
    let m = game.edge_count();
    let quarter = Guarantee::Edges(frac(m, 4));
    if mu >= Rational::new(1, 4) {
        let (phi, value) = brute_force_opt(game, cap)?;
        let report =
            SolveReport::new(Algorithm::SmoothApprox, phi, value, Guarantee::Optimal).timed(start);
        return Ok(SmoothApproxRun {
            report,
            regime: SmoothRegime::Exhaustive,
            b_star: Vec::new(),
        });
    }
    let n_a = active_a(game);
    if 4 * n_a >= m {
        let pre = Preimages::new(game);
        let b: Vec<usize> = (0..game.b_count())
            .map(|b| {
                (0..game.sigma_b())
                    .find(|&t| game.b_edges(b).iter().all(|&e| pre.count(e, t) > 0))
                    .unwrap_or(0)
            })
            .collect();
        let a = (0..game.a_count())
            .map(|a| {
                game.a_edges(a)
                    .first()
                    .and_then(|&e| pre.of(e, b[game.edge(e).1]).first().copied())
                    .unwrap_or(0)
            })
            .collect();
        let phi = Assignment::new(a, b);
        let value = game.count_satisfied(&phi);
        let report = SolveReport::new(
            Algorithm::SmoothApprox,
            phi,
            value,
            Guarantee::Edges(int(n_a)),
        )
        .timed(start);
        return Ok(SmoothApproxRun {
            report,
            regime: SmoothRegime::Sparse,
            b_star: Vec::new(),
        });
    }

    // Greedy hitting set.
    let saturated_by = |count: usize, a: usize| int(count) > mu * int(game.degree_a(a));
    let mut in_star = vec![false; game.b_count()];
    let mut hit = vec![0usize; game.a_count()];
    let mut saturated = vec![false; game.a_count()];
    let mut covered = 0usize;
    let mut b_star = Vec::new();
    while 4 * covered < m {
        let pick = (0..game.b_count())
            .filter(|&b| !in_star[b])
            .max_by_key(|&b| {
                let fresh = game
                    .b_edges(b)
                    .iter()
                    .filter(|&&e| !saturated[game.edge(e).0])
                    .count();
                (fresh, std::cmp::Reverse(b))
            });
        let Some(b) = pick else { break };
        in_star[b] = true;
        b_star.push(b);
        for &e in game.b_edges(b) {
            let a = game.edge(e).0;
            hit[a] += 1;
            if !saturated[a] && saturated_by(hit[a], a) {
                saturated[a] = true;
                covered += game.degree_a(a);
            }
        }
    }
    let mut order = b_star.clone();
    order.sort_unstable();
    let mut best: Option<(Assignment, usize)> = None;
    let mut search = Enumerator::new(game, order, saturated.clone(), cap);
    search.run(&mut |s: &Enumerator| {
        let pinned: Vec<Option<usize>> = (0..game.a_count())
            .map(|a| {
                if saturated[a] {
                    s.state.consistent(a).next()
                } else {
                    None
                }
            })
            .collect();
        let phi = s.complete(&pinned);
        let value = game.count_satisfied(&phi);
        if best.as_ref().is_none_or(|(_, v)| value > *v) {
            best = Some((phi, value));
        }
        value == m
    })?;
    let (phi, value) = best.unwrap_or_else(|| {
        let phi = Assignment::zeros(game);
        let v = game.count_satisfied(&phi);
        (phi, v)
    });
    let report = SolveReport::new(Algorithm::SmoothApprox, phi, value, quarter).timed(start);
    Ok(SmoothApproxRun {
        report,
        regime: SmoothRegime::Hitting,
        b_star,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::RawGame;

    fn one_a(tables: Vec<Vec<usize>>, ka: usize, kb: usize) -> ProjectionGame {
        let edges = tables
            .into_iter()
            .enumerate()
            .map(|(b, t)| (0, b, t))
            .collect::<Vec<_>>();
        ProjectionGame::build(RawGame {
            a_count: 1,
            b_count: edges.len(),
            sigma_a: ka,
            sigma_b: kb,
            edges,
        })
        .unwrap()
    }

    #[test]
    fn identity_is_zero_and_constant_is_one() {
        let g = one_a(vec![vec![0, 1, 2], vec![2, 0, 1]], 3, 3);
        assert_eq!(measure_smoothness(&g).mu_measured, Rational::zero());
        let g = one_a(vec![vec![1, 1, 1], vec![0, 0, 0]], 3, 2);
        let r = measure_smoothness(&g);
        assert_eq!(r.mu_measured, Rational::one());
        assert_eq!(r.witness, Some((0, 0, 1)));
    }

    #[test]
    fn half_collision() {
        let g = one_a(vec![vec![0, 0], vec![0, 1]], 2, 2);
        assert_eq!(measure_smoothness(&g).mu_measured, frac(1, 2));
        assert_eq!(default_mu(&g, &measure_smoothness(&g)), frac(1, 2));
    }

    #[test]
    fn exact_on_unique_game_with_full_sample() {
        let g = one_a(vec![vec![0, 1], vec![1, 0]], 2, 2);
        let run = smooth_exact(&g, frac(1, 2), int(2), 0, None).unwrap();
        assert_eq!(run.b_star, vec![0, 1]);
        assert_eq!(g.count_satisfied(&run.assignment), 2);
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        let g = one_a(vec![vec![0, 1], vec![1, 0]], 2, 2);
        assert!(matches!(
            smooth_exact(&g, frac(1, 2), int(2), 0, Some(2)),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
