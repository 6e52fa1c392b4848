use crate::error::{Error, Result};
use crate::game::{Assignment, ProjectionGame};
use crate::stats::Preimages;

/// `base^exp`, saturating at `u128::MAX`.
fn saturating_pow(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}

/// Number of assignments the exhaustive solver visits: the smaller of the two sides.
pub fn enumeration_size(game: &ProjectionGame) -> u128 {
    saturating_pow(game.sigma_a(), game.a_count())
        .min(saturating_pow(game.sigma_b(), game.b_count()))
}

fn first_argmax(counts: &[usize]) -> (usize, usize) {
    let mut best = 0;
    for (i, &c) in counts.iter().enumerate() {
        if c > counts[best] {
            best = i;
        }
    }
    (best, counts.get(best).copied().unwrap_or(0))
}

/// Smallest-index best response of every B-vertex to fixed A-labels.
pub(crate) fn best_b_response(game: &ProjectionGame, a_labels: &[usize]) -> Vec<usize> {
    let mut counts = vec![0usize; game.sigma_b()];
    (0..game.b_count())
        .map(|b| {
            counts.iter_mut().for_each(|c| *c = 0);
            for &e in game.b_edges(b) {
                counts[game.project(e, a_labels[game.edge(e).0])] += 1;
            }
            first_argmax(&counts).0
        })
        .collect()
}

/// Smallest-index best response of every A-vertex to fixed B-labels.
pub(crate) fn best_a_response(game: &ProjectionGame, b_labels: &[usize]) -> Vec<usize> {
    let mut counts = vec![0usize; game.sigma_a()];
    (0..game.a_count())
        .map(|a| {
            counts.iter_mut().for_each(|c| *c = 0);
            for &e in game.a_edges(a) {
                let target = b_labels[game.edge(e).1];
                for (s, c) in counts.iter_mut().enumerate() {
                    if game.project(e, s) == target {
                        *c += 1;
                    }
                }
            }
            first_argmax(&counts).0
        })
        .collect()
}

/// Advances a little-endian-last odometer; returns the leftmost changed position.
fn advance(labels: &mut [usize], radix: usize) -> Option<usize> {
    for i in (0..labels.len()).rev() {
        labels[i] += 1;
        if labels[i] < radix {
            return Some(i);
        }
        labels[i] = 0;
    }
    None
}

/// Exhaustive optimum.
///
/// Returns the lexicographically smallest maximiser, comparing A-labels first
/// and then B-labels. Only one side is enumerated (whichever is smaller); the
/// other side is filled in by independent per-vertex best responses, which is
/// optimal. `budget` caps the number of enumerated assignments.
pub fn brute_force_opt(game: &ProjectionGame, budget: Option<u64>) -> Result<(Assignment, usize)> {
    let a_side = saturating_pow(game.sigma_a(), game.a_count());
    let b_side = saturating_pow(game.sigma_b(), game.b_count());
    let needed = a_side.min(b_side);
    if let Some(cap) = budget {
        if needed > cap as u128 {
            return Err(Error::BudgetExceeded { needed, cap });
        }
    }
    let a_labels = if a_side <= b_side {
        enumerate_a(game)
    } else {
        enumerate_b(game)
    };
    let b_labels = best_b_response(game, &a_labels);
    let phi = Assignment::new(a_labels, b_labels);
    let value = game.count_satisfied(&phi);
    Ok((phi, value))
}

fn enumerate_a(game: &ProjectionGame) -> Vec<usize> {
    let (n_a, n_b, kb) = (game.a_count(), game.b_count(), game.sigma_b());
    let mut labels = vec![0usize; n_a];
    // counts[b * kb + t]: edges at b whose A-endpoint currently projects to t
    let mut counts = vec![0usize; n_b * kb];
    for (e, &(a, b)) in game.edges().iter().enumerate() {
        counts[b * kb + game.project(e, labels[a])] += 1;
    }
    let score = |counts: &[usize]| -> usize {
        (0..n_b)
            .map(|b| {
                counts[b * kb..(b + 1) * kb]
                    .iter()
                    .copied()
                    .max()
                    .unwrap_or(0)
            })
            .sum()
    };
    let mut best_value = score(&counts);
    let mut best = labels.clone();
    let mut previous = labels.clone();
    while let Some(from) = advance(&mut labels, game.sigma_a()) {
        for a in from..n_a {
            if labels[a] != previous[a] {
                for &e in game.a_edges(a) {
                    let b = game.edge(e).1;
                    counts[b * kb + game.project(e, previous[a])] -= 1;
                    counts[b * kb + game.project(e, labels[a])] += 1;
                }
                previous[a] = labels[a];
            }
        }
        let v = score(&counts);
        if v > best_value {
            best_value = v;
            best.copy_from_slice(&labels);
        }
    }
    best
}

fn enumerate_b(game: &ProjectionGame) -> Vec<usize> {
    let (n_a, n_b, ka) = (game.a_count(), game.b_count(), game.sigma_a());
    let pre = Preimages::new(game);
    let mut labels = vec![0usize; n_b];
    // counts[a * ka + s]: edges at a satisfied if a takes s
    let mut counts = vec![0usize; n_a * ka];
    for (e, &(a, b)) in game.edges().iter().enumerate() {
        for &s in pre.of(e, labels[b]) {
            counts[a * ka + s] += 1;
        }
    }
    let response = |counts: &[usize]| -> (Vec<usize>, usize) {
        let mut total = 0;
        let a = (0..n_a)
            .map(|a| {
                let (s, c) = first_argmax(&counts[a * ka..(a + 1) * ka]);
                total += c;
                s
            })
            .collect();
        (a, total)
    };
    let (mut best_a, mut best_value) = response(&counts);
    let mut previous = labels.clone();
    while let Some(from) = advance(&mut labels, game.sigma_b()) {
        for b in from..n_b {
            if labels[b] != previous[b] {
                for &e in game.b_edges(b) {
                    let a = game.edge(e).0;
                    for &s in pre.of(e, previous[b]) {
                        counts[a * ka + s] -= 1;
                    }
                    for &s in pre.of(e, labels[b]) {
                        counts[a * ka + s] += 1;
                    }
                }
                previous[b] = labels[b];
            }
        }
        let (a, v) = response(&counts);
        if v > best_value || (v == best_value && a < best_a) {
            best_value = v;
            best_a = a;
        }
    }
    best_a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::RawGame;

    #[test]
    fn single_identity_edge() {
        let g = ProjectionGame::build(RawGame {
            a_count: 1,
            b_count: 1,
            sigma_a: 2,
            sigma_b: 2,
            edges: vec![(0, 0, vec![0, 1])],
        })
        .unwrap();
        let (phi, v) = brute_force_opt(&g, None).unwrap();
        assert_eq!(v, 1);
        assert_eq!(phi, Assignment::new(vec![0], vec![0]));
    }

    #[test]
    fn budget_is_enforced() {
        let g = ProjectionGame::build(RawGame {
            a_count: 3,
            b_count: 3,
            sigma_a: 4,
            sigma_b: 4,
            edges: vec![(0, 0, vec![0, 1, 2, 3])],
        })
        .unwrap();
        assert!(matches!(
            brute_force_opt(&g, Some(10)),
            Err(Error::BudgetExceeded {
                needed: 64,
                cap: 10
            })
        ));
        assert!(brute_force_opt(&g, Some(64)).is_ok());
    }

    #[test]
    fn both_sides_agree_on_tie_break() {
        // Two A-vertices, one B-vertex with two A symbols and one B symbol each way.
        let raw = RawGame {
            a_count: 2,
            b_count: 1,
            sigma_a: 3,
            sigma_b: 2,
            edges: vec![(0, 0, vec![1, 0, 1]), (1, 0, vec![1, 1, 0])],
        };
        let g = ProjectionGame::build(raw).unwrap();
        let a = enumerate_a(&g);
        let b = enumerate_b(&g);
        assert_eq!(a, b);
        assert_eq!(a, vec![0, 0]);
    }
}
