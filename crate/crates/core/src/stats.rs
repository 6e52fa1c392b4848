//! Derived quantities: degrees, one- and two-hop neighbourhoods, preimage profiles.

use serde::{Deserialize, Serialize};

use crate::game::ProjectionGame;
use crate::rational::{frac, Rational};

/// Preimage lists `π_e^{-1}(σ_b)` for every edge and B-symbol, stored contiguously.
#[derive(Debug, Clone)]
pub struct Preimages {
    sigma_b: usize,
    offsets: Vec<usize>,
    symbols: Vec<usize>,
}

impl Preimages {
    pub fn new(game: &ProjectionGame) -> Self {
        let (ka, kb) = (game.sigma_a(), game.sigma_b());
        let mut offsets = Vec::with_capacity(game.edge_count() * kb + 1);
        let mut symbols = Vec::with_capacity(game.edge_count() * ka);
        let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); kb];
        offsets.push(0);
        for e in 0..game.edge_count() {
            buckets.iter_mut().for_each(Vec::clear);
            for (s, &t) in game.table(e).iter().enumerate() {
                buckets[t].push(s);
            }
            for bucket in &buckets {
                symbols.extend_from_slice(bucket);
                offsets.push(symbols.len());
            }
        }
        Preimages {
            sigma_b: kb,
            offsets,
            symbols,
        }
    }

    /// Increasing A-symbols mapped to `sb` on edge `e`.
    #[inline]
    pub fn of(&self, e: usize, sb: usize) -> &[usize] {
        let i = e * self.sigma_b + sb;
        &self.symbols[self.offsets[i]..self.offsets[i + 1]]
    }

    #[inline]
    pub fn count(&self, e: usize, sb: usize) -> usize {
        let i = e * self.sigma_b + sb;
        self.offsets[i + 1] - self.offsets[i]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceStats {
    pub edge_count: usize,
    pub a_degrees: Vec<usize>,
    pub b_degrees: Vec<usize>,
    /// `N(a)`, increasing B indices.
    pub a_neighbors: Vec<Vec<usize>>,
    /// `N(b)`, increasing A indices.
    pub b_neighbors: Vec<Vec<usize>>,
    /// `N_2(a) = N(N(a))`, increasing A indices.
    pub two_hop: Vec<Vec<usize>>,
    /// Per B-vertex symbol maximising the summed preimage size over incident edges.
    pub sigma_b_max: Vec<usize>,
    /// Per edge `|π_e^{-1}(σ_b^max)|`.
    pub p_max: Vec<usize>,
    pub p_bar_max: Rational,
    /// `|E(N_2(a))|` per A-vertex.
    pub h: Vec<usize>,
    pub h_max: usize,
    pub h_argmax: Option<usize>,
    /// `|E(N(a))|` per A-vertex.
    pub e_n: Vec<usize>,
    pub e_n_max: usize,
    pub e_n_argmax: Option<usize>,
    /// Common preimage size when every edge maps every B-symbol from the same number of A-symbols.
    pub uniform_p: Option<usize>,
}

fn argmax_first(values: &[usize]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, &v) in values.iter().enumerate() {
        if best.is_none_or(|j| v > values[j]) {
            best = Some(i);
        }
    }
    best
}

pub fn compute_stats(game: &ProjectionGame) -> InstanceStats {
    compute_stats_with(game, &Preimages::new(game))
}

pub fn compute_stats_with(game: &ProjectionGame, pre: &Preimages) -> InstanceStats {
    let (n_a, n_b) = (game.a_count(), game.b_count());
    let a_degrees: Vec<usize> = (0..n_a).map(|a| game.degree_a(a)).collect();
    let b_degrees: Vec<usize> = (0..n_b).map(|b| game.degree_b(b)).collect();
    let a_neighbors: Vec<Vec<usize>> = (0..n_a)
        .map(|a| {
            let mut v: Vec<usize> = game.a_edges(a).iter().map(|&e| game.edge(e).1).collect();
            v.sort_unstable();
            v
        })
        .collect();
    let b_neighbors: Vec<Vec<usize>> = (0..n_b)
        .map(|b| {
            let mut v: Vec<usize> = game.b_edges(b).iter().map(|&e| game.edge(e).0).collect();
            v.sort_unstable();
            v
        })
        .collect();

    let mut mark = vec![usize::MAX; n_a];
    let two_hop: Vec<Vec<usize>> = (0..n_a)
        .map(|a| {
            let mut out = Vec::new();
            for &b in &a_neighbors[a] {
                for &x in &b_neighbors[b] {
                    if mark[x] != a {
                        mark[x] = a;
                        out.push(x);
                    }
                }
            }
            out.sort_unstable();
            out
        })
        .collect();

    let kb = game.sigma_b();
    let sigma_b_max: Vec<usize> = (0..n_b)
        .map(|b| {
            let mut totals = vec![0usize; kb];
            for &e in game.b_edges(b) {
                for (sb, total) in totals.iter_mut().enumerate() {
                    *total += pre.count(e, sb);
                }
            }
            argmax_first(&totals).unwrap_or(0)
        })
        .collect();
    let p_max: Vec<usize> = (0..game.edge_count())
        .map(|e| pre.count(e, sigma_b_max[game.edge(e).1]))
        .collect();
    let p_bar_max = if p_max.is_empty() {
        frac(0, 1)
    } else {
        frac(p_max.iter().sum(), p_max.len())
    };

    let h: Vec<usize> = two_hop
        .iter()
        .map(|set| set.iter().map(|&x| a_degrees[x]).sum())
        .collect();
    let e_n: Vec<usize> = a_neighbors
        .iter()
        .map(|set| set.iter().map(|&b| b_degrees[b]).sum())
        .collect();
    let h_argmax = argmax_first(&h);
    let e_n_argmax = argmax_first(&e_n);

    let uniform_p = if game.edge_count() == 0 {
        None
    } else {
        let first = pre.count(0, 0);
        let uniform = (0..game.edge_count()).all(|e| (0..kb).all(|sb| pre.count(e, sb) == first));
        uniform.then_some(first)
    };

    InstanceStats {
        edge_count: game.edge_count(),
        h_max: h_argmax.map_or(0, |a| h[a]),
        e_n_max: e_n_argmax.map_or(0, |a| e_n[a]),
        a_degrees,
        b_degrees,
        a_neighbors,
        b_neighbors,
        two_hop,
        sigma_b_max,
        p_max,
        p_bar_max,
        h,
        h_argmax,
        e_n,
        e_n_argmax,
        uniform_p,
    }
}
