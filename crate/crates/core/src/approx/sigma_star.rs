use fixedbitset::FixedBitSet;

use crate::game::ProjectionGame;
use crate::rational::{int, Rational};
use crate::stats::{InstanceStats, Preimages};

/// Good-edge data for one `(a, σ_a)` with `σ_a ∈ Σ*_A(a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaStarEntry {
    pub sigma: usize,
    /// `N*(a, σ_a)`, increasing.
    pub n_star: Vec<usize>,
    /// `N*_2(a, σ_a)`, increasing.
    pub n2_star: Vec<usize>,
    pub h_star: usize,
    /// `E*(a, σ_a)` as increasing edge indices.
    pub e_star: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaStarCache {
    /// Per A-vertex, its `Σ*_A(a)` entries in increasing symbol order.
    pub entries: Vec<Vec<SigmaStarEntry>>,
    pub h_star_max: usize,
    /// First `(a, σ_a)` attaining `h_star_max` in `(a, σ_a)` order.
    pub h_star_argmax: Option<(usize, usize)>,
}

impl SigmaStarCache {
    pub fn members(&self, a: usize) -> Vec<usize> {
        self.entries[a].iter().map(|e| e.sigma).collect()
    }

    pub fn contains(&self, a: usize, sigma: usize) -> bool {
        self.entry(a, sigma).is_some()
    }

    pub fn entry(&self, a: usize, sigma: usize) -> Option<&SigmaStarEntry> {
        let list = &self.entries[a];
        list.binary_search_by_key(&sigma, |e| e.sigma)
            .ok()
            .map(|i| &list[i])
    }
}

/// Propagation from `a0 := σ`: labels forced on `N(a0)` and the plausible sets `S_{a'}`.
pub(crate) struct Propagation {
    /// Per B-vertex, the forced label if it is a neighbour of `a0`.
    pub forced: Vec<Option<usize>>,
    /// Per A-vertex in `N_2(a0)`, the symbols consistent with every forced neighbour.
    pub plausible: Vec<Option<FixedBitSet>>,
}

impl Propagation {
    pub fn new(
        game: &ProjectionGame,
        pre: &Preimages,
        stats: &InstanceStats,
        a0: usize,
        sigma: usize,
    ) -> Self {
        let mut forced = vec![None; game.b_count()];
        for &e in game.a_edges(a0) {
            forced[game.edge(e).1] = Some(game.project(e, sigma));
        }
        let ka = game.sigma_a();
        let mut plausible = vec![None; game.a_count()];
        for &x in &stats.two_hop[a0] {
            let mut set = FixedBitSet::with_capacity(ka);
            set.insert_range(..);
            for &e in game.a_edges(x) {
                if let Some(t) = forced[game.edge(e).1] {
                    let mut allowed = FixedBitSet::with_capacity(ka);
                    pre.of(e, t).iter().for_each(|&s| allowed.insert(s));
                    set.intersect_with(&allowed);
                }
            }
            plausible[x] = Some(set);
        }
        Propagation { forced, plausible }
    }

    /// Smallest plausible symbol of a two-hop vertex, if any.
    pub fn first_plausible(&self, a: usize) -> Option<usize> {
        self.plausible[a].as_ref().and_then(|s| s.ones().next())
    }

    /// Whether every B-vertex touching `N_2(a0)` admits a label compatible with all its two-hop neighbours.
    pub fn admits_all(&self, game: &ProjectionGame, stats: &InstanceStats, a0: usize) -> bool {
        let kb = game.sigma_b();
        let mut images: Vec<Option<FixedBitSet>> = vec![None; game.b_count()];
        for &x in &stats.two_hop[a0] {
            let set = self.plausible[x]
                .as_ref()
                .expect("two-hop vertex has a plausible set");
            for &e in game.a_edges(x) {
                let mut image = FixedBitSet::with_capacity(kb);
                set.ones().for_each(|s| image.insert(game.project(e, s)));
                let slot = &mut images[game.edge(e).1];
                match slot {
                    Some(acc) => acc.intersect_with(&image),
                    None => *slot = Some(image),
                }
            }
        }
        images.iter().flatten().all(|img| img.count_ones(..) > 0)
    }
}

/// `|π^{-1}_e(t)| ≤ 2·p̄^max`, compared exactly.
pub(crate) fn is_good(pre: &Preimages, p_bar_max: &Rational, e: usize, t: usize) -> bool {
    int(pre.count(e, t)) <= *p_bar_max * 2
}

/// Exact membership test `σ ∈ Σ*_A(a)`.
pub fn in_sigma_star(
    game: &ProjectionGame,
    pre: &Preimages,
    stats: &InstanceStats,
    a: usize,
    sigma: usize,
) -> bool {
    sigma < game.sigma_a()
        && Propagation::new(game, pre, stats, a, sigma).admits_all(game, stats, a)
}

fn entry(
    game: &ProjectionGame,
    pre: &Preimages,
    stats: &InstanceStats,
    a: usize,
    sigma: usize,
) -> SigmaStarEntry {
    let mut n_star = Vec::new();
    let mut in_n2 = vec![false; game.a_count()];
    let mut e_star = Vec::new();
    for &e in game.a_edges(a) {
        let b = game.edge(e).1;
        let t = game.project(e, sigma);
        let mut any = false;
        for &f in game.b_edges(b) {
            if is_good(pre, &stats.p_bar_max, f, t) {
                any = true;
                in_n2[game.edge(f).0] = true;
                e_star.push(f);
            }
        }
        if any {
            n_star.push(b);
        }
    }
    n_star.sort_unstable();
    e_star.sort_unstable();
    let n2_star: Vec<usize> = (0..game.a_count()).filter(|&x| in_n2[x]).collect();
    let h_star = n2_star.iter().map(|&x| stats.a_degrees[x]).sum();
    SigmaStarEntry {
        sigma,
        n_star,
        n2_star,
        h_star,
        e_star,
    }
}

/// Evaluates `Σ*_A(a)` and the good-edge sets for every A-vertex.
pub fn compute_sigma_star(game: &ProjectionGame, stats: &InstanceStats) -> SigmaStarCache {
    compute_sigma_star_with(game, &Preimages::new(game), stats)
}

pub fn compute_sigma_star_with(
    game: &ProjectionGame,
    pre: &Preimages,
    stats: &InstanceStats,
) -> SigmaStarCache {
    let mut entries = Vec::with_capacity(game.a_count());
    let mut h_star_max = 0;
    let mut h_star_argmax = None;
    for a in 0..game.a_count() {
        let mut list = Vec::new();
        for sigma in 0..game.sigma_a() {
            if in_sigma_star(game, pre, stats, a, sigma) {
                let en = entry(game, pre, stats, a, sigma);
                if h_star_argmax.is_none() || en.h_star > h_star_max {
                    h_star_max = en.h_star;
                    h_star_argmax = Some((a, sigma));
                }
                list.push(en);
            }
        }
        entries.push(list);
    }
    SigmaStarCache {
        entries,
        h_star_max,
        h_star_argmax,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::RawGame;
    use crate::stats::compute_stats;

    #[test]
    fn single_identity_edge_keeps_everything() {
        let g = ProjectionGame::build(RawGame {
            a_count: 1,
            b_count: 1,
            sigma_a: 3,
            sigma_b: 3,
            edges: vec![(0, 0, vec![0, 1, 2])],
        })
        .unwrap();
        let cache = compute_sigma_star(&g, &compute_stats(&g));
        assert_eq!(cache.members(0), vec![0, 1, 2]);
    }

    #[test]
    fn forced_empty_plausible_set_excludes_symbol() {
        // a0 and a1 share b0. With a0 = 1, b0 is forced to 1, which a1 can never produce.
        let g = ProjectionGame::build(RawGame {
            a_count: 2,
            b_count: 1,
            sigma_a: 2,
            sigma_b: 2,
            edges: vec![(0, 0, vec![0, 1]), (1, 0, vec![0, 0])],
        })
        .unwrap();
        let cache = compute_sigma_star(&g, &compute_stats(&g));
        assert_eq!(cache.members(0), vec![0]);
        assert_eq!(cache.members(1), vec![0, 1]);
    }
}
