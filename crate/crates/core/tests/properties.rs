use std::collections::BTreeSet;

use labelcover::approx::{
    best_of, compute_sigma_star, divide_and_conquer, greedy_assignment, know_neighbors_neighbors,
    know_neighbors_neighbors_uniform, know_your_neighbors, satisfy_one_neighbor,
};
use labelcover::exact::{
    brute_force_opt, heuristic_decomposition, tree_dp, tree_dp_solve, validate_decomposition, TreeDecomposition,
};
use labelcover::format::{emit_game, parse_game};
use labelcover::game::{connected_components, Assignment, ProjectionGame, RawGame};
use labelcover::planar::{baker_partition, residual_game};
use labelcover::rational::{frac, int};
use labelcover::reductions::{
    coloring_assignment, extract_tiling, from_matrix_tiling, from_planar_3col, gen_matrix_tiling, gen_planar_graph,
    gen_planar_grid, gen_random_satisfiable, gen_smooth, tiling_assignment, TilingSolution,
};
use labelcover::smooth::measure_smoothness;
use labelcover::stats::compute_stats;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Arbitrary (usually unsatisfiable) game with the given bounds.
fn arbitrary_game(seed: u64, max_side: usize, max_k: usize, density: f64) -> ProjectionGame {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (n_a, n_b) = (rng.gen_range(1..=max_side), rng.gen_range(1..=max_side));
    let (k_a, k_b) = (rng.gen_range(1..=max_k), rng.gen_range(1..=max_k));
    let mut edges = Vec::new();
    for a in 0..n_a {
        for b in 0..n_b {
            if rng.gen_bool(density) {
                edges.push((a, b, (0..k_a).map(|_| rng.gen_range(0..k_b)).collect()));
            }
        }
    }
    edges.shuffle(&mut rng);
    ProjectionGame::build(RawGame { a_count: n_a, b_count: n_b, sigma_a: k_a, sigma_b: k_b, edges }).unwrap()
}

fn random_assignment(g: &ProjectionGame, rng: &mut ChaCha8Rng) -> Assignment {
    Assignment::new(
        (0..g.a_count()).map(|_| rng.gen_range(0..g.sigma_a())).collect(),
        (0..g.b_count()).map(|_| rng.gen_range(0..g.sigma_b())).collect(),
    )
}

fn satisfiable(seed: u64) -> (ProjectionGame, Assignment, bool) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let uniform = rng.gen_bool(0.3);
    let (k_a, k_b) = if uniform { [(4, 2), (6, 3), (3, 3), (6, 2)][rng.gen_range(0..4)] } else { (rng.gen_range(1..=5), rng.gen_range(1..=5)) };
    let n_b = rng.gen_range(1..=12);
    let degree = rng.gen_range(1..=n_b.min(4));
    let (g, plant) = gen_random_satisfiable(rng.gen_range(1..=12), n_b, k_a, k_b, degree, seed, uniform).unwrap();
    (g, plant, uniform)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn value_is_bounded_and_order_invariant(seed in any::<u64>()) {
        let g = arbitrary_game(seed, 6, 4, 0.5);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let phi = random_assignment(&g, &mut rng);
        let v = g.count_satisfied(&phi);
        prop_assert!(v <= g.edge_count());
        let mut order: Vec<usize> = (0..g.edge_count()).collect();
        order.shuffle(&mut rng);
        prop_assert_eq!(g.permute_edges(&order).count_satisfied(&phi), v);
    }

    #[test]
    fn stats_identities(seed in any::<u64>()) {
        let (g, plant, uniform) = satisfiable(seed);
        let s = compute_stats(&g);
        prop_assert_eq!(s.a_degrees.iter().sum::<usize>(), g.edge_count());
        prop_assert_eq!(s.b_degrees.iter().sum::<usize>(), g.edge_count());
        for a in 0..g.a_count() {
            prop_assert!(s.h[a] >= s.e_n[a] && s.e_n[a] >= s.a_degrees[a]);
            let nb: BTreeSet<usize> = g.a_edges(a).iter().map(|&e| g.edge(e).1).collect();
            let e_n: usize = nb.iter().map(|&b| g.degree_b(b)).sum();
            let two_hop: BTreeSet<usize> = nb.iter().flat_map(|&b| g.b_edges(b).iter().map(|&e| g.edge(e).0)).collect();
            let h: usize = two_hop.iter().map(|&x| g.degree_a(x)).sum();
            prop_assert_eq!((s.e_n[a], s.h[a]), (e_n, h));
        }
        prop_assert_eq!(g.count_satisfied(&plant), g.edge_count());
        prop_assert!(s.p_bar_max >= int(1));
        if uniform {
            prop_assert_eq!(s.uniform_p, Some(g.sigma_a() / g.sigma_b()));
        }
    }

    #[test]
    fn planted_symbol_survives(seed in any::<u64>()) {
        let (g, plant, _) = satisfiable(seed);
        let stats = compute_stats(&g);
        let star = compute_sigma_star(&g, &stats);
        for a in 0..g.a_count() {
            prop_assert!(star.contains(a, plant.a[a]));
        }
    }

    #[test]
    fn dp_matches_brute_force_for_any_root(seed in any::<u64>()) {
        let g = arbitrary_game(seed, 4, 3, 0.6);
        let (_, opt) = brute_force_opt(&g, None).unwrap();
        let td = heuristic_decomposition(&g);
        prop_assert!(validate_decomposition(&g, &td).is_empty());
        let sol = tree_dp(&g, &td, None).unwrap();
        prop_assert_eq!(sol.value, opt);
        let bound = ((g.sigma_a() + g.sigma_b()) as u128).pow(td.width() as u32 + 1) * td.bags.len() as u128;
        prop_assert!((sol.states as u128) <= bound);

        // Same decomposition rooted at its last bag, and the single-bag decomposition.
        let n = td.bags.len();
        let relabel = |i: usize| (i + n - 1) % n;
        let mut bags = vec![Vec::new(); n];
        for (i, bag) in td.bags.iter().enumerate() {
            bags[relabel(i)] = bag.clone();
        }
        let rerooted = TreeDecomposition { bags, tree: td.tree.iter().map(|&(x, y)| (relabel(x), relabel(y))).collect() };
        prop_assert_eq!(tree_dp_solve(&g, &rerooted).unwrap().1, opt);
        let single = TreeDecomposition { bags: vec![(0..g.vertex_count()).collect()], tree: vec![] };
        prop_assert_eq!(tree_dp_solve(&g, &single).unwrap().1, opt);
    }

    #[test]
    fn algorithms_return_valid_consistent_reports(seed in any::<u64>()) {
        let g = arbitrary_game(seed, 6, 4, 0.4);
        let mut reports = vec![satisfy_one_neighbor(&g), greedy_assignment(&g), divide_and_conquer(&g)];
        for a0 in 0..g.a_count() {
            reports.push(know_neighbors_neighbors(&g, a0).unwrap());
            for sigma in 0..g.sigma_a() {
                if let Ok(r) = know_your_neighbors(&g, a0, sigma) {
                    reports.push(r);
                }
            }
        }
        let best = best_of(&g);
        for r in &reports {
            prop_assert!(r.assignment.validate(&g).is_ok());
            prop_assert_eq!(g.count_satisfied(&r.assignment), r.satisfied);
        }
        prop_assert!(best.assignment.validate(&g).is_ok());
        prop_assert_eq!(g.count_satisfied(&best.assignment), best.satisfied);
        prop_assert!(best.breakdown.iter().all(|b| b.satisfied <= best.satisfied));
        prop_assert!(reports[..3].iter().all(|r| r.satisfied <= best.satisfied));
        let again = best_of(&g);
        prop_assert_eq!((again.assignment, again.satisfied, again.winner), (best.assignment, best.satisfied, best.winner));
    }

    #[test]
    fn uniform_kynn_variants_share_the_bound(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (k_a, k_b) = [(4, 2), (6, 3), (3, 3), (6, 2)][rng.gen_range(0..4)];
        let (g, _) = gen_random_satisfiable(rng.gen_range(2..=10), 8, k_a, k_b, rng.gen_range(1..=4), seed, true).unwrap();
        let stats = compute_stats(&g);
        let p = stats.uniform_p.unwrap();
        for a0 in 0..g.a_count() {
            let bound = frac(stats.h[a0], p);
            prop_assert!(int(know_neighbors_neighbors(&g, a0).unwrap().satisfied) >= bound);
            prop_assert!(int(know_neighbors_neighbors_uniform(&g, a0).unwrap().satisfied) >= bound);
        }
    }

    #[test]
    fn smoothness_matches_naive_loop(seed in any::<u64>()) {
        let g = arbitrary_game(seed, 5, 4, 0.7);
        let mut naive = frac(0, 1);
        for a in 0..g.a_count() {
            let d = g.degree_a(a);
            if d == 0 {
                continue;
            }
            for s in 0..g.sigma_a() {
                for t in s + 1..g.sigma_a() {
                    let same = g.a_edges(a).iter().filter(|&&e| g.project(e, s) == g.project(e, t)).count();
                    naive = naive.max(frac(same, d));
                }
            }
        }
        prop_assert_eq!(measure_smoothness(&g).mu_measured, naive);
    }

    #[test]
    fn observation_one_pins_planted_symbol(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mu = frac(1, rng.gen_range(3..=6));
        let (g, report, plant) = gen_smooth(5, 12, 3, 6, 8, mu, seed).unwrap();
        let mu = report.mu_measured;
        for a in 0..g.a_count() {
            let mut edges = g.a_edges(a).to_vec();
            edges.shuffle(&mut rng);
            let d = edges.len();
            let take = (0..=d).find(|&k| int(k) > mu * int(d)).unwrap();
            let chosen = &edges[..rng.gen_range(take..=d)];
            let consistent: Vec<usize> = (0..g.sigma_a())
                .filter(|&s| chosen.iter().all(|&e| g.project(e, s) == plant.b[g.edge(e).1]))
                .collect();
            prop_assert_eq!(consistent, vec![plant.a[a]]);
        }
    }

    #[test]
    fn baker_classes_partition_and_pigeonhole(seed in any::<u64>(), h in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, _) = gen_planar_grid(rng.gen_range(1..=3), rng.gen_range(2..=4), 2, 2, seed).unwrap();
        // Perturb some tables so the optimum can fall below |E|.
        let mut raw = g.to_raw();
        for edge in raw.edges.iter_mut() {
            if rng.gen_bool(0.3) {
                edge.2 = (0..raw.sigma_a).map(|_| rng.gen_range(0..raw.sigma_b)).collect();
            }
        }
        let g = ProjectionGame::build(raw).unwrap();
        let p = baker_partition(&g, h).unwrap();
        let mut all: Vec<usize> = p.classes.concat();
        all.sort_unstable();
        prop_assert_eq!(all, (0..g.edge_count()).collect::<Vec<_>>());
        let (phi, opt) = brute_force_opt(&g, None).unwrap();
        let mut best = 0;
        for (i, class) in p.classes.iter().enumerate() {
            let residual = residual_game(&g, class);
            prop_assert!(validate_decomposition(&residual, &p.decompositions[i]).is_empty());
            let (sub, sub_opt) = tree_dp_solve(&residual, &p.decompositions[i]).unwrap();
            let lost = class.iter().filter(|&&e| g.is_satisfied(e, &phi)).count();
            prop_assert!(sub_opt + lost >= opt);
            best = best.max(g.count_satisfied(&sub));
        }
        prop_assert!(int(best) >= frac(opt * (h - 1), h));
    }

    #[test]
    fn generators_plant_satisfying_assignments(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, plant, _) = satisfiable(seed);
        prop_assert_eq!(g.count_satisfied(&plant), g.edge_count());
        let (g, _, plant) = gen_smooth(4, 8, 3, 5, 6, frac(1, 2), seed).unwrap();
        prop_assert_eq!(g.count_satisfied(&plant), g.edge_count());
        let (g, plant) = gen_planar_grid(rng.gen_range(1..=4), rng.gen_range(1..=4), 3, 2, seed).unwrap();
        prop_assert_eq!(g.count_satisfied(&plant), g.edge_count());
        let t = gen_matrix_tiling(rng.gen_range(2..=3), rng.gen_range(1..=3), 0.3, true, seed).unwrap();
        let _red = from_matrix_tiling(&t).unwrap();
        let graph = gen_planar_graph(2, 3, 0.7, seed).unwrap();
        if let Some(colors) = graph.three_coloring() {
            let game = from_planar_3col(&graph).game;
            prop_assert_eq!(game.count_satisfied(&coloring_assignment(&graph, &colors)), game.edge_count());
        }
    }

    #[test]
    fn planted_tiling_lifts_to_satisfying_assignment(seed in any::<u64>()) {
        let t = gen_matrix_tiling(3, 2, 0.2, true, seed).unwrap();
        let red = from_matrix_tiling(&t).unwrap();
        let (best, _) = labelcover::reductions::brute_force_tiling(&t, None).unwrap();
        prop_assert_eq!(best.filled(), 9);
        let phi = tiling_assignment(&t, &red, &best).unwrap();
        prop_assert_eq!(red.game.count_satisfied(&phi), red.game.edge_count());
        let back: TilingSolution = extract_tiling(&t, &red.game, &phi);
        prop_assert!(back.is_valid(&t) && back.stars() == 0);
    }

    #[test]
    fn tiling_star_bound_for_random_assignments(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = gen_matrix_tiling(rng.gen_range(2..=4), rng.gen_range(1..=3), 0.5, rng.gen_bool(0.5), seed).unwrap();
        let red = from_matrix_tiling(&t).unwrap();
        let phi = random_assignment(&red.game, &mut rng);
        let sol = extract_tiling(&t, &red.game, &phi);
        prop_assert!(sol.is_valid(&t));
        prop_assert!(sol.stars() <= 2 * red.game.unsatisfied_edges(&phi).len());
    }

    #[test]
    fn text_format_round_trips(seed in any::<u64>()) {
        let g = arbitrary_game(seed, 6, 5, 0.4);
        let text = emit_game(&g);
        let back = parse_game(&text).unwrap();
        prop_assert_eq!(emit_game(&back), text);
        prop_assert_eq!(back, g);
    }

    #[test]
    fn components_lift_additively(seed in any::<u64>()) {
        let g = arbitrary_game(seed, 5, 2, 0.25);
        let split = connected_components(&g);
        let parts: Vec<(Assignment, usize)> =
            split.components.iter().map(|c| brute_force_opt(&c.game, None).unwrap()).collect();
        let total: usize = parts.iter().map(|p| p.1).sum();
        let lifted = split.lift(&g, &parts.iter().map(|p| p.0.clone()).collect::<Vec<_>>());
        prop_assert_eq!(g.count_satisfied(&lifted), total);
        prop_assert_eq!(brute_force_opt(&g, None).unwrap().1, total);
    }
}

#[test]
fn uniform_flag_unset_on_nonuniform_instance() {
    let (g, _) = gen_random_satisfiable(6, 6, 4, 2, 3, 3, false).unwrap();
    assert_eq!(compute_stats(&g).uniform_p, None);
    let (g, _) = gen_random_satisfiable(6, 6, 4, 2, 3, 3, true).unwrap();
    assert_eq!(compute_stats(&g).uniform_p, Some(2));
}
