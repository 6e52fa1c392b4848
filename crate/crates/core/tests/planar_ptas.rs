mod common;

use common::{fixture, game};
use labelcover::error::Error;
use labelcover::exact::{brute_force_opt, validate_decomposition};
use labelcover::format::parse_game;
use labelcover::game::{ProjectionGame, RawGame};
use labelcover::planar::{baker_partition, ptas, residual_game, thinning_parameter, PtasOptions};
use labelcover::rational::{frac, int};
use labelcover::reductions::{from_planar_3col, gen_planar_grid, ColoringGraph};
use labelcover::report::Guarantee;

fn path(len: usize) -> ProjectionGame {
    let edges = (0..len).map(|i| (i.div_ceil(2), i / 2, vec![0, 1])).collect();
    ProjectionGame::build(RawGame {
        a_count: len / 2 + 1,
        b_count: len.div_ceil(2),
        sigma_a: 2,
        sigma_b: 2,
        edges,
    })
    .unwrap()
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

#[test]
fn thinning_parameter_values() {
    assert_eq!(thinning_parameter(int(1)), 2);
    assert_eq!(thinning_parameter(frac(1, 2)), 3);
    assert_eq!(thinning_parameter(frac(1, 3)), 4);
    assert_eq!(thinning_parameter(frac(2, 5)), 4);
}

#[test]
fn single_class_leaves_edgeless_residual() {
    let g = path(4);
    let p = baker_partition(&g, 1).unwrap();
    assert_eq!(p.classes, vec![vec![0, 1, 2, 3]]);
    assert!(p.decompositions[0].bags.iter().all(|bag| bag.len() == 1));
    assert_eq!(p.decompositions[0].width(), 0);
    assert!(matches!(baker_partition(&g, 0), Err(Error::InvalidArgument(_))));
}

#[test]
fn path_classes_alternate() {
    let p = baker_partition(&path(4), 2).unwrap();
    assert_eq!(p.classes, vec![vec![0, 2], vec![1, 3]]);
}

#[test]
fn grid_partition_is_exact_cover_with_valid_decompositions() {
    let g = parse_game(&fixture("grid4x4.lc")).unwrap();
    let p = baker_partition(&g, 3).unwrap();
    let all = sorted(p.classes.concat());
    assert_eq!(all, (0..g.edge_count()).collect::<Vec<_>>());
    for (class, td) in p.classes.iter().zip(&p.decompositions) {
        assert!(validate_decomposition(&residual_game(&g, class), td).is_empty());
    }
}

#[test]
fn eps_one_on_path_meets_half() {
    let g = game(2, 2, 2, 2, &[(0, 0, &[0, 1]), (1, 0, &[1, 0]), (1, 1, &[0, 0])]);
    let opt = brute_force_opt(&g, None).unwrap().1;
    assert_eq!(opt, 3);
    let run = ptas(&g, int(1), &PtasOptions::default()).unwrap();
    assert_eq!(run.h, 2);
    assert!(2 * run.report.satisfied >= opt);
    // Each residual is a forest, so its DP optimum satisfies every residual edge.
    let p = baker_partition(&g, 2).unwrap();
    for (class, &value) in p.classes.iter().zip(&run.class_values) {
        assert!(value >= g.edge_count() - class.len());
    }
}

#[test]
fn grid_meets_two_thirds_of_optimum() {
    let (g, _) = gen_planar_grid(3, 3, 3, 2, 11).unwrap();
    let opt = brute_force_opt(&g, None).unwrap().1;
    let run = ptas(&g, frac(1, 2), &PtasOptions::default()).unwrap();
    assert_eq!(run.report.guarantee, Guarantee::FractionOfOptimum(frac(2, 3)));
    assert!(3 * run.report.satisfied >= 2 * opt);
    assert_eq!(run.class_values.len(), 3);
    assert_eq!(run.class_values[run.chosen_class], run.report.satisfied);
}

#[test]
fn coloring_game_meets_three_quarters() {
    let graph = ColoringGraph::new(5, vec![(0, 1), (1, 2), (0, 2), (0, 3), (3, 4)], true).unwrap();
    let red = from_planar_3col(&graph);
    let m = red.game.edge_count();
    let run = ptas(&red.game, frac(1, 3), &PtasOptions::default()).unwrap();
    assert_eq!(run.h, 4);
    assert!(4 * run.report.satisfied >= 3 * m);
}

#[test]
fn dense_input_needs_force_flag() {
    let mut edges = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            edges.push((a, b, vec![0]));
        }
    }
    for a in 0..5 {
        for b in 0..5 {
            if a >= 3 || b >= 3 {
                edges.push((a, b, vec![0]));
            }
        }
    }
    let g = ProjectionGame::build(RawGame { a_count: 5, b_count: 5, sigma_a: 1, sigma_b: 1, edges }).unwrap();
    assert!(matches!(
        ptas(&g, int(1), &PtasOptions::default()),
        Err(Error::PlanarityCheckFailed { edges: 25, bound: 24 })
    ));
    let forced = PtasOptions { force_nonplanar: true, ..Default::default() };
    assert_eq!(ptas(&g, int(1), &forced).unwrap().report.satisfied, 25);
}

#[test]
fn epsilon_outside_unit_interval_is_rejected() {
    let g = path(2);
    for eps in [int(0), frac(3, 2)] {
        assert!(matches!(ptas(&g, eps, &PtasOptions::default()), Err(Error::InvalidArgument(_))));
    }
}
