//! Every approximation algorithm on a random satisfiable game, next to its proven bound.

use labelcover::approx::{
    best_of, compute_sigma_star, divide_and_conquer, greedy_assignment, know_neighbors_neighbors,
    know_your_neighbors, satisfy_one_neighbor,
};
use labelcover::rational::display;
use labelcover::reductions::gen_random_satisfiable;
use labelcover::report::{Guarantee, SolveReport};
use labelcover::stats::compute_stats;

fn line(r: &SolveReport) -> String {
    let bound = match &r.guarantee {
        Guarantee::Edges(x) => display(x),
        other => format!("{other:?}"),
    };
    format!("{:<13} {:>4}   bound {}\n", r.algorithm.name(), r.satisfied, bound)
}

pub fn run_example() -> String {
    let (game, planted) = gen_random_satisfiable(20, 15, 6, 3, 3, 11, false).expect("feasible parameters");
    let stats = compute_stats(&game);
    let star = compute_sigma_star(&game, &stats);
    let a0 = stats.e_n_argmax.expect("game has edges");

    let mut out = format!("|E| = {}, planted value = {}\n", game.edge_count(), game.count_satisfied(&planted));
    out += &line(&satisfy_one_neighbor(&game));
    out += &line(&greedy_assignment(&game));
    out += &line(&know_your_neighbors(&game, a0, planted.a[a0]).expect("planted symbol survives"));
    let (h_vertex, _) = star.h_star_argmax.expect("game has edges");
    out += &line(&know_neighbors_neighbors(&game, h_vertex).expect("valid vertex"));
    out += &line(&divide_and_conquer(&game));
    out += &line(&best_of(&game));
    out
}

fn main() {
    print!("{}", run_example());
}
