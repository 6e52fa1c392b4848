//! Exhaustive search against tree-decomposition dynamic programming.

use labelcover::exact::{brute_force_opt, heuristic_decomposition, tree_dp_solve, validate_decomposition};
use labelcover::reductions::gen_random_satisfiable;

pub fn run_example() -> String {
    let (game, _) = gen_random_satisfiable(5, 4, 3, 2, 2, 3, false).expect("feasible parameters");
    let td = heuristic_decomposition(&game);
    assert!(validate_decomposition(&game, &td).is_empty());
    let (_, brute) = brute_force_opt(&game, None).expect("small instance");
    let (_, dp) = tree_dp_solve(&game, &td).expect("valid decomposition");
    format!("bags = {}, width = {}\nbrute force OPT = {brute}\ntree DP OPT = {dp}\n", td.bags.len(), td.width())
}

fn main() {
    print!("{}", run_example());
}
