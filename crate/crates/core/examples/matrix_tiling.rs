//! Matrix Tiling reduced to a projection game.

use labelcover::exact::brute_force_opt;
use labelcover::reductions::{brute_force_tiling, extract_tiling, from_matrix_tiling, gen_matrix_tiling};

pub fn run_example() -> String {
    let tiling = gen_matrix_tiling(2, 2, 0.5, true, 3).expect("valid parameters");
    let reduction = from_matrix_tiling(&tiling).expect("k ≥ 2");
    let (best, _) = brute_force_tiling(&tiling, None).expect("small instance");
    let (phi, opt) = brute_force_opt(&reduction.game, None).expect("small instance");
    let decoded = extract_tiling(&tiling, &reduction.game, &phi);
    format!(
        "tiling optimum fills {} of {} cells\ngame: {} vertices, {} edges, OPT = {opt}\ndecoded tiling has {} stars\n",
        best.filled(),
        tiling.k() * tiling.k(),
        reduction.game.vertex_count(),
        reduction.game.edge_count(),
        decoded.stars()
    )
}

fn main() {
    print!("{}", run_example());
}
