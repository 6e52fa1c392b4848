//! Build a game by hand, score an assignment and run the combined approximation.

use labelcover::approx::best_of;
use labelcover::game::{Assignment, ProjectionGame, RawGame};
use labelcover::rational::display;
use labelcover::stats::compute_stats;

pub fn run_example() -> String {
    // Two A-vertices with alphabet {0, 1, 2}, two B-vertices with alphabet {0, 1}.
    let game = ProjectionGame::build(RawGame {
        a_count: 2,
        b_count: 2,
        sigma_a: 3,
        sigma_b: 2,
        edges: vec![(0, 0, vec![0, 1, 1]), (0, 1, vec![1, 0, 0]), (1, 1, vec![0, 1, 0]), (1, 0, vec![1, 1, 0])],
    })
    .expect("well-formed game");

    let phi = Assignment::new(vec![0, 2], vec![0, 1]);
    let stats = compute_stats(&game);
    let report = best_of(&game);

    let mut out = String::new();
    out += &format!("hand assignment satisfies {} of {} edges\n", game.count_satisfied(&phi), game.edge_count());
    out += &format!("p̄^max = {}\n", display(&stats.p_bar_max));
    out += &format!(
        "best_of: {} edges via {}\n",
        report.satisfied,
        report.winner.map_or("-", |w| w.name())
    );
    out
}

fn main() {
    print!("{}", run_example());
}
