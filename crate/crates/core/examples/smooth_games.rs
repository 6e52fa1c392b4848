//! Smoothness measurement and the two smooth-game algorithms.

use labelcover::rational::{display, Rational};
use labelcover::reductions::gen_smooth;
use labelcover::smooth::{default_mu, measure_smoothness, smooth_approx, smooth_exact};

pub fn run_example() -> String {
    let (game, _, _) = gen_smooth(10, 14, 3, 7, 12, Rational::new(1, 6), 1).expect("feasible parameters");
    let measured = measure_smoothness(&game);
    let mu = default_mu(&game, &measured);
    let mut out = format!("measured μ = {}, using μ = {}\n", display(&measured.mu_measured), display(&mu));

    let successes = (0..10)
        .filter(|&seed| smooth_exact(&game, mu, Rational::from_integer(4), seed, Some(1_000_000)).is_ok())
        .count();
    out += &format!("smooth_exact solved {successes} of 10 seeds\n");

    let run = smooth_approx(&game, mu, Some(1_000_000)).expect("within budget");
    out += &format!(
        "smooth_approx ({:?}): {} of {} edges, |B*| = {}\n",
        run.regime,
        run.report.satisfied,
        game.edge_count(),
        run.b_star.len()
    );
    out
}

fn main() {
    print!("{}", run_example());
}
