//! The planar PTAS on a grid game at several accuracies.

use labelcover::exact::brute_force_opt;
use labelcover::planar::{ptas, PtasOptions};
use labelcover::rational::Rational;
use labelcover::reductions::gen_planar_grid;

pub fn run_example() -> String {
    let (game, _) = gen_planar_grid(3, 4, 3, 2, 7).expect("feasible parameters");
    let (_, opt) = brute_force_opt(&game, None).expect("small instance");
    let mut out = format!("OPT = {opt}\n");
    for eps in [Rational::new(1, 1), Rational::new(1, 2), Rational::new(1, 3)] {
        let run = ptas(&game, eps, &PtasOptions::default()).expect("planar grid");
        out += &format!("ε = {eps}: h = {}, value = {}, widths = {:?}\n", run.h, run.report.satisfied, run.widths);
    }
    out
}

fn main() {
    print!("{}", run_example());
}
