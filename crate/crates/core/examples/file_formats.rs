//! Reading and writing the text formats.

use labelcover::exact::heuristic_decomposition;
use labelcover::format::{
    digest, emit_assignment, emit_decomposition, emit_game, parse_assignment_for, parse_decomposition, parse_game,
};

const TINY: &str = include_str!("../fixtures/tiny1.lc");
const PLANT: &str = include_str!("../fixtures/tiny1.assign");

pub fn run_example() -> String {
    let game = parse_game(TINY).expect("fixture parses");
    assert_eq!(emit_game(&game), TINY);
    let phi = parse_assignment_for(&game, PLANT).expect("fixture fits");
    let td = heuristic_decomposition(&game);
    let td_text = emit_decomposition(&td);
    assert_eq!(parse_decomposition(&td_text).expect("round trip"), td);
    format!(
        "sha256 {}\nplanted value {}\n{}{}",
        digest(TINY.as_bytes()),
        game.count_satisfied(&phi),
        emit_assignment(&phi),
        td_text
    )
}

fn main() {
    print!("{}", run_example());
}
