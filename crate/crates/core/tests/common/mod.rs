#![allow(dead_code)]

use labelcover::game::{ProjectionGame, RawGame};

pub fn game(n_a: usize, n_b: usize, k_a: usize, k_b: usize, edges: &[(usize, usize, &[usize])]) -> ProjectionGame {
    ProjectionGame::build(RawGame {
        a_count: n_a,
        b_count: n_b,
        sigma_a: k_a,
        sigma_b: k_b,
        edges: edges.iter().map(|&(a, b, t)| (a, b, t.to_vec())).collect(),
    })
    .expect("well-formed test game")
}

pub fn identity_edge() -> ProjectionGame {
    game(1, 1, 2, 2, &[(0, 0, &[0, 1])])
}

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).expect("fixture exists")
}

pub fn tiny1() -> ProjectionGame {
    labelcover::format::parse_game(&fixture("tiny1.lc")).expect("fixture parses")
}
