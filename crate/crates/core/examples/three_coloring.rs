//! Planar 3-coloring as a projection game, solved and decoded back.

use labelcover::exact::brute_force_opt;
use labelcover::reductions::{extract_coloring, from_planar_3col, gen_planar_graph};

pub fn run_example() -> String {
    let graph = gen_planar_graph(2, 3, 0.8, 4).expect("valid parameters");
    let reduction = from_planar_3col(&graph);
    let (phi, opt) = brute_force_opt(&reduction.game, None).expect("small instance");
    let satisfiable = opt == reduction.game.edge_count();
    let extracted = extract_coloring(&graph, &reduction.game, &phi);
    format!(
        "graph: {} vertices, {} edges\ngame satisfiable: {satisfiable}\n3-colorable: {}\ndecoded coloring: {:?}\n",
        graph.vertex_count(),
        graph.edges().len(),
        graph.three_coloring().is_some(),
        extracted.proper()
    )
}

fn main() {
    print!("{}", run_example());
}
