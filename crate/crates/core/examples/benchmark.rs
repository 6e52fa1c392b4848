//! The benchmark harness over the bundled corpus.

use std::path::Path;

use labelcover::cli::{bench_corpus, BENCH_ALGORITHMS};

pub fn run_example() -> String {
    let corpus = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/corpus");
    bench_corpus(&corpus, &BENCH_ALGORITHMS, None, false, false).expect("corpus parses")
}

fn main() {
    print!("{}", run_example());
}
