use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::game::{Assignment, ProjectionGame, RawGame};
use crate::rational::{int, Rational};
use crate::reductions::coloring::ColoringGraph;
use crate::reductions::tiling::MatrixTiling;
use crate::smooth::{measure_smoothness, SmoothnessReport};

/// Attempts per symbol row before [`gen_smooth`] gives up.
pub const SMOOTH_REJECTION_CAP: usize = 10_000;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check_common(n_a: usize, n_b: usize, k_a: usize, k_b: usize, degree: usize) -> Result<()> {
    if n_a == 0 || n_b == 0 {
        return Err(Error::InfeasibleParams(
            "both sides need at least one vertex".into(),
        ));
    }
    if k_a == 0 || k_b == 0 {
        return Err(Error::InfeasibleParams("alphabets must be nonempty".into()));
    }
    if degree == 0 || degree > n_b {
        return Err(Error::InfeasibleParams(format!(
            "degree {degree} must lie in 1..={n_b}"
        )));
    }
    Ok(())
}

/// Each A-vertex picks `degree` distinct B-vertices; every B-vertex left isolated is then
/// attached to a random A-vertex. Returns sorted `(a, b)` pairs.
fn random_bipartite(
    rng: &mut ChaCha8Rng,
    n_a: usize,
    n_b: usize,
    degree: usize,
) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(n_a * degree);
    let mut covered = vec![false; n_b];
    for a in 0..n_a {
        for b in sample(rng, n_b, degree).into_iter() {
            covered[b] = true;
            pairs.push((a, b));
        }
    }
    for b in 0..n_b {
        if !covered[b] {
            pairs.push((rng.gen_range(0..n_a), b));
        }
    }
    pairs.sort_unstable();
    pairs
}

fn plant(rng: &mut ChaCha8Rng, n_a: usize, n_b: usize, k_a: usize, k_b: usize) -> Assignment {
    let a = (0..n_a).map(|_| rng.gen_range(0..k_a)).collect();
    let b = (0..n_b).map(|_| rng.gen_range(0..k_b)).collect();
    Assignment::new(a, b)
}

/// Table where every B-symbol has exactly `k_a / k_b` preimages, relabelled so `from ↦ to`.
fn balanced_table(
    rng: &mut ChaCha8Rng,
    k_a: usize,
    k_b: usize,
    from: usize,
    to: usize,
) -> Vec<usize> {
    let mut order: Vec<usize> = (0..k_a).collect();
    order.shuffle(rng);
    let mut table = vec![0; k_a];
    for (i, &s) in order.iter().enumerate() {
        table[s] = i % k_b;
    }
    let current = table[from];
    if current != to {
        for t in table.iter_mut() {
            if *t == current {
                *t = to;
            } else if *t == to {
                *t = current;
            }
        }
    }
    table
}

/// Random satisfiable game with a planted assignment satisfying every edge.
///
/// Without `uniform`, table entries are uniform in Σ_B before planting. With `uniform`
/// (which needs `k_b | k_a`), every table maps exactly `k_a / k_b` symbols to each B-symbol.
pub fn gen_random_satisfiable(
    n_a: usize,
    n_b: usize,
    k_a: usize,
    k_b: usize,
    degree: usize,
    seed: u64,
    uniform: bool,
) -> Result<(ProjectionGame, Assignment)> {
    check_common(n_a, n_b, k_a, k_b, degree)?;
    if uniform && !k_a.is_multiple_of(k_b) {
        return Err(Error::InfeasibleParams(format!(
            "uniform tables need |Σ_B| = {k_b} to divide |Σ_A| = {k_a}"
        )));
    }
    let mut rng = rng(seed);
    let pairs = random_bipartite(&mut rng, n_a, n_b, degree);
    let phi = plant(&mut rng, n_a, n_b, k_a, k_b);
    let edges = pairs
        .into_iter()
        .map(|(a, b)| {
            let table = if uniform {
                balanced_table(&mut rng, k_a, k_b, phi.a[a], phi.b[b])
            } else {
                let mut t: Vec<usize> = (0..k_a).map(|_| rng.gen_range(0..k_b)).collect();
                t[phi.a[a]] = phi.b[b];
                t
            };
            (a, b, table)
        })
        .collect();
    let game = ProjectionGame::build(RawGame {
        a_count: n_a,
        b_count: n_b,
        sigma_a: k_a,
        sigma_b: k_b,
        edges,
    })?;
    Ok((game, phi))
}

fn collisions(x: &[usize], y: &[usize]) -> usize {
    x.iter().zip(y).filter(|(p, q)| p == q).count()
}

/// Random satisfiable game whose smoothness is at most `mu_target`.
///
/// For each A-vertex the planted symbol's row (its projections along all incident edges) is
/// fixed by the planted B-labels; every other symbol's row is drawn uniformly from
/// `Σ_B^{d_a}` and redrawn while it collides with an earlier row on more than `mu_target · d_a` edges.
pub fn gen_smooth(
    n_a: usize,
    n_b: usize,
    k_a: usize,
    k_b: usize,
    degree: usize,
    mu_target: Rational,
    seed: u64,
) -> Result<(ProjectionGame, SmoothnessReport, Assignment)> {
    check_common(n_a, n_b, k_a, k_b, degree)?;
    if k_b < 2 || degree < k_b {
        return Err(Error::InfeasibleParams(format!(
            "need degree ≥ |Σ_B| ≥ 2, got degree {degree}, |Σ_B| {k_b}"
        )));
    }
    let mut rng = rng(seed);
    let pairs = random_bipartite(&mut rng, n_a, n_b, degree);
    let phi = plant(&mut rng, n_a, n_b, k_a, k_b);
    let mut edges: Vec<(usize, usize, Vec<usize>)> =
        pairs.iter().map(|&(a, b)| (a, b, vec![0; k_a])).collect();
    let mut start = 0;
    for a in 0..n_a {
        let end = start + pairs[start..].iter().take_while(|p| p.0 == a).count();
        let d = end - start;
        let planted: Vec<usize> = pairs[start..end].iter().map(|&(_, b)| phi.b[b]).collect();
        let mut rows: Vec<Vec<usize>> = vec![Vec::new(); k_a];
        rows[phi.a[a]] = planted;
        let limit = mu_target * int(d);
        for s in (0..k_a).filter(|&s| s != phi.a[a]) {
            let mut attempts = 0;
            loop {
                attempts += 1;
                if attempts > SMOOTH_REJECTION_CAP {
                    return Err(Error::GenerationFailed(format!(
                        "A-vertex {a}: no row for symbol {s} within {SMOOTH_REJECTION_CAP} draws"
                    )));
                }
                let row: Vec<usize> = (0..d).map(|_| rng.gen_range(0..k_b)).collect();
                if rows
                    .iter()
                    .filter(|r| !r.is_empty())
                    .all(|r| int(collisions(r, &row)) <= limit)
                {
                    rows[s] = row;
                    break;
                }
            }
        }
        for (offset, edge) in edges[start..end].iter_mut().enumerate() {
            for s in 0..k_a {
                edge.2[s] = rows[s][offset];
            }
        }
        start = end;
    }
    let game = ProjectionGame::build(RawGame {
        a_count: n_a,
        b_count: n_b,
        sigma_a: k_a,
        sigma_b: k_b,
        edges,
    })?;
    let report = measure_smoothness(&game);
    Ok((game, report, phi))
}

/// Planted game on the `rows × cols` grid graph. Cells with even `r + c` become
/// A-vertices and the rest B-vertices, each side numbered in row-major order.
pub fn gen_planar_grid(
    rows: usize,
    cols: usize,
    k_a: usize,
    k_b: usize,
    seed: u64,
) -> Result<(ProjectionGame, Assignment)> {
    if rows == 0 || cols == 0 || k_a == 0 || k_b == 0 {
        return Err(Error::InfeasibleParams(
            "grid needs positive dimensions and alphabets".into(),
        ));
    }
    let mut index = vec![(false, 0); rows * cols];
    let (mut n_a, mut n_b) = (0, 0);
    for r in 0..rows {
        for c in 0..cols {
            index[r * cols + c] = if (r + c) % 2 == 0 {
                n_a += 1;
                (true, n_a - 1)
            } else {
                n_b += 1;
                (false, n_b - 1)
            };
        }
    }
    let mut pairs = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let (is_a, a) = index[r * cols + c];
            if !is_a {
                continue;
            }
            let mut near = Vec::new();
            if r > 0 {
                near.push((r - 1, c));
            }
            if c > 0 {
                near.push((r, c - 1));
            }
            if c + 1 < cols {
                near.push((r, c + 1));
            }
            if r + 1 < rows {
                near.push((r + 1, c));
            }
            pairs.extend(near.into_iter().map(|(x, y)| (a, index[x * cols + y].1)));
        }
    }
    pairs.sort_unstable();
    let mut rng = rng(seed);
    let phi = plant(&mut rng, n_a, n_b, k_a, k_b);
    let edges = pairs
        .into_iter()
        .map(|(a, b)| {
            let mut t: Vec<usize> = (0..k_a).map(|_| rng.gen_range(0..k_b)).collect();
            t[phi.a[a]] = phi.b[b];
            (a, b, t)
        })
        .collect();
    let game = ProjectionGame::build(RawGame {
        a_count: n_a,
        b_count: n_b,
        sigma_a: k_a,
        sigma_b: k_b,
        edges,
    })?;
    Ok((game, phi))
}

/// Random planar graph: each edge of the `rows × cols` grid with one diagonal per square
/// (a triangulated grid) is kept independently with probability `keep`.
pub fn gen_planar_graph(rows: usize, cols: usize, keep: f64, seed: u64) -> Result<ColoringGraph> {
    if rows == 0 || cols == 0 || !(0.0..=1.0).contains(&keep) {
        return Err(Error::InfeasibleParams(
            "need positive dimensions and keep in [0, 1]".into(),
        ));
    }
    let mut rng = rng(seed);
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let mut cand = Vec::new();
            if c + 1 < cols {
                cand.push(id(r, c + 1));
            }
            if r + 1 < rows {
                cand.push(id(r + 1, c));
            }
            if r + 1 < rows && c + 1 < cols {
                cand.push(id(r + 1, c + 1));
            }
            for v in cand {
                if rng.gen_bool(keep) {
                    edges.push((id(r, c), v));
                }
            }
        }
    }
    ColoringGraph::new(rows * cols, edges, true)
}

/// Random tiling: each pair joins each `S_{i,j}` with probability `density`. With `planted`,
/// row labels `x_i` and column labels `y_j` are drawn and `(x_i, y_j)` is added to `S_{i,j}`,
/// so the optimum is `k²`.
pub fn gen_matrix_tiling(
    k: usize,
    n: usize,
    density: f64,
    planted: bool,
    seed: u64,
) -> Result<MatrixTiling> {
    if k == 0 || n == 0 || !(0.0..=1.0).contains(&density) {
        return Err(Error::InfeasibleParams(
            "need k, n ≥ 1 and density in [0, 1]".into(),
        ));
    }
    let mut rng = rng(seed);
    let rows: Vec<usize> = (0..k).map(|_| rng.gen_range(0..n)).collect();
    let cols: Vec<usize> = (0..k).map(|_| rng.gen_range(0..n)).collect();
    let mut sets = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            let mut set: Vec<(usize, usize)> = (0..n)
                .flat_map(|x| (0..n).map(move |y| (x, y)))
                .filter(|_| rng.gen_bool(density))
                .collect();
            if planted {
                set.push((rows[i], cols[j]));
            }
            sets.push(set);
        }
    }
    MatrixTiling::new(k, n, sets)
}
