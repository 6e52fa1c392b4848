use crate::error::{Error, Result};
use crate::game::{Assignment, ProjectionGame, RawGame};

/// A Matrix Tiling instance with 0-based cells and pair components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixTiling {
    k: usize,
    n: usize,
    /// `S_{i,j}` at index `i·k + j`, sorted and deduplicated.
    sets: Vec<Vec<(usize, usize)>>,
}

impl MatrixTiling {
    pub fn new(k: usize, n: usize, mut sets: Vec<Vec<(usize, usize)>>) -> Result<Self> {
        if k == 0 || n == 0 {
            return Err(Error::InvalidArgument(
                "tiling needs k ≥ 1 and n ≥ 1".into(),
            ));
        }
        if sets.len() != k * k {
            return Err(Error::ShapeMismatch(format!(
                "{} cell sets for a {k}×{k} tiling",
                sets.len()
            )));
        }
        for (c, set) in sets.iter_mut().enumerate() {
            if let Some(&(x, y)) = set.iter().find(|&&(x, y)| x >= n || y >= n) {
                return Err(Error::InvalidArgument(format!(
                    "cell {c} holds ({x}, {y}) outside 0..{n}"
                )));
            }
            set.sort_unstable();
            set.dedup();
        }
        Ok(MatrixTiling { k, n, sets })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn set(&self, i: usize, j: usize) -> &[(usize, usize)] {
        &self.sets[i * self.k + j]
    }

    pub fn sets(&self) -> &[Vec<(usize, usize)>] {
        &self.sets
    }

    fn contains(&self, i: usize, j: usize, s: (usize, usize)) -> bool {
        self.set(i, j).binary_search(&s).is_ok()
    }
}

/// One choice per cell; `None` is ★.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TilingSolution {
    pub cells: Vec<Option<(usize, usize)>>,
}

impl TilingSolution {
    pub fn filled(&self) -> usize {
        self.cells.iter().filter(|c| c.is_some()).count()
    }

    pub fn stars(&self) -> usize {
        self.cells.len() - self.filled()
    }

    /// Membership plus the row (first coordinate) and column (second coordinate) constraints.
    pub fn is_valid(&self, t: &MatrixTiling) -> bool {
        let k = t.k;
        if self.cells.len() != k * k {
            return false;
        }
        for i in 0..k {
            for j in 0..k {
                let Some(s) = self.cells[i * k + j] else {
                    continue;
                };
                if !t.contains(i, j, s) {
                    return false;
                }
                if j + 1 < k {
                    if let Some(r) = self.cells[i * k + j + 1] {
                        if r.0 != s.0 {
                            return false;
                        }
                    }
                }
                if i + 1 < k {
                    if let Some(d) = self.cells[(i + 1) * k + j] {
                        if d.1 != s.1 {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// Game built from a tiling, with index maps.
///
/// A-vertex `i·k + j` is cell `(i, j)`. B-vertices list the `(k−1)·k` vertical separators
/// `b_{i+½, j}` (index `i·k + j`) and then the `k·(k−1)` horizontal separators `b_{i, j+½}`.
/// Σ_A index `x·n + y` is the pair `(x, y)`; Σ_B is `0..n` followed by ■ (`n`) and ◆ (`n + 1`).
#[derive(Debug, Clone)]
pub struct TilingReduction {
    pub game: ProjectionGame,
    /// Doubled plane coordinates: cell `(i, j)` sits at `(2i, 2j)`.
    pub a_position: Vec<(usize, usize)>,
    pub b_position: Vec<(usize, usize)>,
}

impl TilingReduction {
    pub fn square(&self) -> usize {
        self.game.sigma_b() - 2
    }

    pub fn diamond(&self) -> usize {
        self.game.sigma_b() - 1
    }
}

pub fn encode_pair(n: usize, s: (usize, usize)) -> usize {
    s.0 * n + s.1
}

pub fn decode_pair(n: usize, symbol: usize) -> (usize, usize) {
    (symbol / n, symbol % n)
}

pub fn from_matrix_tiling(t: &MatrixTiling) -> Result<TilingReduction> {
    let (k, n) = (t.k, t.n);
    if k < 2 {
        return Err(Error::InvalidArgument(
            "the tiling reduction needs k ≥ 2".into(),
        ));
    }
    let vertical = |i: usize, j: usize| i * k + j;
    let horizontal = |i: usize, j: usize| (k - 1) * k + i * (k - 1) + j;
    let (square, diamond) = (n, n + 1);
    let table = |i: usize, j: usize, second: bool, outside: usize| -> Vec<usize> {
        (0..n * n)
            .map(|sym| {
                let s = decode_pair(n, sym);
                match (t.contains(i, j, s), second) {
                    (true, true) => s.1,
                    (true, false) => s.0,
                    (false, _) => outside,
                }
            })
            .collect()
    };
    let mut edges = Vec::with_capacity(4 * k * k);
    for i in 0..k {
        for j in 0..k {
            let a = i * k + j;
            if i > 0 {
                edges.push((a, vertical(i - 1, j), table(i, j, true, square)));
            }
            if j > 0 {
                edges.push((a, horizontal(i, j - 1), table(i, j, false, square)));
            }
            if j + 1 < k {
                edges.push((a, horizontal(i, j), table(i, j, false, diamond)));
            }
            if i + 1 < k {
                edges.push((a, vertical(i, j), table(i, j, true, diamond)));
            }
        }
    }
    let b_count = 2 * k * (k - 1);
    let game = ProjectionGame::build(RawGame {
        a_count: k * k,
        b_count,
        sigma_a: n * n,
        sigma_b: n + 2,
        edges,
    })
    .expect("reduction tables are well formed");
    let a_position = (0..k * k).map(|c| (2 * (c / k), 2 * (c % k))).collect();
    let mut b_position = Vec::with_capacity(b_count);
    for i in 0..k - 1 {
        for j in 0..k {
            b_position.push((2 * i + 1, 2 * j));
        }
    }
    for i in 0..k {
        for j in 0..k - 1 {
            b_position.push((2 * i, 2 * j + 1));
        }
    }
    Ok(TilingReduction {
        game,
        a_position,
        b_position,
    })
}

/// Cell `(i, j)` keeps `φ_A(a_{i,j})` when every edge at every neighbour of `a_{i,j}` is satisfied, else ★.
pub fn extract_tiling(t: &MatrixTiling, game: &ProjectionGame, phi: &Assignment) -> TilingSolution {
    let cells = (0..t.k * t.k)
        .map(|a| {
            let clean = game.a_edges(a).iter().all(|&e| {
                game.b_edges(game.edge(e).1)
                    .iter()
                    .all(|&f| game.is_satisfied(f, phi))
            });
            let s = decode_pair(t.n, phi.a[a]);
            (clean && t.contains(a / t.k, a % t.k, s)).then_some(s)
        })
        .collect();
    TilingSolution { cells }
}

/// The assignment of the completeness direction for a tiling without ★.
pub fn tiling_assignment(
    t: &MatrixTiling,
    red: &TilingReduction,
    sol: &TilingSolution,
) -> Option<Assignment> {
    let k = t.k;
    let cells: Vec<(usize, usize)> = sol.cells.iter().copied().collect::<Option<_>>()?;
    let a = cells.iter().map(|&s| encode_pair(t.n, s)).collect();
    let mut b = Vec::with_capacity(red.game.b_count());
    for _i in 0..k - 1 {
        for j in 0..k {
            b.push(cells[j].1);
        }
    }
    for i in 0..k {
        for _j in 0..k - 1 {
            b.push(cells[i * k].0);
        }
    }
    Some(Assignment::new(a, b))
}

/// Exhaustive search for the maximum number of non-★ cells.
///
/// Cells are filled row by row, trying the members of `S_{i,j}` in increasing order before ★,
/// so the first optimum found is the lexicographically smallest in that order.
/// `cap` bounds `Π (|S_{i,j}| + 1)`.
pub fn brute_force_tiling(t: &MatrixTiling, cap: Option<u64>) -> Result<(TilingSolution, usize)> {
    let needed = t
        .sets
        .iter()
        .fold(1u128, |acc, s| acc.saturating_mul(s.len() as u128 + 1));
    if let Some(cap) = cap {
        if needed > cap as u128 {
            return Err(Error::BudgetExceeded { needed, cap });
        }
    }
    struct Search<'t> {
        t: &'t MatrixTiling,
        current: Vec<Option<(usize, usize)>>,
        best: Vec<Option<(usize, usize)>>,
        best_count: Option<usize>,
    }
    impl Search<'_> {
        fn fits(&self, c: usize, s: (usize, usize)) -> bool {
            let k = self.t.k;
            let (i, j) = (c / k, c % k);
            let left = j > 0 && self.current[c - 1].is_some_and(|l| l.0 != s.0);
            let up = i > 0 && self.current[c - k].is_some_and(|u| u.1 != s.1);
            !left && !up
        }
        fn go(&mut self, c: usize, count: usize) {
            let total = self.current.len();
            if self.best_count.is_some_and(|b| count + (total - c) <= b) {
                return;
            }
            if c == total {
                self.best_count = Some(count);
                self.best = self.current.clone();
                return;
            }
            for idx in 0..self.t.sets[c].len() {
                let s = self.t.sets[c][idx];
                if self.fits(c, s) {
                    self.current[c] = Some(s);
                    self.go(c + 1, count + 1);
                }
            }
            self.current[c] = None;
            self.go(c + 1, count);
        }
    }
    let cells = t.k * t.k;
    let mut search = Search {
        t,
        current: vec![None; cells],
        best: vec![None; cells],
        best_count: None,
    };
    search.go(0, 0);
    let count = search.best_count.unwrap_or(0);
    Ok((TilingSolution { cells: search.best }, count))
}
