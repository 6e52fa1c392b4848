//! Versioned text formats: `labelcover v1`, `assign v1`, `td v1`, `colgraph v1`, `matrixtiling v1`.

use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exact::TreeDecomposition;
use crate::game::{Assignment, ProjectionGame, RawGame};
use crate::reductions::{ColoringGraph, MatrixTiling};

pub const GAME_HEADER: &str = "labelcover v1";
pub const ASSIGN_HEADER: &str = "assign v1";
pub const TD_HEADER: &str = "td v1";
pub const COLGRAPH_HEADER: &str = "colgraph v1";
pub const TILING_HEADER: &str = "matrixtiling v1";

/// Hex SHA-256 of the raw file bytes.
pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

struct Lines<'t> {
    inner: std::iter::Enumerate<std::str::Lines<'t>>,
    last: usize,
}

impl<'t> Lines<'t> {
    fn new(text: &'t str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
            last: 0,
        }
    }

    /// Next line that is not a `#` comment; blank lines are skipped unless `keep_blank`.
    fn next(&mut self, keep_blank: bool, what: &str) -> Result<(usize, &'t str)> {
        for (i, line) in self.inner.by_ref() {
            self.last = i + 1;
            let trimmed = line.trim();
            if trimmed.starts_with('#') || (trimmed.is_empty() && !keep_blank) {
                continue;
            }
            return Ok((i + 1, trimmed));
        }
        Err(parse_error(
            self.last + 1,
            format!("unexpected end of input, expected {what}"),
        ))
    }

    fn header(&mut self, header: &str) -> Result<()> {
        let (line, text) = self.next(false, header)?;
        if text != header {
            return Err(parse_error(
                line,
                format!("expected header `{header}`, found `{text}`"),
            ));
        }
        Ok(())
    }

    fn numbers(&mut self, what: &str) -> Result<(usize, Vec<usize>)> {
        let (line, text) = self.next(false, what)?;
        Ok((line, numbers(line, text)?))
    }

    fn finish(&mut self) -> Result<()> {
        match self.next(false, "") {
            Ok((line, text)) => Err(parse_error(line, format!("trailing content `{text}`"))),
            Err(_) => Ok(()),
        }
    }
}

fn numbers(line: usize, text: &str) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| parse_error(line, format!("`{tok}` is not a non-negative integer")))
        })
        .collect()
}

fn exact_len(line: usize, values: Vec<usize>, expected: usize, what: &str) -> Result<Vec<usize>> {
    if values.len() != expected {
        return Err(parse_error(
            line,
            format!(
                "{what}: expected {expected} integers, found {}",
                values.len()
            ),
        ));
    }
    Ok(values)
}

fn join(values: &[usize]) -> String {
    values
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn parse_game(text: &str) -> Result<ProjectionGame> {
    let mut lines = Lines::new(text);
    lines.header(GAME_HEADER)?;
    let (line, dims) = lines.numbers("dimensions line")?;
    let dims = exact_len(line, dims, 5, "dimensions `nA nB kA kB m`")?;
    let (a_count, b_count, sigma_a, sigma_b, m) = (dims[0], dims[1], dims[2], dims[3], dims[4]);
    if sigma_a == 0 || sigma_b == 0 {
        return Err(parse_error(line, "alphabet sizes must be positive"));
    }
    let mut edges = Vec::with_capacity(m);
    let mut edge_lines = Vec::with_capacity(m);
    for i in 0..m {
        let (line, values) = lines.numbers(&format!("edge {i}"))?;
        let values = exact_len(
            line,
            values,
            2 + sigma_a,
            &format!("edge {i} `a b t_0 … t_{}`", sigma_a - 1),
        )?;
        edges.push((values[0], values[1], values[2..].to_vec()));
        edge_lines.push(line);
    }
    lines.finish()?;
    ProjectionGame::build(RawGame {
        a_count,
        b_count,
        sigma_a,
        sigma_b,
        edges,
    })
    .map_err(|err| {
        let edge = match &err {
            Error::IndexOutOfRange { edge, .. }
            | Error::DuplicateEdge { edge, .. }
            | Error::TableLengthMismatch { edge, .. }
            | Error::SymbolOutOfRange { edge, .. } => Some(*edge),
            _ => None,
        };
        parse_error(edge.map_or(line, |e| edge_lines[e]), err.to_string())
    })
}

pub fn emit_game(game: &ProjectionGame) -> String {
    let mut out = format!(
        "{GAME_HEADER}\n{} {} {} {} {}\n",
        game.a_count(),
        game.b_count(),
        game.sigma_a(),
        game.sigma_b(),
        game.edge_count()
    );
    for (e, &(a, b)) in game.edges().iter().enumerate() {
        let _ = writeln!(out, "{a} {b} {}", join(game.table(e)));
    }
    out
}

/// Parses the two label lines; an empty side is an empty line.
pub fn parse_assignment(text: &str) -> Result<Assignment> {
    let mut lines = Lines::new(text);
    lines.header(ASSIGN_HEADER)?;
    let (la, a) = lines.next(true, "A labels")?;
    let a = numbers(la, a)?;
    let b = match lines.next(true, "B labels") {
        Ok((lb, b)) => numbers(lb, b)?,
        Err(e) => return Err(e),
    };
    lines.finish()?;
    Ok(Assignment::new(a, b))
}

pub fn emit_assignment(phi: &Assignment) -> String {
    format!("{ASSIGN_HEADER}\n{}\n{}\n", join(&phi.a), join(&phi.b))
}

/// Parses and checks the assignment against `game`.
pub fn parse_assignment_for(game: &ProjectionGame, text: &str) -> Result<Assignment> {
    let phi = parse_assignment(text)?;
    phi.validate(game)?;
    Ok(phi)
}

/// `nbags nedges`, then `b v…` bag lines and `e i j` tree-edge lines. Vertices are global
/// (A first, then B).
pub fn parse_decomposition(text: &str) -> Result<TreeDecomposition> {
    let mut lines = Lines::new(text);
    lines.header(TD_HEADER)?;
    let (line, dims) = lines.numbers("counts line")?;
    let dims = exact_len(line, dims, 2, "counts `nbags nedges`")?;
    let mut bags = Vec::with_capacity(dims[0]);
    for i in 0..dims[0] {
        let (line, text) = lines.next(false, &format!("bag {i}"))?;
        let rest = text
            .strip_prefix('b')
            .filter(|r| r.is_empty() || r.starts_with(char::is_whitespace))
            .ok_or_else(|| parse_error(line, "bag lines start with `b`"))?;
        let mut bag = numbers(line, rest)?;
        bag.sort_unstable();
        bag.dedup();
        bags.push(bag);
    }
    let mut tree = Vec::with_capacity(dims[1]);
    for i in 0..dims[1] {
        let (line, text) = lines.next(false, &format!("tree edge {i}"))?;
        let rest = text
            .strip_prefix('e')
            .filter(|r| r.starts_with(char::is_whitespace))
            .ok_or_else(|| parse_error(line, "tree-edge lines start with `e`"))?;
        let ends = exact_len(line, numbers(line, rest)?, 2, "tree edge `e i j`")?;
        if ends[0] >= bags.len() || ends[1] >= bags.len() {
            return Err(parse_error(line, "tree edge names a missing bag"));
        }
        tree.push((ends[0], ends[1]));
    }
    lines.finish()?;
    Ok(TreeDecomposition { bags, tree })
}

pub fn emit_decomposition(td: &TreeDecomposition) -> String {
    let mut out = format!("{TD_HEADER}\n{} {}\n", td.bags.len(), td.tree.len());
    for bag in &td.bags {
        if bag.is_empty() {
            out.push_str("b\n");
        } else {
            let _ = writeln!(out, "b {}", join(bag));
        }
    }
    for &(i, j) in &td.tree {
        let _ = writeln!(out, "e {i} {j}");
    }
    out
}

/// `n m planar` (planar is 0 or 1), then `u v` per edge, 0-based.
pub fn parse_colgraph(text: &str) -> Result<ColoringGraph> {
    let mut lines = Lines::new(text);
    lines.header(COLGRAPH_HEADER)?;
    let (line, dims) = lines.numbers("counts line")?;
    let dims = exact_len(line, dims, 3, "counts `n m planar`")?;
    if dims[2] > 1 {
        return Err(parse_error(line, "planar flag must be 0 or 1"));
    }
    let mut edges = Vec::with_capacity(dims[1]);
    for i in 0..dims[1] {
        let (line, values) = lines.numbers(&format!("graph edge {i}"))?;
        let values = exact_len(line, values, 2, "graph edge `u v`")?;
        edges.push((values[0], values[1]));
    }
    lines.finish()?;
    ColoringGraph::new(dims[0], edges, dims[2] == 1).map_err(|e| parse_error(line, e.to_string()))
}

pub fn emit_colgraph(g: &ColoringGraph) -> String {
    let mut out = format!(
        "{COLGRAPH_HEADER}\n{} {} {}\n",
        g.vertex_count(),
        g.edges().len(),
        u8::from(g.claimed_planar())
    );
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// `k n`, then one line per cell `i j c x_1 y_1 … x_c y_c`; cells and pair components are 1-based.
pub fn parse_tiling(text: &str) -> Result<MatrixTiling> {
    let mut lines = Lines::new(text);
    lines.header(TILING_HEADER)?;
    let (line, dims) = lines.numbers("dimensions line")?;
    let dims = exact_len(line, dims, 2, "dimensions `k n`")?;
    let (k, n) = (dims[0], dims[1]);
    let mut sets = vec![None; k * k];
    for _ in 0..k * k {
        let (line, values) = lines.numbers("cell line")?;
        if values.len() < 3 {
            return Err(parse_error(line, "cell line needs `i j c`"));
        }
        let (i, j, c) = (values[0], values[1], values[2]);
        if !(1..=k).contains(&i) || !(1..=k).contains(&j) {
            return Err(parse_error(
                line,
                format!("cell ({i}, {j}) outside 1..={k}"),
            ));
        }
        let values = exact_len(line, values, 3 + 2 * c, "cell line `i j c x_1 y_1 …`")?;
        let mut set = Vec::with_capacity(c);
        for pair in values[3..].chunks(2) {
            if !(1..=n).contains(&pair[0]) || !(1..=n).contains(&pair[1]) {
                return Err(parse_error(
                    line,
                    format!("pair ({}, {}) outside 1..={n}", pair[0], pair[1]),
                ));
            }
            set.push((pair[0] - 1, pair[1] - 1));
        }
        let slot = &mut sets[(i - 1) * k + (j - 1)];
        if slot.is_some() {
            return Err(parse_error(line, format!("cell ({i}, {j}) listed twice")));
        }
        *slot = Some(set);
    }
    lines.finish()?;
    let sets = sets.into_iter().map(Option::unwrap_or_default).collect();
    MatrixTiling::new(k, n, sets).map_err(|e| parse_error(line, e.to_string()))
}

pub fn emit_tiling(t: &MatrixTiling) -> String {
    let k = t.k();
    let mut out = format!("{TILING_HEADER}\n{k} {}\n", t.n());
    for i in 0..k {
        for j in 0..k {
            let set = t.set(i, j);
            let _ = write!(out, "{} {} {}", i + 1, j + 1, set.len());
            for &(x, y) in set {
                let _ = write!(out, " {} {}", x + 1, y + 1);
            }
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const IDENTITY: &str = "labelcover v1\n1 1 2 2 1\n0 0 0 1\n";

    #[test]
    fn identity_round_trips() {
        let g = parse_game(IDENTITY).unwrap();
        assert_eq!(emit_game(&g), IDENTITY);
    }

    #[test]
    fn comments_and_blanks_are_ignored() {
        let text = "# instance\nlabelcover v1\n\n1 1 2 2 1\n# edge\n0 0 0 1\n";
        assert_eq!(emit_game(&parse_game(text).unwrap()), IDENTITY);
    }

    #[test]
    fn truncated_table_names_line() {
        let err = parse_game("labelcover v1\n1 1 2 2 1\n0 0 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
    }

    #[test]
    fn bad_symbol_names_edge_line() {
        let err = parse_game("labelcover v1\n1 2 2 2 2\n0 0 0 1\n0 1 0 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err}");
    }

    #[test]
    fn missing_header() {
        assert!(matches!(
            parse_game("1 1 2 2 1\n"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn assignment_with_empty_side() {
        let phi = Assignment::new(vec![1, 0], vec![]);
        let text = emit_assignment(&phi);
        assert_eq!(text, "assign v1\n1 0\n\n");
        assert_eq!(parse_assignment(&text).unwrap(), phi);
    }

    #[test]
    fn decomposition_round_trips() {
        let td = TreeDecomposition {
            bags: vec![vec![0, 2], vec![], vec![1, 2]],
            tree: vec![(0, 1), (1, 2)],
        };
        let text = emit_decomposition(&td);
        assert_eq!(parse_decomposition(&text).unwrap(), td);
    }

    #[test]
    fn tiling_round_trips() {
        let t = MatrixTiling::new(
            2,
            2,
            vec![vec![(0, 1)], vec![], vec![(1, 1), (0, 0)], vec![(1, 0)]],
        )
        .unwrap();
        let text = emit_tiling(&t);
        assert_eq!(parse_tiling(&text).unwrap(), t);
        assert!(text.contains("2 1 2 1 1 2 2\n"));
    }

    #[test]
    fn colgraph_round_trips() {
        let g = ColoringGraph::new(3, vec![(0, 1), (1, 2)], true).unwrap();
        assert_eq!(parse_colgraph(&emit_colgraph(&g)).unwrap(), g);
    }
}
