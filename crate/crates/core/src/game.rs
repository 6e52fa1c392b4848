//! Projection game instances, assignments, evaluation and component splitting.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Unvalidated instance description, as produced by a parser or generator.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RawGame {
    pub a_count: usize,
    pub b_count: usize,
    pub sigma_a: usize,
    pub sigma_b: usize,
    /// `(a, b, table)` where `table[i]` is the image of A-symbol `i`.
    pub edges: Vec<(usize, usize, Vec<usize>)>,
}

/// A bipartite constraint graph with a total projection table on every edge.
///
/// Edge order is the identity of edges: every per-edge quantity elsewhere in
/// the crate is indexed by position in [`ProjectionGame::edges`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionGame {
    a_count: usize,
    b_count: usize,
    sigma_a: usize,
    sigma_b: usize,
    edges: Vec<(usize, usize)>,
    tables: Vec<usize>,
    a_edges: Vec<Vec<usize>>,
    b_edges: Vec<Vec<usize>>,
}

/// Labels for every vertex of a game.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Assignment {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl Assignment {
    pub fn new(a: Vec<usize>, b: Vec<usize>) -> Self {
        Assignment { a, b }
    }

    /// All-zero labels for `game`.
    pub fn zeros(game: &ProjectionGame) -> Self {
        Assignment {
            a: vec![0; game.a_count()],
            b: vec![0; game.b_count()],
        }
    }

    pub fn validate(&self, game: &ProjectionGame) -> Result<()> {
        if self.a.len() != game.a_count() || self.b.len() != game.b_count() {
            return Err(Error::ShapeMismatch(format!(
                "expected {} A-labels and {} B-labels, got {} and {}",
                game.a_count(),
                game.b_count(),
                self.a.len(),
                self.b.len()
            )));
        }
        if let Some((i, &s)) = self
            .a
            .iter()
            .enumerate()
            .find(|(_, &s)| s >= game.sigma_a())
        {
            return Err(Error::ShapeMismatch(format!(
                "A-label {s} of vertex {i} out of range"
            )));
        }
        if let Some((i, &s)) = self
            .b
            .iter()
            .enumerate()
            .find(|(_, &s)| s >= game.sigma_b())
        {
            return Err(Error::ShapeMismatch(format!(
                "B-label {s} of vertex {i} out of range"
            )));
        }
        Ok(())
    }
}

impl ProjectionGame {
    /// Validates a raw description.
    pub fn build(raw: RawGame) -> Result<Self> {
        if raw.sigma_a == 0 || raw.sigma_b == 0 {
            return Err(Error::EmptyAlphabet);
        }
        let mut seen: HashMap<(usize, usize), usize> = HashMap::with_capacity(raw.edges.len());
        let mut edges = Vec::with_capacity(raw.edges.len());
        let mut tables = Vec::with_capacity(raw.edges.len() * raw.sigma_a);
        for (idx, (a, b, table)) in raw.edges.into_iter().enumerate() {
            if a >= raw.a_count {
                return Err(Error::IndexOutOfRange {
                    edge: idx,
                    detail: format!("a = {a} >= n_A = {}", raw.a_count),
                });
            }
            if b >= raw.b_count {
                return Err(Error::IndexOutOfRange {
                    edge: idx,
                    detail: format!("b = {b} >= n_B = {}", raw.b_count),
                });
            }
            if let Some(&first) = seen.get(&(a, b)) {
                return Err(Error::DuplicateEdge {
                    edge: idx,
                    first,
                    a,
                    b,
                });
            }
            seen.insert((a, b), idx);
            if table.len() != raw.sigma_a {
                return Err(Error::TableLengthMismatch {
                    edge: idx,
                    expected: raw.sigma_a,
                    found: table.len(),
                });
            }
            if let Some((position, &symbol)) =
                table.iter().enumerate().find(|(_, &s)| s >= raw.sigma_b)
            {
                return Err(Error::SymbolOutOfRange {
                    edge: idx,
                    position,
                    symbol,
                    sigma_b: raw.sigma_b,
                });
            }
            edges.push((a, b));
            tables.extend_from_slice(&table);
        }
        Ok(Self::assemble(
            raw.a_count,
            raw.b_count,
            raw.sigma_a,
            raw.sigma_b,
            edges,
            tables,
        ))
    }

    fn assemble(
        a_count: usize,
        b_count: usize,
        sigma_a: usize,
        sigma_b: usize,
        edges: Vec<(usize, usize)>,
        tables: Vec<usize>,
    ) -> Self {
        let mut a_edges = vec![Vec::new(); a_count];
        let mut b_edges = vec![Vec::new(); b_count];
        for (e, &(a, b)) in edges.iter().enumerate() {
            a_edges[a].push(e);
            b_edges[b].push(e);
        }
        ProjectionGame {
            a_count,
            b_count,
            sigma_a,
            sigma_b,
            edges,
            tables,
            a_edges,
            b_edges,
        }
    }

    pub fn to_raw(&self) -> RawGame {
        RawGame {
            a_count: self.a_count,
            b_count: self.b_count,
            sigma_a: self.sigma_a,
            sigma_b: self.sigma_b,
            edges: (0..self.edge_count())
                .map(|e| (self.edges[e].0, self.edges[e].1, self.table(e).to_vec()))
                .collect(),
        }
    }

    pub fn a_count(&self) -> usize {
        self.a_count
    }

    pub fn b_count(&self) -> usize {
        self.b_count
    }

    /// `n_A + n_B`; global vertex indices put A first.
    pub fn vertex_count(&self) -> usize {
        self.a_count + self.b_count
    }

    pub fn sigma_a(&self) -> usize {
        self.sigma_a
    }

    pub fn sigma_b(&self) -> usize {
        self.sigma_b
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn table(&self, e: usize) -> &[usize] {
        &self.tables[e * self.sigma_a..(e + 1) * self.sigma_a]
    }

    #[inline]
    pub fn project(&self, e: usize, symbol: usize) -> usize {
        self.tables[e * self.sigma_a + symbol]
    }

    /// Incident edge indices of an A-vertex, increasing.
    pub fn a_edges(&self, a: usize) -> &[usize] {
        &self.a_edges[a]
    }

    /// Incident edge indices of a B-vertex, increasing.
    pub fn b_edges(&self, b: usize) -> &[usize] {
        &self.b_edges[b]
    }

    pub fn degree_a(&self, a: usize) -> usize {
        self.a_edges[a].len()
    }

    pub fn degree_b(&self, b: usize) -> usize {
        self.b_edges[b].len()
    }

    /// Edge index of `(a, b)` if present.
    pub fn find_edge(&self, a: usize, b: usize) -> Option<usize> {
        self.a_edges[a]
            .iter()
            .copied()
            .find(|&e| self.edges[e].1 == b)
    }

    #[inline]
    pub fn is_satisfied(&self, e: usize, phi: &Assignment) -> bool {
        let (a, b) = self.edges[e];
        self.project(e, phi.a[a]) == phi.b[b]
    }

    /// Number of satisfied edges; `phi` must already be valid for this game.
    pub fn count_satisfied(&self, phi: &Assignment) -> usize {
        (0..self.edge_count())
            .filter(|&e| self.is_satisfied(e, phi))
            .count()
    }

    pub fn unsatisfied_edges(&self, phi: &Assignment) -> Vec<usize> {
        (0..self.edge_count())
            .filter(|&e| !self.is_satisfied(e, phi))
            .collect()
    }

    /// Same vertices and alphabets, keeping only the edges selected by `keep`.
    /// The returned map sends new edge indices to old ones.
    pub fn restrict_edges(
        &self,
        mut keep: impl FnMut(usize) -> bool,
    ) -> (ProjectionGame, Vec<usize>) {
        let kept: Vec<usize> = (0..self.edge_count()).filter(|&e| keep(e)).collect();
        let edges = kept.iter().map(|&e| self.edges[e]).collect();
        let tables = kept
            .iter()
            .flat_map(|&e| self.table(e).iter().copied())
            .collect();
        (
            Self::assemble(
                self.a_count,
                self.b_count,
                self.sigma_a,
                self.sigma_b,
                edges,
                tables,
            ),
            kept,
        )
    }

    /// Reorders edges so that new edge `i` is old edge `order[i]`.
    pub fn permute_edges(&self, order: &[usize]) -> ProjectionGame {
        assert_eq!(order.len(), self.edge_count());
        let edges = order.iter().map(|&e| self.edges[e]).collect();
        let tables = order
            .iter()
            .flat_map(|&e| self.table(e).iter().copied())
            .collect();
        Self::assemble(
            self.a_count,
            self.b_count,
            self.sigma_a,
            self.sigma_b,
            edges,
            tables,
        )
    }
}

/// Exact number of edges satisfied by `phi`.
pub fn value(game: &ProjectionGame, phi: &Assignment) -> Result<usize> {
    phi.validate(game)?;
    Ok(game.count_satisfied(phi))
}

/// One connected piece of a game with maps back into the parent.
#[derive(Debug, Clone)]
pub struct Component {
    pub game: ProjectionGame,
    pub a_map: Vec<usize>,
    pub b_map: Vec<usize>,
    pub edge_map: Vec<usize>,
}

/// Connected components that carry at least one edge, plus isolated vertices.
#[derive(Debug, Clone)]
pub struct ComponentSplit {
    pub components: Vec<Component>,
    pub isolated_a: Vec<usize>,
    pub isolated_b: Vec<usize>,
}

impl ComponentSplit {
    /// Assembles a parent assignment from one assignment per component.
    /// Isolated vertices receive label 0.
    pub fn lift(&self, parent: &ProjectionGame, parts: &[Assignment]) -> Assignment {
        assert_eq!(parts.len(), self.components.len());
        let mut phi = Assignment::zeros(parent);
        for (component, part) in self.components.iter().zip(parts) {
            for (local, &global) in component.a_map.iter().enumerate() {
                phi.a[global] = part.a[local];
            }
            for (local, &global) in component.b_map.iter().enumerate() {
                phi.b[global] = part.b[local];
            }
        }
        phi
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Splits a game into connected components ordered by smallest global vertex index.
pub fn connected_components(game: &ProjectionGame) -> ComponentSplit {
    let n_a = game.a_count();
    let mut parent: Vec<usize> = (0..game.vertex_count()).collect();
    for &(a, b) in game.edges() {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, n_a + b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut slot: HashMap<usize, usize> = HashMap::new();
    let mut groups: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let mut isolated_a = Vec::new();
    let mut isolated_b = Vec::new();
    for v in 0..game.vertex_count() {
        let isolated = if v < n_a {
            game.degree_a(v) == 0
        } else {
            game.degree_b(v - n_a) == 0
        };
        if isolated {
            if v < n_a {
                isolated_a.push(v)
            } else {
                isolated_b.push(v - n_a)
            }
            continue;
        }
        let root = find(&mut parent, v);
        let idx = *slot.entry(root).or_insert_with(|| {
            groups.push((Vec::new(), Vec::new()));
            groups.len() - 1
        });
        if v < n_a {
            groups[idx].0.push(v);
        } else {
            groups[idx].1.push(v - n_a);
        }
    }
    let mut a_local = vec![0; n_a];
    let mut b_local = vec![0; game.b_count()];
    let mut comp_of_a = vec![usize::MAX; n_a];
    for (c, (a_map, b_map)) in groups.iter().enumerate() {
        for (i, &a) in a_map.iter().enumerate() {
            a_local[a] = i;
            comp_of_a[a] = c;
        }
        for (i, &b) in b_map.iter().enumerate() {
            b_local[b] = i;
        }
    }
    let mut edge_maps: Vec<Vec<usize>> = vec![Vec::new(); groups.len()];
    for (e, &(a, _)) in game.edges().iter().enumerate() {
        edge_maps[comp_of_a[a]].push(e);
    }
    let components = groups
        .into_iter()
        .zip(edge_maps)
        .map(|((a_map, b_map), edge_map)| {
            let edges = edge_map
                .iter()
                .map(|&e| (a_local[game.edge(e).0], b_local[game.edge(e).1]))
                .collect();
            let tables = edge_map
                .iter()
                .flat_map(|&e| game.table(e).iter().copied())
                .collect();
            let sub = ProjectionGame::assemble(
                a_map.len(),
                b_map.len(),
                game.sigma_a(),
                game.sigma_b(),
                edges,
                tables,
            );
            Component {
                game: sub,
                a_map,
                b_map,
                edge_map,
            }
        })
        .collect();
    ComponentSplit {
        components,
        isolated_a,
        isolated_b,
    }
}
