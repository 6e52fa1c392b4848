use crate::error::{Error, Result};
use crate::game::{Assignment, ProjectionGame, RawGame};

/// The six ordered pairs of distinct colours, in A-symbol order.
pub const COLOR_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)];

/// A simple undirected graph to be 3-coloured.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringGraph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    claimed_planar: bool,
}

impl ColoringGraph {
    /// Rejects self-loops, out-of-range endpoints and repeated edges (in either orientation).
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>, claimed_planar: bool) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= vertices || v >= vertices {
                return Err(Error::InvalidArgument(format!(
                    "graph edge {i} ({u}, {v}) leaves 0..{vertices}"
                )));
            }
            if u == v {
                return Err(Error::InvalidArgument(format!(
                    "graph edge {i} is a self-loop at {u}"
                )));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidArgument(format!(
                    "graph edge {i} ({u}, {v}) repeats an earlier edge"
                )));
            }
        }
        Ok(ColoringGraph {
            vertices,
            edges,
            claimed_planar,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn claimed_planar(&self) -> bool {
        self.claimed_planar
    }

    pub fn is_proper(&self, colors: &[usize]) -> bool {
        colors.len() == self.vertices
            && colors.iter().all(|&c| c < 3)
            && self.edges.iter().all(|&(u, v)| colors[u] != colors[v])
    }

    /// Exhaustive search; the lexicographically first proper 3-colouring, if any.
    pub fn three_coloring(&self) -> Option<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices];
        for &(u, v) in &self.edges {
            adj[u.max(v)].push(u.min(v));
        }
        let mut colors = vec![0usize; self.vertices];
        fn place(v: usize, adj: &[Vec<usize>], colors: &mut [usize]) -> bool {
            if v == colors.len() {
                return true;
            }
            for c in 0..3 {
                if adj[v].iter().all(|&u| colors[u] != c) {
                    colors[v] = c;
                    if place(v + 1, adj, colors) {
                        return true;
                    }
                }
            }
            false
        }
        place(0, &adj, &mut colors).then_some(colors)
    }
}

/// Game built from a graph: A-vertex `i` is graph edge `i`, B-vertex `v` is graph vertex `v`.
#[derive(Debug, Clone)]
pub struct ColoringReduction {
    pub game: ProjectionGame,
    pub a_to_edge: Vec<(usize, usize)>,
}

/// A-vertex `i` for edge `(u, v)` picks an ordered pair of distinct colours; its edge to `u`
/// projects to the first colour and its edge to `v` to the second.
pub fn from_planar_3col(g: &ColoringGraph) -> ColoringReduction {
    let first: Vec<usize> = COLOR_PAIRS.iter().map(|p| p.0).collect();
    let second: Vec<usize> = COLOR_PAIRS.iter().map(|p| p.1).collect();
    let mut edges = Vec::with_capacity(2 * g.edges.len());
    for (i, &(u, v)) in g.edges.iter().enumerate() {
        edges.push((i, u, first.clone()));
        edges.push((i, v, second.clone()));
    }
    let game = ProjectionGame::build(RawGame {
        a_count: g.edges.len(),
        b_count: g.vertices,
        sigma_a: COLOR_PAIRS.len(),
        sigma_b: 3,
        edges,
    })
    .expect("reduction tables are well formed");
    ColoringReduction {
        game,
        a_to_edge: g.edges.clone(),
    }
}

/// Colours read off the B-labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringExtraction {
    /// `None` for graph vertices touching a violated game edge.
    pub colors: Vec<Option<usize>>,
    /// Unsatisfied game edges.
    pub violated: Vec<usize>,
}

impl ColoringExtraction {
    /// The full colouring when every game edge is satisfied.
    pub fn proper(&self) -> Option<Vec<usize>> {
        if self.violated.is_empty() {
            self.colors.iter().copied().collect()
        } else {
            None
        }
    }
}

pub fn extract_coloring(
    g: &ColoringGraph,
    game: &ProjectionGame,
    phi: &Assignment,
) -> ColoringExtraction {
    let violated = game.unsatisfied_edges(phi);
    let mut colors: Vec<Option<usize>> = phi.b.iter().map(|&c| Some(c)).collect();
    colors.resize(g.vertices, None);
    for &e in &violated {
        colors[game.edge(e).1] = None;
    }
    ColoringExtraction { colors, violated }
}

/// The assignment induced by a proper colouring.
pub fn coloring_assignment(g: &ColoringGraph, colors: &[usize]) -> Assignment {
    let a = g
        .edges
        .iter()
        .map(|&(u, v)| {
            COLOR_PAIRS
                .iter()
                .position(|&p| p == (colors[u], colors[v]))
                .unwrap_or(0)
        })
        .collect();
    Assignment::new(a, colors.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_layout() {
        let g = ColoringGraph::new(3, vec![(0, 1), (1, 2), (0, 2)], true).unwrap();
        let red = from_planar_3col(&g);
        assert_eq!(
            (
                red.game.a_count(),
                red.game.b_count(),
                red.game.edge_count()
            ),
            (3, 3, 6)
        );
        let colors = g.three_coloring().unwrap();
        let phi = coloring_assignment(&g, &colors);
        assert_eq!(red.game.count_satisfied(&phi), 6);
        assert_eq!(extract_coloring(&g, &red.game, &phi).proper(), Some(colors));
    }

    #[test]
    fn rejects_loops_and_repeats() {
        assert!(ColoringGraph::new(2, vec![(0, 0)], false).is_err());
        assert!(ColoringGraph::new(2, vec![(0, 1), (1, 0)], false).is_err());
        assert!(ColoringGraph::new(2, vec![(0, 2)], false).is_err());
    }

    #[test]
    fn mismatched_labels_are_reported() {
        let g = ColoringGraph::new(2, vec![(0, 1)], true).unwrap();
        let red = from_planar_3col(&g);
        let phi = Assignment::new(vec![0], vec![1, 1]);
        let out = extract_coloring(&g, &red.game, &phi);
        assert!(!out.violated.is_empty());
        assert!(out.proper().is_none());
    }
}
