use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::game::ProjectionGame;

/// Bags over global vertex indices (A-vertices `0..n_A`, then B-vertices) and
/// the tree joining them, rooted at bag 0.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub tree: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// Largest bag size minus one; 0 for an empty decomposition.
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(Vec::len)
            .max()
            .unwrap_or(1)
            .saturating_sub(1)
    }

    /// A single bag holding every vertex.
    pub fn trivial(vertex_count: usize) -> Self {
        TreeDecomposition {
            bags: vec![(0..vertex_count).collect()],
            tree: Vec::new(),
        }
    }

    /// Adjacency lists of the bag tree.
    pub fn tree_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(i, j) in &self.tree {
            if i < self.bags.len() && j < self.bags.len() {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
        adj
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// The bag graph is not a tree (wrong edge count, out-of-range index, or disconnected).
    NotATree(String),
    /// A bag names a vertex that does not exist.
    UnknownVertex { bag: usize, vertex: usize },
    /// Coverage: some vertex is in no bag.
    VertexUncovered { vertex: usize },
    /// Edge containment: no bag holds both endpoints.
    EdgeUncovered { edge: usize, a: usize, b: usize },
    /// Connectivity: the bags holding this vertex do not form a subtree.
    VertexDisconnected { vertex: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotATree(why) => write!(f, "bag graph is not a tree: {why}"),
            Violation::UnknownVertex { bag, vertex } => {
                write!(f, "bag {bag} names unknown vertex {vertex}")
            }
            Violation::VertexUncovered { vertex } => {
                write!(f, "condition 1: vertex {vertex} is in no bag")
            }
            Violation::EdgeUncovered { edge, a, b } => {
                write!(f, "condition 2: edge {edge} (a{a}, b{b}) is in no bag")
            }
            Violation::VertexDisconnected { vertex } => {
                write!(
                    f,
                    "condition 3: bags containing vertex {vertex} are not connected"
                )
            }
        }
    }
}

fn tree_problems(td: &TreeDecomposition) -> Option<String> {
    let n = td.bags.len();
    if n == 0 {
        return (!td.tree.is_empty()).then(|| "tree edges without bags".to_string());
    }
    if let Some(&(i, j)) = td.tree.iter().find(|&&(i, j)| i >= n || j >= n || i == j) {
        return Some(format!("invalid tree edge ({i}, {j})"));
    }
    if td.tree.len() != n - 1 {
        return Some(format!("{} tree edges for {} bags", td.tree.len(), n));
    }
    let adj = td.tree_adjacency();
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(i) = queue.pop_front() {
        for &j in &adj[i] {
            if !seen[j] {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    seen.iter()
        .any(|s| !s)
        .then(|| "bag tree is disconnected".to_string())
}

/// Checks the three tree-decomposition conditions; empty means valid.
pub fn validate_decomposition(game: &ProjectionGame, td: &TreeDecomposition) -> Vec<Violation> {
    let mut out = Vec::new();
    if let Some(why) = tree_problems(td) {
        out.push(Violation::NotATree(why));
    }
    let n = game.vertex_count();
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            if v >= n {
                out.push(Violation::UnknownVertex { bag: i, vertex: v });
            } else if holders[v].last() != Some(&i) {
                holders[v].push(i);
            }
        }
    }
    for (v, h) in holders.iter().enumerate() {
        if h.is_empty() {
            out.push(Violation::VertexUncovered { vertex: v });
        }
    }
    let n_a = game.a_count();
    for (e, &(a, b)) in game.edges().iter().enumerate() {
        let (x, y) = (&holders[a], &holders[n_a + b]);
        if !x.iter().any(|i| y.contains(i)) {
            out.push(Violation::EdgeUncovered { edge: e, a, b });
        }
    }
    if !out.iter().any(|v| matches!(v, Violation::NotATree(_))) {
        // A subset of tree nodes is connected iff (#nodes - #internal tree edges) == 1.
        let mut internal = vec![0usize; n];
        let bag_sets: Vec<BTreeSet<usize>> = td
            .bags
            .iter()
            .map(|b| b.iter().copied().collect())
            .collect();
        for &(i, j) in &td.tree {
            for v in bag_sets[i].intersection(&bag_sets[j]) {
                if *v < n {
                    internal[*v] += 1;
                }
            }
        }
        for v in 0..n {
            if !holders[v].is_empty() && holders[v].len() != internal[v] + 1 {
                out.push(Violation::VertexDisconnected { vertex: v });
            }
        }
    }
    out
}

/// Per edge: (#bags holding both endpoints) − (#tree edges whose two bags both hold them).
/// The DP counts each edge exactly this many times; a valid decomposition gives 1 everywhere.
pub fn edge_net_counts(game: &ProjectionGame, td: &TreeDecomposition) -> Vec<i64> {
    let n_a = game.a_count();
    let sets: Vec<BTreeSet<usize>> = td
        .bags
        .iter()
        .map(|b| b.iter().copied().collect())
        .collect();
    game.edges()
        .iter()
        .map(|&(a, b)| {
            let holds = |s: &BTreeSet<usize>| s.contains(&a) && s.contains(&(n_a + b));
            let bags = sets.iter().filter(|s| holds(s)).count() as i64;
            let links = td
                .tree
                .iter()
                .filter(|&&(i, j)| holds(&sets[i]) && holds(&sets[j]))
                .count() as i64;
            bags - links
        })
        .collect()
}

/// Undirected primal graph over global vertex indices.
pub fn primal_graph(game: &ProjectionGame) -> Vec<BTreeSet<usize>> {
    let n_a = game.a_count();
    let mut adj = vec![BTreeSet::new(); game.vertex_count()];
    for &(a, b) in game.edges() {
        adj[a].insert(n_a + b);
        adj[n_a + b].insert(a);
    }
    adj
}

fn fill_in(adj: &[BTreeSet<usize>], v: usize) -> usize {
    let nb: Vec<usize> = adj[v].iter().copied().collect();
    let mut missing = 0;
    for (i, &x) in nb.iter().enumerate() {
        for &y in &nb[i + 1..] {
            if !adj[x].contains(&y) {
                missing += 1;
            }
        }
    }
    missing
}

fn eliminate(adj: &mut [BTreeSet<usize>], v: usize) -> Vec<usize> {
    let nb: Vec<usize> = adj[v].iter().copied().collect();
    for (i, &x) in nb.iter().enumerate() {
        for &y in &nb[i + 1..] {
            adj[x].insert(y);
            adj[y].insert(x);
        }
        adj[x].remove(&v);
    }
    adj[v].clear();
    nb
}

/// Greedy min-fill elimination order; ties go to the smallest vertex index.
pub fn min_fill_order(adj: &[BTreeSet<usize>]) -> Vec<usize> {
    let mut work = adj.to_vec();
    let mut alive: BTreeSet<usize> = (0..adj.len()).collect();
    let mut order = Vec::with_capacity(adj.len());
    while let Some(v) = alive
        .iter()
        .copied()
        .min_by_key(|&v| (fill_in(&work, v), v))
    {
        eliminate(&mut work, v);
        alive.remove(&v);
        order.push(v);
    }
    order
}

/// Builds the clique-tree decomposition induced by an elimination order.
///
/// The bag of `v` is `v` plus its neighbours at elimination time; its parent is
/// the bag of the earliest-eliminated of those neighbours. Bags are emitted in
/// reverse elimination order so that bag 0 is a root; remaining roots (one per
/// extra connected component) hang off bag 0.
pub fn decomposition_from_order(adj: &[BTreeSet<usize>], order: &[usize]) -> TreeDecomposition {
    let n = adj.len();
    assert_eq!(order.len(), n);
    if n == 0 {
        return TreeDecomposition::default();
    }
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut work = adj.to_vec();
    let mut bags = Vec::with_capacity(n);
    let mut parents = Vec::with_capacity(n);
    for &v in order {
        let nb = eliminate(&mut work, v);
        parents.push(nb.iter().copied().min_by_key(|&u| position[u]));
        let mut bag = nb;
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
    }
    // Reverse: elimination position i becomes bag n-1-i.
    let flip = |i: usize| n - 1 - i;
    let mut out_bags = vec![Vec::new(); n];
    for (i, bag) in bags.into_iter().enumerate() {
        out_bags[flip(i)] = bag;
    }
    let mut tree = Vec::with_capacity(n - 1);
    for (i, parent) in parents.iter().enumerate() {
        match parent {
            Some(u) => tree.push((flip(position[*u]), flip(i))),
            None if flip(i) != 0 => tree.push((0, flip(i))),
            None => {}
        }
    }
    tree.sort_unstable();
    TreeDecomposition {
        bags: out_bags,
        tree,
    }
}

/// Min-fill heuristic decomposition; always valid, width not optimised.
pub fn heuristic_decomposition(game: &ProjectionGame) -> TreeDecomposition {
    let adj = primal_graph(game);
    let order = min_fill_order(&adj);
    decomposition_from_order(&adj, &order)
}

/// Vertices outside `set ∪ {v}` reachable from `v` through paths whose interior lies in `set`.
fn q_size(adj: &[BTreeSet<usize>], set: u32, v: usize) -> usize {
    let mut seen: u32 = 1 << v;
    let mut stack = vec![v];
    let mut count = 0;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if seen & (1 << y) != 0 {
                continue;
            }
            seen |= 1 << y;
            if set & (1 << y) != 0 {
                stack.push(y);
            } else {
                count += 1;
            }
        }
    }
    count
}

/// Minimum-width decomposition by dynamic programming over vertex subsets.
/// Returns `None` when the graph has more than `max_vertices` (≤ 20) vertices.
pub fn exact_decomposition(
    game: &ProjectionGame,
    max_vertices: usize,
) -> Option<TreeDecomposition> {
    let n = game.vertex_count();
    if n > max_vertices.min(20) {
        return None;
    }
    let adj = primal_graph(game);
    let full = 1usize << n;
    // best[s]: minimal max-|Q| over orders eliminating exactly s first; last[s]: vertex eliminated last.
    let mut best = vec![usize::MAX; full];
    let mut last = vec![usize::MAX; full];
    best[0] = 0;
    for s in 1..full {
        for v in 0..n {
            if s & (1 << v) == 0 {
                continue;
            }
            let rest = s & !(1 << v);
            let cost = best[rest].max(q_size(&adj, rest as u32, v));
            if cost < best[s] {
                best[s] = cost;
                last[s] = v;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full - 1;
    while s != 0 {
        let v = last[s];
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    Some(decomposition_from_order(&adj, &order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::RawGame;

    fn path_a0_b0_a1() -> ProjectionGame {
        ProjectionGame::build(RawGame {
            a_count: 2,
            b_count: 1,
            sigma_a: 2,
            sigma_b: 2,
            edges: vec![(0, 0, vec![0, 1]), (1, 0, vec![0, 1])],
        })
        .unwrap()
    }

    #[test]
    fn trivial_decomposition_is_valid() {
        let g = path_a0_b0_a1();
        let td = TreeDecomposition::trivial(g.vertex_count());
        assert!(validate_decomposition(&g, &td).is_empty());
        assert_eq!(td.width(), 2);
    }

    #[test]
    fn path_decomposition_and_missing_vertex() {
        let g = path_a0_b0_a1();
        // global: a0 = 0, a1 = 1, b0 = 2
        let td = TreeDecomposition {
            bags: vec![vec![0, 2], vec![2, 1]],
            tree: vec![(0, 1)],
        };
        assert!(validate_decomposition(&g, &td).is_empty());
        assert_eq!(td.width(), 1);
        let broken = TreeDecomposition {
            bags: vec![vec![0, 2], vec![1]],
            tree: vec![(0, 1)],
        };
        assert_eq!(
            validate_decomposition(&g, &broken),
            vec![Violation::EdgeUncovered {
                edge: 1,
                a: 1,
                b: 0
            }]
        );
    }

    #[test]
    fn disconnected_holder_set_is_reported() {
        let g = path_a0_b0_a1();
        let td = TreeDecomposition {
            bags: vec![vec![0, 2], vec![1], vec![1, 2]],
            tree: vec![(0, 1), (1, 2)],
        };
        assert_eq!(
            validate_decomposition(&g, &td),
            vec![Violation::VertexDisconnected { vertex: 2 }]
        );
    }

    #[test]
    fn edgeless_graph_gives_singletons() {
        let g = ProjectionGame::build(RawGame {
            a_count: 2,
            b_count: 2,
            sigma_a: 1,
            sigma_b: 1,
            edges: vec![],
        })
        .unwrap();
        let td = heuristic_decomposition(&g);
        assert!(validate_decomposition(&g, &td).is_empty());
        assert_eq!(td.width(), 0);
        assert!(td.bags.iter().all(|b| b.len() == 1));
    }

    #[test]
    fn exact_matches_known_widths() {
        let g = path_a0_b0_a1();
        let td = exact_decomposition(&g, 12).unwrap();
        assert!(validate_decomposition(&g, &td).is_empty());
        assert_eq!(td.width(), 1);
    }
}
