use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::exact::decomposition::{validate_decomposition, TreeDecomposition};
use crate::game::{Assignment, ProjectionGame};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpSolution {
    pub assignment: Assignment,
    pub value: usize,
    /// Total bag states evaluated.
    pub states: u64,
}

struct Bag {
    vertices: Vec<usize>,
    radix: Vec<usize>,
    /// Edges with both endpoints in the bag, as (edge, pos_a, pos_b).
    inner: Vec<(usize, usize, usize)>,
}

impl Bag {
    fn state_count(&self) -> u128 {
        self.radix
            .iter()
            .fold(1u128, |acc, &r| acc.saturating_mul(r as u128))
    }
}

/// Child-facing summary: best child value for each labelling of the shared vertices.
struct Link {
    child: usize,
    /// Positions of shared vertices in the parent bag and their key strides.
    parent_pos: Vec<usize>,
    strides: Vec<usize>,
    /// Edges lying inside the shared set, as (edge, parent pos_a, parent pos_b).
    shared_edges: Vec<(usize, usize, usize)>,
    best: Vec<(i64, usize)>,
}

fn advance(labels: &mut [usize], radix: &[usize]) -> bool {
    for i in (0..labels.len()).rev() {
        labels[i] += 1;
        if labels[i] < radix[i] {
            return true;
        }
        labels[i] = 0;
    }
    false
}

fn satisfied(game: &ProjectionGame, edges: &[(usize, usize, usize)], labels: &[usize]) -> i64 {
    edges
        .iter()
        .filter(|&&(e, pa, pb)| game.project(e, labels[pa]) == labels[pb])
        .count() as i64
}

/// Exact optimum by dynamic programming over a tree decomposition.
///
/// States are typed: an A-vertex ranges over Σ_A and a B-vertex over Σ_B. Fails
/// with [`Error::InvalidDecomposition`] if `td` is not valid for `game` and with
/// [`Error::BudgetExceeded`] if the total state count exceeds `state_cap`.
pub fn tree_dp(
    game: &ProjectionGame,
    td: &TreeDecomposition,
    state_cap: Option<u64>,
) -> Result<DpSolution> {
    let problems = validate_decomposition(game, td);
    if let Some(first) = problems.first() {
        return Err(Error::InvalidDecomposition(first.to_string()));
    }
    let n_a = game.a_count();
    let n = game.vertex_count();
    if td.bags.is_empty() {
        return Ok(DpSolution {
            assignment: Assignment::zeros(game),
            value: 0,
            states: 0,
        });
    }
    let mut pos = vec![usize::MAX; n];
    let bags: Vec<Bag> = td
        .bags
        .iter()
        .map(|raw| {
            let mut vertices = raw.clone();
            vertices.sort_unstable();
            vertices.dedup();
            for (i, &v) in vertices.iter().enumerate() {
                pos[v] = i;
            }
            let radix = vertices
                .iter()
                .map(|&v| {
                    if v < n_a {
                        game.sigma_a()
                    } else {
                        game.sigma_b()
                    }
                })
                .collect();
            let mut inner = Vec::new();
            for &v in vertices.iter().filter(|&&v| v < n_a) {
                for &e in game.a_edges(v) {
                    let pb = pos[n_a + game.edge(e).1];
                    if pb != usize::MAX {
                        inner.push((e, pos[v], pb));
                    }
                }
            }
            for &v in &vertices {
                pos[v] = usize::MAX;
            }
            Bag {
                vertices,
                radix,
                inner,
            }
        })
        .collect();

    let total: u128 = bags
        .iter()
        .fold(0u128, |acc, b| acc.saturating_add(b.state_count()));
    if let Some(cap) = state_cap {
        if total > cap as u128 {
            return Err(Error::BudgetExceeded { needed: total, cap });
        }
    }

    // Root at bag 0; process children before parents.
    let adj = td.tree_adjacency();
    let mut parent = vec![usize::MAX; bags.len()];
    let mut order = Vec::with_capacity(bags.len());
    let mut queue = VecDeque::from([0usize]);
    parent[0] = 0;
    while let Some(i) = queue.pop_front() {
        order.push(i);
        for &j in &adj[i] {
            if parent[j] == usize::MAX {
                parent[j] = i;
                queue.push_back(j);
            }
        }
    }

    let mut links: Vec<Vec<Link>> = (0..bags.len()).map(|_| Vec::new()).collect();
    let mut root_values: Vec<i64> = Vec::new();
    for &i in order.iter().rev() {
        let bag = &bags[i];
        let count = bag.state_count() as usize;
        let mut values = Vec::with_capacity(count);
        let mut labels = vec![0usize; bag.vertices.len()];
        for _ in 0..count {
            let mut v = satisfied(game, &bag.inner, &labels);
            for link in &links[i] {
                let key: usize = link
                    .parent_pos
                    .iter()
                    .zip(&link.strides)
                    .map(|(&p, &s)| labels[p] * s)
                    .sum();
                v += link.best[key].0 - satisfied(game, &link.shared_edges, &labels);
            }
            values.push(v);
            advance(&mut labels, &bag.radix);
        }
        if i == 0 {
            root_values = values;
            break;
        }
        // Summarise this bag for its parent.
        let p = parent[i];
        let pbag = &bags[p];
        let shared: Vec<(usize, usize)> = bag
            .vertices
            .iter()
            .enumerate()
            .filter_map(|(ci, v)| pbag.vertices.binary_search(v).ok().map(|pi| (ci, pi)))
            .collect();
        let mut strides = vec![0usize; shared.len()];
        let mut key_space = 1usize;
        for k in (0..shared.len()).rev() {
            strides[k] = key_space;
            key_space *= bag.radix[shared[k].0];
        }
        let mut best = vec![(i64::MIN, 0usize); key_space];
        let mut labels = vec![0usize; bag.vertices.len()];
        for (state, &v) in values.iter().enumerate() {
            let key: usize = shared
                .iter()
                .zip(&strides)
                .map(|(&(ci, _), &s)| labels[ci] * s)
                .sum();
            if v > best[key].0 {
                best[key] = (v, state);
            }
            advance(&mut labels, &bag.radix);
        }
        let in_shared = |q: usize| shared.iter().any(|&(_, pi)| pi == q);
        let shared_edges = pbag
            .inner
            .iter()
            .copied()
            .filter(|&(_, pa, pb)| in_shared(pa) && in_shared(pb))
            .collect();
        links[p].push(Link {
            child: i,
            parent_pos: shared.iter().map(|&(_, pi)| pi).collect(),
            strides,
            shared_edges,
            best,
        });
    }

    let (root_state, &value) = root_values
        .iter()
        .enumerate()
        .fold(None, |acc: Option<(usize, &i64)>, (s, v)| match acc {
            Some((_, bv)) if bv >= v => acc,
            _ => Some((s, v)),
        })
        .expect("root bag has at least one state");

    let mut global = vec![0usize; n];
    let mut stack = vec![(0usize, root_state)];
    while let Some((i, state)) = stack.pop() {
        let bag = &bags[i];
        let mut labels = vec![0usize; bag.vertices.len()];
        let mut rest = state;
        for k in (0..labels.len()).rev() {
            labels[k] = rest % bag.radix[k];
            rest /= bag.radix[k];
        }
        for (k, &v) in bag.vertices.iter().enumerate() {
            global[v] = labels[k];
        }
        for link in &links[i] {
            let key: usize = link
                .parent_pos
                .iter()
                .zip(&link.strides)
                .map(|(&p, &s)| labels[p] * s)
                .sum();
            stack.push((link.child, link.best[key].1));
        }
    }
    let assignment = Assignment::new(global[..n_a].to_vec(), global[n_a..].to_vec());
    let check = game.count_satisfied(&assignment);
    debug_assert_eq!(check as i64, value);
    let states = total.min(u64::MAX as u128) as u64;
    Ok(DpSolution {
        assignment,
        value: check,
        states,
    })
}

/// [`tree_dp`] without a state cap, returning `(assignment, value)`.
pub fn tree_dp_solve(game: &ProjectionGame, td: &TreeDecomposition) -> Result<(Assignment, usize)> {
    tree_dp(game, td, None).map(|s| (s.assignment, s.value))
}
