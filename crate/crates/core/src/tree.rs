//! Instances whose possibility graph is a forest.
//!
//! Every leaf of a forest has a single candidate edge, so its residual degree
//! decides that edge. Peeling leaves one at a time therefore yields the only
//! possible degree-matching subgraph, which is then checked against all cuts.
//! The argument is per component, so forests are accepted, not just trees.

use crate::cut3::lift_realization;
use crate::error::{infeasible, GrcError, Result};
use crate::model::{decide, verify_realization, GrcInstance, SimpleGraph, SolveOutcome};
use crate::preprocess::{eliminate_fixed_edges, possibility_graph, screen_instance};

/// True iff `g` is connected and has exactly `n - 1` edges.
pub fn is_tree(g: &SimpleGraph) -> bool {
    let n = g.vertex_count();
    n > 0 && g.edge_count() == n - 1 && component_count(g) == 1
}

/// True iff `g` has no cycle.
pub fn is_forest(g: &SimpleGraph) -> bool {
    g.edge_count() + component_count(g) == g.vertex_count()
}

fn component_count(g: &SimpleGraph) -> usize {
    let adj = g.adjacency();
    let mut seen = vec![false; g.vertex_count()];
    let mut count = 0;
    for start in 0..g.vertex_count() {
        if seen[start] {
            continue;
        }
        count += 1;
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
    }
    count
}

/// The unique spanning subgraph of the forest `host` with degree `target[v]`
/// at every vertex, if one exists. Leaves are peeled smallest index first.
pub fn peel_forest(host: &SimpleGraph, target: &[usize]) -> Result<SimpleGraph> {
    let n = host.vertex_count();
    if !is_forest(host) {
        return Err(GrcError::InvalidState("host graph has a cycle".into()));
    }
    let mut adj: Vec<std::collections::BTreeSet<usize>> =
        host.adjacency().into_iter().map(|l| l.into_iter().collect()).collect();
    let mut residual = target.to_vec();
    let mut alive = vec![true; n];
    let mut out = SimpleGraph::new(n);
    for _ in 0..n {
        let v = (0..n)
            .find(|&v| alive[v] && adj[v].len() <= 1)
            .ok_or_else(|| GrcError::Internal("forest without a leaf".into()))?;
        alive[v] = false;
        match adj[v].pop_first() {
            Some(u) => {
                adj[u].remove(&v);
                match residual[v] {
                    0 => {}
                    1 => {
                        if residual[u] == 0 {
                            return infeasible(format!("leaf {v} needs an edge to {u}, which is saturated"));
                        }
                        residual[u] -= 1;
                        out.add_edge(v, u)?;
                    }
                    r => return infeasible(format!("leaf {v} has residual degree {r}")),
                }
            }
            None if residual[v] != 0 => {
                return infeasible(format!("vertex {v} has no candidate edges left but needs {}", residual[v]));
            }
            None => {}
        }
        residual[v] = 0;
    }
    Ok(out)
}

/// Decides an instance whose possibility graph (after fixed-edge elimination)
/// is a forest.
pub fn solve_tree(inst: &GrcInstance) -> Result<SolveOutcome> {
    decide(solve_tree_inner(inst))
}

fn solve_tree_inner(inst: &GrcInstance) -> Result<SolveOutcome> {
    // no normalization: on tiny vertex sets it would turn pair cuts into
    // degree checks and hide forbidden pairs from the ledger
    screen_instance(inst)?;
    let (reduced, trace) = eliminate_fixed_edges(inst)?;
    let host = possibility_graph(&reduced)?;
    if !is_forest(&host) {
        return Err(GrcError::InvalidState("possibility graph is not a forest".into()));
    }
    let candidate = lift_realization(&trace, &peel_forest(&host, reduced.degrees())?)?;
    if verify_realization(&candidate, inst)?.valid {
        Ok(SolveOutcome::Realizable(candidate))
    } else {
        Ok(SolveOutcome::Infeasible)
    }
}
