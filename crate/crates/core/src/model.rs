//! Instances, graphs, cut evaluation and the realization verifier.
//!
//! Vertices are identified by their index `0..n`. The degree sequence is
//! indexed by vertex, so no ordering of `degrees` is assumed.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{infeasible, invalid, GrcError, Result};

/// A cut constraint `|∂(set)| = ell`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CutConstraint {
    pub set: Vec<usize>,
    pub ell: usize,
}

impl CutConstraint {
    /// Builds a constraint, sorting the set. Duplicate members are rejected.
    pub fn new(set: impl IntoIterator<Item = usize>, ell: usize) -> Result<Self> {
        let mut set: Vec<usize> = set.into_iter().collect();
        set.sort_unstable();
        if set.windows(2).any(|w| w[0] == w[1]) {
            return invalid(format!("cut set {set:?} has duplicate members"));
        }
        Ok(CutConstraint { set, ell })
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.set.binary_search(&v).is_ok()
    }
}

impl fmt::Display for CutConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {})", self.set, self.ell)
    }
}

/// A degree sequence plus a list of cut constraints over labeled vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "crate::format::InstanceDoc", into = "crate::format::InstanceDoc")]
pub struct GrcInstance {
    degrees: Vec<usize>,
    cuts: Vec<CutConstraint>,
}

impl GrcInstance {
    /// Validates shape: `n ≥ 1` and every cut set is a nonempty proper subset
    /// of the vertex set with in-range, distinct members.
    pub fn new(degrees: Vec<usize>, cuts: Vec<CutConstraint>) -> Result<Self> {
        let n = degrees.len();
        if n == 0 {
            return invalid("instance needs at least one vertex");
        }
        let mut checked = Vec::with_capacity(cuts.len());
        for cut in cuts {
            let cut = CutConstraint::new(cut.set, cut.ell)?;
            if cut.set.is_empty() {
                return invalid("cut set is empty");
            }
            if cut.set.len() >= n {
                return invalid(format!("cut set {:?} is not a proper subset", cut.set));
            }
            if let Some(&v) = cut.set.last() {
                if v >= n {
                    return invalid(format!("cut set {:?} references vertex {v} >= n={n}", cut.set));
                }
            }
            checked.push(cut);
        }
        Ok(GrcInstance { degrees, cuts: checked })
    }

    /// Shorthand used heavily in tests: `(set, ell)` pairs.
    pub fn from_pairs<S>(degrees: Vec<usize>, cuts: impl IntoIterator<Item = (S, usize)>) -> Result<Self>
    where
        S: IntoIterator<Item = usize>,
    {
        let cuts = cuts
            .into_iter()
            .map(|(s, ell)| CutConstraint::new(s, ell))
            .collect::<Result<Vec<_>>>()?;
        GrcInstance::new(degrees, cuts)
    }

    pub fn vertex_count(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn cuts(&self) -> &[CutConstraint] {
        &self.cuts
    }

    pub(crate) fn degrees_mut(&mut self) -> &mut Vec<usize> {
        &mut self.degrees
    }

    pub(crate) fn cuts_mut(&mut self) -> &mut Vec<CutConstraint> {
        &mut self.cuts
    }
}

/// A labeled simple graph. Edges are stored as `(i, j)` with `i < j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "crate::format::GraphDoc", into = "crate::format::GraphDoc")]
pub struct SimpleGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

fn ordered(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        SimpleGraph { n, edges: BTreeSet::new() }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = SimpleGraph::new(n);
        for (u, v) in edges {
            if !g.add_edge(u, v)? {
                return invalid(format!("duplicate edge ({u}, {v})"));
            }
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        SimpleGraph { n, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    /// Inserts `uv`; returns whether the edge was new.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        if u == v {
            return invalid(format!("self-loop at {u}"));
        }
        if u >= self.n || v >= self.n {
            return invalid(format!("edge ({u}, {v}) out of range for n={}", self.n));
        }
        Ok(self.edges.insert(ordered(u, v)))
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        self.edges.remove(&ordered(u, v))
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.edges.contains(&ordered(u, v))
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Drops every vertex with index `>= n`, along with its edges.
    pub(crate) fn truncate(&mut self, n: usize) {
        self.edges.retain(|&(_, b)| b < n);
        self.n = n;
    }
}

/// Result of a solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Realizable(SimpleGraph),
    Infeasible,
    ResourceLimit,
}

impl SolveOutcome {
    pub fn is_realizable(&self) -> bool {
        matches!(self, SolveOutcome::Realizable(_))
    }

    pub fn witness(&self) -> Option<&SimpleGraph> {
        match self {
            SolveOutcome::Realizable(g) => Some(g),
            _ => None,
        }
    }
}

fn membership(n: usize, s: &[usize]) -> Result<Vec<bool>> {
    let mut inside = vec![false; n];
    for &v in s {
        if v >= n {
            return invalid(format!("vertex {v} out of range for n={n}"));
        }
        inside[v] = true;
    }
    Ok(inside)
}

/// Number of edges with exactly one endpoint in `s`.
pub fn cut_size(g: &SimpleGraph, s: &[usize]) -> Result<usize> {
    let inside = membership(g.n, s)?;
    let members = inside.iter().filter(|&&b| b).count();
    if members == 0 || members == g.n {
        return invalid("cut set must be a nonempty proper subset");
    }
    Ok(g.edges.iter().filter(|&&(u, v)| inside[u] != inside[v]).count())
}

/// `d(S)`: the sum of prescribed degrees over `s`.
pub fn degree_sum(inst: &GrcInstance, s: &[usize]) -> Result<usize> {
    let n = inst.vertex_count();
    s.iter().try_fold(0usize, |acc, &v| {
        if v >= n {
            invalid(format!("vertex {v} out of range for n={n}"))
        } else {
            Ok(acc + inst.degrees[v])
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Degree { vertex: usize, expected: usize, actual: usize },
    Cut { index: usize, set: Vec<usize>, expected: usize, actual: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

/// Checks every degree and every cut of `inst` against `g`.
pub fn verify_realization(g: &SimpleGraph, inst: &GrcInstance) -> Result<VerifyReport> {
    let n = inst.vertex_count();
    if g.n != n {
        return invalid(format!("graph has {} vertices, instance has {n}", g.n));
    }
    let mut violations = Vec::new();
    for (vertex, (&actual, &expected)) in g.degrees().iter().zip(&inst.degrees).enumerate() {
        if actual != expected {
            violations.push(Violation::Degree { vertex, expected, actual });
        }
    }
    for (index, cut) in inst.cuts.iter().enumerate() {
        let actual = cut_size(g, &cut.set)?;
        if actual != cut.ell {
            violations.push(Violation::Cut { index, set: cut.set.clone(), expected: cut.ell, actual });
        }
    }
    Ok(VerifyReport { valid: violations.is_empty(), violations })
}

/// Size of `s` after complement reduction: `min(|S|, n - |S|)`.
pub(crate) fn reduced_size(n: usize, len: usize) -> usize {
    len.min(n - len)
}

/// Largest cut-set size after complement reduction. Sets that reduce to a
/// single vertex are degree checks and do not count; an empty list gives 0.
pub fn width(inst: &GrcInstance) -> usize {
    let n = inst.vertex_count();
    inst.cuts
        .iter()
        .map(|c| reduced_size(n, c.len()))
        .filter(|&s| s >= 2)
        .max()
        .unwrap_or(0)
}

fn complement(n: usize, set: &[usize]) -> Vec<usize> {
    (0..n).filter(|v| set.binary_search(v).is_err()).collect()
}

/// Canonical form of an instance.
///
/// Every set larger than `n/2` is replaced by its complement (on a tie the
/// side containing vertex 0 is kept). Single-vertex sets become degree checks
/// and are dropped when consistent. Duplicates collapse, and the cut list is
/// sorted by set. Two different sizes on one set make the instance infeasible.
pub fn normalize(inst: &GrcInstance) -> Result<GrcInstance> {
    let n = inst.vertex_count();
    let mut cuts = Vec::with_capacity(inst.cuts.len());
    for cut in &inst.cuts {
        if cut.set.is_empty() || cut.set.len() >= n || cut.set.iter().any(|&v| v >= n) {
            return invalid(format!("malformed cut {cut}"));
        }
        let len = cut.set.len();
        let flip = 2 * len > n || (2 * len == n && cut.set[0] != 0);
        let set = if flip { complement(n, &cut.set) } else { cut.set.clone() };
        if set.len() == 1 {
            let v = set[0];
            if inst.degrees[v] != cut.ell {
                return infeasible(format!("cut {cut} demands degree {} at vertex {v}, which has {}", cut.ell, inst.degrees[v]));
            }
            continue;
        }
        cuts.push(CutConstraint { set, ell: cut.ell });
    }
    cuts.sort();
    cuts.dedup();
    if let Some(w) = cuts.windows(2).find(|w| w[0].set == w[1].set) {
        return infeasible(format!("set {:?} has two cut sizes, {} and {}", w[0].set, w[0].ell, w[1].ell));
    }
    Ok(GrcInstance { degrees: inst.degrees.clone(), cuts })
}

/// Maps an `Infeasible` error raised mid-pipeline to the matching outcome.
pub(crate) fn decide(r: Result<SolveOutcome>) -> Result<SolveOutcome> {
    match r {
        Err(GrcError::Infeasible(_)) => Ok(SolveOutcome::Infeasible),
        other => other,
    }
}
