//! Screening, pair classification, fixed-edge elimination and the
//! possibility graph.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{infeasible, invalid, GrcError, Result};
use crate::model::{degree_sum, GrcInstance, SimpleGraph};

/// All cut sizes `d(S) - 2k` with `0 <= k <= C(|S|, 2)` that are nonnegative.
pub fn feasible_ell_set(inst: &GrcInstance, s: &[usize]) -> Result<BTreeSet<usize>> {
    let n = inst.vertex_count();
    let distinct: BTreeSet<usize> = s.iter().copied().collect();
    if distinct.is_empty() || distinct.len() >= n || distinct.len() != s.len() {
        return invalid(format!("{s:?} is not a nonempty proper subset of {n} vertices"));
    }
    let total = degree_sum(inst, s)?;
    let pairs = s.len() * (s.len() - 1) / 2;
    Ok((0..=pairs).map_while(|k| total.checked_sub(2 * k)).collect())
}

/// Necessary conditions: even degree sum, `d_i <= n - 1`, and every `ell`
/// reachable from `d(S)`. Passing the screen does not imply realizability.
pub fn screen_instance(inst: &GrcInstance) -> Result<()> {
    let n = inst.vertex_count();
    let total: usize = inst.degrees().iter().sum();
    if total % 2 == 1 {
        return infeasible(format!("degree sum {total} is odd"));
    }
    if let Some((v, &d)) = inst.degrees().iter().enumerate().find(|&(_, &d)| d >= n) {
        return infeasible(format!("vertex {v} has degree {d} but only {} possible neighbours", n - 1));
    }
    for cut in inst.cuts() {
        if !feasible_ell_set(inst, &cut.set)?.contains(&cut.ell) {
            return infeasible(format!("cut {cut} is unreachable from d(S)"));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairStatus {
    Free,
    Fixed,
    Forbidden,
}

/// Per-pair status derived from the size-2 cuts of an instance.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PairLedger {
    status: BTreeMap<(usize, usize), PairStatus>,
    conflict: bool,
    problems: Vec<String>,
}

impl PairLedger {
    /// Classifies every cut that is (up to complement) a vertex pair. Never
    /// fails; contradictions are recorded on the ledger.
    pub fn classify(inst: &GrcInstance) -> PairLedger {
        let n = inst.vertex_count();
        let d = inst.degrees();
        let mut ledger = PairLedger::default();
        for cut in inst.cuts() {
            // a set and its complement have the same cut, so either side
            // that is a pair pins that pair
            let mut sides = Vec::new();
            if cut.len() == 2 {
                sides.push(cut.set.clone());
            }
            if n - cut.len() == 2 {
                sides.push((0..n).filter(|v| !cut.contains(*v)).collect());
            }
            for pair in sides {
                let (u, v) = (pair[0], pair[1]);
                let sum = d[u] + d[v];
                let status = if cut.ell == sum {
                    PairStatus::Forbidden
                } else if cut.ell + 2 == sum {
                    PairStatus::Fixed
                } else {
                    ledger.problems.push(format!("cut {cut} is neither {sum} nor {} on pair ({u}, {v})", sum as isize - 2));
                    continue;
                };
                match ledger.status.insert((u, v), status) {
                    Some(prev) if prev != status => {
                        ledger.conflict = true;
                        ledger.problems.push(format!("pair ({u}, {v}) is both fixed and forbidden"));
                    }
                    _ => {}
                }
            }
        }
        ledger
    }

    pub fn status(&self, u: usize, v: usize) -> PairStatus {
        let key = if u < v { (u, v) } else { (v, u) };
        self.status.get(&key).copied().unwrap_or(PairStatus::Free)
    }

    pub fn has_conflict(&self) -> bool {
        self.conflict
    }

    pub fn is_consistent(&self) -> bool {
        self.problems.is_empty()
    }

    fn pairs_with(&self, wanted: PairStatus) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.status.iter().filter(move |(_, &s)| s == wanted).map(|(&p, _)| p)
    }

    /// Fixed pairs in ascending lexicographic order.
    pub fn fixed_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs_with(PairStatus::Fixed).collect()
    }

    /// The forbidden edge set, ascending.
    pub fn forbidden_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs_with(PairStatus::Forbidden).collect()
    }
}

/// Classifies size-2 cuts, failing with `Infeasible` on any contradiction or
/// on a pair cut whose size is neither `d_u + d_v` nor `d_u + d_v - 2`.
pub fn build_pair_ledger(inst: &GrcInstance) -> Result<PairLedger> {
    let ledger = PairLedger::classify(inst);
    match ledger.problems.first() {
        Some(p) => infeasible(p.clone()),
        None => Ok(ledger),
    }
}

/// One step of a rewrite log. Lifting replays these in reverse.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TraceRecord {
    FixedEdgeEliminated { u: usize, v: usize },
    Case1Forbid { set: [usize; 3] },
    Case2Fix { set: [usize; 3] },
    Case3Gadget { set: [usize; 3], aux_x: usize },
    Case4Gadget { set: [usize; 3], aux_x: usize, aux_y: usize },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ReductionTrace {
    pub records: Vec<TraceRecord>,
}

impl ReductionTrace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, record: TraceRecord) {
        self.records.push(record);
    }

    pub fn extend(&mut self, other: ReductionTrace) {
        self.records.extend(other.records);
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }
}

/// Removes the edge `uv` (known to be present in every realization) from the
/// instance: both degrees drop by one and every cut that `uv` crosses drops
/// by one. The fixing cut on `{u, v}` itself keeps its size, which now reads
/// as "forbidden".
fn remove_forced_edge(inst: &mut GrcInstance, u: usize, v: usize) -> Result<()> {
    for w in [u, v] {
        let d = &mut inst.degrees_mut()[w];
        if *d == 0 {
            return infeasible(format!("fixed edge ({u}, {v}) exceeds the degree of vertex {w}"));
        }
        *d -= 1;
    }
    for cut in inst.cuts_mut() {
        if cut.contains(u) != cut.contains(v) {
            if cut.ell == 0 {
                return infeasible(format!("fixed edge ({u}, {v}) crosses cut ({:?}, 0)", cut.set));
            }
            cut.ell -= 1;
        }
    }
    Ok(())
}

/// Eliminates fixed pairs one at a time in ascending pair order until none
/// remain, reclassifying after every step.
pub fn eliminate_fixed_edges(inst: &GrcInstance) -> Result<(GrcInstance, ReductionTrace)> {
    let mut current = inst.clone();
    let mut trace = ReductionTrace::new();
    loop {
        let ledger = build_pair_ledger(&current)?;
        let Some(&(u, v)) = ledger.fixed_pairs().first() else {
            return Ok((current, trace));
        };
        remove_forced_edge(&mut current, u, v)?;
        trace.push(TraceRecord::FixedEdgeEliminated { u, v });
    }
}

/// `K_n` minus every forbidden pair. Expects fixed pairs to be eliminated.
pub fn possibility_graph(inst: &GrcInstance) -> Result<SimpleGraph> {
    let ledger = build_pair_ledger(inst)?;
    if let Some((u, v)) = ledger.fixed_pairs().first() {
        return Err(GrcError::InvalidState(format!("pair ({u}, {v}) is still fixed; eliminate fixed edges first")));
    }
    let mut g = SimpleGraph::complete(inst.vertex_count());
    for (u, v) in ledger.forbidden_pairs() {
        g.remove_edge(u, v);
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(degrees: Vec<usize>, cuts: Vec<(Vec<usize>, usize)>) -> GrcInstance {
        GrcInstance::from_pairs(degrees, cuts).unwrap()
    }

    #[test]
    fn feasible_sizes() {
        let i = inst(vec![2, 2, 2, 0], vec![]);
        assert_eq!(feasible_ell_set(&i, &[0, 1, 2]).unwrap().into_iter().collect::<Vec<_>>(), vec![0, 2, 4, 6]);
        let i = inst(vec![1, 1, 0], vec![]);
        assert_eq!(feasible_ell_set(&i, &[0, 1]).unwrap().into_iter().collect::<Vec<_>>(), vec![0, 2]);
        let i = inst(vec![0, 0, 0, 0], vec![]);
        assert_eq!(feasible_ell_set(&i, &[0, 1, 2]).unwrap().into_iter().collect::<Vec<_>>(), vec![0]);
        assert!(feasible_ell_set(&i, &[]).is_err());
        assert!(feasible_ell_set(&i, &[0, 1, 2, 3]).is_err());
    }

    #[test]
    fn screening() {
        assert!(matches!(screen_instance(&inst(vec![1, 1, 1], vec![])), Err(GrcError::Infeasible(_))));
        let i = inst(vec![2, 2, 2, 0], vec![(vec![0, 1, 2], 5)]);
        assert!(matches!(screen_instance(&i), Err(GrcError::Infeasible(_))));
        assert!(screen_instance(&inst(vec![3, 1, 1, 1], vec![])).is_ok());
        // necessary, not sufficient: (3,3,0,0) passes but is not graphic
        assert!(screen_instance(&inst(vec![3, 3, 0, 0], vec![])).is_ok());
        assert!(matches!(screen_instance(&inst(vec![4, 2, 1, 1], vec![])), Err(GrcError::Infeasible(_))));
    }

    #[test]
    fn ledger_classifies_pairs() {
        let i = inst(vec![1, 1, 0, 0], vec![(vec![0, 1], 0)]);
        assert_eq!(build_pair_ledger(&i).unwrap().status(0, 1), PairStatus::Fixed);
        let i = inst(vec![1, 1, 0, 0, 0], vec![(vec![0, 1], 2)]);
        assert_eq!(build_pair_ledger(&i).unwrap().status(1, 0), PairStatus::Forbidden);
        assert_eq!(build_pair_ledger(&i).unwrap().status(0, 2), PairStatus::Free);
        let i = inst(vec![2, 2, 0, 0], vec![(vec![0, 1], 2), (vec![0, 1], 4)]);
        let ledger = PairLedger::classify(&i);
        assert!(ledger.has_conflict());
        assert!(matches!(build_pair_ledger(&i), Err(GrcError::Infeasible(_))));
        let i = inst(vec![2, 2, 0, 0], vec![(vec![0, 1], 3)]);
        assert!(matches!(build_pair_ledger(&i), Err(GrcError::Infeasible(_))));
    }

    #[test]
    fn ledger_reads_both_sides_on_four_vertices() {
        // ∂({1,2}) = ∂({0,3}); with the star degrees this forbids 12 and fixes 03
        let i = inst(vec![3, 1, 1, 1], vec![(vec![1, 2], 2)]);
        let ledger = build_pair_ledger(&i).unwrap();
        assert_eq!(ledger.status(1, 2), PairStatus::Forbidden);
        assert_eq!(ledger.status(0, 3), PairStatus::Fixed);
        // forbidding 01 leaves no edge for the isolated side {2,3}
        let i = inst(vec![1, 1, 0, 0], vec![(vec![0, 1], 2)]);
        assert!(matches!(build_pair_ledger(&i), Err(GrcError::Infeasible(_))));
    }

    #[test]
    fn elimination_examples() {
        let i = inst(vec![1, 1, 0, 0], vec![(vec![0, 1], 0)]);
        let (out, trace) = eliminate_fixed_edges(&i).unwrap();
        assert_eq!(out.degrees(), &[0, 0, 0, 0]);
        assert_eq!(out.cuts()[0].ell, 0);
        assert_eq!(build_pair_ledger(&out).unwrap().status(0, 1), PairStatus::Forbidden);
        assert_eq!(trace.records, vec![TraceRecord::FixedEdgeEliminated { u: 0, v: 1 }]);

        let i = inst(vec![1, 1, 0, 0, 0], vec![(vec![0, 1], 2)]);
        let (out, trace) = eliminate_fixed_edges(&i).unwrap();
        assert_eq!(out, i);
        assert!(trace.is_empty());

        // ell = d_0 + d_1 - 2 = 0 fixes the pair, but vertex 0 has nothing to give
        let i = inst(vec![0, 2, 1, 1], vec![(vec![0, 1], 0)]);
        assert!(matches!(eliminate_fixed_edges(&i), Err(GrcError::Infeasible(_))));
    }

    #[test]
    fn elimination_adjusts_crossing_cuts() {
        // uv = 01 fixed; the 3-set {1,2,3} is crossed by 01
        let i = inst(vec![1, 2, 1, 0, 0, 0, 0], vec![(vec![0, 1], 1), (vec![1, 2, 3], 2), (vec![0, 1, 4], 1)]);
        let (out, _) = eliminate_fixed_edges(&i).unwrap();
        assert_eq!(out.degrees(), &[0, 1, 1, 0, 0, 0, 0]);
        let by_set: BTreeMap<_, _> = out.cuts().iter().map(|c| (c.set.clone(), c.ell)).collect();
        assert_eq!(by_set[&vec![1, 2, 3]], 1);
        assert_eq!(by_set[&vec![0, 1, 4]], 1);
    }

    #[test]
    fn possibility_graph_examples() {
        let i = inst(vec![1, 1, 0, 0, 0], vec![(vec![0, 1], 2)]);
        let g = possibility_graph(&i).unwrap();
        assert_eq!(g.edge_count(), 9);
        assert!(!g.has_edge(0, 1));
        let g = possibility_graph(&inst(vec![0; 4], vec![])).unwrap();
        assert_eq!(g.edge_count(), 6);
        let fixed = inst(vec![1, 1, 0, 0], vec![(vec![0, 1], 0)]);
        assert!(matches!(possibility_graph(&fixed), Err(GrcError::InvalidState(_))));
    }

    #[test]
    fn possibility_graph_on_three_vertices() {
        // on n = 3 a pair cut is the complement of a degree check, but the
        // ledger still reads it as a pair constraint
        let i = inst(vec![1, 1, 2], vec![(vec![0, 1], 2)]);
        let g = possibility_graph(&i).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 2), (1, 2)]);
    }
}
