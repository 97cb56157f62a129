//! Rewriting 3-vertex cuts into pair constraints plus gadget vertices, and
//! lifting realizations of the rewritten instance back.
//!
//! A cut `(S, ℓ)` with `S = {u, v, w}` leaves `(d(S) - ℓ) / 2` edges inside
//! `S`. Zero or three internal edges are plain pair constraints. One internal
//! edge is simulated by a degree-2 vertex `x` attached to two members of `S`.
//! Two internal edges share a centre vertex `t`; they are simulated by a
//! degree-3 vertex `x` fixed to all of `S` plus a degree-1 vertex `y` that
//! picks `t`.
//!
//! The gadgets are only used when no other constraint looks inside `S`: no
//! pair cut on an internal pair and no other cut of size ≥ 3 sharing two
//! vertices with `S`. Otherwise the caller falls back to exact search.

use serde::Serialize;

use crate::error::{infeasible, GrcError, Result};
use crate::model::{degree_sum, normalize, width, CutConstraint, GrcInstance, SimpleGraph};
use crate::preprocess::{eliminate_fixed_edges, screen_instance, PairLedger, PairStatus, ReductionTrace, TraceRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Size3Case {
    /// `ℓ = d(S)`: no internal edges.
    Case1,
    /// `ℓ = d(S) - 6`: all three internal edges.
    Case2,
    /// `ℓ = d(S) - 2`: exactly one internal edge.
    Case3,
    /// `ℓ = d(S) - 4`: exactly two internal edges.
    Case4,
}

fn triple(cut: &CutConstraint) -> Result<[usize; 3]> {
    <[usize; 3]>::try_from(cut.set.as_slice())
        .map_err(|_| GrcError::InvalidArgument(format!("cut {cut} is not a 3-set")))
}

fn internal_pairs(s: [usize; 3]) -> [(usize, usize); 3] {
    [(s[0], s[1]), (s[0], s[2]), (s[1], s[2])]
}

pub fn classify_case(inst: &GrcInstance, cut: &CutConstraint) -> Result<Size3Case> {
    let s = triple(cut)?;
    let total = degree_sum(inst, &s)?;
    match total.checked_sub(cut.ell) {
        Some(0) => Ok(Size3Case::Case1),
        Some(2) => Ok(Size3Case::Case3),
        Some(4) => Ok(Size3Case::Case4),
        Some(6) => Ok(Size3Case::Case2),
        _ => Err(GrcError::InvalidState(format!("cut {cut} has d(S) = {total}; screening should have rejected it"))),
    }
}

fn forbid(inst: &GrcInstance, u: usize, v: usize) -> CutConstraint {
    let d = inst.degrees();
    CutConstraint { set: vec![u.min(v), u.max(v)], ell: d[u] + d[v] }
}

fn fix(inst: &GrcInstance, u: usize, v: usize) -> Result<CutConstraint> {
    let d = inst.degrees();
    match (d[u] + d[v]).checked_sub(2) {
        Some(ell) => Ok(CutConstraint { set: vec![u.min(v), u.max(v)], ell }),
        None => infeasible(format!("cannot fix ({u}, {v}): degrees {} and {}", d[u], d[v])),
    }
}

fn without_cut(inst: &GrcInstance, cut: &CutConstraint) -> Result<GrcInstance> {
    let mut out = inst.clone();
    let cuts = out.cuts_mut();
    let pos = cuts
        .iter()
        .position(|c| c == cut)
        .ok_or_else(|| GrcError::InvalidArgument(format!("cut {cut} is not part of the instance")))?;
    cuts.remove(pos);
    Ok(out)
}

fn expect_case(inst: &GrcInstance, cut: &CutConstraint, want: Size3Case) -> Result<[usize; 3]> {
    let got = classify_case(inst, cut)?;
    if got != want {
        return Err(GrcError::InvalidArgument(format!("cut {cut} is {got:?}, not {want:?}")));
    }
    triple(cut)
}

/// Replaces the cut by forbidding its three internal pairs.
pub fn apply_case1(inst: &GrcInstance, cut: &CutConstraint) -> Result<(GrcInstance, TraceRecord)> {
    let s = expect_case(inst, cut, Size3Case::Case1)?;
    let mut out = without_cut(inst, cut)?;
    for (a, b) in internal_pairs(s) {
        let c = forbid(&out, a, b);
        out.cuts_mut().push(c);
    }
    Ok((out, TraceRecord::Case1Forbid { set: s }))
}

/// Replaces the cut by fixing its three internal pairs. The fixed pairs are
/// left for [`eliminate_fixed_edges`].
pub fn apply_case2(inst: &GrcInstance, cut: &CutConstraint) -> Result<(GrcInstance, TraceRecord)> {
    let s = expect_case(inst, cut, Size3Case::Case2)?;
    let mut out = without_cut(inst, cut)?;
    for (a, b) in internal_pairs(s) {
        let c = fix(&out, a, b)?;
        out.cuts_mut().push(c);
    }
    Ok((out, TraceRecord::Case2Fix { set: s }))
}

/// Why a 3-cut cannot be replaced by a gadget.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum UnsafeCut {
    /// An internal pair of the cut carries its own pair constraint.
    ConstrainedPair { cut: Vec<usize>, pair: (usize, usize), status: PairStatus },
    /// Another cut of size ≥ 3 shares at least two vertices with this one.
    Overlap { cut: Vec<usize>, other: Vec<usize> },
}

fn gadget_problems(inst: &GrcInstance, ledger: &PairLedger, cut: &CutConstraint) -> Vec<UnsafeCut> {
    let mut problems = Vec::new();
    for (a, b) in internal_pairs([cut.set[0], cut.set[1], cut.set[2]]) {
        let status = ledger.status(a, b);
        if status != PairStatus::Free {
            problems.push(UnsafeCut::ConstrainedPair { cut: cut.set.clone(), pair: (a, b), status });
        }
    }
    for other in inst.cuts() {
        if other == cut || other.len() < 3 || other.set == cut.set {
            continue;
        }
        let shared = cut.set.iter().filter(|&&v| other.contains(v)).count();
        if shared >= 2 {
            problems.push(UnsafeCut::Overlap { cut: cut.set.clone(), other: other.set.clone() });
        }
    }
    problems
}

/// True iff no pair constraint sits inside `S` and no other cut of size ≥ 3
/// shares two or more vertices with `S`.
pub fn gadget_safe(inst: &GrcInstance, cut: &CutConstraint) -> bool {
    cut.len() == 3 && gadget_problems(inst, &PairLedger::classify(inst), cut).is_empty()
}

fn refuse_unsafe(inst: &GrcInstance, cut: &CutConstraint) -> Result<()> {
    if gadget_safe(inst, cut) {
        Ok(())
    } else {
        Err(GrcError::InvalidState(format!("cut {cut} is not gadget-safe")))
    }
}

/// One-internal-edge gadget. Refuses cuts that are not gadget-safe.
pub fn apply_case3(inst: &GrcInstance, cut: &CutConstraint) -> Result<(GrcInstance, TraceRecord)> {
    refuse_unsafe(inst, cut)?;
    apply_case3_unchecked(inst, cut)
}

/// [`apply_case3`] without the safety guard. The result may not be
/// equivalent to the input; exposed to demonstrate why the guard exists.
pub fn apply_case3_unchecked(inst: &GrcInstance, cut: &CutConstraint) -> Result<(GrcInstance, TraceRecord)> {
    let s = expect_case(inst, cut, Size3Case::Case3)?;
    let mut out = without_cut(inst, cut)?;
    let old_n = out.vertex_count();
    let x = old_n;
    out.degrees_mut().push(2);
    let mut added: Vec<CutConstraint> = (0..old_n).filter(|z| !s.contains(z)).map(|z| forbid(&out, z, x)).collect();
    added.extend(internal_pairs(s).into_iter().map(|(a, b)| forbid(&out, a, b)));
    out.cuts_mut().extend(added);
    Ok((out, TraceRecord::Case3Gadget { set: s, aux_x: x }))
}

/// Two-internal-edge gadget. Refuses cuts that are not gadget-safe.
pub fn apply_case4(inst: &GrcInstance, cut: &CutConstraint) -> Result<(GrcInstance, TraceRecord)> {
    refuse_unsafe(inst, cut)?;
    apply_case4_unchecked(inst, cut)
}

pub fn apply_case4_unchecked(inst: &GrcInstance, cut: &CutConstraint) -> Result<(GrcInstance, TraceRecord)> {
    let s = expect_case(inst, cut, Size3Case::Case4)?;
    let mut out = without_cut(inst, cut)?;
    let old_n = out.vertex_count();
    let (x, y) = (old_n, old_n + 1);
    out.degrees_mut().extend([3, 1]);
    let mut added = Vec::new();
    for t in s {
        added.push(fix(&out, x, t)?);
    }
    for z in (0..old_n).filter(|z| !s.contains(z)) {
        added.push(forbid(&out, z, x));
        added.push(forbid(&out, z, y));
    }
    added.push(forbid(&out, x, y));
    added.extend(internal_pairs(s).into_iter().map(|(a, b)| forbid(&out, a, b)));
    out.cuts_mut().extend(added);
    Ok((out, TraceRecord::Case4Gadget { set: s, aux_x: x, aux_y: y }))
}

/// Outcome of [`reduce_to_width2`] when no contradiction was found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reduction {
    Reduced { instance: GrcInstance, trace: ReductionTrace },
    Unsafe(Vec<UnsafeCut>),
}

fn tidy(inst: &GrcInstance) -> Result<GrcInstance> {
    let norm = normalize(inst)?;
    screen_instance(&norm)?;
    Ok(norm)
}

/// Rewrites every 3-cut of a width-≤3 instance.
///
/// Cases 1 and 2 go first, each followed by fixed-edge elimination. Then, if
/// every remaining 3-cut is gadget-safe, gadgets are applied in ascending
/// set order; otherwise the offending cuts are reported. The returned trace
/// covers the rewrites done here (including any initial elimination).
pub fn reduce_to_width2(inst: &GrcInstance) -> Result<Reduction> {
    let mut current = tidy(inst)?;
    let w = width(&current);
    if w > 3 {
        return Err(GrcError::InvalidState(format!("width {w} exceeds 3")));
    }
    let (eliminated, mut trace) = eliminate_fixed_edges(&current)?;
    current = tidy(&eliminated)?;

    loop {
        let mut pick = None;
        for cut in current.cuts().iter().filter(|c| c.len() == 3) {
            let case = classify_case(&current, cut)?;
            if matches!(case, Size3Case::Case1 | Size3Case::Case2) {
                pick = Some((cut.clone(), case));
                break;
            }
        }
        let Some((cut, case)) = pick else { break };
        let (rewritten, record) = match case {
            Size3Case::Case1 => apply_case1(&current, &cut)?,
            _ => apply_case2(&current, &cut)?,
        };
        trace.push(record);
        let (eliminated, more) = eliminate_fixed_edges(&tidy(&rewritten)?)?;
        trace.extend(more);
        current = tidy(&eliminated)?;
    }

    let remaining: Vec<CutConstraint> = current.cuts().iter().filter(|c| c.len() == 3).cloned().collect();
    let ledger = PairLedger::classify(&current);
    let problems: Vec<UnsafeCut> = remaining.iter().flat_map(|c| gadget_problems(&current, &ledger, c)).collect();
    if !problems.is_empty() {
        return Ok(Reduction::Unsafe(problems));
    }
    for cut in &remaining {
        let (next, record) = match classify_case(&current, cut)? {
            Size3Case::Case3 => apply_case3_unchecked(&current, cut)?,
            Size3Case::Case4 => apply_case4_unchecked(&current, cut)?,
            other => return Err(GrcError::Internal(format!("{other:?} survived the first phase"))),
        };
        trace.push(record);
        current = next;
    }
    Ok(Reduction::Reduced { instance: tidy(&current)?, trace })
}

fn mismatch<T>(msg: String) -> Result<T> {
    Err(GrcError::Internal(format!("trace does not match graph: {msg}")))
}

fn add_lifted_edge(g: &mut SimpleGraph, u: usize, v: usize) -> Result<()> {
    if !g.add_edge(u, v)? {
        return mismatch(format!("edge ({u}, {v}) is already present"));
    }
    Ok(())
}

/// Maps a realization of a rewritten instance back through `trace`.
pub fn lift_realization(trace: &ReductionTrace, reduced: &SimpleGraph) -> Result<SimpleGraph> {
    let mut g = reduced.clone();
    for record in trace.records.iter().rev() {
        match *record {
            TraceRecord::FixedEdgeEliminated { u, v } => add_lifted_edge(&mut g, u, v)?,
            TraceRecord::Case1Forbid { .. } | TraceRecord::Case2Fix { .. } => {}
            TraceRecord::Case3Gadget { set, aux_x } => {
                if aux_x + 1 != g.vertex_count() {
                    return mismatch(format!("gadget vertex {aux_x} is not the last vertex"));
                }
                let nbrs = g.neighbors(aux_x);
                if nbrs.len() != 2 || nbrs.iter().any(|v| !set.contains(v)) {
                    return mismatch(format!("gadget vertex {aux_x} has neighbours {nbrs:?}, set {set:?}"));
                }
                g.truncate(aux_x);
                add_lifted_edge(&mut g, nbrs[0], nbrs[1])?;
            }
            TraceRecord::Case4Gadget { set, aux_x, aux_y } => {
                if aux_y + 1 != g.vertex_count() || aux_x + 1 != aux_y {
                    return mismatch(format!("gadget vertices {aux_x}, {aux_y} are not the last two"));
                }
                let centre = match g.neighbors(aux_y).as_slice() {
                    &[t] if set.contains(&t) => t,
                    other => return mismatch(format!("vertex {aux_y} has neighbours {other:?}, set {set:?}")),
                };
                if g.neighbors(aux_x) != set.to_vec() {
                    return mismatch(format!("vertex {aux_x} is not attached to all of {set:?}"));
                }
                g.truncate(aux_x);
                for t in set.into_iter().filter(|&t| t != centre) {
                    add_lifted_edge(&mut g, centre, t)?;
                }
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cut(set: &[usize], ell: usize) -> CutConstraint {
        CutConstraint::new(set.iter().copied(), ell).unwrap()
    }

    fn six(degrees: [usize; 3], ell: usize) -> (GrcInstance, CutConstraint) {
        let mut d = degrees.to_vec();
        d.extend([0, 0, 0]);
        let c = cut(&[0, 1, 2], ell);
        (GrcInstance::new(d, vec![c.clone()]).unwrap(), c)
    }

    #[test]
    fn classify_examples() {
        for (ell, case) in [(6, Size3Case::Case1), (4, Size3Case::Case3), (2, Size3Case::Case4), (0, Size3Case::Case2)] {
            let (inst, c) = six([2, 2, 2], ell);
            assert_eq!(classify_case(&inst, &c).unwrap(), case);
        }
        let (inst, c) = six([2, 2, 2], 5);
        assert!(matches!(classify_case(&inst, &c), Err(GrcError::InvalidState(_))));
    }

    #[test]
    fn case1_forbids_internal_pairs() {
        let (inst, c) = six([2, 2, 2], 6);
        let (out, rec) = apply_case1(&inst, &c).unwrap();
        assert_eq!(rec, TraceRecord::Case1Forbid { set: [0, 1, 2] });
        let ledger = PairLedger::classify(&out);
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            assert_eq!(ledger.status(a, b), PairStatus::Forbidden);
        }
        // idempotent with an existing forbid on 01
        let mut with_forbid = inst.clone();
        with_forbid.cuts_mut().push(cut(&[0, 1], 4));
        let (out, _) = apply_case1(&with_forbid, &c).unwrap();
        assert_eq!(normalize(&out).unwrap().cuts().len(), 3);
    }

    #[test]
    fn case1_with_fixed_pair_is_contradictory() {
        let (mut inst, c) = six([2, 2, 2], 6);
        inst.cuts_mut().push(cut(&[0, 1], 2));
        let (out, _) = apply_case1(&inst, &c).unwrap();
        assert!(matches!(normalize(&out), Err(GrcError::Infeasible(_))));
    }

    #[test]
    fn case2_fixes_triangle() {
        let (inst, c) = six([2, 2, 2], 0);
        let (out, rec) = apply_case2(&inst, &c).unwrap();
        assert_eq!(rec, TraceRecord::Case2Fix { set: [0, 1, 2] });
        let (elim, trace) = eliminate_fixed_edges(&normalize(&out).unwrap()).unwrap();
        assert_eq!(trace.len(), 3);
        assert_eq!(&elim.degrees()[..3], &[0, 0, 0]);
        let lifted = lift_realization(&trace, &SimpleGraph::new(6)).unwrap();
        assert_eq!(lifted.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn gadget_safety() {
        let (inst, c) = six([1, 1, 0], 0);
        assert!(gadget_safe(&inst, &c));
        let two = GrcInstance::new(vec![1, 1, 0, 0, 0, 0], vec![cut(&[0, 1, 2], 0), cut(&[0, 1, 3], 0)]).unwrap();
        assert!(!gadget_safe(&two, &two.cuts()[0]));
        assert!(!gadget_safe(&two, &two.cuts()[1]));
        let constrained = GrcInstance::new(vec![1, 1, 0, 0, 0, 0], vec![cut(&[0, 1, 2], 0), cut(&[0, 1], 2)]).unwrap();
        assert!(!gadget_safe(&constrained, &constrained.cuts()[0]));
        assert!(matches!(apply_case3(&constrained, &constrained.cuts()[0]), Err(GrcError::InvalidState(_))));
    }

    #[test]
    fn case3_gadget_shape_and_lift() {
        let (inst, c) = six([2, 2, 2], 4);
        let (out, rec) = apply_case3(&inst, &c).unwrap();
        assert_eq!(rec, TraceRecord::Case3Gadget { set: [0, 1, 2], aux_x: 6 });
        assert_eq!(out.degrees()[6], 2);
        let ledger = PairLedger::classify(&out);
        for z in 3..6 {
            assert_eq!(ledger.status(z, 6), PairStatus::Forbidden);
        }
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            assert_eq!(ledger.status(a, b), PairStatus::Forbidden);
        }
        // reduced witness uses x-v, x-w; lifting restores v-w
        let reduced = SimpleGraph::from_edges(7, [(6, 1), (6, 2)]).unwrap();
        let trace = ReductionTrace { records: vec![rec] };
        let lifted = lift_realization(&trace, &reduced).unwrap();
        assert_eq!(lifted.vertex_count(), 6);
        assert_eq!(lifted.edges().collect::<Vec<_>>(), vec![(1, 2)]);
    }

    #[test]
    fn case4_gadget_shape_and_lift() {
        let (inst, c) = six([2, 2, 2], 2);
        let (out, rec) = apply_case4(&inst, &c).unwrap();
        assert_eq!(rec, TraceRecord::Case4Gadget { set: [0, 1, 2], aux_x: 6, aux_y: 7 });
        assert_eq!(&out.degrees()[6..], &[3, 1]);
        let ledger = PairLedger::classify(&out);
        for t in 0..3 {
            assert_eq!(ledger.status(t, 6), PairStatus::Fixed);
        }
        assert_eq!(ledger.status(6, 7), PairStatus::Forbidden);
        assert_eq!(ledger.status(3, 7), PairStatus::Forbidden);
        // x-u, x-v, x-w, y-v  <=>  u-v, v-w
        let reduced = SimpleGraph::from_edges(8, [(6, 0), (6, 1), (6, 2), (7, 1)]).unwrap();
        let lifted = lift_realization(&ReductionTrace { records: vec![rec] }, &reduced).unwrap();
        assert_eq!(lifted.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn lift_rejects_mismatched_graphs() {
        let rec = TraceRecord::Case3Gadget { set: [0, 1, 2], aux_x: 6 };
        let trace = ReductionTrace { records: vec![rec] };
        let bad = SimpleGraph::from_edges(7, [(6, 1), (6, 4)]).unwrap();
        assert!(matches!(lift_realization(&trace, &bad), Err(GrcError::Internal(_))));
        assert_eq!(lift_realization(&ReductionTrace::new(), &bad).unwrap(), bad);
    }

    #[test]
    fn reduce_only_plain_cases() {
        let inst = GrcInstance::new(vec![2, 2, 2, 1, 1, 0, 0], vec![cut(&[0, 1, 2], 0), cut(&[3, 4, 5], 2)]).unwrap();
        match reduce_to_width2(&inst).unwrap() {
            Reduction::Reduced { instance, trace } => {
                assert_eq!(instance.vertex_count(), 7);
                assert!(width(&instance) <= 2);
                assert!(trace.records.contains(&TraceRecord::Case2Fix { set: [0, 1, 2] }));
                assert!(trace.records.contains(&TraceRecord::Case1Forbid { set: [3, 4, 5] }));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn reduce_reports_overlap() {
        let inst = GrcInstance::new(vec![1, 1, 0, 0, 0, 0], vec![cut(&[0, 1, 2], 0), cut(&[0, 1, 3], 0)]).unwrap();
        match reduce_to_width2(&inst).unwrap() {
            Reduction::Unsafe(problems) => {
                assert!(problems.contains(&UnsafeCut::Overlap { cut: vec![0, 1, 2], other: vec![0, 1, 3] }));
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
