//! Exactly-one SAT with a prescribed number of true variables, encoded as
//! degree-1 realization with cuts of size at most 4.
//!
//! Vertex numbering: variable `i` owns `4i..4i+4` as `T1, T2, F1, F2`; clause
//! `j` owns the next three vertices (literal order, a filler third vertex for
//! two-literal clauses); the sink (or its degree-1 copies) comes last.
//!
//! A variable gadget has cut 2, so either `T1T2` or `F1F2` is inside. If `F1F2`
//! is inside, `T1` and `T2` reach out to the clauses where the variable occurs
//! positively: the variable is true. Otherwise `F1` reaches the clause of the
//! negative occurrence and `F2` the sink, whose degree counts false variables.
//! A clause gadget has cut 1, so exactly one of its vertices is matched out.

use crate::error::{invalid, GrcError, Result};
use crate::model::{verify_realization, CutConstraint, GrcInstance, SimpleGraph};
use crate::oracle::{Literal, OneInThreeInstance};

use super::{with_forbidden_complement, GadgetMap, GadgetSource, Role};

/// Rewrites a formula with only positive literals into one where every
/// variable occurs exactly twice positively and once negatively, preserving
/// exactly-one satisfiability.
///
/// A variable used once gains the clause `(x ∨ ¬x)`. A variable used `t ≥ 2`
/// times gets fresh copies `a_1..a_{t-1}` for its later occurrences, tied to
/// it by the cycle `(x ∨ ¬a_1), (a_1 ∨ ¬a_2), …, (a_{t-1} ∨ ¬x)`. Fresh
/// variables are numbered after the originals, in variable then occurrence
/// order; the cycle clauses follow the original clauses.
pub fn monotone_to_21(positive: &OneInThreeInstance) -> Result<OneInThreeInstance> {
    if !positive.is_positive() {
        return invalid("input formula has a negative literal");
    }
    let n = positive.variable_count;
    let uses: Vec<usize> = positive.occurrences().iter().map(|o| o.0).collect();
    if let Some(v) = uses.iter().position(|&t| t == 0) {
        return invalid(format!("variable {} does not occur", v + 1));
    }
    // first fresh variable per original variable
    let mut first_fresh = Vec::with_capacity(n);
    let mut next = n;
    for &t in &uses {
        first_fresh.push(next);
        next += t - 1;
    }

    let mut seen = vec![0; n];
    let mut clauses: Vec<Vec<Literal>> = positive
        .clauses
        .iter()
        .map(|c| {
            c.iter()
                .map(|l| {
                    seen[l.var] += 1;
                    match seen[l.var] {
                        1 => *l,
                        m => Literal::pos(first_fresh[l.var] + m - 2),
                    }
                })
                .collect()
        })
        .collect();
    for x in 0..n {
        if uses[x] == 1 {
            clauses.push(vec![Literal::pos(x), Literal::neg(x)]);
            continue;
        }
        let chain: Vec<usize> = std::iter::once(x).chain(first_fresh[x]..first_fresh[x] + uses[x] - 1).collect();
        for w in 0..chain.len() {
            clauses.push(vec![Literal::pos(chain[w]), Literal::neg(chain[(w + 1) % chain.len()])]);
        }
    }
    OneInThreeInstance::new(next, clauses)
}

struct Layout {
    clause_base: Vec<usize>,
    sink_base: usize,
}

impl Layout {
    fn new(f: &OneInThreeInstance) -> Layout {
        let vars = f.variable_count;
        let clause_base = (0..f.clauses.len()).map(|j| 4 * vars + 3 * j).collect();
        Layout { clause_base, sink_base: 4 * vars + 3 * f.clauses.len() }
    }

    fn gadget(&self, i: usize) -> [usize; 4] {
        [4 * i, 4 * i + 1, 4 * i + 2, 4 * i + 3]
    }

    fn clause(&self, j: usize) -> [usize; 3] {
        let b = self.clause_base[j];
        [b, b + 1, b + 2]
    }
}

/// Clause vertices wired to `T1`, `T2` and `F1` of every variable.
fn literal_targets(f: &OneInThreeInstance, layout: &Layout) -> Vec<[usize; 3]> {
    let mut positive: Vec<Vec<usize>> = vec![Vec::new(); f.variable_count];
    let mut negative: Vec<Vec<usize>> = vec![Vec::new(); f.variable_count];
    for (j, clause) in f.clauses.iter().enumerate() {
        for (p, l) in clause.iter().enumerate() {
            let v = layout.clause(j)[p];
            if l.positive {
                positive[l.var].push(v);
            } else {
                negative[l.var].push(v);
            }
        }
    }
    (0..f.variable_count).map(|i| [positive[i][0], positive[i][1], negative[i][0]]).collect()
}

/// Builds the realization instance for `(f, k)` and the role of each vertex.
///
/// With `all_ones` the sink of degree `n - k` is replaced by `n - k` copies
/// of degree 1, each allowed to meet every `F2` vertex.
pub fn sat_to_grc(f: &OneInThreeInstance, k: usize, all_ones: bool) -> Result<(GrcInstance, GadgetMap)> {
    f.validate_21()?;
    if k > f.variable_count {
        return invalid(format!("k = {k} exceeds the {} variables", f.variable_count));
    }
    let layout = Layout::new(f);
    let false_count = f.variable_count - k;
    let sinks: Vec<usize> = if all_ones {
        (layout.sink_base..layout.sink_base + false_count).collect()
    } else {
        vec![layout.sink_base]
    };
    let total = layout.sink_base + sinks.len();

    let mut roles = Vec::with_capacity(total);
    let mut degrees = vec![1; total];
    for var in 0..f.variable_count {
        roles.extend([Role::VarTrue1 { var }, Role::VarTrue2 { var }, Role::VarFalse1 { var }, Role::VarFalse2 { var }]);
    }
    for (clause, c) in f.clauses.iter().enumerate() {
        roles.extend((0..c.len()).map(|position| Role::ClauseLiteral { clause, position }));
        if c.len() == 2 {
            roles.push(Role::ClauseFiller { clause });
        }
    }
    if all_ones {
        roles.extend((0..false_count).map(|index| Role::SinkCopy { index }));
    } else {
        roles.push(Role::Sink);
        degrees[layout.sink_base] = false_count;
    }

    let mut possible = SimpleGraph::new(total);
    let mut cuts = Vec::new();
    let targets = literal_targets(f, &layout);
    for (i, target) in targets.iter().enumerate() {
        let [t1, t2, f1, f2] = layout.gadget(i);
        possible.add_edge(t1, t2)?;
        possible.add_edge(f1, f2)?;
        possible.add_edge(t1, target[0])?;
        possible.add_edge(t2, target[1])?;
        possible.add_edge(f1, target[2])?;
        for &s in &sinks {
            possible.add_edge(f2, s)?;
        }
        cuts.push(CutConstraint::new(layout.gadget(i), 2)?);
    }
    for j in 0..f.clauses.len() {
        let [a, b, c] = layout.clause(j);
        for (u, v) in [(a, b), (a, c), (b, c)] {
            possible.add_edge(u, v)?;
        }
        cuts.push(CutConstraint::new([a, b, c], 1)?);
    }
    let inst = with_forbidden_complement(degrees, &possible, cuts)?;
    let map = GadgetMap { roles, source: GadgetSource::Sat { formula: f.clone(), k, all_ones } };
    Ok((inst, map))
}

fn sat_source(map: &GadgetMap) -> Result<(&OneInThreeInstance, usize, bool)> {
    match &map.source {
        GadgetSource::Sat { formula, k, all_ones } => Ok((formula, *k, *all_ones)),
        GadgetSource::Tdm { .. } => invalid("gadget map does not come from a formula"),
    }
}

/// Reads the assignment off a realization: variable `i` is true iff `T1` and
/// `T2` both have neighbours outside their gadget.
pub fn decode_sat_witness(g: &SimpleGraph, inst: &GrcInstance, map: &GadgetMap) -> Result<Vec<bool>> {
    let (f, k, _) = sat_source(map)?;
    if !verify_realization(g, inst)?.valid {
        return invalid("graph does not realize the generated instance");
    }
    let layout = Layout::new(f);
    let assignment: Vec<bool> = (0..f.variable_count)
        .map(|i| {
            let gadget = layout.gadget(i);
            gadget[..2].iter().all(|&t| g.neighbors(t).iter().any(|u| !gadget.contains(u)))
        })
        .collect();
    if !f.exactly_one(&assignment) || assignment.iter().filter(|&&b| b).count() != k {
        return Err(GrcError::Internal(format!("decoded assignment {assignment:?} is not a solution")));
    }
    Ok(assignment)
}

/// The realization built from a solving assignment, as in the forward
/// direction of the reduction.
pub fn encode_sat_assignment(inst: &GrcInstance, map: &GadgetMap, assignment: &[bool]) -> Result<SimpleGraph> {
    let (f, k, all_ones) = sat_source(map)?;
    if !f.exactly_one(assignment) || assignment.iter().filter(|&&b| b).count() != k {
        return invalid("assignment is not an exactly-one solution with k true variables");
    }
    let layout = Layout::new(f);
    let targets = literal_targets(f, &layout);
    let mut g = SimpleGraph::new(inst.vertex_count());
    let mut matched = vec![false; inst.vertex_count()];
    let mut next_copy = layout.sink_base;
    for (i, (target, &value)) in targets.iter().zip(assignment).enumerate() {
        let [t1, t2, f1, f2] = layout.gadget(i);
        if value {
            g.add_edge(f1, f2)?;
            g.add_edge(t1, target[0])?;
            g.add_edge(t2, target[1])?;
            matched[target[0]] = true;
            matched[target[1]] = true;
        } else {
            g.add_edge(t1, t2)?;
            g.add_edge(f1, target[2])?;
            matched[target[2]] = true;
            g.add_edge(f2, next_copy)?;
            if all_ones {
                next_copy += 1;
            }
        }
    }
    for j in 0..f.clauses.len() {
        let rest: Vec<usize> = layout.clause(j).into_iter().filter(|&v| !matched[v]).collect();
        g.add_edge(rest[0], rest[1])?;
    }
    if !verify_realization(&g, inst)?.valid {
        return Err(GrcError::Internal("encoded graph does not realize the instance".into()));
    }
    Ok(g)
}

/// Decides a formula by asking `decide(f, k)` for every `k` in `0..=n`.
pub fn solve_21_by_k_sweep(f: &OneInThreeInstance, mut decide: impl FnMut(&OneInThreeInstance, usize) -> bool) -> Result<bool> {
    f.validate_21()?;
    Ok((0..=f.variable_count).any(|k| decide(f, k)))
}
