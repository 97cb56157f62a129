//! Three-dimensional matching with at most three occurrences per element,
//! encoded as degree-1 realization with cuts of size at most 6 over a
//! bipartite subcubic possibility graph.
//!
//! Vertex numbering: `x_0..x_{n-1}`; then for each `y_j` and each triple `u`
//! containing it (in input order) the pair `a_u, b_u`; then `z_0..z_{n-1}`.
//! Candidate edges are `x–a_u`, `a_u–b_u` and `b_u–z` along each triple. The
//! cut `(V_j, 2)` over all occurrence vertices of `y_j` lets exactly one
//! occurrence leave, which selects the triple covering `y_j`.

use std::collections::BTreeSet;

use crate::error::{invalid, GrcError, Result};
use crate::model::{verify_realization, CutConstraint, GrcInstance, SimpleGraph};
use crate::oracle::ThreeDMInstance;

use super::{with_forbidden_complement, GadgetMap, GadgetSource, Role};

/// `(a, b)` vertex of each triple, by triple index.
fn occurrence_vertices(t: &ThreeDMInstance) -> (Vec<(usize, usize)>, Vec<Role>) {
    let mut slots = vec![(0, 0); t.triples.len()];
    let mut roles: Vec<Role> = (0..t.n).map(|index| Role::TdmX { index }).collect();
    for y in 0..t.n {
        let mut occurrence = 0;
        for (triple, tr) in t.triples.iter().enumerate() {
            if tr[1] == y {
                slots[triple] = (roles.len(), roles.len() + 1);
                roles.push(Role::TdmYa { y, occurrence, triple });
                roles.push(Role::TdmYb { y, occurrence, triple });
                occurrence += 1;
            }
        }
    }
    roles.extend((0..t.n).map(|index| Role::TdmZ { index }));
    (slots, roles)
}

pub fn tdm_to_grc(t: &ThreeDMInstance) -> Result<(GrcInstance, GadgetMap)> {
    for (c, counts) in t.occurrences().iter().enumerate() {
        if let Some(e) = counts.iter().position(|&k| k == 0 || k > 3) {
            let coord = ["x", "y", "z"][c];
            return invalid(format!("{coord}_{e} occurs in {} triples; expected 1 to 3", counts[e]));
        }
    }
    let distinct: BTreeSet<[usize; 3]> = t.triples.iter().copied().collect();
    if distinct.len() != t.triples.len() {
        return invalid("triple list has duplicates");
    }
    let (slots, roles) = occurrence_vertices(t);
    let total = roles.len();
    let z_base = total - t.n;
    let mut possible = SimpleGraph::new(total);
    for (tr, &(a, b)) in t.triples.iter().zip(&slots) {
        possible.add_edge(tr[0], a)?;
        possible.add_edge(a, b)?;
        possible.add_edge(b, z_base + tr[2])?;
    }
    let mut cuts = Vec::new();
    for y in 0..t.n {
        let members = (0..t.triples.len()).filter(|&u| t.triples[u][1] == y).flat_map(|u| [slots[u].0, slots[u].1]);
        cuts.push(CutConstraint::new(members, 2)?);
    }
    let inst = with_forbidden_complement(vec![1; total], &possible, cuts)?;
    Ok((inst, GadgetMap { roles, source: GadgetSource::Tdm { instance: t.clone() } }))
}

fn tdm_source(map: &GadgetMap) -> Result<&ThreeDMInstance> {
    match &map.source {
        GadgetSource::Tdm { instance } => Ok(instance),
        GadgetSource::Sat { .. } => invalid("gadget map does not come from a matching instance"),
    }
}

/// Triples whose `a` vertex is matched into `X` and `b` vertex into `Z`,
/// sorted by `x`.
pub fn decode_tdm_witness(g: &SimpleGraph, inst: &GrcInstance, map: &GadgetMap) -> Result<Vec<[usize; 3]>> {
    let t = tdm_source(map)?;
    if !verify_realization(g, inst)?.valid {
        return invalid("graph does not realize the generated instance");
    }
    let (slots, _) = occurrence_vertices(t);
    let z_base = inst.vertex_count() - t.n;
    let mut m: Vec<[usize; 3]> = t
        .triples
        .iter()
        .zip(&slots)
        .filter(|(tr, &(a, b))| g.has_edge(tr[0], a) && g.has_edge(b, z_base + tr[2]))
        .map(|(tr, _)| *tr)
        .collect();
    m.sort_unstable();
    if !t.is_matching(&m) {
        return Err(GrcError::Internal(format!("decoded triples {m:?} are not a perfect matching")));
    }
    Ok(m)
}

/// The realization built from a perfect matching, as in the forward
/// direction of the reduction.
pub fn encode_tdm_matching(inst: &GrcInstance, map: &GadgetMap, m: &[[usize; 3]]) -> Result<SimpleGraph> {
    let t = tdm_source(map)?;
    if !t.is_matching(m) {
        return invalid("triples are not a perfect matching of the instance");
    }
    let (slots, _) = occurrence_vertices(t);
    let z_base = inst.vertex_count() - t.n;
    let mut g = SimpleGraph::new(inst.vertex_count());
    for (tr, &(a, b)) in t.triples.iter().zip(&slots) {
        if m.contains(tr) {
            g.add_edge(tr[0], a)?;
            g.add_edge(b, z_base + tr[2])?;
        } else {
            g.add_edge(a, b)?;
        }
    }
    if !verify_realization(&g, inst)?.valid {
        return Err(GrcError::Internal("encoded graph does not realize the instance".into()));
    }
    Ok(g)
}
