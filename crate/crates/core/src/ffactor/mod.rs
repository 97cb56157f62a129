//! Width-2 solving: fixed edges are eliminated, then the remaining degree
//! targets are met by an f-factor of the possibility graph. f-factors are
//! found as perfect matchings of an expanded gadget graph.

mod matching;

pub use matching::{max_matching, MatchingEngine};

use crate::cut3::lift_realization;
use crate::error::{infeasible, invalid, GrcError, Result};
use crate::model::{decide, normalize, verify_realization, width, GrcInstance, SimpleGraph, SolveOutcome};
use crate::preprocess::{eliminate_fixed_edges, possibility_graph, screen_instance};

/// Target degree per host vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorFunction(pub Vec<usize>);

impl FactorFunction {
    pub fn get(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Expanded graph whose perfect matchings correspond to f-factors of the host.
///
/// Host vertex `v` of degree `δ(v)` becomes `δ(v)` external vertices (one per
/// incident host edge) and `δ(v) - f(v)` core vertices, with every
/// external–core pair of `v` adjacent. Host edge `uv` becomes one edge between
/// the matching externals of `u` and `v`.
#[derive(Debug, Clone)]
pub struct GadgetMatchingGraph {
    pub graph: SimpleGraph,
    /// `(host edge, gadget edge)` in host edge order.
    pub edge_map: Vec<((usize, usize), (usize, usize))>,
    pub external: Vec<Vec<usize>>,
    pub core: Vec<Vec<usize>>,
}

pub fn tutte_gadget(host: &SimpleGraph, f: &FactorFunction) -> Result<GadgetMatchingGraph> {
    let n = host.vertex_count();
    if f.len() != n {
        return invalid(format!("factor function has {} entries for {n} host vertices", f.len()));
    }
    let adj = {
        let mut adj = host.adjacency();
        adj.iter_mut().for_each(|l| l.sort_unstable());
        adj
    };
    if let Some(v) = (0..n).find(|&v| f.get(v) > adj[v].len()) {
        return infeasible(format!("f({v}) = {} exceeds host degree {}", f.get(v), adj[v].len()));
    }

    let mut next = 0;
    let mut external = Vec::with_capacity(n);
    let mut core = Vec::with_capacity(n);
    for (v, nbrs) in adj.iter().enumerate() {
        let deg = nbrs.len();
        external.push((next..next + deg).collect::<Vec<_>>());
        next += deg;
        core.push((next..next + deg - f.get(v)).collect::<Vec<_>>());
        next += deg - f.get(v);
    }

    let mut graph = SimpleGraph::new(next);
    for v in 0..n {
        for &e in &external[v] {
            for &c in &core[v] {
                graph.add_edge(e, c)?;
            }
        }
    }
    let slot = |v: usize, u: usize| -> usize {
        let pos = adj[v].binary_search(&u).expect("u is a host neighbour of v");
        external[v][pos]
    };
    let mut edge_map = Vec::with_capacity(host.edge_count());
    for (u, v) in host.edges() {
        let (a, b) = (slot(u, v), slot(v, u));
        graph.add_edge(a, b)?;
        edge_map.push(((u, v), (a.min(b), a.max(b))));
    }
    Ok(GadgetMatchingGraph { graph, edge_map, external, core })
}

/// A spanning subgraph of `host` with degree `f(v)` at every `v`, or
/// `Infeasible`.
pub fn solve_f_factor(host: &SimpleGraph, f: &FactorFunction) -> Result<SimpleGraph> {
    solve_f_factor_with(&mut MatchingEngine::new(), host, f)
}

pub fn solve_f_factor_with(engine: &mut MatchingEngine, host: &SimpleGraph, f: &FactorFunction) -> Result<SimpleGraph> {
    if f.len() != host.vertex_count() {
        return invalid("factor function length does not match host");
    }
    if f.0.iter().sum::<usize>() % 2 == 1 {
        return infeasible("f-values have odd sum");
    }
    let gadget = tutte_gadget(host, f)?;
    let matching = engine.max_matching(&gadget.graph);
    if 2 * matching.len() != gadget.graph.vertex_count() {
        return infeasible("gadget graph has no perfect matching");
    }
    let matched: std::collections::BTreeSet<(usize, usize)> = matching.into_iter().collect();
    let edges = gadget.edge_map.iter().filter(|(_, ge)| matched.contains(ge)).map(|&(he, _)| he);
    SimpleGraph::from_edges(host.vertex_count(), edges)
}

/// Decides an instance of width at most 2.
pub fn solve_width2(inst: &GrcInstance) -> Result<SolveOutcome> {
    decide(solve_width2_inner(inst))
}

fn solve_width2_inner(inst: &GrcInstance) -> Result<SolveOutcome> {
    let norm = normalize(inst)?;
    screen_instance(&norm)?;
    let w = width(&norm);
    if w > 2 {
        return Err(GrcError::InvalidState(format!("width {w} exceeds 2")));
    }
    let (reduced, trace) = eliminate_fixed_edges(&norm)?;
    let host = possibility_graph(&reduced)?;
    let factor = solve_f_factor(&host, &FactorFunction(reduced.degrees().to_vec()))?;
    let witness = lift_realization(&trace, &factor)?;
    if !verify_realization(&witness, inst)?.valid {
        return Err(GrcError::Internal("f-factor witness does not realize the instance".into()));
    }
    Ok(SolveOutcome::Realizable(witness))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> SimpleGraph {
        SimpleGraph::from_edges(3, [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn gadget_shapes() {
        let k2 = SimpleGraph::complete(2);
        let g = tutte_gadget(&k2, &FactorFunction(vec![1, 1])).unwrap();
        assert_eq!(g.graph.vertex_count(), 2);
        assert_eq!(g.graph.edge_count(), 1);
        assert!(g.core.iter().all(|c| c.is_empty()));
        assert_eq!(max_matching(&g.graph).len(), 1);

        let g = tutte_gadget(&path3(), &FactorFunction(vec![1, 2, 1])).unwrap();
        assert_eq!(2 * max_matching(&g.graph).len(), g.graph.vertex_count());

        let g = tutte_gadget(&SimpleGraph::complete(3), &FactorFunction(vec![1, 1, 1])).unwrap();
        assert!(2 * max_matching(&g.graph).len() < g.graph.vertex_count());

        assert!(matches!(tutte_gadget(&path3(), &FactorFunction(vec![2, 1, 1])), Err(GrcError::Infeasible(_))));
        assert!(matches!(tutte_gadget(&path3(), &FactorFunction(vec![1, 1])), Err(GrcError::InvalidArgument(_))));
    }

    #[test]
    fn f_factor_examples() {
        let t = SimpleGraph::complete(3);
        assert_eq!(solve_f_factor(&t, &FactorFunction(vec![2, 2, 2])).unwrap(), t);
        let pm = solve_f_factor(&SimpleGraph::complete(4), &FactorFunction(vec![1; 4])).unwrap();
        assert_eq!(pm.edge_count(), 2);
        assert_eq!(pm.degrees(), vec![1; 4]);
        assert!(solve_f_factor(&t, &FactorFunction(vec![1, 1, 1])).is_err());
        // isolated vertices: f = 0 is fine, f > 0 is not
        let iso = SimpleGraph::from_edges(3, [(0, 1)]).unwrap();
        assert!(solve_f_factor(&iso, &FactorFunction(vec![1, 1, 0])).is_ok());
        assert!(solve_f_factor(&iso, &FactorFunction(vec![0, 0, 2])).is_err());
    }

    #[test]
    fn width2_examples() {
        let inst = GrcInstance::new(vec![1, 1], vec![]).unwrap();
        let out = solve_width2(&inst).unwrap();
        assert_eq!(out.witness().unwrap().edges().collect::<Vec<_>>(), vec![(0, 1)]);

        let inst = GrcInstance::from_pairs(vec![1, 1, 1, 1], [(vec![0, 1], 2), (vec![2, 3], 2)]).unwrap();
        let w = solve_width2(&inst).unwrap().witness().unwrap().clone();
        let edges: Vec<_> = w.edges().collect();
        assert!(edges == vec![(0, 2), (1, 3)] || edges == vec![(0, 3), (1, 2)], "{edges:?}");

        let inst = GrcInstance::from_pairs(vec![2, 2, 2], [(vec![0, 1], 4)]).unwrap();
        assert_eq!(solve_width2(&inst).unwrap(), SolveOutcome::Infeasible);
    }

    #[test]
    fn width2_lifts_fixed_edges() {
        // 0-1 fixed, 2-3 forbidden
        let inst = GrcInstance::from_pairs(vec![2, 2, 1, 1, 0], [(vec![0, 1], 2), (vec![2, 3], 2)]).unwrap();
        let out = solve_width2(&inst).unwrap();
        let w = out.witness().expect("realizable");
        assert!(w.has_edge(0, 1));
        assert!(!w.has_edge(2, 3));
    }

    #[test]
    fn width2_rejects_wide_instances() {
        let inst = GrcInstance::from_pairs(vec![1; 6], [(vec![0, 1, 2], 3)]).unwrap();
        assert!(matches!(solve_width2(&inst), Err(GrcError::InvalidState(_))));
    }
}
