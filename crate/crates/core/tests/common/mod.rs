#![allow(dead_code)]

use std::collections::BTreeSet;

use grc::oracle::{Literal, OneInThreeInstance, ThreeDMInstance};
use grc::{GrcInstance, SimpleGraph};
use rand::rngs::StdRng;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// Every graph on `n` labeled vertices, as edge masks over `all_pairs(n)`.
pub fn graphs(n: usize) -> impl Iterator<Item = SimpleGraph> {
    let pairs = all_pairs(n);
    (0..1u64 << pairs.len()).map(move |mask| subgraph(n, &pairs, mask))
}

pub fn subgraph(n: usize, pairs: &[(usize, usize)], mask: u64) -> SimpleGraph {
    SimpleGraph::from_edges(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e)).unwrap()
}

/// Realizability by trying every edge subset of `K_n`; written without any
/// library evaluation code.
pub fn brute_realizable(inst: &GrcInstance) -> bool {
    let n = inst.vertex_count();
    assert!(n <= 7, "brute force over n = {n} is out of reach");
    let pairs = all_pairs(n);
    let masks: Vec<(u64, usize)> = inst
        .cuts()
        .iter()
        .map(|c| (c.set.iter().fold(0u64, |m, &v| m | 1 << v), c.ell))
        .collect();
    (0..1u64 << pairs.len()).any(|mask| {
        let mut deg = vec![0; n];
        let mut crossing = vec![0; masks.len()];
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                deg[u] += 1;
                deg[v] += 1;
                for (k, &(s, _)) in masks.iter().enumerate() {
                    if (s >> u & 1) != (s >> v & 1) {
                        crossing[k] += 1;
                    }
                }
            }
        }
        deg == inst.degrees() && masks.iter().zip(&crossing).all(|(&(_, ell), &c)| c == ell)
    })
}

pub fn random_graph(r: &mut StdRng, n: usize, p: f64, max_degree: usize) -> SimpleGraph {
    let mut pairs = all_pairs(n);
    pairs.shuffle(r);
    let mut g = SimpleGraph::new(n);
    let mut deg = vec![0; n];
    for (u, v) in pairs {
        if deg[u] < max_degree && deg[v] < max_degree && r.random_bool(p) {
            g.add_edge(u, v).unwrap();
            deg[u] += 1;
            deg[v] += 1;
        }
    }
    g
}

pub fn crossing(g: &SimpleGraph, s: &[usize]) -> usize {
    g.edges().filter(|&(u, v)| s.contains(&u) != s.contains(&v)).count()
}

pub fn random_set(r: &mut StdRng, n: usize, size: usize) -> Vec<usize> {
    let mut s: Vec<usize> = (0..n).collect::<Vec<_>>().choose_multiple(r, size).copied().collect();
    s.sort_unstable();
    s
}

/// A cut size: usually the one of `planted`, otherwise nearby or random.
pub fn cut_value(r: &mut StdRng, planted: &SimpleGraph, s: &[usize], degrees: &[usize]) -> usize {
    let true_ell = crossing(planted, s);
    let sum: usize = s.iter().map(|&v| degrees[v]).sum();
    match r.random_range(0..10) {
        0..=6 => true_ell,
        7 | 8 => (true_ell + 2).min(sum),
        _ => r.random_range(0..=sum),
    }
}

/// Degrees and cut values read off a planted graph, sometimes perturbed, so
/// both answers occur often.
pub fn planted_instance(r: &mut StdRng, n: usize, max_degree: usize, cut_sizes: &[usize], max_cuts: usize) -> GrcInstance {
    let p = r.random_range(0.2..0.8);
    let g = random_graph(r, n, p, max_degree);
    let mut degrees = g.degrees();
    if r.random_bool(0.15) {
        let v = r.random_range(0..n);
        degrees[v] = (degrees[v] + 1).min(max_degree);
    }
    let count = r.random_range(0..=max_cuts);
    let cuts: Vec<(Vec<usize>, usize)> = (0..count)
        .map(|_| {
            let size = *cut_sizes.choose(r).unwrap();
            let s = random_set(r, n, size);
            let ell = cut_value(r, &g, &s, &degrees);
            (s, ell)
        })
        .collect();
    GrcInstance::from_pairs(degrees, cuts).unwrap()
}

/// Random exactly-(2,1) formula: each variable twice positive and once
/// negative, in clauses of two or three distinct variables.
pub fn random_21_formula(r: &mut StdRng, vars: usize) -> OneInThreeInstance {
    loop {
        let mut slots: Vec<Literal> = (0..vars).flat_map(|v| [Literal::pos(v), Literal::pos(v), Literal::neg(v)]).collect();
        slots.shuffle(r);
        let mut sizes = Vec::new();
        let mut left = slots.len();
        while left > 0 {
            let s = match left {
                2 | 3 => left,
                4 => 2,
                _ => r.random_range(2..=3),
            };
            sizes.push(s);
            left -= s;
        }
        let mut clauses = Vec::new();
        let mut at = 0;
        for s in sizes {
            clauses.push(slots[at..at + s].to_vec());
            at += s;
        }
        let distinct = clauses.iter().all(|c| c.iter().map(|l| l.var).collect::<BTreeSet<_>>().len() == c.len());
        if distinct {
            return OneInThreeInstance::new(vars, clauses).unwrap();
        }
    }
}

pub fn random_positive_formula(r: &mut StdRng, vars: usize) -> OneInThreeInstance {
    loop {
        let count = r.random_range(1..=vars + 2);
        let clauses: Vec<Vec<Literal>> = (0..count)
            .map(|_| {
                let size = r.random_range(2..=3.min(vars));
                random_set(r, vars, size).into_iter().map(Literal::pos).collect()
            })
            .collect();
        let f = OneInThreeInstance::new(vars, clauses).unwrap();
        if f.occurrences().iter().all(|o| o.0 > 0) {
            return f;
        }
    }
}

/// Random 3DM instance in which every element occurs one to three times and
/// no triple repeats.
pub fn random_tdm(r: &mut StdRng, n: usize) -> ThreeDMInstance {
    loop {
        let mut triples: BTreeSet<[usize; 3]> = BTreeSet::new();
        if r.random_bool(0.5) {
            let mut ys: Vec<usize> = (0..n).collect();
            let mut zs: Vec<usize> = (0..n).collect();
            ys.shuffle(r);
            zs.shuffle(r);
            triples.extend((0..n).map(|x| [x, ys[x], zs[x]]));
        }
        let extra = r.random_range(0..=2 * n);
        for _ in 0..extra {
            triples.insert([r.random_range(0..n), r.random_range(0..n), r.random_range(0..n)]);
        }
        let mut list: Vec<[usize; 3]> = triples.into_iter().collect();
        list.shuffle(r);
        let t = ThreeDMInstance::new(n, list).unwrap();
        if t.occurrences().iter().flatten().all(|&k| (1..=3).contains(&k)) {
            return t;
        }
    }
}

/// Labeled tree with the given Prüfer sequence over `0..n`.
pub fn tree_from_code(n: usize, code: &[usize]) -> SimpleGraph {
    let mut g = SimpleGraph::new(n);
    if n < 2 {
        return g;
    }
    let mut degree = vec![1; n];
    for &c in code {
        degree[c] += 1;
    }
    for &c in code {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        g.add_edge(leaf, c).unwrap();
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    g.add_edge(rest[0], rest[1]).unwrap();
    g
}

pub fn random_tree(r: &mut StdRng, n: usize) -> SimpleGraph {
    let code: Vec<usize> = (0..n.saturating_sub(2)).map(|_| r.random_range(0..n)).collect();
    tree_from_code(n, &code)
}

/// Size-2 cuts forbidding every pair outside `host`.
pub fn forbid_outside(host: &SimpleGraph, degrees: &[usize]) -> Vec<(Vec<usize>, usize)> {
    all_pairs(host.vertex_count())
        .into_iter()
        .filter(|&(u, v)| !host.has_edge(u, v))
        .map(|(u, v)| (vec![u, v], degrees[u] + degrees[v]))
        .collect()
}
