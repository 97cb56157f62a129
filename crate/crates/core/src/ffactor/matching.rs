//! Maximum-cardinality matching in general graphs (Edmonds' blossom
//! algorithm, BFS formulation with blossom contraction via base labels).

use std::collections::VecDeque;

use crate::model::SimpleGraph;

const NONE: usize = usize::MAX;

/// Reusable working state for the blossom search. Not shareable between
/// threads while a search is running; use one engine per thread.
#[derive(Debug, Default)]
pub struct MatchingEngine {
    adj: Vec<Vec<usize>>,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    on_path: Vec<bool>,
    queue: VecDeque<usize>,
}

impl MatchingEngine {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns a maximum matching as sorted `(u, v)` pairs with `u < v`.
    ///
    /// Roots are tried in ascending order and neighbours are scanned in
    /// ascending order, so the result is deterministic.
    pub fn max_matching(&mut self, g: &SimpleGraph) -> Vec<(usize, usize)> {
        let n = g.vertex_count();
        self.adj = g.adjacency();
        for list in &mut self.adj {
            list.sort_unstable();
        }
        self.mate = vec![NONE; n];
        self.parent = vec![NONE; n];
        self.base = (0..n).collect();
        self.used = vec![false; n];
        self.in_blossom = vec![false; n];
        self.on_path = vec![false; n];

        // greedy warm start
        for v in 0..n {
            if self.mate[v] == NONE {
                if let Some(&u) = self.adj[v].iter().find(|&&u| self.mate[u] == NONE) {
                    self.mate[v] = u;
                    self.mate[u] = v;
                }
            }
        }

        for root in 0..n {
            if self.mate[root] != NONE {
                continue;
            }
            let mut end = self.find_augmenting_path(root);
            while end != NONE {
                let prev = self.parent[end];
                let next = self.mate[prev];
                self.mate[end] = prev;
                self.mate[prev] = end;
                end = next;
            }
        }

        (0..n).filter(|&v| self.mate[v] != NONE && v < self.mate[v]).map(|v| (v, self.mate[v])).collect()
    }

    fn lowest_common_base(&mut self, mut a: usize, mut b: usize) -> usize {
        self.on_path.iter_mut().for_each(|x| *x = false);
        loop {
            a = self.base[a];
            self.on_path[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if self.on_path[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_blossom_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            let m = self.mate[v];
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[m]] = true;
            self.parent[v] = child;
            child = m;
            v = self.parent[m];
        }
    }

    fn find_augmenting_path(&mut self, root: usize) -> usize {
        let n = self.mate.len();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.queue.clear();
        self.used[root] = true;
        self.queue.push_back(root);

        while let Some(v) = self.queue.pop_front() {
            for idx in 0..self.adj[v].len() {
                let to = self.adj[v][idx];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lowest_common_base(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_blossom_path(v, cur, to);
                    self.mark_blossom_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return to;
                    }
                    let m = self.mate[to];
                    self.used[m] = true;
                    self.queue.push_back(m);
                }
            }
        }
        NONE
    }
}

/// Convenience wrapper around a fresh [`MatchingEngine`].
pub fn max_matching(g: &SimpleGraph) -> Vec<(usize, usize)> {
    MatchingEngine::new().max_matching(g)
}
