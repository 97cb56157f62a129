//! Plain degree-sequence realization (no cut constraints).

use crate::error::{infeasible, Result};
use crate::model::SimpleGraph;

/// Erdős–Gallai test. Order of `degrees` is irrelevant.
pub fn erdos_gallai(degrees: &[usize]) -> bool {
    let total: usize = degrees.iter().sum();
    if total % 2 == 1 {
        return false;
    }
    let mut d = degrees.to_vec();
    d.sort_unstable_by(|a, b| b.cmp(a));
    let n = d.len();
    let mut prefix = 0;
    for k in 1..=n {
        prefix += d[k - 1];
        let tail: usize = d[k..].iter().map(|&x| x.min(k)).sum();
        if prefix > k * (k - 1) + tail {
            return false;
        }
    }
    true
}

/// Havel–Hakimi construction keeping the input labels.
///
/// The vertex with the largest residual degree is joined to the next-largest
/// ones; ties go to the smaller index.
pub fn havel_hakimi(degrees: &[usize]) -> Result<SimpleGraph> {
    let n = degrees.len();
    let mut residual = degrees.to_vec();
    let mut g = SimpleGraph::new(n);
    let mut order: Vec<usize> = (0..n).collect();
    loop {
        order.sort_by(|&a, &b| residual[b].cmp(&residual[a]).then(a.cmp(&b)));
        let v = order[0];
        let need = residual[v];
        if need == 0 {
            return Ok(g);
        }
        let partners = &order[1..];
        if partners.len() < need || residual[partners[need - 1]] == 0 {
            return infeasible(format!("{degrees:?} is not graphic"));
        }
        for &u in &partners[..need] {
            residual[u] -= 1;
            g.add_edge(v, u)?;
        }
        residual[v] = 0;
    }
}
