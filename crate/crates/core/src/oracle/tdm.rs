//! Three-dimensional matching: instances and brute force.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, GrcError, Result};

/// Triples over `X × Y × Z` with `|X| = |Y| = |Z| = n`, 0-based.
///
/// JSON: `{"n": 3, "triples": [[0, 1, 1], [1, 0, 0]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TdmDoc", into = "TdmDoc")]
pub struct ThreeDMInstance {
    pub n: usize,
    pub triples: Vec<[usize; 3]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TdmDoc {
    n: usize,
    triples: Vec<[usize; 3]>,
}

impl TryFrom<TdmDoc> for ThreeDMInstance {
    type Error = GrcError;

    fn try_from(doc: TdmDoc) -> Result<Self> {
        ThreeDMInstance::new(doc.n, doc.triples)
    }
}

impl From<ThreeDMInstance> for TdmDoc {
    fn from(t: ThreeDMInstance) -> TdmDoc {
        TdmDoc { n: t.n, triples: t.triples }
    }
}

impl ThreeDMInstance {
    pub fn new(n: usize, triples: Vec<[usize; 3]>) -> Result<Self> {
        if let Some(t) = triples.iter().find(|t| t.iter().any(|&e| e >= n)) {
            return invalid(format!("triple {t:?} has an element outside 0..{n}"));
        }
        Ok(ThreeDMInstance { n, triples })
    }

    /// Occurrence counts per coordinate: `counts[c][e]` is how many triples
    /// have element `e` in coordinate `c`.
    pub fn occurrences(&self) -> [Vec<usize>; 3] {
        let mut counts = [vec![0; self.n], vec![0; self.n], vec![0; self.n]];
        for t in &self.triples {
            for c in 0..3 {
                counts[c][t[c]] += 1;
            }
        }
        counts
    }

    /// No element occurs in more than three triples.
    pub fn is_bounded(&self) -> bool {
        self.occurrences().iter().flatten().all(|&c| c <= 3)
    }

    /// `m` has `n` triples from the instance that cover every element once.
    pub fn is_matching(&self, m: &[[usize; 3]]) -> bool {
        if m.len() != self.n || m.iter().any(|t| !self.triples.contains(t)) {
            return false;
        }
        (0..3).all(|c| {
            let mut seen = vec![false; self.n];
            m.iter().all(|t| !std::mem::replace(&mut seen[t[c]], true))
        })
    }
}

/// A perfect matching sorted by `x`, found by backtracking over `x` in order
/// and triples in input order. Meant for `n` up to about 6.
pub fn tdm_brute(t: &ThreeDMInstance) -> Option<Vec<[usize; 3]>> {
    let mut by_x = vec![Vec::new(); t.n];
    for tr in &t.triples {
        by_x[tr[0]].push(*tr);
    }
    fn extend(x: usize, by_x: &[Vec<[usize; 3]>], used_y: &mut [bool], used_z: &mut [bool], chosen: &mut Vec<[usize; 3]>) -> bool {
        if x == by_x.len() {
            return true;
        }
        for tr in &by_x[x] {
            if used_y[tr[1]] || used_z[tr[2]] {
                continue;
            }
            used_y[tr[1]] = true;
            used_z[tr[2]] = true;
            chosen.push(*tr);
            if extend(x + 1, by_x, used_y, used_z, chosen) {
                return true;
            }
            chosen.pop();
            used_y[tr[1]] = false;
            used_z[tr[2]] = false;
        }
        false
    }
    let mut chosen = Vec::with_capacity(t.n);
    extend(0, &by_x, &mut vec![false; t.n], &mut vec![false; t.n], &mut chosen).then_some(chosen)
}
