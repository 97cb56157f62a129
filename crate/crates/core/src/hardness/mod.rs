//! Instance generators for the hardness reductions, with decoders that turn
//! realizations back into solutions of the source problem.

mod sat13;
mod tdm;

use serde::Serialize;

use crate::error::Result;
use crate::model::{CutConstraint, GrcInstance, SimpleGraph};
use crate::oracle::{OneInThreeInstance, ThreeDMInstance};

pub use sat13::{decode_sat_witness, encode_sat_assignment, monotone_to_21, sat_to_grc, solve_21_by_k_sweep};
pub use tdm::{decode_tdm_witness, encode_tdm_matching, tdm_to_grc};

/// What a generated vertex stands for. Indices are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum Role {
    VarTrue1 { var: usize },
    VarTrue2 { var: usize },
    VarFalse1 { var: usize },
    VarFalse2 { var: usize },
    ClauseLiteral { clause: usize, position: usize },
    /// Third vertex of a two-literal clause gadget.
    ClauseFiller { clause: usize },
    Sink,
    SinkCopy { index: usize },
    TdmX { index: usize },
    /// Occurrence vertex on the `x` side for the `occurrence`-th triple
    /// containing `y`.
    TdmYa { y: usize, occurrence: usize, triple: usize },
    TdmYb { y: usize, occurrence: usize, triple: usize },
    TdmZ { index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GadgetSource {
    Sat { formula: OneInThreeInstance, k: usize, all_ones: bool },
    Tdm { instance: ThreeDMInstance },
}

/// Role of every vertex of a generated instance, plus the source problem.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GadgetMap {
    pub roles: Vec<Role>,
    pub source: GadgetSource,
}

impl GadgetMap {
    pub fn role(&self, v: usize) -> Option<Role> {
        self.roles.get(v).copied()
    }

    /// Vertex carrying `role`.
    pub fn vertex(&self, role: Role) -> Option<usize> {
        self.roles.iter().position(|&r| r == role)
    }

    pub fn vertices_where(&self, pred: impl Fn(&Role) -> bool) -> Vec<usize> {
        (0..self.roles.len()).filter(|&v| pred(&self.roles[v])).collect()
    }
}

/// Adds a forbidding pair cut for every non-edge of `possible`, so the
/// instance carries its possibility graph explicitly.
fn with_forbidden_complement(degrees: Vec<usize>, possible: &SimpleGraph, mut cuts: Vec<CutConstraint>) -> Result<GrcInstance> {
    let n = degrees.len();
    for u in 0..n {
        for v in u + 1..n {
            if !possible.has_edge(u, v) {
                cuts.push(CutConstraint::new([u, v], degrees[u] + degrees[v])?);
            }
        }
    }
    GrcInstance::new(degrees, cuts)
}
