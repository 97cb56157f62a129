//! JSON documents for instances and graphs.
//!
//! Instance: `{"version":1,"degrees":[..],"cuts":[{"set":[..],"ell":k},..]}`.
//! Graph: `{"n":k,"edges":[[i,j],..]}` with `i < j`, sorted.
//! Output is compact and newline-free; writers add the trailing newline.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{GrcError, Result};
use crate::model::{CutConstraint, GrcInstance, SimpleGraph};

pub const INSTANCE_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    pub version: u32,
    pub degrees: Vec<usize>,
    pub cuts: Vec<CutConstraint>,
}

impl TryFrom<InstanceDoc> for GrcInstance {
    type Error = GrcError;

    fn try_from(doc: InstanceDoc) -> Result<Self> {
        if doc.version != INSTANCE_VERSION {
            return Err(GrcError::InvalidArgument(format!("unsupported instance version {}", doc.version)));
        }
        GrcInstance::new(doc.degrees, doc.cuts)
    }
}

impl From<GrcInstance> for InstanceDoc {
    fn from(inst: GrcInstance) -> Self {
        InstanceDoc { version: INSTANCE_VERSION, degrees: inst.degrees().to_vec(), cuts: inst.cuts().to_vec() }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphDoc> for SimpleGraph {
    type Error = GrcError;

    fn try_from(doc: GraphDoc) -> Result<Self> {
        SimpleGraph::from_edges(doc.n, doc.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

impl From<SimpleGraph> for GraphDoc {
    fn from(g: SimpleGraph) -> Self {
        GraphDoc { n: g.vertex_count(), edges: g.edges().map(|(u, v)| [u, v]).collect() }
    }
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| GrcError::InvalidArgument(format!("bad JSON: {e}")))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("in-memory documents always serialize")
}
