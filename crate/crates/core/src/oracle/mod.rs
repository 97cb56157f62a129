//! Exhaustive reference solvers used as ground truth at small sizes.

mod sat;
mod search;
mod tdm;

pub use sat::{sat_brute, Literal, OneInThreeInstance};
pub use search::{enumerate_realizations, oracle_solve, oracle_solve_with, OracleOptions, DEFAULT_NODE_BUDGET};
pub use tdm::{tdm_brute, ThreeDMInstance};

#[cfg(test)]
pub(crate) use sat::tests::sample_formula;
#[cfg(test)]
pub(crate) use tdm::tests::sample_triples;
