//! Graph realization under edge-cut constraints.
//!
//! An instance is a degree sequence over labeled vertices plus cut
//! constraints `(S, ℓ)` asking that exactly `ℓ` edges leave `S`. The crate
//! decides such instances and produces witness graphs:
//!
//! * plain degree sequences via Erdős–Gallai / Havel–Hakimi ([`classic`]);
//! * cuts on at most two vertices via f-factors ([`ffactor`]);
//! * cuts on three vertices via gadget rewriting to the two-vertex case
//!   ([`cut3`]), when no other constraint looks inside the rewritten set;
//! * forest-shaped possibility graphs by leaf peeling ([`tree`]);
//! * everything else by exhaustive search ([`oracle`]).
//!
//! [`driver::solve`] chooses among these. [`hardness`] builds instances from
//! exactly-one SAT and three-dimensional matching.

pub mod classic;
pub mod cut3;
pub mod driver;
pub mod error;
pub mod ffactor;
pub mod format;
pub mod hardness;
pub mod model;
pub mod oracle;
pub mod preprocess;
pub mod tree;

pub use driver::{solve, Method, SolveOptions, SolveReport};
pub use error::{GrcError, Result};
pub use model::{
    cut_size, degree_sum, normalize, verify_realization, width, CutConstraint, GrcInstance, SimpleGraph, SolveOutcome,
    Violation, VerifyReport,
};
