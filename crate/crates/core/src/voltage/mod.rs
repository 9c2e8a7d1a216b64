//! Graph families as cyclic covers of small voltage graphs, plus the
//! structural predicates used by the nut-graph checks.

mod cover;
mod family;
mod graph;

pub use cover::{VoltageArc, VoltageGraph};
pub use family::{build_family, Family, FamilyParams};
pub use graph::Graph;
