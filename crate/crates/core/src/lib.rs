//! Rainbow structures in properly edge-colored complete graphs.
//!
//! * [`graph`] and [`gen`]: colored graphs, their text format and instance generators.
//! * [`forest`]: rainbow path forests, swaps, and many-colored Hamilton cycles.
//! * [`sampler`] and [`expander`]: random color-class sampling and `(a, b)`-expander checks.
//! * [`cycle`]: the split / extend / close pipeline producing long rainbow cycles.
//! * [`oracle`]: exact brute-force references and independent validators.
//! * [`harness`]: seeded sweeps, CSV records and deficit fits.

// `!(x > 0.0)` deliberately rejects NaN; index loops read better on square tables.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod cycle;
pub mod expander;
pub mod forest;
pub mod gen;
pub mod graph;
pub mod harness;
pub mod oracle;
pub mod par;
pub mod rng;
pub mod sampler;

pub use graph::{build_colored_graph, Color, ColoredGraph, Edge, GraphError, Vertex, VertexSet};
