//! Exact-arithmetic toolkit for the space of countable labelled graphs.
//!
//! Graphs on a fixed countable vertex set are identified with sets of edge
//! labels under a canonical colexicographic labelling. The crate provides:
//!
//! * [`graph`]: finite, cofinite, eventually-periodic, and oracle-backed
//!   graph representations with exact set algebra and convergence checks;
//! * [`metrics`]: summable weighted edit metrics, weak norms `||G||_a`,
//!   locally constant min-weight norms, mixed norms, truncation with
//!   certified residuals, and the injectivity/collision analysis of the
//!   weak-norm family across the base parameter;
//! * [`homind`]: subgraph and induced-subgraph indicators, inversion over
//!   the supergraph lattice, sharp Lipschitz constants, and interpolation
//!   through indicator combinations;
//! * [`calculus`]: difference-quotient derivatives through the binary
//!   encoding `||G||_2`, closed-form derivatives of distance functions,
//!   critical-point reports, product/chain combinators, and derivatives
//!   twisted by label permutations;
//! * [`density`]: induced-prefix edge-density trajectories and
//!   constructions realizing prescribed limits and accumulation intervals.
//!
//! All arithmetic is exact rational arithmetic; quantities that cannot be
//! closed over a representation are reported as certified interval
//! enclosures, never as floats.

pub mod calculus;
pub mod density;
pub mod graph;
pub mod homind;
pub mod json;
pub mod labeling;
pub mod metrics;
pub mod rat;

pub use graph::{
    class_of_xor, complement, converged_at_depth, intersect, sym_diff, FiniteGraphH, Graph,
    GraphClass, GraphError, OracleTag,
};
pub use labeling::{colex_label, colex_unlabel, EdgeId, EdgeLabeling, Label, Permutation};
pub use rat::{parse_rat, DyadicInterval, Rat};
