//! Recognition of star pairwise compatibility graphs.
//!
//! A graph is a star-PCG when its vertices can be given weights `w` and a
//! window `[dmin, dmax]` such that `u` and `v` are adjacent exactly when
//! `dmin <= w(u) + w(v) <= dmax`. [`recognize`] decides membership and
//! returns either a verified witness or a refusal certificate.

pub mod error;
pub mod eval;
pub mod exact;
pub mod gap;
pub mod graph;
pub mod oracle;
pub mod orderings;
pub mod perm;
pub mod rational;
pub mod recognize;
pub mod synthesis;
mod text;
pub mod witness;

pub use error::{Error, Result};
pub use eval::{evaluate_pcr, leaf_distances, parse_tree, star_of, verify_witness, WeightedTree};
pub use gap::{find_gap, proper_coloring, GapCertificate, GapTag, PairColor, ProperColoring};
pub use graph::{parse_graph, Graph};
pub use perm::{ElementOrdering, Permutation, VertexOrdering};
pub use rational::Rational;
pub use recognize::{recognize, RecognitionOutcome};
pub use synthesis::{normalize, synthesize_weights, StarPCR};
