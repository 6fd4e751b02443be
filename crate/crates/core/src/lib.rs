//! Witness-producing structural graph search: randomized cleaning and
//! regularization, deletion-method sparsification, dependent random
//! choice, shattering, and induced-subdivision extraction, with every
//! returned certificate re-verified against its host graph.

pub mod config;
pub mod detect;
pub mod error;
pub mod gen;
pub mod graph;
pub mod hypergraph;
pub mod oracle;
pub mod regularize;
pub mod shattering;
pub mod sparsify;
pub mod subdivision;
pub mod trace;
pub mod witness;
pub mod pipeline;

pub use config::RunConfig;
pub use error::OpError;
pub use graph::{BipartitePartition, DegeneracyOrdering, Graph, Rational};
pub use hypergraph::{BalancedSubdivision, Multihypergraph, OneSubdivision};
pub use trace::RunTrace;
pub use witness::{verify_witness, VerifiedWitness, Witness};
