//! Exact simulation and analysis of Clifford quantum networks.
//!
//! The crate computes network correlations in the stabilizer formalism with
//! exact rational probabilities, synthesizes the classical local model that
//! reproduces any pure-stabilizer 2-network correlation, reduces hypergraph
//! networks to 2-networks by teleportation, and certifies the mixed-state
//! magic-square construction against a brute-forced classical bound. A dense
//! statevector oracle cross-checks every exact path.

pub mod circuit;
pub mod dist;
pub mod error;
pub mod gf2;
pub mod network;
pub mod pauli;
pub mod stabilizer;

pub use circuit::{CliffordCircuit, Gate};
pub use dist::OutcomeDistribution;
pub use error::{
    CanonicalError, LhvError, NetworkError, OracleError, ParseError, PauliError, TableauError,
};
pub use network::{NetworkSpec, Source};
pub use pauli::{PauliOperator, Phase};
pub use stabilizer::{MembershipResult, StabilizerTableau};
