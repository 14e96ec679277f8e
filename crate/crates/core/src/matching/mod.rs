//! Matchings: bipartite maximum matching, fractional perfect matchings with
//! two-sided certificates, classical perfect matchings, and brute-force
//! oracles for both.
//!
//! Fractional values are stored as integers in half-units. A graph has a
//! fractional perfect matching iff its bipartite double cover has a perfect
//! matching, and a half-integral optimum always exists, so no floating point
//! is needed anywhere.

mod bipartite;
mod blossom;
mod certificate;
mod fractional;
mod oracle;

pub use bipartite::{koenig_cover, max_bipartite_matching, BipartiteMatching, VertexCover};
pub use blossom::{
    has_perfect_matching, maximum_matching_without, perfect_matching_without, tutte_barrier, tutte_barrier_without,
};
pub use certificate::{
    DeficiencyWitness, EdgeOddCycleFactor, FpmCertificate, HalfIntegralAssignment, MatchingSpec,
    TutteBarrier, WitnessError,
};
pub use fractional::{
    fpm_exists_without, fpm_no_witness, fpm_yes_witness, has_fpm, nu_fractional, Halves,
};
pub use oracle::{fpm_oracle, pm_oracle, ORACLE_MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatchingError {
    #[error("forced pair {{{0},{1}}} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("forced edges share vertex {0}")]
    NotDisjoint(usize),
    #[error("no fractional perfect matching extends the forced edges")]
    NotExtendable(DeficiencyWitness),
    #[error("a fractional perfect matching exists, so there is no deficiency witness")]
    FpmExists,
    #[error("the given bipartite matching is not maximum")]
    NotMaximum,
    #[error("oracle limited to {cap} vertices, graph has {n}")]
    OracleBudget { n: usize, cap: usize },
    #[error("certificate failed re-validation: {0}")]
    InvalidCertificate(#[from] WitnessError),
}
