//! Eigenvalue multiplicities of separable spectral matrices.
//!
//! A spectral matrix is a list of strictly increasing integer rows; its
//! spectrum is the multiset of sums taking one entry from each row. This
//! crate enumerates spectrum prefixes, evaluates closed forms for harmonic
//! and deleted-harmonic matrices, and searches bounded families for the
//! largest multiplicity attainable at a given labelling.

pub mod claims;
pub mod deletion;
pub mod error;
pub mod harmonic;
pub mod matrix;
pub mod search;
pub mod spectrum;
pub mod table;
pub mod witnesses;

pub use deletion::{deleted_kmin, deleted_matrix, deleted_multiplicity, DeletionSpec};
pub use error::{Error, Result};
pub use harmonic::{
    asymptotic_ratio, binomial, harmonic_kmin, harmonic_level_of, harmonic_multiplicity, m2_max,
    mbar3, mbar3_interval, mbar3_skipped_values, mbar3_witness, single_deletion_bound,
    HarmonicModel, Mbar3Interval,
};
pub use matrix::SpectralMatrix;
pub use search::{
    estimate_space, search_max, search_table, verify_witness, BoundsPolicy, SearchBounds,
    SearchOptions, SearchReport, SearchStatus,
};
pub use spectrum::{
    brute_force_spectrum, count_representations, enumerate_spectrum, multiplicity_at,
    within_rank_bound, Eigenvalue, Level, RankQuery, SpectrumPrefix, Truncation,
};
pub use witnesses::{known_witnesses, KnownWitness, NamedMatrix, RowDeletions};
