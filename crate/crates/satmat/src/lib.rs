//! Saturation of forbidden 0-1 matrix patterns.
//!
//! A matrix *avoids* a pattern when no submatrix maps every 1 of the pattern
//! onto a 1 of the host, and it *saturates* the pattern when it avoids it and
//! every single 0 -> 1 change stops that. This crate bundles what the
//! saturation function of a pattern needs at desk scale: containment and
//! embedding search ([`pattern`]), the four structural classes of permutation
//! matrices with a census over them ([`classify`]), the four-section witness
//! construction and greedy completion ([`construct`]), exhaustive
//! small-instance oracles ([`oracle`]), and the lift of the whole story to
//! d-dimensional tensors ([`lift`]).
//!
//! Every public coordinate is 1-based, row 1 at the top, column 1 at the
//! left.

pub mod classify;
pub mod construct;
mod error;
pub mod lift;
pub mod matrix;
pub mod oracle;
pub mod pattern;
pub mod perm;
pub mod rng;
pub mod transform;

pub use classify::{
    census, census_with_threads, is_ordinary, reduces_to_class, sample_fraction, CensusMode,
    CensusReport, ClassId, ClassWitness, SampleEstimate, CENSUS_EXHAUSTIVE_LIMIT,
};
pub use construct::{
    build_tp, greedy_saturate, pad_middle, section_layout, verify_saturating,
    SaturationCertificate, SaturationFailure, SectionLayout,
};
pub use error::{Error, Result};
pub use lift::{
    contains_d, lift_matrix, lift_pattern, verify_lift_lemma, LiftLemmaReport, TensorD,
    LIFT_CELL_LIMIT, TENSOR_EXHAUSTIVE_CELL_LIMIT,
};
pub use matrix::Matrix01;
pub use oracle::{
    enumerate_maximal_avoiding, ex_exact, sat_exact, sat_upper_random, SatResult, EXACT_CELL_LIMIT,
};
pub use pattern::{contains, find_embedding, flip_creates, Embedding};
pub use perm::PermutationMatrix;
pub use transform::{orbit, Transform, ALL_TRANSFORMS};
