//! Exact-arithmetic engine for Gallai witness sets.
//!
//! The crate builds the finite witness sets `Phi(n,k)` and `Delta(n,k,m)`
//! over exact rational coordinates, extracts a monochromatic homothetic copy
//! of the base prefix `S_n` from any k-coloring of the corresponding witness
//! set, and verifies both the constructions and the extractions against
//! independent brute-force oracles.
//!
//! Everything is computed over arbitrary-precision rationals; there is no
//! floating point anywhere in the pipeline. All set iteration is in a
//! canonical lexicographic order, so identical inputs produce byte-identical
//! serialized outputs regardless of worker count.

pub mod base;
pub mod budget;
pub mod coloring;
pub mod construct;
pub mod error;
pub mod extract;
pub mod geometry;
pub mod io;
pub mod rational;
pub mod svg;
pub mod verify;

pub use base::BaseSequence;
pub use budget::ResourceBudget;
pub use coloring::{Color, Coloring};
pub use construct::Builder;
pub use error::{Error, Result};
pub use extract::{witness_homothety, Extractor, Witness, WitnessSystem};
pub use geometry::{solve_anchored_homothety, Homothety, Point, PointSet};
pub use rational::Rational;
pub use verify::{
    check_delta_witness, check_phi_witness, exhaustive_sweep, find_mono_copies, random_sweep,
    CheckReport, MonoMode, Strategy, SweepReport, SweepTarget,
};
