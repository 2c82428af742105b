//! Deciding, certifying, and property-testing deterministic separable
//! transformations of bipartite pure entangled states.
//!
//! A separable operation is a quantum operation whose Kraus operators are
//! tensor products `A_m ⊗ B_m`. This crate answers, for pure states `|ψ⟩`
//! and `|φ⟩` on a finite tensor-product space:
//!
//! - can some deterministic separable operation map `|ψ⟩` to `|φ⟩`
//!   (necessary conditions on Schmidt coefficients: rank monotonicity,
//!   the product condition, the equal-spectra collapse)?
//! - does a *given* operation do it, and with what branch probabilities
//!   and phases ([`sepops::SeparableOperation::check_deterministic`])?
//! - which full-Schmidt-rank states does a separable random unitary
//!   channel send to pure states
//!   ([`ruchannel::RandomUnitaryChannel::fixed_states`])?
//!
//! The crate is organized exactly along those lines: [`numerics`] is the
//! small dense complex-matrix kernel everything else sits on, [`states`]
//! handles Schmidt decompositions and map-state duality, [`sepops`] the
//! Kraus-pair operations and certificates, [`criteria`] the spectrum-level
//! verdicts, [`ruchannel`] random unitary channels and their fixed
//! families, [`lab`] seeded samplers and brute-force oracles for property
//! sweeps, and [`cli`] the command-line surface and file formats.
//!
//! Run `cargo run --example verdict_ladder` (or any other example) for a
//! guided tour; the `septrans` binary exposes the same functionality as
//! subcommands.

pub mod cli;
pub mod criteria;
pub mod lab;
pub mod numerics;
pub mod ruchannel;
pub mod sepops;
pub mod states;

pub use numerics::{phase_align, CMatrix, PhaseMatch, C64};
pub use states::BipartiteState;

/// Default tolerance used whenever a `tol` parameter is left unspecified.
///
/// All comparisons in this crate are additive runs against this scale
/// (relative to operand norms where the operation says so).
pub const DEFAULT_TOL: f64 = 1e-9;

/// Relative cutoff below which a singular value does not count towards rank:
/// `sigma_j` counts iff `sigma_j > RANK_CUTOFF * sigma_0`.
pub const RANK_CUTOFF: f64 = 1e-10;

/// Errors reported by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// The caller handed in something malformed (wrong shape, non-finite
    /// entries, violated precondition).
    #[error("input error: {0}")]
    Input(String),
    /// A relation the theory guarantees failed to hold numerically. This is
    /// a bug witness, not a user error.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
