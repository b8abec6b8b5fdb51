//! Finite calculus on sequences `f: ℕ → ℝ` with respect to an irrational γ.
//!
//! `rm_γ(n)` is the signed distance from `n` to the nearest multiple of γ.
//! Integers with tiny remainders come from continued-fraction convergents,
//! and `D_γ f(n)` is read off the quotients `(f(n+m) - f(n)) / rm_γ(m)` over
//! such witnesses `m`.

mod delta;
mod gamma;
mod seq;

pub use delta::{
    check_dimensions, cusp_at, d_gamma_estimate, delta_quotient, delta_quotients, delta_witnesses, dominates, Cusp,
    DeltaEntry, DeltaSample, DgammaEstimate, DgammaOptions, DgammaValue, DimensionReport, DimensionRow, DEFAULT_DEPTH,
};
pub use gamma::{ConvergentStream, Gamma, IrrationalSpec, Named};
pub use seq::{build_flat_nonconstant, periodize, sign_jump_at, BoundSeq, SeqFn};
