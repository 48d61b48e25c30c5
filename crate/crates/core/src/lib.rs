//! Negation-aware scalar multiplication.
//!
//! In groups where `-(A + B)` and `-2A` are cheaper than `A + B` and `2A`,
//! an m-fold can be computed with only the negated operations by tracking a
//! single sign bit. This crate provides the signed-digit recodings that feed
//! the algorithms, an abstract [`NegationAwareGroup`] interface, an exact
//! modular-arithmetic oracle, cost-charging backends with field-operation
//! presets, and the verification and benchmark harnesses behind the CLI.

pub mod backends;
pub mod bench;
mod error;
pub mod group;
pub mod recoding;
pub mod scalar_mul;
pub mod verify;

pub use backends::{preset, CostChargingGroup, CostProfile, ModularGroup, Preset};
pub use error::{Error, Result};
pub use group::{
    savings_percent, weighted_total, CostLedger, CostRatios, CostVector, Exact, Metered,
    NegationAwareGroup, OpKind, Tally,
};
pub use recoding::{binary_expansion, naf, width_w_naf, DigitForm, SignedExpansion};
pub use scalar_mul::{
    double_and_add, mixed_scalar_mul, neg_scalar_mul, neg_scalar_mul_online, scalar_mul_entry,
    windowed_double_and_add, windowed_neg_scalar_mul, Algorithm, MixedMode, MulOptions, MulResult,
    StepKind, TraceStep,
};
