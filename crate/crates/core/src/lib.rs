//! Stabilizer codes over composite local dimensions.
//!
//! Pauli operators are vectors `(x | z)` over `Z_Q` or over the integers.
//! The crate validates codes, converts codes over a prime into
//! local-dimension-invariant (LDI) form, mixes codes over different primes
//! into one code over a square-free `Q`, and analyses the result: logical
//! space size, logical operators, exhaustive distance and the integer
//! classification of undetectable errors.

pub mod analysis;
pub mod arith;
pub mod builder;
pub mod code;
pub mod codefile;
pub mod error;
pub mod ldi;
pub mod linalg;
pub mod ring;

pub use analysis::{
    brute_force_distance, brute_force_group_order, classify_undetectable, code_report,
    logical_dimension, logical_operators, CodeReport, DistanceResult, DistanceSearch, ErrorClass,
    LogicalDimension, LogicalOperator, UndetectableError,
};
pub use builder::{
    block_embed, gauge_fix_to_integer_k, known_code, mix_codes, pick_and_mix_scale, tile, Known,
    KnownCode, PrimeComponent,
};
pub use code::{
    canonical_form, syndrome, validate, CanonicalForm, StabilizerCode, ValidationReport,
};
pub use codefile::{parse_code_file, serialize_code, ParseError};
pub use error::{Error, Result};
pub use ldi::{
    check_distance_condition, instantiate, ldi_metrics, scale_by_m, to_ldi, to_ldi_via_canonical,
    DistanceCondition, LdiCode, LdiDerivation, LdiMetrics,
};
pub use linalg::{
    kernel_mod_q, kernel_order, membership, rank_mod_p, smith_normal_form, subgroup_order,
    IntMatrix,
};
pub use ring::{
    additive_order, integer_symplectic_product, lift_and_reduce, pauli_weight, symplectic_product,
    LiftPolicy, Modulus, PauliVec,
};
