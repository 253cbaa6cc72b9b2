//! The Hilbert function engine and the verification procedures built on it.

pub mod castelnuovo;
pub mod conditions;
pub mod expected;
pub mod params;
pub mod statements;
pub mod sweep;
pub mod transition;

pub use castelnuovo::{castelnuovo_check, castelnuovo_terms, CastelnuovoReport};
pub use conditions::{
    conditions_matrix, hilbert_function, ideal_dim_of, ConditionsMatrix, Engine, HilbertRecord,
};
pub use expected::{binomial, forms_dim, Shape};
pub use params::{critical_params, verify_lemma_params, CriticalParams, ParamReport};
pub use statements::{build_w, verify_statement, Statement, StatementCheck};
pub use sweep::{verify_bipolynomial, SweepFamily, SweepRow};
pub use transition::{transition_profile, TransitionProfile};
