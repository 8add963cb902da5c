//! Exact computational engines for the homological algebra of `Z/p^n`-type
//! rings: p-typical Witt vector arithmetic, Hochschild-style homology of
//! differential graded models, spectral sequences of filtered complexes, and
//! closed-form group oracles for THH/TF/TC/K-theory tables, with cross-checks
//! tying the engines to each other.
//!
//! The crate is organized in four layers:
//!
//! * [`arith`] — finite fields, Witt vectors, Smith normal form, lattices;
//! * [`homology`] — cyclic bar complexes of DG models and their homology;
//! * [`specseq`] — spectral sequences of filtered complexes and a symbolic
//!   evaluator for presented graded-commutative E-term algebras;
//! * [`oracle`] — closed-form group formulas and the cross-validation grid.

pub mod arith;
pub mod homology;
pub mod oracle;
pub mod specseq;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("lattice error: {0}")]
    Lattice(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("mismatched base: {0}")]
    BaseMismatch(String),
    #[error("infeasible computation: {0}")]
    Infeasible(String),
    #[error("window or guard violation: {0}")]
    Window(String),
    #[error("inconsistent differential schedule: {0}")]
    Schedule(String),
    #[error("out of proven range: {0}")]
    OutOfRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;
