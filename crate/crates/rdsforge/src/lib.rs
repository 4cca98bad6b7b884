//! Exact, exhaustive analysis of vectorial functions over binary fields.
//!
//! The crate models GF(2^n) in a polynomial basis (`field`), materializes
//! vectorial functions as full value tables (`function`), and provides the
//! combinatorial passes that characterize them: differential spectra and
//! APN verdicts (`diff`), relative-difference-set structure of image sets
//! (`rds`), bent Boolean functions extracted from those images (`bent`),
//! power-map and affine equivalence checks (`equiv`), and a resumable
//! parameter-sweep harness (`sweep`).
//!
//! Everything is computed by exhaustive enumeration — there are no floating
//! point tolerances anywhere; every verdict is an exact count.

mod error;

pub mod bent;
pub mod diff;
pub mod equiv;
pub mod field;
pub mod function;
pub mod rds;
pub mod sweep;
pub mod verify;

pub use bent::{QuadraticForm, TruthTable, WalshSpectrum};
pub use diff::{DiffSpectrum, ImageProfile};
pub use equiv::AffineWitness;
pub use error::{Error, Result};
pub use field::{FieldElem, FieldSpec};
pub use function::{FamilyKind, MonomialKind, ValueTable};
pub use rds::{Counterexample, RdsParams, RdsReport};
pub use sweep::{CheckKind, Sampling, SweepJob, SweepRecord};
