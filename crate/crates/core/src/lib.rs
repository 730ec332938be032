//! Verification toolkit for the entropy lower bound on union-closed families.
//!
//! * [`setfamily`]: families over `[n]` as bit masks, closure fractions and
//!   element frequencies.
//! * [`entropy`]: the exact law of `A ∪ B` for independent uniform members
//!   and checks of every inequality bounding its entropy.
//! * [`analytic`]: the binary-entropy ratios, their minimization, and an
//!   interval branch-and-bound certificate for `f >= θ`.
//! * [`generators`]: exhaustive and random corpora, and the family showing
//!   the constant `ψ = (3 − √5)/2` cannot be improved for approximately
//!   union-closed families.
//! * [`report`]: the JSON envelope shared by the command-line tool.
//!
//! Loops over pairs, boxes and samples run on rayon when the `parallel`
//! feature is on; results are identical for every thread count.

pub mod analytic;
pub mod entropy;
pub mod exec;
pub mod fraction;
pub mod generators;
pub mod report;
pub mod setfamily;

pub use analytic::{HALF_INV_PHI, PHI, PSI};
pub use fraction::Fraction;
pub use setfamily::{parse_family, FamilyError, FrequencyProfile, SetFamily};
