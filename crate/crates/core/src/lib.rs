//! Exact Borel-Bott-Weil computations on odd-dimensional quadrics.
//!
//! The crate is organised bottom-up:
//!
//! * [`weights`]: type B root data and doubled-integer weights
//! * [`bott`]: the dotted Weyl action and Bott's algorithm
//! * [`rep`]: Weyl dimensions, Freudenthal diagrams, tensor and plethysm decomposition
//! * [`bundle`], [`parser`]: completely reducible homogeneous bundles on `Q^(2n-1)`
//! * [`les`], [`total_space`], [`tilting`]: graded cohomology on the total space
//!   of the twisted dual Ottaviani bundle, long exact sequence bookkeeping, and
//!   Ext vanishing for the tilting candidates
//! * [`report`]: verification scans and their JSON/Markdown rendering

pub mod bott;
pub mod bundle;
pub mod error;
pub mod les;
pub mod parser;
pub mod rep;
pub mod report;
pub mod tilting;
pub mod total_space;
pub mod weights;

pub use bott::{bott_cohomology, dotted_dominant, BottOutcome, CohomologyAtom};
pub use bundle::{CohomologyTable, LeviBundle, Quadric};
pub use error::{Error, Result};
pub use les::{DimInterval, LESProblem, RankHint};
pub use parser::parse_bundle;
pub use rep::{Character, IrrepSum};
pub use report::{run_verify, Lemma, Status, VerificationReport, VerifyOptions};
pub use total_space::{x_cohomology, GradedCohomology};
pub use weights::{RootSystemB, Weight};
