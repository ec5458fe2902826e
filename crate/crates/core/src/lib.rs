//! Verification toolkit for one-sided Liouville properties of fully nonlinear
//! uniformly elliptic inequalities driven by the Pucci extremal operators.
//!
//! The crate is organised bottom-up:
//!
//! * [`pucci`]: exact evaluation of `M+`/`M-` on symmetric matrices and on
//!   radial Hessian data, plus the effective-dimension calculus.
//! * [`profiles`]: closed-form radial functions with exact derivatives, the
//!   model Hamiltonians and pointwise residual verification.
//! * [`classifier`]: maps a parameter instance to a [`Verdict`].
//! * [`counterexamples`]: explicit, numerically re-verified witnesses.
//! * [`transforms`]: Hopf-Cole variants, the power substitution and the
//!   algebraic inequalities used by the comparison arguments.
//! * [`annulus`]: the `m(R)` machinery, comparison subsolutions and the
//!   Lyapunov drift scan.

pub mod annulus;
pub mod classifier;
pub mod counterexamples;
mod error;
pub mod grid;
pub mod linalg;
pub mod profiles;
pub mod pucci;
pub mod regions;
pub mod transforms;

pub use classifier::{classify, Operator, Outcome, ProblemInstance, Verdict, Witness};
pub use counterexamples::{Synthesis, WitnessReport};
pub use error::{Error, Result};
pub use linalg::SymMatrix;
pub use profiles::{DriftSpec, HamiltonianSpec, RadialProfile, ResidualReport};
pub use pucci::{Ellipticity, RadialEigs, Sign};
