//! Exact arithmetic for the Lah-Bell and degenerate Lah-Bell polynomial
//! families, the degenerate binomial and degenerate Poisson random
//! variables, and a registry of identity checks that tie them together.
//!
//! Everything that can be exact is exact: parameters are [`ExactRational`]
//! values and finite-support expectations are rational sums. Floating point
//! only appears at explicit evaluation boundaries (irrational normalizers,
//! infinite-series truncation, Monte Carlo estimates).

pub mod distributions;
pub mod error;
pub mod exact;
pub mod montecarlo;
pub mod polynomials;
pub mod verify;

pub use distributions::{DegenerateBinomial, DegeneratePoisson, Distribution, SupportAnalysis, Value};
pub use error::{Error, Result};
pub use exact::{ExactRational, TriangleCache, TriangleKind};
pub use montecarlo::{MomentEstimate, MomentKind, SamplerStream};

pub use polynomials::{RationalPolynomial, Variable};
pub use verify::{Mode, ParamSet, Status, VerificationReport};
