//! Exact asymptotic-iteration solver for the Feinberg–Horodecki oscillator
//! with time-dependent mass `m(t) = m0 / (1 + λ t²)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactalg`]: big rationals, sparse bivariate polynomials in `(τ, Ẽ)`,
//!   univariate polynomials and exact real-root isolation.
//! * [`aim`]: the asymptotic iteration method: the `(λ_k, s_k)` recursion over
//!   a shared denominator, the quantization polynomial, stable-root extraction
//!   and eigenfunction reconstruction from the converged ratio `α = s_k/λ_k`.
//! * [`oscillator`]: model parameters, dimensionless reduction, closed-form
//!   spectrum, bound-state bookkeeping and polynomial eigenfunctions.
//! * [`oracle`]: an independent finite-difference Sturm–Liouville solver for
//!   the original equation, using inertia counts and bisection.
//! * [`quadrature`]: adaptive Gauss–Kronrod integration used for
//!   normalization and for integrating `α`.

pub mod aim;
pub mod error;
pub mod exactalg;
pub mod oracle;
pub mod oscillator;
pub mod quadrature;

pub use error::{Error, Result};
pub use exactalg::{BiPoly, BigRat, RootInterval, UPoly};
