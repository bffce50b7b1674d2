//! Dual Hurwitz/Clausen bases for Bernoulli functions.
//!
//! The crate is split along the objects it computes:
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`exactcore`] | exact rationals, Bernoulli/Euler numbers, Bernoulli and Hermite polynomials, formal power series |
//! | [`specfun`] | ζ, β, the Lerch transcendent, the Clausen-type bases and the Fourier form of `B_n` |
//! | [`selector`] | finite selector kernels and the kernel-weighted Lerch sums |
//! | [`quadrature`] | principal-value trapezoid/midpoint rules for `csc(2πx)`, `cot(πx)` and their blends |
//! | [`pairing`] | the weighted pairings, their exact constants and comparison reports |
//! | [`ladder`] | finite-section ladder operators on Bernoulli and Hermite bases |
//!
//! Everything is a pure function over immutable values.

pub mod error;
pub mod exactcore;
pub mod ladder;
pub mod pairing;
pub mod quadrature;
pub mod selector;
pub mod specfun;

pub use error::{Error, Result};
pub use exactcore::{FormalSeries, Polynomial, Rational};
pub use ladder::{BasisTag, OperatorMatrix};
pub use pairing::{PairingReport, Verdict};
pub use quadrature::{QuadratureConfig, WeightSpec};
pub use selector::{Parity, SelectorKernel};
pub use specfun::{TruncatedSeries, Truncation, UnitComplex};
