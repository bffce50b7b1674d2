//! Double-precision evaluators for ζ(s), β(s), the Lerch transcendent, the
//! Clausen-type bases and the Hurwitz-side basis.
//!
//! Every infinite series is cut after `K` terms (see [`Truncation`]) and
//! reports a [`TruncatedSeries`] whose `tail_bound` bounds the absolute error
//! of the returned value. Where an asymptotic tail correction applies
//! (Euler–Maclaurin for `z = 1`, Boole summation for alternating sums, the
//! `Li_{-j}(z)` expansion elsewhere on the unit circle) it is added to the
//! partial sum; the bound stays the plain a priori bound on the omitted tail
//! unless stated otherwise on the function.

mod clausen;
mod lerch;
mod sum;
mod zeta;

pub use clausen::{
    bernoulli_fourier, clausen_a, clausen_a_derivative, clausen_c, clausen_c_derivative,
    hurwitz_basis, ClausenVariant, HurwitzBasis,
};
pub use lerch::{bernoulli_from_bridge, lerch_phi, poisson_lerch_bridge};
pub use zeta::{dirichlet_beta, zeta};

pub(crate) use sum::{sin_cos_turns, CompensatedSum};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use num_complex::Complex64 as Complex;

/// Default number of retained terms for `s >= 2` series.
pub const DEFAULT_SERIES_K: usize = 100_000;

/// Number of retained series terms `K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Truncation(pub usize);

impl Default for Truncation {
    fn default() -> Self {
        Truncation(DEFAULT_SERIES_K)
    }
}

impl Truncation {
    pub fn k(self) -> usize {
        self.0.max(1)
    }
}

/// Truncation metadata attached to a series value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TruncatedSeries {
    pub truncation_k: usize,
    /// Upper bound on `|returned value - exact value|`, including a
    /// floating-point rounding allowance.
    pub tail_bound: f64,
}

/// A series value together with its truncation metadata.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evaluated<T> {
    pub value: T,
    pub series: TruncatedSeries,
}

impl<T> Evaluated<T> {
    pub fn tail_bound(&self) -> f64 {
        self.series.tail_bound
    }
}

/// A point on the unit circle, stored as `(re, im)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitComplex {
    pub re: f64,
    pub im: f64,
}

impl UnitComplex {
    /// `e^{2πix}`; exact at multiples of a quarter turn.
    pub fn from_turns(x: f64) -> Self {
        let (sin, cos) = sin_cos_turns(x);
        Self { re: cos, im: sin }
    }

    /// `e^{iθ}`
    pub fn from_angle(theta: f64) -> Self {
        let (sin, cos) = theta.sin_cos();
        Self { re: cos, im: sin }
    }

    pub fn modulus_defect(&self) -> f64 {
        (self.re * self.re + self.im * self.im - 1.0).abs()
    }

}

impl std::ops::Neg for UnitComplex {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl From<UnitComplex> for Complex64 {
    fn from(z: UnitComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}
