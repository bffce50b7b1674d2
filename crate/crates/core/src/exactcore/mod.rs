//! Exact rational arithmetic: Bernoulli and Euler numbers, Bernoulli and
//! Hermite polynomials, and truncated formal power series with polynomial
//! coefficients.

mod numbers;
mod poly;
mod series;

pub use numbers::{bernoulli_number, bernoulli_numbers, euler_number};
pub use poly::{
    bernoulli_poly, hermite_poly, poly_derivative, poly_eval, poly_eval_real, Polynomial,
};
pub use series::{bernoulli_egf, FormalSeries};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

/// Exact fraction with arbitrary-precision numerator and denominator.
///
/// Always stored reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

/// `n / d` as a reduced rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    // Each partial product is itself a binomial coefficient, so the division is exact.
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Nearest double to an exact rational.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// The exact rational value of a finite double.
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}
