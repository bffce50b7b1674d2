use std::f64::consts::PI;

use num_complex::Complex64;

use super::sum::{hurwitz_tail, twisted_tail, ComplexSum};
use super::{Evaluated, TruncatedSeries, Truncation, UnitComplex};
use crate::error::{Error, Result};
use crate::exactcore::{factorial, to_f64, Rational};

const EPS: f64 = f64::EPSILON;
const UNIT_TOL: f64 = 1e-12;

/// Lerch transcendent `Φ(z, s, a) = sum_{n>=0} z^n / (n+a)^s`.
///
/// Requires `|z| <= 1`, `a > 0`, and `s > 1` on the unit circle. The first
/// `K` terms are summed directly and the tail `z^K sum_m z^m (K+a+m)^{-s}` is
/// estimated asymptotically when possible. The reported bound is the
/// integral-test bound on the omitted tail,
/// `(K+a)^{-s} + (K+a)^{1-s}/(s-1)`, which also dominates the error of the
/// corrected value.
pub fn lerch_phi(z: Complex64, s: f64, a: f64, trunc: Truncation) -> Result<Evaluated<Complex64>> {
    if !(a > 0.0) {
        return Err(Error::PoleChain(a));
    }
    let modulus = z.norm();
    if !(modulus <= 1.0 + UNIT_TOL) {
        return Err(Error::InvalidArgument(format!("|z| = {modulus} exceeds 1")));
    }
    let on_circle = modulus >= 1.0 - UNIT_TOL;
    if (on_circle && !(s > 1.0)) || !(s > 0.0) {
        return Err(Error::DivergentSeries(s));
    }
    let k = trunc.k();
    let mut acc = ComplexSum::default();
    let mut power = Complex64::new(1.0, 0.0);
    for n in 0..k {
        acc.add(power * (n as f64 + a).powf(-s));
        power *= z;
    }
    let base = k as f64 + a;
    let tail = if z == Complex64::new(1.0, 0.0) {
        Some(Complex64::new(hurwitz_tail(s, base).0, 0.0))
    } else if z == Complex64::new(0.0, 0.0) {
        Some(Complex64::new(0.0, 0.0))
    } else {
        twisted_tail(z, s, base).map(|(t, _)| power * t)
    };
    let value = acc.value() + tail.unwrap_or_default();
    let raw_tail = if s > 1.0 {
        base.powf(-s) + base.powf(1.0 - s) / (s - 1.0)
    } else {
        // |z| < 1: geometric domination of the omitted terms
        modulus.powi(k as i32) * base.powf(-s).max(1.0) / (1.0 - modulus)
    };
    Ok(Evaluated {
        value,
        series: TruncatedSeries {
            truncation_k: k,
            tail_bound: raw_tail + 8.0 * EPS * value.norm(),
        },
    })
}

/// `π^{-s} Γ(s) Φ(e^{2πix}, s, 1)` for integer `s >= 2` and `0 < x < 1`.
pub fn poisson_lerch_bridge(s: u32, x: f64, trunc: Truncation) -> Result<Evaluated<Complex64>> {
    if s < 2 {
        return Err(Error::DivergentSeries(s as f64));
    }
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "x = {x} outside the open interval (0, 1)"
        )));
    }
    let gamma = to_f64(&Rational::from_integer(factorial(s - 1)));
    let scale = gamma / PI.powi(s as i32);
    let phi = lerch_phi(UnitComplex::from_turns(x).into(), s as f64, 1.0, trunc)?;
    Ok(Evaluated {
        value: phi.value * scale,
        series: TruncatedSeries {
            truncation_k: phi.series.truncation_k,
            tail_bound: phi.series.tail_bound * scale,
        },
    })
}

/// `B_n(x)` recovered from the bridge:
/// `B_n(x) = -(-1)^{n/2} n 2^{1-n} Re(e^{2πix} P_n(x))` for even `n`, and
/// `-(-1)^{(n-1)/2} n 2^{1-n} Im(e^{2πix} P_n(x))` for odd `n`, where `P_n`
/// is [`poisson_lerch_bridge`].
pub fn bernoulli_from_bridge(n: u32, x: f64, trunc: Truncation) -> Result<Evaluated<f64>> {
    let bridge = poisson_lerch_bridge(n, x, trunc)?;
    let shifted = Complex64::from(UnitComplex::from_turns(x)) * bridge.value;
    let half = n / 2;
    let sign = if half % 2 == 0 { -1.0 } else { 1.0 };
    let scale = sign * n as f64 * 2f64.powi(1 - n as i32);
    let value = if n % 2 == 0 { scale * shifted.re } else { scale * shifted.im };
    Ok(Evaluated {
        value,
        series: TruncatedSeries {
            truncation_k: bridge.series.truncation_k,
            tail_bound: scale.abs() * (bridge.series.tail_bound + 8.0 * EPS * bridge.value.norm()),
        },
    })
}
