use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::sum::{polylog_on_circle, power_tail_bound, trig_rounding_allowance};
use super::{Evaluated, TruncatedSeries, Truncation};
use crate::error::{Error, Result};
use crate::exactcore::{bernoulli_poly, factorial, from_f64, to_f64, Polynomial};

/// Which reading of the odd Clausen basis `A_{2n+1}` to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClausenVariant {
    /// `-(2n+1)!/(2π)^{2n+1} · 2 Im(e^{-πi(2n+1)/2} Li_{2n+1}(e^{2πix}))`
    /// as displayed; the phase turns this into a cosine series.
    Literal,
    /// The sine-Clausen series `-(2n+1)!/(2π)^{2n+1} · 2 sum sin(2πkx)/k^{2n+1}`.
    Standard,
}

impl ClausenVariant {
    pub const ALL: [ClausenVariant; 2] = [ClausenVariant::Literal, ClausenVariant::Standard];

    pub fn label(self) -> &'static str {
        match self {
            ClausenVariant::Literal => "literal",
            ClausenVariant::Standard => "standard",
        }
    }
}

impl std::fmt::Display for ClausenVariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for ClausenVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "literal" => Ok(ClausenVariant::Literal),
            "standard" => Ok(ClausenVariant::Standard),
            other => Err(Error::InvalidArgument(format!("unknown A variant {other:?}"))),
        }
    }
}

/// `B(n; x)`, the Hurwitz-side basis at integer order.
///
/// At integer order `ζ(1-n, x) = -B_n(x)/n`, so this is the Bernoulli
/// polynomial `B_n`, evaluated exactly at the (dyadic) rational value of `x`
/// and rounded once at the end.
#[derive(Clone, Debug)]
pub struct HurwitzBasis {
    order: u32,
    poly: Polynomial,
    derivative: Polynomial,
}

impl HurwitzBasis {
    pub fn new(order: u32) -> Self {
        let poly = bernoulli_poly(order);
        let derivative = poly.derivative();
        Self {
            order,
            poly,
            derivative,
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.poly
    }

    pub fn eval(&self, x: f64) -> f64 {
        match from_f64(x) {
            Some(r) => to_f64(&self.poly.eval(&r)),
            None => f64::NAN,
        }
    }

    /// `n B_{n-1}(x)`, exact up to the final rounding.
    pub fn derivative(&self, x: f64) -> f64 {
        match from_f64(x) {
            Some(r) => to_f64(&self.derivative.eval(&r)),
            None => f64::NAN,
        }
    }
}

/// `B(n; x) = B_n(x)` for `n >= 1`.
pub fn hurwitz_basis(n: u32, x: f64) -> f64 {
    HurwitzBasis::new(n).eval(x)
}

fn factorial_f64(n: u32) -> f64 {
    to_f64(&crate::exactcore::Rational::from_integer(factorial(n)))
}

fn check_a_order(order: u32) -> Result<u32> {
    if order % 2 == 0 {
        return Err(Error::InvalidOrder {
            order,
            reason: "A basis needs odd order",
        });
    }
    if order == 1 {
        return Err(Error::ConditionalConvergence(order));
    }
    Ok(order)
}

fn check_c_order(order: u32) -> Result<u32> {
    if order % 2 == 1 || order == 0 {
        return Err(Error::InvalidOrder {
            order,
            reason: "C basis needs even order >= 2",
        });
    }
    Ok(order)
}

/// `e^{-πi p/2}` for integer `p`, exact.
fn quarter_phase(p: u32) -> Complex64 {
    match p % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    }
}

fn a_prefactor(order: u32) -> f64 {
    -2.0 * factorial_f64(order) / TAU.powi(order as i32)
}

fn c_prefactor(order: u32) -> f64 {
    -factorial_f64(order) / PI.powi(order as i32)
}

fn series_meta(prefactor: f64, p: u32, k: usize, x: f64) -> TruncatedSeries {
    let p = p as f64;
    TruncatedSeries {
        truncation_k: k,
        tail_bound: prefactor.abs() * (power_tail_bound(p, k) + trig_rounding_allowance(p, k, x)),
    }
}

/// Odd Clausen-type basis `A_{2n+1}(x)`.
///
/// `order` is `2n+1` and must be odd and at least 3.
pub fn clausen_a(
    order: u32,
    x: f64,
    trunc: Truncation,
    variant: ClausenVariant,
) -> Result<Evaluated<f64>> {
    let order = check_a_order(order)?;
    let k = trunc.k();
    let li = polylog_on_circle(x, order as f64, k);
    let pref = a_prefactor(order);
    let value = match variant {
        ClausenVariant::Literal => pref * (quarter_phase(order) * li).im,
        ClausenVariant::Standard => pref * li.im,
    };
    Ok(Evaluated {
        value,
        series: series_meta(pref, order, k, x),
    })
}

/// Termwise `d/dx` of the truncated [`clausen_a`] series.
pub fn clausen_a_derivative(
    order: u32,
    x: f64,
    trunc: Truncation,
    variant: ClausenVariant,
) -> Result<f64> {
    let order = check_a_order(order)?;
    // d/dx Li_p(e^{2πix}) = 2πi Li_{p-1}(e^{2πix})
    let li = polylog_on_circle(x, order as f64 - 1.0, trunc.k()) * Complex64::new(0.0, TAU);
    let pref = a_prefactor(order);
    Ok(match variant {
        ClausenVariant::Literal => pref * (quarter_phase(order) * li).im,
        ClausenVariant::Standard => pref * li.im,
    })
}

/// Even cosine-Clausen basis `C_{2n}(x) = -(2n)!/π^{2n} sum cos(2πkx)/k^{2n}`.
pub fn clausen_c(order: u32, x: f64, trunc: Truncation) -> Result<Evaluated<f64>> {
    let order = check_c_order(order)?;
    let k = trunc.k();
    let pref = c_prefactor(order);
    let value = pref * polylog_on_circle(x, order as f64, k).re;
    Ok(Evaluated {
        value,
        series: series_meta(pref, order, k, x),
    })
}

/// Termwise `d/dx` of the truncated [`clausen_c`] series.
pub fn clausen_c_derivative(order: u32, x: f64, trunc: Truncation) -> Result<f64> {
    let order = check_c_order(order)?;
    let li = polylog_on_circle(x, order as f64 - 1.0, trunc.k()) * Complex64::new(0.0, TAU);
    Ok(c_prefactor(order) * li.re)
}

/// `B_n(x)` through its Fourier expansion
/// `-n!/(2πi)^n sum_{k != 0} e^{2πikx}/k^n`, conjugate pairs combined.
///
/// Valid for `n >= 2` and `0 < x < 1`.
pub fn bernoulli_fourier(n: u32, x: f64, trunc: Truncation) -> Result<Evaluated<f64>> {
    if n < 2 {
        return Err(Error::InvalidOrder {
            order: n,
            reason: "Fourier form needs n >= 2",
        });
    }
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "x = {x} outside the open interval (0, 1)"
        )));
    }
    let k = trunc.k();
    let li = polylog_on_circle(x, n as f64, k);
    // sum_{k != 0} e^{2πikx}/k^n is 2 Re Li_n for even n and 2i Im Li_n for odd n;
    // (2πi)^n = (2π)^n i^n.
    let half = n / 2;
    let sign = if half % 2 == 0 { 1.0 } else { -1.0 };
    let pref = -2.0 * sign * factorial_f64(n) / TAU.powi(n as i32);
    let value = if n % 2 == 0 { pref * li.re } else { pref * li.im };
    Ok(Evaluated {
        value,
        series: series_meta(pref, n, k, x),
    })
}
