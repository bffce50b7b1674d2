//! Finite selector kernels
//! `K_J(k) = (1/J) sum_j trig(k θ_j) / trig(θ_j)`, `θ_j = (2j+1)π/(2J)`,
//! and the kernel-weighted Lerch sums compared against bilateral Hurwitz-type
//! chains.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{lerch_phi, CompensatedSum, Truncation, UnitComplex};

/// Values within this distance of -1, 0 or 1 are snapped in [`kernel_table`].
pub const SNAP_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Sin,
    Cos,
}

impl Parity {
    pub fn label(self) -> &'static str {
        match self {
            Parity::Sin => "sin",
            Parity::Cos => "cos",
        }
    }

    fn eval(self, x: f64) -> f64 {
        match self {
            Parity::Sin => x.sin(),
            Parity::Cos => x.cos(),
        }
    }
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for Parity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sin" => Ok(Parity::Sin),
            "cos" => Ok(Parity::Cos),
            other => Err(Error::InvalidArgument(format!("unknown parity {other:?}"))),
        }
    }
}

/// One period (`4J` values, `k = 0..4J`) of a selector kernel.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelectorKernel {
    pub j: u32,
    pub parity: Parity,
    pub period_values: Vec<f64>,
}

impl SelectorKernel {
    /// Value at any integer `k`, from `K(k + 2J) = -K(k)`.
    pub fn at(&self, k: i64) -> f64 {
        let period = 4 * self.j as i64;
        self.period_values[k.rem_euclid(period) as usize]
    }
}

fn nodes(j: u32) -> impl Iterator<Item = f64> {
    (0..j).map(move |i| (2 * i + 1) as f64 * PI / (2 * j) as f64)
}

fn check_kernel(j: u32, parity: Parity) -> Result<()> {
    if j == 0 {
        return Err(Error::InvalidArgument("J must be positive".into()));
    }
    // θ_j = π/2 exactly when 2j+1 = J, i.e. for every odd J.
    if parity == Parity::Cos && j % 2 == 1 {
        return Err(Error::VanishingCosNode(j));
    }
    Ok(())
}

pub fn kernel_value(j: u32, parity: Parity, k: i64) -> Result<f64> {
    check_kernel(j, parity)?;
    let kf = k as f64;
    let sum: f64 = nodes(j)
        .map(|theta| parity.eval(kf * theta) / parity.eval(theta))
        .sum();
    Ok(sum / j as f64)
}

pub fn kernel_table(j: u32, parity: Parity) -> Result<SelectorKernel> {
    check_kernel(j, parity)?;
    let period_values = (0..4 * j as i64)
        .map(|k| kernel_value(j, parity, k).map(snap))
        .collect::<Result<Vec<_>>>()?;
    Ok(SelectorKernel {
        j,
        parity,
        period_values,
    })
}

fn snap(v: f64) -> f64 {
    let r = v.round();
    if (r == -1.0 || r == 0.0 || r == 1.0) && (v - r).abs() <= SNAP_TOLERANCE {
        // normalizes -0.0 too
        r + 0.0
    } else {
        v
    }
}

/// `√2 sin(kπ/2) cos(kπ/4)` (sin) or `√2 sin(kπ/2) sin(kπ/4)` (cos), the
/// `J = 2` kernels in closed form.
pub fn kernel_closed_form_j2(k: i64, parity: Parity) -> f64 {
    let kf = k as f64;
    let second = match parity {
        Parity::Sin => (kf * PI / 4.0).cos(),
        Parity::Cos => (kf * PI / 4.0).sin(),
    };
    SQRT_2 * (kf * PI / 2.0).sin() * second
}

/// Both sides of a kernel-weighted Lerch identity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelectorIdentity {
    /// Real part of `(1/J) sum_j [trig(kθ_j)/trig(θ_j)] Φ(∓e^{iθ_j}, s, a)`.
    pub lhs: f64,
    /// Imaginary part of the same sum; the identity presumes it vanishes.
    pub lhs_imag: f64,
    /// Symmetric bilateral sum over `|l| <= L`.
    pub rhs: f64,
    /// `|lhs - rhs|`
    pub diff: f64,
}

impl SelectorIdentity {
    pub fn holds(&self, tol: f64, imag_tol: f64) -> bool {
        self.diff <= tol && self.lhs_imag.abs() <= imag_tol
    }
}

/// Evaluates
///
/// * sin branch: `(1/J) sum_j [sin(kθ_j)/sin θ_j] Φ(-e^{iθ_j}, s, a)` against
///   `sum_l [(2Jl+k+a)^{-s} - (2Jl-k+a)^{-s}]`,
/// * cos branch: `(1/J) sum_j [cos(kθ_j)/cos θ_j] Φ(e^{iθ_j}, s, a)` against
///   `sum_l [(2Jl+k+a)^{-s} + (2Jl-k+a)^{-s}]`,
///
/// with the bilateral sum cut symmetrically at `|l| <= L`.
///
/// `s` is an integer so that the negative bases in the bilateral chain are
/// well defined.
pub fn lerch_selector_identity(
    j: u32,
    k: i64,
    s: u32,
    a: f64,
    branch: Parity,
    bilateral_l: u64,
    trunc: Truncation,
) -> Result<SelectorIdentity> {
    check_kernel(j, branch)?;
    if s < 2 {
        return Err(Error::InvalidArgument(format!("s = {s} must be >= 2")));
    }
    if !(a > 0.0) {
        return Err(Error::PoleChain(a));
    }
    let rhs = bilateral_chain(j, k, s, a, branch, bilateral_l)?;

    let kf = k as f64;
    let mut lhs = Complex64::new(0.0, 0.0);
    for theta in nodes(j) {
        let weight = branch.eval(kf * theta) / branch.eval(theta);
        let point = UnitComplex::from_angle(theta);
        let z = match branch {
            Parity::Sin => -point,
            Parity::Cos => point,
        };
        lhs += lerch_phi(z.into(), s as f64, a, trunc)?.value * weight;
    }
    lhs /= j as f64;
    Ok(SelectorIdentity {
        lhs: lhs.re,
        lhs_imag: lhs.im,
        rhs,
        diff: (lhs.re - rhs).abs(),
    })
}

fn bilateral_chain(j: u32, k: i64, s: u32, a: f64, branch: Parity, cutoff: u64) -> Result<f64> {
    let two_j = 2.0 * j as f64;
    let kf = k as f64;
    let sign = match branch {
        Parity::Sin => -1.0,
        Parity::Cos => 1.0,
    };
    let term = |l: i64| -> Result<f64> {
        let lf = l as f64;
        let plus = two_j * lf + kf + a;
        let minus = two_j * lf - kf + a;
        if plus == 0.0 || minus == 0.0 {
            return Err(Error::BilateralPole(l));
        }
        Ok(plus.powi(-(s as i32)) + sign * minus.powi(-(s as i32)))
    };
    // Check the whole chain for poles before summing.
    let c = cutoff as i64;
    for l in -c..=c {
        let lf = l as f64;
        if two_j * lf + kf + a == 0.0 || two_j * lf - kf + a == 0.0 {
            return Err(Error::BilateralPole(l));
        }
    }
    let mut acc = CompensatedSum::default();
    for l in (1..=c).rev() {
        acc.add(term(l)?);
        acc.add(term(-l)?);
    }
    acc.add(term(0)?);
    Ok(acc.value())
}
