use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactcore::{bernoulli_number, euler_number, factorial, to_f64, Rational};
use crate::specfun::{dirichlet_beta, zeta, Truncation};

fn check_degree(m: u32) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidArgument("degree m must be >= 1".into()));
    }
    Ok(())
}

fn power_of_four(k: u32) -> BigInt {
    BigInt::from(1) << (2 * k as usize)
}

/// `Γ(2m+1) β(2m+1) / π^{2m+1} = (-1)^m E_{2m} / 4^{m+1}`.
pub fn closed_form_alt(m: u32) -> Result<Rational> {
    check_degree(m)?;
    let e = euler_number(2 * m)?;
    let signed = if m % 2 == 0 { e } else { -e };
    Ok(signed / Rational::from_integer(power_of_four(m + 1)))
}

/// `Γ(2m+2) ζ(2m+2) / π^{2m+2} = (-1)^{k+1} 4^k B_{2k} / (4k)`, `k = m+1`.
pub fn closed_form_sym(m: u32) -> Result<Rational> {
    check_degree(m)?;
    let k = m + 1;
    let b = bernoulli_number(2 * k);
    let signed = if k % 2 == 1 { b } else { -b };
    Ok(signed * Rational::from_integer(power_of_four(k)) / Rational::from_integer(BigInt::from(4 * k)))
}

/// The same constant through floating `β`.
pub fn numerical_alt(m: u32, trunc: Truncation) -> Result<f64> {
    check_degree(m)?;
    let s = 2 * m + 1;
    let gamma = to_f64(&Rational::from_integer(factorial(2 * m)));
    Ok(gamma * dirichlet_beta(s as f64, trunc)?.value / PI.powi(s as i32))
}

/// The same constant through floating `ζ`.
pub fn numerical_sym(m: u32, trunc: Truncation) -> Result<f64> {
    check_degree(m)?;
    let s = 2 * m + 2;
    let gamma = to_f64(&Rational::from_integer(factorial(2 * m + 1)));
    Ok(gamma * zeta(s as f64, trunc)?.value / PI.powi(s as i32))
}

/// `p/q` with an explicit sign, for tables.
pub fn format_rational(r: &Rational) -> String {
    if r.is_zero() {
        return "0".into();
    }
    let sign = if r.is_negative() { "-" } else { "" };
    if r.denom() == &BigInt::from(1) {
        format!("{sign}{}", r.numer().abs())
    } else {
        format!("{sign}{}/{}", r.numer().abs(), r.denom())
    }
}
