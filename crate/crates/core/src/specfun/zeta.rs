use num_complex::Complex64;

use super::sum::{hurwitz_tail, twisted_tail, CompensatedSum};
use super::{Evaluated, TruncatedSeries, Truncation};
use crate::error::{Error, Result};

const EPS: f64 = f64::EPSILON;

/// Riemann ζ(s) for real `s > 1`.
///
/// `sum_{k<=K} k^{-s}` plus the Euler–Maclaurin tail through the `B_6`
/// term. The bound is the `B_8` term (a rigorous remainder bound for this
/// summand) plus a rounding allowance.
pub fn zeta(s: f64, trunc: Truncation) -> Result<Evaluated<f64>> {
    if !(s > 1.0) {
        return Err(Error::DivergentSeries(s));
    }
    let k = trunc.k();
    let mut acc = CompensatedSum::default();
    for n in (1..=k).rev() {
        acc.add((n as f64).powf(-s));
    }
    let (tail, remainder) = hurwitz_tail(s, k as f64 + 1.0);
    let value = acc.value() + tail;
    Ok(Evaluated {
        value,
        series: TruncatedSeries {
            truncation_k: k,
            tail_bound: remainder + 4.0 * EPS * value.abs(),
        },
    })
}

/// Dirichlet β(s) = `sum_{k>=0} (-1)^k (2k+1)^{-s}` for real `s > 0`.
///
/// The first `K` terms are summed directly; the alternating tail is added by
/// Boole summation, `(-1)^K 2^{-s} sum_m (-1)^m (K + 1/2 + m)^{-s}`. When
/// that expansion is unusable (small `K`) the plain alternating-series bound,
/// the first omitted term, is reported instead.
pub fn dirichlet_beta(s: f64, trunc: Truncation) -> Result<Evaluated<f64>> {
    if !(s > 0.0) {
        return Err(Error::DivergentSeries(s));
    }
    let k = trunc.k();
    let mut acc = CompensatedSum::default();
    for n in (0..k).rev() {
        let term = (2.0 * n as f64 + 1.0).powf(-s);
        acc.add(if n % 2 == 0 { term } else { -term });
    }
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    let first_omitted = (2.0 * k as f64 + 1.0).powf(-s);
    let (tail, remainder) = match twisted_tail(Complex64::new(-1.0, 0.0), s, k as f64 + 0.5) {
        Some((t, next)) => {
            let scale = 2f64.powf(-s);
            (sign * scale * t.re, 2.0 * scale * next)
        }
        None => (0.0, first_omitted),
    };
    let value = acc.value() + tail;
    Ok(Evaluated {
        value,
        series: TruncatedSeries {
            truncation_k: k,
            tail_bound: remainder + 4.0 * EPS * value.abs(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn even_zeta_values() {
        let k = Truncation::default();
        assert!((zeta(4.0, k).unwrap().value - PI.powi(4) / 90.0).abs() <= 1e-12);
        assert!((zeta(6.0, k).unwrap().value - PI.powi(6) / 945.0).abs() <= 1e-12);
        assert!((zeta(2.0, k).unwrap().value - PI * PI / 6.0).abs() <= 1e-12);
    }

    #[test]
    fn zeta_rejects_divergent_abscissa() {
        assert_eq!(zeta(1.0, Truncation::default()), Err(Error::DivergentSeries(1.0)));
        assert!(zeta(0.5, Truncation::default()).is_err());
        assert!(zeta(f64::NAN, Truncation::default()).is_err());
    }

    #[test]
    fn odd_beta_values() {
        let k = Truncation::default();
        assert!((dirichlet_beta(3.0, k).unwrap().value - PI.powi(3) / 32.0).abs() <= 1e-12);
        assert!(
            (dirichlet_beta(5.0, k).unwrap().value - 5.0 * PI.powi(5) / 1536.0).abs() <= 1e-12
        );
    }

    #[test]
    fn beta_rejects_nonpositive() {
        assert!(dirichlet_beta(0.0, Truncation::default()).is_err());
        assert!(dirichlet_beta(-1.0, Truncation::default()).is_err());
    }

    #[test]
    fn bounds_hold_against_a_larger_truncation() {
        for s in [2.0, 3.0, 4.5, 6.0] {
            let small = zeta(s, Truncation(50)).unwrap();
            let big = zeta(s, Truncation(200)).unwrap();
            assert!((small.value - big.value).abs() <= small.tail_bound(), "zeta({s})");
        }
        for s in [0.5, 1.0, 3.0, 5.0] {
            let small = dirichlet_beta(s, Truncation(50)).unwrap();
            let big = dirichlet_beta(s, Truncation(200)).unwrap();
            assert!((small.value - big.value).abs() <= small.tail_bound(), "beta({s})");
        }
    }

    #[test]
    fn tiny_truncation_falls_back_to_leibniz_bound() {
        let v = dirichlet_beta(1.0, Truncation(3)).unwrap();
        assert!((v.value - (1.0 - 1.0 / 3.0 + 1.0 / 5.0)).abs() < 1e-15);
        assert!((v.value - PI / 4.0).abs() <= v.tail_bound());
    }
}
