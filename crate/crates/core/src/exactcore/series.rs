use num_bigint::BigInt;
use num_traits::One;

use super::{factorial, Polynomial, Rational};
use crate::error::{Error, Result};

/// Power series in `t` truncated after `t^order`, whose coefficients are
/// polynomials in `x`.
///
/// All arithmetic is exact through the truncation order; terms beyond it are
/// discarded, never approximated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSeries {
    coeffs: Vec<Polynomial>,
}

impl FormalSeries {
    /// Pads with zeros or drops terms so that exactly `order + 1` are kept.
    pub fn new(mut coeffs: Vec<Polynomial>, order: usize) -> Self {
        coeffs.resize(order + 1, Polynomial::zero());
        Self { coeffs }
    }

    /// Series with constant (x-free) coefficients.
    pub fn from_scalars(cs: impl IntoIterator<Item = Rational>, order: usize) -> Self {
        Self::new(cs.into_iter().map(Polynomial::constant).collect(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `t^n`, zero past the order.
    pub fn coefficient(&self, n: usize) -> Polynomial {
        self.coeffs.get(n).cloned().unwrap_or_default()
    }

    pub fn coefficients(&self) -> &[Polynomial] {
        &self.coeffs
    }

    /// Cauchy product, truncated to the smaller of the two orders.
    pub fn mul(&self, rhs: &FormalSeries) -> FormalSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|n| {
                (0..=n).fold(Polynomial::zero(), |acc, k| {
                    &acc + &(&self.coeffs[k] * &rhs.coeffs[n - k])
                })
            })
            .collect();
        FormalSeries::new(coeffs, order)
    }

    /// Multiplicative inverse. The constant term must be a nonzero constant.
    pub fn reciprocal(&self) -> Result<FormalSeries> {
        let c0 = match self.coeffs[0].degree() {
            Some(0) => self.coeffs[0].coeff(0),
            _ => {
                return Err(Error::InvalidArgument(
                    "series reciprocal needs a nonzero constant leading term".into(),
                ))
            }
        };
        let inv0 = c0.recip();
        let mut out: Vec<Polynomial> = Vec::with_capacity(self.coeffs.len());
        out.push(Polynomial::constant(inv0.clone()));
        for n in 1..self.coeffs.len() {
            let acc = (1..=n).fold(Polynomial::zero(), |acc, k| {
                &acc + &(&self.coeffs[k] * &out[n - k])
            });
            out.push(acc.scale(&-&inv0));
        }
        Ok(FormalSeries { coeffs: out })
    }

    pub fn scale(&self, c: &Rational) -> FormalSeries {
        FormalSeries {
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// `f(c t)`: multiplies the `t^n` coefficient by `c^n`.
    pub fn dilate(&self, c: &Rational) -> FormalSeries {
        let mut pow = Rational::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|p| {
                let q = p.scale(&pow);
                pow *= c;
                q
            })
            .collect();
        FormalSeries { coeffs }
    }

    /// `e^{p(x) t}` through `t^order`.
    pub fn exp_linear(p: &Polynomial, order: usize) -> FormalSeries {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut power = Polynomial::constant(Rational::one());
        for n in 0..=order {
            let inv_fact = Rational::new(BigInt::one(), factorial(n as u32));
            coeffs.push(power.scale(&inv_fact));
            power = &power * p;
        }
        FormalSeries { coeffs }
    }

    /// `e^{c t}` for a scalar `c`.
    pub fn exp_scalar(c: &Rational, order: usize) -> FormalSeries {
        Self::exp_linear(&Polynomial::constant(c.clone()), order)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Polynomial::is_zero)
    }
}

/// `t e^{xt} / (e^t - 1)` through `t^order`, by exact series division.
///
/// The coefficient of `t^n` is `B_n(x) / n!`.
pub fn bernoulli_egf(order: usize) -> FormalSeries {
    // (e^t - 1)/t = sum t^n/(n+1)!
    let denom = FormalSeries::from_scalars(
        (0..=order).map(|n| Rational::new(BigInt::one(), factorial(n as u32 + 1))),
        order,
    );
    let inv = denom
        .reciprocal()
        .expect("(e^t-1)/t has constant term 1");
    FormalSeries::exp_linear(&Polynomial::x(), order).mul(&inv)
}

impl Default for FormalSeries {
    fn default() -> Self {
        Self {
            coeffs: vec![Polynomial::zero()],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::{bernoulli_poly, hermite_poly, int, rat};

    #[test]
    fn egf_low_orders() {
        assert_eq!(bernoulli_egf(0).coefficient(0), Polynomial::constant(int(1)));
        assert_eq!(bernoulli_egf(2).coefficient(1), bernoulli_poly(1));
        assert_eq!(
            bernoulli_egf(6).coefficient(6),
            bernoulli_poly(6).scale(&rat(1, 720))
        );
    }

    #[test]
    fn reciprocal_round_trip() {
        let s = FormalSeries::exp_linear(&Polynomial::x(), 5);
        // e^{xt} has constant term 1; its inverse is e^{-xt}.
        let inv = s.reciprocal().unwrap();
        let neg_x = Polynomial::monomial(int(-1), 1);
        assert_eq!(inv, FormalSeries::exp_linear(&neg_x, 5));
        let one = s.mul(&inv);
        assert_eq!(one.coefficient(0), Polynomial::constant(int(1)));
        assert!((1..=5).all(|n| one.coefficient(n).is_zero()));
    }

    #[test]
    fn reciprocal_rejects_vanishing_constant_term() {
        let s = FormalSeries::from_scalars([int(0), int(1)], 3);
        assert!(s.reciprocal().is_err());
    }

    #[test]
    fn hermite_generating_function() {
        // e^{2xt - t^2} = e^{2xt} e^{-t^2}
        let order = 8;
        let two_x = Polynomial::monomial(int(2), 1);
        let gauss = FormalSeries::exp_scalar(&int(-1), order / 2);
        // e^{-t^2}: spread coefficients of e^{-u} onto even powers.
        let mut coeffs = vec![Polynomial::zero(); order + 1];
        for (k, c) in gauss.coefficients().iter().enumerate() {
            coeffs[2 * k] = c.clone();
        }
        let series = FormalSeries::exp_linear(&two_x, order).mul(&FormalSeries::new(coeffs, order));
        for n in 0..=order {
            let inv_fact = Rational::new(BigInt::one(), factorial(n as u32));
            assert_eq!(series.coefficient(n), hermite_poly(n as u32).scale(&inv_fact));
        }
    }

    #[test]
    fn dilate_scales_powers() {
        let s = FormalSeries::exp_scalar(&int(1), 4).dilate(&int(3));
        assert_eq!(s, FormalSeries::exp_scalar(&int(3), 4));
    }
}
