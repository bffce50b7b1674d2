use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{binomial, Rational};
use crate::error::{Error, Result};

/// `B_0 ..= B_n` from `sum_{k=0}^{m} C(m+1,k) B_k = 0`, `B_0 = 1`.
///
/// Uses the convention `B_1 = -1/2`, i.e. `B_n = B_n(0)`.
pub fn bernoulli_numbers(n: u32) -> Vec<Rational> {
    let mut table: Vec<Rational> = Vec::with_capacity(n as usize + 1);
    table.push(Rational::one());
    for m in 1..=n {
        if m >= 3 && m % 2 == 1 {
            table.push(Rational::zero());
            continue;
        }
        let acc = (0..m).fold(Rational::zero(), |acc, k| {
            acc + Rational::from_integer(binomial(m + 1, k)) * &table[k as usize]
        });
        table.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
    }
    table
}

pub fn bernoulli_number(n: u32) -> Rational {
    bernoulli_numbers(n).pop().expect("table has n+1 entries")
}

/// Euler (secant) number `E_n`, `sech t = sum E_n t^n / n!`.
///
/// Only even indices are accepted; odd Euler numbers vanish and are not
/// needed anywhere downstream.
pub fn euler_number(n: u32) -> Result<Rational> {
    if n % 2 == 1 {
        return Err(Error::OddEulerIndex(n));
    }
    // cosh * sech = 1  =>  sum_{k even <= m} C(m,k) E_k = 0 for even m >= 2.
    let mut table: Vec<BigInt> = vec![BigInt::one()];
    for m in (2..=n).step_by(2) {
        let acc = (0..m)
            .step_by(2)
            .fold(BigInt::zero(), |acc, k| acc + binomial(m, k) * &table[k as usize / 2]);
        table.push(-acc);
    }
    Ok(Rational::from_integer(table.pop().expect("E_0 seeded")))
}
