//! Truncated ladder operators on the Bernoulli, Hermite-polynomial and
//! Hermite-function bases.
//!
//! Columns index the input basis element: entry `(r, c)` is the `e_r`
//! coordinate of `op(e_c)`. A dimension-`D+1` block keeps degrees `0..=D`,
//! so anything raised past degree `D` is dropped.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactcore::{
    bernoulli_egf, bernoulli_poly, hermite_poly, int, Polynomial, Rational,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasisTag {
    Bernoulli,
    HermitePoly,
    HermiteFn,
}

impl fmt::Display for BasisTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BasisTag::Bernoulli => "bernoulli",
            BasisTag::HermitePoly => "hermite-poly",
            BasisTag::HermiteFn => "hermite-fn",
        })
    }
}

/// Element-wise tolerance carried by real-valued operators.
pub const REAL_TOLERANCE: f64 = 1e-12;

/// Square operator matrix tied to a basis.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix<T> {
    basis_tag: BasisTag,
    entries: Vec<Vec<T>>,
}

pub type ExactOperator = OperatorMatrix<Rational>;
pub type RealOperator = OperatorMatrix<f64>;

impl<T> OperatorMatrix<T>
where
    T: Clone + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    pub fn zeros(dim: usize, basis_tag: BasisTag) -> Self {
        Self {
            basis_tag,
            entries: vec![vec![T::zero(); dim]; dim],
        }
    }

    pub fn identity(dim: usize, basis_tag: BasisTag) -> Self {
        Self::diagonal((0..dim).map(|_| T::one()).collect(), basis_tag)
    }

    pub fn diagonal(diag: Vec<T>, basis_tag: BasisTag) -> Self {
        let mut m = Self::zeros(diag.len(), basis_tag);
        for (i, d) in diag.into_iter().enumerate() {
            m.entries[i][i] = d;
        }
        m
    }

    pub fn from_rows(entries: Vec<Vec<T>>, basis_tag: BasisTag) -> Result<Self> {
        let dim = entries.len();
        if dim == 0 || entries.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidArgument("operator matrix must be square".into()));
        }
        Ok(Self { basis_tag, entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn basis_tag(&self) -> BasisTag {
        self.basis_tag
    }

    pub fn get(&self, row: usize, col: usize) -> &T {
        &self.entries[row][col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: T) {
        self.entries[row][col] = value;
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.entries
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.basis_tag != other.basis_tag {
            return Err(Error::OperatorMismatch(format!(
                "basis {} vs {}",
                self.basis_tag, other.basis_tag
            )));
        }
        if self.dim() != other.dim() {
            return Err(Error::OperatorMismatch(format!(
                "dimension {} vs {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(())
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let d = self.dim();
        let mut out = Self::zeros(d, self.basis_tag);
        for i in 0..d {
            for k in 0..d {
                let a = &self.entries[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = &other.entries[k][j];
                    if !b.is_zero() {
                        let acc = out.entries[i][j].clone() + a.clone() * b.clone();
                        out.entries[i][j] = acc;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (row, orow) in out.entries.iter_mut().zip(&other.entries) {
            for (a, b) in row.iter_mut().zip(orow) {
                *a = a.clone() - b.clone();
            }
        }
        Ok(out)
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (row, orow) in out.entries.iter_mut().zip(&other.entries) {
            for (a, b) in row.iter_mut().zip(orow) {
                *a = a.clone() + b.clone();
            }
        }
        Ok(out)
    }

    pub fn scaled(&self, c: &T) -> Self {
        let mut out = self.clone();
        for a in out.entries.iter_mut().flatten() {
            *a = c.clone() * a.clone();
        }
        out
    }

    pub fn apply(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.dim() {
            return Err(Error::OperatorMismatch(format!(
                "vector length {} vs dimension {}",
                v.len(),
                self.dim()
            )));
        }
        Ok(self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    /// Leading `k × k` block (degrees `0..k`).
    pub fn block(&self, k: usize) -> Self {
        let k = k.min(self.dim());
        Self {
            basis_tag: self.basis_tag,
            entries: self.entries[..k].iter().map(|r| r[..k].to_vec()).collect(),
        }
    }

    /// Entries `(r, c)` with `r, c < k`, flattened with their indices.
    fn block_entries(&self, k: usize) -> impl Iterator<Item = (usize, usize, &T)> {
        self.entries
            .iter()
            .take(k)
            .enumerate()
            .flat_map(move |(r, row)| row.iter().take(k).enumerate().map(move |(c, v)| (r, c, v)))
    }
}

impl ExactOperator {
    pub fn to_real(&self) -> RealOperator {
        OperatorMatrix {
            basis_tag: self.basis_tag,
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(crate::exactcore::to_f64).collect())
                .collect(),
        }
    }

    /// True if every entry on degrees `0..k` is exactly zero.
    pub fn block_is_zero(&self, k: usize) -> bool {
        self.block_entries(k).all(|(_, _, v)| v.is_zero())
    }
}

impl RealOperator {
    pub fn max_abs_on_block(&self, k: usize) -> f64 {
        self.block_entries(k).fold(0.0, |m, (_, _, v)| m.max(v.abs()))
    }
}

/// `PQ - QP`
pub fn commutator<T>(p: &OperatorMatrix<T>, q: &OperatorMatrix<T>) -> Result<OperatorMatrix<T>>
where
    T: Clone + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    p.compose(q)?.minus(&q.compose(p)?)
}

/// Coordinates of `p` in a triangular basis (`basis[k]` has degree `k`).
pub fn coordinates(p: &Polynomial, basis: &[Polynomial]) -> Result<Vec<Rational>> {
    let mut rest = p.clone();
    let mut out = vec![Rational::zero(); basis.len()];
    while let Some(deg) = rest.degree() {
        let b = basis
            .get(deg)
            .ok_or_else(|| Error::InvalidArgument(format!("degree {deg} outside the basis")))?;
        let c = rest.coeff(deg) / b.coeff(deg);
        rest = &rest - &b.scale(&c);
        out[deg] = c;
    }
    Ok(out)
}

/// `sum_k v[k] basis[k]`
pub fn from_coordinates(v: &[Rational], basis: &[Polynomial]) -> Polynomial {
    v.iter()
        .zip(basis)
        .fold(Polynomial::zero(), |acc, (c, b)| &acc + &b.scale(c))
}

fn bernoulli_basis(d: usize) -> Vec<Polynomial> {
    (0..=d as u32).map(bernoulli_poly).collect()
}

fn hermite_basis(d: usize) -> Vec<Polynomial> {
    (0..=d as u32).map(hermite_poly).collect()
}

/// Matrix of `d/dx` obtained by differentiating each basis polynomial and
/// re-expanding it in the basis.
fn derivative_matrix(basis: &[Polynomial], tag: BasisTag) -> Result<ExactOperator> {
    let dim = basis.len();
    let mut m = ExactOperator::zeros(dim, tag);
    for (c, b) in basis.iter().enumerate() {
        for (r, v) in coordinates(&b.derivative(), basis)?.into_iter().enumerate() {
            m.set(r, c, v);
        }
    }
    Ok(m)
}

fn check_dim(d: usize) -> Result<()> {
    if d == 0 {
        return Err(Error::InvalidArgument("ladder dimension D must be >= 1".into()));
    }
    Ok(())
}

/// `L = d/dx` on `B_0..B_D`.
pub fn op_l(d: usize) -> Result<ExactOperator> {
    check_dim(d)?;
    derivative_matrix(&bernoulli_basis(d), BasisTag::Bernoulli)
}

/// `N B_n = n B_n`
pub fn op_n(d: usize) -> Result<ExactOperator> {
    check_dim(d)?;
    Ok(ExactOperator::diagonal(
        (0..=d as i64).map(int).collect(),
        BasisTag::Bernoulli,
    ))
}

/// `𝒥 B_n = B_{n+1}/(n+1)`, with `B_{D+1}` dropped.
pub fn op_j(d: usize) -> Result<ExactOperator> {
    check_dim(d)?;
    let mut m = ExactOperator::zeros(d + 1, BasisTag::Bernoulli);
    for n in 0..d {
        m.set(n + 1, n, Rational::new(1.into(), (n as i64 + 1).into()));
    }
    Ok(m)
}

/// `R = 𝒥(N+1)`, so that `R B_n = B_{n+1}`.
pub fn op_r(d: usize) -> Result<ExactOperator> {
    let shifted = op_n(d)?.plus(&ExactOperator::identity(d + 1, BasisTag::Bernoulli))?;
    op_j(d)?.compose(&shifted)
}

/// `d/dx` on `H_0..H_D`.
pub fn hermite_derivative(d: usize) -> Result<ExactOperator> {
    check_dim(d)?;
    derivative_matrix(&hermite_basis(d), BasisTag::HermitePoly)
}

fn real_diag(values: impl IntoIterator<Item = f64>, tag: BasisTag) -> RealOperator {
    RealOperator::diagonal(values.into_iter().collect(), tag)
}

/// `A = L N^{-1/2}` with `N^{-1/2} B_0 = 0`, so `A B_n = √n B_{n-1}`.
pub fn op_a(d: usize) -> Result<RealOperator> {
    let inv_sqrt = real_diag(
        (0..=d).map(|n| if n == 0 { 0.0 } else { 1.0 / (n as f64).sqrt() }),
        BasisTag::Bernoulli,
    );
    op_l(d)?.to_real().compose(&inv_sqrt)
}

/// `A† = N^{1/2} R`, so `A† B_n = √(n+1) B_{n+1}`.
pub fn op_adag(d: usize) -> Result<RealOperator> {
    let sqrt = real_diag((0..=d).map(|n| (n as f64).sqrt()), BasisTag::Bernoulli);
    sqrt.compose(&op_r(d)?.to_real())
}

/// `S^{-1} L S` with `S = diag(1/√n!)`: the normalization that turns the
/// Appell ladder into `A`.
pub fn normalized_l(d: usize) -> Result<RealOperator> {
    let l = op_l(d)?.to_real();
    let mut out = RealOperator::zeros(d + 1, BasisTag::Bernoulli);
    // √(r!/c!)
    for r in 0..=d {
        for c in 0..=d {
            let v = *l.get(r, c);
            if v != 0.0 {
                let (lo, hi) = if r < c { (r, c) } else { (c, r) };
                let ratio: f64 = (lo + 1..=hi).map(|k| k as f64).product::<f64>().sqrt();
                out.set(r, c, if r < c { v / ratio } else { v * ratio });
            }
        }
    }
    Ok(out)
}

/// Multiplication by `x` and `d/dx` on `φ_n = H_n e^{-x²/2}`:
/// `x φ_n = φ_{n+1}/2 + n φ_{n-1}`, `φ_n' = n φ_{n-1} - φ_{n+1}/2`.
fn hermite_fn_position_derivative(d: usize) -> (ExactOperator, ExactOperator) {
    let mut x = ExactOperator::zeros(d + 1, BasisTag::HermiteFn);
    let mut dx = ExactOperator::zeros(d + 1, BasisTag::HermiteFn);
    let half = Rational::new(1.into(), 2.into());
    for n in 0..=d {
        if n < d {
            x.set(n + 1, n, half.clone());
            dx.set(n + 1, n, -half.clone());
        }
        if n > 0 {
            x.set(n - 1, n, int(n as i64));
            dx.set(n - 1, n, int(n as i64));
        }
    }
    (x, dx)
}

/// Rescales an operator on `φ_n` to the orthonormal `ĥ_n = φ_n / c_n`,
/// `c_n² = 2^n n! √π`; entry `(r, c)` picks up `c_r / c_c`.
fn to_orthonormal(m: &ExactOperator) -> RealOperator {
    let real = m.to_real();
    let d = m.dim();
    let mut out = RealOperator::zeros(d, BasisTag::HermiteFn);
    for r in 0..d {
        for c in 0..d {
            let v = *real.get(r, c);
            if v == 0.0 {
                continue;
            }
            let (lo, hi) = if r < c { (r, c) } else { (c, r) };
            // c_hi / c_lo = √(prod_{lo<k<=hi} 2k)
            let ratio = (lo + 1..=hi).map(|k| 2.0 * k as f64).product::<f64>().sqrt();
            out.set(r, c, if r > c { v * ratio } else { v / ratio });
        }
    }
    out
}

/// `a = (x + d/dx)/√2` and `a† = (x - d/dx)/√2` on normalized Hermite
/// functions.
pub fn hermite_ladder(d: usize) -> Result<(RealOperator, RealOperator)> {
    check_dim(d)?;
    let (x, dx) = hermite_fn_position_derivative(d);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let a = to_orthonormal(&x.plus(&dx)?).scaled(&s);
    let adag = to_orthonormal(&x.minus(&dx)?).scaled(&s);
    Ok((a, adag))
}

/// Outcome of the coherent-state and generating-function checks.
#[derive(Clone, Debug, PartialEq)]
pub struct CoherentCheck {
    /// `max |coordinate|` of `(L - y)|y⟩` over degrees `0..T`.
    pub max_defect: Rational,
    /// The single nonzero coordinate left at degree `T` by truncation.
    pub top_defect: Rational,
    /// `e^{tR} B_0` matches `t e^{xt}/(e^t - 1)` through `t^T`.
    pub egf_matches: bool,
}

/// Builds `|y⟩ = sum_{n<=T} y^n R^n B_0 / n!` in Bernoulli coordinates and
/// measures `(L - y)|y⟩` below the top degree.
pub fn coherent_state_check(order: usize, y: &Rational) -> Result<CoherentCheck> {
    if order < 2 {
        return Err(Error::InvalidOrder {
            order: order as u32,
            reason: "coherent-state check needs T >= 2",
        });
    }
    let l = op_l(order)?;
    let r = op_r(order)?;
    let dim = order + 1;

    // R^n e_0 / n! and y^n, accumulated together
    let mut power = vec![Rational::zero(); dim];
    power[0] = Rational::one();
    let mut state = vec![Rational::zero(); dim];
    let mut y_pow = Rational::one();
    let mut fact = Rational::one();
    let basis = bernoulli_basis(order);
    let egf = bernoulli_egf(order);
    let mut egf_matches = true;
    for n in 0..=order {
        if n > 0 {
            power = r.apply(&power)?;
            y_pow = &y_pow * y;
            fact = &fact * int(n as i64);
        }
        let term: Vec<Rational> = power.iter().map(|c| c / &fact).collect();
        egf_matches &= from_coordinates(&term, &basis) == egf.coefficient(n);
        for (s, t) in state.iter_mut().zip(&term) {
            *s += &y_pow * t;
        }
    }

    let lowered = l.apply(&state)?;
    let defect: Vec<Rational> = lowered
        .iter()
        .zip(&state)
        .map(|(a, b)| a - y * b)
        .collect();
    let max_defect = defect[..order]
        .iter()
        .map(num_traits::Signed::abs)
        .max()
        .unwrap_or_else(Rational::zero);
    Ok(CoherentCheck {
        max_defect,
        top_defect: defect[order].clone(),
        egf_matches,
    })
}

/// `e^{tR} B_0` against `t e^{xt}/(e^t - 1)`, coefficient by coefficient
/// through `t^T`. Works for any `T`, including the degenerate `T = 0`.
pub fn generating_function_check(order: usize) -> Result<bool> {
    let d = order.max(1);
    let r = op_r(d)?;
    let basis = bernoulli_basis(d);
    let egf = bernoulli_egf(order);
    let mut power = unit::<Rational>(d + 1, 0);
    let mut fact = Rational::one();
    for n in 0..=order {
        if n > 0 {
            power = r.apply(&power)?;
            fact = &fact * int(n as i64);
        }
        let term: Vec<Rational> = power.iter().map(|c| c / &fact).collect();
        if from_coordinates(&term, &basis) != egf.coefficient(n) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Unit coordinate vector `e_n` of length `dim`.
pub fn unit<T: Zero + One + Clone>(dim: usize, n: usize) -> Vec<T> {
    let mut v = vec![T::zero(); dim];
    v[n] = T::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::rat;

    #[test]
    fn lowering_on_b2() {
        let l = op_l(3).unwrap();
        let b2 = coordinates(&bernoulli_poly(2), &bernoulli_basis(3)).unwrap();
        let b1 = coordinates(&bernoulli_poly(1), &bernoulli_basis(3)).unwrap();
        let want: Vec<Rational> = b1.iter().map(|c| c * int(2)).collect();
        assert_eq!(l.apply(&b2).unwrap(), want);
    }

    #[test]
    fn raising_and_number() {
        let r = op_r(3).unwrap();
        assert_eq!(r.apply(&unit(4, 0)).unwrap(), unit::<Rational>(4, 1));
        assert_eq!(r.apply(&unit(4, 2)).unwrap(), unit::<Rational>(4, 3));
        assert!(r.apply(&unit::<Rational>(4, 3)).unwrap().iter().all(Zero::is_zero));
        let n = op_n(3).unwrap();
        let diag: Vec<Rational> = (0..4).map(|i| n.get(i, i).clone()).collect();
        assert_eq!(diag, vec![int(0), int(1), int(2), int(3)]);
    }

    #[test]
    fn weyl_relation_defect_sits_in_the_corner() {
        for d in 1..=8 {
            let c = commutator(&op_l(d).unwrap(), &op_r(d).unwrap()).unwrap();
            let defect = c.minus(&ExactOperator::identity(d + 1, BasisTag::Bernoulli)).unwrap();
            assert!(defect.block_is_zero(d));
            for r in 0..=d {
                for col in 0..=d {
                    let want = if r == d && col == d { int(-(d as i64) - 1) } else { int(0) };
                    assert_eq!(defect.get(r, col), &want);
                }
            }
        }
    }

    #[test]
    fn grade_relations() {
        let d = 6;
        let (l, r, n) = (op_l(d).unwrap(), op_r(d).unwrap(), op_n(d).unwrap());
        let nl = commutator(&n, &l).unwrap().plus(&l).unwrap();
        assert!(nl.block_is_zero(d + 1));
        let nr = commutator(&n, &r).unwrap().minus(&r).unwrap();
        assert!(nr.block_is_zero(d + 1));
        assert!(commutator(&n, &n).unwrap().block_is_zero(d + 1));
    }

    #[test]
    fn mismatched_operators_do_not_compose() {
        let l = op_l(3).unwrap();
        let h = hermite_derivative(3).unwrap();
        assert!(matches!(l.compose(&h), Err(Error::OperatorMismatch(_))));
        assert!(matches!(l.compose(&op_l(4).unwrap()), Err(Error::OperatorMismatch(_))));
        assert!(op_l(0).is_err());
    }

    #[test]
    fn normalized_actions() {
        let a = op_a(4).unwrap();
        let v = a.apply(&unit(5, 3)).unwrap();
        assert!((v[2] - 3f64.sqrt()).abs() < 1e-14);
        assert!(v.iter().enumerate().all(|(i, x)| i == 2 || *x == 0.0));
        let ad = op_adag(4).unwrap();
        assert_eq!(ad.apply(&unit(5, 0)).unwrap(), unit::<f64>(5, 1));
        let c = commutator(&a, &ad)
            .unwrap()
            .minus(&RealOperator::identity(5, BasisTag::Bernoulli))
            .unwrap();
        assert!(c.max_abs_on_block(4) < 1e-13);
    }

    #[test]
    fn a_is_similarity_normalized_l() {
        let d = 9;
        let diff = op_a(d).unwrap().minus(&normalized_l(d).unwrap()).unwrap();
        assert!(diff.max_abs_on_block(d + 1) < 1e-12);
    }

    #[test]
    fn hermite_function_ladder() {
        let (a, ad) = hermite_ladder(5).unwrap();
        let v = a.apply(&unit(6, 1)).unwrap();
        assert!((v[0] - 1.0).abs() < 1e-13);
        let v = ad.apply(&unit(6, 2)).unwrap();
        assert!((v[3] - 3f64.sqrt()).abs() < 1e-13);
        assert!(v.iter().enumerate().all(|(i, x)| i == 3 || x.abs() < 1e-13));
        let c = commutator(&a, &ad)
            .unwrap()
            .minus(&RealOperator::identity(6, BasisTag::HermiteFn))
            .unwrap();
        assert!(c.max_abs_on_block(5) < 1e-13);
    }

    #[test]
    fn hermite_raising_by_direct_differentiation() {
        // (x - d/dx)(H_2 e^{-x²/2}) = (2x H_2 - H_2') e^{-x²/2} = H_3 e^{-x²/2};
        // normalized: a† ĥ_2 = (1/√2)(c_3/c_2) ĥ_3 = √3 ĥ_3
        let h2 = hermite_poly(2);
        let raised = &(&Polynomial::x() * &h2).scale(&int(2)) - &h2.derivative();
        assert_eq!(raised, hermite_poly(3));
    }

    #[test]
    fn coherent_states() {
        let c = coherent_state_check(6, &rat(1, 2)).unwrap();
        assert!(c.max_defect.is_zero());
        assert!(c.egf_matches);
        // (L - y)|y⟩ = -y^{T+1}/T! e_T
        assert_eq!(c.top_defect, -rat(1, 128) / int(720));
        let c = coherent_state_check(2, &int(0)).unwrap();
        assert!(c.max_defect.is_zero() && c.top_defect.is_zero());
        assert!(coherent_state_check(1, &int(1)).is_err());
    }

    #[test]
    fn generating_function_for_small_orders() {
        for t in 0..=6 {
            assert!(generating_function_check(t).unwrap());
        }
    }
}
