//! Principal-value quadrature on `[0, 1]` against `csc(2πx)`, `cot(πx)` and
//! their blend `w_φ = cos φ csc(2πx) + sin φ cot(πx)`.
//!
//! Trapezoid: nodes `i/N`. Singular nodes get weight zero and the sum picks
//! up `h·res(c)·f'(c)` per singular node `c` (half of it at each endpoint),
//! which is the exact correction for a simple pole sitting on a node.
//! Midpoint: nodes `(i+1/2)/N` straddle every singular point symmetrically,
//! so no correction is needed.

use std::f64::consts::FRAC_1_PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{sin_cos_turns, CompensatedSum};

/// Step used for finite-difference derivatives at singular nodes; a power
/// of two so that `c ± kδ` and `1 - kδ` are exact mirror images.
const FD_STEP: f64 = 1.0 / 65536.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightKind {
    Alt,
    Sym,
    Rotated,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightSpec {
    pub kind: WeightKind,
    /// Blend angle in radians; only meaningful for [`WeightKind::Rotated`].
    pub phi: f64,
    pub singular_points: Vec<f64>,
}

impl WeightSpec {
    /// `csc(2πx)`
    pub fn alt() -> Self {
        Self {
            kind: WeightKind::Alt,
            phi: 0.0,
            singular_points: vec![0.0, 0.5, 1.0],
        }
    }

    /// `cot(πx)`
    pub fn sym() -> Self {
        Self {
            kind: WeightKind::Sym,
            phi: 0.0,
            singular_points: vec![0.0, 1.0],
        }
    }

    pub fn rotated(phi: f64) -> Self {
        Self {
            kind: WeightKind::Rotated,
            phi,
            singular_points: vec![0.0, 0.5, 1.0],
        }
    }

    /// `(cos-part, sin-part)` coefficients on `(csc, cot)`.
    fn blend(&self) -> (f64, f64) {
        match self.kind {
            WeightKind::Alt => (1.0, 0.0),
            WeightKind::Sym => (0.0, 1.0),
            WeightKind::Rotated => (self.phi.cos(), self.phi.sin()),
        }
    }

    fn has_midpoint_pole(&self) -> bool {
        self.kind != WeightKind::Sym
    }

    pub fn is_singular(&self, x: f64) -> bool {
        self.singular_points.contains(&x)
    }

    /// Residue of the weight at a singular point (`w(x) ~ res/(x-c)`).
    pub fn residue(&self, c: f64) -> Result<f64> {
        let (ca, cs) = self.blend();
        let (alt, sym) = if c == 0.0 || c == 1.0 {
            (0.5 * FRAC_1_PI, FRAC_1_PI)
        } else if c == 0.5 && self.has_midpoint_pole() {
            (-0.5 * FRAC_1_PI, 0.0)
        } else {
            return Err(Error::InvalidArgument(format!("{c} is not a singular point")));
        };
        Ok(ca * alt + cs * sym)
    }
}

/// Value of the weight at a non-singular `x`.
pub fn weight_eval(w: &WeightSpec, x: f64) -> Result<f64> {
    if w.is_singular(x) || !(x > 0.0 && x < 1.0) {
        return Err(Error::SingularPoint(x));
    }
    let (ca, cs) = w.blend();
    Ok(blended(ca, cs, x))
}

fn blended(ca: f64, cs: f64, x: f64) -> f64 {
    let (sin2, _) = sin_cos_turns(x);
    let (sin1, cos1) = sin_cos_turns(0.5 * x);
    let mut v = 0.0;
    if ca != 0.0 {
        v += ca / sin2;
    }
    if cs != 0.0 {
        v += cs * cos1 / sin1;
    }
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    Trapezoid,
    Midpoint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub rule: Rule,
    pub nodes_n: usize,
}

impl QuadratureConfig {
    pub fn trapezoid(nodes_n: usize) -> Result<Self> {
        Self {
            rule: Rule::Trapezoid,
            nodes_n,
        }
        .validated()
    }

    pub fn midpoint(nodes_n: usize) -> Result<Self> {
        Self {
            rule: Rule::Midpoint,
            nodes_n,
        }
        .validated()
    }

    /// Both rules need even `N`: the trapezoid so that `1/2` is a node, the
    /// midpoint rule so that it is not.
    pub fn validated(self) -> Result<Self> {
        if self.nodes_n == 0 || self.nodes_n % 2 == 1 {
            return Err(Error::OddNodeCount(self.nodes_n));
        }
        Ok(self)
    }

    pub fn with_nodes(self, nodes_n: usize) -> Result<Self> {
        Self { nodes_n, ..self }.validated()
    }
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rule: Rule::Trapezoid,
            nodes_n: 200,
        }
    }
}

/// Weights at the nodes, built for the lower half and mirrored so that
/// `w(x_{mirror}) = -w(x)` holds bit for bit. Singular nodes hold 0.
fn node_weights(w: &WeightSpec, cfg: &QuadratureConfig) -> Vec<f64> {
    let n = cfg.nodes_n;
    let (ca, cs) = w.blend();
    let eval = |x: f64| blended(ca, cs, x);
    match cfg.rule {
        Rule::Trapezoid => {
            let mut out = vec![0.0; n + 1];
            for i in 1..n / 2 {
                let v = eval(i as f64 / n as f64);
                out[i] = v;
                out[n - i] = -v;
            }
            out
        }
        Rule::Midpoint => {
            let mut out = vec![0.0; n];
            for i in 0..n / 2 {
                let v = eval((i as f64 + 0.5) / n as f64);
                out[i] = v;
                out[n - 1 - i] = -v;
            }
            out
        }
    }
}

fn nodes(cfg: &QuadratureConfig) -> Vec<f64> {
    let n = cfg.nodes_n as f64;
    match cfg.rule {
        Rule::Trapezoid => (0..=cfg.nodes_n).map(|i| i as f64 / n).collect(),
        Rule::Midpoint => (0..cfg.nodes_n).map(|i| (i as f64 + 0.5) / n).collect(),
    }
}

/// Singular trapezoid node indices with their quadrature weight `h` or `h/2`.
fn singular_nodes(w: &WeightSpec, n: usize) -> Vec<(usize, f64)> {
    let h = 1.0 / n as f64;
    let mut out = vec![(0, 0.5 * h)];
    if w.has_midpoint_pole() {
        out.push((n / 2, h));
    }
    out.push((n, 0.5 * h));
    out
}

/// Sums `f_i w_i` over the nodes, pairing `i` with its mirror first.
fn mirrored_sum(values: &[f64], weights: &[f64]) -> f64 {
    let len = values.len();
    let mut acc = CompensatedSum::default();
    for i in 0..len / 2 {
        let j = len - 1 - i;
        acc.add(values[i] * weights[i] + values[j] * weights[j]);
    }
    if len % 2 == 1 {
        let m = len / 2;
        acc.add(values[m] * weights[m]);
    }
    acc.value()
}

fn integrate<F, D>(f: &F, derivative: D, w: &WeightSpec, cfg: &QuadratureConfig) -> Result<f64>
where
    F: Fn(f64) -> f64 + Sync,
    D: Fn(f64) -> f64,
{
    cfg.validated()?;
    let n = cfg.nodes_n;
    let xs = nodes(cfg);
    let weights = node_weights(w, cfg);
    let skip: Vec<usize> = match cfg.rule {
        Rule::Trapezoid => singular_nodes(w, n).iter().map(|&(i, _)| i).collect(),
        Rule::Midpoint => Vec::new(),
    };
    let values: Vec<f64> = xs
        .par_iter()
        .enumerate()
        .map(|(i, &x)| if skip.contains(&i) { 0.0 } else { f(x) })
        .collect();
    if let Some((i, _)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
        return Err(Error::OffSetSingularity(xs[i]));
    }
    let mut total = mirrored_sum(&values, &weights) / n as f64;
    if cfg.rule == Rule::Midpoint {
        return Ok(total);
    }
    let mut correction = 0.0;
    for (i, h) in singular_nodes(w, n) {
        let res = w.residue(xs[i])?;
        if res != 0.0 {
            let d = derivative(xs[i]);
            if !d.is_finite() {
                return Err(Error::OffSetSingularity(xs[i]));
            }
            correction += h * res * d;
        }
    }
    total += correction;
    Ok(total)
}

/// Fourth-order finite-difference derivative that only samples inside
/// `(0, 1)`; one-sided at the endpoints.
pub fn fd_derivative<F: Fn(f64) -> f64>(f: &F, x: f64) -> f64 {
    let d = FD_STEP;
    const ONE_SIDED: [f64; 4] = [-13.0 / 3.0, 19.0 / 2.0, -7.0, 11.0 / 6.0];
    if x <= 0.0 {
        ONE_SIDED
            .iter()
            .enumerate()
            .map(|(k, c)| c * f((k + 1) as f64 * d))
            .sum::<f64>()
            / d
    } else if x >= 1.0 {
        -ONE_SIDED
            .iter()
            .enumerate()
            .map(|(k, c)| c * f(1.0 - (k + 1) as f64 * d))
            .sum::<f64>()
            / d
    } else {
        (8.0 * (f(x + d) - f(x - d)) - (f(x + 2.0 * d) - f(x - 2.0 * d))) / (12.0 * d)
    }
}

/// Principal-value integral of `f·w` over `[0, 1]`.
///
/// `f` is evaluated concurrently at the nodes; the sum itself is sequential
/// and deterministic. For the trapezoid rule the pole correction uses
/// [`fd_derivative`].
pub fn pv_integrate<F>(f: F, w: &WeightSpec, cfg: &QuadratureConfig) -> Result<f64>
where
    F: Fn(f64) -> f64 + Sync,
{
    integrate(&f, |x| fd_derivative(&f, x), w, cfg)
}

/// As [`pv_integrate`], with an analytic derivative for the pole correction.
pub fn pv_integrate_with_derivative<F, D>(
    f: F,
    df: D,
    w: &WeightSpec,
    cfg: &QuadratureConfig,
) -> Result<f64>
where
    F: Fn(f64) -> f64 + Sync,
    D: Fn(f64) -> f64,
{
    integrate(&f, df, w, cfg)
}

/// `h sum |g(x_i) w(x_i)|` over the retained nodes; bounds how a pointwise
/// error in `g` propagates through [`pv_integrate`].
pub fn abs_weighted_sum<G>(g: G, w: &WeightSpec, cfg: &QuadratureConfig) -> Result<f64>
where
    G: Fn(f64) -> f64 + Sync,
{
    cfg.validated()?;
    let xs = nodes(cfg);
    let weights = node_weights(w, cfg);
    let terms: Vec<f64> = xs
        .par_iter()
        .zip(&weights)
        .map(|(&x, &wi)| if wi == 0.0 { 0.0 } else { (g(x) * wi).abs() })
        .collect();
    let mut acc = CompensatedSum::default();
    for t in terms {
        acc.add(t);
    }
    Ok(acc.value() / cfg.nodes_n as f64)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbePoint {
    pub nodes_n: usize,
    pub value: f64,
    /// `|value(next N) - value|`; `None` for the last entry.
    pub delta_to_next: Option<f64>,
}

pub fn convergence_probe<F>(
    f: F,
    w: &WeightSpec,
    rule: Rule,
    node_counts: &[usize],
) -> Result<Vec<ProbePoint>>
where
    F: Fn(f64) -> f64 + Sync,
{
    if node_counts.windows(2).any(|p| p[0] >= p[1]) {
        return Err(Error::InvalidArgument("node counts must increase".into()));
    }
    let values = node_counts
        .iter()
        .map(|&n| {
            let cfg = QuadratureConfig { rule, nodes_n: n }.validated()?;
            pv_integrate(&f, w, &cfg)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(node_counts
        .iter()
        .enumerate()
        .map(|(i, &n)| ProbePoint {
            nodes_n: n,
            value: values[i],
            delta_to_next: values.get(i + 1).map(|next| (next - values[i]).abs()),
        })
        .collect())
}

/// `sin(2π x)`
pub fn sin_turns(x: f64) -> f64 {
    sin_cos_turns(x).0
}
