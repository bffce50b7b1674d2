//! Weighted pairings between the Hurwitz basis and the Clausen-type bases,
//! their exact constants, and per-cell comparison reports.
//!
//! Each cell is integrated at `N` and `hi_factor·N` nodes. The value at the
//! higher resolution is compared against a reference: the tabulated target
//! when there is one, otherwise the closed form.

mod constants;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use constants::{
    closed_form_alt, closed_form_sym, format_rational, numerical_alt, numerical_sym,
};

use crate::error::{Error, Result};
use crate::exactcore::{to_f64, Rational};
use crate::quadrature::{
    abs_weighted_sum, pv_integrate_with_derivative, QuadratureConfig, WeightSpec,
};
use crate::specfun::{
    clausen_a, clausen_a_derivative, clausen_c, clausen_c_derivative, ClausenVariant,
    HurwitzBasis, Truncation,
};

/// `|value_hi - reference|` at or below this is a match.
pub const MATCH_TOLERANCE: f64 = 1e-6;
/// `|value(N) - value(hi N)|` above this is unconverged.
pub const CONVERGENCE_TOLERANCE: f64 = 1e-4;
/// Series truncation used for basis values at quadrature nodes.
pub const PAIRING_SERIES_K: usize = 10_000;
/// Cells whose integrand is odd about `x = 1/2` must come out below this.
pub const PARITY_ZERO_TOLERANCE: f64 = 1e-12;

const CROSS_WEIGHT_NOTE: &str =
    "weight for cross pairings is assumed: each basis family keeps its own branch weight";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    Alt,
    Sym,
    CrossAlt,
    CrossSym,
    Rotated,
}

impl Branch {
    pub fn label(self) -> &'static str {
        match self {
            Branch::Alt => "alt",
            Branch::Sym => "sym",
            Branch::CrossAlt => "cross-alt",
            Branch::CrossSym => "cross-sym",
            Branch::Rotated => "rotated",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Which pair of basis families is integrated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `B_{2m} · A_{2n+1}`
    EvenA,
    /// `B_{2m+1} · C_{2n}`
    OddC,
    /// `B_{2m} · C_{2n}`
    EvenC,
    /// `B_{2m+1} · A_{2n+1}`
    OddA,
}

impl Family {
    fn uses_a(self) -> bool {
        matches!(self, Family::EvenA | Family::OddA)
    }

    fn hurwitz_order(self, m: u32) -> u32 {
        match self {
            Family::EvenA | Family::EvenC => 2 * m,
            Family::OddC | Family::OddA => 2 * m + 1,
        }
    }
}

/// Which kind of cross pairing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CrossKind {
    /// `⟨B_{2m}, C_{2n}⟩` under `cot(πx)`
    EvenWithC,
    /// `⟨B_{2m+1}, A_{2n+1}⟩` under `csc(2πx)`
    OddWithA,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Match,
    ConvergedMismatch,
    Unconverged,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Match => "match",
            Verdict::ConvergedMismatch => "converged-mismatch",
            Verdict::Unconverged => "unconverged",
        }
    }

    pub fn classify(delta: f64, value_hi: f64, reference: f64) -> Self {
        if !(delta <= CONVERGENCE_TOLERANCE) {
            Verdict::Unconverged
        } else if (value_hi - reference).abs() <= MATCH_TOLERANCE {
            Verdict::Match
        } else {
            Verdict::ConvergedMismatch
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// One evaluated pairing cell.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairingReport {
    pub branch: Branch,
    /// Blend angle, rotated cells only.
    pub phi: Option<f64>,
    pub m: u32,
    pub n: u32,
    /// Reading of `A_{2n+1}`; `None` when the cell uses `C_{2n}`.
    pub a_variant: Option<ClausenVariant>,
    pub nodes_n: usize,
    pub nodes_n_hi: usize,
    pub series_k: usize,
    pub quadrature_value: f64,
    pub quadrature_value_hi: f64,
    pub convergence_delta: f64,
    /// Propagated series truncation bound for the high-resolution value.
    pub series_tail_bound: f64,
    pub closed_form: Option<f64>,
    pub closed_form_exact: Option<String>,
    /// Tabulated value the cell is expected to reproduce, if any.
    pub target: Option<f64>,
    pub reference: f64,
    pub reference_diff: f64,
    /// The integrand is odd about `x = 1/2`, so the value is forced to 0.
    pub parity_forced: bool,
    pub verdict: Verdict,
    pub note: Option<String>,
}

/// A cell that could not be evaluated.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellFailure {
    pub branch: Branch,
    pub m: u32,
    pub n: u32,
    pub a_variant: Option<ClausenVariant>,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairingOptions {
    pub quadrature: QuadratureConfig,
    pub hi_factor: usize,
    pub trunc: Truncation,
    pub variants: Vec<ClausenVariant>,
    pub phis: Vec<f64>,
    /// Cells cover `(m, n) ∈ {1..=max_degree}²`.
    pub max_degree: u32,
}

impl Default for PairingOptions {
    fn default() -> Self {
        Self {
            quadrature: QuadratureConfig::default(),
            hi_factor: 10,
            trunc: Truncation(PAIRING_SERIES_K),
            variants: ClausenVariant::ALL.to_vec(),
            phis: Vec::new(),
            max_degree: 2,
        }
    }
}

impl PairingOptions {
    fn hi_config(&self) -> Result<QuadratureConfig> {
        self.quadrature.with_nodes(self.quadrature.nodes_n * self.hi_factor)
    }
}

/// `B_k(x)` times one of the Clausen-type bases.
struct Integrand {
    hurwitz: HurwitzBasis,
    family: Family,
    partner_order: u32,
    variant: ClausenVariant,
    trunc: Truncation,
}

impl Integrand {
    fn new(family: Family, m: u32, n: u32, variant: Option<ClausenVariant>, trunc: Truncation) -> Self {
        let partner_order = if family.uses_a() { 2 * n + 1 } else { 2 * n };
        Self {
            hurwitz: HurwitzBasis::new(family.hurwitz_order(m)),
            family,
            partner_order,
            variant: variant.unwrap_or(ClausenVariant::Standard),
            trunc,
        }
    }

    fn partner(&self, x: f64) -> Result<(f64, f64)> {
        let e = if self.family.uses_a() {
            clausen_a(self.partner_order, x, self.trunc, self.variant)?
        } else {
            clausen_c(self.partner_order, x, self.trunc)?
        };
        Ok((e.value, e.tail_bound()))
    }

    fn partner_derivative(&self, x: f64) -> Result<f64> {
        if self.family.uses_a() {
            clausen_a_derivative(self.partner_order, x, self.trunc, self.variant)
        } else {
            clausen_c_derivative(self.partner_order, x, self.trunc)
        }
    }

    fn value(&self, x: f64) -> f64 {
        match self.partner(x) {
            Ok((v, _)) => self.hurwitz.eval(x) * v,
            Err(_) => f64::NAN,
        }
    }

    fn derivative(&self, x: f64) -> f64 {
        match (self.partner(x), self.partner_derivative(x)) {
            (Ok((v, _)), Ok(dv)) => self.hurwitz.derivative(x) * v + self.hurwitz.eval(x) * dv,
            _ => f64::NAN,
        }
    }

    /// Parity of `B_k(1-x) · partner(1-x)` relative to `x`: `true` if even.
    /// Every weight in use is odd about `1/2`.
    fn product_is_even(&self) -> bool {
        let hurwitz_even = self.hurwitz.order() % 2 == 0;
        let partner_even = !self.family.uses_a() || self.variant == ClausenVariant::Literal;
        hurwitz_even == partner_even
    }

    /// Largest series tail bound over `[0, 1]` (the rounding allowance grows
    /// with `x`).
    fn tail_bound(&self) -> Result<f64> {
        Ok(self.partner(1.0)?.1)
    }

    fn integrate(&self, weight: &WeightSpec, cfg: &QuadratureConfig) -> Result<f64> {
        pv_integrate_with_derivative(|x| self.value(x), |x| self.derivative(x), weight, cfg)
    }
}

#[derive(Clone, Debug)]
struct Cell {
    branch: Branch,
    family: Family,
    weight: WeightSpec,
    phi: Option<f64>,
    m: u32,
    n: u32,
    variant: Option<ClausenVariant>,
}

impl Cell {
    fn new(branch: Branch, family: Family, m: u32, n: u32, variant: Option<ClausenVariant>) -> Self {
        let weight = match branch {
            Branch::Alt | Branch::CrossAlt => WeightSpec::alt(),
            Branch::Sym | Branch::CrossSym => WeightSpec::sym(),
            Branch::Rotated => unreachable!("rotated cells carry an angle"),
        };
        Self {
            branch,
            family,
            weight,
            phi: None,
            m,
            n,
            variant: if family.uses_a() { variant } else { None },
        }
    }

    fn rotated(phi: f64, family: Family, m: u32, n: u32, variant: Option<ClausenVariant>) -> Self {
        Self {
            branch: Branch::Rotated,
            family,
            weight: WeightSpec::rotated(phi),
            phi: Some(phi),
            m,
            n,
            variant: if family.uses_a() { variant } else { None },
        }
    }

    /// Exact closed form when it is rational, and its floating value.
    fn closed_form(&self) -> Result<(Option<Rational>, f64)> {
        let diagonal = self.m == self.n;
        let zero = Rational::from_integer(0.into());
        Ok(match self.branch {
            Branch::Alt => {
                let r = if diagonal { closed_form_alt(self.m)? } else { zero };
                let f = to_f64(&r);
                (Some(r), f)
            }
            Branch::Sym => {
                let r = if diagonal { closed_form_sym(self.m)? } else { zero };
                let f = to_f64(&r);
                (Some(r), f)
            }
            Branch::CrossAlt | Branch::CrossSym => (Some(zero), 0.0),
            Branch::Rotated => {
                let phi = self.phi.unwrap_or(0.0);
                let v = match (diagonal, self.family) {
                    (false, _) => 0.0,
                    (true, Family::EvenA) => phi.cos() * to_f64(&closed_form_alt(self.m)?),
                    (true, Family::OddC) => phi.sin() * to_f64(&closed_form_sym(self.m)?),
                    (true, _) => 0.0,
                };
                (None, v)
            }
        })
    }

    fn target(&self) -> Option<f64> {
        let small = self.m <= 2 && self.n <= 2;
        match self.branch {
            Branch::Alt if small => Some(match (self.m, self.n) {
                (1, 1) => 0.0625,
                (2, 2) => 0.078125,
                _ => 0.0,
            }),
            Branch::Sym if small => Some(match (self.m, self.n) {
                (1, 1) => 0.0666666667,
                (2, 2) => 0.1269841270,
                _ => 0.0,
            }),
            Branch::CrossAlt | Branch::CrossSym => Some(0.0),
            _ => None,
        }
    }

    fn evaluate(&self, opts: &PairingOptions) -> Result<PairingReport> {
        let integrand = Integrand::new(self.family, self.m, self.n, self.variant, opts.trunc);
        let lo_cfg = opts.quadrature.validated()?;
        let hi_cfg = opts.hi_config()?;
        let lo = integrand.integrate(&self.weight, &lo_cfg)?;
        let hi = integrand.integrate(&self.weight, &hi_cfg)?;
        let spread = abs_weighted_sum(|x| integrand.hurwitz.eval(x), &self.weight, &hi_cfg)?;
        let series_tail_bound = integrand.tail_bound()? * spread;
        let (exact, closed) = self.closed_form()?;
        let target = self.target();
        let reference = target.unwrap_or(closed);
        let delta = (lo - hi).abs();
        let note = matches!(self.branch, Branch::CrossAlt | Branch::CrossSym)
            .then(|| CROSS_WEIGHT_NOTE.to_string());
        Ok(PairingReport {
            branch: self.branch,
            phi: self.phi,
            m: self.m,
            n: self.n,
            a_variant: self.variant,
            nodes_n: lo_cfg.nodes_n,
            nodes_n_hi: hi_cfg.nodes_n,
            series_k: opts.trunc.k(),
            quadrature_value: lo,
            quadrature_value_hi: hi,
            convergence_delta: delta,
            series_tail_bound,
            closed_form: Some(closed),
            closed_form_exact: exact.as_ref().map(format_rational),
            target,
            reference,
            reference_diff: (hi - reference).abs(),
            parity_forced: integrand.product_is_even(),
            verdict: Verdict::classify(delta, hi, reference),
            note,
        })
    }

    fn failure(&self, err: Error) -> CellFailure {
        CellFailure {
            branch: self.branch,
            m: self.m,
            n: self.n,
            a_variant: self.variant,
            message: err.to_string(),
        }
    }
}

fn check_degrees(m: u32, n: u32) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument("degrees m, n must be >= 1".into()));
    }
    Ok(())
}

fn single(cell: Cell, opts: &PairingOptions) -> Result<PairingReport> {
    check_degrees(cell.m, cell.n)?;
    cell.evaluate(opts)
}

/// `∫ B_{2m} A_{2n+1} csc(2πx) dx`
pub fn pair_alt(m: u32, n: u32, variant: ClausenVariant, opts: &PairingOptions) -> Result<PairingReport> {
    single(Cell::new(Branch::Alt, Family::EvenA, m, n, Some(variant)), opts)
}

/// `PV ∫ B_{2m+1} C_{2n} cot(πx) dx`
pub fn pair_sym(m: u32, n: u32, opts: &PairingOptions) -> Result<PairingReport> {
    single(Cell::new(Branch::Sym, Family::OddC, m, n, None), opts)
}

/// Cross-branch pairings; `variant` is ignored for [`CrossKind::EvenWithC`].
pub fn pair_cross(
    kind: CrossKind,
    m: u32,
    n: u32,
    variant: ClausenVariant,
    opts: &PairingOptions,
) -> Result<PairingReport> {
    let cell = match kind {
        CrossKind::EvenWithC => Cell::new(Branch::CrossSym, Family::EvenC, m, n, None),
        CrossKind::OddWithA => Cell::new(Branch::CrossAlt, Family::OddA, m, n, Some(variant)),
    };
    single(cell, opts)
}

/// Pairing under `w_φ`; `family` must be [`Family::EvenA`] or [`Family::OddC`].
pub fn pair_rotated(
    phi: f64,
    family: Family,
    m: u32,
    n: u32,
    variant: ClausenVariant,
    opts: &PairingOptions,
) -> Result<PairingReport> {
    if !matches!(family, Family::EvenA | Family::OddC) {
        return Err(Error::InvalidArgument(
            "rotated pairings take the even-A or odd-C family".into(),
        ));
    }
    single(Cell::rotated(phi, family, m, n, Some(variant)), opts)
}

/// Every cell with its evaluation outcome.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FullReport {
    pub reports: Vec<PairingReport>,
    pub failures: Vec<CellFailure>,
}

fn all_cells(opts: &PairingOptions) -> Vec<Cell> {
    let deg = 1..=opts.max_degree;
    let mut cells = Vec::new();
    let pairs: Vec<(u32, u32)> = deg.clone().flat_map(|m| deg.clone().map(move |n| (m, n))).collect();
    for &(m, n) in &pairs {
        for &v in &opts.variants {
            cells.push(Cell::new(Branch::Alt, Family::EvenA, m, n, Some(v)));
        }
    }
    for &(m, n) in &pairs {
        cells.push(Cell::new(Branch::Sym, Family::OddC, m, n, None));
    }
    for &(m, n) in &pairs {
        for &v in &opts.variants {
            cells.push(Cell::new(Branch::CrossAlt, Family::OddA, m, n, Some(v)));
        }
    }
    for &(m, n) in &pairs {
        cells.push(Cell::new(Branch::CrossSym, Family::EvenC, m, n, None));
    }
    for &phi in &opts.phis {
        for &(m, n) in &pairs {
            for &v in &opts.variants {
                cells.push(Cell::rotated(phi, Family::EvenA, m, n, Some(v)));
            }
            cells.push(Cell::rotated(phi, Family::OddC, m, n, None));
        }
    }
    cells
}

/// Evaluates all cells concurrently; output order is fixed by
/// (branch, m, n, variant) and does not depend on scheduling.
pub fn full_report(opts: &PairingOptions) -> FullReport {
    let outcomes: Vec<(Cell, Result<PairingReport>)> = all_cells(opts)
        .into_par_iter()
        .map(|c| {
            let r = c.evaluate(opts);
            (c, r)
        })
        .collect();
    let mut out = FullReport::default();
    for (cell, outcome) in outcomes {
        match outcome {
            Ok(r) => out.reports.push(r),
            Err(e) => out.failures.push(cell.failure(e)),
        }
    }
    out
}

/// Outcome of one internal consistency check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// `(rotated, alt, sym, relative defect)` for one integrand.
pub fn rotated_linearity(
    phi: f64,
    family: Family,
    m: u32,
    n: u32,
    variant: ClausenVariant,
    opts: &PairingOptions,
) -> Result<(f64, f64, f64, f64)> {
    check_degrees(m, n)?;
    let integrand = Integrand::new(family, m, n, Some(variant), opts.trunc);
    let cfg = opts.quadrature.validated()?;
    let rot = integrand.integrate(&WeightSpec::rotated(phi), &cfg)?;
    let alt = integrand.integrate(&WeightSpec::alt(), &cfg)?;
    let sym = integrand.integrate(&WeightSpec::sym(), &cfg)?;
    let lin = phi.cos() * alt + phi.sin() * sym;
    let scale = lin.abs().max(f64::MIN_POSITIVE);
    Ok((rot, alt, sym, (rot - lin).abs() / scale))
}

/// Exact/floating agreement of the constants, parity-forced zeros in
/// `reports`, and weight linearity of the rotated pairing.
pub fn invariant_checks(reports: &[PairingReport], opts: &PairingOptions) -> Vec<InvariantCheck> {
    let mut checks = Vec::new();
    let full = Truncation::default();
    for m in 1..=4 {
        let routes = (|| -> Result<(f64, f64)> {
            let alt = (to_f64(&closed_form_alt(m)?) - numerical_alt(m, full)?).abs();
            let sym = (to_f64(&closed_form_sym(m)?) - numerical_sym(m, full)?).abs();
            Ok((alt, sym))
        })();
        let (passed, detail) = match routes {
            Ok((a, s)) => (a <= 1e-11 && s <= 1e-11, format!("alt diff {a:.3e}, sym diff {s:.3e}")),
            Err(e) => (false, e.to_string()),
        };
        checks.push(InvariantCheck {
            name: format!("closed forms m={m} agree with floating routes"),
            passed,
            detail,
        });
    }

    let forced: Vec<&PairingReport> = reports.iter().filter(|r| r.parity_forced).collect();
    let worst = forced
        .iter()
        .map(|r| r.quadrature_value.abs().max(r.quadrature_value_hi.abs()))
        .fold(0.0, f64::max);
    checks.push(InvariantCheck {
        name: "parity-forced cells vanish".into(),
        passed: worst <= PARITY_ZERO_TOLERANCE,
        detail: format!("{} cells, max |value| {worst:.3e}", forced.len()),
    });

    for phi in [0.0, FRAC_PI_6, FRAC_PI_4, FRAC_PI_2] {
        for family in [Family::EvenA, Family::OddC] {
            let (passed, detail) =
                match rotated_linearity(phi, family, 1, 1, ClausenVariant::Standard, opts) {
                    Ok((_, _, _, rel)) => (rel <= 1e-13, format!("relative defect {rel:.3e}")),
                    Err(e) => (false, e.to_string()),
                };
            let fam = if family == Family::EvenA { "even-A" } else { "odd-C" };
            checks.push(InvariantCheck {
                name: format!("rotated linearity phi={phi:.6} {fam}"),
                passed,
                detail,
            });
        }
    }
    checks
}
