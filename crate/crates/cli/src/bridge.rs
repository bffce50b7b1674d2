use anyhow::Result;
use dualbasis::exactcore::{bernoulli_poly, from_f64, to_f64};
use dualbasis::selector::{lerch_selector_identity, Parity};
use dualbasis::specfun::{bernoulli_fourier, bernoulli_from_bridge, lerch_phi, poisson_lerch_bridge, zeta, Complex, Truncation};
use serde::Serialize;

use crate::render::{fixed, sci, status, Section, Table};

const IDENTITY_TOL: f64 = 1e-6;
const SPOT_X: [f64; 4] = [0.1, 0.25, 0.5, 0.8];
const FOURIER_X: [f64; 5] = [0.1, 0.25, 0.37, 0.5, 0.8];
const PAIRS: [(u32, i64); 4] = [(2, 1), (2, 3), (4, 1), (4, 3)];

pub struct BridgeArgs {
    pub s: u32,
    pub series_k: usize,
    pub bilateral_l: u64,
}

#[derive(Serialize)]
struct ZetaRow {
    lerch: f64,
    zeta: f64,
    diff: f64,
    bound: f64,
    ok: bool,
}

#[derive(Serialize)]
struct SpotRow {
    x: f64,
    re: f64,
    im: f64,
    tail_bound: f64,
}

#[derive(Serialize)]
struct FourierRow {
    x: f64,
    fourier: f64,
    from_bridge: f64,
    exact: f64,
    error: f64,
    tail_bound: f64,
    ok: bool,
}

#[derive(Serialize)]
struct IdentityRow {
    j: u32,
    k: i64,
    parity: Parity,
    lhs: Option<f64>,
    lhs_imag: Option<f64>,
    rhs: Option<f64>,
    diff: Option<f64>,
    error: Option<String>,
    ok: bool,
}

#[derive(Serialize)]
struct BridgeJson {
    s: u32,
    series_k: usize,
    bilateral_l: u64,
    zeta: ZetaRow,
    spot: Vec<SpotRow>,
    fourier: Vec<FourierRow>,
    identities: Vec<IdentityRow>,
}

fn opt(x: Option<f64>, f: fn(f64) -> String) -> String {
    x.map_or_else(|| "-".into(), f)
}

fn f10(x: f64) -> String {
    fixed(x, 10)
}

pub fn run(args: &BridgeArgs) -> Result<Section> {
    let trunc = Truncation(args.series_k);
    let s = args.s;

    let phi = lerch_phi(Complex::new(1.0, 0.0), s as f64, 1.0, trunc)?;
    let z = zeta(s as f64, trunc)?;
    let diff = (phi.value.re - z.value).abs() + phi.value.im.abs();
    let bound = phi.tail_bound() + z.tail_bound();
    let zeta_row = ZetaRow { lerch: phi.value.re, zeta: z.value, diff, bound, ok: diff <= bound.max(IDENTITY_TOL) };

    let spot = SPOT_X
        .iter()
        .map(|&x| {
            let b = poisson_lerch_bridge(s, x, trunc)?;
            Ok(SpotRow { x, re: b.value.re, im: b.value.im, tail_bound: b.tail_bound() })
        })
        .collect::<Result<Vec<_>>>()?;

    let poly = bernoulli_poly(s);
    let fourier = FOURIER_X
        .iter()
        .map(|&x| {
            let f = bernoulli_fourier(s, x, trunc)?;
            let via = bernoulli_from_bridge(s, x, trunc)?;
            let exact = to_f64(&poly.eval(&from_f64(x).expect("finite x")));
            let error = (f.value - exact).abs().max((via.value - exact).abs());
            let tail_bound = f.tail_bound().max(via.tail_bound());
            Ok(FourierRow { x, fourier: f.value, from_bridge: via.value, exact, error, tail_bound, ok: error <= tail_bound })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut identities = Vec::new();
    for (j, k) in PAIRS {
        for parity in [Parity::Sin, Parity::Cos] {
            let row = match lerch_selector_identity(j, k, s, 1.0, parity, args.bilateral_l, trunc) {
                Ok(id) => IdentityRow {
                    j,
                    k,
                    parity,
                    lhs: Some(id.lhs),
                    lhs_imag: Some(id.lhs_imag),
                    rhs: Some(id.rhs),
                    diff: Some(id.diff),
                    error: None,
                    ok: id.diff <= IDENTITY_TOL,
                },
                Err(e) => IdentityRow {
                    j,
                    k,
                    parity,
                    lhs: None,
                    lhs_imag: None,
                    rhs: None,
                    diff: None,
                    error: Some(e.to_string()),
                    ok: false,
                },
            };
            identities.push(row);
        }
    }

    let ok = zeta_row.ok && fourier.iter().all(|r| r.ok) && identities.iter().all(|r| r.ok);

    let mut t_zeta = Table::new(format!("Φ(1, {s}, 1) against ζ({s})"), &["Φ(1,s,1)", "ζ(s)", "diff", "bound", "status"]);
    t_zeta.push(vec![f10(zeta_row.lerch), f10(zeta_row.zeta), sci(diff), sci(bound), status(zeta_row.ok)]);

    let mut t_spot = Table::new(
        format!("Bridge π^-s Γ(s) Φ(e^(2πix), s, 1), s = {s}"),
        &["x", "re", "im", "tail bound"],
    );
    for r in &spot {
        t_spot.push(vec![fixed(r.x, 2), f10(r.re), f10(r.im), sci(r.tail_bound)]);
    }

    let mut t_four = Table::new(
        format!("B_{s}(x): Fourier series and bridge against the exact polynomial"),
        &["x", "Fourier", "from bridge", "exact", "error", "tail bound", "status"],
    );
    for r in &fourier {
        t_four.push(vec![
            fixed(r.x, 2),
            f10(r.fourier),
            f10(r.from_bridge),
            f10(r.exact),
            sci(r.error),
            sci(r.tail_bound),
            status(r.ok),
        ]);
    }

    let mut t_id = Table::new(
        format!("Kernel-weighted Lerch identities, s = {s}, a = 1, L = {}", args.bilateral_l),
        &["(J,k)", "parity", "lhs", "lhs imag", "rhs", "diff", "status"],
    )
    .intro("Status requires diff <= 1e-6.");
    let mut diagnostics = Vec::new();
    for r in &identities {
        let st = match &r.error {
            Some(e) => format!("ERROR: {e}"),
            None => status(r.ok),
        };
        diagnostics.push(format!("identity (J={}, k={}, {}): {st}", r.j, r.k, r.parity));
        t_id.push(vec![
            format!("({},{})", r.j, r.k),
            r.parity.to_string(),
            opt(r.lhs, f10),
            opt(r.lhs_imag, f10),
            opt(r.rhs, f10),
            opt(r.diff, sci),
            st,
        ]);
    }

    let json = serde_json::to_value(BridgeJson {
        s,
        series_k: args.series_k,
        bilateral_l: args.bilateral_l,
        zeta: zeta_row,
        spot,
        fourier,
        identities,
    })?;
    Ok(Section {
        name: "bridge".into(),
        heading: format!("Lerch bridge, s = {s}"),
        tables: vec![t_zeta, t_spot, t_four, t_id],
        csv: None,
        json,
        diagnostics,
        ok,
    })
}
