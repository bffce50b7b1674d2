use anyhow::Result;
use dualbasis::pairing::{full_report, invariant_checks, Branch, FullReport, PairingOptions, PairingReport, Verdict};
use dualbasis::quadrature::QuadratureConfig;
use dualbasis::specfun::{ClausenVariant, Truncation};

use crate::render::{fixed, sci, status, Section, Table};

pub struct PairingArgs {
    pub nodes: usize,
    pub series_k: usize,
    pub variants: Vec<ClausenVariant>,
    pub phis: Vec<f64>,
}

fn branch_title(b: Branch) -> &'static str {
    match b {
        Branch::Alt => "alt: <B_{2m}, A_{2n+1}> under csc(2πx)",
        Branch::Sym => "sym: <B_{2m+1}, C_{2n}> under cot(πx)",
        Branch::CrossAlt => "cross-alt: <B_{2m+1}, A_{2n+1}> under csc(2πx)",
        Branch::CrossSym => "cross-sym: <B_{2m}, C_{2n}> under cot(πx)",
        Branch::Rotated => "rotated: cos(φ) csc(2πx) + sin(φ) cot(πx)",
    }
}

fn verdict_cell(v: Verdict) -> String {
    match v {
        Verdict::Match => "match".into(),
        Verdict::ConvergedMismatch => "**converged-mismatch**".into(),
        Verdict::Unconverged => "UNCONVERGED".into(),
    }
}

fn opt_fixed(x: Option<f64>) -> String {
    x.map_or_else(|| "-".into(), |v| fixed(v, 10))
}

fn report_row(r: &PairingReport) -> Vec<String> {
    let closed = match (&r.closed_form_exact, r.closed_form) {
        (Some(q), Some(v)) if q.contains('/') => format!("{q} = {}", fixed(v, 10)),
        (_, Some(v)) => fixed(v, 10),
        _ => "-".into(),
    };
    let mut row = vec![format!("({},{})", r.m, r.n)];
    if r.branch == Branch::Rotated {
        row.push(r.phi.map_or_else(|| "-".into(), |p| fixed(p, 6)));
    }
    row.extend([
        fixed(r.quadrature_value, 10),
        closed,
        opt_fixed(r.target),
        String::new(),
        r.a_variant.map_or_else(|| "-".into(), |v| v.label().to_string()),
        r.nodes_n.to_string(),
        sci(r.convergence_delta),
        sci(r.reference_diff),
        verdict_cell(r.verdict),
    ]);
    row
}

fn report_tables(full: &FullReport) -> Vec<Table> {
    let branches = [Branch::Alt, Branch::Sym, Branch::CrossAlt, Branch::CrossSym, Branch::Rotated];
    let mut tables = Vec::new();
    for b in branches {
        let rows: Vec<&PairingReport> = full.reports.iter().filter(|r| r.branch == b).collect();
        if rows.is_empty() {
            continue;
        }
        let mut headers = vec!["(m,n)"];
        if b == Branch::Rotated {
            headers.push("φ");
        }
        headers.extend([
            "numerical value",
            "closed form",
            "target",
            "",
            "variant",
            "N",
            "delta",
            "vs reference",
            "verdict",
        ]);
        let mut t = Table::new(branch_title(b), &headers);
        if let Some(note) = rows.iter().find_map(|r| r.note.as_deref()) {
            t = t.intro(format!("Note: {note}."));
        }
        for r in rows {
            t.push(report_row(r));
        }
        tables.push(t);
    }
    tables
}

pub fn run(args: &PairingArgs) -> Result<Section> {
    let opts = PairingOptions {
        quadrature: QuadratureConfig::trapezoid(args.nodes)?,
        trunc: Truncation(args.series_k),
        variants: args.variants.clone(),
        phis: args.phis.clone(),
        ..PairingOptions::default()
    };
    let full = full_report(&opts);
    let checks = invariant_checks(&full.reports, &opts);
    let unconverged = full.reports.iter().filter(|r| r.verdict == Verdict::Unconverged).count();
    let mismatches = full.reports.iter().filter(|r| r.verdict == Verdict::ConvergedMismatch).count();
    let ok = unconverged == 0 && full.failures.is_empty() && checks.iter().all(|c| c.passed);

    let mut tables = vec![Table::new("Setup", &["trapezoid N", "reference N", "series K", "cells"])
        .intro("`delta` is |value(N) - value(reference N)|; `vs reference` compares against an independent high-precision evaluation.")];
    tables[0].push(vec![
        opts.quadrature.nodes_n.to_string(),
        (opts.quadrature.nodes_n * opts.hi_factor).to_string(),
        args.series_k.to_string(),
        full.reports.len().to_string(),
    ]);
    tables.extend(report_tables(&full));

    let mut inv = Table::new("Invariant checks", &["check", "status", "detail"]);
    for c in &checks {
        inv.push(vec![c.name.clone(), status(c.passed), c.detail.clone()]);
    }
    tables.push(inv);

    let mut diagnostics: Vec<String> = checks
        .iter()
        .map(|c| format!("invariant {}: {} ({})", status(c.passed), c.name, c.detail))
        .collect();
    if !full.failures.is_empty() {
        let mut t = Table::new("Failed cells", &["branch", "(m,n)", "variant", "error"]);
        for f in &full.failures {
            let variant = f.a_variant.map_or_else(|| "-".into(), |v| v.label().to_string());
            t.push(vec![f.branch.label().into(), format!("({},{})", f.m, f.n), variant.clone(), f.message.clone()]);
            diagnostics.push(format!("cell failed: {} ({},{}) {variant}: {}", f.branch, f.m, f.n, f.message));
        }
        tables.push(t);
    }
    let mut summary = Table::new("Summary", &["cells", "match", "converged-mismatch", "unconverged", "failed", "result"]);
    summary.push(vec![
        full.reports.len().to_string(),
        (full.reports.len() - unconverged - mismatches).to_string(),
        mismatches.to_string(),
        unconverged.to_string(),
        full.failures.len().to_string(),
        status(ok),
    ]);
    tables.push(summary);

    let mut w = csv::Writer::from_writer(Vec::new());
    for r in &full.reports {
        w.serialize(r)?;
    }
    let csv = String::from_utf8(w.into_inner()?)?;

    Ok(Section {
        name: "pairings".into(),
        heading: "Weighted pairings".into(),
        tables,
        csv: Some(csv),
        json: serde_json::to_value(&full.reports)?,
        diagnostics,
        ok,
    })
}
