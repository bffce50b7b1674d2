use anyhow::Result;
use dualbasis::selector::{kernel_closed_form_j2, kernel_table, kernel_value, Parity, SelectorKernel, SNAP_TOLERANCE};
use serde::Serialize;

use crate::render::{fixed, status, Section, Table};

/// Tabulated periods for the two- and four-node kernels.
fn tabulated(j: u32, parity: Parity) -> Option<&'static [f64]> {
    match (j, parity) {
        (2, Parity::Sin) => Some(&[0., 1., 0., 1., 0., -1., 0., -1.]),
        (2, Parity::Cos) => Some(&[0., 1., 0., -1., 0., -1., 0., 1.]),
        (4, Parity::Sin) => Some(&[0., 1., 0., 1., 0., 1., 0., 1., 0., -1., 0., -1., 0., -1., 0., -1.]),
        (4, Parity::Cos) => Some(&[0., 1., 0., -1., 0., 1., 0., -1., 0., -1., 0., 1., 0., -1., 0., 1.]),
        _ => None,
    }
}

#[derive(Serialize)]
struct KernelJson {
    kernel: SelectorKernel,
    closed_form: Option<Vec<f64>>,
    golden: &'static str,
    matches: bool,
}

fn value_cell(v: f64) -> String {
    if v.fract() == 0.0 {
        fixed(v, 0)
    } else {
        fixed(v, 12)
    }
}

/// Untabulated `J`: compare against direct evaluation and check
/// anti-periodicity and vanishing at even `k`.
fn oracle_check(t: &SelectorKernel) -> Result<bool> {
    let j = t.j as i64;
    let mut ok = true;
    for (k, &v) in t.period_values.iter().enumerate() {
        let k = k as i64;
        let direct = kernel_value(t.j, t.parity, k)?;
        ok &= (v - direct).abs() <= SNAP_TOLERANCE;
        ok &= (t.at(k) + t.at(k + 2 * j)).abs() <= 1e-10;
        if k % 2 == 0 {
            ok &= v.abs() <= 1e-10;
        }
    }
    Ok(ok)
}

pub fn run(j: u32, parity: Parity) -> Result<Section> {
    let table = kernel_table(j, parity)?;
    let (golden, matches) = match tabulated(j, parity) {
        Some(want) => ("tabulated", table.period_values == want),
        None => ("direct evaluation", oracle_check(&table)?),
    };
    let closed: Option<Vec<f64>> = (j == 2).then(|| {
        (0..table.period_values.len() as i64)
            .map(|k| kernel_closed_form_j2(k, parity))
            .collect()
    });
    let closed_ok = closed.as_ref().map_or(true, |c| {
        c.iter().zip(&table.period_values).all(|(a, b)| (a - b).abs() <= 1e-12)
    });
    let ok = matches && closed_ok;

    let mut headers = vec!["k".to_string()];
    headers.extend((0..table.period_values.len()).map(|k| k.to_string()));
    let header_refs: Vec<&str> = headers.iter().map(String::as_str).collect();
    let mut t = Table::new(format!("K_{j}(k), {parity}, one period"), &header_refs);
    let mut row = vec!["value".to_string()];
    row.extend(table.period_values.iter().map(|&v| value_cell(v)));
    t.push(row);
    if let Some(c) = &closed {
        let mut row = vec!["closed form".to_string()];
        row.extend(c.iter().map(|&v| fixed(v, 12)));
        t.push(row);
    }

    let mut check = Table::new("Checks", &["check", "status"]);
    check.push(vec![format!("table against {golden} values"), status(matches)]);
    if closed.is_some() {
        check.push(vec!["two-node closed form within 1e-12".into(), status(closed_ok)]);
    }

    let mut long = Table::new("kernel", &["j", "parity", "k", "value", "closed_form"]);
    for (k, v) in table.period_values.iter().enumerate() {
        let c = closed.as_ref().map_or_else(String::new, |c| format!("{:?}", c[k]));
        long.push(vec![j.to_string(), parity.to_string(), k.to_string(), format!("{v:?}"), c]);
    }
    let csv = {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&long.headers)?;
        for r in &long.rows {
            w.write_record(r)?;
        }
        String::from_utf8(w.into_inner()?)?
    };

    let json = serde_json::to_value(KernelJson {
        kernel: table,
        closed_form: closed,
        golden,
        matches: ok,
    })?;
    Ok(Section {
        name: format!("kernels-j{j}-{parity}"),
        heading: format!("Selector kernel J={j}, {parity}"),
        tables: vec![t, check],
        csv: Some(csv),
        json,
        diagnostics: vec![format!("kernel J={j} {parity}: {}", status(ok))],
        ok,
    })
}
