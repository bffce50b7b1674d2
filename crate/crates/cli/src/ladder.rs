use anyhow::Result;
use dualbasis::exactcore::{bernoulli_poly, hermite_poly, int, rat};
use dualbasis::ladder::{
    coherent_state_check, commutator, generating_function_check, hermite_derivative, hermite_ladder, op_a, op_adag,
    op_l, op_n, op_r, BasisTag, ExactOperator, RealOperator,
};
use serde::Serialize;

use crate::render::{sci, Section, Table};

const REAL_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    fn from(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

#[derive(Serialize)]
struct Row {
    identity: String,
    status: Status,
    detail: String,
}

fn exact_on_block(lhs: &ExactOperator, rhs: &ExactOperator, k: usize) -> Result<bool> {
    Ok(lhs.minus(rhs)?.block_is_zero(k))
}

fn real_defect(a: &RealOperator, adag: &RealOperator, k: usize) -> Result<f64> {
    let c = commutator(a, adag)?;
    Ok(c.minus(&RealOperator::identity(c.dim(), c.basis_tag()))?.max_abs_on_block(k))
}

fn rows(d: usize, t: usize) -> Result<Vec<Row>> {
    let mut out = Vec::new();
    let mut push = |identity: String, status: Status, detail: String| out.push(Row { identity, status, detail });

    let ok = (1..=d as u32).all(|n| bernoulli_poly(n).derivative() == bernoulli_poly(n - 1).scale(&int(n as i64)));
    let l = op_l(d)?;
    let matrix = (1..=d).all(|n| l.get(n - 1, n) == &int(n as i64));
    push(format!("d/dx B_n = n B_(n-1), n <= {d}"), Status::from(ok && matrix), "exact".into());

    let ok = (1..=d as u32).all(|n| hermite_poly(n).derivative() == hermite_poly(n - 1).scale(&int(2 * n as i64)));
    let h = hermite_derivative(d)?;
    let matrix = (1..=d).all(|n| h.get(n - 1, n) == &int(2 * n as i64));
    push(format!("d/dx H_n = 2n H_(n-1), n <= {d}"), Status::from(ok && matrix), "exact".into());

    let r = op_r(d)?;
    let n = op_n(d)?;
    let id = ExactOperator::identity(d + 1, BasisTag::Bernoulli);
    let lr = commutator(&l, &r)?;
    let corner = lr.minus(&id)?.get(d, d).clone();
    push(
        "[L,R] = I".into(),
        Status::from(exact_on_block(&lr, &id, d)?),
        format!("degrees < {d}; truncation corner {corner}"),
    );
    push(
        "[N,L] = -L".into(),
        Status::from(exact_on_block(&commutator(&n, &l)?, &l.scaled(&int(-1)), d)?),
        format!("degrees < {d}"),
    );
    push(
        "[N,R] = R".into(),
        Status::from(exact_on_block(&commutator(&n, &r)?, &r, d)?),
        format!("degrees < {d}"),
    );
    let b = real_defect(&op_a(d)?, &op_adag(d)?, d)?;
    push("[A,A+] = I".into(), Status::from(b <= REAL_TOL), format!("max defect {} (tol 1e-12)", sci(b)));
    let (a, adag) = hermite_ladder(d)?;
    let hf = real_defect(&a, &adag, d)?;
    push("[a,a+] = I".into(), Status::from(hf <= REAL_TOL), format!("max defect {} (tol 1e-12)", sci(hf)));

    push(
        format!("e^(tR) B_0 = t e^(xt)/(e^t - 1) through t^{t}"),
        Status::from(generating_function_check(t)?),
        "exact".into(),
    );

    if t < 2 {
        push("(L - y)|y> = 0".into(), Status::Skip, format!("needs T >= 2 (T = {t})"));
    } else {
        let ys = [int(0), rat(1, 2), rat(-3, 7), int(2)];
        let mut ok = true;
        let mut top = Vec::new();
        for y in &ys {
            let c = coherent_state_check(t, y)?;
            ok &= c.max_defect == int(0);
            top.push(format!("{}", c.top_defect));
        }
        push(
            "(L - y)|y> = 0".into(),
            Status::from(ok),
            format!("degrees < {t}, y in {{0, 1/2, -3/7, 2}}; top-degree residue {}", top.join(", ")),
        );
    }
    Ok(out)
}

pub fn run(d: usize, t: usize) -> Result<Section> {
    let rows = rows(d, t)?;
    let ok = rows.iter().all(|r| r.status != Status::Fail);
    let mut table = Table::new(format!("Identities at D={d}, T={t}"), &["identity", "status", "detail"]);
    for r in &rows {
        table.push(vec![r.identity.clone(), r.status.label().into(), r.detail.clone()]);
    }
    let diagnostics = rows
        .iter()
        .map(|r| format!("{}: {}", r.status.label(), r.identity))
        .collect();
    Ok(Section {
        name: "ladder".into(),
        heading: "Ladder operators".into(),
        json: serde_json::to_value(&rows)?,
        tables: vec![table],
        csv: None,
        diagnostics,
        ok,
    })
}
