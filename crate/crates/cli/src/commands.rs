use std::collections::HashMap;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use spin_svetlichny::schemes::SEARCH_LIMIT;
use spin_svetlichny::{
    boson_scheme, bounds as sn_bounds, evaluate as evaluate_scenario, expectation_oracle, fermion_scheme,
    search_zero_signs, Report, Scenario, SearchResult, SignAssignment, SpinJ,
};

use crate::error::CliError;
use crate::output::{self, num, rounded, sig9, REPORT_HEADERS};
use crate::range::{PartyRange, SpinRange};
use crate::Format;

/// Largest `n` evaluated analytically (`2^n` tuples).
pub const MAX_ANALYTIC_N: usize = 16;

pub struct Context {
    pub format: Format,
    pub dimension_guard: usize,
}

fn check_n(n: usize) -> Result<(), CliError> {
    if n < 3 {
        return Err(CliError::Validation(format!("n must be ≥ 3, got {n}")));
    }
    if n > MAX_ANALYTIC_N {
        return Err(CliError::Guard(format!(
            "n = {n} exceeds the evaluation limit of {MAX_ANALYTIC_N} parties"
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct BoundsRow {
    n: usize,
    lhv_bound: f64,
    quantum_bound: f64,
    fixed_sign_bound: f64,
}

pub fn bounds(ctx: &Context, range: PartyRange) -> Result<String, CliError> {
    let rows = range
        .iter()
        .map(|n| {
            let b = sn_bounds::<f64>(n)?;
            Ok(BoundsRow {
                n,
                lhv_bound: sig9(b.lhv),
                quantum_bound: sig9(b.quantum),
                fixed_sign_bound: sig9(b.fixed_sign),
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let headers = ["n", "lhv_bound", "quantum_bound", "fixed_sign_bound"];
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| vec![r.n.to_string(), num(r.lhv_bound), num(r.quantum_bound), num(r.fixed_sign_bound)])
        .collect();
    match ctx.format {
        Format::Json => output::json(&rows),
        Format::Csv => output::csv(&headers, &cells),
        Format::Table => Ok(output::table(&headers, &cells)),
    }
}

/// A report plus the optional sign choice and oracle cross-check.
#[derive(Serialize)]
struct Evaluation {
    #[serde(flatten)]
    report: Report,
    #[serde(skip_serializing_if = "Option::is_none")]
    signs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    difference: Option<f64>,
}

fn evaluation(ctx: &Context, scenario: &Scenario, signs: Option<&SignAssignment>, oracle: bool) -> Result<Evaluation, CliError> {
    let report = evaluate_scenario::<f64>(scenario)?;
    let oracle_value = if oracle {
        Some(expectation_oracle::<f64>(scenario, ctx.dimension_guard)?)
    } else {
        None
    };
    Ok(Evaluation {
        report: rounded(&report),
        signs: signs.map(ToString::to_string),
        oracle_value: oracle_value.map(sig9),
        // unrounded: the difference is the point
        difference: oracle_value.map(|o| (report.value - o).abs()),
    })
}

fn render_evaluation(ctx: &Context, e: &Evaluation) -> Result<String, CliError> {
    let mut headers: Vec<&str> = REPORT_HEADERS.to_vec();
    let mut row = output::report_row(&e.report);
    if let Some(signs) = &e.signs {
        headers.push("signs");
        row.push(signs.clone());
    }
    if let (Some(o), Some(d)) = (e.oracle_value, e.difference) {
        headers.extend(["oracle_value", "difference"]);
        row.extend([num(o), format!("{d:.3e}")]);
    }
    match ctx.format {
        Format::Json => output::json(e),
        Format::Csv => output::csv(&headers, &[row]),
        Format::Table => {
            let mut rows: Vec<Vec<String>> = headers
                .iter()
                .zip(row)
                .map(|(h, v)| vec![h.to_string(), v])
                .collect();
            rows.insert(3, vec!["quantum_bound".into(), num(e.report.quantum_bound)]);
            rows.insert(4, vec!["fixed_sign_bound".into(), num(e.report.fixed_sign_bound)]);
            Ok(output::table(&["field", "value"], &rows))
        }
    }
}

pub fn scheme(
    ctx: &Context,
    n: usize,
    spin: SpinJ,
    signs: Option<SignAssignment>,
    auto_signs: bool,
    out: Option<&Path>,
    oracle: bool,
) -> Result<String, CliError> {
    check_n(n)?;
    let (scenario, signs) = if spin.is_half_integer() {
        if signs.is_some() {
            return Err(CliError::Validation("m=0 signs only apply to integer spin".into()));
        }
        (fermion_scheme(n, spin)?, None)
    } else {
        let signs = match (signs, auto_signs) {
            (Some(s), _) => s,
            (None, true) => search_zero_signs(n)?.first().clone(),
            (None, false) => {
                return Err(CliError::Validation(
                    "integer spin needs --signs or --auto-signs".into(),
                ))
            }
        };
        (boson_scheme(n, spin, &signs)?, Some(signs))
    };
    let e = evaluation(ctx, &scenario, signs.as_ref(), oracle)?;
    if let Some(path) = out {
        std::fs::write(path, scenario.to_json_string()? + "\n")?;
    }
    render_evaluation(ctx, &e)
}

pub fn evaluate(ctx: &Context, path: &Path, oracle: bool) -> Result<String, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    let scenario = Scenario::from_json_str(&text)?;
    check_n(scenario.n_parties())?;
    let e = evaluation(ctx, &scenario, None, oracle)?;
    render_evaluation(ctx, &e)
}

pub fn search(ctx: &Context, n: usize) -> Result<String, CliError> {
    let r = search_zero_signs(n)?;
    let json = r.to_json();
    let headers = ["n", "best_value", "bound", "assignment", "evaluated", "ties"];
    let row = vec![
        n.to_string(),
        r.best_value.to_string(),
        num(json.bound),
        r.first().to_string(),
        r.evaluated_count.to_string(),
        r.tie_count.to_string(),
    ];
    match ctx.format {
        Format::Json => output::json(&json),
        Format::Csv => output::csv(&headers, &[row]),
        Format::Table => {
            let rows: Vec<Vec<String>> = headers.iter().zip(row).map(|(h, v)| vec![h.to_string(), v]).collect();
            Ok(output::table(&["field", "value"], &rows))
        }
    }
}

pub fn sweep(ctx: &Context, parties: PartyRange, spins: SpinRange) -> Result<String, CliError> {
    let ns: Vec<usize> = parties.iter().collect();
    for &n in &ns {
        check_n(n)?;
        if spins.first.is_integer() && n > SEARCH_LIMIT {
            return Err(CliError::Guard(format!(
                "integer spin needs a sign search, limited to n <= {SEARCH_LIMIT}"
            )));
        }
    }
    let searches: HashMap<usize, SearchResult> = if spins.first.is_integer() {
        ns.iter()
            .map(|&n| Ok((n, search_zero_signs(n)?)))
            .collect::<Result<_, CliError>>()?
    } else {
        HashMap::new()
    };
    let jobs: Vec<(usize, SpinJ)> = ns.iter().flat_map(|&n| spins.iter().map(move |j| (n, j))).collect();
    let reports = jobs
        .par_iter()
        .map(|&(n, j)| {
            let scenario = match searches.get(&n) {
                Some(r) => boson_scheme(n, j, r.first())?,
                None => fermion_scheme(n, j)?,
            };
            Ok(rounded(&evaluate_scenario::<f64>(&scenario)?))
        })
        .collect::<Result<Vec<Report>, CliError>>()?;
    let rows: Vec<Vec<String>> = reports.iter().map(output::report_row).collect();
    match ctx.format {
        Format::Json => output::json(&reports),
        Format::Csv => output::csv(&REPORT_HEADERS, &rows),
        Format::Table => Ok(output::table(&REPORT_HEADERS, &rows)),
    }
}
