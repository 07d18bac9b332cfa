//! One-shot reproduction of every reference value.

use std::f64::consts::SQRT_2;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use spin_svetlichny::schemes::verify_fixed_sign_bound;
use spin_svetlichny::{
    boson_scheme, bounds, evaluate, expectation_analytic, expectation_oracle, fermion_scheme, predicted_max,
    search_zero_signs, verify_condition, Operator, PhaseTable, RationalAngle, Scenario, SignAssignment, SpinJ,
};

use crate::commands::Context;
use crate::error::CliError;
use crate::output;
use crate::Format;

const BUILTIN: &str = include_str!("../fixtures/golden.json");

const VALUE_TOL: f64 = 1e-9;
const RATIO_TOL: f64 = 1e-5;
const FULL_ORACLE_DIM: u64 = 1 << 16;
const QUICK_ORACLE_DIM: u64 = 1 << 12;

#[derive(Debug, Deserialize)]
struct Fixtures {
    three_party_fermion: f64,
    three_party_boson: f64,
    three_party_boson_signs: String,
    sign_search: Vec<SignSearchRow>,
    large_spin: LargeSpin,
}

#[derive(Debug, Deserialize)]
struct SignSearchRow {
    n: usize,
    max: i64,
    ratio: f64,
    violated: bool,
    signs: String,
}

#[derive(Debug, Deserialize)]
struct LargeSpin {
    j: u32,
    min_ratio: f64,
}

#[derive(Debug, Serialize)]
struct CheckOutcome {
    check: &'static str,
    passed: bool,
    detail: String,
}

type Check = Result<String, String>;
type Named<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn spin(twice_j: u32) -> SpinJ {
    SpinJ::from_twice(twice_j).expect("non-zero spin")
}

fn dim(n: usize, j: SpinJ) -> u64 {
    (j.dim() as u64).checked_pow(n as u32).unwrap_or(u64::MAX)
}

fn fermion_maximum(fx: &Fixtures) -> Check {
    for n in 3..=8 {
        for twice_j in [1, 3, 5] {
            let v: f64 = expectation_analytic(&fermion_scheme(n, spin(twice_j)).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let q = bounds::<f64>(n).map_err(|e| e.to_string())?.quantum;
            ensure((v - q).abs() <= VALUE_TOL, || format!("n={n} twice_j={twice_j}: {v} vs {q}"))?;
            if n == 3 {
                ensure((v - fx.three_party_fermion).abs() <= VALUE_TOL, || {
                    format!("n=3: {v} vs reference {}", fx.three_party_fermion)
                })?;
            }
        }
    }
    Ok("n = 3..8, twice_j ∈ {1, 3, 5}".into())
}

fn fermion_oracle(limit: u64, guard: usize) -> Check {
    let mut checked = 0;
    for n in 3..=8 {
        for twice_j in [1, 3, 5] {
            let j = spin(twice_j);
            if dim(n, j) > limit {
                continue;
            }
            let s = fermion_scheme(n, j).map_err(|e| e.to_string())?;
            let a: f64 = expectation_analytic(&s).map_err(|e| e.to_string())?;
            let o: f64 = expectation_oracle(&s, guard).map_err(|e| e.to_string())?;
            ensure((a - o).abs() <= VALUE_TOL, || format!("n={n} twice_j={twice_j}: {a} vs {o}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} schemes up to {limit} amplitudes"))
}

fn three_party_boson(fx: &Fixtures) -> Check {
    let signs: SignAssignment = fx.three_party_boson_signs.parse().map_err(|e: spin_svetlichny::Error| e.to_string())?;
    let r = evaluate::<f64>(&boson_scheme(3, spin(2), &signs).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure((r.value - fx.three_party_boson).abs() <= VALUE_TOL, || {
        format!("{} vs reference {}", r.value, fx.three_party_boson)
    })?;
    ensure(r.violated, || format!("{} does not exceed {}", r.value, r.lhv_bound))?;
    Ok(format!("<S_3> = {}", output::num(r.value)))
}

fn sign_search(fx: &Fixtures) -> Check {
    let mut parts = Vec::new();
    for row in &fx.sign_search {
        let n = row.n;
        let search = search_zero_signs(n).map_err(|e| e.to_string())?;
        ensure(search.best_value == row.max, || format!("n={n}: maximum {} vs reference {}", search.best_value, row.max))?;
        let r = evaluate::<f64>(&boson_scheme(n, spin(2), search.first()).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        ensure((r.ratio - row.ratio).abs() <= RATIO_TOL, || format!("n={n}: ratio {} vs reference {}", r.ratio, row.ratio))?;
        ensure(r.violated == row.violated, || format!("n={n}: violated = {}", r.violated))?;
        let published: SignAssignment = row.signs.parse().map_err(|e: spin_svetlichny::Error| e.to_string())?;
        ensure(published.n_parties() == n && published.tuple_sum() == row.max, || {
            format!("n={n}: reference signs {} give {}", row.signs, published.tuple_sum())
        })?;
        parts.push(format!("{n}:{}/{}", search.best_value, output::num(r.ratio)));
    }
    Ok(parts.join(" "))
}

fn fixed_sign_bound() -> Check {
    let mut total = 0;
    for n in 3..=8 {
        let s = verify_fixed_sign_bound(n).map_err(|e| e.to_string())?;
        ensure(s.passed(), || format!("{s:?}"))?;
        total += s.checked;
    }
    Ok(format!("{total} assignments"))
}

fn random_table(rng: &mut ChaCha8Rng, j: SpinJ) -> PhaseTable {
    let angle = |rng: &mut ChaCha8Rng| {
        let den = rng.random_range(1..=24);
        RationalAngle::pi_frac(rng.random_range(-2 * den..2 * den), den)
    };
    let upper: Vec<_> = (0..j.positive_count()).map(|_| angle(rng)).collect();
    let zero = j
        .is_integer()
        .then(|| if rng.random_bool(0.5) { RationalAngle::PI } else { RationalAngle::ZERO });
    PhaseTable::new(j, &upper, zero).expect("valid random table")
}

fn oracle_equivalence(limit: u64, guard: usize) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = 0f64;
    let mut checked = 0;
    while checked < 200 {
        let n = rng.random_range(3..=8);
        let spins: Vec<u32> = (1..=64).filter(|&t| dim(n, spin(t)) <= limit).collect();
        let j = spin(spins[rng.random_range(0..spins.len())]);
        let parties = (0..n).map(|_| [random_table(&mut rng, j), random_table(&mut rng, j)]).collect();
        let s = Scenario::new(j, parties).map_err(|e| e.to_string())?;
        let a: f64 = expectation_analytic(&s).map_err(|e| e.to_string())?;
        let o: f64 = expectation_oracle(&s, guard).map_err(|e| e.to_string())?;
        worst = worst.max((a - o).abs());
        ensure((a - o).abs() <= VALUE_TOL, || format!("n={n} j={j}: {a} vs {o}"))?;
        checked += 1;
    }
    Ok(format!("200 scenarios up to {limit} amplitudes, max difference {worst:.1e}"))
}

fn operator_properties() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..1000 {
        let j = spin(rng.random_range(1..=8));
        let op = Operator::from_table(&random_table(&mut rng, j));
        ensure(op.is_hermitian(), || format!("non-Hermitian operator for j={j}"))?;
        ensure(op.is_involution(), || format!("operator for j={j} does not square to identity"))?;
        ensure(op.has_binary_spectrum().map_err(|e| e.to_string())?, || {
            format!("spectrum outside ±1 for j={j}")
        })?;
    }
    Ok("1000 tables".into())
}

fn large_spin(fx: &Fixtures) -> Check {
    let q = 4.0 * SQRT_2;
    let mut prev = f64::NEG_INFINITY;
    for j in 1..=50u32 {
        let r = predicted_max::<f64>(3, spin(2 * j), Some(4)).map_err(|e| e.to_string())? / q;
        ensure(r > prev, || format!("ratio not increasing at j={j}"))?;
        prev = r;
    }
    let r = predicted_max::<f64>(3, spin(2 * fx.large_spin.j), Some(4)).map_err(|e| e.to_string())? / q;
    ensure(r > fx.large_spin.min_ratio, || format!("j={}: ratio {r}", fx.large_spin.j))?;
    Ok(format!("ratio(j={}) = {}", fx.large_spin.j, output::num(r)))
}

fn phase_conditions() -> Check {
    let j = spin(1);
    let m = j.m(1).expect("m = 1/2");
    for n in 3..=10 {
        let ok = verify_condition(&fermion_scheme(n, j).map_err(|e| e.to_string())?, m).map_err(|e| e.to_string())?;
        ensure(ok, || format!("n={n}"))?;
    }
    Ok("n = 3..10".into())
}

pub fn run(ctx: &Context, quick: bool, fixtures: Option<&Path>) -> Result<String, CliError> {
    let text = match fixtures {
        Some(p) => std::fs::read_to_string(p).map_err(|e| CliError::Validation(format!("{}: {e}", p.display())))?,
        None => BUILTIN.to_string(),
    };
    let fx: Fixtures = serde_json::from_str(&text).map_err(|e| CliError::Validation(format!("fixtures: {e}")))?;
    let limit = if quick { QUICK_ORACLE_DIM } else { FULL_ORACLE_DIM };
    let guard = ctx.dimension_guard;
    let checks: Vec<Named<'_>> = vec![
        ("fermion-maximum", Box::new(|| fermion_maximum(&fx))),
        ("fermion-oracle", Box::new(|| fermion_oracle(limit, guard))),
        ("three-party-boson", Box::new(|| three_party_boson(&fx))),
        ("sign-search", Box::new(|| sign_search(&fx))),
        ("fixed-sign-bound", Box::new(fixed_sign_bound)),
        ("oracle-equivalence", Box::new(|| oracle_equivalence(limit, guard))),
        ("operator-properties", Box::new(operator_properties)),
        ("large-spin-limit", Box::new(|| large_spin(&fx))),
        ("phase-conditions", Box::new(phase_conditions)),
    ];
    let outcomes: Vec<CheckOutcome> = checks
        .iter()
        .map(|(name, f)| {
            let (passed, detail) = match f() {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            CheckOutcome { check: name, passed, detail }
        })
        .collect();
    let rendered = match ctx.format {
        Format::Json => output::json(&outcomes)?,
        Format::Csv => output::csv(
            &["check", "passed", "detail"],
            &outcomes
                .iter()
                .map(|o| vec![o.check.to_string(), o.passed.to_string(), o.detail.clone()])
                .collect::<Vec<_>>(),
        )?,
        Format::Table => outcomes
            .iter()
            .map(|o| format!("{}  {}: {}\n", if o.passed { "PASS" } else { "FAIL" }, o.check, o.detail))
            .collect(),
    };
    let failed: Vec<&str> = outcomes.iter().filter(|o| !o.passed).map(|o| o.check).collect();
    if failed.is_empty() {
        Ok(rendered)
    } else {
        Err(CliError::Verification {
            failed: failed.join(", "),
            report: rendered,
        })
    }
}
