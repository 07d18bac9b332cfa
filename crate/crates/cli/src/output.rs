//! Rendering helpers. Floats are rounded to 9 significant digits
//! (round-half-even on the exact binary value) before any output.

use serde::Serialize;
use spin_svetlichny::Report;

use crate::error::CliError;

pub fn sig9(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    format!("{x:.8e}").parse().expect("formatted float parses")
}

pub fn num(x: f64) -> String {
    sig9(x).to_string()
}

pub fn rounded(r: &Report) -> Report {
    Report {
        value: sig9(r.value),
        lhv_bound: sig9(r.lhv_bound),
        quantum_bound: sig9(r.quantum_bound),
        fixed_sign_bound: sig9(r.fixed_sign_bound),
        ratio: sig9(r.ratio),
        ..*r
    }
}

pub fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Validation(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn csv(headers: &[&str], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| CliError::Validation(e.to_string());
    w.write_record(headers).map_err(fail)?;
    for row in rows {
        w.write_record(row).map_err(fail)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Validation(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(headers.to_vec());
    out += &line(widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().iter().map(String::as_str).collect());
    for row in rows {
        out += &line(row.iter().map(String::as_str).collect());
    }
    out
}

pub const REPORT_HEADERS: [&str; 6] = ["n", "twice_j", "value", "lhv_bound", "ratio", "violated"];

pub fn report_row(r: &Report) -> Vec<String> {
    vec![
        r.n.to_string(),
        r.twice_j.to_string(),
        num(r.value),
        num(r.lhv_bound),
        num(r.ratio),
        r.violated.to_string(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(num(4.0 * std::f64::consts::SQRT_2), "5.65685425");
        assert_eq!(num(4.0), "4");
        assert_eq!(num(0.9844757604), "0.98447576");
        assert_eq!(num(123456789012.0), "123456789000");
        assert_eq!(sig9(-1.23456789049), -1.23456789);
    }

    #[test]
    fn csv_quotes_fields() {
        let s = csv(&["a", "b"], &[vec!["1".into(), "x,y".into()]]).unwrap();
        assert_eq!(s, "a,b\n1,\"x,y\"\n");
    }

    #[test]
    fn table_aligns() {
        let s = table(&["n", "value"], &[vec!["3".into(), "4".into()], vec!["10".into(), "5.5".into()]]);
        assert_eq!(s, " n  value\n--  -----\n 3      4\n10    5.5\n");
    }
}
