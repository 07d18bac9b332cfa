use serde::Serialize;

use super::bounds;
use crate::error::Result;
use crate::scalar::Real;

/// Margin above the classical bound before a value counts as a violation.
pub const VIOLATION_TOL: f64 = 1e-9;

/// An expectation value of `S_N` together with its bounds.
///
/// `value` is signed; `violated` compares `|value|` against the classical bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SvetlichnyReport<T> {
    pub n: usize,
    pub twice_j: u32,
    pub value: T,
    pub lhv_bound: T,
    pub quantum_bound: T,
    pub fixed_sign_bound: T,
    pub ratio: T,
    pub violated: bool,
}

impl<T: Real> SvetlichnyReport<T> {
    pub fn new(n: usize, twice_j: u32, value: T) -> Result<Self> {
        let b = bounds::<T>(n)?;
        Ok(SvetlichnyReport {
            n,
            twice_j,
            value,
            lhv_bound: b.lhv,
            quantum_bound: b.quantum,
            fixed_sign_bound: b.fixed_sign,
            ratio: value / b.lhv,
            violated: value.abs() > b.lhv + T::scaled_tol(VIOLATION_TOL),
        })
    }

    /// `|value| <= quantum_bound` up to tolerance.
    pub fn within_quantum_bound(&self) -> bool {
        self.value.abs() <= self.quantum_bound + T::scaled_tol(VIOLATION_TOL)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn violation_flag_uses_magnitude() {
        let r = SvetlichnyReport::<f64>::new(3, 1, -5.0).unwrap();
        assert!(r.violated);
        assert_eq!(r.ratio, -1.25);
        let r = SvetlichnyReport::<f64>::new(3, 1, 4.0 + 1e-10).unwrap();
        assert!(!r.violated);
        let r = SvetlichnyReport::<f64>::new(3, 1, 4.0 + 1e-8).unwrap();
        assert!(r.violated);
    }

    #[test]
    fn serializes_fields_in_order() {
        let r = SvetlichnyReport::<f64>::new(3, 1, 4.0).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.starts_with(r#"{"n":3,"twice_j":1,"value":4.0,"lhv_bound":4.0,"#), "{s}");
        assert!(s.ends_with(r#""ratio":1.0,"violated":false}"#), "{s}");
    }
}
