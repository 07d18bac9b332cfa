use nalgebra::{DMatrix, RealField, SymmetricEigen};
use num_complex::Complex;

use super::{PhaseTable, SpinJ};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Per-entry tolerance for `M = M†`, stated for double precision.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Per-entry tolerance for `M·M = I`.
pub const INVOLUTION_TOL: f64 = 1e-12;
/// Distance of every eigenvalue from `±1`.
pub const SPECTRUM_TOL: f64 = 1e-9;

/// Dense `(2j+1) × (2j+1)` matrix of `|m> -> e^{i phase(m)} |-m>`, rows and
/// columns ordered by increasing `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementOperator<T> {
    j: SpinJ,
    // row-major
    matrix: Vec<Complex<T>>,
}

impl<T: Real> MeasurementOperator<T> {
    pub fn from_table(table: &PhaseTable) -> Self {
        let phases: Vec<T> = table.phases().iter().map(|p| p.radians()).collect();
        Self::from_antidiagonal_phases(table.j(), &phases)
    }

    /// Places `e^{i phases[c]}` at `(d-1-c, c)` without checking antisymmetry
    /// or the `m = 0` restriction. Used to probe invalid operators.
    pub fn from_antidiagonal_phases(j: SpinJ, phases: &[T]) -> Self {
        let d = j.dim();
        assert_eq!(phases.len(), d, "one phase per basis state");
        let mut matrix = vec![Complex::new(T::zero(), T::zero()); d * d];
        for (col, &phi) in phases.iter().enumerate() {
            // basis index of -m is d-1-index(m)
            let row = d - 1 - col;
            matrix[row * d + col] = Complex::from_polar(T::one(), phi);
        }
        MeasurementOperator { j, matrix }
    }

    pub fn j(&self) -> SpinJ {
        self.j
    }

    pub fn dim(&self) -> usize {
        self.j.dim()
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex<T> {
        self.matrix[row * self.dim() + col]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Complex<T>] {
        &self.matrix
    }

    /// `max |M - M†|` over entries.
    pub fn hermitian_defect(&self) -> T {
        let d = self.dim();
        let mut worst = T::zero();
        for r in 0..d {
            for c in 0..d {
                worst = worst.max((self.entry(r, c) - self.entry(c, r).conj()).norm());
            }
        }
        worst
    }

    /// `max |M·M - I|` over entries.
    pub fn involution_defect(&self) -> T {
        let d = self.dim();
        let mut worst = T::zero();
        for r in 0..d {
            for c in 0..d {
                let mut acc = Complex::new(T::zero(), T::zero());
                for k in 0..d {
                    acc = acc + self.entry(r, k) * self.entry(k, c);
                }
                if r == c {
                    acc.re = acc.re - T::one();
                }
                worst = worst.max(acc.norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian_defect() <= T::scaled_tol(HERMITIAN_TOL)
    }

    pub fn is_involution(&self) -> bool {
        self.involution_defect() <= T::scaled_tol(INVOLUTION_TOL)
    }

    pub fn to_dmatrix(&self) -> DMatrix<Complex<T>> {
        let d = self.dim();
        DMatrix::from_fn(d, d, |r, c| self.entry(r, c))
    }
}

impl<T: Real + RealField> MeasurementOperator<T> {
    /// Eigenvalues in ascending order, from a Hermitian eigen-solve.
    pub fn eigenvalues(&self) -> Result<Vec<T>> {
        if !self.is_hermitian() {
            let defect = num_traits::ToPrimitive::to_f64(&self.hermitian_defect()).unwrap_or(f64::NAN);
            return Err(Error::NotHermitian(defect));
        }
        let eig = SymmetricEigen::new(self.to_dmatrix());
        let mut values: Vec<T> = eig.eigenvalues.iter().cloned().collect();
        values.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
        Ok(values)
    }

    /// True when every eigenvalue lies within [`SPECTRUM_TOL`] of `+1` or `-1`.
    pub fn has_binary_spectrum(&self) -> Result<bool> {
        let tol = <T as Real>::scaled_tol(SPECTRUM_TOL);
        let one = <T as num_traits::One>::one();
        Ok(self.eigenvalues()?.into_iter().all(|e| {
            let dist_pos = num_traits::Float::abs(e - one);
            let dist_neg = num_traits::Float::abs(e + one);
            num_traits::Float::min(dist_pos, dist_neg) <= tol
        }))
    }
}
