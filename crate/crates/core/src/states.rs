//! The `N`-party spin-`j` GHZ state and tensor-product operator application.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spin_space::{MeasurementOperator, SpinJ};
use crate::svetlichny::SettingsTuple;

/// Default cap on `d^N` amplitudes (about 32 MiB of `Complex<f64>`).
pub const DEFAULT_DIMENSION_GUARD: usize = 1 << 21;

/// Checked `d^n`, or `DimensionGuardExceeded`.
pub fn guarded_dimension(j: SpinJ, n: usize, guard: usize) -> Result<usize> {
    let d = j.dim() as u128;
    let exceeded = |dimension: u128| Error::DimensionGuardExceeded {
        dimension,
        guard: guard as u128,
    };
    let mut dim: u128 = 1;
    for _ in 0..n {
        dim = dim.checked_mul(d).ok_or_else(|| exceeded(u128::MAX))?;
        if dim > guard as u128 {
            // report the full d^n, saturating
            let full = d.checked_pow(n as u32).unwrap_or(u128::MAX);
            return Err(exceeded(full));
        }
    }
    Ok(dim as usize)
}

/// Dense pure state over `(2j+1)^N` product basis states.
///
/// Basis index is `Σ_i idx_i · d^{N-1-i}`; party 0 is most significant and
/// `idx = 0` is `m = -j`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T> {
    n_parties: usize,
    j: SpinJ,
    amplitudes: Vec<Complex<T>>,
}

impl<T: Real> StateVector<T> {
    /// `(2j+1)^{-1/2} Σ_m |m>^{⊗n}`.
    pub fn ghz(n: usize, j: SpinJ, guard: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ShapeMismatch("a state needs at least one party".into()));
        }
        let len = guarded_dimension(j, n, guard)?;
        let d = j.dim();
        let amp = T::one() / T::from_usize(d).expect("small dimension").sqrt();
        let mut amplitudes = vec![Complex::new(T::zero(), T::zero()); len];
        // all parties share index k: k · (d^{n-1} + ... + 1)
        let stride = (0..n).fold(0usize, |acc, _| acc * d + 1);
        for k in 0..d {
            amplitudes[k * stride] = Complex::new(amp, T::zero());
        }
        Ok(StateVector { n_parties: n, j, amplitudes })
    }

    pub fn from_amplitudes(n: usize, j: SpinJ, amplitudes: Vec<Complex<T>>) -> Result<Self> {
        let expected = guarded_dimension(j, n, usize::MAX)?;
        if amplitudes.len() != expected {
            return Err(Error::ShapeMismatch(format!(
                "expected {expected} amplitudes, got {}",
                amplitudes.len()
            )));
        }
        Ok(StateVector { n_parties: n, j, amplitudes })
    }

    pub fn n_parties(&self) -> usize {
        self.n_parties
    }

    pub fn j(&self) -> SpinJ {
        self.j
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector<T>) -> Result<Complex<T>> {
        if self.amplitudes.len() != other.amplitudes.len() {
            return Err(Error::ShapeMismatch("inner product of differently sized states".into()));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + a.conj() * b))
    }

    /// Applies a single-party operator to `party`, leaving the others alone.
    pub fn apply_local(&self, party: usize, op: &MeasurementOperator<T>) -> Result<Self> {
        if party >= self.n_parties {
            return Err(Error::ShapeMismatch(format!(
                "party {party} out of range for {} parties",
                self.n_parties
            )));
        }
        if op.j() != self.j {
            return Err(Error::ShapeMismatch(format!(
                "operator spin {} does not match state spin {}",
                op.j(),
                self.j
            )));
        }
        let d = self.j.dim();
        let inner = d.pow((self.n_parties - 1 - party) as u32);
        let outer = self.amplitudes.len() / (d * inner);
        let zero = Complex::new(T::zero(), T::zero());
        // nonzero pattern of the factor, scanned once
        let support: Vec<(usize, usize, Complex<T>)> = (0..d)
            .flat_map(|r| (0..d).map(move |c| (r, c)))
            .map(|(r, c)| (r, c, op.entry(r, c)))
            .filter(|&(_, _, v)| v != zero)
            .collect();
        let mut out = vec![zero; self.amplitudes.len()];
        for o in 0..outer {
            let base = o * d * inner;
            for &(r, c, v) in &support {
                let dst = base + r * inner;
                let src = base + c * inner;
                for t in 0..inner {
                    out[dst + t] = out[dst + t] + v * self.amplitudes[src + t];
                }
            }
        }
        Ok(StateVector {
            n_parties: self.n_parties,
            j: self.j,
            amplitudes: out,
        })
    }

    /// `(A^{(1)}_{x_1} ⊗ … ⊗ A^{(N)}_{x_N}) |self>`, one party-local factor at a time.
    ///
    /// `operators[i]` holds party `i`'s setting-0 and setting-1 operators.
    pub fn apply_setting(
        &self,
        operators: &[[MeasurementOperator<T>; 2]],
        tuple: &SettingsTuple,
    ) -> Result<Self> {
        if operators.len() != self.n_parties || tuple.len() != self.n_parties {
            return Err(Error::ShapeMismatch(format!(
                "{} parties, {} operator pairs, tuple of length {}",
                self.n_parties,
                operators.len(),
                tuple.len()
            )));
        }
        let mut state = self.clone();
        for (party, pair) in operators.iter().enumerate() {
            state = state.apply_local(party, &pair[tuple.bit(party) as usize])?;
        }
        Ok(state)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin_space::{PhaseTable, RationalAngle};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn spin(t: u32) -> SpinJ {
        SpinJ::from_twice(t).unwrap()
    }

    // independent encoder: fold digits most-significant first
    fn encode(d: usize, digits: &[usize]) -> usize {
        let mut idx = 0;
        let mut weight = 1;
        for &digit in digits.iter().rev() {
            idx += digit * weight;
            weight *= d;
        }
        idx
    }

    #[test]
    fn three_qubit_ghz() {
        let s = StateVector::<f64>::ghz(3, spin(1), DEFAULT_DIMENSION_GUARD).unwrap();
        assert_eq!(s.amplitudes().len(), 8);
        for (i, a) in s.amplitudes().iter().enumerate() {
            let want = if i == 0 || i == 7 { FRAC_1_SQRT_2 } else { 0.0 };
            assert!((a.re - want).abs() < 1e-15 && a.im == 0.0);
        }
    }

    #[test]
    fn single_party_is_uniform() {
        let s = StateVector::<f64>::ghz(1, spin(2), DEFAULT_DIMENSION_GUARD).unwrap();
        let want = 1.0 / 3f64.sqrt();
        assert!(s.amplitudes().iter().all(|a| (a.re - want).abs() < 1e-15));
    }

    #[test]
    fn four_qutrit_support() {
        let s = StateVector::<f64>::ghz(4, spin(2), DEFAULT_DIMENSION_GUARD).unwrap();
        let support: Vec<usize> = (0..81).filter(|&i| s.amplitudes()[i].norm() > 0.0).collect();
        let expected: Vec<usize> = (0..3).map(|k| encode(3, &[k; 4])).collect();
        assert_eq!(expected, vec![0, 40, 80]);
        assert_eq!(support, expected);
    }

    #[test]
    fn guard() {
        let err = StateVector::<f64>::ghz(22, spin(1), DEFAULT_DIMENSION_GUARD).unwrap_err();
        assert_eq!(
            err,
            Error::DimensionGuardExceeded {
                dimension: 1 << 22,
                guard: 1 << 21
            }
        );
        assert!(StateVector::<f64>::ghz(21, spin(1), DEFAULT_DIMENSION_GUARD).is_ok());
        assert!(StateVector::<f64>::ghz(200, spin(9), DEFAULT_DIMENSION_GUARD).is_err());
    }

    #[test]
    fn norms() {
        for twice_j in 1..=6 {
            for n in 1..=5 {
                let s = StateVector::<f64>::ghz(n, spin(twice_j), DEFAULT_DIMENSION_GUARD).unwrap();
                assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn exchange_fixes_qubit_ghz() {
        let s = StateVector::<f64>::ghz(3, spin(1), DEFAULT_DIMENSION_GUARD).unwrap();
        let x = MeasurementOperator::from_table(&PhaseTable::identity(spin(1)));
        let ops = vec![[x.clone(), x.clone()], [x.clone(), x.clone()], [x.clone(), x]];
        for t in SettingsTuple::all(3) {
            let out = s.apply_setting(&ops, &t).unwrap();
            for (a, b) in out.amplitudes().iter().zip(s.amplitudes()) {
                assert!((a - b).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn single_basis_state_picks_up_negative_phase() {
        let j = spin(1);
        let s = StateVector::from_amplitudes(1, j, vec![Complex::new(1.0, 0.0), Complex::new(0.0, 0.0)]).unwrap();
        let t = PhaseTable::new(j, &[RationalAngle::pi_frac(1, 2)], None).unwrap();
        let out = s.apply_local(0, &MeasurementOperator::<f64>::from_table(&t)).unwrap();
        // |-1/2> -> e^{-iπ/2} |+1/2>
        assert!(out.amplitudes()[0].norm() < 1e-15);
        assert!((out.amplitudes()[1] - Complex::new(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn two_qutrit_overlap_matches_phase_average() {
        let j = spin(2);
        let a = PhaseTable::new(j, &[RationalAngle::pi_frac(-1, 4)], Some(RationalAngle::ZERO)).unwrap();
        let b = PhaseTable::new(j, &[RationalAngle::pi_frac(1, 2)], Some(RationalAngle::PI)).unwrap();
        let ops = vec![
            [MeasurementOperator::<f64>::from_table(&a), MeasurementOperator::from_table(&a)],
            [MeasurementOperator::from_table(&b), MeasurementOperator::from_table(&b)],
        ];
        let s = StateVector::<f64>::ghz(2, j, DEFAULT_DIMENSION_GUARD).unwrap();
        let tuple = SettingsTuple::from_bits(&[0, 0]).unwrap();
        let got = s.inner(&s.apply_setting(&ops, &tuple).unwrap()).unwrap();
        // (1/3) Σ_m e^{i(α_m + β_m)} with α+β = π/4, π, -π/4 at m = 1, 0, -1
        let q = std::f64::consts::FRAC_PI_4;
        let want = (Complex::from_polar(1.0, q) + Complex::from_polar(1.0, std::f64::consts::PI)
            + Complex::from_polar(1.0, -q))
            / 3.0;
        assert!((got - want).norm() < 1e-14);
    }

    #[test]
    fn shape_mismatch() {
        let s = StateVector::<f64>::ghz(2, spin(1), DEFAULT_DIMENSION_GUARD).unwrap();
        let op = MeasurementOperator::from_table(&PhaseTable::identity(spin(2)));
        assert!(matches!(s.apply_local(0, &op), Err(Error::ShapeMismatch(_))));
        let x = MeasurementOperator::from_table(&PhaseTable::identity(spin(1)));
        let ops = vec![[x.clone(), x]];
        let t = SettingsTuple::from_bits(&[0, 0]).unwrap();
        assert!(matches!(s.apply_setting(&ops, &t), Err(Error::ShapeMismatch(_))));
    }
}
