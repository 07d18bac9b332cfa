use num_complex::Complex;
use rayon::prelude::*;

use super::{Scenario, SettingsTuple};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spin_space::{Phase, RationalAngle};
use crate::states::StateVector;

/// Largest imaginary part tolerated in `<S_N>` before it is reported.
pub const IMAGINARY_TOL: f64 = 1e-10;

/// `<ψ_N| A^{(1)}_{x_1} ⊗ … ⊗ A^{(N)}_{x_N} |ψ_N> = (2j+1)^{-1} Σ_m e^{i Σ_i phase_i(x_i, m)}`.
///
/// Phase sums are carried exactly when every phase is rational.
pub fn correlator<T: Real>(scenario: &Scenario, tuple: &SettingsTuple) -> Result<Complex<T>> {
    let n = scenario.n_parties();
    if tuple.len() != n {
        return Err(Error::ShapeMismatch(format!(
            "tuple of length {} for {n} parties",
            tuple.len()
        )));
    }
    let d = scenario.j().dim();
    let mut acc = Complex::new(T::zero(), T::zero());
    for idx in 0..d {
        let mut exact = RationalAngle::ZERO;
        let mut radians = T::zero();
        for party in 0..n {
            match scenario.table(party, tuple.bit(party) as usize).phases()[idx] {
                Phase::Exact(a) => exact = exact + a,
                p @ Phase::Radians(_) => radians = radians + p.radians::<T>(),
            }
        }
        acc = acc + Complex::from_polar(T::one(), exact.to_radians::<T>() + radians);
    }
    Ok(acc / T::from_usize(d).expect("small dimension"))
}

fn real_part<T: Real>(total: Complex<T>) -> Result<T> {
    if total.im.abs() > T::scaled_tol(IMAGINARY_TOL) {
        return Err(Error::ImaginaryResidue(total.im.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(total.re)
}

fn signed<T: Real>(tuple: &SettingsTuple, z: Complex<T>) -> Complex<T> {
    if tuple.sign() > 0 {
        z
    } else {
        -z
    }
}

/// `<S_N>` from the closed-form correlators, summed over all `2^N` tuples.
pub fn expectation_analytic<T: Real>(scenario: &Scenario) -> Result<T> {
    let mut total = Complex::new(T::zero(), T::zero());
    for tuple in SettingsTuple::all(scenario.n_parties()) {
        total = total + signed(&tuple, correlator::<T>(scenario, &tuple)?);
    }
    real_part(total)
}

/// `<S_N>` by building the GHZ state and applying each tuple's tensor
/// product of dense operator matrices.
///
/// Tuples are evaluated in parallel; the reduction runs in tuple order, so
/// the result does not depend on the thread count.
pub fn expectation_oracle<T: Real>(scenario: &Scenario, guard: usize) -> Result<T> {
    let n = scenario.n_parties();
    let psi = StateVector::<T>::ghz(n, scenario.j(), guard)?;
    let operators = scenario.operators::<T>();
    let terms: Vec<Complex<T>> = (0..1u64 << n)
        .into_par_iter()
        .map(|i| {
            let tuple = SettingsTuple::from_index(i, n);
            let image = psi.apply_setting(&operators, &tuple)?;
            Ok(signed(&tuple, psi.inner(&image)?))
        })
        .collect::<Result<_>>()?;
    let total = terms
        .into_iter()
        .fold(Complex::new(T::zero(), T::zero()), |acc, z| acc + z);
    real_part(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin_space::{PhaseTable, SpinJ};
    use crate::states::DEFAULT_DIMENSION_GUARD;
    use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

    fn spin(t: u32) -> SpinJ {
        SpinJ::from_twice(t).unwrap()
    }

    fn frac(p: i64, q: i64) -> RationalAngle {
        RationalAngle::pi_frac(p, q)
    }

    /// α = (-π/4, π/4), then (0, π/2) for every other party; `zeros` gives
    /// the m=0 phases for integer spin.
    fn optimal(n: usize, j: SpinJ, zeros: &[[RationalAngle; 2]]) -> Scenario {
        let z = |p: usize, s: usize| j.is_integer().then(|| zeros[p][s]);
        let mut parties = vec![[
            PhaseTable::uniform(j, frac(-1, 4), z(0, 0)).unwrap(),
            PhaseTable::uniform(j, frac(1, 4), z(0, 1)).unwrap(),
        ]];
        for p in 1..n {
            parties.push([
                PhaseTable::uniform(j, RationalAngle::ZERO, z(p, 0)).unwrap(),
                PhaseTable::uniform(j, frac(1, 2), z(p, 1)).unwrap(),
            ]);
        }
        Scenario::new(j, parties).unwrap()
    }

    fn identity(n: usize, j: SpinJ) -> Scenario {
        let t = PhaseTable::identity(j);
        Scenario::new(j, vec![[t.clone(), t]; n]).unwrap()
    }

    #[test]
    fn zero_phases_correlate_perfectly() {
        for (n, tj) in [(3, 1), (4, 2), (5, 3)] {
            let s = identity(n, spin(tj));
            for t in SettingsTuple::all(n) {
                let c = correlator::<f64>(&s, &t).unwrap();
                assert!((c - Complex::new(1.0, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn three_qubit_first_correlator() {
        let s = optimal(3, spin(1), &[]);
        let c = correlator::<f64>(&s, &SettingsTuple::from_bits(&[0, 0, 0]).unwrap()).unwrap();
        assert!((c.re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(c.im.abs() < 1e-15);
    }

    #[test]
    fn three_qutrit_all_ones_correlator() {
        let zeros = [[RationalAngle::ZERO; 2], [RationalAngle::ZERO; 2], [RationalAngle::ZERO, RationalAngle::PI]];
        let s = optimal(3, spin(2), &zeros);
        let t = SettingsTuple::from_bits(&[1, 1, 1]).unwrap();
        let c = correlator::<f64>(&s, &t).unwrap();
        // m=±1: phase sum ±5π/4, m=0: π
        assert!((c.re - (-SQRT_2 - 1.0) / 3.0).abs() < 1e-15);
        let oracle = {
            let psi = StateVector::<f64>::ghz(3, spin(2), DEFAULT_DIMENSION_GUARD).unwrap();
            psi.inner(&psi.apply_setting(&s.operators(), &t).unwrap()).unwrap()
        };
        assert!((c - oracle).norm() < 1e-14);
    }

    #[test]
    fn three_qubit_maximum() {
        let s = optimal(3, spin(1), &[]);
        let a = expectation_analytic::<f64>(&s).unwrap();
        let o = expectation_oracle::<f64>(&s, DEFAULT_DIMENSION_GUARD).unwrap();
        assert!((a - 4.0 * SQRT_2).abs() < 1e-12);
        assert!((o - 4.0 * SQRT_2).abs() < 1e-9);
    }

    #[test]
    fn three_qutrit_value() {
        let zeros = [[RationalAngle::ZERO; 2], [RationalAngle::ZERO; 2], [RationalAngle::ZERO, RationalAngle::PI]];
        let s = optimal(3, spin(2), &zeros);
        let a = expectation_analytic::<f64>(&s).unwrap();
        assert!((a - 2.0 / 3.0 * (2.0 + 4.0 * SQRT_2)).abs() < 1e-12);
        assert!((a - expectation_oracle::<f64>(&s, DEFAULT_DIMENSION_GUARD).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn zero_phases_cancel() {
        // Σ_k C(3,k) v_k = 1 + 3 - 3 - 1
        let s = identity(3, spin(1));
        assert!(expectation_analytic::<f64>(&s).unwrap().abs() < 1e-15);
    }

    #[test]
    fn imaginary_residue_is_reported() {
        assert_eq!(real_part(Complex::new(1.0, 1e-11)).unwrap(), 1.0);
        assert!(matches!(real_part(Complex::new(1.0, 1e-9)), Err(Error::ImaginaryResidue(_))));
    }

    #[test]
    fn shape_checks() {
        let s = identity(3, spin(1));
        let t = SettingsTuple::from_bits(&[0, 1]).unwrap();
        assert!(matches!(correlator::<f64>(&s, &t), Err(Error::ShapeMismatch(_))));
        let big = identity(22, spin(1));
        assert!(matches!(
            expectation_oracle::<f64>(&big, DEFAULT_DIMENSION_GUARD),
            Err(Error::DimensionGuardExceeded { .. })
        ));
    }

    #[test]
    fn single_precision_agrees() {
        let s = optimal(4, spin(3), &[]);
        let a = expectation_analytic::<f32>(&s).unwrap();
        assert!((a - 8.0 * std::f32::consts::SQRT_2).abs() < 1e-4);
    }
}
