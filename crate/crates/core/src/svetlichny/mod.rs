//! The Svetlichny functional `S_N = Σ_{x} v_k A^{(1)}_{x_1} ⋯ A^{(N)}_{x_N}`:
//! sign function, settings tuples, scenarios, expectation values and bounds.

mod eval;
mod report;
mod scenario;

pub use eval::{correlator, expectation_analytic, expectation_oracle, IMAGINARY_TOL};
pub use report::{SvetlichnyReport, VIOLATION_TOL};
pub use scenario::{PartyJson, Scenario, ScenarioJson};

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// `v_k = (-1)^{k(k-1)/2}`: `+1` for `k mod 4 ∈ {0, 1}`, `-1` otherwise.
pub fn sign_v(k: u64) -> i8 {
    match k % 4 {
        0 | 1 => 1,
        _ => -1,
    }
}

/// Measurement choices `(x_1, …, x_N)`, one bit per party.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SettingsTuple {
    // x_1 is the most significant of the low `len` bits
    mask: u64,
    len: usize,
}

impl SettingsTuple {
    pub const MAX_PARTIES: usize = 63;

    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        if bits.len() > Self::MAX_PARTIES {
            return Err(Error::ShapeMismatch(format!("at most {} parties", Self::MAX_PARTIES)));
        }
        let mut mask = 0u64;
        for &b in bits {
            if b > 1 {
                return Err(Error::ShapeMismatch(format!("setting {b} is not 0 or 1")));
            }
            mask = (mask << 1) | u64::from(b);
        }
        Ok(SettingsTuple { mask, len: bits.len() })
    }

    /// The `index`-th tuple in lexicographic order.
    pub fn from_index(index: u64, len: usize) -> Self {
        debug_assert!(len <= Self::MAX_PARTIES && index < (1u64 << len));
        SettingsTuple { mask: index, len }
    }

    /// All `2^n` tuples in lexicographic order.
    pub fn all(n: usize) -> impl DoubleEndedIterator<Item = SettingsTuple> + Clone {
        assert!(n <= Self::MAX_PARTIES, "too many parties");
        (0..1u64 << n).map(move |i| SettingsTuple::from_index(i, n))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Setting of `party` (0-based).
    pub fn bit(&self, party: usize) -> u8 {
        ((self.mask >> (self.len - 1 - party)) & 1) as u8
    }

    pub fn bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.bit(i)).collect()
    }

    pub fn index(&self) -> u64 {
        self.mask
    }

    /// Number of parties choosing setting 1.
    pub fn k(&self) -> u64 {
        u64::from(self.mask.count_ones())
    }

    /// `k mod 4`.
    pub fn residue(&self) -> u8 {
        (self.k() % 4) as u8
    }

    pub fn sign(&self) -> i8 {
        sign_v(self.k())
    }
}

impl fmt::Display for SettingsTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.bits() {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// Classical, quantum and fixed-sign bounds for `n` parties.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds<T> {
    /// `2^{n-1}`
    pub lhv: T,
    /// `2^{n-1}·√2`
    pub quantum: T,
    /// `√(2^{n+1})`
    pub fixed_sign: T,
}

pub fn bounds<T: Real>(n: usize) -> Result<Bounds<T>> {
    if n < 3 {
        return Err(Error::TooFewParties(n));
    }
    let two = T::lit(2.0);
    let lhv = two.powi(n as i32 - 1);
    Ok(Bounds {
        lhv,
        quantum: lhv * T::SQRT_2(),
        fixed_sign: two.powi(n as i32 + 1).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_function_small_k() {
        let got: Vec<i8> = (0..5).map(sign_v).collect();
        assert_eq!(got, vec![1, 1, -1, -1, 1]);
    }

    #[test]
    fn sign_function_matches_exponent_form() {
        for k in 0u64..=64 {
            let e = k * k.saturating_sub(1) / 2;
            let direct = if e % 2 == 0 { 1 } else { -1 };
            assert_eq!(sign_v(k), direct, "k={k}");
        }
        assert_eq!(sign_v(u64::MAX), sign_v(u64::MAX % 4));
    }

    #[test]
    fn tuple_basics() {
        let t = SettingsTuple::from_bits(&[1, 1, 0]).unwrap();
        assert_eq!(t.k(), 2);
        assert_eq!(t.residue(), 2);
        assert_eq!(t.bits(), vec![1, 1, 0]);
        assert_eq!(t.to_string(), "110");
        assert_eq!(SettingsTuple::from_bits(&[0, 0, 0]).unwrap().residue(), 0);
        assert_eq!(SettingsTuple::from_bits(&[1; 5]).unwrap().residue(), 1);
        assert!(SettingsTuple::from_bits(&[0, 2]).is_err());
    }

    #[test]
    fn enumeration_is_complete() {
        for n in 1..=10 {
            let all: Vec<_> = SettingsTuple::all(n).collect();
            assert_eq!(all.len(), 1 << n);
            let distinct: std::collections::HashSet<_> = all.iter().map(|t| t.bits()).collect();
            assert_eq!(distinct.len(), 1 << n);
        }
        // lexicographic: x_1 most significant
        let order: Vec<String> = SettingsTuple::all(2).map(|t| t.to_string()).collect();
        assert_eq!(order, vec!["00", "01", "10", "11"]);
    }

    #[test]
    fn bound_values() {
        let b = bounds::<f64>(3).unwrap();
        assert_eq!(b.lhv, 4.0);
        assert!((b.quantum - 4.0 * 2f64.sqrt()).abs() < 1e-15);
        assert!((b.fixed_sign - 4.0).abs() < 1e-15);
        let b = bounds::<f64>(4).unwrap();
        assert_eq!(b.lhv, 8.0);
        assert!((b.fixed_sign - 32f64.sqrt()).abs() < 1e-14);
        let b = bounds::<f64>(8).unwrap();
        assert_eq!(b.lhv, 128.0);
        assert!((b.quantum - 128.0 * 2f64.sqrt()).abs() < 1e-12);
        assert!((b.fixed_sign - 22.627417).abs() < 1e-6);
        assert_eq!(bounds::<f64>(2), Err(Error::TooFewParties(2)));
    }
}
