//! Spin values, magnetic indices, exact angles and the antidiagonal
//! phase operators `|m> -> e^{i phase(m)} |-m>`.

mod angle;
mod operator;
mod table;

pub use angle::{Phase, RationalAngle};
pub use operator::{MeasurementOperator, HERMITIAN_TOL, INVOLUTION_TOL, SPECTRUM_TOL};
pub use table::{PhaseEntryJson, PhaseTable, PhaseTableJson};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A non-zero spin `j`, stored as `2j` so half-integers stay exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct SpinJ(u32);

impl SpinJ {
    pub fn from_twice(twice_j: u32) -> Result<Self> {
        if twice_j == 0 {
            return Err(Error::NonZeroSpinRequired);
        }
        Ok(SpinJ(twice_j))
    }

    pub fn twice(self) -> u32 {
        self.0
    }

    pub fn value(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    /// Fermionic spin.
    pub fn is_half_integer(self) -> bool {
        self.0 % 2 == 1
    }

    /// Bosonic spin.
    pub fn is_integer(self) -> bool {
        self.0.is_multiple_of(2)
    }

    /// Dimension `2j + 1` of the single-particle space.
    pub fn dim(self) -> usize {
        self.0 as usize + 1
    }

    /// Number of strictly positive `m` values.
    pub fn positive_count(self) -> usize {
        (self.0 as usize).div_ceil(2)
    }

    pub fn m(self, twice_m: i32) -> Result<MagneticIndex> {
        let tj = self.0 as i32;
        if twice_m.abs() > tj || (twice_m - tj) % 2 != 0 {
            return Err(Error::InvalidMagneticIndex {
                twice_j: self.0,
                twice_m,
            });
        }
        Ok(MagneticIndex(twice_m))
    }

    /// All magnetic indices `-j, -j+1, ..., j`, in basis order.
    pub fn magnetic_indices(self) -> impl DoubleEndedIterator<Item = MagneticIndex> + Clone {
        let tj = self.0 as i32;
        (0..=self.0 as i32).map(move |k| MagneticIndex(2 * k - tj))
    }

    /// The strictly positive magnetic indices in increasing order.
    pub fn positive_indices(self) -> impl Iterator<Item = MagneticIndex> + Clone {
        self.magnetic_indices().filter(|m| m.0 > 0)
    }

    /// Basis position of `m` (index 0 is `m = -j`).
    pub fn index_of(self, m: MagneticIndex) -> usize {
        ((m.0 + self.0 as i32) / 2) as usize
    }

    pub fn at_index(self, index: usize) -> MagneticIndex {
        MagneticIndex(2 * index as i32 - self.0 as i32)
    }
}

impl TryFrom<u32> for SpinJ {
    type Error = Error;

    fn try_from(twice_j: u32) -> Result<Self> {
        SpinJ::from_twice(twice_j)
    }
}

impl From<SpinJ> for u32 {
    fn from(j: SpinJ) -> u32 {
        j.0
    }
}

impl fmt::Display for SpinJ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Parses `"1"`, `"2"`, `"1/2"`, `"3/2"`; denominators other than 1 and 2 are rejected.
impl FromStr for SpinJ {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let malformed = || Error::MalformedSpin(s.to_string());
        let t = s.trim();
        let (p, q) = match t.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (t, "1"),
        };
        let p: u32 = p.parse().map_err(|_| malformed())?;
        let q: u32 = q.parse().map_err(|_| malformed())?;
        let twice = match q {
            1 => p.checked_mul(2).ok_or_else(malformed)?,
            2 => p,
            _ => return Err(malformed()),
        };
        SpinJ::from_twice(twice)
    }
}

/// A magnetic quantum number `m`, stored as `2m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MagneticIndex(i32);

impl MagneticIndex {
    pub fn twice(self) -> i32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl std::ops::Neg for MagneticIndex {
    type Output = MagneticIndex;

    fn neg(self) -> MagneticIndex {
        MagneticIndex(-self.0)
    }
}

impl fmt::Display for MagneticIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}
