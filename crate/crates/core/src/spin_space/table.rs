use serde::{Deserialize, Serialize};

use super::{MagneticIndex, Phase, RationalAngle, SpinJ};
use crate::error::{Error, Result};

/// The phases of one measurement operator, one per magnetic index.
///
/// Antisymmetry `phase(-m) = -phase(m)` holds by construction, and for
/// integer spin the `m = 0` phase is exactly `0` or `π`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseTable {
    j: SpinJ,
    // basis order, index 0 is m = -j
    phases: Vec<Phase>,
}

fn check_zero_phase(j: SpinJ, zero: Option<RationalAngle>) -> Result<Option<RationalAngle>> {
    match (j.is_integer(), zero) {
        (false, Some(_)) => Err(Error::ZeroPhaseForbidden),
        (false, None) => Ok(None),
        (true, None) => Err(Error::MissingZeroPhase),
        (true, Some(z)) if z.is_zero() || z.is_pi() => Ok(Some(z)),
        (true, Some(z)) => Err(Error::IllegalZeroPhase(z.to_string())),
    }
}

impl PhaseTable {
    /// Builds a table from the phases of the positive `m` (in increasing
    /// order) and, for integer spin, the `m = 0` phase.
    pub fn new(j: SpinJ, upper: &[RationalAngle], zero: Option<RationalAngle>) -> Result<Self> {
        let upper: Vec<Phase> = upper.iter().copied().map(Phase::Exact).collect();
        Self::from_upper(j, &upper, zero)
    }

    /// Like [`PhaseTable::new`] with arbitrary real phases (radians) for `m > 0`.
    ///
    /// Tables built this way evaluate normally but cannot be checked against
    /// exact phase conditions or serialized.
    pub fn from_radians(j: SpinJ, upper: &[f64], zero: Option<RationalAngle>) -> Result<Self> {
        let upper: Vec<Phase> = upper.iter().copied().map(Phase::Radians).collect();
        Self::from_upper(j, &upper, zero)
    }

    /// Same phase for every `m > 0`.
    pub fn uniform(j: SpinJ, phase: RationalAngle, zero: Option<RationalAngle>) -> Result<Self> {
        Self::new(j, &vec![phase; j.positive_count()], zero)
    }

    /// All phases zero: the pure `|m> -> |-m>` exchange.
    pub fn identity(j: SpinJ) -> Self {
        let zero = j.is_integer().then_some(RationalAngle::ZERO);
        Self::uniform(j, RationalAngle::ZERO, zero).expect("zero phases are valid")
    }

    fn from_upper(j: SpinJ, upper: &[Phase], zero: Option<RationalAngle>) -> Result<Self> {
        if upper.len() != j.positive_count() {
            return Err(Error::WrongArity {
                expected: j.positive_count(),
                got: upper.len(),
            });
        }
        let zero = check_zero_phase(j, zero)?;
        let mut phases = Vec::with_capacity(j.dim());
        phases.extend(upper.iter().rev().map(|&p| -p));
        phases.extend(zero.map(Phase::Exact));
        phases.extend(upper.iter().copied());
        debug_assert_eq!(phases.len(), j.dim());
        Ok(PhaseTable { j, phases })
    }

    pub fn j(&self) -> SpinJ {
        self.j
    }

    pub fn phase(&self, m: MagneticIndex) -> Phase {
        self.phases[self.j.index_of(m)]
    }

    /// Phases in basis order (increasing `m`).
    pub fn phases(&self) -> &[Phase] {
        &self.phases
    }

    /// Every phase negated; antisymmetry and the `m = 0` restriction survive.
    pub fn negated(&self) -> PhaseTable {
        PhaseTable {
            j: self.j,
            phases: self.phases.iter().map(|&p| -p).collect(),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.phases.iter().all(|p| p.exact().is_some())
    }

    /// The `m >= 0` entries as JSON, or `None` when some phase is not exact.
    pub fn to_json(&self) -> Option<PhaseTableJson> {
        let phases = self
            .j
            .magnetic_indices()
            .filter(|m| m.twice() >= 0)
            .map(|m| {
                self.phase(m).exact().map(|a| PhaseEntryJson {
                    twice_m: m.twice(),
                    num: a.numerator(),
                    den: a.denominator(),
                })
            })
            .collect::<Option<Vec<_>>>()?;
        Some(PhaseTableJson {
            twice_j: self.j.twice(),
            phases,
        })
    }

    /// Validates a JSON table. Entries with `m < 0` are optional; when
    /// present they must be the negation of their `m > 0` partner.
    pub fn from_json(json: &PhaseTableJson) -> Result<Self, TableJsonError> {
        let issue = |twice_m: i32, reason: String| TableJsonError { twice_m, reason };
        let j = SpinJ::from_twice(json.twice_j).map_err(|e| issue(0, e.to_string()))?;
        let mut slots: Vec<Option<RationalAngle>> = vec![None; j.dim()];
        let mut negatives = Vec::new();
        for e in &json.phases {
            let m = j.m(e.twice_m).map_err(|err| issue(e.twice_m, err.to_string()))?;
            let angle = RationalAngle::new(e.num, e.den).map_err(|err| issue(e.twice_m, err.to_string()))?;
            if m.twice() < 0 {
                negatives.push((m, angle));
                continue;
            }
            let slot = &mut slots[j.index_of(m)];
            if slot.is_some() {
                return Err(issue(e.twice_m, "duplicate entry".into()));
            }
            *slot = Some(angle);
        }
        let mut upper = Vec::with_capacity(j.positive_count());
        for m in j.positive_indices() {
            upper.push(slots[j.index_of(m)].ok_or_else(|| issue(m.twice(), "missing phase".into()))?);
        }
        let zero = if j.is_integer() {
            let z = slots[j.index_of(j.m(0).expect("integer spin has m=0"))]
                .ok_or_else(|| issue(0, "missing phase".into()))?;
            Some(z)
        } else {
            None
        };
        let table = PhaseTable::new(j, &upper, zero).map_err(|err| issue(0, err.to_string()))?;
        for (m, angle) in negatives {
            let expected = table.phase(m).exact().expect("built from exact phases");
            if angle != expected {
                return Err(issue(
                    m.twice(),
                    format!("antisymmetry broken: phase({m}) = {angle}, expected {expected}"),
                ));
            }
        }
        Ok(table)
    }
}

/// JSON form of a [`PhaseTable`]: only `m >= 0` entries are required.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseTableJson {
    pub twice_j: u32,
    pub phases: Vec<PhaseEntryJson>,
}

/// One phase `(num/den)·π` at magnetic index `twice_m / 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseEntryJson {
    pub twice_m: i32,
    pub num: i64,
    pub den: i64,
}

/// Rejection of a JSON phase table, pinned to the offending `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct TableJsonError {
    pub twice_m: i32,
    pub reason: String,
}
