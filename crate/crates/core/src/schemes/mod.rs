//! Phase schemes that reach the quantum maximum for half-integer spin and
//! violate the classical bound for integer spin.

mod search;

pub use search::{
    f_function, search_zero_signs, verify_fixed_sign_bound, within_fixed_sign_bound, FixedSignCheck,
    FixedSignSummary, SearchResult, SearchResultJson, SignAssignment, SEARCH_LIMIT, TIE_RETENTION,
};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spin_space::{MagneticIndex, Phase, PhaseTable, RationalAngle, SpinJ};
use crate::svetlichny::{Scenario, SettingsTuple};

/// The uniform `m > 0` phases: party 1 gets `(-π/4, π/4)`, every later
/// party `(0, π/2)`.
pub fn upper_phases(party: usize) -> [RationalAngle; 2] {
    if party == 0 {
        [RationalAngle::pi_frac(-1, 4), RationalAngle::pi_frac(1, 4)]
    } else {
        [RationalAngle::ZERO, RationalAngle::pi_frac(1, 2)]
    }
}

fn build(n: usize, j: SpinJ, zero: impl Fn(usize, usize) -> Option<RationalAngle>) -> Result<Scenario> {
    if n < 3 {
        return Err(Error::TooFewParties(n));
    }
    let parties = (0..n)
        .map(|p| {
            let [a, b] = upper_phases(p);
            Ok([
                PhaseTable::uniform(j, a, zero(p, 0))?,
                PhaseTable::uniform(j, b, zero(p, 1))?,
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    Scenario::new(j, parties)
}

/// Half-integer spin scheme; its expectation is `2^{n-1}·√2`.
pub fn fermion_scheme(n: usize, j: SpinJ) -> Result<Scenario> {
    if !j.is_half_integer() {
        return Err(Error::NotHalfInteger);
    }
    build(n, j, |_, _| None)
}

/// Integer spin scheme: the `m != 0` phases of [`fermion_scheme`], and
/// `m = 0` phases `0`/`π` following `zero_signs`.
pub fn boson_scheme(n: usize, j: SpinJ, zero_signs: &SignAssignment) -> Result<Scenario> {
    if !j.is_integer() {
        return Err(Error::NotInteger);
    }
    if zero_signs.n_parties() != n {
        return Err(Error::ShapeMismatch(format!(
            "{} sign pairs for {n} parties",
            zero_signs.n_parties()
        )));
    }
    build(n, j, |p, s| Some(zero_signs.zero_phase(p, s)))
}

/// The best scheme for `(n, j)`: [`fermion_scheme`] for half-integer spin,
/// otherwise [`boson_scheme`] with the lexicographically smallest maximizing
/// sign assignment (the search result is returned alongside).
pub fn optimal_scheme(n: usize, j: SpinJ) -> Result<(Scenario, Option<SearchResult>)> {
    if j.is_half_integer() {
        return Ok((fermion_scheme(n, j)?, None));
    }
    let search = search_zero_signs(n)?;
    let scenario = boson_scheme(n, j, search.first())?;
    Ok((scenario, Some(search)))
}

/// `k mod 4` of a settings tuple.
pub fn residue_class(tuple: &SettingsTuple) -> u8 {
    tuple.residue()
}

/// Required phase sum for residue class `l`: `-π/4, π/4, 3π/4, 5π/4`.
pub fn condition_target(residue: u8) -> RationalAngle {
    RationalAngle::pi_frac(2 * i64::from(residue) - 1, 4)
}

/// True iff, at `m`, every tuple's phase sum equals its residue-class
/// target exactly (mod `2π`).
pub fn verify_condition(scenario: &Scenario, m: MagneticIndex) -> Result<bool> {
    let j = scenario.j();
    let m = j.m(m.twice())?;
    if m.twice() <= 0 {
        return Err(Error::InvalidMagneticIndex {
            twice_j: j.twice(),
            twice_m: m.twice(),
        });
    }
    let n = scenario.n_parties();
    let mut phases = Vec::with_capacity(n);
    for party in 0..n {
        let mut pair = [RationalAngle::ZERO; 2];
        for (setting, slot) in pair.iter_mut().enumerate() {
            *slot = match scenario.table(party, setting).phase(m) {
                Phase::Exact(a) => a,
                Phase::Radians(_) => {
                    return Err(Error::NonRationalPhase {
                        party,
                        setting,
                        twice_m: m.twice(),
                    })
                }
            };
        }
        phases.push(pair);
    }
    Ok(SettingsTuple::all(n).all(|t| {
        let sum: RationalAngle = (0..n).map(|p| phases[p][t.bit(p) as usize]).sum();
        sum == condition_target(t.residue())
    }))
}

/// Value of the scheme for `(n, j)`: `2^{n-1}√2` for half-integer spin,
/// `(2^{n-1}·2√2·j + M)/(2j+1)` for integer spin, `M` being the best
/// `m = 0` sign sum.
pub fn predicted_max<T: Real>(n: usize, j: SpinJ, m_zero_max: Option<i64>) -> Result<T> {
    if n < 3 {
        return Err(Error::TooFewParties(n));
    }
    let half_n = T::lit(2.0).powi(n as i32 - 1);
    if j.is_half_integer() {
        return Ok(half_n * T::SQRT_2());
    }
    let m0 = m_zero_max.ok_or(Error::MissingSearchValue)?;
    let jv = T::from_u32(j.twice()).expect("small spin") / T::lit(2.0);
    let m0 = T::from_i64(m0).expect("small sum");
    Ok((half_n * T::lit(2.0) * T::SQRT_2() * jv + m0) / (T::lit(2.0) * jv + T::one()))
}
