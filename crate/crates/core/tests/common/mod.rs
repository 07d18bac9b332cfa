#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use spin_svetlichny::{PhaseTable, RationalAngle, Scenario, SpinJ};

pub fn spin(twice_j: u32) -> SpinJ {
    SpinJ::from_twice(twice_j).unwrap()
}

pub fn random_angle(rng: &mut ChaCha8Rng) -> RationalAngle {
    let den = rng.random_range(1..=24);
    RationalAngle::pi_frac(rng.random_range(-2 * den..2 * den), den)
}

pub fn random_zero(rng: &mut ChaCha8Rng, j: SpinJ) -> Option<RationalAngle> {
    j.is_integer()
        .then(|| if rng.random_bool(0.5) { RationalAngle::PI } else { RationalAngle::ZERO })
}

/// Exact rational phases, independent per `m`.
pub fn random_table(rng: &mut ChaCha8Rng, j: SpinJ) -> PhaseTable {
    let upper: Vec<_> = (0..j.positive_count()).map(|_| random_angle(rng)).collect();
    let zero = random_zero(rng, j);
    PhaseTable::new(j, &upper, zero).unwrap()
}

/// Arbitrary real phases for `m > 0`.
pub fn random_real_table(rng: &mut ChaCha8Rng, j: SpinJ) -> PhaseTable {
    let upper: Vec<f64> = (0..j.positive_count())
        .map(|_| rng.random_range(-10.0..10.0))
        .collect();
    let zero = random_zero(rng, j);
    PhaseTable::from_radians(j, &upper, zero).unwrap()
}

/// Spins whose `n`-party space stays within `max_dim` amplitudes.
pub fn spins_within(n: usize, max_dim: u64) -> Vec<u32> {
    (1..=64u32)
        .filter(|&t| (u64::from(t) + 1).checked_pow(n as u32).is_some_and(|d| d <= max_dim))
        .collect()
}

pub fn random_scenario(rng: &mut ChaCha8Rng, n: usize, j: SpinJ, real_phases: bool) -> Scenario {
    let parties = (0..n)
        .map(|_| {
            let table = |rng: &mut ChaCha8Rng| {
                if real_phases && rng.random_bool(0.5) {
                    random_real_table(rng, j)
                } else {
                    random_table(rng, j)
                }
            };
            [table(rng), table(rng)]
        })
        .collect();
    Scenario::new(j, parties).unwrap()
}

/// Eigenvalues of an antidiagonal phase operator without an eigen-solver:
/// each `{m, -m}` pair is a 2×2 block `[[0, e^{-iφ}], [e^{iφ}, 0]]` with
/// spectrum `±1`, and the `m = 0` entry contributes `e^{iφ_0} = ±1`.
pub fn block_spectrum(table: &PhaseTable) -> Vec<f64> {
    let j = table.j();
    let mut values: Vec<f64> = j.positive_indices().flat_map(|_| [-1.0, 1.0]).collect();
    if let Ok(m0) = j.m(0) {
        values.push(table.phase(m0).radians::<f64>().cos().round());
    }
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    values
}
