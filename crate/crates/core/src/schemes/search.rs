//! Exhaustive search over the `m = 0` sign choices and the fixed-sign bound.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spin_space::RationalAngle;
use crate::svetlichny::{sign_v, SettingsTuple};

/// Largest `n` accepted by [`search_zero_signs`] (`2^{2n}` assignments).
pub const SEARCH_LIMIT: usize = 14;

/// Maximizing assignments kept in a [`SearchResult`]; the count is always exact.
pub const TIE_RETENTION: usize = 1 << 20;

/// `e^{i phase_0}` for every party and setting: `signs[i] = [s_0, s_1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignAssignment {
    signs: Vec<[i8; 2]>,
}

impl SignAssignment {
    pub fn new(signs: Vec<[i8; 2]>) -> Result<Self> {
        if signs.iter().flatten().any(|&s| s != 1 && s != -1) {
            return Err(Error::MalformedSigns("signs must be +1 or -1".into()));
        }
        Ok(SignAssignment { signs })
    }

    pub fn all_plus(n: usize) -> Self {
        SignAssignment { signs: vec![[1, 1]; n] }
    }

    /// Decodes the `code`-th assignment in lexicographic order of the
    /// textual form (`+` before `-`).
    pub fn from_code(code: u64, n: usize) -> Self {
        let signs = (0..n)
            .map(|p| {
                let shift = 2 * (n - 1 - p);
                let s0 = if (code >> (shift + 1)) & 1 == 1 { -1 } else { 1 };
                let s1 = if (code >> shift) & 1 == 1 { -1 } else { 1 };
                [s0, s1]
            })
            .collect();
        SignAssignment { signs }
    }

    pub fn code(&self) -> u64 {
        self.signs.iter().fold(0u64, |acc, [s0, s1]| {
            (acc << 2) | (u64::from(*s0 < 0) << 1) | u64::from(*s1 < 0)
        })
    }

    pub fn n_parties(&self) -> usize {
        self.signs.len()
    }

    pub fn signs(&self) -> &[[i8; 2]] {
        &self.signs
    }

    pub fn sign(&self, party: usize, setting: usize) -> i8 {
        self.signs[party][setting]
    }

    /// The `m = 0` phase realizing this sign: `0` for `+1`, `π` for `-1`.
    pub fn zero_phase(&self, party: usize, setting: usize) -> RationalAngle {
        if self.sign(party, setting) > 0 {
            RationalAngle::ZERO
        } else {
            RationalAngle::PI
        }
    }

    /// Negates both signs of one party.
    pub fn flip_party(&self, party: usize) -> Self {
        let mut signs = self.signs.clone();
        signs[party] = [-signs[party][0], -signs[party][1]];
        SignAssignment { signs }
    }

    /// `Σ_x v_k Π_i s^{(i)}_{x_i}` by direct enumeration of all `2^N` tuples.
    pub fn tuple_sum(&self) -> i64 {
        let n = self.n_parties();
        SettingsTuple::all(n)
            .map(|t| {
                let prod: i64 = (0..n).map(|p| i64::from(self.sign(p, t.bit(p) as usize))).product();
                i64::from(t.sign()) * prod
            })
            .sum()
    }

    /// Same sum, accumulated per residue class `k mod 4` one party at a time.
    pub fn residue_sum(&self) -> i64 {
        residue_sum_of_code(self.code(), self.n_parties())
    }
}

fn residue_sum_of_code(code: u64, n: usize) -> i64 {
    // classes[l] = Σ over partial tuples with k ≡ l (mod 4) of the sign product
    let mut classes = [1i64, 0, 0, 0];
    for p in 0..n {
        let shift = 2 * (n - 1 - p);
        let s0 = if (code >> (shift + 1)) & 1 == 1 { -1 } else { 1 };
        let s1 = if (code >> shift) & 1 == 1 { -1 } else { 1 };
        let prev = classes;
        for l in 0..4 {
            classes[l] = s0 * prev[l] + s1 * prev[(l + 3) % 4];
        }
    }
    (0..4).map(|l| i64::from(sign_v(l as u64)) * classes[l]).sum()
}

/// Lexicographic in the textual form, `+` before `-`.
impl Ord for SignAssignment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let key = |a: &SignAssignment| -> Vec<bool> { a.signs.iter().flatten().map(|&s| s < 0).collect() };
        key(self).cmp(&key(other))
    }
}

impl PartialOrd for SignAssignment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SignAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, [s0, s1]) in self.signs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            let c = |s: i8| if s > 0 { '+' } else { '-' };
            write!(f, "{}{}", c(*s0), c(*s1))?;
        }
        Ok(())
    }
}

/// Parses `"++,++,+-"`: one two-character group per party.
impl FromStr for SignAssignment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse = |c: char| match c {
            '+' => Ok(1),
            '-' => Ok(-1),
            other => Err(Error::MalformedSigns(format!("unexpected character `{other}` in `{s}`"))),
        };
        let signs = s
            .split(',')
            .map(|group| {
                let chars: Vec<char> = group.trim().chars().collect();
                match chars.as_slice() {
                    [a, b] => Ok([parse(*a)?, parse(*b)?]),
                    _ => Err(Error::MalformedSigns(format!("group `{group}` must have two signs"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        SignAssignment::new(signs)
    }
}

/// `f = Π_i (s_0^{(i)} + i·s_1^{(i)})`, exact over the Gaussian integers.
pub fn f_function(signs: &SignAssignment) -> Complex<i64> {
    signs
        .signs()
        .iter()
        .fold(Complex::new(1i64, 0), |acc, [s0, s1]| {
            acc * Complex::new(i64::from(*s0), i64::from(*s1))
        })
}

/// `value <= √(2^{n+1})`, decided exactly.
pub fn within_fixed_sign_bound(value: i64, n: usize) -> bool {
    value <= 0 || (value as i128).pow(2) <= 1i128 << (n + 1)
}

/// Outcome of the fixed-sign checks for one assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FixedSignCheck {
    pub tuple_sum: i64,
    pub f: Complex<i64>,
    /// `Re f + Im f == tuple_sum`
    pub identity_holds: bool,
    /// `|f|^2 == 2^n`
    pub modulus_holds: bool,
    pub within_bound: bool,
}

impl FixedSignCheck {
    pub fn of(signs: &SignAssignment) -> Self {
        let n = signs.n_parties();
        let tuple_sum = signs.tuple_sum();
        let f = f_function(signs);
        FixedSignCheck {
            tuple_sum,
            f,
            identity_holds: f.re + f.im == tuple_sum,
            modulus_holds: f.norm_sqr() == 1i64 << n,
            within_bound: within_fixed_sign_bound(tuple_sum, n),
        }
    }

    pub fn passed(&self) -> bool {
        self.identity_holds && self.modulus_holds && self.within_bound
    }
}

/// Tally of [`FixedSignCheck`] over every assignment for one `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FixedSignSummary {
    pub n: usize,
    pub checked: u64,
    pub identity_failures: u64,
    pub modulus_failures: u64,
    pub bound_failures: u64,
    pub max_tuple_sum: i64,
}

impl FixedSignSummary {
    pub fn passed(&self) -> bool {
        self.identity_failures == 0 && self.modulus_failures == 0 && self.bound_failures == 0
    }
}

/// Runs [`FixedSignCheck`] on all `2^{2n}` assignments.
pub fn verify_fixed_sign_bound(n: usize) -> Result<FixedSignSummary> {
    check_search_size(n)?;
    let total = 1u64 << (2 * n);
    let per = |code: u64| {
        let c = FixedSignCheck::of(&SignAssignment::from_code(code, n));
        (
            u64::from(!c.identity_holds),
            u64::from(!c.modulus_holds),
            u64::from(!c.within_bound),
            c.tuple_sum,
        )
    };
    let (identity_failures, modulus_failures, bound_failures, max_tuple_sum) = (0..total)
        .into_par_iter()
        .map(per)
        .reduce(
            || (0, 0, 0, i64::MIN),
            |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2, a.3.max(b.3)),
        );
    Ok(FixedSignSummary {
        n,
        checked: total,
        identity_failures,
        modulus_failures,
        bound_failures,
        max_tuple_sum,
    })
}

fn check_search_size(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::TooFewParties(n));
    }
    if n > SEARCH_LIMIT {
        return Err(Error::SearchGuardExceeded { n, limit: SEARCH_LIMIT });
    }
    Ok(())
}

/// Best `m = 0` sign choice found by exhaustive enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub n: usize,
    /// Exact maximum of `Σ_x v_k Π_i s^{(i)}_{x_i}`.
    pub best_value: i64,
    /// Maximizers in lexicographic order, at most [`TIE_RETENTION`] of them.
    pub best_assignments: Vec<SignAssignment>,
    /// Number of maximizers, including any not retained.
    pub tie_count: u64,
    pub evaluated_count: u64,
}

impl SearchResult {
    /// The lexicographically smallest maximizer.
    pub fn first(&self) -> &SignAssignment {
        &self.best_assignments[0]
    }

    pub fn to_json(&self) -> SearchResultJson {
        SearchResultJson {
            n: self.n,
            best_value: self.best_value,
            bound: (2f64).powi(self.n as i32 + 1).sqrt(),
            assignments: self.first().signs().to_vec(),
            evaluated: self.evaluated_count,
            ties: self.tie_count,
        }
    }
}

/// `{"n", "best_value", "bound", "assignments", "evaluated", "ties"}`;
/// `assignments` holds the lexicographically smallest maximizer as per-party pairs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResultJson {
    pub n: usize,
    pub best_value: i64,
    pub bound: f64,
    pub assignments: Vec<[i8; 2]>,
    pub evaluated: u64,
    pub ties: u64,
}

struct Partial {
    best: i64,
    ties: u64,
    codes: Vec<u64>,
}

impl Partial {
    fn empty() -> Self {
        Partial { best: i64::MIN, ties: 0, codes: Vec::new() }
    }

    fn push(&mut self, code: u64, value: i64) {
        if value > self.best {
            self.best = value;
            self.ties = 0;
            self.codes.clear();
        }
        if value == self.best {
            self.ties += 1;
            if self.codes.len() < TIE_RETENTION {
                self.codes.push(code);
            }
        }
    }

    // `later` covers strictly larger codes than `self`
    fn merge(mut self, later: Partial) -> Partial {
        if later.best > self.best {
            return later;
        }
        if later.best == self.best {
            self.ties += later.ties;
            let room = TIE_RETENTION - self.codes.len();
            self.codes.extend(later.codes.into_iter().take(room));
        }
        self
    }
}

/// Enumerates every one of the `2^{2n}` sign assignments.
///
/// The code space is split into contiguous blocks scanned in parallel and
/// merged in block order, so the maximum and tie set are deterministic.
pub fn search_zero_signs(n: usize) -> Result<SearchResult> {
    check_search_size(n)?;
    let total = 1u64 << (2 * n);
    let block = 1u64 << 12.min(2 * n);
    let best = (0..total / block)
        .into_par_iter()
        .map(|b| {
            let mut part = Partial::empty();
            for code in b * block..(b + 1) * block {
                part.push(code, residue_sum_of_code(code, n));
            }
            part
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Partial::empty(), Partial::merge);
    Ok(SearchResult {
        n,
        best_value: best.best,
        best_assignments: best.codes.iter().map(|&c| SignAssignment::from_code(c, n)).collect(),
        tie_count: best.ties,
        evaluated_count: total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn signs(s: &str) -> SignAssignment {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        let a = signs("++,++,+-");
        assert_eq!(a.signs(), &[[1, 1], [1, 1], [1, -1]]);
        assert_eq!(a.to_string(), "++,++,+-");
        assert!("++,+".parse::<SignAssignment>().is_err());
        assert!("++,+x".parse::<SignAssignment>().is_err());
        assert!(SignAssignment::new(vec![[1, 0]]).is_err());
    }

    #[test]
    fn codes_follow_text_order() {
        let n = 3;
        let texts: Vec<String> = (0..1u64 << (2 * n))
            .map(|c| SignAssignment::from_code(c, n).to_string())
            .collect();
        let mut sorted = texts.clone();
        sorted.sort();
        assert_eq!(texts, sorted);
        for c in 0..64 {
            assert_eq!(SignAssignment::from_code(c, n).code(), c);
        }
    }

    #[test]
    fn f_of_all_plus() {
        let a = SignAssignment::all_plus(3);
        assert_eq!(f_function(&a), Complex::new(-2, 2));
        assert_eq!(a.tuple_sum(), 0);
    }

    #[test]
    fn f_of_three_party_optimum() {
        let a = signs("++,++,+-");
        assert_eq!(f_function(&a), Complex::new(2, 2));
        assert_eq!(a.tuple_sum(), 4);
    }

    #[test]
    fn residue_accumulation_matches_enumeration() {
        for n in 1..=6 {
            for code in 0..1u64 << (2 * n) {
                let a = SignAssignment::from_code(code, n);
                assert_eq!(a.residue_sum(), a.tuple_sum(), "{a}");
            }
        }
    }

    #[test]
    fn exact_bound_test() {
        assert!(within_fixed_sign_bound(4, 3));
        assert!(!within_fixed_sign_bound(5, 3));
        assert!(within_fixed_sign_bound(5, 4)); // √32 ≈ 5.66
        assert!(!within_fixed_sign_bound(6, 4));
        assert!(within_fixed_sign_bound(-100, 3));
    }

    #[test]
    fn small_searches() {
        let r = search_zero_signs(3).unwrap();
        assert_eq!(r.best_value, 4);
        assert_eq!(r.evaluated_count, 64);
        assert_eq!(r.first().to_string(), "++,++,+-");
        assert_eq!(r.tie_count as usize, r.best_assignments.len());
        assert!(r.best_assignments.iter().all(|a| a.tuple_sum() == 4));
        assert!(r.best_assignments.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(search_zero_signs(4).unwrap().best_value, 4);
    }

    #[test]
    fn search_guards() {
        assert_eq!(
            search_zero_signs(15).unwrap_err(),
            Error::SearchGuardExceeded { n: 15, limit: SEARCH_LIMIT }
        );
        assert_eq!(search_zero_signs(2).unwrap_err(), Error::TooFewParties(2));
    }

    #[test]
    fn gauge_flip_negates() {
        let a = signs("+-,-+,++,--");
        for p in 0..4 {
            assert_eq!(a.flip_party(p).tuple_sum(), -a.tuple_sum());
            assert_eq!(a.flip_party(p).flip_party((p + 1) % 4).tuple_sum(), a.tuple_sum());
        }
    }

    #[test]
    fn json_shape() {
        let r = search_zero_signs(3).unwrap();
        let s = serde_json::to_string(&r.to_json()).unwrap();
        assert_eq!(
            s,
            r#"{"n":3,"best_value":4,"bound":4.0,"assignments":[[1,1],[1,1],[1,-1]],"evaluated":64,"ties":16}"#
        );
    }
}
