//! Inclusive `a..b` ranges for party counts and spins.

use std::str::FromStr;

use spin_svetlichny::SpinJ;

fn split(s: &str) -> (&str, &str) {
    s.split_once("..").unwrap_or((s, s))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartyRange {
    pub first: usize,
    pub last: usize,
}

impl PartyRange {
    pub fn iter(&self) -> impl Iterator<Item = usize> {
        self.first..=self.last
    }
}

impl FromStr for PartyRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = split(s);
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("malformed party count `{t}`"));
        let (first, last) = (parse(a)?, parse(b)?);
        if first > last {
            return Err(format!("empty range `{s}`"));
        }
        if first < 3 {
            return Err(format!("n must be ≥ 3, got {first}"));
        }
        Ok(PartyRange { first, last })
    }
}

/// Spins `j_0, j_0 + 1, …, j_1`; both ends must share parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpinRange {
    pub first: SpinJ,
    pub last: SpinJ,
}

impl SpinRange {
    pub fn iter(&self) -> impl Iterator<Item = SpinJ> {
        (self.first.twice()..=self.last.twice())
            .step_by(2)
            .map(|t| SpinJ::from_twice(t).expect("non-zero"))
    }
}

impl FromStr for SpinRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = split(s);
        let first: SpinJ = a.parse().map_err(|e: spin_svetlichny::Error| e.to_string())?;
        let last: SpinJ = b.parse().map_err(|e: spin_svetlichny::Error| e.to_string())?;
        if first > last {
            return Err(format!("empty range `{s}`"));
        }
        if first.is_integer() != last.is_integer() {
            return Err(format!("`{s}` mixes integer and half-integer spin"));
        }
        Ok(SpinRange { first, last })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn party_ranges() {
        assert_eq!("4..8".parse::<PartyRange>().unwrap().iter().count(), 5);
        assert_eq!("3".parse::<PartyRange>().unwrap().iter().collect::<Vec<_>>(), vec![3]);
        assert!("2".parse::<PartyRange>().unwrap_err().contains("n must be ≥ 3"));
        assert!("8..4".parse::<PartyRange>().is_err());
        assert!("a..4".parse::<PartyRange>().is_err());
    }

    #[test]
    fn spin_ranges() {
        let r: Vec<u32> = "1/2..5/2".parse::<SpinRange>().unwrap().iter().map(|j| j.twice()).collect();
        assert_eq!(r, vec![1, 3, 5]);
        let r: Vec<u32> = "1..10".parse::<SpinRange>().unwrap().iter().map(|j| j.twice()).collect();
        assert_eq!(r.len(), 10);
        assert!("1/2..3".parse::<SpinRange>().is_err());
        assert!("0..2".parse::<SpinRange>().is_err());
    }
}
