use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spin_space::{MeasurementOperator, PhaseTable, PhaseTableJson, SpinJ};

/// `N >= 3` observers, each with two measurement settings, sharing spin `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    j: SpinJ,
    parties: Vec<[PhaseTable; 2]>,
}

impl Scenario {
    pub fn new(j: SpinJ, parties: Vec<[PhaseTable; 2]>) -> Result<Self> {
        if parties.len() < 3 {
            return Err(Error::TooFewParties(parties.len()));
        }
        for (party, pair) in parties.iter().enumerate() {
            for (setting, table) in pair.iter().enumerate() {
                if table.j() != j {
                    return Err(Error::InvalidScenario(format!(
                        "party {party}, setting {setting} has spin {}, expected {j}",
                        table.j()
                    )));
                }
            }
        }
        Ok(Scenario { j, parties })
    }

    pub fn n_parties(&self) -> usize {
        self.parties.len()
    }

    pub fn j(&self) -> SpinJ {
        self.j
    }

    pub fn parties(&self) -> &[[PhaseTable; 2]] {
        &self.parties
    }

    pub fn table(&self, party: usize, setting: usize) -> &PhaseTable {
        &self.parties[party][setting]
    }

    pub fn operators<T: Real>(&self) -> Vec<[MeasurementOperator<T>; 2]> {
        self.parties
            .iter()
            .map(|[a, b]| [MeasurementOperator::from_table(a), MeasurementOperator::from_table(b)])
            .collect()
    }

    /// The same scenario with every phase negated.
    pub fn conjugated(&self) -> Scenario {
        Scenario {
            j: self.j,
            parties: self.parties.iter().map(|[a, b]| [a.negated(), b.negated()]).collect(),
        }
    }

    pub fn to_json(&self) -> Result<ScenarioJson> {
        let mut parties = Vec::with_capacity(self.parties.len());
        for (party, pair) in self.parties.iter().enumerate() {
            let encode = |setting: usize| {
                let table = &pair[setting];
                table.to_json().ok_or_else(|| {
                    let m = self
                        .j
                        .magnetic_indices()
                        .find(|&m| table.phase(m).exact().is_none())
                        .expect("some phase is inexact");
                    Error::NonRationalPhase {
                        party,
                        setting,
                        twice_m: m.twice(),
                    }
                })
            };
            parties.push(PartyJson {
                setting0: encode(0)?,
                setting1: encode(1)?,
            });
        }
        Ok(ScenarioJson {
            n: self.parties.len(),
            twice_j: self.j.twice(),
            parties,
        })
    }

    pub fn from_json(json: &ScenarioJson) -> Result<Self> {
        let j = SpinJ::from_twice(json.twice_j)?;
        if json.parties.len() != json.n {
            return Err(Error::InvalidScenario(format!(
                "n = {} but {} parties listed",
                json.n,
                json.parties.len()
            )));
        }
        let mut parties = Vec::with_capacity(json.n);
        for (party, p) in json.parties.iter().enumerate() {
            let decode = |setting: usize, t: &PhaseTableJson| {
                if t.twice_j != json.twice_j {
                    return Err(Error::InvalidScenario(format!(
                        "party {party}, setting {setting} has twice_j {}, expected {}",
                        t.twice_j, json.twice_j
                    )));
                }
                PhaseTable::from_json(t).map_err(|e| Error::ScenarioParse {
                    party,
                    setting,
                    twice_m: e.twice_m,
                    reason: e.reason,
                })
            };
            parties.push([decode(0, &p.setting0)?, decode(1, &p.setting1)?]);
        }
        Scenario::new(j, parties)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let json: ScenarioJson = serde_json::from_str(s)?;
        Scenario::from_json(&json)
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_json()?)?)
    }
}

/// `{"n", "twice_j", "parties": [{"setting0", "setting1"}, …]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioJson {
    pub n: usize,
    pub twice_j: u32,
    pub parties: Vec<PartyJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartyJson {
    pub setting0: PhaseTableJson,
    pub setting1: PhaseTableJson,
}
