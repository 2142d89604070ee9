// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Rendering results as text or JSON. Agents are 1-based, goods by name.

use ef1reach::{Instance, Move, PathResult, SearchStats};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct MoveRecord {
    pub kind: &'static str,
    pub i: usize,
    pub j: usize,
    pub g: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<String>,
}

impl MoveRecord {
    pub fn new(inst: &Instance, mv: &Move) -> Self {
        match *mv {
            Move::Exchange { i, j, g, h } => MoveRecord {
                kind: "exchange",
                i: i + 1,
                j: j + 1,
                g: inst.good_name(g).to_string(),
                h: Some(inst.good_name(h).to_string()),
            },
            Move::Transfer { i, j, g } => MoveRecord {
                kind: "transfer",
                i: i + 1,
                j: j + 1,
                g: inst.good_name(g).to_string(),
                h: None,
            },
        }
    }

    pub fn text(&self) -> String {
        match &self.h {
            Some(h) => format!("exchange {} (agent {}) <-> {} (agent {})", self.g, self.i, h, self.j),
            None => format!("transfer {} from agent {} to agent {}", self.g, self.i, self.j),
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct StatsRecord {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub states: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expanded: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub candidate_checks: Option<usize>,
}

impl From<SearchStats> for StatsRecord {
    fn from(s: SearchStats) -> Self {
        StatsRecord {
            states: Some(s.states),
            expanded: Some(s.expanded),
            candidate_checks: None,
        }
    }
}

impl StatsRecord {
    fn text(&self) -> String {
        let parts: Vec<String> = [
            ("states", self.states),
            ("expanded", self.expanded),
            ("candidate checks", self.candidate_checks),
        ]
        .iter()
        .filter_map(|(k, v)| v.map(|v| format!("{k}: {v}")))
        .collect();
        parts.join(", ")
    }
}

/// The machine schema shared by path-producing commands.
#[derive(Debug, Clone, Serialize)]
pub struct PathReport {
    pub verdict: &'static str,
    pub length: Option<usize>,
    pub path: Vec<MoveRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stats: Option<StatsRecord>,
}

impl PathReport {
    pub fn from_result(inst: &Instance, r: &PathResult, stats: Option<SearchStats>) -> Self {
        let (verdict, length, path) = match r {
            PathResult::Found { path, length } => ("Found", Some(*length), path.as_slice()),
            PathResult::NotFound => ("NotFound", None, &[][..]),
            PathResult::BudgetExhausted => ("BudgetExhausted", None, &[][..]),
        };
        PathReport {
            verdict,
            length,
            path: path.iter().map(|m| MoveRecord::new(inst, m)).collect(),
            stats: stats.map(Into::into),
        }
    }

    pub fn from_moves(inst: &Instance, moves: &[Move], checks: usize) -> Self {
        PathReport {
            verdict: "Found",
            length: Some(moves.len()),
            path: moves.iter().map(|m| MoveRecord::new(inst, m)).collect(),
            stats: Some(StatsRecord {
                candidate_checks: Some(checks),
                ..StatsRecord::default()
            }),
        }
    }

    pub fn text(&self) -> String {
        let mut out = match self.length {
            Some(l) => format!("{} (length {l})\n", self.verdict),
            None => format!("{}\n", self.verdict),
        };
        for (k, m) in self.path.iter().enumerate() {
            out.push_str(&format!("{:>3}. {}\n", k + 1, m.text()));
        }
        if let Some(s) = &self.stats {
            out.push_str(&s.text());
            out.push('\n');
        }
        out
    }

    pub fn exit_code(&self) -> u8 {
        match self.verdict {
            "Found" => 0,
            "NotFound" => 1,
            _ => 3,
        }
    }
}
