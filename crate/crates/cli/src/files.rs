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

//! JSON instance and allocation files.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use ef1reach::{normalize_instance, Allocation, Instance};
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

/// A utility entry: a bare integer or a `"p/q"` string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Int(i64),
    Text(String),
}

impl Value {
    fn to_ratio(&self) -> Result<Ratio<i64>> {
        match self {
            Value::Int(v) => Ok(Ratio::from_integer(*v)),
            Value::Text(s) => {
                let s = s.trim();
                if let Some((p, q)) = s.split_once('/') {
                    let p: i64 = p.trim().parse().with_context(|| format!("bad numerator in `{s}`"))?;
                    let q: i64 = q.trim().parse().with_context(|| format!("bad denominator in `{s}`"))?;
                    if q == 0 {
                        bail!("zero denominator in `{s}`");
                    }
                    Ok(Ratio::new(p, q))
                } else {
                    Ok(Ratio::from_integer(s.parse().with_context(|| format!("bad utility `{s}`"))?))
                }
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceFile {
    pub agents: usize,
    pub goods: Vec<String>,
    pub utilities: Vec<Vec<Value>>,
    /// With a single utility row, every agent shares it.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub identical: bool,
}

impl InstanceFile {
    pub fn to_instance(&self) -> Result<Instance> {
        let rows: Vec<Vec<Ratio<i64>>> = self
            .utilities
            .iter()
            .map(|row| row.iter().map(Value::to_ratio).collect())
            .collect::<Result<_>>()?;
        let rows = if self.identical {
            if rows.len() != 1 {
                bail!("`identical` needs exactly one utility row, got {}", rows.len());
            }
            vec![rows[0].clone(); self.agents]
        } else {
            rows
        };
        Ok(normalize_instance(self.agents, self.goods.clone(), &rows)?)
    }

    pub fn from_instance(inst: &Instance) -> Self {
        let rows = inst.rows();
        let identical = inst.is_identical();
        let utilities = if identical { &rows[..1] } else { rows };
        InstanceFile {
            agents: inst.agents(),
            goods: inst.good_names().to_vec(),
            utilities: utilities
                .iter()
                .map(|r| r.iter().map(|&u| Value::Int(u as i64)).collect())
                .collect(),
            identical,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AllocationFile {
    pub bundles: Vec<Vec<String>>,
}

impl AllocationFile {
    pub fn to_allocation(&self, inst: &Instance) -> Result<Allocation> {
        Ok(Allocation::from_named_bundles(inst, &self.bundles)?)
    }

    pub fn from_allocation(inst: &Instance, alloc: &Allocation) -> Self {
        AllocationFile {
            bundles: alloc
                .bundles()
                .iter()
                .map(|b| b.iter().map(|&g| inst.good_name(g).to_string()).collect())
                .collect(),
        }
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn load_instance(path: &Path) -> Result<Instance> {
    let file: InstanceFile = read_json(path)?;
    file.to_instance().with_context(|| format!("in {}", path.display()))
}

pub fn load_allocation(path: &Path, inst: &Instance) -> Result<Allocation> {
    let file: AllocationFile = read_json(path)?;
    file.to_allocation(inst).with_context(|| format!("in {}", path.display()))
}

/// Writes pretty JSON with a trailing newline.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}
