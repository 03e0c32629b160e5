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

//! Machine-readable solve reports.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use hsfm_core::{GroundSet, Subset, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Optimal,
    AllMinimal,
}

/// Output of `solve`. `sets` holds one set in optimal mode and every
/// minimal optimal set otherwise, each as a list of labels.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub value: Value,
    pub sets: Vec<Vec<String>>,
    pub mode: Mode,
    pub adapter: String,
    pub oracle_calls: u64,
    pub wall_ms: f64,
}

pub fn label_sets(ground: &GroundSet, sets: &[Subset]) -> Vec<Vec<String>> {
    sets.iter().map(|s| ground.names(s)).collect()
}

/// Resolves label lists back to subsets; unknown labels are reported by name.
pub fn parse_sets(ground: &GroundSet, sets: &[Vec<String>]) -> Result<Vec<Subset>, String> {
    let mut out = Vec::with_capacity(sets.len());
    for names in sets {
        let mut s = Subset::empty(ground.len());
        for name in names {
            let i = ground
                .index_of(name)
                .ok_or_else(|| format!("unknown element {name:?}"))?;
            s.insert(i);
        }
        out.push(s);
    }
    out.sort();
    Ok(out)
}

pub fn braces(names: &[String]) -> String {
    format!("{{{}}}", names.join(", "))
}

impl Report {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "value: {}", self.value);
        for s in &self.sets {
            let _ = writeln!(out, "set: {}", braces(s));
        }
        let _ = writeln!(out, "adapter: {}", self.adapter);
        let _ = writeln!(out, "oracle_calls: {}", self.oracle_calls);
        let _ = writeln!(out, "wall_ms: {:.3}", self.wall_ms);
        out
    }
}
