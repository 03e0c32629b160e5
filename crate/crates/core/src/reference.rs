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

//! Exhaustive reference oracles and seeded instance generation.
//!
//! Nothing here goes through the solver's contraction machinery, so a bug
//! there cannot hide behind a matching bug here.

use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::contraction::ContractedSystem;
use crate::error::{Error, Result};
use crate::instance::{
    EdgeSpec, FamilySpec, FunctionSpec, GraphSpec, GroundSetSpec, HyperedgeSpec, Instance, MatroidSpec,
};
use crate::oracle::{Family, SetFunction};
use crate::subset::Subset;
use crate::value::Value;

pub const BRUTE_FORCE_CAP: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteForceReport {
    pub min_value: Value,
    /// Sorted.
    pub minimizers: Vec<Subset>,
    /// Sorted.
    pub minimal_minimizers: Vec<Subset>,
}

/// Scans every nonempty feasible set.
pub fn brute_force(f: &dyn SetFunction, family: &dyn Family) -> Result<BruteForceReport> {
    let n = f.universe_size();
    if family.universe_size() != n {
        return Err(Error::UniverseMismatch {
            expected: n,
            found: family.universe_size(),
        });
    }
    if n > BRUTE_FORCE_CAP {
        return Err(Error::TooLarge {
            n,
            cap: BRUTE_FORCE_CAP,
        });
    }
    let mut best: Option<Value> = None;
    let mut masks: Vec<u64> = Vec::new();
    for mask in 1u64..(1u64 << n) {
        let set = Subset::from_bits(n, mask);
        if !family.contains(&set) {
            continue;
        }
        let v = f.evaluate(&set);
        match best {
            Some(b) if v > b => {}
            Some(b) if v == b => masks.push(mask),
            _ => {
                best = Some(v);
                masks.clear();
                masks.push(mask);
            }
        }
    }
    let min_value = best.ok_or(Error::Infeasible)?;
    let minimal: Vec<u64> = masks
        .iter()
        .copied()
        .filter(|&m| !masks.iter().any(|&o| o != m && o & m == o))
        .collect();
    let to_sets = |ms: &[u64]| {
        let mut v: Vec<Subset> = ms.iter().map(|&m| Subset::from_bits(n, m)).collect();
        v.sort();
        v
    };
    Ok(BruteForceReport {
        min_value,
        minimizers: to_sets(&masks),
        minimal_minimizers: to_sets(&minimal),
    })
}

/// Checks that `u` alone is a cheapest set of current elements containing `u`
/// but not `t`.
pub fn certify_pendant_pair(sys: &ContractedSystem, t: usize, u: usize) -> Result<bool> {
    let current = sys.current();
    if current.len() > BRUTE_FORCE_CAP {
        return Err(Error::TooLarge {
            n: current.len(),
            cap: BRUTE_FORCE_CAP,
        });
    }
    for v in [t, u] {
        if !sys.is_current(v) {
            return Err(Error::UnknownElement(v));
        }
    }
    let others: Vec<usize> = current.into_iter().filter(|&v| v != t && v != u).collect();
    let base = sys.evaluate(&[u]);
    for mask in 1u64..(1u64 << others.len()) {
        let mut ids = vec![u];
        ids.extend((0..others.len()).filter(|i| mask >> i & 1 == 1).map(|i| others[i]));
        if sys.evaluate(&ids) < base {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FunctionClass {
    GraphCut,
    HypergraphCut,
    /// Graph cut plus nonnegative modular weights, solved by antirestriction.
    CutPlusModular,
    /// Boundary function of a connected graph's shortest-path distances.
    DistanceBoundary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyClass {
    Cardinality,
    Knapsack,
    PartitionMatroid,
    GraphicMatroid,
    Forbidden,
    Intersection,
    Exclude,
}

impl FunctionClass {
    pub const ALL: [FunctionClass; 4] = [
        FunctionClass::GraphCut,
        FunctionClass::HypergraphCut,
        FunctionClass::CutPlusModular,
        FunctionClass::DistanceBoundary,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FunctionClass::GraphCut => "graph_cut",
            FunctionClass::HypergraphCut => "hypergraph_cut",
            FunctionClass::CutPlusModular => "modular_offset",
            FunctionClass::DistanceBoundary => "distance_boundary",
        }
    }
}

impl FamilyClass {
    pub const ALL: [FamilyClass; 7] = [
        FamilyClass::Cardinality,
        FamilyClass::Knapsack,
        FamilyClass::PartitionMatroid,
        FamilyClass::GraphicMatroid,
        FamilyClass::Forbidden,
        FamilyClass::Intersection,
        FamilyClass::Exclude,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyClass::Cardinality => "cardinality",
            FamilyClass::Knapsack => "knapsack",
            FamilyClass::PartitionMatroid => "partition",
            FamilyClass::GraphicMatroid => "graphic",
            FamilyClass::Forbidden => "forbidden",
            FamilyClass::Intersection => "intersection",
            FamilyClass::Exclude => "exclude",
        }
    }
}

impl FromStr for FunctionClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidInstance(format!("unknown function class {s:?}")))
    }
}

impl FromStr for FamilyClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidInstance(format!("unknown family class {s:?}")))
    }
}

fn weight(rng: &mut ChaCha8Rng, positive: bool) -> Value {
    let q = rng.gen_range(1..=3);
    let p = rng.gen_range(if positive { 1 } else { 0 }..=6);
    Value::new(p, q).expect("nonzero denominator")
}

fn random_edges(rng: &mut ChaCha8Rng, n: usize) -> Vec<EdgeSpec> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.5) {
                edges.push((u, v, weight(rng, false)));
            }
        }
    }
    edges
}

fn random_function(rng: &mut ChaCha8Rng, n: usize, class: FunctionClass) -> FunctionSpec {
    match class {
        FunctionClass::GraphCut => FunctionSpec::GraphCut {
            edges: random_edges(rng, n),
        },
        FunctionClass::HypergraphCut => {
            let m = rng.gen_range(1..=n + 2);
            let mut all: Vec<usize> = (0..n).collect();
            let hyperedges = (0..m)
                .map(|_| {
                    let size = rng.gen_range(2..=n.min(4));
                    all.shuffle(rng);
                    let mut members = all[..size].to_vec();
                    members.sort_unstable();
                    HyperedgeSpec {
                        members,
                        w: weight(rng, false),
                    }
                })
                .collect();
            FunctionSpec::HypergraphCut { hyperedges }
        }
        FunctionClass::CutPlusModular => {
            let base = Box::new(FunctionSpec::GraphCut {
                edges: random_edges(rng, n),
            });
            let weights = (0..n)
                .map(|_| {
                    if rng.gen_bool(0.5) {
                        weight(rng, false)
                    } else {
                        Value::ZERO
                    }
                })
                .collect();
            FunctionSpec::ModularOffset { base, weights }
        }
        FunctionClass::DistanceBoundary => {
            let mut edges = Vec::new();
            for v in 1..n {
                edges.push((rng.gen_range(0..v), v, weight(rng, true)));
            }
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.25) {
                        edges.push((u, v, weight(rng, true)));
                    }
                }
            }
            FunctionSpec::DistanceBoundary {
                graph: GraphSpec { edges },
            }
        }
    }
}

fn random_family(rng: &mut ChaCha8Rng, n: usize, class: FamilyClass) -> FamilySpec {
    match class {
        FamilyClass::Cardinality => FamilySpec::Cardinality { k: rng.gen_range(1..n) },
        FamilyClass::Knapsack => {
            let weights = (0..n)
                .map(|_| {
                    let q = rng.gen_range(1..=4);
                    Value::new(rng.gen_range(1..=q), q).expect("nonzero denominator")
                })
                .collect();
            FamilySpec::Knapsack {
                weights,
                budget: Value::ONE,
            }
        }
        FamilyClass::PartitionMatroid => {
            let b = rng.gen_range(1..=n.min(3));
            let mut blocks = vec![Vec::new(); b];
            for v in 0..n {
                blocks[rng.gen_range(0..b)].push(v);
            }
            let capacities = blocks.iter().map(|blk| rng.gen_range(0..=blk.len())).collect();
            FamilySpec::Matroid(MatroidSpec::Partition { blocks, capacities })
        }
        FamilyClass::GraphicMatroid => {
            let vertex_count = rng.gen_range(2..=n);
            let edges = (0..n)
                .map(|_| {
                    let u = rng.gen_range(0..vertex_count);
                    let v = (u + rng.gen_range(1..vertex_count)) % vertex_count;
                    (u.min(v), u.max(v))
                })
                .collect();
            FamilySpec::Matroid(MatroidSpec::Graphic { vertex_count, edges })
        }
        FamilyClass::Forbidden => {
            let count = rng.gen_range(1..=3);
            let mut all: Vec<usize> = (0..n).collect();
            let obstructions = (0..count)
                .map(|_| {
                    let size = rng.gen_range(1..=n.min(3));
                    all.shuffle(rng);
                    let mut o = all[..size].to_vec();
                    o.sort_unstable();
                    o
                })
                .collect();
            FamilySpec::Forbidden { obstructions }
        }
        FamilyClass::Intersection => {
            let simple = [
                FamilyClass::Cardinality,
                FamilyClass::Knapsack,
                FamilyClass::PartitionMatroid,
                FamilyClass::Forbidden,
            ];
            let parts = (0..2)
                .map(|_| {
                    let class = *simple.choose(rng).expect("nonempty");
                    random_family(rng, n, class)
                })
                .collect();
            FamilySpec::Intersection { parts }
        }
        FamilyClass::Exclude => FamilySpec::Exclude { s: rng.gen_range(0..n) },
    }
}

fn usable(family: &FamilySpec, n: usize) -> bool {
    let Ok(fam) = family.build(n) else { return false };
    !fam.contains(&Subset::full(n)) && (0..n).any(|v| fam.contains(&Subset::singleton(n, v)))
}

/// Deterministic from `seed`. Families are redrawn until `V` is infeasible
/// and some singleton is feasible.
pub fn random_instance(seed: u64, n: usize, function: FunctionClass, family: FamilyClass) -> Result<Instance> {
    if n < 2 {
        return Err(Error::TooFewElements { needed: 2, found: n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let function = random_function(&mut rng, n, function);
    let family = loop {
        let candidate = random_family(&mut rng, n, family);
        if usable(&candidate, n) {
            break candidate;
        }
    };
    Ok(Instance {
        ground_set: GroundSetSpec { n, labels: None },
        function,
        family,
        expected: None,
    })
}
