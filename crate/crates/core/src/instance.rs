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

//! JSON instance files.
//!
//! ```json
//! {
//!   "ground_set": { "n": 3, "labels": ["a", "b", "c"] },
//!   "function": { "type": "graph_cut", "edges": [[0, 1, "1"], [1, 2, "1"]] },
//!   "family": { "type": "cardinality", "k": 2 }
//! }
//! ```
//!
//! Weights are exact rationals written as `"p/q"` strings; plain integers
//! are accepted on input. Elements are referred to by index.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{
    CardinalityFamily, DynFamily, ExcludeElementFamily, ForbiddenSubsetsFamily, IntersectionFamily, KnapsackFamily,
    MatroidFamily,
};
use crate::functions::{
    add_modular, boundary_function, graph_cut, hypergraph_cut, shortest_path_distance_map, table_function,
    ExplicitTable, ShortestPathMap, WeightedGraph, WeightedHypergraph,
};
use crate::oracle::{Family, SetFunction};
use crate::ordering::PairRule;
use crate::solver::{
    find_minimals, find_minimals_posimodular, find_optimal, find_optimal_posimodular, Solution, SolutionFamily,
};
use crate::subset::GroundSet;
use crate::value::Value;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Instance {
    pub ground_set: GroundSetSpec,
    pub function: FunctionSpec,
    pub family: FamilySpec,
    /// Known answer, checked by `verify`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroundSetSpec {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

pub type EdgeSpec = (usize, usize, Value);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum FunctionSpec {
    GraphCut {
        edges: Vec<EdgeSpec>,
    },
    HypergraphCut {
        hyperedges: Vec<HyperedgeSpec>,
    },
    Table {
        values: Vec<Value>,
    },
    ModularOffset {
        base: Box<FunctionSpec>,
        weights: Vec<Value>,
    },
    DistanceBoundary {
        graph: GraphSpec,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HyperedgeSpec {
    pub members: Vec<usize>,
    pub w: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSpec {
    pub edges: Vec<EdgeSpec>,
}

fn unit_budget() -> Value {
    Value::ONE
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum FamilySpec {
    Cardinality {
        k: usize,
    },
    Knapsack {
        weights: Vec<Value>,
        #[serde(default = "unit_budget")]
        budget: Value,
    },
    Matroid(MatroidSpec),
    Forbidden {
        obstructions: Vec<Vec<usize>>,
    },
    Exclude {
        s: usize,
    },
    Intersection {
        parts: Vec<FamilySpec>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MatroidSpec {
    Uniform {
        k: usize,
    },
    Partition {
        blocks: Vec<Vec<usize>>,
        capacities: Vec<usize>,
    },
    Graphic {
        vertex_count: usize,
        edges: Vec<(usize, usize)>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    pub value: Value,
    /// Minimal optimal sets by label.
    pub sets: Vec<Vec<String>>,
}

/// Which pendant-pair procedure to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Adapter {
    /// Max-back for distance-induced functions, antirestriction for modular
    /// offsets, Queyranne otherwise.
    Auto,
    Queyranne,
    Rizzi,
}

impl std::str::FromStr for Adapter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Adapter::Auto),
            "queyranne" => Ok(Adapter::Queyranne),
            "rizzi" => Ok(Adapter::Rizzi),
            _ => Err(Error::InvalidInstance(format!("unknown adapter {s:?}"))),
        }
    }
}

#[derive(Clone)]
pub enum Route {
    Queyranne,
    MaxBack(Arc<ShortestPathMap>),
    Antirestriction,
}

impl Route {
    pub fn name(&self) -> &'static str {
        match self {
            Route::Queyranne => "queyranne",
            Route::MaxBack(_) => "rizzi",
            Route::Antirestriction => "antirestriction",
        }
    }
}

pub type DynFunction = Arc<dyn SetFunction + Send + Sync>;

/// A parsed instance with live oracles.
pub struct Problem {
    pub ground: GroundSet,
    pub function: DynFunction,
    pub family: Arc<dyn Family + Send + Sync>,
    /// Route picked by [`Adapter::Auto`].
    pub route: Route,
}

impl Instance {
    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Canonical formatting: pretty-printed with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instances always serialize");
        s.push('\n');
        s
    }

    pub fn ground(&self) -> Result<GroundSet> {
        match &self.ground_set.labels {
            None => GroundSet::new(self.ground_set.n),
            Some(labels) => {
                if labels.len() != self.ground_set.n {
                    return Err(Error::InvalidGroundSet(format!(
                        "{} labels for {} elements",
                        labels.len(),
                        self.ground_set.n
                    )));
                }
                GroundSet::with_labels(labels.clone())
            }
        }
    }

    pub fn build(&self) -> Result<Problem> {
        let ground = self.ground()?;
        let n = ground.len();
        let (function, map) = self.function.build(n)?;
        let family: Arc<dyn Family + Send + Sync> = Arc::from(self.family.build(n)?);
        let route = match (&self.function, map) {
            (FunctionSpec::DistanceBoundary { .. }, Some(d)) => Route::MaxBack(d),
            (FunctionSpec::ModularOffset { .. }, _) => Route::Antirestriction,
            _ => Route::Queyranne,
        };
        Ok(Problem {
            ground,
            function,
            family,
            route,
        })
    }
}

fn check_len(what: &str, len: usize, n: usize) -> Result<()> {
    if len != n {
        return Err(Error::InvalidInstance(format!(
            "{what} has {len} entries, expected {n}"
        )));
    }
    Ok(())
}

impl FunctionSpec {
    /// Builds the oracle, plus the distance map when the function is
    /// distance-induced.
    pub fn build(&self, n: usize) -> Result<(DynFunction, Option<Arc<ShortestPathMap>>)> {
        Ok(match self {
            FunctionSpec::GraphCut { edges } => (Arc::new(graph_cut(&WeightedGraph::new(n, edges.clone())?)), None),
            FunctionSpec::HypergraphCut { hyperedges } => {
                let h = WeightedHypergraph::new(n, hyperedges.iter().map(|e| (e.members.clone(), e.w)).collect())?;
                (Arc::new(hypergraph_cut(&h)), None)
            }
            FunctionSpec::Table { values } => (Arc::new(table_function(ExplicitTable::new(n, values.clone())?)), None),
            FunctionSpec::ModularOffset { base, weights } => {
                check_len("modular weights", weights.len(), n)?;
                let (base, _) = base.build(n)?;
                (Arc::new(add_modular(base, weights)?), None)
            }
            FunctionSpec::DistanceBoundary { graph } => {
                let d = Arc::new(shortest_path_distance_map(&WeightedGraph::new(
                    n,
                    graph.edges.clone(),
                )?)?);
                (Arc::new(boundary_function(d.clone())), Some(d))
            }
        })
    }
}

impl FamilySpec {
    pub fn build(&self, n: usize) -> Result<DynFamily> {
        let check = |v: usize| {
            if v >= n {
                Err(Error::InvalidInstance(format!("element {v} outside ground set of {n}")))
            } else {
                Ok(())
            }
        };
        Ok(match self {
            FamilySpec::Cardinality { k } => Box::new(CardinalityFamily::new(n, *k)),
            FamilySpec::Knapsack { weights, budget } => {
                check_len("knapsack weights", weights.len(), n)?;
                Box::new(KnapsackFamily::new(weights, *budget)?)
            }
            FamilySpec::Matroid(MatroidSpec::Uniform { k }) => Box::new(MatroidFamily::uniform(n, *k)),
            FamilySpec::Matroid(MatroidSpec::Partition { blocks, capacities }) => {
                Box::new(MatroidFamily::partition_blocks(n, blocks, capacities.clone())?)
            }
            FamilySpec::Matroid(MatroidSpec::Graphic { vertex_count, edges }) => {
                check_len("graphic matroid edges", edges.len(), n)?;
                Box::new(MatroidFamily::graphic(*vertex_count, edges.clone())?)
            }
            FamilySpec::Forbidden { obstructions } => {
                for &v in obstructions.iter().flatten() {
                    check(v)?;
                }
                Box::new(ForbiddenSubsetsFamily::new(n, obstructions.clone())?)
            }
            FamilySpec::Exclude { s } => Box::new(ExcludeElementFamily::new(n, *s)?),
            FamilySpec::Intersection { parts } => Box::new(IntersectionFamily::new(
                n,
                parts.iter().map(|p| p.build(n)).collect::<Result<_>>()?,
            )?),
        })
    }
}

impl Problem {
    pub fn resolve(&self, adapter: Adapter) -> Result<Route> {
        match adapter {
            Adapter::Auto => Ok(self.route.clone()),
            Adapter::Queyranne => Ok(Route::Queyranne),
            Adapter::Rizzi => match &self.route {
                Route::MaxBack(_) => Ok(self.route.clone()),
                _ => Err(Error::InvalidInstance(
                    "the rizzi adapter needs a distance_boundary function".into(),
                )),
            },
        }
    }

    pub fn solve_optimal(&self, route: &Route) -> Result<Solution> {
        let f: &dyn SetFunction = &*self.function;
        let family: &dyn Family = &*self.family;
        match route {
            Route::Queyranne => find_optimal(f, family, PairRule::Queyranne),
            Route::MaxBack(d) => find_optimal(f, family, PairRule::MaxBack(&**d)),
            Route::Antirestriction => find_optimal_posimodular(f, family),
        }
    }

    pub fn solve_minimals(&self, route: &Route) -> Result<SolutionFamily> {
        let f: &dyn SetFunction = &*self.function;
        let family: &dyn Family = &*self.family;
        match route {
            Route::Queyranne => find_minimals(f, family, PairRule::Queyranne),
            Route::MaxBack(d) => find_minimals(f, family, PairRule::MaxBack(&**d)),
            Route::Antirestriction => find_minimals_posimodular(f, family),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subset::Subset;

    const PATH: &str = r#"{
        "ground_set": {"n": 3, "labels": ["a", "b", "c"]},
        "function": {"type": "graph_cut", "edges": [[0, 1, 1], [1, 2, "1"]]},
        "family": {"type": "cardinality", "k": 2}
    }"#;

    #[test]
    fn parse_and_build() {
        let inst = Instance::from_json(PATH).unwrap();
        let p = inst.build().unwrap();
        assert_eq!(p.ground.label(2), "c");
        assert_eq!(p.function.evaluate(&Subset::singleton(3, 1)), Value::integer(2));
        assert!(!p.family.contains(&Subset::full(3)));
        assert_eq!(p.route.name(), "queyranne");
    }

    #[test]
    fn canonical_roundtrip() {
        let inst = Instance::from_json(PATH).unwrap();
        let text = inst.to_json();
        assert_eq!(Instance::from_json(&text).unwrap().to_json(), text);
    }

    #[test]
    fn nested_tags() {
        let text = r#"{
            "ground_set": {"n": 4},
            "function": {"type": "modular_offset",
                         "base": {"type": "hypergraph_cut", "hyperedges": [{"members": [0, 1, 2], "w": "1/2"}]},
                         "weights": [0, 1, "1/3", 0]},
            "family": {"type": "intersection", "parts": [
                {"type": "matroid", "kind": "partition", "blocks": [[0, 1], [2, 3]], "capacities": [1, 1]},
                {"type": "knapsack", "weights": ["1/2", "1/2", 1, "1/4"]},
                {"type": "matroid", "kind": "graphic", "vertex_count": 3, "edges": [[0, 1], [1, 2], [0, 2], [0, 1]]},
                {"type": "forbidden", "obstructions": [[0, 3]]}
            ]}
        }"#;
        let inst = Instance::from_json(text).unwrap();
        let p = inst.build().unwrap();
        assert_eq!(p.route.name(), "antirestriction");
        assert_eq!(Instance::from_json(&inst.to_json()).unwrap(), inst);
        assert_eq!(p.function.evaluate(&Subset::singleton(4, 1)), Value::new(3, 2).unwrap());
    }

    #[test]
    fn distance_boundary_routes_to_max_back() {
        let text = r#"{
            "ground_set": {"n": 4},
            "function": {"type": "distance_boundary", "graph": {"edges": [[0,1,1],[1,2,1],[2,3,1],[3,0,1]]}},
            "family": {"type": "cardinality", "k": 2}
        }"#;
        let p = Instance::from_json(text).unwrap().build().unwrap();
        assert_eq!(p.route.name(), "rizzi");
        assert_eq!(p.resolve(Adapter::Queyranne).unwrap().name(), "queyranne");
    }

    #[test]
    fn invalid_instances() {
        let bad_len = PATH.replace(r#""labels": ["a", "b", "c"]"#, r#""labels": ["a", "b"]"#);
        assert!(Instance::from_json(&bad_len).unwrap().build().is_err());
        let bad_edge = PATH.replace("[1, 2, \"1\"]", "[1, 3, \"1\"]");
        assert!(Instance::from_json(&bad_edge).unwrap().build().is_err());
        let bad_w = PATH.replace("[1, 2, \"1\"]", "[1, 2, \"x\"]");
        assert!(Instance::from_json(&bad_w).is_err());
        let p = Instance::from_json(PATH).unwrap().build().unwrap();
        assert!(p.resolve(Adapter::Rizzi).is_err());
    }
}
