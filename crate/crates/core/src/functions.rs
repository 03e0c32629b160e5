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

//! Concrete set-function oracles: graph and hypergraph cuts, explicit
//! tables, modular offsets, and functions induced by distance maps.

use std::sync::Arc;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::oracle::{Counted, SetFunction};
use crate::subset::Subset;
use crate::validate::Validator;
use crate::value::Value;

/// Rewrites rationals over their least common denominator so oracle sums run
/// on plain integers.
fn common_denominator(values: &[Value]) -> (Vec<i128>, i128) {
    let denom = values.iter().fold(1i128, |acc, v| acc.lcm(&v.denom()));
    let scaled = values.iter().map(|v| v.numer() * (denom / v.denom())).collect();
    (scaled, denom)
}

fn scaled_value(sum: i128, denom: i128) -> Value {
    Value::new(sum, denom).expect("common denominator is positive")
}

fn check_weight(w: &Value, what: &str) -> Result<()> {
    if w.is_negative() {
        return Err(Error::InvalidInstance(format!("{what} has negative weight {w}")));
    }
    Ok(())
}

/// Undirected graph with nonnegative rational edge weights. Parallel edges
/// are allowed and their weights add.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize, Value)>,
}

impl WeightedGraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize, Value)>) -> Result<Self> {
        for &(u, v, ref w) in &edges {
            if u == v {
                return Err(Error::InvalidInstance(format!("self-loop on vertex {u}")));
            }
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidInstance(format!(
                    "edge ({u}, {v}) outside {vertex_count} vertices"
                )));
            }
            check_weight(w, &format!("edge ({u}, {v})"))?;
        }
        Ok(Self { vertex_count, edges })
    }

    /// Builds a graph from integer-weighted edges.
    pub fn from_int_edges(vertex_count: usize, edges: &[(usize, usize, i64)]) -> Result<Self> {
        Self::new(
            vertex_count,
            edges.iter().map(|&(u, v, w)| (u, v, Value::from(w))).collect(),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize, Value)] {
        &self.edges
    }
}

/// Cut capacity `f(S) = w(δ(S))` of a weighted undirected graph.
#[derive(Clone, Debug)]
pub struct GraphCut {
    n: usize,
    edges: Vec<(usize, usize, i128)>,
    denom: i128,
}

pub fn graph_cut(graph: &WeightedGraph) -> GraphCut {
    let weights: Vec<Value> = graph.edges.iter().map(|e| e.2).collect();
    let (scaled, denom) = common_denominator(&weights);
    let edges = graph
        .edges
        .iter()
        .zip(scaled)
        .map(|(&(u, v, _), w)| (u, v, w))
        .collect();
    GraphCut {
        n: graph.vertex_count,
        edges,
        denom,
    }
}

impl SetFunction for GraphCut {
    fn universe_size(&self) -> usize {
        self.n
    }

    fn evaluate(&self, set: &Subset) -> Value {
        let sum = self
            .edges
            .iter()
            .filter(|&&(u, v, _)| set.contains(u) != set.contains(v))
            .map(|e| e.2)
            .sum();
        scaled_value(sum, self.denom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedHypergraph {
    vertex_count: usize,
    hyperedges: Vec<(Subset, Value)>,
}

impl WeightedHypergraph {
    pub fn new(vertex_count: usize, hyperedges: Vec<(Vec<usize>, Value)>) -> Result<Self> {
        let mut out = Vec::with_capacity(hyperedges.len());
        for (members, w) in hyperedges {
            if let Some(&bad) = members.iter().find(|&&v| v >= vertex_count) {
                return Err(Error::InvalidInstance(format!(
                    "hyperedge member {bad} outside {vertex_count} vertices"
                )));
            }
            let set = Subset::from_indices(vertex_count, members);
            if set.len() < 2 {
                return Err(Error::InvalidInstance("hyperedge needs at least two members".into()));
            }
            check_weight(&w, "hyperedge")?;
            out.push((set, w));
        }
        Ok(Self {
            vertex_count,
            hyperedges: out,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn hyperedges(&self) -> &[(Subset, Value)] {
        &self.hyperedges
    }
}

/// Total weight of hyperedges with members on both sides of `S`.
#[derive(Clone, Debug)]
pub struct HypergraphCut {
    n: usize,
    hyperedges: Vec<(Subset, i128)>,
    denom: i128,
}

pub fn hypergraph_cut(h: &WeightedHypergraph) -> HypergraphCut {
    let weights: Vec<Value> = h.hyperedges.iter().map(|e| e.1).collect();
    let (scaled, denom) = common_denominator(&weights);
    let hyperedges = h
        .hyperedges
        .iter()
        .zip(scaled)
        .map(|((s, _), w)| (s.clone(), w))
        .collect();
    HypergraphCut {
        n: h.vertex_count,
        hyperedges,
        denom,
    }
}

impl SetFunction for HypergraphCut {
    fn universe_size(&self) -> usize {
        self.n
    }

    fn evaluate(&self, set: &Subset) -> Value {
        let sum = self
            .hyperedges
            .iter()
            .filter(|(e, _)| !e.is_disjoint(set) && !e.is_subset_of(set))
            .map(|e| e.1)
            .sum();
        scaled_value(sum, self.denom)
    }
}

/// Complete value table indexed by bitmask, for universes of at most 20 elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitTable {
    n: usize,
    values: Vec<Value>,
}

pub const TABLE_MAX: usize = 20;

impl ExplicitTable {
    pub fn new(n: usize, values: Vec<Value>) -> Result<Self> {
        if n > TABLE_MAX {
            return Err(Error::TooLarge { n, cap: TABLE_MAX });
        }
        if values.len() != 1 << n {
            return Err(Error::InvalidInstance(format!(
                "table over {n} elements needs {} values, found {}",
                1usize << n,
                values.len()
            )));
        }
        Ok(Self { n, values })
    }

    /// Tabulates `f` over its whole universe.
    pub fn tabulate<F: SetFunction + ?Sized>(f: &F) -> Result<Self> {
        let n = f.universe_size();
        if n > TABLE_MAX {
            return Err(Error::TooLarge { n, cap: TABLE_MAX });
        }
        let values = (0..1u64 << n).map(|b| f.evaluate(&Subset::from_bits(n, b))).collect();
        Self::new(n, values)
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }
}

#[derive(Clone, Debug)]
pub struct TableFunction(ExplicitTable);

pub fn table_function(table: ExplicitTable) -> TableFunction {
    TableFunction(table)
}

impl SetFunction for TableFunction {
    fn universe_size(&self) -> usize {
        self.0.n
    }

    fn evaluate(&self, set: &Subset) -> Value {
        self.0.values[set.bits() as usize]
    }
}

/// `g(S) = f(S) + Σ_{v ∈ S} w(v)`.
#[derive(Clone, Debug)]
pub struct ModularOffset<F> {
    base: F,
    weights: Vec<i128>,
    denom: i128,
}

pub fn add_modular<F: SetFunction>(base: F, weights: &[Value]) -> Result<ModularOffset<F>> {
    if weights.len() != base.universe_size() {
        return Err(Error::UniverseMismatch {
            expected: base.universe_size(),
            found: weights.len(),
        });
    }
    let (weights, denom) = common_denominator(weights);
    Ok(ModularOffset { base, weights, denom })
}

impl<F: SetFunction> SetFunction for ModularOffset<F> {
    fn universe_size(&self) -> usize {
        self.base.universe_size()
    }

    fn evaluate(&self, set: &Subset) -> Value {
        let sum: i128 = set.iter().map(|v| self.weights[v]).sum();
        self.base.evaluate(set) + scaled_value(sum, self.denom)
    }
}

/// A map `d(A, B)` on pairs of disjoint subsets.
///
/// The solver's max-back ordering requires `d` to be symmetric, monotone
/// (`d(A,B) <= d(A, B ∪ W)`) and consistent (`d(A,W) >= d(B,W)` implies
/// `d(A, W ∪ B) >= d(B, W ∪ A)`), checkable with [`validate_distance_map`].
pub trait DistanceMap {
    fn universe_size(&self) -> usize;
    fn distance(&self, a: &Subset, b: &Subset) -> Value;
}

impl<T: DistanceMap + ?Sized> DistanceMap for &T {
    fn universe_size(&self) -> usize {
        (**self).universe_size()
    }
    fn distance(&self, a: &Subset, b: &Subset) -> Value {
        (**self).distance(a, b)
    }
}

impl<T: DistanceMap + ?Sized> DistanceMap for Box<T> {
    fn universe_size(&self) -> usize {
        (**self).universe_size()
    }
    fn distance(&self, a: &Subset, b: &Subset) -> Value {
        (**self).distance(a, b)
    }
}

impl<T: DistanceMap + ?Sized> DistanceMap for Arc<T> {
    fn universe_size(&self) -> usize {
        (**self).universe_size()
    }
    fn distance(&self, a: &Subset, b: &Subset) -> Value {
        (**self).distance(a, b)
    }
}

impl<D: DistanceMap> DistanceMap for Counted<D> {
    fn universe_size(&self) -> usize {
        self.inner().universe_size()
    }

    fn distance(&self, a: &Subset, b: &Subset) -> Value {
        self.tick();
        self.inner().distance(a, b)
    }
}

/// `d(A, B) = max { λ(u, v) : u ∈ A, v ∈ B }` for shortest-path distances λ.
/// All-pairs distances are computed once at construction. Empty arguments
/// give 0.
#[derive(Clone, Debug)]
pub struct ShortestPathMap {
    n: usize,
    dist: Vec<Vec<Value>>,
}

#[allow(clippy::needless_range_loop)]
pub fn shortest_path_distance_map(graph: &WeightedGraph) -> Result<ShortestPathMap> {
    let n = graph.vertex_count;
    let mut dist: Vec<Vec<Option<Value>>> = vec![vec![None; n]; n];
    for (v, row) in dist.iter_mut().enumerate() {
        row[v] = Some(Value::ZERO);
    }
    for &(u, v, w) in &graph.edges {
        if dist[u][v].is_none_or(|d| w < d) {
            dist[u][v] = Some(w);
            dist[v][u] = Some(w);
        }
    }
    for k in 0..n {
        for i in 0..n {
            let Some(dik) = dist[i][k] else { continue };
            for j in 0..n {
                if let Some(dkj) = dist[k][j] {
                    let through = dik + dkj;
                    if dist[i][j].is_none_or(|d| through < d) {
                        dist[i][j] = Some(through);
                    }
                }
            }
        }
    }
    let mut out = vec![vec![Value::ZERO; n]; n];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = dist[i][j].ok_or(Error::Disconnected(i, j))?;
        }
    }
    Ok(ShortestPathMap { n, dist: out })
}

impl ShortestPathMap {
    pub fn pair(&self, u: usize, v: usize) -> Value {
        self.dist[u][v]
    }
}

impl DistanceMap for ShortestPathMap {
    fn universe_size(&self) -> usize {
        self.n
    }

    fn distance(&self, a: &Subset, b: &Subset) -> Value {
        a.iter()
            .flat_map(|u| b.iter().map(move |v| self.dist[u][v]))
            .max()
            .unwrap_or(Value::ZERO)
    }
}

/// `f(S) = d(S, V \ S)`, with `f(∅) = f(V) = 0`.
#[derive(Clone, Debug)]
pub struct BoundaryFunction<D>(pub D);

pub fn boundary_function<D: DistanceMap>(d: D) -> BoundaryFunction<D> {
    BoundaryFunction(d)
}

impl<D: DistanceMap> SetFunction for BoundaryFunction<D> {
    fn universe_size(&self) -> usize {
        self.0.universe_size()
    }

    fn evaluate(&self, set: &Subset) -> Value {
        if set.is_empty() || set.is_full() {
            return Value::ZERO;
        }
        self.0.distance(set, &set.complement())
    }
}

/// `d(A, B) = (f(A) + f(B) - f(A ∪ B)) / 2`.
#[derive(Clone, Debug)]
pub struct FunctionDistance<F>(pub F);

pub fn map_from_function<F: SetFunction>(f: F) -> FunctionDistance<F> {
    FunctionDistance(f)
}

impl<F: SetFunction> DistanceMap for FunctionDistance<F> {
    fn universe_size(&self) -> usize {
        self.0.universe_size()
    }

    fn distance(&self, a: &Subset, b: &Subset) -> Value {
        (self.0.evaluate(a) + self.0.evaluate(b) - self.0.evaluate(&a.union(b))).half()
    }
}

/// Distance map backed by a closure.
pub struct FnDistanceMap<C> {
    n: usize,
    d: C,
}

impl<C: Fn(&Subset, &Subset) -> Value> FnDistanceMap<C> {
    pub fn new(n: usize, d: C) -> Self {
        Self { n, d }
    }
}

impl<C: Fn(&Subset, &Subset) -> Value> DistanceMap for FnDistanceMap<C> {
    fn universe_size(&self) -> usize {
        self.n
    }

    fn distance(&self, a: &Subset, b: &Subset) -> Value {
        (self.d)(a, b)
    }
}

/// Checks symmetry, monotonicity and consistency over every pairwise-disjoint
/// triple of nonempty sets. Enumerates `4^n` assignments.
pub fn validate_distance_map<D: DistanceMap + ?Sized>(d: &D) -> Result<bool> {
    Validator::default().distance_map(d)
}

impl Validator {
    pub fn distance_map<D: DistanceMap + ?Sized>(&self, d: &D) -> Result<bool> {
        let n = d.universe_size();
        if n > self.cap || n >= 32 {
            return Err(Error::TooLarge { n, cap: self.cap });
        }
        let total = 1u64 << (2 * n);
        for code in 0..total {
            // Two bits per element: 0 = unused, 1 = A, 2 = B, 3 = W.
            let mut parts = [Subset::empty(n), Subset::empty(n), Subset::empty(n)];
            for v in 0..n {
                match code >> (2 * v) & 3 {
                    0 => {}
                    k => parts[k as usize - 1].insert(v),
                }
            }
            let [a, b, w] = &parts;
            if a.is_empty() || b.is_empty() {
                continue;
            }
            if w.is_empty() {
                if d.distance(a, b) != d.distance(b, a) {
                    return Ok(false);
                }
                continue;
            }
            if d.distance(a, b) > d.distance(a, &b.union(w)) {
                return Ok(false);
            }
            if d.distance(a, w) >= d.distance(b, w) && d.distance(a, &w.union(b)) < d.distance(b, &w.union(a)) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
