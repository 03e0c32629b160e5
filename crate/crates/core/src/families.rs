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

//! Hereditary family oracles.

use crate::error::{Error, Result};
use crate::oracle::Family;
use crate::subset::Subset;
use crate::value::Value;

/// Sets of at most `k` elements.
#[derive(Clone, Debug)]
pub struct CardinalityFamily {
    n: usize,
    k: usize,
}

impl CardinalityFamily {
    pub fn new(n: usize, k: usize) -> Self {
        Self { n, k }
    }
}

impl Family for CardinalityFamily {
    fn universe_size(&self) -> usize {
        self.n
    }

    fn contains(&self, set: &Subset) -> bool {
        set.len() <= self.k
    }
}

/// Sets whose total weight is at most `budget`.
#[derive(Clone, Debug)]
pub struct KnapsackFamily {
    weights: Vec<i128>,
    budget: i128,
}

impl KnapsackFamily {
    /// Knapsack with the usual unit budget.
    pub fn unit(weights: &[Value]) -> Result<Self> {
        Self::new(weights, Value::ONE)
    }

    pub fn new(weights: &[Value], budget: Value) -> Result<Self> {
        if let Some(w) = weights.iter().find(|w| w.is_negative()) {
            return Err(Error::InvalidInstance(format!("knapsack weight {w} is negative")));
        }
        if budget.is_negative() {
            return Err(Error::DegenerateFamily);
        }
        // Compare over a common denominator so membership is integer arithmetic.
        let denom = weights
            .iter()
            .chain(std::iter::once(&budget))
            .fold(1i128, |acc, v| num_integer::lcm(acc, v.denom()));
        let scale = |v: &Value| v.numer() * (denom / v.denom());
        Ok(Self {
            weights: weights.iter().map(scale).collect(),
            budget: scale(&budget),
        })
    }
}

impl Family for KnapsackFamily {
    fn universe_size(&self) -> usize {
        self.weights.len()
    }

    fn contains(&self, set: &Subset) -> bool {
        set.iter().map(|v| self.weights[v]).sum::<i128>() <= self.budget
    }
}

#[derive(Clone, Debug)]
pub enum MatroidKind {
    Uniform {
        k: usize,
    },
    /// `block_of[v]` names the block of element `v`; a set is independent when
    /// it takes at most `capacities[b]` elements from each block `b`.
    Partition {
        block_of: Vec<usize>,
        capacities: Vec<usize>,
    },
    /// Elements are the edges `(u, v)` of a multigraph; independent sets are forests.
    Graphic {
        vertex_count: usize,
        edges: Vec<(usize, usize)>,
    },
}

/// Independent sets of a uniform, partition or graphic matroid.
#[derive(Clone, Debug)]
pub struct MatroidFamily {
    n: usize,
    kind: MatroidKind,
}

impl MatroidFamily {
    pub fn uniform(n: usize, k: usize) -> Self {
        Self {
            n,
            kind: MatroidKind::Uniform { k },
        }
    }

    pub fn partition(block_of: Vec<usize>, capacities: Vec<usize>) -> Result<Self> {
        if let Some(&b) = block_of.iter().find(|&&b| b >= capacities.len()) {
            return Err(Error::InvalidInstance(format!("partition block {b} has no capacity")));
        }
        Ok(Self {
            n: block_of.len(),
            kind: MatroidKind::Partition { block_of, capacities },
        })
    }

    /// Builds a partition matroid from explicit blocks, which must partition `0..n`.
    pub fn partition_blocks(n: usize, blocks: &[Vec<usize>], capacities: Vec<usize>) -> Result<Self> {
        if blocks.len() != capacities.len() {
            return Err(Error::InvalidInstance("one capacity per block required".into()));
        }
        let mut block_of = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            for &v in block {
                if v >= n || block_of[v] != usize::MAX {
                    return Err(Error::InvalidInstance(format!(
                        "element {v} misplaced in partition blocks"
                    )));
                }
                block_of[v] = b;
            }
        }
        if block_of.contains(&usize::MAX) {
            return Err(Error::InvalidInstance(
                "partition blocks do not cover the ground set".into(),
            ));
        }
        Self::partition(block_of, capacities)
    }

    pub fn graphic(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= vertex_count || v >= vertex_count) {
            return Err(Error::InvalidInstance(format!(
                "edge ({u}, {v}) outside {vertex_count} vertices"
            )));
        }
        Ok(Self {
            n: edges.len(),
            kind: MatroidKind::Graphic { vertex_count, edges },
        })
    }

    pub fn kind(&self) -> &MatroidKind {
        &self.kind
    }
}

impl Family for MatroidFamily {
    fn universe_size(&self) -> usize {
        self.n
    }

    fn contains(&self, set: &Subset) -> bool {
        match &self.kind {
            MatroidKind::Uniform { k } => set.len() <= *k,
            MatroidKind::Partition { block_of, capacities } => {
                let mut used = vec![0usize; capacities.len()];
                set.iter().all(|v| {
                    let b = block_of[v];
                    used[b] += 1;
                    used[b] <= capacities[b]
                })
            }
            MatroidKind::Graphic { vertex_count, edges } => {
                let mut forest = DisjointSet::new(*vertex_count);
                set.iter().all(|e| forest.union(edges[e].0, edges[e].1))
            }
        }
    }
}

struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        match self.rank[a].cmp(&self.rank[b]) {
            std::cmp::Ordering::Less => self.parent[a] = b,
            std::cmp::Ordering::Greater => self.parent[b] = a,
            std::cmp::Ordering::Equal => {
                self.parent[b] = a;
                self.rank[a] += 1;
            }
        }
        true
    }
}

/// Sets containing none of the listed obstructions.
///
/// Hereditary graph properties and matchings are expressed through their
/// minimal obstructions, e.g. all triangles for triangle-free vertex sets or
/// all pairs of intersecting edges for matchings.
#[derive(Clone, Debug)]
pub struct ForbiddenSubsetsFamily {
    n: usize,
    obstructions: Vec<Subset>,
}

impl ForbiddenSubsetsFamily {
    pub fn new(n: usize, obstructions: Vec<Vec<usize>>) -> Result<Self> {
        let mut out = Vec::with_capacity(obstructions.len());
        for ob in obstructions {
            if let Some(&v) = ob.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidInstance(format!(
                    "obstruction member {v} outside universe"
                )));
            }
            if ob.is_empty() {
                return Err(Error::DegenerateFamily);
            }
            out.push(Subset::from_indices(n, ob));
        }
        Ok(Self { n, obstructions: out })
    }

    /// Matchings of a hypergraph whose edges are the ground elements.
    pub fn matchings(edges: &[Vec<usize>]) -> Result<Self> {
        let mut obs = Vec::new();
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                if edges[i].iter().any(|v| edges[j].contains(v)) {
                    obs.push(vec![i, j]);
                }
            }
        }
        Self::new(edges.len(), obs)
    }

    /// Triangle-free vertex subsets of a simple graph.
    pub fn triangle_free(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![vec![false; vertex_count]; vertex_count];
        for &(u, v) in edges {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        let mut obs = Vec::new();
        for a in 0..vertex_count {
            for b in a + 1..vertex_count {
                for c in b + 1..vertex_count {
                    if adj[a][b] && adj[b][c] && adj[a][c] {
                        obs.push(vec![a, b, c]);
                    }
                }
            }
        }
        Self::new(vertex_count, obs)
    }

    pub fn obstructions(&self) -> &[Subset] {
        &self.obstructions
    }
}

impl Family for ForbiddenSubsetsFamily {
    fn universe_size(&self) -> usize {
        self.n
    }

    fn contains(&self, set: &Subset) -> bool {
        !self.obstructions.iter().any(|ob| ob.is_subset_of(set))
    }
}

/// Sets avoiding element `s`; recovers unconstrained nontrivial minimization.
#[derive(Clone, Debug)]
pub struct ExcludeElementFamily {
    n: usize,
    s: usize,
}

impl ExcludeElementFamily {
    pub fn new(n: usize, s: usize) -> Result<Self> {
        if s >= n {
            return Err(Error::InvalidInstance(format!("excluded element {s} outside universe")));
        }
        Ok(Self { n, s })
    }
}

impl Family for ExcludeElementFamily {
    fn universe_size(&self) -> usize {
        self.n
    }

    fn contains(&self, set: &Subset) -> bool {
        !set.contains(self.s)
    }
}

pub type DynFamily = Box<dyn Family + Send + Sync>;

pub struct IntersectionFamily {
    n: usize,
    parts: Vec<DynFamily>,
}

impl IntersectionFamily {
    pub fn new(n: usize, parts: Vec<DynFamily>) -> Result<Self> {
        if let Some(p) = parts.iter().find(|p| p.universe_size() != n) {
            return Err(Error::UniverseMismatch {
                expected: n,
                found: p.universe_size(),
            });
        }
        Ok(Self { n, parts })
    }
}

impl Family for IntersectionFamily {
    fn universe_size(&self) -> usize {
        self.n
    }

    fn contains(&self, set: &Subset) -> bool {
        self.parts.iter().all(|p| p.contains(set))
    }
}

/// Family given by a membership callback, e.g. for properties such as
/// planarity whose obstructions are impractical to list.
pub struct FnFamily<C> {
    n: usize,
    contains: C,
}

impl<C: Fn(&Subset) -> bool> FnFamily<C> {
    pub fn new(n: usize, contains: C) -> Result<Self> {
        if !contains(&Subset::empty(n)) {
            return Err(Error::DegenerateFamily);
        }
        Ok(Self { n, contains })
    }
}

impl<C: Fn(&Subset) -> bool> Family for FnFamily<C> {
    fn universe_size(&self) -> usize {
        self.n
    }

    fn contains(&self, set: &Subset) -> bool {
        (self.contains)(set)
    }
}

/// Complements of the members of an upward-closed family: `S` is a member
/// iff `V \ S` belongs to `inner`.
pub struct ComplementFamily<F> {
    inner: F,
}

pub fn complement_family<F: Family>(inner: F) -> Result<ComplementFamily<F>> {
    if !inner.contains(&Subset::full(inner.universe_size())) {
        return Err(Error::DegenerateFamily);
    }
    Ok(ComplementFamily { inner })
}

impl<F> ComplementFamily<F> {
    pub fn inner(&self) -> &F {
        &self.inner
    }
}

impl<F: Family> Family for ComplementFamily<F> {
    fn universe_size(&self) -> usize {
        self.inner.universe_size()
    }

    fn contains(&self, set: &Subset) -> bool {
        self.inner.contains(&set.complement())
    }
}

/// Current elements whose blocks are not members of the family.
pub fn loops_of<'a, F: Family + ?Sized>(
    family: &F,
    current: &[usize],
    block: impl Fn(usize) -> &'a Subset,
) -> Vec<usize> {
    current
        .iter()
        .copied()
        .filter(|&v| !family.contains(block(v)))
        .collect()
}
