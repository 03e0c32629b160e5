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

//! The contracted system `(V', f', I')` kept as a partition of the original
//! ground set.
//!
//! Every current element `w` stands for a nonempty block `X_w` of original
//! elements. Queries on a set `A` of current elements expand to
//! `X_A = ∪_{w ∈ A} X_w`, so `f'(A) = f(X_A)` and `A ∈ I'` iff `X_A ∈ I`;
//! neither `f'` nor `I'` is ever materialized. A current element is named by
//! the original index of its representative.
//!
//! The distinguished element `s` collects loops. It is not listed among the
//! active elements but its block still takes part in the partition.

use crate::error::{Error, Result};
use crate::families::loops_of;
use crate::oracle::{Family, SetFunction};
use crate::subset::Subset;
use crate::value::Value;

pub struct ContractedSystem<'a> {
    f: &'a dyn SetFunction,
    family: &'a dyn Family,
    n: usize,
    blocks: Vec<Option<Subset>>,
    active: Vec<usize>,
    s: Option<usize>,
    s_forced_loop: bool,
}

impl<'a> ContractedSystem<'a> {
    /// Identity partition: every element is its own block and `s` is absent.
    pub fn new(f: &'a dyn SetFunction, family: &'a dyn Family) -> Result<Self> {
        let n = f.universe_size();
        if n == 0 {
            return Err(Error::InvalidGroundSet("ground set must be nonempty".into()));
        }
        if family.universe_size() != n {
            return Err(Error::UniverseMismatch {
                expected: n,
                found: family.universe_size(),
            });
        }
        if !family.contains(&Subset::empty(n)) {
            return Err(Error::DegenerateFamily);
        }
        Ok(Self {
            f,
            family,
            n,
            blocks: (0..n).map(|v| Some(Subset::singleton(n, v))).collect(),
            active: (0..n).collect(),
            s: None,
            s_forced_loop: false,
        })
    }

    pub fn universe_size(&self) -> usize {
        self.n
    }

    pub fn function(&self) -> &'a dyn SetFunction {
        self.f
    }

    pub fn family(&self) -> &'a dyn Family {
        self.family
    }

    /// Active elements in increasing id order; excludes `s`.
    pub fn active(&self) -> &[usize] {
        &self.active
    }

    pub fn s(&self) -> Option<usize> {
        self.s
    }

    /// Active elements plus `s`, in increasing id order.
    pub fn current(&self) -> Vec<usize> {
        let mut out = self.active.clone();
        if let Some(s) = self.s {
            let at = out.partition_point(|&v| v < s);
            out.insert(at, s);
        }
        out
    }

    pub fn current_count(&self) -> usize {
        self.active.len() + usize::from(self.s.is_some())
    }

    pub fn is_current(&self, v: usize) -> bool {
        v < self.n && self.blocks[v].is_some()
    }

    /// Block `X_v` of current element `v`.
    ///
    /// # Panics
    /// If `v` is not a current element.
    pub fn block(&self, v: usize) -> &Subset {
        self.blocks
            .get(v)
            .and_then(Option::as_ref)
            .unwrap_or_else(|| panic!("{v} is not a current element"))
    }

    pub fn expand(&self, ids: &[usize]) -> Subset {
        let mut out = Subset::empty(self.n);
        for &v in ids {
            out.union_with(self.block(v));
        }
        out
    }

    /// `f'(A) = f(X_A)`, one underlying evaluation.
    pub fn evaluate(&self, ids: &[usize]) -> Value {
        self.f.evaluate(&self.expand(ids))
    }

    /// `A ∈ I'`. Sets containing `s` are excluded once `s` is forced to be a loop.
    pub fn member(&self, ids: &[usize]) -> bool {
        if self.s_forced_loop && self.s.is_some_and(|s| ids.contains(&s)) {
            return false;
        }
        self.family.contains(&self.expand(ids))
    }

    pub fn is_loop(&self, v: usize) -> bool {
        !self.member(&[v])
    }

    /// Active loops.
    pub fn loops(&self) -> Vec<usize> {
        loops_of(self.family, &self.active, |v| self.block(v))
    }

    /// Treats `s` as a loop from now on, even if `X_s` is a member of `I`.
    pub fn force_s_loop(&mut self) {
        self.s_forced_loop = true;
    }

    /// Contracts the current elements `L` into `t ∈ L`. When `s ∈ L` the
    /// target must be `s`, which stays distinguished.
    pub fn contract_into(&mut self, l: &[usize], t: usize) -> Result<()> {
        if l.is_empty() {
            return Err(Error::InvalidContraction("empty set".into()));
        }
        if !l.contains(&t) {
            return Err(Error::InvalidContraction(format!(
                "target {t} not in the contracted set"
            )));
        }
        if let Some(&bad) = l.iter().find(|&&v| !self.is_current(v)) {
            return Err(Error::UnknownElement(bad));
        }
        if let Some(s) = self.s {
            if l.contains(&s) && t != s {
                return Err(Error::InvalidContraction(format!(
                    "contractions involving s must target s ({s})"
                )));
            }
        }
        for (i, v) in l.iter().enumerate() {
            if l[..i].contains(v) {
                return Err(Error::InvalidContraction(format!("element {v} repeated")));
            }
        }
        let mut merged = self.block(t).clone();
        for &v in l {
            if v != t {
                let b = self.blocks[v].take().expect("checked current");
                merged.union_with(&b);
                self.active.retain(|&w| w != v);
            }
        }
        self.blocks[t] = Some(merged);
        debug_assert!(self.partition_is_valid());
        Ok(())
    }

    /// Merges the given active elements into `s`, creating `s` (named after
    /// the smallest id involved) when it does not exist yet.
    pub fn absorb_into_s(&mut self, ids: &[usize]) -> Result<usize> {
        if let Some(&bad) = ids.iter().find(|&&v| !self.active.contains(&v)) {
            return Err(Error::UnknownElement(bad));
        }
        let s = match self.s {
            Some(s) => s,
            None => {
                let s = *ids
                    .iter()
                    .min()
                    .ok_or_else(|| Error::InvalidContraction("no element to become s".into()))?;
                self.active.retain(|&w| w != s);
                self.s = Some(s);
                s
            }
        };
        let mut l: Vec<usize> = ids.iter().copied().filter(|&v| v != s).collect();
        l.push(s);
        self.contract_into(&l, s)?;
        Ok(s)
    }

    /// Contracts every active loop into `s`.
    pub fn absorb_loops(&mut self) -> Result<()> {
        let loops = self.loops();
        if loops.is_empty() {
            return match self.s {
                Some(_) => Ok(()),
                None => Err(Error::InvalidContraction("no loop to absorb".into())),
            };
        }
        self.absorb_into_s(&loops)?;
        Ok(())
    }

    /// Blocks are nonempty, pairwise disjoint and cover the ground set.
    pub fn partition_is_valid(&self) -> bool {
        let mut seen = Subset::empty(self.n);
        let mut total = 0;
        for v in self.current() {
            let b = self.block(v);
            if b.is_empty() || !b.is_disjoint(&seen) {
                return false;
            }
            total += b.len();
            seen.union_with(b);
        }
        let live = self.blocks.iter().filter(|b| b.is_some()).count();
        total == self.n && live == self.current_count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::CardinalityFamily;
    use crate::functions::{graph_cut, WeightedGraph};
    use crate::oracle::Counted;
    use crate::subset::all_subsets;

    fn path() -> crate::functions::GraphCut {
        graph_cut(&WeightedGraph::from_int_edges(3, &[(0, 1, 1), (1, 2, 1)]).unwrap())
    }

    #[test]
    fn init_is_identity() {
        let f = path();
        let fam = CardinalityFamily::new(3, 2);
        let sys = ContractedSystem::new(&f, &fam).unwrap();
        assert_eq!(sys.active(), &[0, 1, 2]);
        assert_eq!(sys.s(), None);
        for v in 0..3 {
            assert_eq!(sys.evaluate(&[v]), f.evaluate(&Subset::singleton(3, v)));
        }
        for a in all_subsets(3) {
            let ids: Vec<usize> = a.iter().collect();
            assert_eq!(sys.member(&ids), fam.contains(&a));
            assert_eq!(sys.expand(&ids), a);
        }
        assert_eq!(sys.evaluate(&[]), Value::ZERO);
        assert!(sys.member(&[]));
    }

    #[test]
    fn contract_pair() {
        let f = Counted::new(path());
        let fam = CardinalityFamily::new(3, 2);
        let mut sys = ContractedSystem::new(&f, &fam).unwrap();
        sys.contract_into(&[0, 1], 0).unwrap();
        assert_eq!(sys.active(), &[0, 2]);
        assert_eq!(sys.block(0), &Subset::from_indices(3, [0, 1]));
        f.reset();
        assert_eq!(sys.evaluate(&[0]), Value::ONE);
        assert_eq!(f.calls(), 1);
        sys.contract_into(&[0, 2], 2).unwrap();
        assert_eq!(sys.evaluate(&[2]), f.inner().evaluate(&Subset::full(3)));
        assert!(sys.partition_is_valid());
    }

    #[test]
    fn contraction_errors() {
        let f = path();
        let fam = CardinalityFamily::new(3, 2);
        let mut sys = ContractedSystem::new(&f, &fam).unwrap();
        assert!(sys.contract_into(&[], 0).is_err());
        assert!(sys.contract_into(&[0, 1], 2).is_err());
        assert!(sys.contract_into(&[0, 0], 0).is_err());
        sys.contract_into(&[0, 1], 0).unwrap();
        assert_eq!(sys.contract_into(&[1, 2], 2), Err(Error::UnknownElement(1)));
        sys.absorb_into_s(&[2]).unwrap();
        assert!(sys.contract_into(&[2, 0], 0).is_err());
    }

    #[test]
    fn loops_and_s() {
        let f = path();
        let fam = CardinalityFamily::new(3, 1);
        let mut sys = ContractedSystem::new(&f, &fam).unwrap();
        assert!(sys.absorb_loops().is_err());
        sys.contract_into(&[1, 2], 1).unwrap();
        assert!(sys.is_loop(1));
        assert_eq!(sys.loops(), vec![1]);
        sys.absorb_loops().unwrap();
        assert_eq!(sys.s(), Some(1));
        assert_eq!(sys.active(), &[0]);
        assert_eq!(sys.current(), vec![0, 1]);
        assert!(sys.loops().is_empty());
        // Idempotent.
        sys.absorb_loops().unwrap();
        assert_eq!(sys.current(), vec![0, 1]);
        sys.contract_into(&[1, 0], 1).unwrap();
        assert!(sys.is_loop(1));
        assert!(sys.active().is_empty());
        assert!(sys.partition_is_valid());
    }

    #[test]
    fn two_loops_become_one_s() {
        let f = graph_cut(&WeightedGraph::from_int_edges(5, &[(0, 1, 1)]).unwrap());
        let fam = CardinalityFamily::new(5, 1);
        let mut sys = ContractedSystem::new(&f, &fam).unwrap();
        sys.contract_into(&[1, 2], 2).unwrap();
        sys.contract_into(&[3, 4], 3).unwrap();
        sys.absorb_loops().unwrap();
        assert_eq!(sys.s(), Some(2));
        assert_eq!(sys.block(2), &Subset::from_indices(5, [1, 2, 3, 4]));
        assert_eq!(sys.active(), &[0]);
    }

    #[test]
    fn forced_loop() {
        let f = path();
        let fam = CardinalityFamily::new(3, 2);
        let mut sys = ContractedSystem::new(&f, &fam).unwrap();
        sys.absorb_into_s(&[0]).unwrap();
        assert!(!sys.is_loop(0));
        sys.force_s_loop();
        assert!(sys.is_loop(0));
        assert!(sys.member(&[1]));
    }
}
