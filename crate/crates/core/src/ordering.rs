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

//! Legal orders and pendant pairs over the current elements of a
//! [`ContractedSystem`].
//!
//! A pair `(t, u)` is pendant when `f'({u})` is minimal among all sets of
//! current elements containing `u` but not `t`. The last two elements of a
//! legal order form such a pair, whatever the first element, which is how a
//! pendant pair avoiding a given element is obtained.
//!
//! Ties are broken towards the smallest element id.

use crate::contraction::ContractedSystem;
use crate::error::{Error, Result};
use crate::functions::DistanceMap;
use crate::value::Value;

/// How legal orders are built.
#[derive(Clone, Copy)]
pub enum PairRule<'a> {
    /// Greedy minimization of `f'(W + v) - f'({v})`; valid for symmetric
    /// crossing-submodular `f`.
    Queyranne,
    /// Greedy maximization of `d(W, {v})`; valid for `f(S) = d(S, V \ S)`
    /// with `d` symmetric, monotone and consistent.
    MaxBack(&'a dyn DistanceMap),
}

impl PairRule<'_> {
    pub fn name(&self) -> &'static str {
        match self {
            PairRule::Queyranne => "queyranne",
            PairRule::MaxBack(_) => "rizzi",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegalOrder {
    pub sequence: Vec<usize>,
    /// `f'({v_m})` for the last element `v_m`.
    pub last_value: Value,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PendantPair {
    pub t: usize,
    pub u: usize,
    /// `f'({u})`.
    pub u_value: Value,
}

fn rest_after(sys: &ContractedSystem, first: usize) -> Result<Vec<usize>> {
    if !sys.is_current(first) {
        return Err(Error::UnknownElement(first));
    }
    Ok(sys.current().into_iter().filter(|&v| v != first).collect())
}

/// Queyranne's order starting at `first`.
///
/// Uses at most `m^2 + m` evaluations of `f` for `m` current elements:
/// singleton values are computed once per order and the key of the last
/// remaining element is never needed.
pub fn legal_order(sys: &ContractedSystem, first: usize) -> Result<LegalOrder> {
    let mut rest = rest_after(sys, first)?;
    let mut singles: Vec<Value> = rest.iter().map(|&v| sys.evaluate(&[v])).collect();
    let f = sys.function();
    let mut w = sys.block(first).clone();
    let mut sequence = Vec::with_capacity(rest.len() + 1);
    sequence.push(first);
    while rest.len() > 1 {
        let mut best: Option<(usize, Value)> = None;
        for (i, &v) in rest.iter().enumerate() {
            let key = f.evaluate(&w.union(sys.block(v))) - singles[i];
            if best.is_none_or(|(_, b)| key < b) {
                best = Some((i, key));
            }
        }
        let (i, _) = best.expect("at least two candidates");
        let v = rest.remove(i);
        singles.remove(i);
        w.union_with(sys.block(v));
        sequence.push(v);
    }
    let last_value = match rest.pop() {
        Some(v) => {
            sequence.push(v);
            singles[0]
        }
        None => sys.evaluate(&[first]),
    };
    Ok(LegalOrder { sequence, last_value })
}

/// Maximum-back order for a distance map: each step appends the element
/// farthest from the elements already ordered, `argmax_v d(X_W, X_v)`.
pub fn max_back_order(sys: &ContractedSystem, d: &dyn DistanceMap, first: usize) -> Result<LegalOrder> {
    let mut rest = rest_after(sys, first)?;
    let mut w = sys.block(first).clone();
    let mut sequence = Vec::with_capacity(rest.len() + 1);
    sequence.push(first);
    while rest.len() > 1 {
        let mut best: Option<(usize, Value)> = None;
        for (i, &v) in rest.iter().enumerate() {
            let key = d.distance(&w, sys.block(v));
            if best.is_none_or(|(_, b)| key > b) {
                best = Some((i, key));
            }
        }
        let (i, _) = best.expect("at least two candidates");
        let v = rest.remove(i);
        w.union_with(sys.block(v));
        sequence.push(v);
    }
    sequence.extend(rest);
    let last = *sequence.last().expect("nonempty order");
    Ok(LegalOrder {
        sequence,
        last_value: sys.evaluate(&[last]),
    })
}

pub fn order(sys: &ContractedSystem, rule: PairRule<'_>, first: usize) -> Result<LegalOrder> {
    match rule {
        PairRule::Queyranne => legal_order(sys, first),
        PairRule::MaxBack(d) => max_back_order(sys, d, first),
    }
}

/// Last two elements of a legal order that starts at `avoid` (or at the
/// smallest current element when nothing is avoided).
pub fn pendant_pair(sys: &ContractedSystem, rule: PairRule<'_>, avoid: Option<usize>) -> Result<PendantPair> {
    let m = sys.current_count();
    let needed = if avoid.is_some() { 3 } else { 2 };
    if m < needed {
        return Err(Error::TooFewElements { needed, found: m });
    }
    let first = match avoid {
        Some(a) => a,
        None => sys.current()[0],
    };
    let ord = order(sys, rule, first)?;
    let k = ord.sequence.len();
    Ok(PendantPair {
        t: ord.sequence[k - 2],
        u: ord.sequence[k - 1],
        u_value: ord.last_value,
    })
}
