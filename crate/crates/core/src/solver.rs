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

//! Minimal optimal solutions of `min { f(A) : ∅ ≠ A ∈ I }`.
//!
//! [`find_optimal`] returns one inclusionwise-minimal optimal set and
//! [`find_minimals`] returns all of them (they are pairwise disjoint). Both
//! repeatedly take a pendant pair `(t, u)`, record `X_u` as a candidate and
//! contract. Once the family has a loop, all loops are gathered in a
//! distinguished element `s` and every later pendant pair is taken from a
//! legal order starting at `s`, so candidates are always feasible.
//!
//! The remaining entry points reduce other problems to these two:
//! intersecting submodular and posimodular functions through their
//! antirestriction, maximal minimizers of contractions over upward-closed
//! families through complementation, and unconstrained nontrivial
//! minimization through an exclude-one-element family.

use crate::contraction::ContractedSystem;
use crate::error::{Error, Result};
use crate::families::ExcludeElementFamily;
use crate::functions::DistanceMap;
use crate::oracle::{Counted, Family, FnSetFunction, SetFunction};
use crate::ordering::{pendant_pair, PairRule};
use crate::subset::Subset;
use crate::value::Value;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub set: Subset,
    pub value: Value,
    pub order_index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub set: Subset,
    pub value: Value,
    /// Evaluations of `f`, plus distance queries under the max-back rule.
    pub oracle_calls: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionFamily {
    /// Pairwise disjoint minimal optimal sets, sorted by smallest element.
    pub sets: Vec<Subset>,
    pub value: Value,
    pub oracle_calls: u64,
}

/// Rejects instances the algorithms are not defined on.
pub fn check_instance(f: &dyn SetFunction, family: &dyn Family) -> Result<()> {
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
    if family.contains(&Subset::full(n)) {
        return Err(Error::TrivialFamily);
    }
    if !(0..n).any(|v| family.contains(&Subset::singleton(n, v))) {
        return Err(Error::Infeasible);
    }
    Ok(())
}

/// Counting wrappers shared by one solver invocation.
struct Oracles<'a> {
    f: Counted<&'a dyn SetFunction>,
    d: Option<Counted<&'a dyn DistanceMap>>,
}

impl<'a> Oracles<'a> {
    fn new(f: &'a dyn SetFunction, rule: PairRule<'a>) -> Result<Self> {
        let d = match rule {
            PairRule::Queyranne => None,
            PairRule::MaxBack(d) => {
                if d.universe_size() != f.universe_size() {
                    return Err(Error::UniverseMismatch {
                        expected: f.universe_size(),
                        found: d.universe_size(),
                    });
                }
                Some(Counted::new(d))
            }
        };
        Ok(Self { f: Counted::new(f), d })
    }

    fn rule(&self) -> PairRule<'_> {
        match &self.d {
            None => PairRule::Queyranne,
            Some(d) => PairRule::MaxBack(d),
        }
    }

    fn calls(&self) -> u64 {
        self.f.calls() + self.d.as_ref().map_or(0, Counted::calls)
    }
}

struct Candidates(Vec<Candidate>);

impl Candidates {
    fn add(&mut self, set: Subset, value: Value) {
        let order_index = self.0.len();
        self.0.push(Candidate {
            set,
            value,
            order_index,
        });
    }

    /// Minimum value, earliest insertion among ties.
    fn best(self) -> Candidate {
        self.0
            .into_iter()
            .reduce(|best, c| if c.value < best.value { c } else { best })
            .expect("at least one candidate is always recorded")
    }
}

fn run_optimal(oracles: &Oracles<'_>, family: &dyn Family) -> Result<Candidate> {
    let rule = oracles.rule();
    let mut sys = ContractedSystem::new(&oracles.f, family)?;
    let mut cands = Candidates(Vec::new());

    let mut has_loop = !sys.loops().is_empty();
    while !has_loop {
        let p = pendant_pair(&sys, rule, None)?;
        debug_assert!(family.contains(sys.block(p.u)));
        cands.add(sys.block(p.u).clone(), p.u_value);
        sys.contract_into(&[p.t, p.u], p.t)?;
        has_loop = sys.is_loop(p.t);
    }

    sys.absorb_loops()?;
    while sys.active().len() >= 2 {
        debug_assert!(sys.loops().is_empty(), "s must be the only loop");
        let s = sys.s().expect("loops were absorbed");
        let p = pendant_pair(&sys, rule, Some(s))?;
        debug_assert!(family.contains(sys.block(p.u)));
        cands.add(sys.block(p.u).clone(), p.u_value);
        if sys.member(&[p.t, p.u]) {
            sys.contract_into(&[p.t, p.u], p.t)?;
        } else {
            sys.absorb_into_s(&[p.t, p.u])?;
        }
    }
    if let [t] = *sys.active() {
        cands.add(sys.block(t).clone(), sys.evaluate(&[t]));
    }
    Ok(cands.best())
}

fn run_minimals(oracles: &Oracles<'_>, family: &dyn Family) -> Result<(Vec<Subset>, Value)> {
    let rule = oracles.rule();
    let best = run_optimal(oracles, family)?;
    let lambda = best.value;

    let mut sys = ContractedSystem::new(&oracles.f, family)?;
    let mut into_s: Vec<usize> = best.set.iter().collect();
    into_s.extend(sys.loops().into_iter().filter(|v| !best.set.contains(*v)));
    sys.absorb_into_s(&into_s)?;
    sys.force_s_loop();
    let mut found = vec![best.set];

    for v in sys.active().to_vec() {
        if sys.evaluate(&[v]) == lambda {
            found.push(sys.block(v).clone());
            sys.absorb_into_s(&[v])?;
        }
    }

    while sys.active().len() >= 2 {
        let s = sys.s().expect("s holds the first solution");
        let p = pendant_pair(&sys, rule, Some(s))?;
        let pair = [p.t, p.u];
        if sys.member(&pair) {
            let value = sys.evaluate(&pair);
            if value == lambda {
                found.push(sys.expand(&pair));
                sys.absorb_into_s(&pair)?;
            } else if value > lambda {
                sys.contract_into(&pair, p.t)?;
            } else {
                sys.absorb_into_s(&pair)?;
            }
        } else {
            sys.absorb_into_s(&pair)?;
        }
    }
    found.sort_by_key(|x| x.first());
    Ok((found, lambda))
}

/// One inclusionwise-minimal optimal set, in `O(n^3)` oracle calls.
///
/// Requires `V ∉ I`, `∅ ∈ I` and at least one feasible singleton. With
/// [`PairRule::Queyranne`] `f` must be symmetric and crossing submodular;
/// with [`PairRule::MaxBack`] `f` must be `S ↦ d(S, V \ S)` for the given map.
pub fn find_optimal(f: &dyn SetFunction, family: &dyn Family, rule: PairRule<'_>) -> Result<Solution> {
    check_instance(f, family)?;
    let oracles = Oracles::new(f, rule)?;
    let best = run_optimal(&oracles, family)?;
    Ok(Solution {
        set: best.set,
        value: best.value,
        oracle_calls: oracles.calls(),
    })
}

/// All minimal optimal sets, in `O(n^3)` oracle calls. Same requirements as
/// [`find_optimal`].
pub fn find_minimals(f: &dyn SetFunction, family: &dyn Family, rule: PairRule<'_>) -> Result<SolutionFamily> {
    check_instance(f, family)?;
    let oracles = Oracles::new(f, rule)?;
    let (sets, value) = run_minimals(&oracles, family)?;
    Ok(SolutionFamily {
        sets,
        value,
        oracle_calls: oracles.calls(),
    })
}

/// Symmetric extension of `f` to `V + s`, where `s` is the new last index:
/// `g(X) = f(X)` if `s ∉ X`, else `f(V \ X)`.
///
/// When `f` is intersecting submodular and intersecting posimodular, `g` is
/// symmetric and crossing submodular.
#[derive(Clone, Debug)]
pub struct Antirestriction<F> {
    f: F,
    n: usize,
}

pub fn antirestriction<F: SetFunction>(f: F) -> Antirestriction<F> {
    let n = f.universe_size();
    Antirestriction { f, n }
}

impl<F> Antirestriction<F> {
    /// Index of the added element.
    pub fn s(&self) -> usize {
        self.n
    }
}

impl<F: SetFunction> SetFunction for Antirestriction<F> {
    fn universe_size(&self) -> usize {
        self.n + 1
    }

    fn evaluate(&self, set: &Subset) -> Value {
        let inner = set.resize(self.n);
        if set.contains(self.n) {
            self.f.evaluate(&inner.complement())
        } else {
            self.f.evaluate(&inner)
        }
    }
}

/// A family on `V` seen on `V + s`: members never contain `s`.
pub struct ExtendedFamily<I> {
    inner: I,
    n: usize,
}

impl<I: Family> ExtendedFamily<I> {
    pub fn new(inner: I) -> Self {
        let n = inner.universe_size();
        Self { inner, n }
    }
}

impl<I: Family> Family for ExtendedFamily<I> {
    fn universe_size(&self) -> usize {
        self.n + 1
    }

    fn contains(&self, set: &Subset) -> bool {
        !set.contains(self.n) && self.inner.contains(&set.resize(self.n))
    }
}

/// [`find_optimal`] for intersecting submodular and posimodular `f`, solved
/// through its antirestriction.
pub fn find_optimal_posimodular(f: &dyn SetFunction, family: &dyn Family) -> Result<Solution> {
    let n = f.universe_size();
    let g = antirestriction(f);
    let ext = ExtendedFamily::new(family);
    let mut sol = find_optimal(&g, &ext, PairRule::Queyranne)?;
    sol.set = sol.set.resize(n);
    Ok(sol)
}

/// [`find_minimals`] for intersecting submodular and posimodular `f`.
pub fn find_minimals_posimodular(f: &dyn SetFunction, family: &dyn Family) -> Result<SolutionFamily> {
    let n = f.universe_size();
    let g = antirestriction(f);
    let ext = ExtendedFamily::new(family);
    let mut sol = find_minimals(&g, &ext, PairRule::Queyranne)?;
    for set in &mut sol.sets {
        *set = set.resize(n);
    }
    Ok(sol)
}

/// Inclusionwise-maximal minimizers of the contraction
/// `f(X) = h(X ∪ (V \ T)) - h(V \ T)` over the proper members `X ⊊ T` of an
/// upward-closed family on `T`.
///
/// `h` must be symmetric and crossing submodular on `V`. `co_family` is
/// queried only on subsets of `T`. The minimizers are found as complements
/// within `T` of the minimal minimizers of `X ↦ h(X) - h(V \ T)` over the
/// hereditary family `{T \ X : X ∈ co_family}`. The returned value is the
/// minimum of `f`.
pub fn maximal_minimizers_of_contraction(
    h: &dyn SetFunction,
    t: &Subset,
    co_family: &dyn Family,
) -> Result<SolutionFamily> {
    let n = h.universe_size();
    if t.universe_size() != n {
        return Err(Error::UniverseMismatch {
            expected: n,
            found: t.universe_size(),
        });
    }
    if co_family.universe_size() != n {
        return Err(Error::UniverseMismatch {
            expected: n,
            found: co_family.universe_size(),
        });
    }
    if t.is_empty() {
        return Err(Error::DegenerateCoFamily("T is empty".into()));
    }
    let ids: Vec<usize> = t.iter().collect();
    let k = ids.len();
    let embed = |y: &Subset| Subset::from_indices(n, y.iter().map(|i| ids[i]));
    if !co_family.contains(t) {
        return Err(Error::DegenerateCoFamily("T itself is not a member".into()));
    }
    if co_family.contains(&Subset::empty(n)) {
        return Err(Error::DegenerateCoFamily("the empty set is a member".into()));
    }

    let h = Counted::new(h);
    let outside = h.evaluate(&t.complement());
    let reduced = FnSetFunction::new(k, |y: &Subset| h.evaluate(&embed(y)) - outside);
    let complements = ComplementWithin {
        k,
        co_family,
        embed: &embed,
    };
    let sol = find_minimals_posimodular(&reduced, &complements)?;
    let sets = {
        let mut sets: Vec<Subset> = sol.sets.iter().map(|y| embed(&y.complement())).collect();
        sets.sort();
        sets
    };
    Ok(SolutionFamily {
        sets,
        value: sol.value,
        oracle_calls: h.calls(),
    })
}

struct ComplementWithin<'a, E> {
    k: usize,
    co_family: &'a dyn Family,
    embed: &'a E,
}

impl<E: Fn(&Subset) -> Subset> Family for ComplementWithin<'_, E> {
    fn universe_size(&self) -> usize {
        self.k
    }

    fn contains(&self, set: &Subset) -> bool {
        self.co_family.contains(&(self.embed)(&set.complement()))
    }
}

/// Nontrivial minimum `min { f(A) : ∅ ≠ A ⊊ V }` of a symmetric crossing
/// submodular `f`, via the family of sets avoiding element 0: one of `A*`,
/// `V \ A*` avoids it and both have the same value.
pub fn unconstrained_min(f: &dyn SetFunction) -> Result<Solution> {
    let n = f.universe_size();
    if n < 2 {
        return Err(Error::TooFewElements { needed: 2, found: n });
    }
    let family = ExcludeElementFamily::new(n, 0)?;
    find_optimal(f, &family, PairRule::Queyranne)
}
