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

//! Exhaustive property checkers for small universes.
//!
//! These enumerate `2^n` subsets (or `4^n` pairs) and are meant for tests and
//! instance certification, never for the solver path.

use crate::error::{Error, Result};
use crate::oracle::{Family, SetFunction};
use crate::subset::Subset;
use crate::value::Value;

pub const DEFAULT_CAP: usize = 16;

/// A pair of sets violating an inequality `lhs <= rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub a: Subset,
    pub b: Subset,
    pub lhs: Value,
    pub rhs: Value,
}

#[derive(Clone, Copy, Debug)]
pub struct Validator {
    pub cap: usize,
}

impl Default for Validator {
    fn default() -> Self {
        Self { cap: DEFAULT_CAP }
    }
}

fn crossing(a: u64, b: u64, full: u64) -> bool {
    a & !b != 0 && b & !a != 0 && a & b != 0 && full & !(a | b) != 0
}

fn intersecting(a: u64, b: u64) -> bool {
    a & !b != 0 && b & !a != 0 && a & b != 0
}

impl Validator {
    pub fn with_cap(cap: usize) -> Self {
        Self { cap: cap.min(63) }
    }

    fn check_size(&self, n: usize) -> Result<()> {
        if n > self.cap || n >= 64 {
            return Err(Error::TooLarge { n, cap: self.cap });
        }
        Ok(())
    }

    fn table<F: SetFunction + ?Sized>(&self, f: &F) -> Result<Vec<Value>> {
        let n = f.universe_size();
        self.check_size(n)?;
        Ok((0..1u64 << n).map(|b| f.evaluate(&Subset::from_bits(n, b))).collect())
    }

    /// First set `A` with `f(A) != f(V \ A)`.
    pub fn symmetry_violation<F: SetFunction + ?Sized>(&self, f: &F) -> Result<Option<Subset>> {
        let n = f.universe_size();
        let t = self.table(f)?;
        let full = (1u64 << n) - 1;
        Ok((0..=full)
            .find(|&a| t[a as usize] != t[(full & !a) as usize])
            .map(|a| Subset::from_bits(n, a)))
    }

    pub fn symmetric<F: SetFunction + ?Sized>(&self, f: &F) -> Result<bool> {
        Ok(self.symmetry_violation(f)?.is_none())
    }

    fn pair_violations<F: SetFunction + ?Sized>(
        &self,
        f: &F,
        keep: impl Fn(u64, u64, u64) -> bool,
        sides: impl Fn(u64, u64) -> (u64, u64),
        limit: usize,
    ) -> Result<Vec<Violation>> {
        let n = f.universe_size();
        let t = self.table(f)?;
        let full = (1u64 << n) - 1;
        let mut out = Vec::new();
        for a in 0..=full {
            for b in a + 1..=full {
                if !keep(a, b, full) {
                    continue;
                }
                let (x, y) = sides(a, b);
                let lhs = t[x as usize] + t[y as usize];
                let rhs = t[a as usize] + t[b as usize];
                if lhs > rhs {
                    out.push(Violation {
                        a: Subset::from_bits(n, a),
                        b: Subset::from_bits(n, b),
                        lhs,
                        rhs,
                    });
                    if out.len() == limit {
                        return Ok(out);
                    }
                }
            }
        }
        Ok(out)
    }

    fn pair_violation<F: SetFunction + ?Sized>(
        &self,
        f: &F,
        keep: impl Fn(u64, u64, u64) -> bool,
        sides: impl Fn(u64, u64) -> (u64, u64),
    ) -> Result<Option<Violation>> {
        Ok(self.pair_violations(f, keep, sides, 1)?.pop())
    }

    /// First pair violating `f(A ∪ B) + f(A ∩ B) <= f(A) + f(B)`.
    pub fn submodular_violation<F: SetFunction + ?Sized>(&self, f: &F) -> Result<Option<Violation>> {
        self.pair_violation(f, |_, _, _| true, |a, b| (a | b, a & b))
    }

    /// Like [`Self::submodular_violation`] but restricted to crossing pairs.
    pub fn crossing_submodular_violation<F: SetFunction + ?Sized>(&self, f: &F) -> Result<Option<Violation>> {
        self.pair_violation(f, crossing, |a, b| (a | b, a & b))
    }

    /// Every crossing pair `A < B` (ordered by bitmask) violating submodularity.
    pub fn crossing_submodular_violations<F: SetFunction + ?Sized>(&self, f: &F) -> Result<Vec<Violation>> {
        self.pair_violations(f, crossing, |a, b| (a | b, a & b), usize::MAX)
    }

    /// First intersecting pair violating `f(A \ B) + f(B \ A) <= f(A) + f(B)`.
    pub fn posimodular_violation<F: SetFunction + ?Sized>(&self, f: &F) -> Result<Option<Violation>> {
        self.pair_violation(f, |a, b, _| intersecting(a, b), |a, b| (a & !b, b & !a))
    }

    pub fn intersecting_submodular<F: SetFunction + ?Sized>(&self, f: &F) -> Result<bool> {
        Ok(self
            .pair_violation(f, |a, b, _| intersecting(a, b), |a, b| (a | b, a & b))?
            .is_none())
    }

    pub fn submodular<F: SetFunction + ?Sized>(&self, f: &F) -> Result<bool> {
        Ok(self.submodular_violation(f)?.is_none())
    }

    pub fn crossing_submodular<F: SetFunction + ?Sized>(&self, f: &F) -> Result<bool> {
        Ok(self.crossing_submodular_violation(f)?.is_none())
    }

    pub fn intersecting_posimodular<F: SetFunction + ?Sized>(&self, f: &F) -> Result<bool> {
        Ok(self.posimodular_violation(f)?.is_none())
    }

    fn members<I: Family + ?Sized>(&self, family: &I) -> Result<Vec<bool>> {
        let n = family.universe_size();
        self.check_size(n)?;
        Ok((0..1u64 << n)
            .map(|b| family.contains(&Subset::from_bits(n, b)))
            .collect())
    }

    /// Downward closure: every member's subsets are members.
    pub fn hereditary<I: Family + ?Sized>(&self, family: &I) -> Result<bool> {
        let n = family.universe_size();
        let m = self.members(family)?;
        Ok((0..1u64 << n).all(|s| !m[s as usize] || (0..n).all(|v| s >> v & 1 == 0 || m[(s & !(1 << v)) as usize])))
    }

    /// Upward closure: every member's supersets are members.
    pub fn upward_closed<I: Family + ?Sized>(&self, family: &I) -> Result<bool> {
        let n = family.universe_size();
        let m = self.members(family)?;
        Ok((0..1u64 << n).all(|s| !m[s as usize] || (0..n).all(|v| s >> v & 1 == 1 || m[(s | 1 << v) as usize])))
    }

    /// Matroid independence axioms: nonempty, hereditary, and the exchange
    /// property for every pair of members of different sizes.
    pub fn matroid<I: Family + ?Sized>(&self, family: &I) -> Result<bool> {
        let n = family.universe_size();
        let m = self.members(family)?;
        if !m[0] || !self.hereditary(family)? {
            return Ok(false);
        }
        let indep: Vec<u64> = (0..1u64 << n).filter(|&s| m[s as usize]).collect();
        for &i in &indep {
            for &j in &indep {
                if i.count_ones() < j.count_ones() {
                    let ok = (0..n).any(|x| j >> x & 1 == 1 && i >> x & 1 == 0 && m[(i | 1 << x) as usize]);
                    if !ok {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

pub fn validate_symmetric<F: SetFunction + ?Sized>(f: &F) -> Result<bool> {
    Validator::default().symmetric(f)
}

pub fn validate_submodular<F: SetFunction + ?Sized>(f: &F) -> Result<bool> {
    Validator::default().submodular(f)
}

pub fn validate_crossing_submodular<F: SetFunction + ?Sized>(f: &F) -> Result<bool> {
    Validator::default().crossing_submodular(f)
}

pub fn validate_intersecting_posimodular<F: SetFunction + ?Sized>(f: &F) -> Result<bool> {
    Validator::default().intersecting_posimodular(f)
}

pub fn validate_hereditary<I: Family + ?Sized>(family: &I) -> Result<bool> {
    Validator::default().hereditary(family)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::FnSetFunction;

    fn card(n: usize, sign: i128) -> impl SetFunction {
        FnSetFunction::new(n, move |s: &Subset| Value::integer(sign * s.len() as i128))
    }

    #[test]
    fn cardinality_is_not_symmetric() {
        assert!(!validate_symmetric(&card(3, 1)).unwrap());
        let v = Validator::default().symmetry_violation(&card(3, 1)).unwrap().unwrap();
        assert!(v.is_empty());
    }

    #[test]
    fn modular_is_crossing_submodular() {
        let w = [3i128, -1, 4, 0];
        let f = FnSetFunction::new(4, move |s: &Subset| Value::integer(s.iter().map(|v| w[v]).sum()));
        assert!(validate_crossing_submodular(&f).unwrap());
        assert!(validate_submodular(&f).unwrap());
    }

    #[test]
    fn negative_cardinality_not_posimodular() {
        // A = {a,b}, B = {b,c}: f(A\B) + f(B\A) = -2 > f(A) + f(B) = -4.
        let f = card(3, -1);
        let v = Validator::default().posimodular_violation(&f).unwrap().unwrap();
        assert_eq!(v.lhs, Value::integer(-2));
        assert_eq!(v.rhs, Value::integer(-4));
        assert!(!validate_intersecting_posimodular(&f).unwrap());
    }

    #[test]
    fn cap_is_enforced() {
        let f = card(17, 1);
        assert_eq!(validate_symmetric(&f), Err(Error::TooLarge { n: 17, cap: 16 }));
        assert!(Validator::with_cap(4).symmetric(&card(5, 1)).is_err());
    }

    struct Explicit(usize, Vec<u64>);
    impl Family for Explicit {
        fn universe_size(&self) -> usize {
            self.0
        }
        fn contains(&self, s: &Subset) -> bool {
            self.1.contains(&s.bits())
        }
    }

    #[test]
    fn explicit_family_missing_subset() {
        // {∅, {a}, {a,b}} lacks {b}.
        assert!(!validate_hereditary(&Explicit(2, vec![0b00, 0b01, 0b11])).unwrap());
        assert!(validate_hereditary(&Explicit(2, vec![0b00, 0b01, 0b10])).unwrap());
        assert!(Validator::default()
            .upward_closed(&Explicit(2, vec![0b01, 0b11]))
            .unwrap());
        assert!(!Validator::default().upward_closed(&Explicit(2, vec![0b01])).unwrap());
    }
}
