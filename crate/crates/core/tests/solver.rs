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

use hsfm_core::families::{CardinalityFamily, ExcludeElementFamily, FnFamily};
use hsfm_core::functions::{add_modular, graph_cut, WeightedGraph};
use hsfm_core::ordering::PairRule;
use hsfm_core::reference::{brute_force, random_instance, FamilyClass, FunctionClass};
use hsfm_core::solver::{
    antirestriction, find_minimals, find_optimal, find_optimal_posimodular, maximal_minimizers_of_contraction,
    unconstrained_min,
};
use hsfm_core::{Error, Family, SetFunction, Subset, Value};

fn cut(n: usize, edges: &[(usize, usize, i64)]) -> hsfm_core::functions::GraphCut {
    graph_cut(&WeightedGraph::from_int_edges(n, edges).unwrap())
}

fn set(n: usize, items: &[usize]) -> Subset {
    Subset::from_indices(n, items.iter().copied())
}

#[test]
fn unit_path_cardinality_two() {
    let f = cut(3, &[(0, 1, 1), (1, 2, 1)]);
    let fam = CardinalityFamily::new(3, 2);
    let sol = find_optimal(&f, &fam, PairRule::Queyranne).unwrap();
    assert_eq!(sol.value, Value::ONE);
    assert!(sol.set == set(3, &[0]) || sol.set == set(3, &[2]));
    let all = find_minimals(&f, &fam, PairRule::Queyranne).unwrap();
    assert_eq!(all.value, Value::ONE);
    assert_eq!(all.sets, vec![set(3, &[0]), set(3, &[2])]);
}

#[test]
fn unit_triangle_singletons() {
    let f = cut(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)]);
    let sol = find_optimal(&f, &CardinalityFamily::new(3, 1), PairRule::Queyranne).unwrap();
    assert_eq!(sol.value, Value::integer(2));
    assert_eq!(sol.set.len(), 1);
}

#[test]
fn unit_four_cycle_minimals() {
    let f = cut(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)]);
    let all = find_minimals(&f, &CardinalityFamily::new(4, 2), PairRule::Queyranne).unwrap();
    assert_eq!(all.value, Value::integer(2));
    assert_eq!(all.sets, (0..4).map(|v| set(4, &[v])).collect::<Vec<_>>());
}

#[test]
fn weighted_path_single_minimal() {
    let f = cut(3, &[(0, 1, 5), (1, 2, 1)]);
    let all = find_minimals(&f, &CardinalityFamily::new(3, 1), PairRule::Queyranne).unwrap();
    assert_eq!(all.value, Value::ONE);
    assert_eq!(all.sets, vec![set(3, &[2])]);
}

#[test]
fn error_cases() {
    let f = cut(3, &[(0, 1, 1), (1, 2, 1)]);
    assert_eq!(
        find_optimal(&f, &CardinalityFamily::new(3, 0), PairRule::Queyranne).unwrap_err(),
        Error::Infeasible
    );
    assert_eq!(
        find_optimal(&f, &CardinalityFamily::new(3, 3), PairRule::Queyranne).unwrap_err(),
        Error::TrivialFamily
    );
    let no_empty = FnFamily::new(3, |s: &Subset| !s.is_empty());
    assert!(no_empty.is_err());
    assert!(find_optimal(&f, &CardinalityFamily::new(4, 2), PairRule::Queyranne).is_err());
}

#[test]
fn antirestriction_triangle_plus_modular() {
    let base = cut(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)]);
    let f = add_modular(base, &[Value::ONE, Value::ZERO, Value::ZERO]).unwrap();
    let fam = CardinalityFamily::new(3, 2);
    let sol = find_optimal_posimodular(&f, &fam).unwrap();
    let bf = brute_force(&f, &fam).unwrap();
    assert_eq!(sol.value, bf.min_value);
    assert!(bf.minimal_minimizers.contains(&sol.set));
    let g = antirestriction(&f);
    assert_eq!(g.universe_size(), 4);
    assert_eq!(g.evaluate(&set(4, &[0])), f.evaluate(&set(3, &[0])));
    assert_eq!(g.evaluate(&set(4, &[0, 3])), f.evaluate(&set(3, &[1, 2])));
}

#[test]
fn co_hereditary_contains_a() {
    let h = cut(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)]);
    struct ContainsA;
    impl Family for ContainsA {
        fn universe_size(&self) -> usize {
            3
        }
        fn contains(&self, s: &Subset) -> bool {
            s.contains(0)
        }
    }
    let sol = maximal_minimizers_of_contraction(&h, &Subset::full(3), &ContainsA).unwrap();
    // proper members containing a: {a}, {a,b}, {a,c}, all cut 2
    assert_eq!(sol.value, Value::integer(2));
    assert_eq!(sol.sets, vec![set(3, &[0, 1]), set(3, &[0, 2])]);
    let everything = FnFamily::new(3, |_: &Subset| true).unwrap();
    assert!(matches!(
        maximal_minimizers_of_contraction(&h, &Subset::full(3), &everything),
        Err(Error::DegenerateCoFamily(_))
    ));
}

#[test]
fn constant_contraction_gives_every_maximal_proper_member() {
    let h = hsfm_core::oracle::FnSetFunction::new(4, |_: &Subset| Value::integer(7));
    struct NonEmpty;
    impl Family for NonEmpty {
        fn universe_size(&self) -> usize {
            4
        }
        fn contains(&self, s: &Subset) -> bool {
            !s.is_empty()
        }
    }
    let t = set(4, &[0, 1, 2]);
    let sol = maximal_minimizers_of_contraction(&h, &t, &NonEmpty).unwrap();
    assert_eq!(sol.value, Value::ZERO);
    assert_eq!(sol.sets, vec![set(4, &[0, 1]), set(4, &[0, 2]), set(4, &[1, 2])]);
}

#[test]
fn unconstrained_examples() {
    assert_eq!(
        unconstrained_min(&cut(3, &[(0, 1, 1), (1, 2, 1)])).unwrap().value,
        Value::ONE
    );
    let c4 = cut(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)]);
    assert_eq!(unconstrained_min(&c4).unwrap().value, Value::integer(2));
    let two = cut(2, &[(0, 1, 3)]);
    let sol = unconstrained_min(&two).unwrap();
    assert_eq!((sol.value, sol.set), (Value::integer(3), set(2, &[1])));
    let ex = find_minimals(&two, &ExcludeElementFamily::new(2, 0).unwrap(), PairRule::Queyranne).unwrap();
    assert_eq!(ex.sets, vec![set(2, &[1])]);
}

#[test]
fn random_sweep_matches_brute_force() {
    let fcs = [
        FunctionClass::GraphCut,
        FunctionClass::HypergraphCut,
        FunctionClass::CutPlusModular,
        FunctionClass::DistanceBoundary,
    ];
    let mut k = 0u64;
    for &fc in &fcs {
        for &fam in &FamilyClass::ALL {
            for seed in 0..15u64 {
                k += 1;
                let n = 2 + (k as usize * 7) % 8;
                let inst = random_instance(seed * 1000 + k, n, fc, fam).unwrap();
                let p = inst.build().unwrap();
                let route = p.resolve(hsfm_core::instance::Adapter::Auto).unwrap();
                let bf = brute_force(&*p.function, &*p.family).unwrap();
                let one = p.solve_optimal(&route).unwrap();
                assert_eq!(one.value, bf.min_value, "optimal {inst:?}");
                assert!(bf.minimal_minimizers.contains(&one.set), "minimality {inst:?}");
                let all = p.solve_minimals(&route).unwrap();
                assert_eq!(all.value, bf.min_value);
                let mut got = all.sets.clone();
                got.sort();
                assert_eq!(got, bf.minimal_minimizers, "minimals {inst:?}");
            }
        }
    }
}
