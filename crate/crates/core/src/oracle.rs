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

//! Value and membership oracles.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use crate::subset::Subset;
use crate::value::Value;

/// A set function `f : 2^V -> Q` given by a value oracle.
///
/// Implementations must be deterministic: evaluating the same subset twice
/// returns equal values.
pub trait SetFunction {
    fn universe_size(&self) -> usize;
    fn evaluate(&self, set: &Subset) -> Value;
}

/// Membership oracle for a family of subsets. The solvers require the family
/// to be hereditary (closed under taking subsets) and to contain the empty set.
pub trait Family {
    fn universe_size(&self) -> usize;
    fn contains(&self, set: &Subset) -> bool;
}

macro_rules! forward_impls {
    ($tr:ident { $($m:ident($($a:ident: $t:ty),*) -> $r:ty;)* }) => {
        impl<T: $tr + ?Sized> $tr for &T {
            $(fn $m(&self, $($a: $t),*) -> $r { (**self).$m($($a),*) })*
        }
        impl<T: $tr + ?Sized> $tr for Box<T> {
            $(fn $m(&self, $($a: $t),*) -> $r { (**self).$m($($a),*) })*
        }
        impl<T: $tr + ?Sized> $tr for Arc<T> {
            $(fn $m(&self, $($a: $t),*) -> $r { (**self).$m($($a),*) })*
        }
    };
}

forward_impls!(SetFunction {
    universe_size() -> usize;
    evaluate(set: &Subset) -> Value;
});

forward_impls!(Family {
    universe_size() -> usize;
    contains(set: &Subset) -> bool;
});

/// Counts evaluations of the wrapped function. The counter is atomic, so a
/// counted oracle may be shared across threads.
#[derive(Debug)]
pub struct Counted<F> {
    inner: F,
    calls: AtomicU64,
}

impl<F> Counted<F> {
    pub fn new(inner: F) -> Self {
        Self {
            inner,
            calls: AtomicU64::new(0),
        }
    }

    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }

    pub fn reset(&self) {
        self.calls.store(0, Ordering::Relaxed);
    }

    pub fn inner(&self) -> &F {
        &self.inner
    }

    pub(crate) fn tick(&self) {
        self.calls.fetch_add(1, Ordering::Relaxed);
    }

    pub fn into_inner(self) -> F {
        self.inner
    }
}

impl<F: SetFunction> SetFunction for Counted<F> {
    fn universe_size(&self) -> usize {
        self.inner.universe_size()
    }

    fn evaluate(&self, set: &Subset) -> Value {
        self.tick();
        self.inner.evaluate(set)
    }
}

pub fn with_counter<F: SetFunction>(f: F) -> Counted<F> {
    Counted::new(f)
}

/// Caches values by subset. Only cache misses reach the wrapped function, so
/// `Memoized<Counted<F>>` counts underlying evaluations.
#[derive(Debug)]
pub struct Memoized<F> {
    inner: F,
    cache: Mutex<HashMap<Subset, Value>>,
}

impl<F> Memoized<F> {
    pub fn new(inner: F) -> Self {
        Self {
            inner,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn inner(&self) -> &F {
        &self.inner
    }

    pub fn cached(&self) -> usize {
        self.cache.lock().unwrap().len()
    }
}

impl<F: SetFunction> SetFunction for Memoized<F> {
    fn universe_size(&self) -> usize {
        self.inner.universe_size()
    }

    fn evaluate(&self, set: &Subset) -> Value {
        if let Some(v) = self.cache.lock().unwrap().get(set) {
            return *v;
        }
        let v = self.inner.evaluate(set);
        self.cache.lock().unwrap().insert(set.clone(), v);
        v
    }
}

/// Set function backed by a closure.
pub struct FnSetFunction<C> {
    n: usize,
    f: C,
}

impl<C: Fn(&Subset) -> Value> FnSetFunction<C> {
    pub fn new(n: usize, f: C) -> Self {
        Self { n, f }
    }
}

impl<C: Fn(&Subset) -> Value> SetFunction for FnSetFunction<C> {
    fn universe_size(&self) -> usize {
        self.n
    }

    fn evaluate(&self, set: &Subset) -> Value {
        (self.f)(set)
    }
}
