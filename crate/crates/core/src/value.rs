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

//! Exact rational scalars.
//!
//! Values are `i128` fractions kept in lowest terms. Arithmetic is checked;
//! overflowing an `i128` numerator or denominator panics instead of wrapping.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Signed, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Value(Ratio<i128>);

impl Value {
    pub const ZERO: Value = Value(Ratio::new_raw(0, 1));
    pub const ONE: Value = Value(Ratio::new_raw(1, 1));

    pub fn new(numer: i128, denom: i128) -> Result<Self, Error> {
        if denom == 0 {
            return Err(Error::InvalidValue(format!("{numer}/0 has a zero denominator")));
        }
        Ok(Value(Ratio::new(numer, denom)))
    }

    pub fn integer(v: i128) -> Self {
        Value(Ratio::from_integer(v))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn half(self) -> Self {
        self / Value::integer(2)
    }

    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value::integer(v as i128)
    }
}

impl From<i32> for Value {
    fn from(v: i32) -> Self {
        Value::integer(v as i128)
    }
}

impl Add for Value {
    type Output = Value;
    fn add(self, rhs: Value) -> Value {
        Value(self.0.checked_add(&rhs.0).expect("rational overflow in addition"))
    }
}

impl Sub for Value {
    type Output = Value;
    fn sub(self, rhs: Value) -> Value {
        Value(self.0.checked_sub(&rhs.0).expect("rational overflow in subtraction"))
    }
}

impl Mul for Value {
    type Output = Value;
    fn mul(self, rhs: Value) -> Value {
        Value(self.0.checked_mul(&rhs.0).expect("rational overflow in multiplication"))
    }
}

impl Div for Value {
    type Output = Value;
    fn div(self, rhs: Value) -> Value {
        assert!(!rhs.is_zero(), "division by zero");
        Value(self.0.checked_div(&rhs.0).expect("rational overflow in division"))
    }
}

impl Neg for Value {
    type Output = Value;
    fn neg(self) -> Value {
        Value::ZERO - self
    }
}

impl AddAssign for Value {
    fn add_assign(&mut self, rhs: Value) {
        *self = *self + rhs;
    }
}

impl SubAssign for Value {
    fn sub_assign(&mut self, rhs: Value) {
        *self = *self - rhs;
    }
}

impl Sum for Value {
    fn sum<I: Iterator<Item = Value>>(iter: I) -> Value {
        iter.fold(Value::ZERO, Add::add)
    }
}

impl<'a> Sum<&'a Value> for Value {
    fn sum<I: Iterator<Item = &'a Value>>(iter: I) -> Value {
        iter.copied().sum()
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Value {
    type Err = Error;

    /// Accepts `"p"` or `"p/q"` with optional surrounding whitespace.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::InvalidValue(format!("{s:?} is not a rational of the form p or p/q"));
        let t = s.trim();
        match t.split_once('/') {
            None => t.parse::<i128>().map(Value::integer).map_err(|_| bad()),
            Some((p, q)) => {
                let p = p.trim().parse::<i128>().map_err(|_| bad())?;
                let q = q.trim().parse::<i128>().map_err(|_| bad())?;
                Value::new(p, q)
            }
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Value {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct ValueVisitor;

        impl Visitor<'_> for ValueVisitor {
            type Value = Value;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a \"p/q\" string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Value, E> {
                Ok(Value::from(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Value, E> {
                Ok(Value::integer(v as i128))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Value, E> {
                v.parse().map_err(E::custom)
            }
        }

        deserializer.deserialize_any(ValueVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_display() {
        assert_eq!("3/2".parse::<Value>().unwrap(), Value::new(3, 2).unwrap());
        assert_eq!("4/6".parse::<Value>().unwrap().to_string(), "2/3");
        assert_eq!("-5".parse::<Value>().unwrap().to_string(), "-5");
        assert_eq!(Value::new(2, -4).unwrap().to_string(), "-1/2");
        assert!("1/0".parse::<Value>().is_err());
        assert!("x".parse::<Value>().is_err());
    }

    #[test]
    fn serde_accepts_ints_and_strings() {
        let v: Vec<Value> = serde_json::from_str(r#"[1, "3/4", "-2"]"#).unwrap();
        assert_eq!(v, vec![Value::ONE, Value::new(3, 4).unwrap(), Value::integer(-2)]);
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"["1","3/4","-2"]"#);
        assert!(serde_json::from_str::<Value>("1.5").is_err());
    }

    fn rational() -> impl Strategy<Value = Value> {
        (-1000i128..1000, 1i128..50).prop_map(|(p, q)| Value::new(p, q).unwrap())
    }

    proptest! {
        #[test]
        fn add_sub_roundtrip(a in rational(), b in rational()) {
            prop_assert_eq!((a + b) - b, a);
            prop_assert_eq!(a + b, b + a);
            prop_assert!(a.denom() > 0);
        }

        #[test]
        fn order_is_total_and_rational(a in rational(), b in rational(), c in rational()) {
            let lhs = a.numer() * b.denom();
            let rhs = b.numer() * a.denom();
            prop_assert_eq!(a.cmp(&b), lhs.cmp(&rhs));
            if a <= b && b <= c {
                prop_assert!(a <= c);
            }
        }
    }
}
