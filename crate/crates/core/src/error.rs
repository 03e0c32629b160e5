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

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("universe of {n} elements is too large to enumerate (cap {cap})")]
    TooLarge { n: usize, cap: usize },
    #[error("invalid ground set: {0}")]
    InvalidGroundSet(String),
    #[error("oracle universe mismatch: expected {expected} elements, found {found}")]
    UniverseMismatch { expected: usize, found: usize },
    #[error("degenerate family: the empty set is not a member")]
    DegenerateFamily,
    #[error("trivial family: the whole ground set is feasible (use unconstrained minimization instead)")]
    TrivialFamily,
    #[error("infeasible: no nonempty set belongs to the family")]
    Infeasible,
    #[error("graph is disconnected: distance between {0} and {1} is infinite")]
    Disconnected(usize, usize),
    #[error("invalid contraction: {0}")]
    InvalidContraction(String),
    #[error("need at least {needed} current elements, found {found}")]
    TooFewElements { needed: usize, found: usize },
    #[error("element {0} is not a current element")]
    UnknownElement(usize),
    #[error("invalid value: {0}")]
    InvalidValue(String),
    #[error("degenerate co-hereditary family: {0}")]
    DegenerateCoFamily(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
}
