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

//! Minimal minimizers of symmetric crossing-submodular set functions over
//! hereditary (downward-closed) families, using `O(n^3)` value-oracle calls.

pub mod contraction;
pub mod error;
pub mod families;
pub mod functions;
pub mod instance;
pub mod oracle;
pub mod ordering;
pub mod reference;
pub mod solver;
pub mod subset;
pub mod validate;
pub mod value;

pub use error::{Error, Result};
pub use oracle::{Counted, Family, Memoized, SetFunction};
pub use subset::{GroundSet, Subset};
pub use value::Value;
