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

//! Token swapping on graphs.
//!
//! Tokens sit one per vertex; a swap exchanges the tokens at the ends of an
//! edge, and the goal is to reach a target placement with as few swaps (or
//! as little total token weight) as possible. The crate provides:
//!
//! * [`model`]: graphs, configurations, swap sequences, validation and the
//!   distance-based measurements (`total`, local optimality, token paths);
//! * [`exact`]: breadth-first, IDA* and weighted (Dijkstra over token classes) solvers;
//! * [`approx`]: the cycle-decomposition 4-approximation and a greedy
//!   locally optimal baseline;
//! * [`reductions`]: label-cover and set-cover gadget constructions with
//!   their constructive swap sequences;
//! * [`barriers`]: the two barrier instance families;
//! * [`experiments`] and [`cli`]: batch drivers behind the `tokswap` binary.

pub mod approx;
pub mod barriers;
pub mod cli;
pub mod error;
pub mod exact;
pub mod experiments;
pub mod model;
pub mod reductions;

pub use error::{Error, Result};
