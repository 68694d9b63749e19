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

//! Instance model: graphs, configurations, swap sequences and the
//! measurements defined over them.

mod config;
mod graph;
mod instance;
pub mod io;
mod measure;
mod sequence;

pub use config::{Configuration, Token};
pub use graph::{DistanceTable, Graph, Vertex};
pub use instance::{Instance, Weight, WeightedInstance};
pub use measure::{
    half_total_lower_bound, is_locally_optimal, permutation_cycles, region_swap_counts,
    sequence_weight, simplify_walk, swap_path, token_walk, total, EdgeRegions, LocalOptimality,
};
pub use sequence::{bubble, validate, Swap, SwapSequence, ValidationReport};
