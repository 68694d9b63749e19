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

use tokswap::exact::{solve_bfs, solve_idastar, solve_weighted, DEFAULT_STATE_BUDGET};
use tokswap::model::{half_total_lower_bound, Graph, Instance, Weight, WeightedInstance};

fn main() -> tokswap::Result<()> {
    // Reverse the tokens on a path of six vertices.
    let instance = Instance::from_target_placement(Graph::path(6), (0..6).rev().collect())?;
    let bfs = solve_bfs(&instance, DEFAULT_STATE_BUDGET)?;
    let ida = solve_idastar(&instance, DEFAULT_STATE_BUDGET)?;
    println!("lower bound {}", half_total_lower_bound(&instance));
    println!("bfs:  opt {} after {} states", bfs.opt_length, bfs.expanded_states);
    println!("ida*: opt {} after {} states", ida.opt_length, ida.expanded_states);

    // Only the two end tokens cost anything to move.
    let mut weights = vec![Weight::from_integer(0); 6];
    weights[0] = Weight::from_integer(1);
    weights[5] = Weight::from_integer(1);
    let weighted = solve_weighted(&WeightedInstance::new(instance, weights)?, DEFAULT_STATE_BUDGET)?;
    println!("weighted: opt {} with {} swaps", weighted.opt_weight, weighted.witness.len());
    Ok(())
}
