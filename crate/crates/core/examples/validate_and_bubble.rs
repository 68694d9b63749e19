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

//! Build a small instance by hand, bubble a token along a path and inspect
//! the result with the validator and the per-token measurements.

use tokswap::model::{bubble, permutation_cycles, swap_path, total, validate, Graph, Instance};

fn main() -> tokswap::Result<()> {
    // A 5-cycle where every token wants to move two steps clockwise.
    let graph = Graph::cycle(5)?;
    let instance = Instance::from_target_placement(graph, (0..5).map(|t| (t + 2) % 5).collect())?;
    println!("total distance: {}", total(&instance));
    println!("cycles: {:?}", permutation_cycles(&instance));

    let seq = bubble(instance.graph(), &[0, 1, 2])?;
    let report = validate(&instance, &seq)?;
    println!("bubbled 0 -> 2 with {} swaps: {:?}", report.length, seq.iter().collect::<Vec<_>>());
    println!("token 0 now on vertex {}", report.final_config.vertex_of(0));
    println!("reaches target: {}", report.reaches_target);
    for t in 0..5 {
        println!("  token {t} path {:?}", swap_path(&instance, &seq, t)?);
    }
    Ok(())
}
