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

//! The cycle algorithm against the exact optimum on a few random instances,
//! next to the greedy locally optimal heuristic.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tokswap::approx::{cycle_algorithm, default_greedy_budget, greedy_locally_optimal};
use tokswap::exact::{solve_bfs, DEFAULT_STATE_BUDGET};
use tokswap::experiments::random_connected_instance;
use tokswap::model::is_locally_optimal;

fn main() -> tokswap::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    println!("{:>3} {:>6} {:>4} {:>6} {:>6} {:>8}", "n", "bound", "opt", "cycle", "greedy", "cycle-LO");
    for _ in 0..8 {
        let inst = random_connected_instance(&mut rng, 7, 0.3);
        let opt = solve_bfs(&inst, DEFAULT_STATE_BUDGET)?.opt_length;
        let alg = cycle_algorithm(&inst);
        let greedy = greedy_locally_optimal(&inst, 0, default_greedy_budget(&inst))?;
        let lo = is_locally_optimal(&inst, &alg.sequence)?.locally_optimal;
        println!(
            "{:>3} {:>6} {:>4} {:>6} {:>6} {:>8}",
            inst.vertex_count(),
            alg.lower_bound,
            opt,
            alg.length,
            greedy.length,
            lo
        );
    }
    Ok(())
}
