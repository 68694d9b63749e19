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

use tokswap::approx::cycle_algorithm;
use tokswap::barriers::{gen_ratio_barrier, ratio_floor};
use tokswap::exact::{solve_bfs, DEFAULT_STATE_BUDGET};
use tokswap::model::{half_total_lower_bound, total};

fn main() -> tokswap::Result<()> {
    println!("{:>2} {:>2} {:>5} {:>10} {:>5} {:>4} {:>5}", "p", "q", "total", "total/2", "floor", "opt", "cycle");
    for (p, q) in [(2, 2), (3, 2), (2, 3), (4, 2)] {
        let inst = gen_ratio_barrier(p, q)?;
        let opt = solve_bfs(&inst, DEFAULT_STATE_BUDGET)?.opt_length;
        println!(
            "{p:>2} {q:>2} {:>5} {:>10} {:>5} {opt:>4} {:>5}",
            total(&inst),
            half_total_lower_bound(&inst),
            ratio_floor(p, q),
            cycle_algorithm(&inst).length
        );
    }
    Ok(())
}
