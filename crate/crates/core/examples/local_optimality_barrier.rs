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

//! An instance where the cheapest known sequence must make swaps that
//! push both tokens away from their targets.

use tokswap::approx::{default_greedy_budget, greedy_locally_optimal};
use tokswap::barriers::{constructive_sequence_51, gen_local_opt_barrier, inner_cycle_shortcuts};
use tokswap::model::{is_locally_optimal, validate};

fn main() -> tokswap::Result<()> {
    for (p, q) in [(4, 2), (6, 3), (8, 4)] {
        let (inst, ann) = gen_local_opt_barrier(p, q)?;
        let seq = constructive_sequence_51(&inst, &ann);
        let lo = is_locally_optimal(&inst, &seq)?;
        println!(
            "p={p} q={q}: n={} constructive length {} valid {} locally optimal {} (first violation {:?})",
            inst.vertex_count(),
            seq.len(),
            validate(&inst, &seq)?.reaches_target,
            lo.locally_optimal,
            lo.first_violation
        );
        println!("  inner-cycle shortcuts: {}", inner_cycle_shortcuts(&inst, &ann).len());
    }

    let (inst, _) = gen_local_opt_barrier(4, 2)?;
    let greedy = greedy_locally_optimal(&inst, 1, default_greedy_budget(&inst))?;
    println!("greedy on p=4 q=2: length {}", greedy.length);
    Ok(())
}
