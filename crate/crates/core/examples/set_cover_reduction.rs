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

use tokswap::exact::{solve_weighted, DEFAULT_STATE_BUDGET};
use tokswap::model::{sequence_weight, validate};
use tokswap::reductions::{build_from_set_cover, cover_sequence, set_cover_optimal, SetCoverInstance};

fn main() -> tokswap::Result<()> {
    let phi = SetCoverInstance {
        universe_size: 5,
        sets: vec![vec![0, 1, 2], vec![2, 3], vec![3, 4], vec![0, 4]],
    };
    let (winst, roles) = build_from_set_cover(&phi)?;
    let cover = set_cover_optimal(&phi)?;
    println!("optimal cover {cover:?}");

    let seq = cover_sequence(&phi, &cover, &winst, &roles)?;
    println!(
        "cover sequence: {} swaps, weight {}, valid {}",
        seq.len(),
        sequence_weight(&winst, &seq)?,
        validate(winst.instance(), &seq)?.reaches_target
    );

    let solved = solve_weighted(&winst, DEFAULT_STATE_BUDGET)?;
    println!("weighted optimum {} ({} class states)", solved.opt_weight, solved.expanded_states);
    Ok(())
}
