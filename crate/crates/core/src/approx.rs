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

//! Approximation algorithms.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{half_total_lower_bound, permutation_cycles, Instance, Swap, SwapSequence};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxResult {
    pub sequence: SwapSequence,
    pub length: usize,
    /// `ceil(total / 2)`, a lower bound on the optimum.
    pub lower_bound: usize,
}

impl ApproxResult {
    fn new(instance: &Instance, sequence: SwapSequence) -> Self {
        ApproxResult {
            length: sequence.len(),
            lower_bound: half_total_lower_bound(instance),
            sequence,
        }
    }

    /// `length / lower_bound`, or `None` when the bound is zero.
    pub fn ratio_to_lower_bound(&self) -> Option<f64> {
        (self.lower_bound > 0).then(|| self.length as f64 / self.lower_bound as f64)
    }
}

/// Cycle-decomposition 4-approximation.
///
/// Each cycle `v_0 -> v_1 -> ... -> v_{l-1} -> v_0` of the start-to-target
/// permutation is resolved by walking `j` from `l - 1` down to 1 and
/// exchanging the tokens on `v_{j-1}` and `v_j`: the first is bubbled along a
/// shortest path to `v_j`, then the displaced second token is bubbled back
/// along the same path to `v_{j-1}`. Every other token on the path returns to
/// where it was, so a phase touches only its own cycle. An exchange at
/// distance `d` costs `2d - 1` swaps, which keeps the total under
/// `2 * total(instance)`.
pub fn cycle_algorithm(instance: &Instance) -> ApproxResult {
    let graph = instance.graph();
    let dist = instance.distances();
    let mut sequence = SwapSequence::new();
    for cycle in permutation_cycles(instance) {
        for j in (1..cycle.len()).rev() {
            let (a, b) = (cycle[j - 1], cycle[j]);
            let path = dist
                .shortest_path(graph, a, b)
                .expect("cycle vertices share a component");
            for w in path.windows(2) {
                sequence.push((w[0], w[1]));
            }
            // the second token now sits one step short of `b`
            let back = &path[..path.len() - 1];
            for w in back.windows(2).rev() {
                sequence.push((w[1], w[0]));
            }
        }
    }
    ApproxResult::new(instance, sequence)
}

/// Default step budget for [`greedy_locally_optimal`]: `50 n^2`.
pub fn default_greedy_budget(instance: &Instance) -> usize {
    50 * instance.vertex_count().pow(2)
}

/// Greedy sequence in which no swap moves both tokens further away.
///
/// Takes the swap with the largest decrease of the distance sum when one
/// exists (ties by edge order). Otherwise picks, with a seeded generator, a
/// swap that does not push both tokens away and does not undo the previous
/// swap.
pub fn greedy_locally_optimal(instance: &Instance, seed: u64, step_budget: usize) -> Result<ApproxResult> {
    let graph = instance.graph();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut config = instance.start().clone();
    let mut remaining = crate::model::total(instance);
    let mut sequence = SwapSequence::new();
    let mut previous: Option<Swap> = None;
    let mut neutral = Vec::new();

    while remaining > 0 {
        if sequence.len() >= step_budget {
            return Err(Error::BudgetExceeded { budget: step_budget });
        }
        let mut best: Option<(isize, Swap)> = None;
        neutral.clear();
        for &(u, v) in graph.edges() {
            let (a, b) = (config.token_at(u), config.token_at(v));
            let da = instance.distance_to_target(a, v) as isize - instance.distance_to_target(a, u) as isize;
            let db = instance.distance_to_target(b, u) as isize - instance.distance_to_target(b, v) as isize;
            let delta = da + db;
            if delta < 0 {
                if best.is_none_or(|(d, _)| delta < d) {
                    best = Some((delta, (u, v)));
                }
            } else if !(da > 0 && db > 0) && previous != Some((u, v)) {
                neutral.push((delta, (u, v)));
            }
        }
        let (delta, swap) = match best {
            Some(choice) => choice,
            None => *neutral.choose(&mut rng).ok_or(Error::BudgetExceeded { budget: step_budget })?,
        };
        config.swap_unchecked(swap.0, swap.1);
        remaining = (remaining as isize + delta) as usize;
        sequence.push(swap);
        previous = Some(swap);
    }
    Ok(ApproxResult::new(instance, sequence))
}
