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

//! Measurements over instances and swap sequences.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::{Instance, SwapSequence, Token, Vertex, Weight, WeightedInstance};

/// Sum over tokens of the hop distance from start to target.
pub fn total(instance: &Instance) -> usize {
    (0..instance.vertex_count())
        .map(|t| instance.distance_to_target(t, instance.start().vertex_of(t)))
        .sum()
}

/// `ceil(total / 2)`: a swap brings at most two tokens one step closer.
pub fn half_total_lower_bound(instance: &Instance) -> usize {
    total(instance).div_ceil(2)
}

/// Sum over swaps of the weights of the two tokens being exchanged.
pub fn sequence_weight(winst: &WeightedInstance, seq: &SwapSequence) -> Result<Weight> {
    let instance = winst.instance();
    seq.check_edges(instance.graph())?;
    let mut config = instance.start().clone();
    let mut sum = Weight::from_integer(0);
    for &(u, v) in seq {
        sum += winst.weight(config.token_at(u)) + winst.weight(config.token_at(v));
        config.swap_unchecked(u, v);
    }
    Ok(sum)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalOptimality {
    pub locally_optimal: bool,
    pub first_violation: Option<usize>,
}

/// A sequence is locally optimal when no swap moves both of its tokens
/// strictly further from their targets.
pub fn is_locally_optimal(instance: &Instance, seq: &SwapSequence) -> Result<LocalOptimality> {
    seq.check_edges(instance.graph())?;
    let mut config = instance.start().clone();
    for (index, &(u, v)) in seq.iter().enumerate() {
        let (a, b) = (config.token_at(u), config.token_at(v));
        let a_worse = instance.distance_to_target(a, v) > instance.distance_to_target(a, u);
        let b_worse = instance.distance_to_target(b, u) > instance.distance_to_target(b, v);
        if a_worse && b_worse {
            return Ok(LocalOptimality {
                locally_optimal: false,
                first_violation: Some(index),
            });
        }
        config.swap_unchecked(u, v);
    }
    Ok(LocalOptimality {
        locally_optimal: true,
        first_violation: None,
    })
}

/// The vertices visited by `token` while `seq` is applied, starting from its
/// start vertex.
pub fn token_walk(instance: &Instance, seq: &SwapSequence, token: Token) -> Result<Vec<Vertex>> {
    seq.check_edges(instance.graph())?;
    let mut config = instance.start().clone();
    let mut walk = vec![config.vertex_of(token)];
    for &(u, v) in seq {
        config.swap_unchecked(u, v);
        let now = config.vertex_of(token);
        if now != *walk.last().unwrap() {
            walk.push(now);
        }
    }
    Ok(walk)
}

/// Removes closed sub-walks left to right: whenever a vertex repeats, the
/// stretch since its earlier occurrence is cut. The result is a simple path
/// with the same endpoints.
pub fn simplify_walk(walk: &[Vertex]) -> Vec<Vertex> {
    let mut path: Vec<Vertex> = Vec::with_capacity(walk.len());
    for &v in walk {
        if let Some(i) = path.iter().position(|&w| w == v) {
            path.truncate(i + 1);
        } else {
            path.push(v);
        }
    }
    path
}

/// The simple path traced by `token` under `seq`, with closed sub-walks removed.
pub fn swap_path(instance: &Instance, seq: &SwapSequence, token: Token) -> Result<Vec<Vertex>> {
    Ok(simplify_walk(&token_walk(instance, seq, token)?))
}

/// Cycles of the permutation `v -> target vertex of the token starting on v`.
///
/// Fixed points are length-1 cycles. Cycles are listed by smallest vertex and
/// each begins at its smallest vertex; within a cycle the token starting on
/// `cycle[j]` targets `cycle[(j + 1) % len]`.
pub fn permutation_cycles(instance: &Instance) -> Vec<Vec<Vertex>> {
    let n = instance.vertex_count();
    let next = |v: Vertex| instance.target_of(instance.start().token_at(v));
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut v = root;
        while !seen[v] {
            seen[v] = true;
            cycle.push(v);
            v = next(v);
        }
        cycles.push(cycle);
    }
    cycles
}

/// Edge to region label, keyed by normalized `(min, max)` pairs.
pub type EdgeRegions<L> = BTreeMap<(Vertex, Vertex), L>;

/// Number of swaps falling in each region. Every label of `regions` appears
/// in the result, with zero when unused.
pub fn region_swap_counts<L: Ord + Clone>(
    instance: &Instance,
    seq: &SwapSequence,
    regions: &EdgeRegions<L>,
) -> Result<BTreeMap<L, usize>> {
    seq.check_edges(instance.graph())?;
    let mut counts: BTreeMap<L, usize> = regions.values().map(|l| (l.clone(), 0)).collect();
    for &(u, v) in seq {
        let label = regions
            .get(&(u.min(v), u.max(v)))
            .ok_or(Error::UnlabeledEdge { u, v })?;
        *counts.get_mut(label).unwrap() += 1;
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Graph;

    fn p2_swapped() -> Instance {
        Instance::from_target_placement(Graph::path(2), vec![1, 0]).unwrap()
    }

    fn c3_rotation() -> Instance {
        Instance::from_target_placement(Graph::cycle(3).unwrap(), vec![1, 2, 0]).unwrap()
    }

    #[test]
    fn totals() {
        let id = Instance::from_target_placement(Graph::path(4), vec![0, 1, 2, 3]).unwrap();
        assert_eq!(total(&id), 0);
        assert_eq!(half_total_lower_bound(&id), 0);
        assert_eq!(total(&p2_swapped()), 2);
        assert_eq!(half_total_lower_bound(&p2_swapped()), 1);
        assert_eq!(total(&c3_rotation()), 3);
        assert_eq!(half_total_lower_bound(&c3_rotation()), 2);
    }

    #[test]
    fn weights_follow_the_moving_tokens() {
        let w = WeightedInstance::new(
            p2_swapped(),
            vec![Weight::from_integer(1), Weight::from_integer(0)],
        )
        .unwrap();
        assert_eq!(
            sequence_weight(&w, &vec![(0, 1)].into()).unwrap(),
            Weight::from_integer(1)
        );
        let zero = WeightedInstance::uniform(c3_rotation(), Weight::from_integer(0));
        let seq = vec![(0, 1), (1, 2), (0, 2)].into();
        assert_eq!(sequence_weight(&zero, &seq).unwrap(), Weight::from_integer(0));
        // token 0 is swapped twice, token 1 twice, token 2 twice
        let half = WeightedInstance::uniform(c3_rotation(), Weight::new(1, 2));
        assert_eq!(sequence_weight(&half, &seq).unwrap(), Weight::from_integer(3));
    }

    #[test]
    fn local_optimality_flags_first_bad_swap() {
        let inst = p2_swapped();
        assert!(is_locally_optimal(&inst, &SwapSequence::new()).unwrap().locally_optimal);
        // second swap moves both tokens away from their targets
        let seq = vec![(0, 1), (0, 1)].into();
        let lo = is_locally_optimal(&inst, &seq).unwrap();
        assert_eq!(
            lo,
            LocalOptimality {
                locally_optimal: false,
                first_violation: Some(1)
            }
        );
    }

    #[test]
    fn swap_path_of_untouched_token() {
        let inst = c3_rotation();
        assert_eq!(swap_path(&inst, &vec![(1, 2)].into(), 0).unwrap(), vec![0]);
    }

    #[test]
    fn swap_path_drops_closed_subwalks() {
        let inst = Instance::from_target_placement(Graph::cycle(3).unwrap(), vec![0, 1, 2]).unwrap();
        // token 0 walks 0 -> 1 -> 0 -> 2
        let seq = vec![(0, 1), (1, 0), (0, 2)].into();
        assert_eq!(token_walk(&inst, &seq, 0).unwrap(), vec![0, 1, 0, 2]);
        assert_eq!(swap_path(&inst, &seq, 0).unwrap(), vec![0, 2]);
    }

    #[test]
    fn simplify_walk_cuts_leftmost_repeat() {
        // hand simulation: first repeat is the second visit of 1, cut [2, 1]
        assert_eq!(simplify_walk(&[0, 1, 2, 1, 3]), vec![0, 1, 3]);
        assert_eq!(simplify_walk(&[0, 1, 2, 0, 1]), vec![0, 1]);
        assert_eq!(simplify_walk(&[4]), vec![4]);
    }

    #[test]
    fn cycles() {
        let id = Instance::from_target_placement(Graph::path(4), vec![0, 1, 2, 3]).unwrap();
        assert_eq!(permutation_cycles(&id), vec![vec![0], vec![1], vec![2], vec![3]]);
        assert_eq!(permutation_cycles(&p2_swapped()), vec![vec![0, 1]]);
        assert_eq!(permutation_cycles(&c3_rotation()), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn region_counts() {
        let inst = Instance::from_target_placement(Graph::path(3), vec![0, 1, 2]).unwrap();
        let mut regions = EdgeRegions::new();
        regions.insert((0, 1), "sat");
        regions.insert((1, 2), "gad");
        let empty = region_swap_counts(&inst, &SwapSequence::new(), &regions).unwrap();
        assert_eq!(empty.values().sum::<usize>(), 0);
        assert_eq!(empty.len(), 2);
        let seq = vec![(1, 0), (0, 1), (0, 1)].into();
        let counts = region_swap_counts(&inst, &seq, &regions).unwrap();
        assert_eq!(counts["sat"], 3);
        assert_eq!(counts["gad"], 0);
        regions.remove(&(1, 2));
        assert_eq!(
            region_swap_counts(&inst, &vec![(2, 1)].into(), &regions),
            Err(Error::UnlabeledEdge { u: 2, v: 1 })
        );
    }
}
