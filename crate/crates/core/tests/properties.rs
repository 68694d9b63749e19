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

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tokswap::approx::{cycle_algorithm, default_greedy_budget, greedy_locally_optimal};
use tokswap::barriers::{gen_local_opt_barrier, gen_ratio_barrier, ratio_floor};
use tokswap::exact::{solve_bfs, solve_idastar, solve_weighted, DEFAULT_STATE_BUDGET};
use tokswap::experiments::random_connected_instance;
use tokswap::model::{
    bubble, half_total_lower_bound, is_locally_optimal, permutation_cycles, region_swap_counts, sequence_weight,
    swap_path, total, validate, Configuration, EdgeRegions, Instance, SwapSequence, Weight, WeightedInstance,
};
use tokswap::reductions::{
    build_from_label_cover, build_from_set_cover, cover_sequence, prune_cover, LabelCoverInstance, SetCoverInstance,
};

fn instance(seed: u64, n: usize, density: f64) -> Instance {
    random_connected_instance(&mut ChaCha8Rng::seed_from_u64(seed), n, density)
}

/// Random edges of `instance`, chosen by the indices in `picks`.
fn random_walk(instance: &Instance, picks: &[usize]) -> SwapSequence {
    let edges = instance.graph().edges();
    picks.iter().map(|&i| edges[i % edges.len()]).collect()
}

fn consistent(config: &Configuration) -> bool {
    (0..config.len()).all(|t| config.token_at(config.vertex_of(t)) == t)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn every_prefix_is_a_bijection(seed in any::<u64>(), n in 2usize..9, picks in prop::collection::vec(any::<usize>(), 0..40)) {
        let inst = instance(seed, n, 0.3);
        let seq = random_walk(&inst, &picks);
        let mut config = inst.start().clone();
        for &swap in &seq {
            config = config.apply(inst.graph(), swap).unwrap();
            prop_assert!(consistent(&config));
        }
        let report = validate(&inst, &seq).unwrap();
        prop_assert_eq!(report.final_config, config);
        prop_assert_eq!(report.length, seq.len());
    }

    #[test]
    fn bubbling_moves_the_lead_token(n in 2usize..10, from in 0usize..10, to in 0usize..10) {
        let inst = Instance::from_target_placement(
            tokswap::model::Graph::path(n), (0..n).collect()).unwrap();
        let (a, b) = (from % n, to % n);
        let path: Vec<usize> = if a <= b { (a..=b).collect() } else { (b..=a).rev().collect() };
        let seq = bubble(inst.graph(), &path).unwrap();
        prop_assert_eq!(seq.len(), path.len() - 1);
        let end = validate(&inst, &seq).unwrap().final_config;
        prop_assert_eq!(end.vertex_of(a), b);
    }

    #[test]
    fn total_vanishes_exactly_on_solved_instances(seed in any::<u64>(), n in 1usize..9) {
        let inst = instance(seed, n, 0.3);
        prop_assert_eq!(total(&inst) == 0, inst.start() == inst.target());
        let solved = Instance::new(inst.graph().clone(), inst.start().clone(), inst.start().clone()).unwrap();
        prop_assert_eq!(total(&solved), 0);
    }

    #[test]
    fn swap_paths_are_simple(seed in any::<u64>(), n in 2usize..9, picks in prop::collection::vec(any::<usize>(), 0..40)) {
        let inst = instance(seed, n, 0.4);
        let seq = random_walk(&inst, &picks);
        let end = validate(&inst, &seq).unwrap().final_config;
        for t in 0..n {
            let path = swap_path(&inst, &seq, t).unwrap();
            let mut seen = path.clone();
            seen.sort_unstable();
            seen.dedup();
            prop_assert_eq!(seen.len(), path.len());
            prop_assert_eq!(path[0], inst.start().vertex_of(t));
            prop_assert_eq!(*path.last().unwrap(), end.vertex_of(t));
            prop_assert!(path.windows(2).all(|w| inst.graph().has_edge(w[0], w[1])));
        }
    }

    #[test]
    fn permutation_cycles_partition_and_compose(seed in any::<u64>(), n in 1usize..12) {
        let inst = instance(seed, n, 0.3);
        let cycles = permutation_cycles(&inst);
        let mut all: Vec<usize> = cycles.iter().flatten().copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..n).collect::<Vec<_>>());
        for cycle in &cycles {
            for (j, &v) in cycle.iter().enumerate() {
                let next = cycle[(j + 1) % cycle.len()];
                prop_assert_eq!(inst.target_of(inst.start().token_at(v)), next);
            }
        }
    }

    #[test]
    fn region_counts_partition_the_sequence(seed in any::<u64>(), n in 2usize..9, picks in prop::collection::vec(any::<usize>(), 0..40)) {
        let inst = instance(seed, n, 0.4);
        let seq = random_walk(&inst, &picks);
        let regions: EdgeRegions<usize> = inst.graph().edges().iter().enumerate().map(|(i, &e)| (e, i % 3)).collect();
        let counts = region_swap_counts(&inst, &seq, &regions).unwrap();
        prop_assert_eq!(counts.values().sum::<usize>(), seq.len());
    }

    #[test]
    fn exact_solvers_agree_and_respect_the_lower_bound(seed in any::<u64>(), n in 2usize..8) {
        let inst = instance(seed, n, 0.3);
        let bfs = solve_bfs(&inst, DEFAULT_STATE_BUDGET).unwrap();
        let ida = solve_idastar(&inst, DEFAULT_STATE_BUDGET).unwrap();
        prop_assert_eq!(bfs.opt_length, ida.opt_length);
        prop_assert!(bfs.opt_length >= half_total_lower_bound(&inst));
        prop_assert!(validate(&inst, &bfs.witness).unwrap().reaches_target);
        prop_assert!(validate(&inst, &ida.witness).unwrap().reaches_target);
        prop_assert_eq!(bfs.witness.len(), bfs.opt_length);
    }

    #[test]
    fn unit_weights_double_the_length(seed in any::<u64>(), n in 2usize..7) {
        let inst = instance(seed, n, 0.3);
        let opt = solve_bfs(&inst, DEFAULT_STATE_BUDGET).unwrap().opt_length;
        let winst = WeightedInstance::uniform(inst.clone(), Weight::from_integer(1));
        let weighted = solve_weighted(&winst, DEFAULT_STATE_BUDGET).unwrap();
        prop_assert_eq!(weighted.opt_weight, Weight::from_integer(2 * opt as u64));
        prop_assert!(validate(&inst, &weighted.witness).unwrap().reaches_target);
        prop_assert_eq!(sequence_weight(&winst, &weighted.witness).unwrap(), weighted.opt_weight);
    }

    #[test]
    fn zero_one_weights_match_witness_weight(seed in any::<u64>(), n in 2usize..8, mask in any::<u8>()) {
        let inst = instance(seed, n, 0.3);
        let weights = (0..n).map(|t| Weight::from_integer(u64::from(mask >> (t % 8) & 1))).collect();
        let winst = WeightedInstance::new(inst.clone(), weights).unwrap();
        let solved = solve_weighted(&winst, DEFAULT_STATE_BUDGET).unwrap();
        prop_assert!(validate(&inst, &solved.witness).unwrap().reaches_target);
        prop_assert_eq!(sequence_weight(&winst, &solved.witness).unwrap(), solved.opt_weight);
    }

    #[test]
    fn cycle_algorithm_bounds(seed in any::<u64>(), n in 1usize..9) {
        let inst = instance(seed, n, 0.3);
        let alg = cycle_algorithm(&inst);
        prop_assert!(validate(&inst, &alg.sequence).unwrap().reaches_target);
        let tot = total(&inst);
        if tot > 0 {
            prop_assert!(alg.length < 2 * tot);
        }
        let opt = solve_bfs(&inst, DEFAULT_STATE_BUDGET).unwrap().opt_length;
        prop_assert!(alg.length <= 4 * opt);
        prop_assert!(alg.length >= half_total_lower_bound(&inst));
    }

    #[test]
    fn cycle_phases_leave_other_tokens_in_place(seed in any::<u64>(), n in 2usize..10) {
        let inst = instance(seed, n, 0.3);
        let alg = cycle_algorithm(&inst);
        let dist = inst.distances();
        let mut config = inst.start().clone();
        let mut swaps = alg.sequence.iter();
        for cycle in permutation_cycles(&inst) {
            let before = config.clone();
            let len: usize = (1..cycle.len()).map(|j| 2 * dist.hops(cycle[j - 1], cycle[j]) - 1).sum();
            for &(u, v) in swaps.by_ref().take(len) {
                config.swap_unchecked(u, v);
            }
            for t in 0..n {
                if !cycle.contains(&before.vertex_of(t)) {
                    prop_assert_eq!(config.vertex_of(t), before.vertex_of(t));
                }
            }
        }
        prop_assert!(swaps.next().is_none());
    }

    #[test]
    fn greedy_is_locally_optimal(seed in any::<u64>(), n in 2usize..9) {
        let inst = instance(seed, n, 0.3);
        let greedy = greedy_locally_optimal(&inst, seed, default_greedy_budget(&inst)).unwrap();
        prop_assert!(validate(&inst, &greedy.sequence).unwrap().reaches_target);
        prop_assert!(is_locally_optimal(&inst, &greedy.sequence).unwrap().locally_optimal);
    }

    #[test]
    fn label_cover_counts_match_the_closed_form(d in 1usize..4, sigma in 1usize..4, extra in 0usize..2) {
        let n = d + extra;
        let table: Vec<usize> = (0..sigma).map(|s| (s + 1) % sigma).collect();
        let mut edges = Vec::new();
        for x in 0..n {
            for shift in 0..d {
                edges.push(tokswap::reductions::LabelCoverEdge { left: x, right: (x + shift) % n, constraint: table.clone() });
            }
        }
        let phi = LabelCoverInstance { left_count: n, right_count: n, alphabet_size: sigma, edges };
        let (inst, map) = build_from_label_cover(&phi).unwrap();
        let left = 1 + d + sigma * (d - 1);
        let right = 1 + d + sigma * (2 * d - 1);
        let satisfaction = n * d * sigma * (d - 1);
        prop_assert_eq!(inst.vertex_count(), n * (left + right) + satisfaction);
        let gadget_edges = n * (d + sigma * (d - 1)) + n * (d + sigma * (2 * d - 1));
        let sat_edges = if d == 1 {
            // parallel length-1 paths between the same endpoints merge
            phi.edges.len() * sigma
        } else {
            n * d * sigma * d
        };
        prop_assert_eq!(inst.graph().edge_count(), gadget_edges + sat_edges);
        prop_assert_eq!(map.assignment_token_count(), 2 * n * d);
        for (v, role) in map.roles.iter().enumerate() {
            if matches!(role, tokswap::reductions::VertexRole::Assignment { .. }) {
                prop_assert_eq!(inst.distances().hops(v, inst.target_of(v)), 4 * d);
            } else {
                prop_assert_eq!(inst.target_of(v), v);
            }
        }
    }

    #[test]
    fn cover_sequences_cost_twice_the_pruned_cover(
        universe in 1usize..6,
        raw in prop::collection::vec(0u32..32, 1..5),
        chosen in prop::collection::vec(any::<bool>(), 5),
    ) {
        let mut sets: Vec<Vec<usize>> = raw.iter().map(|m| (0..universe).filter(|e| m >> e & 1 == 1).collect()).collect();
        // make the system feasible with one covering set
        sets.push((0..universe).collect());
        let phi = SetCoverInstance { universe_size: universe, sets };
        let k = phi.sets.len();
        let mut cover: Vec<usize> = (0..k - 1).filter(|&i| chosen[i]).collect();
        cover.push(k - 1);
        let (winst, roles) = build_from_set_cover(&phi).unwrap();
        let pruned = prune_cover(&phi, &cover).unwrap();
        let seq = cover_sequence(&phi, &cover, &winst, &roles).unwrap();
        prop_assert!(validate(winst.instance(), &seq).unwrap().reaches_target);
        prop_assert_eq!(sequence_weight(&winst, &seq).unwrap(), Weight::from_integer(2 * pruned.len() as u64));
        let set_vertices = 2 * universe..2 * universe + k;
        let mut config = winst.instance().start().clone();
        for &(u, v) in &seq {
            let cost = winst.weight(config.token_at(u)) + winst.weight(config.token_at(v));
            if cost > Weight::from_integer(0) {
                prop_assert!(set_vertices.contains(&u) || set_vertices.contains(&v));
            }
            config.swap_unchecked(u, v);
        }
    }

    #[test]
    fn barrier_tokens_stay_on_their_inner_cycle(half_p in 2usize..6, q in 2usize..5) {
        let (inst, ann) = gen_local_opt_barrier(2 * half_p, q).unwrap();
        prop_assert_eq!(inst.vertex_count(), 2 * half_p * q * (2 * q - 2));
        for v in 0..inst.vertex_count() {
            prop_assert_eq!(ann.inner_cycle[v], ann.inner_cycle[inst.target_of(v)]);
        }
    }
}

#[test]
fn ratio_barriers_sit_between_floor_and_cycle_algorithm() {
    for (p, q) in [(2, 2), (3, 2), (2, 3), (4, 2), (2, 4)] {
        let inst = gen_ratio_barrier(p, q).unwrap();
        let bfs = solve_bfs(&inst, DEFAULT_STATE_BUDGET).unwrap();
        let ida = solve_idastar(&inst, DEFAULT_STATE_BUDGET).unwrap();
        assert_eq!(bfs.opt_length, ida.opt_length);
        assert!(ratio_floor(p, q) <= bfs.opt_length, "({p}, {q})");
        assert!(bfs.opt_length <= cycle_algorithm(&inst).length, "({p}, {q})");
    }
}
