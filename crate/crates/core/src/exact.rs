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

//! Exact solvers over the configuration state space.
//!
//! All three searches expand edges in lexicographic order, so witnesses are
//! reproducible across runs.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::model::{Configuration, Graph, Instance, SwapSequence, Token, Vertex, Weight, WeightedInstance};

pub const DEFAULT_STATE_BUDGET: usize = 10_000_000;

/// Largest instance whose configurations are ranked into a single `u64`.
const PACKED_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub opt_length: usize,
    pub witness: SwapSequence,
    pub expanded_states: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedSolveResult {
    pub opt_weight: Weight,
    pub witness: SwapSequence,
    pub expanded_states: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum StateKey {
    Packed(u64),
    Bytes(Box<[u16]>),
}

/// Lehmer rank of the vertex-to-token array for small `n`, raw bytes otherwise.
fn state_key(occupants: &[Token]) -> StateKey {
    let n = occupants.len();
    if n <= PACKED_LIMIT {
        let mut rank = 0u64;
        for i in 0..n {
            let smaller_after = occupants[i + 1..]
                .iter()
                .filter(|&&t| t < occupants[i])
                .count() as u64;
            rank = rank * (n - i) as u64 + smaller_after;
        }
        StateKey::Packed(rank)
    } else {
        StateKey::Bytes(occupants.iter().map(|&t| t as u16).collect())
    }
}

fn check_size(instance: &Instance) -> Result<()> {
    if instance.vertex_count() > u16::MAX as usize {
        return Err(Error::BadParams(format!(
            "exact search supports at most {} vertices",
            u16::MAX
        )));
    }
    Ok(())
}

/// Breadth-first search from the start configuration; returns a shortest
/// swap sequence.
pub fn solve_bfs(instance: &Instance, state_budget: usize) -> Result<SolveResult> {
    check_size(instance)?;
    let edges = instance.graph().edges();
    let goal = state_key(instance.target().occupants());

    struct Node {
        occupants: Vec<Token>,
        parent: usize,
        edge: usize,
    }

    let start = instance.start().occupants().to_vec();
    let mut seen: HashMap<StateKey, usize> = HashMap::new();
    let start_key = state_key(&start);
    if start_key == goal {
        return Ok(SolveResult {
            opt_length: 0,
            witness: SwapSequence::new(),
            expanded_states: 0,
        });
    }
    seen.insert(start_key, 0);
    let mut nodes = vec![Node {
        occupants: start,
        parent: usize::MAX,
        edge: usize::MAX,
    }];

    let mut head = 0;
    while head < nodes.len() {
        if head >= state_budget {
            return Err(Error::BudgetExceeded {
                budget: state_budget,
            });
        }
        for (e, &(u, v)) in edges.iter().enumerate() {
            let mut next = nodes[head].occupants.clone();
            next.swap(u, v);
            let key = state_key(&next);
            if seen.contains_key(&key) {
                continue;
            }
            let index = nodes.len();
            let found = key == goal;
            seen.insert(key, index);
            nodes.push(Node {
                occupants: next,
                parent: head,
                edge: e,
            });
            if found {
                let mut swaps = Vec::new();
                let mut at = index;
                while at != 0 {
                    swaps.push(edges[nodes[at].edge]);
                    at = nodes[at].parent;
                }
                swaps.reverse();
                return Ok(SolveResult {
                    opt_length: swaps.len(),
                    witness: swaps.into(),
                    expanded_states: head + 1,
                });
            }
        }
        head += 1;
    }
    unreachable!("instances are validated to be solvable")
}

enum Probe {
    Found,
    Exceeded(usize),
}

struct IdaSearch<'a> {
    instance: &'a Instance,
    edges: &'a [(Vertex, Vertex)],
    config: Configuration,
    path: Vec<usize>,
    expanded: usize,
    budget: usize,
}

impl IdaSearch<'_> {
    fn swap_delta(&self, (u, v): (Vertex, Vertex)) -> isize {
        let (a, b) = (self.config.token_at(u), self.config.token_at(v));
        let d = |t, x| self.instance.distance_to_target(t, x) as isize;
        d(a, v) - d(a, u) + d(b, u) - d(b, v)
    }

    /// `distance_sum` is the current sum of token-to-target distances.
    fn probe(&mut self, depth: usize, distance_sum: usize, bound: usize) -> Result<Probe> {
        let f = depth + distance_sum.div_ceil(2);
        if f > bound {
            return Ok(Probe::Exceeded(f));
        }
        if distance_sum == 0 {
            return Ok(Probe::Found);
        }
        self.expanded += 1;
        if self.expanded > self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget });
        }
        let mut next_bound = usize::MAX;
        let last = self.path.last().copied();
        for e in 0..self.edges.len() {
            let (u, v) = self.edges[e];
            if let Some(l) = last {
                // Redundant orderings: undoing the last swap, or listing two
                // commuting swaps out of edge order.
                let (lu, lv) = self.edges[l];
                let disjoint = lu != u && lu != v && lv != u && lv != v;
                if e == l || (disjoint && e < l) {
                    continue;
                }
            }
            let delta = self.swap_delta((u, v));
            self.config.swap_unchecked(u, v);
            self.path.push(e);
            let sum = (distance_sum as isize + delta) as usize;
            match self.probe(depth + 1, sum, bound)? {
                Probe::Found => return Ok(Probe::Found),
                Probe::Exceeded(f) => next_bound = next_bound.min(f),
            }
            self.path.pop();
            self.config.swap_unchecked(u, v);
        }
        Ok(Probe::Exceeded(next_bound))
    }
}

/// Iterative-deepening A* with heuristic `ceil(sum of distances / 2)`.
pub fn solve_idastar(instance: &Instance, state_budget: usize) -> Result<SolveResult> {
    let mut search = IdaSearch {
        instance,
        edges: instance.graph().edges(),
        config: instance.start().clone(),
        path: Vec::new(),
        expanded: 0,
        budget: state_budget,
    };
    let initial = crate::model::total(instance);
    let mut bound = initial.div_ceil(2);
    loop {
        match search.probe(0, initial, bound)? {
            Probe::Found => {
                let witness: SwapSequence = search.path.iter().map(|&e| search.edges[e]).collect();
                return Ok(SolveResult {
                    opt_length: witness.len(),
                    witness,
                    expanded_states: search.expanded,
                });
            }
            Probe::Exceeded(next) => {
                // Solvable instances always leave a frontier above the bound.
                debug_assert!(next != usize::MAX);
                bound = next;
            }
        }
    }
}

/// Shared layout for the weighted search: which tokens carry weight.
struct WeightedLayout<'a> {
    graph: &'a Graph,
    heavy: Vec<Token>,
    light: Vec<Token>,
    light_index: Vec<Option<usize>>,
    weights: &'a [Weight],
}

impl WeightedLayout<'_> {
    /// Free vertices are those not holding a heavy token.
    fn components(&self, heavy_pos: &[u16]) -> (Vec<Option<usize>>, Vec<Option<Vertex>>) {
        let n = self.graph.vertex_count();
        let mut occupant = vec![None; n];
        for (i, &v) in heavy_pos.iter().enumerate() {
            occupant[v as usize] = Some(i);
        }
        let free: Vec<bool> = occupant.iter().map(Option::is_none).collect();
        let comps = self.graph.induced_components(&free);
        (occupant, comps)
    }

    fn key(&self, heavy_pos: &[u16], labels: &[u16]) -> Box<[u16]> {
        heavy_pos.iter().chain(labels).copied().collect()
    }

    fn split<'k>(&self, key: &'k [u16]) -> (&'k [u16], &'k [u16]) {
        key.split_at(self.heavy.len())
    }

    /// Class of a concrete configuration.
    fn class_of(&self, config: &Configuration) -> Box<[u16]> {
        let pos: Vec<u16> = self.heavy.iter().map(|&t| config.vertex_of(t) as u16).collect();
        let (_, comps) = self.components(&pos);
        let labels: Vec<u16> = self
            .light
            .iter()
            .map(|&t| comps[config.vertex_of(t)].expect("light tokens sit on free vertices") as u16)
            .collect();
        self.key(&pos, &labels)
    }

    /// Calls `emit(next, cost)` for every class one positive-weight swap away
    /// whose swap costs less than `cap`.
    fn successors(&self, key: &[u16], cap: Option<Weight>, emit: &mut dyn FnMut(Box<[u16]>, Weight)) {
        let affordable = |step: Weight| cap.is_none_or(|c| step < c);
        let (pos, labels) = self.split(key);
        let (occupant, comps) = self.components(pos);
        let n = self.graph.vertex_count();
        for &(u, v) in self.graph.edges() {
            match (occupant[u], occupant[v]) {
                (None, None) => {}
                (Some(i), Some(j)) => {
                    let mut next_pos = pos.to_vec();
                    next_pos.swap(i, j);
                    let step = self.weights[self.heavy[i]] + self.weights[self.heavy[j]];
                    if affordable(step) {
                        emit(self.key(&next_pos, labels), step);
                    }
                }
                (Some(i), None) | (None, Some(i)) => {
                    let (from, to) = if occupant[u].is_some() { (u, v) } else { (v, u) };
                    let step = self.weights[self.heavy[i]];
                    if !affordable(step) {
                        continue;
                    }
                    let component = comps[to].expect("free vertex") as u16;
                    let mut next_pos = pos.to_vec();
                    next_pos[i] = to as u16;
                    let (_, next_comps) = self.components(&next_pos);

                    // Remaining vertices of the entered component, grouped by
                    // the component they fall into after the move.
                    let mut groups: BTreeMap<u16, usize> = BTreeMap::new();
                    for w in 0..n {
                        if w != to && comps[w] == Some(component as usize) {
                            *groups.entry(next_comps[w].expect("free vertex") as u16).or_default() += 1;
                        }
                    }
                    let group_labels: Vec<u16> = groups.keys().copied().collect();
                    let mut capacities: Vec<usize> = groups.values().copied().collect();

                    let mut base_labels = labels.to_vec();
                    for l in base_labels.iter_mut() {
                        if *l != component {
                            *l = next_comps[*l as usize].expect("labels are free vertices") as u16;
                        }
                    }
                    let from_label = next_comps[from].expect("vacated vertex is free") as u16;
                    let members: Vec<usize> = (0..labels.len()).filter(|&k| labels[k] == component).collect();
                    for (m, &moved) in members.iter().enumerate() {
                        let rest: Vec<usize> = members
                            .iter()
                            .enumerate()
                            .filter(|&(o, _)| o != m)
                            .map(|(_, &k)| k)
                            .collect();
                        let mut next_labels = base_labels.clone();
                        next_labels[moved] = from_label;
                        distribute(&rest, &mut capacities, &mut Vec::new(), &mut |assignment| {
                            for (&k, &g) in rest.iter().zip(assignment) {
                                next_labels[k] = group_labels[g];
                            }
                            emit(self.key(&next_pos, &next_labels), step);
                        });
                    }
                }
            }
        }
    }
}

/// Calls `emit` for every way of placing `tokens` into groups with the given
/// capacities. `assignment[i]` receives the group of `tokens[i]`.
fn distribute(
    tokens: &[usize],
    capacities: &mut [usize],
    assignment: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    if assignment.len() == tokens.len() {
        emit(assignment);
        return;
    }
    for g in 0..capacities.len() {
        if capacities[g] == 0 {
            continue;
        }
        capacities[g] -= 1;
        assignment.push(g);
        distribute(tokens, capacities, assignment, emit);
        assignment.pop();
        capacities[g] += 1;
    }
}

/// One direction of the bidirectional search.
struct Frontier {
    keys: Vec<Box<[u16]>>,
    cost: Vec<Weight>,
    parent: Vec<usize>,
    closed: Vec<bool>,
    index: HashMap<Box<[u16]>, usize>,
    heap: BinaryHeap<Reverse<(Weight, usize)>>,
}

impl Frontier {
    fn new(root: Box<[u16]>) -> Self {
        let mut index = HashMap::new();
        index.insert(root.clone(), 0);
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((Weight::zero(), 0)));
        Frontier {
            keys: vec![root],
            cost: vec![Weight::zero()],
            parent: vec![usize::MAX],
            closed: vec![false],
            index,
            heap,
        }
    }

    /// Smallest tentative cost still queued, skipping stale entries.
    fn top(&mut self) -> Option<Weight> {
        while let Some(&Reverse((cost, id))) = self.heap.peek() {
            if self.closed[id] || cost > self.cost[id] {
                self.heap.pop();
            } else {
                return Some(cost);
            }
        }
        None
    }

    fn relax(&mut self, key: Box<[u16]>, cost: Weight, parent: usize) -> usize {
        match self.index.get(&key) {
            Some(&id) => {
                if !self.closed[id] && cost < self.cost[id] {
                    self.cost[id] = cost;
                    self.parent[id] = parent;
                    self.heap.push(Reverse((cost, id)));
                }
                id
            }
            None => {
                let id = self.keys.len();
                self.index.insert(key.clone(), id);
                self.keys.push(key);
                self.cost.push(cost);
                self.parent.push(parent);
                self.closed.push(false);
                self.heap.push(Reverse((cost, id)));
                id
            }
        }
    }

    /// Keys from the root to `id`, root first.
    fn chain(&self, mut id: usize) -> Vec<Box<[u16]>> {
        let mut out = Vec::new();
        while id != usize::MAX {
            out.push(self.keys[id].clone());
            id = self.parent[id];
        }
        out.reverse();
        out
    }
}

/// Minimum-weight swap sequence.
///
/// Swaps between two zero-weight tokens are free, and on a connected set of
/// vertices free swaps realise every permutation. The search therefore runs
/// over classes of configurations: heavy-token positions plus, for each
/// zero-weight token, the free component holding it. Every class transition
/// is a swap of positive weight and can be undone at the same cost, so a
/// bidirectional Dijkstra search from the start and target classes finds the
/// optimum. The witness replays the class chain with concrete swaps.
pub fn solve_weighted(winst: &WeightedInstance, state_budget: usize) -> Result<WeightedSolveResult> {
    let instance = winst.instance();
    check_size(instance)?;
    let n = instance.vertex_count();
    let graph = instance.graph();
    let (light, heavy): (Vec<Token>, Vec<Token>) = (0..n).partition(|&t| winst.weight(t).is_zero());
    let mut light_index = vec![None; n];
    for (i, &t) in light.iter().enumerate() {
        light_index[t] = Some(i);
    }
    let layout = WeightedLayout {
        graph,
        heavy,
        light,
        light_index,
        weights: winst.weights(),
    };

    let start_key = layout.class_of(instance.start());
    let goal_key = layout.class_of(instance.target());
    let mut sides = [Frontier::new(start_key.clone()), Frontier::new(goal_key.clone())];
    let mut best: Option<(Weight, usize, usize)> = (start_key == goal_key).then_some((Weight::zero(), 0, 0));
    let mut expanded = 0usize;

    loop {
        let tops = [sides[0].top(), sides[1].top()];
        let side = match tops {
            [None, None] => break,
            [Some(_), None] => 0,
            [None, Some(_)] => 1,
            [Some(a), Some(b)] => {
                if let Some((mu, _, _)) = best {
                    if a + b >= mu {
                        break;
                    }
                }
                usize::from(b < a)
            }
        };
        if let (Some((mu, _, _)), Some(top)) = (best, tops[side]) {
            if top >= mu {
                break;
            }
        }
        let Some(Reverse((cost, id))) = sides[side].heap.pop() else {
            break;
        };
        sides[side].closed[id] = true;
        expanded += 1;
        if expanded > state_budget {
            return Err(Error::BudgetExceeded {
                budget: state_budget,
            });
        }
        let key = sides[side].keys[id].clone();
        let mut found = Vec::new();
        {
            let (this, other) = if side == 0 {
                let (a, b) = sides.split_at_mut(1);
                (&mut a[0], &b[0])
            } else {
                let (a, b) = sides.split_at_mut(1);
                (&mut b[0], &a[0])
            };
            // successors at or above the best meeting cost cannot improve it
            let cap = best.map(|(mu, _, _)| mu - cost);
            layout.successors(&key, cap, &mut |next, step| {
                let next_cost = cost + step;
                let other_id = other.index.get(&next).copied();
                let mine = this.relax(next, next_cost, id);
                if let Some(o) = other_id {
                    found.push((next_cost + other.cost[o], mine, o));
                }
            });
        }
        for (total, mine, theirs) in found {
            if best.is_none_or(|(mu, _, _)| total < mu) {
                best = Some(if side == 0 { (total, mine, theirs) } else { (total, theirs, mine) });
            }
        }
    }

    let (opt_weight, forward_id, backward_id) = best.expect("instances are validated to be solvable");
    let mut chain = sides[0].chain(forward_id);
    // the backward chain runs goal -> meeting class, which `chain` already ends on
    let mut back = sides[1].chain(backward_id);
    back.pop();
    chain.extend(back.into_iter().rev());
    let witness = replay_classes(&layout, instance, &chain);

    Ok(WeightedSolveResult {
        opt_weight,
        witness,
        expanded_states: expanded,
    })
}

/// Concrete swaps that walk through `chain`, a list of classes each one
/// positive-weight swap from the next, and finish on the target.
fn replay_classes(layout: &WeightedLayout<'_>, instance: &Instance, chain: &[Box<[u16]>]) -> SwapSequence {
    let graph = layout.graph;
    let n = graph.vertex_count();
    let mut config = instance.start().clone();
    let mut witness = SwapSequence::new();
    for pair in chain.windows(2) {
        let (pos, _) = layout.split(&pair[0]);
        let (next_pos, next_labels) = layout.split(&pair[1]);
        let moved: Vec<usize> = (0..pos.len()).filter(|&i| pos[i] != next_pos[i]).collect();
        let (from, to) = (pos[moved[0]] as Vertex, next_pos[moved[0]] as Vertex);
        if moved.len() == 1 {
            let (_, comps) = layout.components(pos);
            let (_, next_comps) = layout.components(next_pos);
            let members: Vec<Vertex> = (0..n).filter(|&w| comps[w] == comps[to]).collect();
            let label_of = |t: Token| next_labels[layout.light_index[t].expect("light token")];
            let from_label = next_comps[from].expect("vacated vertex is free") as u16;
            let z = members
                .iter()
                .map(|&w| config.token_at(w))
                .find(|&t| label_of(t) == from_label)
                .expect("some token of the entered component lands on the vacated vertex");
            let mut desired: BTreeMap<Vertex, Token> = BTreeMap::new();
            desired.insert(to, z);
            let mut slots: BTreeMap<u16, Vec<Vertex>> = BTreeMap::new();
            for &w in members.iter().filter(|&&w| w != to) {
                slots.entry(next_comps[w].expect("free vertex") as u16).or_default().push(w);
            }
            for &w in &members {
                let token = config.token_at(w);
                if token == z {
                    continue;
                }
                let slot = slots
                    .get_mut(&label_of(token))
                    .and_then(Vec::pop)
                    .expect("class sizes agree");
                desired.insert(slot, token);
            }
            arrange_within(graph, &mut config, &members, &desired, &mut witness);
        }
        witness.push((from, to));
        config.swap_unchecked(from, to);
    }

    let (pos, _) = layout.split(chain.last().expect("chain holds the start class"));
    let (_, comps) = layout.components(pos);
    let mut by_component: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for (w, comp) in comps.iter().enumerate() {
        if let Some(c) = *comp {
            by_component.entry(c).or_default().push(w);
        }
    }
    for members in by_component.values() {
        let desired: BTreeMap<Vertex, Token> = members
            .iter()
            .map(|&w| (w, instance.target().token_at(w)))
            .collect();
        arrange_within(graph, &mut config, members, &desired, &mut witness);
    }
    debug_assert_eq!(&config, instance.target());
    witness
}

/// Permutes the tokens on the connected vertex set `members` into `desired`
/// using swaps along edges inside `members` only.
///
/// Vertices are settled leaves-first along a BFS spanning tree, so the tree
/// path used to deliver each token never crosses a settled vertex.
fn arrange_within(
    graph: &Graph,
    config: &mut Configuration,
    members: &[Vertex],
    desired: &BTreeMap<Vertex, Token>,
    out: &mut SwapSequence,
) {
    let n = graph.vertex_count();
    let mut inside = vec![false; n];
    for &w in members {
        inside[w] = true;
    }
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    let mut order = vec![members[0]];
    parent[members[0]] = members[0];
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &w in graph.neighbors(u) {
            if inside[w] && parent[w] == usize::MAX {
                parent[w] = u;
                depth[w] = depth[u] + 1;
                order.push(w);
            }
        }
    }
    debug_assert_eq!(order.len(), members.len(), "members must be connected");

    for &leaf in order.iter().rev() {
        let token = desired[&leaf];
        let mut a = config.vertex_of(token);
        let mut b = leaf;
        let mut up = vec![a];
        let mut down = vec![b];
        while a != b {
            if depth[a] >= depth[b] {
                a = parent[a];
                up.push(a);
            } else {
                b = parent[b];
                down.push(b);
            }
        }
        down.pop();
        up.extend(down.into_iter().rev());
        for w in up.windows(2) {
            out.push((w[0], w[1]));
            config.swap_unchecked(w[0], w[1]);
        }
    }
}
