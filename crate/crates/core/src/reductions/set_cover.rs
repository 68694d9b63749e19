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

//! Set cover to 0/1-weighted token swapping.
//!
//! Each element `u` gets two vertices whose weight-0 tokens want to trade
//! places; each set `S_i` gets one vertex holding a fixed weight-1 token and
//! adjacent to both vertices of every member. Any solution must disturb the
//! set token of at least one set per element, and each disturbed set token
//! costs exactly 2 (one swap out, one swap back), so optimal weights are twice
//! the minimum cover size.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Configuration, Graph, Instance, SwapSequence, Vertex, Weight, WeightedInstance};

/// Largest number of sets accepted by [`set_cover_bruteforce`].
pub const BRUTEFORCE_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetCoverInstance {
    pub universe_size: usize,
    pub sets: Vec<Vec<usize>>,
}

impl SetCoverInstance {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Checks element ranges and that every element lies in some set.
    pub fn validate(&self) -> Result<()> {
        let mut covered = vec![false; self.universe_size];
        for (i, set) in self.sets.iter().enumerate() {
            for &u in set {
                if u >= self.universe_size {
                    return Err(Error::BadParams(format!(
                        "set {i} contains element {u}, outside a universe of {}",
                        self.universe_size
                    )));
                }
                covered[u] = true;
            }
        }
        match covered.iter().position(|&c| !c) {
            Some(element) => Err(Error::Infeasible { element }),
            None => Ok(()),
        }
    }

    fn member_sets(&self) -> Vec<BTreeSet<usize>> {
        self.sets.iter().map(|s| s.iter().copied().collect()).collect()
    }

    fn masks(&self) -> Vec<u64> {
        self.sets
            .iter()
            .map(|s| s.iter().fold(0u64, |m, &u| m | (1 << u)))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum SetCoverRole {
    ElementFirst { element: usize },
    ElementSecond { element: usize },
    Set { index: usize },
}

/// Vertex layout of a reduced set-cover instance: element `u` owns vertices
/// `2u` and `2u + 1`, set `i` owns vertex `2|U| + i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SetCoverRoles {
    pub universe_size: usize,
    pub set_count: usize,
    pub roles: Vec<SetCoverRole>,
}

impl SetCoverRoles {
    fn new(universe_size: usize, set_count: usize) -> Self {
        let roles = (0..universe_size)
            .flat_map(|element| {
                [
                    SetCoverRole::ElementFirst { element },
                    SetCoverRole::ElementSecond { element },
                ]
            })
            .chain((0..set_count).map(|index| SetCoverRole::Set { index }))
            .collect();
        SetCoverRoles {
            universe_size,
            set_count,
            roles,
        }
    }

    pub fn first(&self, element: usize) -> Vertex {
        2 * element
    }

    pub fn second(&self, element: usize) -> Vertex {
        2 * element + 1
    }

    pub fn set_vertex(&self, index: usize) -> Vertex {
        2 * self.universe_size + index
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("role maps always serialize")
    }
}

pub fn build_from_set_cover(phi: &SetCoverInstance) -> Result<(WeightedInstance, SetCoverRoles)> {
    phi.validate()?;
    let roles = SetCoverRoles::new(phi.universe_size, phi.sets.len());
    let n = 2 * phi.universe_size + phi.sets.len();
    let mut edges = Vec::new();
    for (i, set) in phi.member_sets().iter().enumerate() {
        let s = roles.set_vertex(i);
        for &u in set {
            edges.push((roles.first(u), s));
            edges.push((roles.second(u), s));
        }
    }
    let graph = Graph::new(n, edges)?;
    let target: Vec<Vertex> = (0..n)
        .map(|v| if v < 2 * phi.universe_size { v ^ 1 } else { v })
        .collect();
    let instance = Instance::new(graph, Configuration::identity(n), Configuration::from_placement(target)?)?;
    let weights = (0..n)
        .map(|v| Weight::from_integer(u64::from(v >= 2 * phi.universe_size)))
        .collect();
    Ok((WeightedInstance::new(instance, weights)?, roles))
}

/// Removes duplicate indices, then repeatedly drops the first set that has no
/// element covered by it alone, until every remaining set has one.
pub fn prune_cover(phi: &SetCoverInstance, cover: &[usize]) -> Result<Vec<usize>> {
    if let Some(&bad) = cover.iter().find(|&&i| i >= phi.sets.len()) {
        return Err(Error::BadParams(format!("set index {bad} out of range")));
    }
    let members = phi.member_sets();
    let mut seen = BTreeSet::new();
    let mut kept: Vec<usize> = cover.iter().copied().filter(|&i| seen.insert(i)).collect();
    let multiplicity = |kept: &[usize]| {
        let mut count = vec![0usize; phi.universe_size];
        for &i in kept {
            for &u in &members[i] {
                count[u] += 1;
            }
        }
        count
    };
    if let Some(element) = multiplicity(&kept).iter().position(|&c| c == 0) {
        return Err(Error::NotACover { element });
    }
    loop {
        let count = multiplicity(&kept);
        let redundant = kept
            .iter()
            .position(|&i| members[i].iter().all(|&u| count[u] > 1));
        match redundant {
            Some(pos) => {
                kept.remove(pos);
            }
            None => return Ok(kept),
        }
    }
}

/// Swap sequence of weight `2 |F'|`, where `F'` is the pruned cover.
///
/// For each set `S_i` with private element `a`, the set token steps onto the
/// second vertex of `a` and the element token it displaces shuttles through
/// the set vertex, putting every other pending member of `S_i` in place on
/// the way; only the first and last swaps touch the set token.
pub fn cover_sequence(
    phi: &SetCoverInstance,
    cover: &[usize],
    winst: &WeightedInstance,
    roles: &SetCoverRoles,
) -> Result<SwapSequence> {
    if roles.universe_size != phi.universe_size
        || roles.set_count != phi.sets.len()
        || winst.instance().vertex_count() != roles.roles.len()
    {
        return Err(Error::BadParams("role map does not match the set-cover instance".into()));
    }
    let kept = prune_cover(phi, cover)?;
    let members = phi.member_sets();
    let mut done = vec![false; phi.universe_size];
    let mut seq = SwapSequence::new();
    for (pos, &i) in kept.iter().enumerate() {
        let private = members[i]
            .iter()
            .copied()
            .find(|&u| kept.iter().enumerate().all(|(q, &j)| q == pos || !members[j].contains(&u)))
            .expect("pruned covers have a private element per set");
        let s = roles.set_vertex(i);
        seq.push((roles.second(private), s));
        for &u in &members[i] {
            if u == private || done[u] {
                continue;
            }
            seq.push((roles.second(u), s));
            seq.push((s, roles.first(u)));
            seq.push((s, roles.second(u)));
            done[u] = true;
        }
        seq.push((s, roles.first(private)));
        seq.push((s, roles.second(private)));
        done[private] = true;
    }
    Ok(seq)
}

/// A minimum cover, the first in order of size and then of index bitmask.
pub fn set_cover_optimal(phi: &SetCoverInstance) -> Result<Vec<usize>> {
    let k = phi.sets.len();
    if k > BRUTEFORCE_LIMIT {
        return Err(Error::TooLarge {
            sets: k,
            limit: BRUTEFORCE_LIMIT,
        });
    }
    phi.validate()?;
    let full: u64 = if phi.universe_size == 64 {
        u64::MAX
    } else {
        (1u64 << phi.universe_size) - 1
    };
    let masks = phi.masks();
    let best = (0u32..1 << k)
        .filter(|choice| {
            let union = (0..k)
                .filter(|i| choice >> i & 1 == 1)
                .fold(0u64, |acc, i| acc | masks[i]);
            union == full
        })
        .min_by_key(|choice| (choice.count_ones(), *choice))
        .expect("validated instances have a cover");
    Ok((0..k).filter(|i| best >> i & 1 == 1).collect())
}

/// Minimum number of sets needed to cover the universe.
pub fn set_cover_bruteforce(phi: &SetCoverInstance) -> Result<usize> {
    set_cover_optimal(phi).map(|c| c.len())
}
