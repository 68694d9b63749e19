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

//! Barrier instance families.
//!
//! [`gen_local_opt_barrier`] builds an outer cycle of `pq` vertices split
//! into `p` segments of `q`, plus an inner path of `2q - 2` edges from every
//! `v_j` to `v_{j+2q}`. Tokens in even segments move `2q` steps clockwise,
//! tokens in odd segments `2q` steps counter-clockwise, and inner tokens stay
//! put. Paths `P_j, P_{j+2q}, ...` close up into `2q` inner cycles, and every
//! outer token shares an inner cycle with its target.
//!
//! [`gen_ratio_barrier`] is a plain cycle of `pq` vertices on which `p`
//! evenly spaced tokens each advance `q` steps clockwise.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Configuration, EdgeRegions, Graph, Instance, SwapSequence, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BarrierRegion {
    Outer,
    Inner,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BarrierAnnotations {
    pub p: usize,
    pub q: usize,
    /// Segment of each outer vertex; `None` for inner vertices.
    pub segment: Vec<Option<usize>>,
    /// Parity of each segment.
    pub parity: Vec<Parity>,
    /// Inner cycle `j mod 2q` containing each vertex.
    pub inner_cycle: Vec<usize>,
    #[serde(serialize_with = "crate::model::io::serialize_regions")]
    pub edge_regions: EdgeRegions<BarrierRegion>,
}

impl BarrierAnnotations {
    pub fn outer_count(&self) -> usize {
        self.p * self.q
    }

    pub fn is_outer(&self, v: Vertex) -> bool {
        v < self.outer_count()
    }

    pub fn is_outer_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_regions.get(&(u.min(v), u.max(v))) == Some(&BarrierRegion::Outer)
    }

    /// Vertices of the `j`-th inner cycle, in increasing order.
    pub fn inner_cycle_vertices(&self, j: usize) -> Vec<Vertex> {
        (0..self.inner_cycle.len())
            .filter(|&v| self.inner_cycle[v] == j)
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("annotations always serialize")
    }
}

/// Instance with an outer cycle and inner paths; `p` must be even and at
/// least 4, `q` at least 2.
///
/// Interior vertices of `P_j` are numbered `pq + j(2q - 3) + k` for
/// `k = 0..2q-3`, running from `v_j` toward `v_{j+2q}`.
pub fn gen_local_opt_barrier(p: usize, q: usize) -> Result<(Instance, BarrierAnnotations)> {
    if p < 4 || !p.is_multiple_of(2) {
        return Err(Error::BadParams(format!("p must be even and at least 4, got {p}")));
    }
    if q < 2 {
        return Err(Error::BadParams(format!("q must be at least 2, got {q}")));
    }
    let outer = p * q;
    let interior = 2 * q - 3;
    let n = outer + outer * interior;
    let mut regions = EdgeRegions::new();
    let mut inner_cycle = vec![0; n];
    for j in 0..outer {
        regions.insert(ordered(j, (j + 1) % outer), BarrierRegion::Outer);
        inner_cycle[j] = j % (2 * q);
        let mut prev = j;
        for k in 0..interior {
            let v = outer + j * interior + k;
            inner_cycle[v] = j % (2 * q);
            regions.insert(ordered(prev, v), BarrierRegion::Inner);
            prev = v;
        }
        regions.insert(ordered(prev, (j + 2 * q) % outer), BarrierRegion::Inner);
    }
    let graph = Graph::new(n, regions.keys().copied())?;
    let parity: Vec<Parity> = (0..p)
        .map(|i| if i % 2 == 0 { Parity::Even } else { Parity::Odd })
        .collect();
    let target: Vec<Vertex> = (0..n)
        .map(|v| {
            if v >= outer {
                v
            } else if parity[v / q] == Parity::Even {
                (v + 2 * q) % outer
            } else {
                (v + outer - 2 * q) % outer
            }
        })
        .collect();
    let instance = Instance::new(graph, Configuration::identity(n), Configuration::from_placement(target)?)?;
    let segment = (0..n).map(|v| (v < outer).then_some(v / q)).collect();
    let ann = BarrierAnnotations {
        p,
        q,
        segment,
        parity,
        inner_cycle,
        edge_regions: regions,
    };
    Ok((instance, ann))
}

fn ordered(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    (u.min(v), u.max(v))
}

/// Swap sequence of length `pq^2` using only outer edges.
///
/// Two passes over `j = 0..pq`: whenever the token that started on `v_j`
/// is odd, it is bubbled `q` edges counter-clockwise from where it currently
/// sits. Over both passes every odd token travels `2q` edges
/// counter-clockwise and every even token is pushed `2q` edges clockwise.
pub fn constructive_sequence_51(instance: &Instance, ann: &BarrierAnnotations) -> SwapSequence {
    let outer = ann.outer_count();
    let mut config = instance.start().clone();
    let mut seq = SwapSequence::new();
    for _pass in 0..2 {
        for j in 0..outer {
            let token = instance.start().token_at(j);
            if ann.parity[j / ann.q] != Parity::Odd {
                continue;
            }
            for _ in 0..ann.q {
                let here = config.vertex_of(token);
                let next = (here + outer - 1) % outer;
                config.swap_unchecked(here, next);
                seq.push((here, next));
            }
        }
    }
    seq
}

/// `max(0, 4pq^2 - 5pq - 8q^2)`.
pub fn locally_optimal_floor(p: usize, q: usize) -> usize {
    let (p, q) = (p as i128, q as i128);
    let value = 4 * p * q * q - 5 * p * q - 8 * q * q;
    value.max(0) as usize
}

/// Cycle of `pq` vertices where the token on `v_{iq}` targets `v_{(i+1)q}`.
pub fn gen_ratio_barrier(p: usize, q: usize) -> Result<Instance> {
    if p < 2 || q < 2 {
        return Err(Error::BadParams(format!("p and q must be at least 2, got ({p}, {q})")));
    }
    let n = p * q;
    let graph = Graph::cycle(n)?;
    let target = (0..n)
        .map(|v| if v % q == 0 { (v + q) % n } else { v })
        .collect();
    Instance::from_target_placement(graph, target)
}

/// `2pq - 2q - p + 1`, saturating at zero.
pub fn ratio_floor(p: usize, q: usize) -> usize {
    (2 * p * q + 1).saturating_sub(2 * q + p)
}

/// Triples `(a, b, c)` with `a, b` on a common inner cycle, `c` a neighbor of
/// `a` off that cycle, and `dist(c, b) <= dist(a, b)`. Empty when every
/// shortest path between two vertices of an inner cycle stays on it.
pub fn inner_cycle_shortcuts(instance: &Instance, ann: &BarrierAnnotations) -> Vec<(Vertex, Vertex, Vertex)> {
    let graph = instance.graph();
    let dist = instance.distances();
    let mut bad = Vec::new();
    for j in 0..2 * ann.q {
        let members = ann.inner_cycle_vertices(j);
        for &a in &members {
            for &b in &members {
                for &c in graph.neighbors(a) {
                    if ann.inner_cycle[c] != j && dist.hops(c, b) <= dist.hops(a, b) {
                        bad.push((a, b, c));
                    }
                }
            }
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{is_locally_optimal, total, validate};

    #[test]
    fn local_opt_layout() {
        let (inst, ann) = gen_local_opt_barrier(4, 2).unwrap();
        assert_eq!(inst.vertex_count(), 16);
        assert_eq!(inst.graph().edge_count(), 8 + 16);
        assert_eq!(inst.target_of(0), 4);
        assert_eq!(inst.target_of(2), 6);
        let (big, _) = gen_local_opt_barrier(8, 4).unwrap();
        assert_eq!(big.target_of(0), 8);
        assert_eq!(big.target_of(4), 28);
        assert!(gen_local_opt_barrier(3, 2).is_err());
        assert!(gen_local_opt_barrier(4, 1).is_err());
        for v in 0..ann.inner_cycle.len() {
            assert_eq!(ann.inner_cycle[v], ann.inner_cycle[inst.target_of(v)]);
        }
    }

    #[test]
    fn constructive_sequence() {
        for (p, q) in [(4, 2), (6, 3), (8, 4)] {
            let (inst, ann) = gen_local_opt_barrier(p, q).unwrap();
            let seq = constructive_sequence_51(&inst, &ann);
            assert_eq!(seq.len(), p * q * q);
            assert!(validate(&inst, &seq).unwrap().reaches_target);
            assert!(seq.iter().all(|&(u, v)| ann.is_outer_edge(u, v)));
            assert!(!is_locally_optimal(&inst, &seq).unwrap().locally_optimal);
        }
    }

    #[test]
    fn floors() {
        assert_eq!(locally_optimal_floor(4, 2), 0);
        assert_eq!(locally_optimal_floor(8, 4), 224);
        assert_eq!(locally_optimal_floor(1, 1), 0);
        assert_eq!(ratio_floor(2, 2), 3);
        assert_eq!(ratio_floor(3, 2), 6);
        assert_eq!(ratio_floor(2, 3), 5);
    }

    #[test]
    fn ratio_layout() {
        let inst = gen_ratio_barrier(2, 2).unwrap();
        assert_eq!(inst.vertex_count(), 4);
        assert_eq!((inst.target_of(0), inst.target_of(2)), (2, 0));
        for (p, q) in [(2, 2), (3, 2), (2, 3), (4, 5)] {
            assert_eq!(total(&gen_ratio_barrier(p, q).unwrap()), p * q);
        }
        assert!(gen_ratio_barrier(1, 3).is_err());
    }

    #[test]
    fn inner_cycles_have_no_shortcuts() {
        for (p, q) in [(4, 2), (6, 3)] {
            let (inst, ann) = gen_local_opt_barrier(p, q).unwrap();
            assert!(inner_cycle_shortcuts(&inst, &ann).is_empty());
        }
    }
}
