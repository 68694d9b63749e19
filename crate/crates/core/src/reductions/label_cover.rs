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

//! Label cover to token swapping.
//!
//! Every label-cover vertex `v` becomes a gadget: a base vertex, one
//! assignment vertex per incident edge, and one label path per alphabet
//! symbol hanging off the base (`d - 1` edges on the left side, `2d - 1` on
//! the right). For every edge `(x, y)` and every label pair accepted by its
//! constraint, a satisfaction path of `d` edges joins the far ends of
//! `lab(x, σx)` and `lab(y, σy)`. The two tokens on `asg(x, y)` and
//! `asg(y, x)` want to trade places; every other token stays put.
//!
//! When `d = 1` a left label path has no edges and is represented by the base
//! vertex itself.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Configuration, EdgeRegions, Graph, Instance, SwapSequence, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelCoverEdge {
    pub left: usize,
    pub right: usize,
    /// `constraint[σ]` is the right label demanded by left label `σ`.
    pub constraint: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelCoverInstance {
    pub left_count: usize,
    pub right_count: usize,
    pub alphabet_size: usize,
    pub edges: Vec<LabelCoverEdge>,
}

impl LabelCoverInstance {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Complete bipartite `K_{n,n}` with the same constraint on every edge.
    pub fn complete_bipartite(n: usize, alphabet_size: usize, constraint: Vec<usize>) -> Self {
        let edges = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .map(|(left, right)| LabelCoverEdge {
                left,
                right,
                constraint: constraint.clone(),
            })
            .collect();
        LabelCoverInstance {
            left_count: n,
            right_count: n,
            alphabet_size,
            edges,
        }
    }

    /// `(edge index, right vertex)` for each edge at `x`, by right index.
    pub fn left_neighbors(&self, x: usize) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = self
            .edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.left == x)
            .map(|(i, e)| (i, e.right))
            .collect();
        out.sort_by_key(|&(_, y)| y);
        out
    }

    /// `(edge index, left vertex)` for each edge at `y`, by left index.
    pub fn right_neighbors(&self, y: usize) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = self
            .edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.right == y)
            .map(|(i, e)| (i, e.left))
            .collect();
        out.sort_by_key(|&(_, x)| x);
        out
    }
}

/// Checks the instance is simple, balanced and regular; returns the degree.
pub fn validate_label_cover(phi: &LabelCoverInstance) -> Result<usize> {
    let mut seen = BTreeSet::new();
    for (i, e) in phi.edges.iter().enumerate() {
        if e.left >= phi.left_count || e.right >= phi.right_count {
            return Err(Error::NotSimple(format!(
                "edge {i} ({}, {}) has an endpoint out of range",
                e.left, e.right
            )));
        }
        if !seen.insert((e.left, e.right)) {
            return Err(Error::NotSimple(format!(
                "edge ({}, {}) appears twice",
                e.left, e.right
            )));
        }
        if e.constraint.len() != phi.alphabet_size {
            return Err(Error::InvalidConstraint {
                edge: i,
                reason: format!(
                    "table has {} entries for an alphabet of {}",
                    e.constraint.len(),
                    phi.alphabet_size
                ),
            });
        }
        if let Some(&bad) = e.constraint.iter().find(|&&s| s >= phi.alphabet_size) {
            return Err(Error::InvalidConstraint {
                edge: i,
                reason: format!("label {bad} is outside the alphabet"),
            });
        }
    }
    if phi.left_count != phi.right_count {
        return Err(Error::SidesUnequal {
            left: phi.left_count,
            right: phi.right_count,
        });
    }
    let mut left_deg = vec![0usize; phi.left_count];
    let mut right_deg = vec![0usize; phi.right_count];
    for e in &phi.edges {
        left_deg[e.left] += 1;
        right_deg[e.right] += 1;
    }
    let mut degrees = left_deg.iter().chain(&right_deg);
    let Some(&d) = degrees.next() else {
        return Err(Error::NotRegular("instance has no vertices".into()));
    };
    if degrees.any(|&other| other != d) {
        return Err(Error::NotRegular(format!(
            "left degrees {left_deg:?}, right degrees {right_deg:?}"
        )));
    }
    if d == 0 {
        return Err(Error::NotRegular("instance has no edges".into()));
    }
    Ok(d)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Labelling {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl Labelling {
    pub fn constant(phi: &LabelCoverInstance, label: usize) -> Self {
        Labelling {
            left: vec![label; phi.left_count],
            right: vec![label; phi.right_count],
        }
    }
}

/// Fraction of constraints satisfied by `labelling`.
pub fn satisfied_fraction(phi: &LabelCoverInstance, labelling: &Labelling) -> Ratio<u64> {
    if phi.edges.is_empty() {
        return Ratio::from_integer(1);
    }
    let satisfied = phi
        .edges
        .iter()
        .filter(|e| e.constraint[labelling.left[e.left]] == labelling.right[e.right])
        .count();
    Ratio::new(satisfied as u64, phi.edges.len() as u64)
}

/// `copies` copies of every vertex, with every original constraint placed
/// between every copy of its left end and every copy of its right end.
///
/// Copy `a` of left vertex `x` is `a * left_count + x` (same for the right).
pub fn amplify_degree(phi: &LabelCoverInstance, copies: usize) -> Result<LabelCoverInstance> {
    if copies == 0 {
        return Err(Error::BadParams("at least one copy is required".into()));
    }
    validate_label_cover(phi)?;
    let mut edges = Vec::with_capacity(phi.edges.len() * copies * copies);
    for e in &phi.edges {
        for a in 0..copies {
            for b in 0..copies {
                edges.push(LabelCoverEdge {
                    left: a * phi.left_count + e.left,
                    right: b * phi.right_count + e.right,
                    constraint: e.constraint.clone(),
                });
            }
        }
    }
    Ok(LabelCoverInstance {
        left_count: phi.left_count * copies,
        right_count: phi.right_count * copies,
        alphabet_size: phi.alphabet_size,
        edges,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GadgetId {
    pub side: Side,
    pub index: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum VertexRole {
    Base {
        gadget: GadgetId,
    },
    /// `slot` is the 1-based rank of `neighbor` among the gadget's neighbors.
    Assignment {
        gadget: GadgetId,
        neighbor: usize,
        slot: usize,
    },
    /// `position` counts edges from the base, starting at 1.
    LabelPath {
        gadget: GadgetId,
        label: usize,
        position: usize,
    },
    /// `position` counts edges from the left end, from 1 to `d - 1`.
    Satisfaction {
        edge: usize,
        left_label: usize,
        right_label: usize,
        position: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    LeftGadget,
    RightGadget,
    Satisfaction,
}

/// Annotation of a reduced instance: the role of every vertex, a region for
/// every edge, and the path lookups needed to emit swap sequences.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GadgetMap {
    pub degree: usize,
    pub alphabet_size: usize,
    pub left_count: usize,
    pub right_count: usize,
    pub roles: Vec<VertexRole>,
    #[serde(serialize_with = "crate::model::io::serialize_regions")]
    pub edge_regions: EdgeRegions<Region>,
    #[serde(skip)]
    bases: Vec<Vertex>,
    #[serde(skip)]
    assignments: Vec<Vec<Vertex>>,
    #[serde(skip)]
    label_paths: Vec<Vec<Vec<Vertex>>>,
    #[serde(skip)]
    sat_paths: BTreeMap<(usize, usize, usize), Vec<Vertex>>,
}

impl GadgetMap {
    fn slot(&self, gadget: GadgetId) -> usize {
        match gadget.side {
            Side::Left => gadget.index,
            Side::Right => self.left_count + gadget.index,
        }
    }

    pub fn base(&self, gadget: GadgetId) -> Vertex {
        self.bases[self.slot(gadget)]
    }

    /// Assignment vertices of the gadget in neighbor order.
    pub fn assignment_vertices(&self, gadget: GadgetId) -> &[Vertex] {
        &self.assignments[self.slot(gadget)]
    }

    /// `lab(v, label)` from the base (index 0) to the far end.
    pub fn label_path(&self, gadget: GadgetId, label: usize) -> &[Vertex] {
        &self.label_paths[self.slot(gadget)][label]
    }

    /// `sat(x, σx, y, σy)` for the given edge, from the left far end to the
    /// right far end, when the pair satisfies the edge's constraint.
    pub fn satisfaction_path(&self, edge: usize, left_label: usize, right_label: usize) -> Option<&[Vertex]> {
        self.sat_paths
            .get(&(edge, left_label, right_label))
            .map(Vec::as_slice)
    }

    pub fn assignment_token_count(&self) -> usize {
        self.roles
            .iter()
            .filter(|r| matches!(r, VertexRole::Assignment { .. }))
            .count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("gadget maps always serialize")
    }
}

fn left(index: usize) -> GadgetId {
    GadgetId {
        side: Side::Left,
        index,
    }
}

fn right(index: usize) -> GadgetId {
    GadgetId {
        side: Side::Right,
        index,
    }
}

/// Builds the token swapping instance and its gadget map.
///
/// Tokens start on their own vertex index. Vertices are numbered gadget by
/// gadget (left gadgets first): base, assignment vertices in neighbor order,
/// then label-path interiors by label and position. Satisfaction-path
/// interiors follow, by edge and left label.
pub fn build_from_label_cover(phi: &LabelCoverInstance) -> Result<(Instance, GadgetMap)> {
    let d = validate_label_cover(phi)?;
    let sigma = phi.alphabet_size;
    let mut roles = Vec::new();
    let mut edges: BTreeMap<(Vertex, Vertex), Region> = BTreeMap::new();
    let mut bases = Vec::new();
    let mut assignments = Vec::new();
    let mut label_paths = Vec::new();
    // asg(v, w) for (gadget slot, neighbor) lookups when wiring targets
    let mut asg_of: BTreeMap<(GadgetId, usize), Vertex> = BTreeMap::new();

    let add_edge = |edges: &mut BTreeMap<_, _>, u: Vertex, v: Vertex, region: Region| {
        edges.insert((u.min(v), u.max(v)), region);
    };

    let gadgets: Vec<(GadgetId, Vec<usize>, usize)> = (0..phi.left_count)
        .map(|x| {
            let nbrs = phi.left_neighbors(x).into_iter().map(|(_, y)| y).collect();
            (left(x), nbrs, d - 1)
        })
        .chain((0..phi.right_count).map(|y| {
            let nbrs = phi.right_neighbors(y).into_iter().map(|(_, x)| x).collect();
            (right(y), nbrs, 2 * d - 1)
        }))
        .collect();

    for (gadget, neighbors, path_len) in &gadgets {
        let region = match gadget.side {
            Side::Left => Region::LeftGadget,
            Side::Right => Region::RightGadget,
        };
        let base = roles.len();
        roles.push(VertexRole::Base { gadget: *gadget });
        bases.push(base);
        let mut slots = Vec::with_capacity(d);
        for (i, &w) in neighbors.iter().enumerate() {
            let v = roles.len();
            roles.push(VertexRole::Assignment {
                gadget: *gadget,
                neighbor: w,
                slot: i + 1,
            });
            add_edge(&mut edges, base, v, region);
            asg_of.insert((*gadget, w), v);
            slots.push(v);
        }
        assignments.push(slots);
        let mut paths = Vec::with_capacity(sigma);
        for label in 0..sigma {
            let mut path = vec![base];
            for position in 1..=*path_len {
                let v = roles.len();
                roles.push(VertexRole::LabelPath {
                    gadget: *gadget,
                    label,
                    position,
                });
                add_edge(&mut edges, *path.last().unwrap(), v, region);
                path.push(v);
            }
            paths.push(path);
        }
        label_paths.push(paths);
    }

    let mut sat_paths = BTreeMap::new();
    for (edge, e) in phi.edges.iter().enumerate() {
        for (left_label, &right_label) in e.constraint.iter().enumerate() {
            let start = *label_paths[e.left][left_label].last().unwrap();
            let end = *label_paths[phi.left_count + e.right][right_label].last().unwrap();
            let mut path = vec![start];
            for position in 1..d {
                let v = roles.len();
                roles.push(VertexRole::Satisfaction {
                    edge,
                    left_label,
                    right_label,
                    position,
                });
                add_edge(&mut edges, *path.last().unwrap(), v, Region::Satisfaction);
                path.push(v);
            }
            // for d = 1 parallel pairs collapse onto one edge
            add_edge(&mut edges, *path.last().unwrap(), end, Region::Satisfaction);
            path.push(end);
            sat_paths.insert((edge, left_label, right_label), path);
        }
    }

    let n = roles.len();
    let graph = Graph::new(n, edges.keys().copied())?;
    let mut target: Vec<Vertex> = (0..n).collect();
    for e in &phi.edges {
        let a = asg_of[&(left(e.left), e.right)];
        let b = asg_of[&(right(e.right), e.left)];
        target[a] = b;
        target[b] = a;
    }
    let instance = Instance::new(
        graph,
        Configuration::identity(n),
        Configuration::from_placement(target)?,
    )?;
    let map = GadgetMap {
        degree: d,
        alphabet_size: sigma,
        left_count: phi.left_count,
        right_count: phi.right_count,
        roles,
        edge_regions: edges,
        bases,
        assignments,
        label_paths,
        sat_paths,
    };
    Ok((instance, map))
}

/// How the second stage pairs the assignment vertices of a left gadget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage2Pairing {
    /// Exchange slot `k` with slot `d - k`, for `k = 1..=d/2`.
    Literal,
    /// Exchange slot `k` with slot `d - k + 1`, reversing all `d` slots.
    Mirrored,
}

/// Replays swaps on a working configuration while recording them.
struct Emitter<'a> {
    graph: &'a Graph,
    config: Configuration,
    seq: SwapSequence,
}

impl Emitter<'_> {
    fn swap(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        if !self.graph.has_edge(u, v) {
            return Err(Error::ClaimViolated(format!("emitted swap ({u}, {v}) is not an edge")));
        }
        self.config.swap_unchecked(u, v);
        self.seq.push((u, v));
        Ok(())
    }

    fn bubble<'p>(&mut self, path: impl IntoIterator<Item = &'p Vertex>) -> Result<()> {
        let mut iter = path.into_iter();
        let Some(mut prev) = iter.next().copied() else {
            return Ok(());
        };
        for &v in iter {
            self.swap(prev, v)?;
            prev = v;
        }
        Ok(())
    }
}

/// Four-stage swap sequence for a fully satisfying labelling, of length
/// `(13/4 d^2 + d) |X ∪ Y|`.
///
/// 1. Each left gadget pushes its assignment tokens onto `lab(x, λ(x))`.
/// 2. Each left gadget reverses the order of the tokens now on its
///    assignment vertices.
/// 3. Each right gadget pushes its assignment tokens onto `lab(y, λ(y))`.
/// 4. For each right vertex `y`: bring in the tokens destined for `Gad(y)`
///    (last slot first), then send out the tokens that started there.
///
/// Token positions asserted by the construction are checked while emitting;
/// a mismatch is reported as [`Error::ClaimViolated`].
pub fn completeness_sequence(
    phi: &LabelCoverInstance,
    labelling: &Labelling,
    instance: &Instance,
    map: &GadgetMap,
) -> Result<SwapSequence> {
    completeness_sequence_with_pairing(phi, labelling, instance, map, Stage2Pairing::Mirrored)
}

pub fn completeness_sequence_with_pairing(
    phi: &LabelCoverInstance,
    labelling: &Labelling,
    instance: &Instance,
    map: &GadgetMap,
    pairing: Stage2Pairing,
) -> Result<SwapSequence> {
    let d = validate_label_cover(phi)?;
    if labelling.left.len() != phi.left_count
        || labelling.right.len() != phi.right_count
        || labelling.left.iter().chain(&labelling.right).any(|&s| s >= phi.alphabet_size)
    {
        return Err(Error::BadParams("labelling does not match the instance".into()));
    }
    if satisfied_fraction(phi, labelling) != Ratio::from_integer(1) {
        return Err(Error::NotFullySatisfying);
    }
    if d % 2 != 0 {
        return Err(Error::OddDegree { degree: d });
    }
    let mut em = Emitter {
        graph: instance.graph(),
        config: instance.start().clone(),
        seq: SwapSequence::new(),
    };
    let start = instance.start();

    // Stage 1
    for x in 0..phi.left_count {
        let base = map.base(left(x));
        let lab = map.label_path(left(x), labelling.left[x]);
        for k in 1..=d {
            em.swap(map.assignment_vertices(left(x))[k - 1], base)?;
            em.bubble(&lab[..=d - k])?;
        }
    }

    // Stage 2
    for x in 0..phi.left_count {
        let base = map.base(left(x));
        let slots = map.assignment_vertices(left(x));
        for k in 1..=d / 2 {
            let partner = match pairing {
                Stage2Pairing::Literal => d - k,
                Stage2Pairing::Mirrored => d - k + 1,
            };
            em.swap(slots[k - 1], base)?;
            em.swap(slots[partner - 1], base)?;
            em.swap(slots[k - 1], base)?;
        }
    }

    // Stage 3
    for y in 0..phi.right_count {
        let base = map.base(right(y));
        let lab = map.label_path(right(y), labelling.right[y]);
        for k in 1..=d {
            em.swap(base, map.assignment_vertices(right(y))[k - 1])?;
            em.bubble(&lab[..=d - k])?;
        }
    }

    // Stage 4
    for y in 0..phi.right_count {
        let incoming = phi.right_neighbors(y);
        let base_y = map.base(right(y));
        let lab_y = map.label_path(right(y), labelling.right[y]);
        let far_y = 2 * d - 1;
        let slots_y = map.assignment_vertices(right(y));

        // (a) incoming tokens, destination slots d, d-1, ..., 1
        for k in 1..=d {
            let slot = d - k;
            let destination = slots_y[slot];
            let token = instance.target().token_at(destination);
            let (edge, x) = incoming[slot];
            let lab_x = map.label_path(left(x), labelling.left[x]);
            let here = em.config.vertex_of(token);
            if here != *lab_x.last().unwrap() {
                return Err(Error::ClaimViolated(format!(
                    "stage 4(a), y = {y}, k = {k}: token {token} is on {here}, not at the far end of lab(x{x})"
                )));
            }
            let sat = map
                .satisfaction_path(edge, labelling.left[x], labelling.right[y])
                .ok_or(Error::NotFullySatisfying)?;
            em.bubble(sat)?;
            em.bubble(lab_y.iter().rev())?;
            em.swap(base_y, destination)?;
        }

        // (b) outgoing tokens, in slot order
        for k in 1..=d {
            let token = start.token_at(slots_y[k - 1]);
            let expected = far_y - (k - 1);
            let here = em.config.vertex_of(token);
            if here != lab_y[expected] {
                return Err(Error::ClaimViolated(format!(
                    "stage 4(b), y = {y}, k = {k}: token {token} is on {here}, not {} edges from the far end of lab(y{y})",
                    k - 1
                )));
            }
            em.bubble(&lab_y[expected..])?;
            let (edge, x) = incoming[k - 1];
            let sat = map
                .satisfaction_path(edge, labelling.left[x], labelling.right[y])
                .ok_or(Error::NotFullySatisfying)?;
            em.bubble(sat.iter().rev())?;
            let lab_x = map.label_path(left(x), labelling.left[x]);
            em.bubble(lab_x.iter().rev())?;
            let home = instance.target_of(token);
            em.swap(map.base(left(x)), home)?;
        }
    }
    Ok(em.seq)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TokenClass {
    Detour,
    NonDetour,
    NonAssignment,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DetourReport {
    pub classes: Vec<TokenClass>,
    pub detour_left: usize,
    pub detour_right: usize,
}

impl DetourReport {
    pub fn detour_count(&self) -> usize {
        self.detour_left + self.detour_right
    }
}

/// Splits assignment tokens by whether their closed-walk-free path under
/// `seq` is longer than `4d` edges.
pub fn classify_detour_tokens(instance: &Instance, map: &GadgetMap, seq: &SwapSequence) -> Result<DetourReport> {
    seq.check_edges(instance.graph())?;
    let n = instance.vertex_count();
    let mut walks: Vec<Vec<Vertex>> = (0..n).map(|t| vec![instance.start().vertex_of(t)]).collect();
    let mut config = instance.start().clone();
    for &(u, v) in seq {
        let (a, b) = (config.token_at(u), config.token_at(v));
        config.swap_unchecked(u, v);
        walks[a].push(v);
        walks[b].push(u);
    }
    let limit = 4 * map.degree;
    let mut report = DetourReport {
        classes: Vec::with_capacity(n),
        detour_left: 0,
        detour_right: 0,
    };
    for (token, walk) in walks.iter().enumerate() {
        let class = match map.roles[instance.start().vertex_of(token)] {
            VertexRole::Assignment { gadget, .. } => {
                let edges = crate::model::simplify_walk(walk).len() - 1;
                if edges > limit {
                    match gadget.side {
                        Side::Left => report.detour_left += 1,
                        Side::Right => report.detour_right += 1,
                    }
                    TokenClass::Detour
                } else {
                    TokenClass::NonDetour
                }
            }
            _ => TokenClass::NonAssignment,
        };
        report.classes.push(class);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate;

    fn single_edge(alphabet: usize, constraint: Vec<usize>) -> LabelCoverInstance {
        LabelCoverInstance {
            left_count: 1,
            right_count: 1,
            alphabet_size: alphabet,
            edges: vec![LabelCoverEdge {
                left: 0,
                right: 0,
                constraint,
            }],
        }
    }

    #[test]
    fn validation() {
        assert_eq!(validate_label_cover(&single_edge(1, vec![0])), Ok(1));
        let k22 = LabelCoverInstance::complete_bipartite(2, 1, vec![0]);
        assert_eq!(validate_label_cover(&k22), Ok(2));
        let mut three = k22.clone();
        three.edges.pop();
        assert!(matches!(validate_label_cover(&three), Err(Error::NotRegular(_))));
        let mut dup = k22.clone();
        dup.edges[1] = dup.edges[0].clone();
        assert!(matches!(validate_label_cover(&dup), Err(Error::NotSimple(_))));
        let mut lopsided = single_edge(1, vec![0]);
        lopsided.right_count = 2;
        assert!(matches!(
            validate_label_cover(&lopsided),
            Err(Error::SidesUnequal { left: 1, right: 2 })
        ));
        assert!(matches!(
            validate_label_cover(&single_edge(2, vec![0])),
            Err(Error::InvalidConstraint { edge: 0, .. })
        ));
    }

    #[test]
    fn satisfied_fractions() {
        let ident = LabelCoverInstance::complete_bipartite(2, 2, vec![0, 1]);
        assert_eq!(satisfied_fraction(&ident, &Labelling::constant(&ident, 1)), Ratio::from_integer(1));
        let phi = single_edge(2, vec![1, 1]);
        let lam = |r| Labelling {
            left: vec![0],
            right: vec![r],
        };
        assert_eq!(satisfied_fraction(&phi, &lam(0)), Ratio::from_integer(0));
        assert_eq!(satisfied_fraction(&phi, &lam(1)), Ratio::from_integer(1));
    }

    #[test]
    fn amplification_counts() {
        let phi = single_edge(1, vec![0]);
        assert_eq!(amplify_degree(&phi, 1).unwrap(), phi);
        let twice = amplify_degree(&phi, 2).unwrap();
        assert_eq!((twice.left_count, twice.right_count, twice.edges.len()), (2, 2, 4));
        assert_eq!(validate_label_cover(&twice), Ok(2));
    }

    #[test]
    fn smallest_gadget_counts() {
        // left: base + 1 assignment (label path collapses onto the base);
        // right: base + 1 assignment + 1 label vertex; no satisfaction interior
        let (inst, map) = build_from_label_cover(&single_edge(1, vec![0])).unwrap();
        assert_eq!(inst.vertex_count(), 5);
        assert_eq!(map.assignment_token_count(), 2);
        assert_eq!(map.label_path(left(0), 0), &[0]);
        assert_eq!(map.satisfaction_path(0, 0, 0), Some(&[0, 4][..]));
    }

    #[test]
    fn d1_parallel_satisfaction_edges_merge() {
        // both left labels demand right label 0: two satisfaction paths, one edge
        let (inst, _) = build_from_label_cover(&single_edge(2, vec![0, 0])).unwrap();
        // left 1 + 1 + 2*0, right 1 + 1 + 2*1
        assert_eq!(inst.vertex_count(), 6);
    }

    #[test]
    fn assignment_slots_follow_neighbor_order() {
        let phi = LabelCoverInstance::complete_bipartite(2, 1, vec![0]);
        let (_, map) = build_from_label_cover(&phi).unwrap();
        for side in [left(0), left(1), right(0), right(1)] {
            let slots = map.assignment_vertices(side);
            for (i, &v) in slots.iter().enumerate() {
                match map.roles[v] {
                    VertexRole::Assignment { neighbor, slot, .. } => {
                        assert_eq!(neighbor, i);
                        assert_eq!(slot, i + 1);
                    }
                    other => panic!("unexpected role {other:?}"),
                }
            }
        }
    }

    #[test]
    fn completeness_rejects_bad_inputs() {
        let phi = single_edge(2, vec![1, 0]);
        let (inst, map) = build_from_label_cover(&phi).unwrap();
        let bad = Labelling {
            left: vec![0],
            right: vec![0],
        };
        assert_eq!(
            completeness_sequence(&phi, &bad, &inst, &map),
            Err(Error::NotFullySatisfying)
        );
        let good = Labelling {
            left: vec![0],
            right: vec![1],
        };
        assert_eq!(
            completeness_sequence(&phi, &good, &inst, &map),
            Err(Error::OddDegree { degree: 1 })
        );
    }

    #[test]
    fn mirrored_pairing_validates_on_k22() {
        let phi = LabelCoverInstance::complete_bipartite(2, 1, vec![0]);
        let (inst, map) = build_from_label_cover(&phi).unwrap();
        let lam = Labelling::constant(&phi, 0);
        let seq = completeness_sequence(&phi, &lam, &inst, &map).unwrap();
        assert!(validate(&inst, &seq).unwrap().reaches_target);
        assert_eq!(seq.len(), 60);
        let report = classify_detour_tokens(&inst, &map, &seq).unwrap();
        assert_eq!(report.detour_count(), 0);
        assert_eq!(
            report.classes.iter().filter(|c| **c == TokenClass::NonDetour).count(),
            8
        );
    }

    #[test]
    fn literal_pairing_fails_on_k22() {
        let phi = LabelCoverInstance::complete_bipartite(2, 1, vec![0]);
        let (inst, map) = build_from_label_cover(&phi).unwrap();
        let lam = Labelling::constant(&phi, 0);
        match completeness_sequence_with_pairing(&phi, &lam, &inst, &map, Stage2Pairing::Literal) {
            Err(Error::ClaimViolated(_)) => {}
            Ok(seq) => assert!(!validate(&inst, &seq).unwrap().reaches_target),
            Err(other) => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn gadget_map_serializes_regions_as_a_list() {
        let (_, map) = build_from_label_cover(&single_edge(1, vec![0])).unwrap();
        let json: serde_json::Value = serde_json::from_str(&map.to_json()).unwrap();
        assert_eq!(json["degree"], 1);
        assert_eq!(json["edge_regions"].as_array().unwrap().len(), 4);
        assert_eq!(json["roles"][0]["role"], "base");
    }
    fn gadget_size(map: &GadgetMap, gadget: GadgetId) -> usize {
        map.roles
            .iter()
            .filter(|r| match r {
                VertexRole::Base { gadget: g }
                | VertexRole::Assignment { gadget: g, .. }
                | VertexRole::LabelPath { gadget: g, .. } => *g == gadget,
                VertexRole::Satisfaction { .. } => false,
            })
            .count()
    }

    #[test]
    fn degree_five_gadget_sizes() {
        let phi = LabelCoverInstance::complete_bipartite(5, 3, vec![0, 1, 2]);
        let (inst, map) = build_from_label_cover(&phi).unwrap();
        assert_eq!(gadget_size(&map, left(0)), 18);
        assert_eq!(gadget_size(&map, right(4)), 33);
        // 25 edges, 3 satisfying pairs each, 4 interior vertices per path
        assert_eq!(inst.vertex_count(), 5 * 18 + 5 * 33 + 25 * 3 * 4);
        assert_eq!(map.assignment_token_count(), 50);
    }

    #[test]
    fn assignment_tokens_are_4d_apart() {
        for d in [1, 2, 3] {
            let phi = LabelCoverInstance::complete_bipartite(d, 2, vec![1, 0]);
            let (inst, map) = build_from_label_cover(&phi).unwrap();
            for (v, role) in map.roles.iter().enumerate() {
                let expected = match role {
                    VertexRole::Assignment { .. } => 4 * d,
                    _ => 0,
                };
                assert_eq!(inst.distances().hops(v, inst.target_of(v)), expected);
            }
        }
    }

    fn best_fraction(phi: &LabelCoverInstance) -> Ratio<u64> {
        let sigma = phi.alphabet_size;
        let vertices = phi.left_count + phi.right_count;
        let mut best = Ratio::from_integer(0);
        for code in 0..sigma.pow(vertices as u32) {
            let mut labels = Vec::with_capacity(vertices);
            let mut rest = code;
            for _ in 0..vertices {
                labels.push(rest % sigma);
                rest /= sigma;
            }
            let right = labels.split_off(phi.left_count);
            let lam = Labelling { left: labels, right };
            best = best.max(satisfied_fraction(phi, &lam));
        }
        best
    }

    #[test]
    fn amplification_preserves_best_fraction() {
        let tables = [vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]];
        for a in &tables {
            for b in &tables {
                for c in &tables {
                    for e in &tables {
                        let edges = [(0, 0, a), (0, 1, b), (1, 0, c), (1, 1, e)]
                            .into_iter()
                            .map(|(left, right, t)| LabelCoverEdge {
                                left,
                                right,
                                constraint: t.clone(),
                            })
                            .collect();
                        let phi = LabelCoverInstance {
                            left_count: 2,
                            right_count: 2,
                            alphabet_size: 2,
                            edges,
                        };
                        let amplified = amplify_degree(&phi, 2).unwrap();
                        assert_eq!(validate_label_cover(&amplified), Ok(4));
                        assert_eq!(best_fraction(&phi), best_fraction(&amplified));
                    }
                }
            }
        }
    }
    #[test]
    fn degree_four_sequence_has_the_exact_length() {
        let phi = LabelCoverInstance::complete_bipartite(4, 2, vec![1, 0]);
        let lam = Labelling {
            left: vec![0; 4],
            right: vec![1; 4],
        };
        let (inst, map) = build_from_label_cover(&phi).unwrap();
        let seq = completeness_sequence(&phi, &lam, &inst, &map).unwrap();
        assert!(validate(&inst, &seq).unwrap().reaches_target);
        assert_eq!(seq.len(), (13 * 16 / 4 + 4) * 8);
        assert_eq!(classify_detour_tokens(&inst, &map, &seq).unwrap().detour_count(), 0);
    }
}
