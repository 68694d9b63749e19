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

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Configuration, Graph, Instance, Vertex};

pub type Swap = (Vertex, Vertex);

/// An ordered list of swaps, each along an edge `(u, v)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SwapSequence {
    pub swaps: Vec<Swap>,
}

impl SwapSequence {
    pub fn new() -> Self {
        SwapSequence::default()
    }

    pub fn len(&self) -> usize {
        self.swaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.swaps.is_empty()
    }

    pub fn push(&mut self, swap: Swap) {
        self.swaps.push(swap);
    }

    pub fn extend(&mut self, other: &SwapSequence) {
        self.swaps.extend_from_slice(&other.swaps);
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Swap> {
        self.swaps.iter()
    }

    /// Checks every swap is an edge, reporting the first offender.
    pub fn check_edges(&self, graph: &Graph) -> Result<()> {
        match self
            .swaps
            .iter()
            .enumerate()
            .find(|(_, &(u, v))| !graph.has_edge(u, v))
        {
            Some((index, &(u, v))) => Err(Error::NonEdge { index, u, v }),
            None => Ok(()),
        }
    }

    /// Applies the sequence to `config`, checking edges as it goes.
    pub fn replay(&self, graph: &Graph, config: &Configuration) -> Result<Configuration> {
        self.check_edges(graph)?;
        let mut current = config.clone();
        for &(u, v) in &self.swaps {
            current.swap_unchecked(u, v);
        }
        Ok(current)
    }
}

impl From<Vec<Swap>> for SwapSequence {
    fn from(swaps: Vec<Swap>) -> Self {
        SwapSequence { swaps }
    }
}

impl FromIterator<Swap> for SwapSequence {
    fn from_iter<I: IntoIterator<Item = Swap>>(iter: I) -> Self {
        SwapSequence {
            swaps: iter.into_iter().collect(),
        }
    }
}

impl<'a> IntoIterator for &'a SwapSequence {
    type Item = &'a Swap;
    type IntoIter = std::slice::Iter<'a, Swap>;

    fn into_iter(self) -> Self::IntoIter {
        self.swaps.iter()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub reaches_target: bool,
    pub final_config: Configuration,
    pub length: usize,
}

/// Replays `seq` from the instance's start and compares with its target.
pub fn validate(instance: &Instance, seq: &SwapSequence) -> Result<ValidationReport> {
    let final_config = seq.replay(instance.graph(), instance.start())?;
    debug_assert!(final_config.check_bijection());
    Ok(ValidationReport {
        reaches_target: &final_config == instance.target(),
        final_config,
        length: seq.len(),
    })
}

/// Swaps that carry the token on `path[0]` to the last vertex of `path`,
/// shifting every intermediate token one step back.
pub fn bubble(graph: &Graph, path: &[Vertex]) -> Result<SwapSequence> {
    path.windows(2)
        .enumerate()
        .map(|(index, w)| {
            if graph.has_edge(w[0], w[1]) {
                Ok((w[0], w[1]))
            } else {
                Err(Error::NotAWalk {
                    index,
                    u: w[0],
                    v: w[1],
                })
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2_swapped() -> Instance {
        Instance::from_target_placement(Graph::path(2), vec![1, 0]).unwrap()
    }

    #[test]
    fn identity_with_empty_sequence() {
        let inst = Instance::from_target_placement(Graph::path(3), vec![0, 1, 2]).unwrap();
        let report = validate(&inst, &SwapSequence::new()).unwrap();
        assert!(report.reaches_target);
        assert_eq!(report.length, 0);
    }

    #[test]
    fn p2_single_swap() {
        let inst = p2_swapped();
        assert!(validate(&inst, &vec![(0, 1)].into()).unwrap().reaches_target);
        assert!(!validate(&inst, &SwapSequence::new()).unwrap().reaches_target);
    }

    #[test]
    fn validate_reports_first_non_edge() {
        let inst = Instance::from_target_placement(Graph::path(3), vec![0, 1, 2]).unwrap();
        let err = validate(&inst, &vec![(0, 1), (1, 2), (0, 2), (2, 0)].into()).unwrap_err();
        assert_eq!(err, Error::NonEdge { index: 2, u: 0, v: 2 });
    }

    #[test]
    fn bubble_reads_the_walk() {
        let g = Graph::path(3);
        assert!(bubble(&g, &[0]).unwrap().is_empty());
        assert_eq!(bubble(&g, &[0, 1, 2]).unwrap().swaps, vec![(0, 1), (1, 2)]);
        assert!(matches!(
            bubble(&g, &[0, 2]),
            Err(Error::NotAWalk { index: 0, u: 0, v: 2 })
        ));
    }

    #[test]
    fn bubble_shifts_intermediate_tokens() {
        let g = Graph::path(3);
        let seq = bubble(&g, &[0, 1, 2]).unwrap();
        let end = seq.replay(&g, &Configuration::identity(3)).unwrap();
        // a@0, b@1, c@2 becomes b@0, c@1, a@2
        assert_eq!(end.occupants(), &[1, 2, 0]);
    }
}
