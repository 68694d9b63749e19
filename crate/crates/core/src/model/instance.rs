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

use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::model::{Configuration, DistanceTable, Graph, Token, Vertex};

/// Exact non-negative token weight.
pub type Weight = Ratio<u64>;

/// A token swapping instance: a graph with start and target placements.
///
/// Hop distances are computed eagerly; construction fails if any token's
/// start and target lie in different components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    graph: Graph,
    start: Configuration,
    target: Configuration,
    dist: DistanceTable,
}

impl Instance {
    pub fn new(graph: Graph, start: Configuration, target: Configuration) -> Result<Self> {
        let n = graph.vertex_count();
        if start.len() != n || target.len() != n {
            return Err(Error::InvalidConfiguration(format!(
                "graph has {n} vertices but configurations place {} and {} tokens",
                start.len(),
                target.len()
            )));
        }
        let dist = DistanceTable::new(&graph);
        for token in 0..n {
            let (s, t) = (start.vertex_of(token), target.vertex_of(token));
            if dist.get(s, t).is_none() {
                return Err(Error::Disconnected {
                    token,
                    start: s,
                    target: t,
                });
            }
        }
        Ok(Instance {
            graph,
            start,
            target,
            dist,
        })
    }

    /// Tokens start on their own index; token `t` wants to reach `target[t]`.
    pub fn from_target_placement(graph: Graph, target: Vec<Vertex>) -> Result<Self> {
        let n = graph.vertex_count();
        Instance::new(
            graph,
            Configuration::identity(n),
            Configuration::from_placement(target)?,
        )
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn start(&self) -> &Configuration {
        &self.start
    }

    pub fn target(&self) -> &Configuration {
        &self.target
    }

    pub fn distances(&self) -> &DistanceTable {
        &self.dist
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn target_of(&self, token: Token) -> Vertex {
        self.target.vertex_of(token)
    }

    /// Hop distance from `vertex` to the target of `token`.
    pub fn distance_to_target(&self, token: Token, vertex: Vertex) -> usize {
        self.dist.hops(vertex, self.target.vertex_of(token))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedInstance {
    instance: Instance,
    weights: Vec<Weight>,
}

impl WeightedInstance {
    pub fn new(instance: Instance, weights: Vec<Weight>) -> Result<Self> {
        if weights.len() != instance.vertex_count() {
            return Err(Error::InvalidConfiguration(format!(
                "{} weights given for {} tokens",
                weights.len(),
                instance.vertex_count()
            )));
        }
        Ok(WeightedInstance { instance, weights })
    }

    pub fn uniform(instance: Instance, weight: Weight) -> Self {
        let n = instance.vertex_count();
        WeightedInstance {
            instance,
            weights: vec![weight; n],
        }
    }

    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn weight(&self, token: Token) -> Weight {
        self.weights[token]
    }

    /// True when every weight is exactly 0 or 1.
    pub fn is_zero_one(&self) -> bool {
        self.weights
            .iter()
            .all(|w| w.is_zero() || *w == Weight::from_integer(1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_disconnected_tokens() {
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let err = Instance::from_target_placement(g, vec![2, 1, 0, 3]).unwrap_err();
        assert!(matches!(err, Error::Disconnected { token: 0, .. }));
    }

    #[test]
    fn disconnected_graph_is_fine_when_tokens_stay_in_component() {
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert!(Instance::from_target_placement(g, vec![1, 0, 3, 2]).is_ok());
    }

    #[test]
    fn rejects_size_mismatch() {
        let g = Graph::path(3);
        assert!(Instance::new(g, Configuration::identity(3), Configuration::identity(2)).is_err());
    }

    #[test]
    fn zero_one_predicate() {
        let inst = Instance::from_target_placement(Graph::path(2), vec![1, 0]).unwrap();
        let w = WeightedInstance::new(inst.clone(), vec![Weight::from_integer(0), Weight::from_integer(1)]).unwrap();
        assert!(w.is_zero_one());
        let w = WeightedInstance::new(inst.clone(), vec![Weight::new(1, 2), Weight::from_integer(1)]).unwrap();
        assert!(!w.is_zero_one());
        assert!(WeightedInstance::new(inst, vec![Weight::from_integer(1)]).is_err());
    }
}
