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

use crate::error::{Error, Result};
use crate::model::{Graph, Vertex};

pub type Token = usize;

/// A placement of `n` tokens on `n` vertices.
///
/// Both directions of the bijection are kept in sync so that a swap is O(1).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    vertex_of: Vec<Vertex>,
    token_at: Vec<Token>,
}

impl Configuration {
    /// Token `t` on vertex `t`.
    pub fn identity(n: usize) -> Self {
        Configuration {
            vertex_of: (0..n).collect(),
            token_at: (0..n).collect(),
        }
    }

    /// Builds a configuration from `placement[t] = vertex of token t`.
    pub fn from_placement(placement: Vec<Vertex>) -> Result<Self> {
        let n = placement.len();
        let mut token_at = vec![usize::MAX; n];
        for (token, &vertex) in placement.iter().enumerate() {
            if vertex >= n {
                return Err(Error::InvalidConfiguration(format!(
                    "token {token} placed on vertex {vertex} outside 0..{n}"
                )));
            }
            if token_at[vertex] != usize::MAX {
                return Err(Error::InvalidConfiguration(format!(
                    "vertex {vertex} holds tokens {} and {token}",
                    token_at[vertex]
                )));
            }
            token_at[vertex] = token;
        }
        Ok(Configuration {
            vertex_of: placement,
            token_at,
        })
    }

    /// Builds a configuration from `occupants[v] = token on vertex v`.
    pub fn from_occupants(occupants: Vec<Token>) -> Result<Self> {
        let inverse = Configuration::from_placement(occupants)?;
        Ok(Configuration {
            vertex_of: inverse.token_at,
            token_at: inverse.vertex_of,
        })
    }

    pub fn len(&self) -> usize {
        self.vertex_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_of.is_empty()
    }

    pub fn vertex_of(&self, token: Token) -> Vertex {
        self.vertex_of[token]
    }

    pub fn token_at(&self, vertex: Vertex) -> Token {
        self.token_at[vertex]
    }

    /// `placement()[t]` is the vertex of token `t`.
    pub fn placement(&self) -> &[Vertex] {
        &self.vertex_of
    }

    /// `occupants()[v]` is the token on vertex `v`.
    pub fn occupants(&self) -> &[Token] {
        &self.token_at
    }

    /// Exchanges the tokens on `u` and `v` without checking adjacency.
    pub fn swap_unchecked(&mut self, u: Vertex, v: Vertex) {
        let (a, b) = (self.token_at[u], self.token_at[v]);
        self.token_at.swap(u, v);
        self.vertex_of[a] = v;
        self.vertex_of[b] = u;
    }

    /// Returns the configuration after swapping along edge `(u, v)`.
    pub fn apply(&self, graph: &Graph, (u, v): (Vertex, Vertex)) -> Result<Self> {
        if !graph.has_edge(u, v) {
            return Err(Error::NonEdge { index: 0, u, v });
        }
        let mut next = self.clone();
        next.swap_unchecked(u, v);
        Ok(next)
    }

    pub(crate) fn check_bijection(&self) -> bool {
        self.vertex_of
            .iter()
            .enumerate()
            .all(|(t, &v)| self.token_at[v] == t)
    }
}
