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

use thiserror::Error;

use crate::model::Vertex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("swap #{index} ({u}, {v}) is not an edge of the graph")]
    NonEdge { index: usize, u: Vertex, v: Vertex },
    #[error("consecutive path vertices {u} and {v} (position {index}) are not adjacent")]
    NotAWalk { index: usize, u: Vertex, v: Vertex },
    #[error("token {token} cannot reach its target: start {start} and target {target} are disconnected")]
    Disconnected {
        token: usize,
        start: Vertex,
        target: Vertex,
    },
    #[error("edge ({u}, {v}) has no region label")]
    UnlabeledEdge { u: Vertex, v: Vertex },
    #[error("state budget of {budget} exceeded")]
    BudgetExceeded { budget: usize },
    #[error("label-cover graph is not regular: {0}")]
    NotRegular(String),
    #[error("label-cover sides differ in size: |X| = {left}, |Y| = {right}")]
    SidesUnequal { left: usize, right: usize },
    #[error("label-cover graph is not simple: {0}")]
    NotSimple(String),
    #[error("invalid constraint on edge {edge}: {reason}")]
    InvalidConstraint { edge: usize, reason: String },
    #[error("labelling does not satisfy every constraint")]
    NotFullySatisfying,
    #[error("degree {degree} is odd; the completeness sequence needs an even degree")]
    OddDegree { degree: usize },
    #[error("construction invariant violated: {0}")]
    ClaimViolated(String),
    #[error("set-cover instance is infeasible: element {element} is in no set")]
    Infeasible { element: usize },
    #[error("the chosen sets do not cover element {element}")]
    NotACover { element: usize },
    #[error("{sets} sets is too many for exhaustive enumeration (limit {limit})")]
    TooLarge { sets: usize, limit: usize },
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(err.to_string())
    }
}
