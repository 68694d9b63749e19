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

//! The instance text format: a JSON document with `n`, `edges`, `start`,
//! `target` and optional `weights`.
//!
//! ```json
//! { "n": 2, "edges": [[0, 1]], "start": [0, 1], "target": [1, 0], "weights": ["1", "1/2"] }
//! ```
//!
//! `start[t]` and `target[t]` are the vertices of token `t`. Weights may be
//! written as integers or as `"p/q"` strings; they are always emitted as
//! strings. Canonical output sorts edges lexicographically.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::model::{Configuration, Graph, Instance, Weight, WeightedInstance};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub start: Vec<usize>,
    pub target: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<WeightRepr>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WeightRepr {
    Integer(u64),
    Text(String),
}

impl WeightRepr {
    fn parse(&self, token: usize) -> Result<Weight> {
        match self {
            WeightRepr::Integer(w) => Ok(Weight::from_integer(*w)),
            WeightRepr::Text(s) => {
                let s = s.trim();
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (s, "1"),
                };
                let parse = |x: &str| {
                    x.parse::<u64>().map_err(|_| {
                        Error::Parse(format!("weight of token {token} is not a non-negative rational: {s:?}"))
                    })
                };
                let (num, den) = (parse(num)?, parse(den)?);
                if den == 0 {
                    return Err(Error::Parse(format!("weight of token {token} has zero denominator")));
                }
                Ok(Weight::new(num, den))
            }
        }
    }
}

/// Serializes an edge-region map as a list of `{"edge": [u, v], "region": ...}`
/// entries, since JSON object keys cannot be pairs.
pub fn serialize_regions<L, S>(regions: &crate::model::EdgeRegions<L>, serializer: S) -> std::result::Result<S::Ok, S::Error>
where
    L: Serialize,
    S: serde::Serializer,
{
    #[derive(Serialize)]
    struct Entry<'a, L> {
        edge: [usize; 2],
        region: &'a L,
    }
    serializer.collect_seq(regions.iter().map(|(&(u, v), region)| Entry { edge: [u, v], region }))
}

/// A parsed instance document; `weights` is present for weighted instances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceDocument {
    pub instance: Instance,
    pub weights: Option<Vec<Weight>>,
}

impl InstanceDocument {
    pub fn unweighted(instance: Instance) -> Self {
        InstanceDocument {
            instance,
            weights: None,
        }
    }

    pub fn weighted(winst: WeightedInstance) -> Self {
        InstanceDocument {
            weights: Some(winst.weights().to_vec()),
            instance: winst.instance().clone(),
        }
    }

    pub fn weighted_instance(&self) -> Option<WeightedInstance> {
        self.weights
            .as_ref()
            .map(|w| WeightedInstance::new(self.instance.clone(), w.clone()).expect("lengths checked on load"))
    }

    pub fn to_file(&self) -> InstanceFile {
        let instance = &self.instance;
        InstanceFile {
            n: instance.vertex_count(),
            edges: instance.graph().edges().iter().map(|&(u, v)| [u, v]).collect(),
            start: instance.start().placement().to_vec(),
            target: instance.target().placement().to_vec(),
            weights: self
                .weights
                .as_ref()
                .map(|ws| ws.iter().map(|w| WeightRepr::Text(w.to_string())).collect()),
        }
    }

    /// Compact canonical JSON, the input to [`InstanceDocument::fingerprint`].
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("instance files always serialize")
    }

    pub fn to_pretty_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("instance files always serialize")
    }

    /// SHA-256 of the canonical serialization, hex encoded.
    pub fn fingerprint(&self) -> String {
        hex::encode(Sha256::digest(self.to_canonical_json().as_bytes()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: InstanceFile = serde_json::from_str(text)?;
        InstanceDocument::from_file(file)
    }

    pub fn from_file(file: InstanceFile) -> Result<Self> {
        let graph = Graph::new(file.n, file.edges.iter().map(|e| (e[0], e[1])))?;
        if file.start.len() != file.n || file.target.len() != file.n {
            return Err(Error::InvalidConfiguration(format!(
                "expected {} start and target entries, got {} and {}",
                file.n,
                file.start.len(),
                file.target.len()
            )));
        }
        let start = Configuration::from_placement(file.start)?;
        let target = Configuration::from_placement(file.target)?;
        let instance = Instance::new(graph, start, target)?;
        let weights = match file.weights {
            None => None,
            Some(reprs) => {
                if reprs.len() != file.n {
                    return Err(Error::InvalidConfiguration(format!(
                        "expected {} weights, got {}",
                        file.n,
                        reprs.len()
                    )));
                }
                Some(
                    reprs
                        .iter()
                        .enumerate()
                        .map(|(t, r)| r.parse(t))
                        .collect::<Result<Vec<_>>>()?,
                )
            }
        };
        Ok(InstanceDocument { instance, weights })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_weights_in_both_spellings() {
        let doc = InstanceDocument::from_json(
            r#"{"n": 3, "edges": [[1, 2], [0, 1]], "start": [0, 1, 2], "target": [1, 0, 2],
                "weights": [0, "1", "3/2"]}"#,
        )
        .unwrap();
        assert_eq!(
            doc.weights.as_deref(),
            Some(&[Weight::from_integer(0), Weight::from_integer(1), Weight::new(3, 2)][..])
        );
        assert_eq!(doc.instance.graph().edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn canonical_form_sorts_edges_and_round_trips() {
        let a = InstanceDocument::from_json(
            r#"{"n": 3, "edges": [[2, 1], [1, 0]], "start": [0, 1, 2], "target": [2, 1, 0]}"#,
        )
        .unwrap();
        let b = InstanceDocument::from_json(
            r#"{"n": 3, "edges": [[0, 1], [1, 2]], "start": [0, 1, 2], "target": [2, 1, 0]}"#,
        )
        .unwrap();
        assert_eq!(a.to_canonical_json(), b.to_canonical_json());
        assert_eq!(a.fingerprint(), b.fingerprint());
        assert!(a.to_canonical_json().contains(r#""edges":[[0,1],[1,2]]"#));
        assert_eq!(InstanceDocument::from_json(&a.to_pretty_json()).unwrap(), a);
    }

    #[test]
    fn malformed_documents_report_line_numbers() {
        let err = InstanceDocument::from_json("{\n  \"n\": 2,\n  \"edges\": [[0, 1]\n}").unwrap_err();
        match err {
            Error::Parse(msg) => assert!(msg.contains("line 4"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_weights() {
        let text = r#"{"n": 2, "edges": [[0, 1]], "start": [0, 1], "target": [1, 0], "weights": ["1/0", 1]}"#;
        assert!(matches!(InstanceDocument::from_json(text), Err(Error::Parse(_))));
        let text = r#"{"n": 2, "edges": [[0, 1]], "start": [0, 1], "target": [1, 0], "weights": ["-1", 1]}"#;
        assert!(matches!(InstanceDocument::from_json(text), Err(Error::Parse(_))));
    }
}
