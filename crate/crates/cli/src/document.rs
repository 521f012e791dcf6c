//! The on-disk graph format.
//!
//! ```json
//! {"n": 3, "labels": ["A", "B", "C"],
//!  "edges": [{"i": 0, "j": 1, "value": 0.75}, {"i": 0, "j": 2, "value": [0.7, 0.8]}],
//!  "metadata": {"source": "lab 3"}}
//! ```

use std::collections::BTreeMap;

use anyhow::{bail, Context};
use overlap_bounds::{OverlapGraph64, OverlapValue64, Provenance, RawEdge};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EdgeValue {
    Exact(f64),
    Range([f64; 2]),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DocProvenance {
    Measured,
    Inferred,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub i: usize,
    pub j: usize,
    pub value: EdgeValue,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<DocProvenance>,
    #[serde(flatten, skip_serializing)]
    pub unknown: BTreeMap<String, Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub edges: Vec<EdgeRecord>,
    #[serde(default)]
    pub metadata: BTreeMap<String, String>,
    #[serde(flatten, skip_serializing)]
    pub unknown: BTreeMap<String, Value>,
}

impl GraphDocument {
    /// Parse a document. Unknown fields are returned as warnings.
    pub fn parse(text: &str) -> anyhow::Result<(Self, Vec<String>)> {
        let doc: Self = serde_json::from_str(text).context("malformed graph document")?;
        let mut warnings: Vec<String> = doc.unknown.keys().map(|k| format!("ignoring unknown field `{k}`")).collect();
        for (idx, e) in doc.edges.iter().enumerate() {
            warnings.extend(e.unknown.keys().map(|k| format!("ignoring unknown field `edges[{idx}].{k}`")));
        }
        if let Some(labels) = &doc.labels {
            if labels.len() != doc.n {
                bail!("`labels` has {} entries but n = {}", labels.len(), doc.n);
            }
        }
        Ok((doc, warnings))
    }

    pub fn to_graph(&self) -> anyhow::Result<OverlapGraph64> {
        let mut raw = Vec::with_capacity(self.edges.len());
        for (idx, e) in self.edges.iter().enumerate() {
            let value = match e.value {
                EdgeValue::Exact(v) => OverlapValue64::exact(v),
                EdgeValue::Range([lo, hi]) => OverlapValue64::range(lo, hi),
            }
            .with_context(|| format!("edges[{idx}].value"))?;
            let provenance = match e.provenance {
                Some(DocProvenance::Inferred) => Provenance::Inferred,
                _ => Provenance::Measured,
            };
            raw.push(RawEdge {
                i: e.i,
                j: e.j,
                value,
                provenance,
            });
        }
        OverlapGraph64::new(self.n, &raw).context("invalid graph")
    }

    pub fn from_graph(g: &OverlapGraph64, labels: Option<Vec<String>>, metadata: BTreeMap<String, String>) -> Self {
        let edges = g
            .edges()
            .map(|((i, j), e)| EdgeRecord {
                i,
                j,
                value: match e.value {
                    OverlapValue64::Exact(v) => EdgeValue::Exact(v),
                    OverlapValue64::Range(iv) => EdgeValue::Range([iv.lo(), iv.hi()]),
                },
                provenance: Some(match e.provenance {
                    Provenance::Measured => DocProvenance::Measured,
                    Provenance::Inferred => DocProvenance::Inferred,
                }),
                unknown: BTreeMap::new(),
            })
            .collect();
        Self {
            n: g.n(),
            labels,
            edges,
            metadata,
            unknown: BTreeMap::new(),
        }
    }

    /// Display name of vertex `v`.
    pub fn label(&self, v: usize) -> String {
        self.labels
            .as_ref()
            .and_then(|l| l.get(v).cloned())
            .unwrap_or_else(|| v.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_fields_warn() {
        let (doc, warnings) =
            GraphDocument::parse(r#"{"n": 2, "edges": [{"i": 0, "j": 1, "value": 0.5, "sigma": 0.1}], "note": 1}"#)
                .unwrap();
        assert_eq!(doc.n, 2);
        assert_eq!(warnings.len(), 2);
        assert!(warnings[0].contains("note"));
        assert!(warnings[1].contains("edges[0].sigma"));
    }

    #[test]
    fn range_values_and_provenance() {
        let (doc, _) = GraphDocument::parse(
            r#"{"n": 3, "edges": [{"i": 0, "j": 1, "value": [0.25, 0.5]}, {"i": 1, "j": 2, "value": 1, "provenance": "inferred"}]}"#,
        )
        .unwrap();
        let g = doc.to_graph().unwrap();
        assert_eq!(g.value(0, 1), Some(OverlapValue64::range(0.25, 0.5).unwrap()));
        assert_eq!(g.edge(1, 2).unwrap().provenance, Provenance::Inferred);
    }

    #[test]
    fn bad_values_are_rejected() {
        let (doc, _) = GraphDocument::parse(r#"{"n": 2, "edges": [{"i": 0, "j": 1, "value": 1.5}]}"#).unwrap();
        assert!(doc.to_graph().is_err());
        assert!(GraphDocument::parse(r#"{"n": 2, "labels": ["a"], "edges": []}"#).is_err());
        assert!(GraphDocument::parse(r#"{"edges": []}"#).is_err());
    }
}
