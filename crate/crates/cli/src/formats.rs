//! Graph documents in two interchangeable formats: a DIMACS-flavored
//! edge-list text format (`p <n> <m>`, `e u v`, optional `w u p/q` lines,
//! one-based ids) and a structured JSON object. Weights are exact rationals
//! serialized as `p/q` strings; missing weights default to uniform `1/n`.

use oddsig_core::graph::{parse_rational, Graph, WeightAssignment};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug)]
pub enum FormatError {
    Parse(String),
    Graph(String),
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::Parse(m) => write!(f, "parse error: {m}"),
            FormatError::Graph(m) => write!(f, "invalid graph: {m}"),
        }
    }
}

impl std::error::Error for FormatError {}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    /// One-based vertex pairs, as in the text format.
    pub edges: Vec<(usize, usize)>,
    /// One-based vertex → `p/q` weight string.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<std::collections::BTreeMap<usize, String>>,
}

impl GraphDocument {
    pub fn from_graph(g: &Graph) -> Self {
        GraphDocument {
            n: g.n(),
            labels: g.labels().map(|l| l.to_vec()),
            edges: g.edges().iter().map(|&(u, v)| (u + 1, v + 1)).collect(),
            weights: None,
        }
    }

    pub fn with_weights(mut self, w: &WeightAssignment) -> Self {
        let mut map = std::collections::BTreeMap::new();
        for (v, weight) in w.as_slice().iter().enumerate() {
            map.insert(v + 1, oddsig_core::graph::format_rational(weight));
        }
        self.weights = Some(map);
        self
    }

    /// Sniff the format: JSON if the first non-space byte is `{`.
    pub fn parse(input: &str) -> Result<Self, FormatError> {
        if input.trim_start().starts_with('{') {
            serde_json::from_str(input).map_err(|e| FormatError::Parse(e.to_string()))
        } else {
            Self::parse_text(input)
        }
    }

    pub fn parse_text(input: &str) -> Result<Self, FormatError> {
        let mut n: Option<usize> = None;
        let mut m: Option<usize> = None;
        let mut edges = Vec::new();
        let mut weights = std::collections::BTreeMap::new();
        for (lineno, line) in input.lines().enumerate() {
            let line = line.trim();
            let mut parts = line.split_whitespace();
            let head = match parts.next() {
                None => continue,
                Some(h) => h,
            };
            let err = |msg: &str| FormatError::Parse(format!("line {}: {msg}", lineno + 1));
            match head {
                "c" => {}
                "p" => {
                    let nv: usize = parts
                        .next()
                        .ok_or_else(|| err("missing vertex count"))?
                        .parse()
                        .map_err(|_| err("bad vertex count"))?;
                    let ne: usize = parts
                        .next()
                        .ok_or_else(|| err("missing edge count"))?
                        .parse()
                        .map_err(|_| err("bad edge count"))?;
                    n = Some(nv);
                    m = Some(ne);
                }
                "e" => {
                    let u: usize = parts
                        .next()
                        .ok_or_else(|| err("missing endpoint"))?
                        .parse()
                        .map_err(|_| err("bad endpoint"))?;
                    let v: usize = parts
                        .next()
                        .ok_or_else(|| err("missing endpoint"))?
                        .parse()
                        .map_err(|_| err("bad endpoint"))?;
                    edges.push((u, v));
                }
                "w" => {
                    let u: usize = parts
                        .next()
                        .ok_or_else(|| err("missing vertex"))?
                        .parse()
                        .map_err(|_| err("bad vertex"))?;
                    let r = parts.next().ok_or_else(|| err("missing weight"))?;
                    parse_rational(r).map_err(|e| err(&e.to_string()))?;
                    weights.insert(u, r.to_string());
                }
                other => return Err(err(&format!("unknown record `{other}`"))),
            }
        }
        let n = n.ok_or_else(|| FormatError::Parse("missing `p <n> <m>` header".into()))?;
        if let Some(m) = m {
            if m != edges.len() {
                return Err(FormatError::Parse(format!(
                    "header promises {m} edges, found {}",
                    edges.len()
                )));
            }
        }
        Ok(GraphDocument {
            n,
            labels: None,
            edges,
            weights: if weights.is_empty() {
                None
            } else {
                Some(weights)
            },
        })
    }

    pub fn emit_text(&self) -> String {
        let mut out = format!("p {} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            out.push_str(&format!("e {u} {v}\n"));
        }
        if let Some(w) = &self.weights {
            for (u, r) in w {
                out.push_str(&format!("w {u} {r}\n"));
            }
        }
        out
    }

    pub fn emit_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    /// Build the internal graph (zero-based) plus its weight assignment;
    /// missing weights become uniform `1/n`.
    pub fn realize(&self) -> Result<(Graph, WeightAssignment), FormatError> {
        for &(u, v) in &self.edges {
            if u == 0 || v == 0 || u > self.n || v > self.n {
                return Err(FormatError::Graph(format!(
                    "edge {u}-{v} out of range 1..={}",
                    self.n
                )));
            }
        }
        let zero_based: Vec<(usize, usize)> =
            self.edges.iter().map(|&(u, v)| (u - 1, v - 1)).collect();
        let mut g =
            Graph::new(self.n, &zero_based).map_err(|e| FormatError::Graph(e.to_string()))?;
        if let Some(labels) = &self.labels {
            if labels.len() != self.n {
                return Err(FormatError::Graph("label count != n".into()));
            }
            g = g.with_labels(labels.clone());
        }
        let mask = g.vertices();
        let w = match &self.weights {
            None => WeightAssignment::uniform(self.n, &mask),
            Some(map) => {
                let mut weights = vec![oddsig_core::graph::rat(0, 1); self.n];
                for (u, r) in map {
                    if *u == 0 || *u > self.n {
                        return Err(FormatError::Graph(format!(
                            "weight vertex {u} out of range"
                        )));
                    }
                    weights[*u - 1] =
                        parse_rational(r).map_err(|e| FormatError::Graph(e.to_string()))?;
                }
                WeightAssignment::from_weights(weights, &mask)
                    .map_err(|e| FormatError::Graph(e.to_string()))?
            }
        };
        Ok((g, w))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let doc = GraphDocument {
            n: 4,
            labels: None,
            edges: vec![(1, 2), (2, 3), (3, 4)],
            weights: Some(
                [
                    (1, "1/2".to_string()),
                    (2, "1/6".to_string()),
                    (3, "1/6".to_string()),
                    (4, "1/6".to_string()),
                ]
                .into_iter()
                .collect(),
            ),
        };
        let text = doc.emit_text();
        let parsed = GraphDocument::parse(&text).unwrap();
        assert_eq!(parsed, doc);
        // attaching computed weights reproduces the same map (plus zeros)
        let (g, w) = doc.realize().unwrap();
        let redone = GraphDocument::from_graph(&g).with_weights(&w);
        assert_eq!(
            redone.weights.as_ref().unwrap().get(&1),
            Some(&"1/2".to_string())
        );
        let json = doc.emit_json();
        let parsed = GraphDocument::parse(&json).unwrap();
        assert_eq!(parsed, doc);
        let (g, w) = doc.realize().unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(*w.total(), oddsig_core::graph::rat(1, 1));
    }

    #[test]
    fn uniform_default_weights() {
        let doc = GraphDocument::parse("p 3 2\ne 1 2\ne 2 3\n").unwrap();
        let (_, w) = doc.realize().unwrap();
        assert_eq!(*w.weight(0), oddsig_core::graph::rat(1, 3));
    }

    #[test]
    fn malformed_inputs() {
        assert!(GraphDocument::parse("e 1 2\n").is_err());
        assert!(GraphDocument::parse("p 3 1\ne 1 2\ne 2 3\n").is_err());
        assert!(GraphDocument::parse("p 2 1\ne 1 5\n")
            .unwrap()
            .realize()
            .is_err());
        assert!(GraphDocument::parse("p 2 1\nq 1 2\n").is_err());
    }
}
