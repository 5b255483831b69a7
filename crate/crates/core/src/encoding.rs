//! JSON and text encodings of graphs and classes.
//!
//! Graph: `{"vertices":[{"genus":g,"legs":[i,…]},…],"edges":[[u,v],…]}`
//! with one-based markings. A decorated graph adds `"hpsi":[[k0,k1],…]`
//! parallel to `edges` and `"lpsi":{marking:k}` (zero entries omitted).
//!
//! Class: `{"g":…,"n":…,"truncation":…,"terms":[{"lambda":a,"graph":…,
//! "hpsi":…,"lpsi":…,"coeff":"p/q"},…]}`, terms sorted by degree and then
//! canonical encoding.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{automorphism_order, DecoratedGraph, StableGraph};
use crate::rational::{format_rational, parse_rational};
use crate::tautology::{TautClass, TermKey};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub genus: u32,
    pub legs: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<[usize; 2]>,
}

impl From<&StableGraph> for GraphJson {
    fn from(g: &StableGraph) -> Self {
        GraphJson {
            vertices: (0..g.num_vertices())
                .map(|v| VertexJson {
                    genus: g.genera()[v],
                    legs: g.legs_at(v).into_iter().map(|i| i + 1).collect(),
                })
                .collect(),
            edges: g.edges().to_vec(),
        }
    }
}

impl GraphJson {
    pub fn to_graph(&self) -> Result<StableGraph> {
        let n: usize = self.vertices.iter().map(|v| v.legs.len()).sum();
        let mut legs = vec![usize::MAX; n];
        for (v, vertex) in self.vertices.iter().enumerate() {
            for &i in &vertex.legs {
                if i == 0 || i > n || legs[i - 1] != usize::MAX {
                    return Err(Error::Parse(format!(
                        "markings must be 1..={n}, each used once"
                    )));
                }
                legs[i - 1] = v;
            }
        }
        StableGraph::new(
            self.vertices.iter().map(|v| v.genus).collect(),
            legs,
            self.edges.clone(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub lambda: u32,
    pub graph: GraphJson,
    pub hpsi: Vec<[u32; 2]>,
    pub lpsi: BTreeMap<usize, u32>,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub g: u32,
    pub n: usize,
    pub truncation: u32,
    pub terms: Vec<TermJson>,
}

fn lpsi_map(d: &DecoratedGraph) -> BTreeMap<usize, u32> {
    d.lpsi()
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| (i + 1, k))
        .collect()
}

impl From<&TautClass> for ClassJson {
    fn from(c: &TautClass) -> Self {
        ClassJson {
            g: c.genus(),
            n: c.num_markings(),
            truncation: c.truncation(),
            terms: c
                .sorted_terms()
                .into_iter()
                .map(|(k, q)| TermJson {
                    lambda: k.lambda,
                    graph: k.graph.graph().into(),
                    hpsi: k.graph.hpsi().to_vec(),
                    lpsi: lpsi_map(&k.graph),
                    coeff: format_rational(q),
                })
                .collect(),
        }
    }
}

impl ClassJson {
    pub fn to_class(&self) -> Result<TautClass> {
        let mut c = TautClass::zero(self.g, self.n, self.truncation)?;
        for t in &self.terms {
            let graph = t.graph.to_graph()?;
            let mut lpsi = vec![0; graph.num_legs()];
            for (&i, &k) in &t.lpsi {
                if i == 0 || i > lpsi.len() {
                    return Err(Error::Parse(format!("lpsi marking {i} out of range")));
                }
                lpsi[i - 1] = k;
            }
            let d = DecoratedGraph::new(graph, t.hpsi.clone(), lpsi)?;
            c.insert(t.lambda, &d, parse_rational(&t.coeff)?)?;
        }
        Ok(c)
    }
}

pub fn class_to_json(c: &TautClass) -> String {
    serde_json::to_string_pretty(&ClassJson::from(c)).expect("class serializes")
}

pub fn class_from_json(text: &str) -> Result<TautClass> {
    let parsed: ClassJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    parsed.to_class()
}

fn term_text(k: &TermKey, q: &crate::rational::Rational) -> String {
    let mut s = format_rational(q);
    if q.denom() == &1.into() {
        s = q.numer().to_string();
    }
    match k.lambda {
        0 => {}
        1 => s.push_str(" λ1"),
        a => {
            let _ = write!(s, " λ1^{a}");
        }
    }
    let _ = write!(s, " {}", k.graph);
    s
}

/// One line per term, in the same order as the JSON encoding.
pub fn class_to_text(c: &TautClass) -> String {
    let mut out = format!(
        "# g={} n={} truncation={} terms={}\n",
        c.genus(),
        c.num_markings(),
        c.truncation(),
        c.len()
    );
    for (k, q) in c.sorted_terms() {
        let _ = writeln!(out, "[deg {}] {}", k.degree(), term_text(k, q));
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphListing {
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<[usize; 2]>,
    pub aut: u64,
    pub locus: &'static str,
}

pub fn graph_listing(graphs: &[StableGraph]) -> Vec<GraphListing> {
    graphs
        .iter()
        .map(|g| {
            let GraphJson { vertices, edges } = g.into();
            GraphListing {
                vertices,
                edges,
                aut: automorphism_order(g),
                locus: g.classify_locus().as_str(),
            }
        })
        .collect()
}

pub fn graphs_to_json(graphs: &[StableGraph]) -> String {
    serde_json::to_string_pretty(&graph_listing(graphs)).expect("graphs serialize")
}

pub fn graphs_to_text(graphs: &[StableGraph]) -> String {
    let mut out = format!("# {} graphs\n", graphs.len());
    for g in graphs {
        let _ = writeln!(
            out,
            "{g}  |Aut|={}  locus={}",
            automorphism_order(g),
            g.classify_locus()
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohft::verlinde_chern_character;
    use crate::fusion::{FusionDatum, Label};

    #[test]
    fn class_round_trip() {
        let ch = verlinde_chern_character(&FusionDatum::sl2(1), 1, &[Label(1), Label(1)], 2).unwrap();
        let text = class_to_json(&ch);
        assert_eq!(class_from_json(&text).unwrap(), ch);
    }

    #[test]
    fn graph_encoding_shape() {
        let g = StableGraph::new(vec![0], vec![0], vec![[0, 0]]).unwrap();
        let v = serde_json::to_value(GraphJson::from(&g)).unwrap();
        assert_eq!(v, serde_json::json!({"vertices":[{"genus":0,"legs":[1]}],"edges":[[0,0]]}));
    }

    #[test]
    fn bad_markings_rejected() {
        let j = GraphJson {
            vertices: vec![VertexJson { genus: 1, legs: vec![2] }],
            edges: vec![],
        };
        assert!(j.to_graph().is_err());
    }
}
