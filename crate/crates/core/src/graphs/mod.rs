//! Stable graphs: dual graphs of nodal stable curves.
//!
//! Half-edges are identified by `(edge index, side)`; a self-loop is an
//! edge whose two sides sit on the same vertex. Markings are numbered
//! `1..=n` in the public encodings and stored zero-based internally.

mod canon;
mod enumerate;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use canon::{automorphism_order, canonical_form, decorated_automorphism_order};
pub use enumerate::{enumerate_stable_graphs, two_loop_graphs, LoopParity};

pub fn is_stable_type(g: u32, n: usize) -> bool {
    2 * g as i64 - 2 + n as i64 > 0
}

pub fn check_stable_type(g: u32, n: usize) -> Result<()> {
    if is_stable_type(g, n) {
        Ok(())
    } else {
        Err(Error::Unstable { g, n })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StableGraph {
    genera: Vec<u32>,
    /// `legs[i]` is the vertex carrying marking `i + 1`.
    legs: Vec<usize>,
    /// Vertices of half-edge sides 0 and 1.
    edges: Vec<[usize; 2]>,
}

/// Where a stratum sits inside the moduli space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Locus {
    Smooth,
    RationalTails,
    CompactType,
    General,
}

impl Locus {
    /// Whether a stratum of class `self` lies in the open locus `target`.
    pub fn within(self, target: Locus) -> bool {
        self <= target
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Locus::Smooth => "smooth",
            Locus::RationalTails => "rational_tails",
            Locus::CompactType => "compact_type",
            Locus::General => "general",
        }
    }
}

impl fmt::Display for Locus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Locus {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "smooth" => Ok(Locus::Smooth),
            "rational_tails" => Ok(Locus::RationalTails),
            "compact_type" => Ok(Locus::CompactType),
            "general" | "full" => Ok(Locus::General),
            _ => Err(Error::Parse(format!("unknown locus {s:?}"))),
        }
    }
}

impl StableGraph {
    /// Builds and validates a graph (connectivity and vertex stability).
    pub fn new(genera: Vec<u32>, legs: Vec<usize>, edges: Vec<[usize; 2]>) -> Result<Self> {
        let graph = StableGraph::new_unchecked(genera, legs, edges);
        graph.validate()?;
        Ok(graph)
    }

    pub(crate) fn new_unchecked(genera: Vec<u32>, legs: Vec<usize>, edges: Vec<[usize; 2]>) -> Self {
        StableGraph { genera, legs, edges }
    }

    /// The one-vertex graph of type `(g, n)`.
    pub fn trivial(g: u32, n: usize) -> Self {
        StableGraph::new_unchecked(vec![g], vec![0; n], Vec::new())
    }

    pub fn validate(&self) -> Result<()> {
        let nv = self.genera.len();
        if nv == 0 {
            return Err(Error::InvalidGraph("no vertices".into()));
        }
        if self.legs.iter().chain(self.edges.iter().flatten()).any(|&v| v >= nv) {
            return Err(Error::InvalidGraph("vertex index out of range".into()));
        }
        if !self.is_connected() {
            return Err(Error::InvalidGraph("not connected".into()));
        }
        for v in 0..nv {
            if !is_stable_type(self.genera[v], self.valence(v)) {
                return Err(Error::InvalidGraph(format!("vertex {v} is unstable")));
            }
        }
        Ok(())
    }

    pub fn num_vertices(&self) -> usize {
        self.genera.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_legs(&self) -> usize {
        self.legs.len()
    }

    pub fn genera(&self) -> &[u32] {
        &self.genera
    }

    pub fn legs(&self) -> &[usize] {
        &self.legs
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    /// Half-edges plus legs at `v`.
    pub fn valence(&self, v: usize) -> usize {
        self.legs.iter().filter(|&&w| w == v).count()
            + self.edges.iter().flatten().filter(|&&w| w == v).count()
    }

    /// Zero-based markings at `v`, increasing.
    pub fn legs_at(&self, v: usize) -> Vec<usize> {
        (0..self.legs.len()).filter(|&i| self.legs[i] == v).collect()
    }

    /// First Betti number.
    pub fn h1(&self) -> usize {
        self.edges.len() + 1 - self.genera.len()
    }

    pub fn total_genus(&self) -> u32 {
        self.genera.iter().sum::<u32>() + self.h1() as u32
    }

    pub fn is_connected(&self) -> bool {
        let nv = self.genera.len();
        let mut seen = vec![false; nv];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &[a, b] in &self.edges {
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_tree(&self) -> bool {
        self.h1() == 0
    }

    pub fn classify_locus(&self) -> Locus {
        if self.edges.is_empty() {
            Locus::Smooth
        } else if !self.is_tree() {
            Locus::General
        } else if self.genera.contains(&self.total_genus()) {
            Locus::RationalTails
        } else {
            Locus::CompactType
        }
    }

    /// Vertices on the side of `edge` containing its side-`side` endpoint,
    /// once that edge is removed. Only meaningful for separating edges.
    pub fn side_of(&self, edge: usize, side: usize) -> BTreeSet<usize> {
        let start = self.edges[edge][side];
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for (i, &[a, b]) in self.edges.iter().enumerate() {
                if i == edge {
                    continue;
                }
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
        }
        seen
    }

    /// The one-edge graph obtained by contracting every edge but `edge`.
    /// Requires `edge` to be separating.
    pub fn contract_all_but(&self, edge: usize) -> Result<StableGraph> {
        let side = self.side_of(edge, 0);
        if side.contains(&self.edges[edge][1]) {
            return Err(Error::NonSeparatingDivisor);
        }
        let genus = |set: &dyn Fn(usize) -> bool| -> u32 {
            let vs: Vec<usize> = (0..self.num_vertices()).filter(|&v| set(v)).collect();
            let inner = self
                .edges
                .iter()
                .enumerate()
                .filter(|&(i, e)| i != edge && set(e[0]) && set(e[1]))
                .count();
            vs.iter().map(|&v| self.genera[v]).sum::<u32>() + (inner + 1 - vs.len()) as u32
        };
        let in_a = |v: usize| side.contains(&v);
        let in_b = |v: usize| !side.contains(&v);
        let legs = self.legs.iter().map(|v| usize::from(!side.contains(v))).collect();
        Ok(StableGraph::new_unchecked(
            vec![genus(&in_a), genus(&in_b)],
            legs,
            vec![[0, 1]],
        ))
    }

    /// Renames markings: marking `i + 1` becomes `perm[i] + 1`.
    pub fn permute_markings(&self, perm: &[usize]) -> StableGraph {
        let mut legs = vec![0; self.legs.len()];
        for (i, &v) in self.legs.iter().enumerate() {
            legs[perm[i]] = v;
        }
        StableGraph::new_unchecked(self.genera.clone(), legs, self.edges.clone())
    }

    pub fn undecorated(&self) -> DecoratedGraph {
        DecoratedGraph {
            hpsi: vec![[0, 0]; self.edges.len()],
            lpsi: vec![0; self.legs.len()],
            graph: self.clone(),
        }
    }
}

impl fmt::Display for StableGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for v in 0..self.num_vertices() {
            if v > 0 {
                write!(f, " ")?;
            }
            write!(f, "g{}", self.genera[v])?;
            let legs = self.legs_at(v);
            if !legs.is_empty() {
                let legs: Vec<String> = legs.iter().map(|i| (i + 1).to_string()).collect();
                write!(f, "({})", legs.join(","))?;
            }
        }
        write!(f, ";")?;
        for &[a, b] in &self.edges {
            write!(f, " {a}-{b}")?;
        }
        write!(f, "]")
    }
}

/// A stable graph with ψ-exponents on every half-edge and leg.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DecoratedGraph {
    graph: StableGraph,
    hpsi: Vec<[u32; 2]>,
    lpsi: Vec<u32>,
}

impl DecoratedGraph {
    pub fn new(graph: StableGraph, hpsi: Vec<[u32; 2]>, lpsi: Vec<u32>) -> Result<Self> {
        if hpsi.len() != graph.num_edges() || lpsi.len() != graph.num_legs() {
            return Err(Error::InvalidGraph(
                "ψ-exponents must cover every edge and leg".into(),
            ));
        }
        Ok(DecoratedGraph { graph, hpsi, lpsi })
    }

    pub(crate) fn new_unchecked(graph: StableGraph, hpsi: Vec<[u32; 2]>, lpsi: Vec<u32>) -> Self {
        DecoratedGraph { graph, hpsi, lpsi }
    }

    pub fn graph(&self) -> &StableGraph {
        &self.graph
    }

    pub fn hpsi(&self) -> &[[u32; 2]] {
        &self.hpsi
    }

    pub fn lpsi(&self) -> &[u32] {
        &self.lpsi
    }

    /// Codimension: one per edge plus every ψ-exponent.
    pub fn degree(&self) -> u32 {
        self.graph.num_edges() as u32
            + self.hpsi.iter().flatten().sum::<u32>()
            + self.lpsi.iter().sum::<u32>()
    }

    pub fn permute_markings(&self, perm: &[usize]) -> DecoratedGraph {
        let mut lpsi = vec![0; self.lpsi.len()];
        for (i, &p) in self.lpsi.iter().enumerate() {
            lpsi[perm[i]] = p;
        }
        DecoratedGraph {
            graph: self.graph.permute_markings(perm),
            hpsi: self.hpsi.clone(),
            lpsi,
        }
    }

    /// Applies a vertex relabeling, an edge reordering and half-edge flips.
    /// The result is isomorphic to `self`.
    pub fn relabel(&self, vertex_perm: &[usize], edge_order: &[usize], flips: &[bool]) -> Self {
        let g = &self.graph;
        let mut genera = vec![0; g.num_vertices()];
        for (v, &gv) in g.genera.iter().enumerate() {
            genera[vertex_perm[v]] = gv;
        }
        let legs = g.legs.iter().map(|&v| vertex_perm[v]).collect();
        let mut edges = Vec::with_capacity(g.num_edges());
        let mut hpsi = Vec::with_capacity(g.num_edges());
        for (k, &e) in edge_order.iter().enumerate() {
            let [a, b] = g.edges[e];
            let [pa, pb] = self.hpsi[e];
            if flips[k] {
                edges.push([vertex_perm[b], vertex_perm[a]]);
                hpsi.push([pb, pa]);
            } else {
                edges.push([vertex_perm[a], vertex_perm[b]]);
                hpsi.push([pa, pb]);
            }
        }
        DecoratedGraph {
            graph: StableGraph::new_unchecked(genera, legs, edges),
            hpsi,
            lpsi: self.lpsi.clone(),
        }
    }
}

impl fmt::Display for DecoratedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.graph)?;
        let mut parts = Vec::new();
        for (i, &p) in self.lpsi.iter().enumerate() {
            match p {
                0 => {}
                1 => parts.push(format!("ψ{}", i + 1)),
                p => parts.push(format!("ψ{}^{p}", i + 1)),
            }
        }
        for (e, &[p0, p1]) in self.hpsi.iter().enumerate() {
            for (side, p) in [("'", p0), ("''", p1)] {
                match p {
                    0 => {}
                    1 => parts.push(format!("ψ{side}e{e}")),
                    p => parts.push(format!("ψ{side}e{e}^{p}")),
                }
            }
        }
        if !parts.is_empty() {
            write!(f, " {}", parts.join(" "))?;
        }
        Ok(())
    }
}
