//! Canonical forms and automorphism counts by exhaustive search over
//! vertex orderings, pruned by color refinement.
//!
//! For a vertex ordering the graph is encoded as (genera in order, leg
//! positions, sorted list of oriented edge records). Edge order and
//! half-edge orientation are quotiented out by the sorting, so only vertex
//! orderings need to be searched. The smallest encoding wins.

use std::collections::BTreeMap;

use super::{DecoratedGraph, StableGraph};

/// `(vertex, vertex, ψ, ψ)`, oriented so the record is minimal.
type EdgeRecord = (usize, usize, u32, u32);

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Encoding {
    genera: Vec<u32>,
    legs: Vec<usize>,
    edges: Vec<EdgeRecord>,
}

fn orient(a: usize, b: usize, pa: u32, pb: u32) -> EdgeRecord {
    (a, b, pa, pb).min((b, a, pb, pa))
}

fn encode(d: &DecoratedGraph, position: &[usize]) -> Encoding {
    let g = &d.graph;
    let mut genera = vec![0; g.num_vertices()];
    for (v, &p) in position.iter().enumerate() {
        genera[p] = g.genera[v];
    }
    let legs = g.legs.iter().map(|&v| position[v]).collect();
    let mut edges: Vec<EdgeRecord> = g
        .edges
        .iter()
        .zip(&d.hpsi)
        .map(|(&[a, b], &[pa, pb])| orient(position[a], position[b], pa, pb))
        .collect();
    edges.sort_unstable();
    Encoding { genera, legs, edges }
}

fn rank_colors<T: Ord + Clone>(keys: &[T]) -> Vec<usize> {
    let mut distinct: Vec<T> = keys.to_vec();
    distinct.sort();
    distinct.dedup();
    keys.iter()
        .map(|k| distinct.binary_search(k).expect("key present"))
        .collect()
}

/// Isomorphism-invariant vertex colors, refined until stable.
fn refined_colors(d: &DecoratedGraph) -> Vec<usize> {
    let g = &d.graph;
    let nv = g.num_vertices();
    let initial: Vec<_> = (0..nv)
        .map(|v| {
            let legs: Vec<(usize, u32)> = g.legs_at(v).into_iter().map(|i| (i, d.lpsi[i])).collect();
            let mut loops: Vec<(u32, u32)> = g
                .edges
                .iter()
                .zip(&d.hpsi)
                .filter(|(e, _)| e[0] == v && e[1] == v)
                .map(|(_, &[p, q])| (p.min(q), p.max(q)))
                .collect();
            loops.sort_unstable();
            (g.genera[v], legs, g.valence(v), loops)
        })
        .collect();
    let mut colors = rank_colors(&initial);
    loop {
        let classes = colors.iter().max().map_or(0, |m| m + 1);
        let next: Vec<_> = (0..nv)
            .map(|v| {
                let mut nbrs: Vec<(usize, u32, u32)> = Vec::new();
                for (&[a, b], &[pa, pb]) in g.edges.iter().zip(&d.hpsi) {
                    if a == b {
                        continue;
                    }
                    if a == v {
                        nbrs.push((colors[b], pa, pb));
                    }
                    if b == v {
                        nbrs.push((colors[a], pb, pa));
                    }
                }
                nbrs.sort_unstable();
                (colors[v], nbrs)
            })
            .collect();
        let refined = rank_colors(&next);
        let refined_classes = refined.iter().max().map_or(0, |m| m + 1);
        colors = refined;
        if refined_classes == classes {
            return colors;
        }
    }
}

struct Search {
    best: Option<(Encoding, Vec<usize>)>,
    hits: u64,
}

fn visit(d: &DecoratedGraph, classes: &[Vec<usize>], order: &mut Vec<usize>, used: &mut [bool], search: &mut Search) {
    let done: usize = classes.iter().map(Vec::len).sum();
    if order.len() == done {
        let mut position = vec![0; order.len()];
        for (p, &v) in order.iter().enumerate() {
            position[v] = p;
        }
        let enc = encode(d, &position);
        match &search.best {
            Some((best, _)) if enc > *best => {}
            Some((best, _)) if enc == *best => search.hits += 1,
            _ => {
                search.best = Some((enc, position));
                search.hits = 1;
            }
        }
        return;
    }
    // Position `order.len()` belongs to the first class not yet exhausted.
    let mut filled = 0;
    let class = classes
        .iter()
        .find(|c| {
            filled += c.len();
            filled > order.len()
        })
        .expect("position within some class");
    for &v in class {
        if used[v] {
            continue;
        }
        used[v] = true;
        order.push(v);
        visit(d, classes, order, used, search);
        order.pop();
        used[v] = false;
    }
}

fn search(d: &DecoratedGraph) -> Search {
    let colors = refined_colors(d);
    let mut by_color: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in colors.iter().enumerate() {
        by_color.entry(c).or_default().push(v);
    }
    let classes: Vec<Vec<usize>> = by_color.into_values().collect();
    let mut s = Search { best: None, hits: 0 };
    let nv = d.graph.num_vertices();
    visit(d, &classes, &mut Vec::with_capacity(nv), &mut vec![false; nv], &mut s);
    s
}

/// Canonical representative of the isomorphism class of `d`.
///
/// Isomorphisms fix markings and may permute vertices, edges and the two
/// half-edges of an edge, carrying ψ-exponents along.
pub fn canonical_form(d: &DecoratedGraph) -> DecoratedGraph {
    let (enc, _) = search(d).best.expect("graph has a vertex");
    let (edges, hpsi) = enc.edges.iter().map(|&(a, b, pa, pb)| ([a, b], [pa, pb])).unzip();
    DecoratedGraph {
        graph: StableGraph::new_unchecked(enc.genera, enc.legs, edges),
        hpsi,
        lpsi: d.lpsi.clone(),
    }
}

impl StableGraph {
    pub fn canonical(&self) -> StableGraph {
        canonical_form(&self.undecorated()).graph
    }
}

impl DecoratedGraph {
    pub fn canonical(&self) -> DecoratedGraph {
        canonical_form(self)
    }
}

fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

/// Order of the automorphism group of a decorated graph: vertex
/// permutations found by the canonical search, times the permutations of
/// interchangeable parallel edges, times half-edge swaps of symmetric loops.
pub fn decorated_automorphism_order(d: &DecoratedGraph) -> u64 {
    let s = search(d);
    let (enc, _) = s.best.expect("graph has a vertex");
    let mut groups: BTreeMap<EdgeRecord, usize> = BTreeMap::new();
    for &rec in &enc.edges {
        *groups.entry(rec).or_default() += 1;
    }
    let mut order = s.hits;
    for (&(a, b, pa, pb), &k) in &groups {
        order *= factorial(k);
        if a == b && pa == pb {
            order *= 1 << k;
        }
    }
    order
}

/// `|Aut(Γ)|`: automorphisms fixing every leg, acting on vertices, edges and
/// half-edges.
pub fn automorphism_order(graph: &StableGraph) -> u64 {
    decorated_automorphism_order(&graph.undecorated())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(genera: &[u32], legs: &[usize], edges: &[[usize; 2]]) -> StableGraph {
        StableGraph::new(genera.to_vec(), legs.to_vec(), edges.to_vec()).unwrap()
    }

    #[test]
    fn automorphism_examples() {
        assert_eq!(automorphism_order(&StableGraph::trivial(2, 2)), 1);
        assert_eq!(automorphism_order(&graph(&[0], &[0], &[[0, 0]])), 2);
        assert_eq!(automorphism_order(&graph(&[1, 1], &[], &[[0, 1]])), 2);
        assert_eq!(automorphism_order(&graph(&[1, 1], &[], &[[0, 1], [0, 1]])), 4);
        // genus-0 vertex with two self-loops, no legs: (2·2)·2! = 8
        assert_eq!(automorphism_order(&graph(&[0], &[], &[[0, 0], [0, 0]])), 8);
    }

    #[test]
    fn trivial_graph_is_canonical() {
        let d = StableGraph::trivial(1, 3).undecorated();
        assert_eq!(canonical_form(&d), d);
    }

    #[test]
    fn two_loop_edge_order_is_irrelevant() {
        let g = graph(&[1, 0], &[1, 1], &[[0, 1], [1, 0]]);
        let d1 = DecoratedGraph::new(g.clone(), vec![[1, 0], [0, 2]], vec![0, 0]).unwrap();
        let d2 = d1.relabel(&[0, 1], &[1, 0], &[false, false]);
        assert_ne!(d1, d2);
        assert_eq!(canonical_form(&d1), canonical_form(&d2));
    }

    #[test]
    fn decorations_break_symmetry() {
        let g = graph(&[0], &[0], &[[0, 0]]);
        let d = DecoratedGraph::new(g.clone(), vec![[1, 0]], vec![0]).unwrap();
        assert_eq!(decorated_automorphism_order(&d), 1);
        let flipped = DecoratedGraph::new(g, vec![[0, 1]], vec![0]).unwrap();
        assert_eq!(canonical_form(&d), canonical_form(&flipped));
    }
}
