//! Enumeration of stable graphs by iterated one-edge degeneration.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use super::{check_stable_type, is_stable_type, StableGraph};
use crate::error::Result;

type Cache = Mutex<HashMap<(u32, usize, usize), Arc<Vec<StableGraph>>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// One representative per isomorphism class of stable graphs of type
/// `(g, n)` with at most `max_edges` edges, canonical, ordered by edge
/// count and then by canonical encoding.
pub fn enumerate_stable_graphs(g: u32, n: usize, max_edges: usize) -> Result<Vec<StableGraph>> {
    check_stable_type(g, n)?;
    Ok(enumerate_cached(g, n, max_edges).as_ref().clone())
}

pub(crate) fn enumerate_cached(g: u32, n: usize, max_edges: usize) -> Arc<Vec<StableGraph>> {
    let key = (g, n, max_edges);
    if let Some(hit) = cache().lock().unwrap().get(&key) {
        return hit.clone();
    }
    let mut all = Vec::new();
    let mut level: BTreeSet<StableGraph> = BTreeSet::from([StableGraph::trivial(g, n)]);
    for _ in 0..=max_edges {
        if level.is_empty() {
            break;
        }
        all.extend(level.iter().cloned());
        let mut next = BTreeSet::new();
        for graph in &level {
            for child in degenerations(graph) {
                next.insert(child.canonical());
            }
        }
        level = next;
    }
    let all = Arc::new(all);
    cache().lock().unwrap().insert(key, all.clone());
    all
}

/// All graphs with one more edge that contract back to `graph`.
fn degenerations(graph: &StableGraph) -> Vec<StableGraph> {
    let mut out = Vec::new();
    let nv = graph.num_vertices();
    for v in 0..nv {
        let gv = graph.genera[v];
        if gv > 0 {
            let mut genera = graph.genera.clone();
            genera[v] -= 1;
            let mut edges = graph.edges.clone();
            edges.push([v, v]);
            out.push(StableGraph::new_unchecked(genera, graph.legs.clone(), edges));
        }

        // Split v into v and a new vertex w = nv, redistributing legs and half-edges.
        let legs: Vec<usize> = graph.legs_at(v);
        let halves: Vec<(usize, usize)> = (0..graph.num_edges())
            .flat_map(|e| [(e, 0), (e, 1)])
            .filter(|&(e, s)| graph.edges[e][s] == v)
            .collect();
        let items = legs.len() + halves.len();
        for mask in 0u64..(1 << items) {
            let moved = |k: usize| mask & (1 << k) != 0;
            let count_w = mask.count_ones() as usize;
            let count_v = items - count_w;
            for g_w in 0..=gv {
                let g_v = gv - g_w;
                if !is_stable_type(g_v, count_v + 1) || !is_stable_type(g_w, count_w + 1) {
                    continue;
                }
                let mut genera = graph.genera.clone();
                genera[v] = g_v;
                genera.push(g_w);
                let mut new_legs = graph.legs.clone();
                for (k, &i) in legs.iter().enumerate() {
                    if moved(k) {
                        new_legs[i] = nv;
                    }
                }
                let mut edges = graph.edges.clone();
                for (k, &(e, s)) in halves.iter().enumerate() {
                    if moved(legs.len() + k) {
                        edges[e][s] = nv;
                    }
                }
                edges.push([v, nv]);
                out.push(StableGraph::new_unchecked(genera, new_legs, edges));
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LoopParity {
    Even,
    Odd,
}

/// Graphs with exactly two vertices joined by exactly two edges, tagged
/// even when both vertices carry an even number of legs.
///
/// Unstable types have no stable graphs at all, so they yield an empty list.
pub fn two_loop_graphs(g: u32, n: usize) -> Vec<(StableGraph, LoopParity)> {
    if !is_stable_type(g, n) {
        return Vec::new();
    }
    enumerate_cached(g, n, 2)
        .iter()
        .filter(|gr| gr.num_vertices() == 2 && gr.num_edges() == 2 && gr.edges.iter().all(|e| e[0] != e[1]))
        .map(|gr| {
            let even = (0..2).all(|v| gr.legs_at(v).len() % 2 == 0);
            let parity = if even { LoopParity::Even } else { LoopParity::Odd };
            (gr.clone(), parity)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::automorphism_order;

    fn count(g: u32, n: usize, e: usize) -> usize {
        enumerate_stable_graphs(g, n, e).unwrap().len()
    }

    #[test]
    fn small_counts() {
        assert_eq!(count(0, 3, 5), 1);
        assert_eq!(count(1, 1, 1), 2);
        assert_eq!(count(0, 4, 1), 4);
        assert_eq!(count(2, 0, 1), 3);
        assert_eq!(count(0, 3, 2), 1);
    }

    #[test]
    fn unstable_rejected() {
        assert!(enumerate_stable_graphs(0, 2, 1).is_err());
        assert!(enumerate_stable_graphs(1, 0, 1).is_err());
    }

    #[test]
    fn one_one_auts() {
        let auts: Vec<u64> = enumerate_stable_graphs(1, 1, 1)
            .unwrap()
            .iter()
            .map(automorphism_order)
            .collect();
        assert_eq!(auts, vec![1, 2]);
    }

    #[test]
    fn every_graph_is_valid() {
        for graph in enumerate_stable_graphs(2, 2, 3).unwrap() {
            graph.validate().unwrap();
            assert_eq!(graph.total_genus(), 2);
            assert_eq!(graph.num_legs(), 2);
            assert_eq!(graph.canonical(), graph);
        }
    }

    #[test]
    fn two_loops_of_3_2() {
        let loops = two_loop_graphs(3, 2);
        let even = loops.iter().filter(|(_, p)| *p == LoopParity::Even).count();
        let odd = loops.iter().filter(|(_, p)| *p == LoopParity::Odd).count();
        assert_eq!((even, odd), (2, 3));
        assert!(two_loop_graphs(1, 0).is_empty());
        assert!(two_loop_graphs(1, 1).is_empty());
    }
}
