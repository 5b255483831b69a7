//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use verlinde::prelude::*;

/// Ranks from fusion matrices: `d_g(μ⃗) = (N_{μ1} ⋯ N_{μn} H^g)[0][0]`
/// with `N_μ[a][b] = n3(μ, a, b*)` and handle `H = Σ_ν N_ν N_{ν*}`.
pub fn matrix_rank(datum: &FusionDatum, g: u32, labels: &[Label]) -> u64 {
    let k = datum.size();
    let fusion = |mu: Label| -> Vec<Vec<u64>> {
        (0..k)
            .map(|a| (0..k).map(|b| datum.n3(mu, Label(a as u32), datum.dual(Label(b as u32)))).collect())
            .collect()
    };
    let mul = |x: &Vec<Vec<u64>>, y: &Vec<Vec<u64>>| -> Vec<Vec<u64>> {
        (0..k)
            .map(|i| (0..k).map(|j| (0..k).map(|l| x[i][l] * y[l][j]).sum()).collect())
            .collect()
    };
    let identity: Vec<Vec<u64>> = (0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect();
    let mut handle = vec![vec![0; k]; k];
    for nu in datum.labels() {
        let p = mul(&fusion(nu), &fusion(datum.dual(nu)));
        for i in 0..k {
            for j in 0..k {
                handle[i][j] += p[i][j];
            }
        }
    }
    let mut m = identity;
    for &mu in labels {
        m = mul(&m, &fusion(mu));
    }
    for _ in 0..g {
        m = mul(&m, &handle);
    }
    let u = datum.unit().index();
    m[u][u]
}

/// A graph up to isomorphism: the lexicographically least relabeling over
/// all vertex permutations.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OracleKey {
    pub genera: Vec<u32>,
    pub legs: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

fn apply(genera: &[u32], legs: &[usize], edges: &[(usize, usize)], sigma: &[usize]) -> OracleKey {
    let mut g2 = vec![0; genera.len()];
    for (v, &g) in genera.iter().enumerate() {
        g2[sigma[v]] = g;
    }
    let mut e2: Vec<(usize, usize)> = edges
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (sigma[a], sigma[b]);
            (x.min(y), x.max(y))
        })
        .collect();
    e2.sort();
    OracleKey {
        genera: g2,
        legs: legs.iter().map(|&v| sigma[v]).collect(),
        edges: e2,
    }
}

/// Least key over all relabelings, and the automorphism count: vertex
/// permutations fixing the graph, times the ways to permute parallel edges
/// and flip loops.
pub fn oracle_key_and_aut(genera: &[u32], legs: &[usize], edges: &[(usize, usize)]) -> (OracleKey, u64) {
    let v = genera.len();
    let me = apply(genera, legs, edges, &(0..v).collect::<Vec<_>>());
    let mut best: Option<OracleKey> = None;
    let mut fixing = 0u64;
    for sigma in permutations(v) {
        let k = apply(genera, legs, edges, &sigma);
        if k == me {
            fixing += 1;
        }
        if best.as_ref().is_none_or(|b| k < *b) {
            best = Some(k);
        }
    }
    let mut mult: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for &(a, b) in &me.edges {
        *mult.entry((a, b)).or_default() += 1;
    }
    let mut aut = fixing;
    for (&(a, b), &m) in &mult {
        aut *= (1..=m).product::<u64>();
        if a == b {
            aut *= 1 << m;
        }
    }
    (best.unwrap(), aut)
}

pub fn key_of(g: &StableGraph) -> (OracleKey, u64) {
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e[0], e[1])).collect();
    oracle_key_and_aut(g.genera(), g.legs(), &edges)
}

fn multisets(pool: &[(usize, usize)], size: usize, start: usize) -> Vec<Vec<(usize, usize)>> {
    if size == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in start..pool.len() {
        for mut rest in multisets(pool, size - 1, i) {
            rest.insert(0, pool[i]);
            out.push(rest);
        }
    }
    out
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    (0..=total)
        .flat_map(|first| {
            compositions(total - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

fn connected(v: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; v];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &(a, b) in edges {
            for (p, q) in [(a, b), (b, a)] {
                if p == x && !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Every labeled stable graph of type (g, n) with at most `max_edges`
/// edges, quotiented by isomorphism.
pub fn brute_force_graphs(g: u32, n: usize, max_edges: usize) -> BTreeMap<OracleKey, u64> {
    let mut out = BTreeMap::new();
    for e in 0..=max_edges {
        for v in 1..=e + 1 {
            let h1 = e as i64 - v as i64 + 1;
            if h1 > g as i64 {
                continue;
            }
            let pool: Vec<(usize, usize)> = (0..v).flat_map(|a| (a..v).map(move |b| (a, b))).collect();
            for edges in multisets(&pool, e, 0) {
                if !connected(v, &edges) {
                    continue;
                }
                for genera in compositions(g - h1 as u32, v) {
                    let leg_choices = (0..n).fold(vec![vec![]], |acc: Vec<Vec<usize>>, _| {
                        acc.into_iter()
                            .flat_map(|l| (0..v).map(move |x| [l.clone(), vec![x]].concat()))
                            .collect()
                    });
                    for legs in leg_choices {
                        let stable = (0..v).all(|x| {
                            let val = legs.iter().filter(|&&y| y == x).count()
                                + edges.iter().map(|&(a, b)| usize::from(a == x) + usize::from(b == x)).sum::<usize>();
                            2 * genera[x] as usize + val > 2
                        });
                        if stable {
                            let (key, aut) = oracle_key_and_aut(&genera, &legs, &edges);
                            out.insert(key, aut);
                        }
                    }
                }
            }
        }
    }
    out
}

/// The degree-two coefficient of an undecorated graph with two edges and
/// no λ, expanded by hand: each edge contributes the constant term `-w(μ)`
/// of its edge factor, vertices contribute ranks, and the sum over edge
/// labelings is divided by the automorphism count.
pub fn hand_two_edge_coefficient(datum: &FusionDatum, graph: &StableGraph, labels: &[Label]) -> Rational {
    assert_eq!(graph.num_edges(), 2);
    let (_, aut) = key_of(graph);
    let mut total = Rational::zero();
    for m0 in datum.labels() {
        for m1 in datum.labels() {
            let edge_labels = [m0, m1];
            let mut product = num_bigint::BigInt::from(1u32);
            for v in 0..graph.num_vertices() {
                let mut at_v: Vec<Label> = graph.legs_at(v).iter().map(|&i| labels[i]).collect();
                for (e, ends) in graph.edges().iter().enumerate() {
                    if ends[0] == v {
                        at_v.push(edge_labels[e]);
                    }
                    if ends[1] == v {
                        at_v.push(datum.dual(edge_labels[e]));
                    }
                }
                product *= matrix_rank(datum, graph.genera()[v], &at_v);
            }
            let w = datum.weight(m0) * datum.weight(m1);
            total += Rational::from_integer(product) * w;
        }
    }
    total / Rational::from_integer(aut.into())
}

pub fn set_of_keys(graphs: &[StableGraph]) -> BTreeSet<OracleKey> {
    graphs.iter().map(|g| key_of(g).0).collect()
}
