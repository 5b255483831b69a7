//! Diagonal Givental R-matrix action on the fusion TQFT and the Verlinde
//! Chern character built from it, plus the closed forms it is checked
//! against.
//!
//! Cohomological degree is tracked directly: the formal parameter that
//! counts degree is set to one, and the degree-`d` part of a class is the
//! coefficient of its `d`-th power.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fusion::{FusionDatum, Label, RankTable};
use crate::graphs::{automorphism_order, check_stable_type, two_loop_graphs, DecoratedGraph, Locus, LoopParity, StableGraph};
use crate::graphs::enumerate_stable_graphs;
use crate::rational::{factorial, int, pow, rat, Rational};
use crate::series::{symplectic_quotient, Series};
use crate::tautology::{exp_of_divisor_combination, DivisorSymbol, ProductContext, TautClass};

/// Coefficients `c_k = -w^{k+1}/(k+1)!` of `(ψ' + ψ'')^k` in
/// `(1 - exp(w(ψ' + ψ'')))/(ψ' + ψ'')`, for `k = 0..=degree`.
pub fn edge_factor_series(w: &Rational, degree: usize) -> Vec<Rational> {
    (0..=degree as u32)
        .map(|k| -(pow(w, k + 1) / factorial(k + 1)))
        .collect()
}

/// A diagonal R-matrix: one series with constant term 1 per label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalRMatrix {
    entries: Vec<Series>,
}

impl DiagonalRMatrix {
    pub fn new(entries: Vec<Series>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Precondition("R-matrix needs at least one entry".into()));
        }
        if entries.iter().any(|s| !s.coeff(0).is_one()) {
            return Err(Error::Precondition("R-matrix entries must have constant term 1".into()));
        }
        let degree = entries.iter().map(Series::degree).min().unwrap_or(0);
        Ok(DiagonalRMatrix {
            entries: entries.into_iter().map(|s| s.truncate(degree)).collect(),
        })
    }

    pub fn identity(size: usize, degree: usize) -> Self {
        DiagonalRMatrix {
            entries: vec![Series::one(degree); size],
        }
    }

    pub fn entry(&self, mu: Label) -> &Series {
        &self.entries[mu.index()]
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn degree(&self) -> usize {
        self.entries[0].degree()
    }
}

/// `W(z)_μ^μ = exp(z·w(μ))` through `degree`.
pub fn verlinde_w_matrix(datum: &FusionDatum, degree: usize) -> DiagonalRMatrix {
    DiagonalRMatrix {
        entries: datum
            .labels()
            .map(|mu| Series::exp_linear(datum.weight(mu), degree))
            .collect(),
    }
}

/// `R_μ(z) · R_{μ*}(-z) = 1` through `degree` for every label.
pub fn symplectic_check(datum: &FusionDatum, r: &DiagonalRMatrix, degree: usize) -> bool {
    first_symplectic_failure(datum, r, degree).is_none()
}

fn first_symplectic_failure(datum: &FusionDatum, r: &DiagonalRMatrix, degree: usize) -> Option<Label> {
    if r.size() != datum.size() || r.degree() < degree {
        return Some(datum.unit());
    }
    datum.labels().find(|&mu| {
        let a = r.entry(mu).truncate(degree);
        let b = r.entry(datum.dual(mu)).truncate(degree).reflect();
        !(&a * &b).is_one()
    })
}

/// Bivariate edge factor for label `μ` on side 0: `q[i][j]` multiplies `ψ'^i ψ''^j`.
type EdgeFactor = Vec<Vec<Rational>>;

struct Evaluator<'a> {
    ranks: RankTable<'a>,
    legs: Vec<Label>,
    leg_series: Vec<Series>,
    edge_factors: Vec<Option<EdgeFactor>>,
    degree: u32,
}

impl<'a> Evaluator<'a> {
    fn graph_contribution(&self, graph: &StableGraph, g: u32) -> TautClass {
        let n = self.legs.len();
        let mut out = TautClass::from_parts(g, n, self.degree, BTreeMap::new());
        let edges = graph.num_edges();
        if edges as u32 > self.degree {
            return out;
        }
        let budget = self.degree - edges as u32;
        let datum = self.ranks.datum();
        let live: Vec<Label> = datum
            .labels()
            .filter(|mu| self.edge_factors[mu.index()].is_some())
            .collect();
        let aut = automorphism_order(graph);
        let mut monomials: HashMap<(Vec<u32>, Vec<[u32; 2]>), Rational> = HashMap::new();

        let mut assignment = Vec::with_capacity(edges);
        self.assign(graph, &live, &mut assignment, budget, &mut monomials);

        let scale = Rational::one() / int(aut as i64);
        for ((lpsi, hpsi), q) in monomials {
            let d = DecoratedGraph::new_unchecked(graph.clone(), hpsi, lpsi);
            out.insert_canonical(0, d.canonical(), q * &scale);
        }
        out
    }

    fn assign(
        &self,
        graph: &StableGraph,
        live: &[Label],
        assignment: &mut Vec<Label>,
        budget: u32,
        monomials: &mut HashMap<(Vec<u32>, Vec<[u32; 2]>), Rational>,
    ) {
        if assignment.len() < graph.num_edges() {
            for &mu in live {
                assignment.push(mu);
                self.assign(graph, live, assignment, budget, monomials);
                assignment.pop();
            }
            return;
        }
        let datum = self.ranks.datum();
        let mut vertex_product: u64 = 1;
        for v in 0..graph.num_vertices() {
            let mut local: Vec<Label> = graph.legs_at(v).into_iter().map(|i| self.legs[i]).collect();
            for (e, &[a, b]) in graph.edges().iter().enumerate() {
                if a == v {
                    local.push(assignment[e]);
                }
                if b == v {
                    local.push(datum.dual(assignment[e]));
                }
            }
            vertex_product *= self.ranks.rank(graph.genera()[v], &local);
            if vertex_product == 0 {
                return;
            }
        }
        let factors: Vec<&EdgeFactor> = assignment
            .iter()
            .map(|mu| self.edge_factors[mu.index()].as_ref().expect("live label"))
            .collect();
        let mut lpsi = Vec::with_capacity(self.legs.len());
        let mut hpsi = Vec::with_capacity(factors.len());
        self.expand(&factors, &mut lpsi, &mut hpsi, budget, int(vertex_product as i64), monomials);
    }

    /// Distributes the leg series and edge factors into ψ-monomials of total
    /// degree at most `budget`.
    fn expand(
        &self,
        factors: &[&EdgeFactor],
        lpsi: &mut Vec<u32>,
        hpsi: &mut Vec<[u32; 2]>,
        budget: u32,
        q: Rational,
        monomials: &mut HashMap<(Vec<u32>, Vec<[u32; 2]>), Rational>,
    ) {
        if q.is_zero() {
            return;
        }
        if lpsi.len() < self.legs.len() {
            let series = &self.leg_series[lpsi.len()];
            for k in 0..=budget {
                let c = series.coeff(k as usize);
                if c.is_zero() {
                    continue;
                }
                lpsi.push(k);
                self.expand(factors, lpsi, hpsi, budget - k, &q * c, monomials);
                lpsi.pop();
            }
            return;
        }
        if hpsi.len() < factors.len() {
            let f = factors[hpsi.len()];
            for i in 0..=budget {
                for j in 0..=budget - i {
                    let c = &f[i as usize][j as usize];
                    if c.is_zero() {
                        continue;
                    }
                    hpsi.push([i, j]);
                    self.expand(factors, lpsi, hpsi, budget - i - j, &q * c, monomials);
                    hpsi.pop();
                }
            }
            return;
        }
        *monomials
            .entry((lpsi.clone(), hpsi.clone()))
            .or_insert_with(Rational::zero) += q;
    }
}

/// The R-matrix action on the rank TQFT of `datum`, as a graph sum through
/// degree `degree`, with `1/|Aut Γ|` folded into the coefficients.
pub fn rmatrix_action(
    datum: &FusionDatum,
    r: &DiagonalRMatrix,
    g: u32,
    labels: &[Label],
    degree: u32,
) -> Result<TautClass> {
    let n = labels.len();
    check_stable_type(g, n)?;
    datum.check_labels(labels)?;
    if r.size() != datum.size() {
        return Err(Error::Precondition(format!(
            "R-matrix has {} entries for {} labels",
            r.size(),
            datum.size()
        )));
    }
    let d = degree as usize;
    if r.degree() < d {
        return Err(Error::Precondition(format!(
            "R-matrix known through degree {}, need {d}",
            r.degree()
        )));
    }
    if let Some(mu) = first_symplectic_failure(datum, r, d) {
        return Err(Error::NonSymplectic(datum.name(mu).to_string()));
    }

    let edge_factors = datum
        .labels()
        .map(|mu| {
            if d == 0 {
                return None;
            }
            let q = symplectic_quotient(r.entry(mu), r.entry(datum.dual(mu)), d - 1)
                .expect("symplectic entries give a polynomial edge factor");
            q.iter().flatten().any(|c| !c.is_zero()).then_some(q)
        })
        .collect();
    let eval = Evaluator {
        ranks: RankTable::new(datum),
        legs: labels.to_vec(),
        leg_series: labels.iter().map(|&mu| r.entry(mu).clone()).collect(),
        edge_factors,
        degree,
    };
    let graphs = enumerate_stable_graphs(g, n, d)?;
    let parts: Vec<TautClass> = graphs
        .par_iter()
        .map(|graph| eval.graph_contribution(graph, g))
        .collect();
    let mut total = TautClass::zero(g, n, degree)?;
    for part in parts {
        total.absorb(part);
    }
    Ok(total)
}

/// Total Chern character of the Verlinde bundle through degree `degree`:
/// the W-matrix action times `exp(-c/2 · λ₁)`, with λ₁ kept free.
pub fn verlinde_chern_character(
    datum: &FusionDatum,
    g: u32,
    labels: &[Label],
    degree: u32,
) -> Result<TautClass> {
    let w = verlinde_w_matrix(datum, degree as usize);
    let sum = rmatrix_action(datum, &w, g, labels, degree)?;
    let prefactor = Series::exp_linear(&datum.anomaly_prefactor_exponent(), degree as usize);
    Ok(sum.mul_lambda_series(&prefactor))
}

/// `rank · exp(-c/2 · λ₁ + Σ w(μ_i) ψ_i)` through `degree`: the Chern
/// character of a projectively flat bundle with the Verlinde slope.
pub fn smooth_slope_class(datum: &FusionDatum, g: u32, labels: &[Label], degree: u32) -> Result<TautClass> {
    let rank = datum.rank(g, labels);
    let psi: Vec<Rational> = labels.iter().map(|&mu| datum.weight(mu).clone()).collect();
    let exp = exp_of_divisor_combination(
        g,
        labels.len(),
        &datum.anomaly_prefactor_exponent(),
        &psi,
        &BTreeMap::new(),
        degree,
        ProductContext::Checked,
    )?;
    Ok(exp.scale(&int(rank as i64)))
}

/// Whether the smooth-locus part of the character matches the slope formula.
pub fn slope_restriction_check(datum: &FusionDatum, g: u32, labels: &[Label], degree: u32) -> Result<bool> {
    check_stable_type(g, labels.len())?;
    datum.check_labels(labels)?;
    if datum.rank(g, labels) == 0 {
        return Err(Error::ZeroRank);
    }
    let lhs = verlinde_chern_character(datum, g, labels, degree)?.restrict(Locus::Smooth);
    let rhs = smooth_slope_class(datum, g, labels, degree)?;
    Ok(lhs == rhs)
}

/// Labels on side 0 of each edge, with the weight of each edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeWeightAssignment {
    pub labels: Vec<Label>,
    pub weights: Vec<Rational>,
}

fn slr_weight(r: u32, i: u32) -> Rational {
    rat(i as i64 * (r - i) as i64, 2 * r as i64)
}

/// The unique assignment of remainders mod `r` to the half-edges of a tree
/// such that the two halves of each edge sum to zero and the half-edges and
/// legs at every vertex sum to zero.
///
/// The side-0 remainder of an edge is minus the sum of the leg labels on its
/// side of the tree.
pub fn slr_tree_remainders(r: u32, tree: &StableGraph, labels: &[Label]) -> Result<EdgeWeightAssignment> {
    if !tree.is_tree() {
        return Err(Error::NotATree);
    }
    if labels.len() != tree.num_legs() {
        return Err(Error::LabelCount {
            expected: tree.num_legs(),
            got: labels.len(),
        });
    }
    let sum: u64 = labels.iter().map(|l| l.0 as u64).sum();
    if !sum.is_multiple_of(r as u64) {
        return Err(Error::LabelSumNotDivisible { sum, r });
    }
    let mut out = EdgeWeightAssignment {
        labels: Vec::new(),
        weights: Vec::new(),
    };
    for e in 0..tree.num_edges() {
        let side = tree.side_of(e, 0);
        let legs: u64 = (0..labels.len())
            .filter(|&i| side.contains(&tree.legs()[i]))
            .map(|i| labels[i].0 as u64)
            .sum();
        let m = ((r as u64 - legs % r as u64) % r as u64) as u32;
        out.labels.push(Label(m));
        out.weights.push(slr_weight(r, m));
    }
    Ok(out)
}

/// `r^g exp(-(r-1)/2 λ₁ + Σ w_{μ_i} ψ_i - Σ_e w_e δ_e)` on compact type,
/// through `degree`.
pub fn compact_type_closed_form(r: u32, g: u32, labels: &[Label], degree: u32) -> Result<TautClass> {
    let n = labels.len();
    check_stable_type(g, n)?;
    let datum = FusionDatum::slr_level1(r);
    datum.check_labels(labels)?;
    let sum: u64 = labels.iter().map(|l| l.0 as u64).sum();
    if !sum.is_multiple_of(r as u64) {
        return Err(Error::LabelSumNotDivisible { sum, r });
    }
    let mut divisors = BTreeMap::new();
    for delta in DivisorSymbol::all(g, n)? {
        let w = slr_tree_remainders(r, delta.graph(), labels)?.weights.remove(0);
        divisors.insert(delta, -w);
    }
    let psi: Vec<Rational> = labels.iter().map(|&mu| datum.weight(mu).clone()).collect();
    let exp = exp_of_divisor_combination(
        g,
        n,
        &datum.anomaly_prefactor_exponent(),
        &psi,
        &divisors,
        degree,
        ProductContext::Checked,
    )?;
    let rg = (0..g).fold(int(1), |acc, _| acc * int(r as i64));
    Ok(exp.scale(&rg).restrict(Locus::CompactType))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoLoopRow {
    pub graph: StableGraph,
    pub parity: LoopParity,
    /// Coefficient of the undecorated 2-loop, λ-power 0.
    pub raw: Rational,
    pub automorphisms: u64,
    /// `raw · |Aut Γ| / ∏_v 2^{g_v}`.
    pub normalized: Rational,
}

/// Degree-two 2-loop coefficients of the sl_2 level-1 character with every
/// marking labeled by the standard representation.
pub fn two_loop_report(g: u32, n: usize, degree: u32) -> Result<Vec<TwoLoopRow>> {
    if g < 2 || !n.is_multiple_of(2) || degree < 2 {
        return Err(Error::Precondition(
            "2-loop report needs g ≥ 2, an even number of markings and degree ≥ 2".into(),
        ));
    }
    let datum = FusionDatum::sl2(1);
    let labels = vec![Label(1); n];
    let ch = verlinde_chern_character(&datum, g, &labels, degree)?;
    Ok(two_loop_graphs(g, n)
        .into_iter()
        .map(|(graph, parity)| {
            let raw = ch.coefficient_of(0, &graph.undecorated());
            let automorphisms = automorphism_order(&graph);
            let ranks: Rational = graph.genera().iter().map(|&gv| pow(&int(2), gv)).product();
            let normalized = &raw * int(automorphisms as i64) / ranks;
            TwoLoopRow {
                graph,
                parity,
                raw,
                automorphisms,
                normalized,
            }
        })
        .collect())
}
