//! Graded linear combinations of decorated stable graphs with a free λ₁
//! symbol, and the two divisor-product shapes needed on compact type:
//! powers of one separating divisor and products of distinct compatible
//! ones.
//!
//! A term `(a, Γ, decoration)` with coefficient `q` stands for
//! `q · λ₁^a · ι_Γ*(ψ-monomial)`. No automorphism factor is implied.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graphs::{check_stable_type, enumerate_stable_graphs, DecoratedGraph, Locus, StableGraph};
use crate::rational::{binomial, factorial, int, pow, Rational};
use crate::series::Series;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TermKey {
    pub lambda: u32,
    pub graph: DecoratedGraph,
}

impl TermKey {
    pub fn degree(&self) -> u32 {
        self.lambda + self.graph.degree()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TautClass {
    g: u32,
    n: usize,
    truncation: u32,
    terms: BTreeMap<TermKey, Rational>,
}

impl TautClass {
    pub fn zero(g: u32, n: usize, truncation: u32) -> Result<Self> {
        check_stable_type(g, n)?;
        Ok(TautClass {
            g,
            n,
            truncation,
            terms: BTreeMap::new(),
        })
    }

    /// The fundamental class: coefficient one on the trivial graph.
    pub fn unit(g: u32, n: usize, truncation: u32) -> Result<Self> {
        let mut c = TautClass::zero(g, n, truncation)?;
        c.insert_canonical(0, StableGraph::trivial(g, n).undecorated(), Rational::one());
        Ok(c)
    }

    pub fn genus(&self) -> u32 {
        self.g
    }

    pub fn num_markings(&self) -> usize {
        self.n
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &Rational)> {
        self.terms.iter()
    }

    /// Terms ordered by degree, then λ-power, then canonical encoding.
    pub fn sorted_terms(&self) -> Vec<(&TermKey, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_key(|(k, _)| k.degree());
        v
    }

    fn check_graph(&self, d: &DecoratedGraph) -> Result<()> {
        let graph = d.graph();
        graph.validate()?;
        if graph.total_genus() != self.g || graph.num_legs() != self.n {
            return Err(Error::AmbientMismatch(
                graph.total_genus(),
                graph.num_legs(),
                self.g,
                self.n,
            ));
        }
        Ok(())
    }

    /// Adds `q · λ₁^lambda · d`, canonicalizing `d`. Terms above the
    /// truncation degree are discarded.
    pub fn insert(&mut self, lambda: u32, d: &DecoratedGraph, q: Rational) -> Result<()> {
        self.check_graph(d)?;
        self.insert_canonical(lambda, d.canonical(), q);
        Ok(())
    }

    pub(crate) fn insert_canonical(&mut self, lambda: u32, graph: DecoratedGraph, q: Rational) {
        let key = TermKey { lambda, graph };
        if q.is_zero() || key.degree() > self.truncation {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(slot) => {
                slot.insert(q);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += q;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// Merges terms of `other` without touching the truncation degree.
    pub(crate) fn absorb(&mut self, other: TautClass) {
        for (k, q) in other.terms {
            self.insert_canonical(k.lambda, k.graph, q);
        }
    }

    fn check_ambient(&self, other: &TautClass) -> Result<()> {
        if (self.g, self.n) != (other.g, other.n) {
            return Err(Error::AmbientMismatch(self.g, self.n, other.g, other.n));
        }
        Ok(())
    }

    pub fn add(&self, other: &TautClass) -> Result<TautClass> {
        self.check_ambient(other)?;
        let truncation = self.truncation.min(other.truncation);
        let mut out = TautClass {
            truncation,
            terms: BTreeMap::new(),
            ..*self
        };
        for (k, q) in self.terms.iter().chain(other.terms.iter()) {
            out.insert_canonical(k.lambda, k.graph.clone(), q.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, q: &Rational) -> TautClass {
        let mut out = TautClass {
            terms: BTreeMap::new(),
            ..*self
        };
        if !q.is_zero() {
            out.terms = self.terms.iter().map(|(k, c)| (k.clone(), c * q)).collect();
        }
        out
    }

    pub fn sub(&self, other: &TautClass) -> Result<TautClass> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn coefficient_of(&self, lambda: u32, d: &DecoratedGraph) -> Rational {
        let key = TermKey {
            lambda,
            graph: d.canonical(),
        };
        self.terms.get(&key).cloned().unwrap_or_else(Rational::zero)
    }

    /// Keeps the terms whose stratum lies in `locus`.
    pub fn restrict(&self, locus: Locus) -> TautClass {
        TautClass {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.graph.graph().classify_locus().within(locus))
                .map(|(k, q)| (k.clone(), q.clone()))
                .collect(),
            ..*self
        }
    }

    /// Only the terms of total degree `d`.
    pub fn degree_part(&self, d: u32) -> TautClass {
        TautClass {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.degree() == d)
                .map(|(k, q)| (k.clone(), q.clone()))
                .collect(),
            ..*self
        }
    }

    /// Multiplies by `Σ_k s_k λ₁^k`.
    pub fn mul_lambda_series(&self, s: &Series) -> TautClass {
        let mut out = TautClass {
            terms: BTreeMap::new(),
            ..*self
        };
        for (k, q) in &self.terms {
            for (p, c) in s.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    out.insert_canonical(k.lambda + p as u32, k.graph.clone(), q * c);
                }
            }
        }
        out
    }

    /// Drops every term with a positive λ₁-power (λ₁ vanishes in genus 0).
    pub fn zero_lambda(&self) -> TautClass {
        TautClass {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.lambda == 0)
                .map(|(k, q)| (k.clone(), q.clone()))
                .collect(),
            ..*self
        }
    }

    /// Renames marking `i + 1` to `perm[i] + 1`.
    pub fn permute_markings(&self, perm: &[usize]) -> TautClass {
        let mut out = TautClass {
            terms: BTreeMap::new(),
            ..*self
        };
        for (k, q) in &self.terms {
            out.insert_canonical(k.lambda, k.graph.permute_markings(perm).canonical(), q.clone());
        }
        out
    }

    pub fn with_truncation(&self, truncation: u32) -> TautClass {
        let mut out = TautClass {
            truncation,
            terms: BTreeMap::new(),
            ..*self
        };
        for (k, q) in &self.terms {
            out.insert_canonical(k.lambda, k.graph.clone(), q.clone());
        }
        out
    }

    pub(crate) fn from_parts(g: u32, n: usize, truncation: u32, terms: BTreeMap<TermKey, Rational>) -> Self {
        TautClass { g, n, truncation, terms }
    }
}

/// The class of a boundary divisor of compact type, named by its one-edge graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DivisorSymbol {
    graph: StableGraph,
}

impl DivisorSymbol {
    pub fn new(graph: &StableGraph) -> Result<Self> {
        graph.validate()?;
        if graph.num_edges() != 1 || graph.num_vertices() != 2 {
            return Err(Error::NonSeparatingDivisor);
        }
        Ok(DivisorSymbol {
            graph: graph.canonical(),
        })
    }

    /// The divisor whose general curve splits off a genus-`genus` component
    /// carrying the zero-based `markings`.
    pub fn separating(g: u32, n: usize, genus: u32, markings: &[usize]) -> Result<Self> {
        if genus > g || markings.iter().any(|&i| i >= n) {
            return Err(Error::NonSeparatingDivisor);
        }
        let legs = (0..n).map(|i| usize::from(!markings.contains(&i))).collect();
        let graph = StableGraph::new(vec![genus, g - genus], legs, vec![[0, 1]])
            .map_err(|_| Error::NonSeparatingDivisor)?;
        DivisorSymbol::new(&graph)
    }

    /// Every separating boundary divisor of type `(g, n)`.
    pub fn all(g: u32, n: usize) -> Result<Vec<DivisorSymbol>> {
        Ok(enumerate_stable_graphs(g, n, 1)?
            .into_iter()
            .filter(|gr| gr.num_edges() == 1 && gr.is_tree())
            .map(|graph| DivisorSymbol { graph })
            .collect())
    }

    pub fn graph(&self) -> &StableGraph {
        &self.graph
    }

    /// `(genus, markings)` of both sides.
    pub fn sides(&self) -> [(u32, Vec<usize>); 2] {
        [0, 1].map(|v| (self.graph.genera()[v], self.graph.legs_at(v)))
    }

    /// Whether `δ^{k+1} = ι_*(-ψ' - ψ'')^k` holds without excess terms:
    /// every side carries a marking or has genus above `g/2`.
    fn check_no_correction(&self) -> Result<()> {
        let g = self.graph.total_genus();
        for (genus, legs) in self.sides() {
            if legs.is_empty() && 2 * genus <= g {
                return Err(Error::CorrectionRequired { genus });
            }
        }
        Ok(())
    }
}

/// Whether callers vouch for the locus where divisor self-intersections
/// carry no excess terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductContext {
    /// Check every divisor and reject those needing corrections.
    Checked,
    /// Rational-tails or compact-type context asserted by the caller.
    Asserted,
}

/// Trees of a fixed type indexed by the set of divisors their edges contract to.
struct TreeIndex {
    trees: HashMap<Vec<DivisorSymbol>, (StableGraph, Vec<DivisorSymbol>)>,
}

impl TreeIndex {
    fn build(g: u32, n: usize, max_edges: usize) -> Result<Self> {
        let mut trees = HashMap::new();
        for tree in enumerate_stable_graphs(g, n, max_edges)? {
            if !tree.is_tree() || tree.num_edges() == 0 {
                continue;
            }
            let per_edge = (0..tree.num_edges())
                .map(|e| DivisorSymbol::new(&tree.contract_all_but(e)?))
                .collect::<Result<Vec<_>>>()?;
            let mut key = per_edge.clone();
            key.sort();
            trees.insert(key, (tree, per_edge));
        }
        Ok(TreeIndex { trees })
    }

    fn lookup(&self, divisors: &[DivisorSymbol]) -> Option<&(StableGraph, Vec<DivisorSymbol>)> {
        let mut key = divisors.to_vec();
        key.sort();
        self.trees.get(&key)
    }
}

fn check_divisor_ambient(d: &DivisorSymbol, g: u32, n: usize) -> Result<()> {
    if d.graph.total_genus() != g || d.graph.num_legs() != n {
        return Err(Error::NonSeparatingDivisor);
    }
    Ok(())
}

/// Adds `q · ι_Γ*(∏_e (-ψ'_e - ψ''_e)^{k_e - 1} · ∏_i ψ_i^{d_i})` to `out`,
/// where `powers[e] = k_e ≥ 1` for every edge of the tree.
fn push_tree_monomial(
    out: &mut TautClass,
    tree: &StableGraph,
    powers: &[u32],
    lambda: u32,
    leg_psi: &[u32],
    q: &Rational,
) {
    fn recurse(
        out: &mut TautClass,
        tree: &StableGraph,
        powers: &[u32],
        lambda: u32,
        leg_psi: &[u32],
        hpsi: &mut Vec<[u32; 2]>,
        q: Rational,
    ) {
        let e = hpsi.len();
        if e == powers.len() {
            let d = DecoratedGraph::new_unchecked(tree.clone(), hpsi.clone(), leg_psi.to_vec());
            out.insert_canonical(lambda, d.canonical(), q);
            return;
        }
        let k = powers[e] - 1;
        let sign = if k.is_multiple_of(2) { int(1) } else { int(-1) };
        for a in 0..=k {
            hpsi.push([a, k - a]);
            recurse(out, tree, powers, lambda, leg_psi, hpsi, &q * &sign * binomial(k, a));
            hpsi.pop();
        }
    }
    recurse(out, tree, powers, lambda, leg_psi, &mut Vec::new(), q.clone());
}

fn merge_factors(factors: &[(DivisorSymbol, u32)]) -> Result<BTreeMap<DivisorSymbol, u32>> {
    let mut merged = BTreeMap::new();
    for (d, k) in factors {
        if *k == 0 {
            return Err(Error::Precondition("divisor exponents must be positive".into()));
        }
        *merged.entry(d.clone()).or_insert(0) += k;
    }
    Ok(merged)
}

/// `∏_j δ_j^{k_j} · ∏_i ψ_i^{d_i}` as a pushforward from the unique tree
/// realizing all the divisors, or the zero class if no tree does.
pub fn divisor_monomial_expand(
    g: u32,
    n: usize,
    factors: &[(DivisorSymbol, u32)],
    leg_psi: &[u32],
    context: ProductContext,
) -> Result<TautClass> {
    check_stable_type(g, n)?;
    if leg_psi.len() != n {
        return Err(Error::LabelCount {
            expected: n,
            got: leg_psi.len(),
        });
    }
    let merged = merge_factors(factors)?;
    for d in merged.keys() {
        check_divisor_ambient(d, g, n)?;
        if context == ProductContext::Checked {
            d.check_no_correction()?;
        }
    }
    let degree = merged.values().sum::<u32>() + leg_psi.iter().sum::<u32>();
    let mut out = TautClass::zero(g, n, degree)?;
    if merged.is_empty() {
        let d = DecoratedGraph::new_unchecked(StableGraph::trivial(g, n), Vec::new(), leg_psi.to_vec());
        out.insert_canonical(0, d, Rational::one());
        return Ok(out);
    }
    let divisors: Vec<DivisorSymbol> = merged.keys().cloned().collect();
    let index = TreeIndex::build(g, n, divisors.len())?;
    if let Some((tree, per_edge)) = index.lookup(&divisors) {
        let powers: Vec<u32> = per_edge.iter().map(|d| merged[d]).collect();
        push_tree_monomial(&mut out, tree, &powers, 0, leg_psi, &Rational::one());
    }
    Ok(out)
}

/// Truncated expansion of
/// `exp(a·λ₁ + Σ_i b_i ψ_i + Σ_δ c_δ δ)` through degree `degree`.
///
/// Divisors with zero coefficient are discarded before any check.
pub fn exp_of_divisor_combination(
    g: u32,
    n: usize,
    lambda_coeff: &Rational,
    psi_coeffs: &[Rational],
    divisor_coeffs: &BTreeMap<DivisorSymbol, Rational>,
    degree: u32,
    context: ProductContext,
) -> Result<TautClass> {
    check_stable_type(g, n)?;
    if psi_coeffs.len() != n {
        return Err(Error::LabelCount {
            expected: n,
            got: psi_coeffs.len(),
        });
    }
    let divisors: Vec<(&DivisorSymbol, &Rational)> =
        divisor_coeffs.iter().filter(|(_, c)| !c.is_zero()).collect();
    for (d, _) in &divisors {
        check_divisor_ambient(d, g, n)?;
        if context == ProductContext::Checked {
            d.check_no_correction()?;
        }
    }
    let index = TreeIndex::build(g, n, (degree as usize).min(divisors.len()))?;

    // ψ/λ part: Σ over (p, d_1..d_n) of a^p/p! ∏ b_i^{d_i}/d_i!, grouped by degree.
    let mut scalar_monomials: Vec<(u32, Vec<u32>, Rational)> = Vec::new();
    {
        fn legs(
            i: usize,
            budget: u32,
            psi: &[Rational],
            cur: &mut Vec<u32>,
            q: Rational,
            out: &mut Vec<(Vec<u32>, Rational)>,
        ) {
            if i == psi.len() {
                out.push((cur.clone(), q));
                return;
            }
            let max = if psi[i].is_zero() { 0 } else { budget };
            for d in 0..=max {
                cur.push(d);
                legs(i + 1, budget - d, psi, cur, &q * pow(&psi[i], d) / factorial(d), out);
                cur.pop();
            }
        }
        let max_lambda = if lambda_coeff.is_zero() { 0 } else { degree };
        for p in 0..=max_lambda {
            let mut leg_terms = Vec::new();
            legs(
                0,
                degree - p,
                psi_coeffs,
                &mut Vec::new(),
                pow(lambda_coeff, p) / factorial(p),
                &mut leg_terms,
            );
            scalar_monomials.extend(leg_terms.into_iter().map(|(d, q)| (p, d, q)));
        }
    }

    let mut out = TautClass::zero(g, n, degree)?;
    let mut exponents = vec![0u32; divisors.len()];
    let mut visit = |exponents: &[u32]| {
        let used: u32 = exponents.iter().sum();
        let support: Vec<DivisorSymbol> = divisors
            .iter()
            .zip(exponents)
            .filter(|(_, &m)| m > 0)
            .map(|((d, _), _)| (*d).clone())
            .collect();
        let mut coeff = Rational::one();
        for ((_, c), &m) in divisors.iter().zip(exponents) {
            coeff *= pow(c, m) / factorial(m);
        }
        let tree = if support.is_empty() {
            Some((StableGraph::trivial(g, n), Vec::new()))
        } else {
            index.lookup(&support).cloned()
        };
        let Some((tree, per_edge)) = tree else { return };
        let by_divisor: BTreeMap<&DivisorSymbol, u32> = divisors
            .iter()
            .zip(exponents)
            .map(|((d, _), &m)| (*d, m))
            .collect();
        let powers: Vec<u32> = per_edge.iter().map(|d| by_divisor[d]).collect();
        for (p, legs, q) in &scalar_monomials {
            if p + legs.iter().sum::<u32>() + used > degree {
                continue;
            }
            push_tree_monomial(&mut out, &tree, &powers, *p, legs, &(&coeff * q));
        }
    };
    fn walk(i: usize, budget: u32, exponents: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
        if i == exponents.len() {
            visit(exponents);
            return;
        }
        for m in 0..=budget {
            exponents[i] = m;
            walk(i + 1, budget - m, exponents, visit);
        }
        exponents[i] = 0;
    }
    walk(0, degree, &mut exponents, &mut visit);
    Ok(out)
}

/// Whether one tree has exactly these divisors as its edge contractions.
pub fn compatible(g: u32, n: usize, divisors: &[DivisorSymbol]) -> Result<bool> {
    let distinct: BTreeSet<_> = divisors.iter().cloned().collect();
    let distinct: Vec<_> = distinct.into_iter().collect();
    if distinct.is_empty() {
        return Ok(true);
    }
    Ok(TreeIndex::build(g, n, distinct.len())?.lookup(&distinct).is_some())
}
