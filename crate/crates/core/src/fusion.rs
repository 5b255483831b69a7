//! Fusion data: the genus-zero three-point ranks of a Verlinde fusion
//! algebra together with the conformal weights and the anomaly.
//!
//! Ranks of conformal blocks in every genus are recovered from the
//! three-point table by the gluing recursion
//!
//! ```text
//! d_g(μ⃗)           = Σ_ν d_{g-1}(μ⃗, ν, ν*)                   (g ≥ 1)
//! d_0(μ1, …, μn)   = Σ_ν d_0(μ1, μ2, ν) · d_0(ν*, μ3, …, μn)   (n ≥ 4)
//! ```
//!
//! with base cases `d_0(μ, ν, ρ) = n3`, `d_0(μ, ν) = δ_{μ,ν*}`,
//! `d_0(μ) = δ_{μ,1}` and `d_0() = 1`. The last three only close the
//! recursion; they are not ranks of bundles on a moduli space.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::RwLock;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, parse_rational, rat, Rational};

/// Index of a label in its [`FusionDatum`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(pub u32);

impl Label {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One label per marking.
pub type LabelVector = Vec<Label>;

/// A based Frobenius algebra with conformal data.
///
/// Immutable once validated; the rank memo lives in [`RankTable`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionDatum {
    names: Vec<String>,
    dual: Vec<Label>,
    unit: Label,
    /// Indexed by the sorted triple of label indices.
    n3: BTreeMap<[u32; 3], u64>,
    weights: Vec<Rational>,
    anomaly: Rational,
}

fn sorted_triple(a: Label, b: Label, c: Label) -> [u32; 3] {
    let mut t = [a.0, b.0, c.0];
    t.sort_unstable();
    t
}

impl FusionDatum {
    /// Builds a datum and checks every axiom.
    ///
    /// `n3` is evaluated on sorted triples only, so the symmetry axiom holds
    /// by construction.
    pub fn new(
        names: Vec<String>,
        dual: Vec<Label>,
        unit: Label,
        n3: impl Fn(Label, Label, Label) -> u64,
        weights: Vec<Rational>,
        anomaly: Rational,
    ) -> Result<Self> {
        let size = names.len() as u32;
        let mut table = BTreeMap::new();
        for a in 0..size {
            for b in a..size {
                for c in b..size {
                    let v = n3(Label(a), Label(b), Label(c));
                    if v != 0 {
                        table.insert([a, b, c], v);
                    }
                }
            }
        }
        Self::from_table(names, dual, unit, table, weights, anomaly)
    }

    fn from_table(
        names: Vec<String>,
        dual: Vec<Label>,
        unit: Label,
        n3: BTreeMap<[u32; 3], u64>,
        weights: Vec<Rational>,
        anomaly: Rational,
    ) -> Result<Self> {
        let datum = FusionDatum {
            names,
            dual,
            unit,
            n3,
            weights,
            anomaly,
        };
        datum.validate()?;
        Ok(datum)
    }

    fn validate(&self) -> Result<()> {
        let size = self.names.len();
        let fail = |axiom, detail: String| Err(Error::Invariant { axiom, detail });
        if size == 0 {
            return fail("nonempty label set", "no labels".into());
        }
        if self.dual.len() != size || self.weights.len() != size {
            return fail(
                "label-indexed tables",
                "dual and weights must cover every label".into(),
            );
        }
        if self.unit.index() >= size {
            return fail("unit", "unit is not a label".into());
        }
        let mut seen = std::collections::HashSet::new();
        for name in &self.names {
            if !seen.insert(name) {
                return fail("distinct labels", format!("duplicate label {name:?}"));
            }
        }
        for mu in self.labels() {
            let d = self.dual[mu.index()];
            if d.index() >= size || self.dual[d.index()] != mu {
                return fail(
                    "duality is an involution",
                    format!("dual(dual({})) != {}", self.name(mu), self.name(mu)),
                );
            }
        }
        if self.dual(self.unit) != self.unit {
            return fail("duality fixes the unit", "dual(unit) != unit".into());
        }
        if !self.weight(self.unit).is_zero() {
            return fail(
                "unit weight",
                format!("weight(unit) = {}", format_rational(self.weight(self.unit))),
            );
        }
        for mu in self.labels() {
            if self.weight(mu) != self.weight(self.dual(mu)) {
                return fail(
                    "weight duality",
                    format!("weight({0}) != weight({0}*)", self.name(mu)),
                );
            }
            for nu in self.labels() {
                let expected = u64::from(nu == self.dual(mu));
                let got = self.n3(mu, nu, self.unit);
                if got != expected {
                    return fail(
                        "unit pairing",
                        format!(
                            "n3({}, {}, unit) = {got}, expected {expected}",
                            self.name(mu),
                            self.name(nu)
                        ),
                    );
                }
            }
        }
        // Associativity: the two pants decompositions of the four-holed sphere agree.
        for a in self.labels() {
            for b in self.labels() {
                for c in self.labels() {
                    for d in self.labels() {
                        let s = |x, y, z, w| -> u64 {
                            self.labels()
                                .map(|nu| self.n3(x, y, nu) * self.n3(self.dual(nu), z, w))
                                .sum()
                        };
                        if s(a, b, c, d) != s(a, c, b, d) {
                            return fail(
                                "associativity",
                                format!(
                                    "four-point rank of ({}, {}, {}, {}) depends on the splitting",
                                    self.name(a),
                                    self.name(b),
                                    self.name(c),
                                    self.name(d)
                                ),
                            );
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// sl_2 at level `level`: labels are box counts `0..=level`.
    pub fn sl2(level: u32) -> Self {
        assert!(level >= 1, "level must be positive");
        let l = level as i64;
        let names = (0..=level).map(|a| a.to_string()).collect();
        let dual = (0..=level).map(Label).collect();
        let weights = (0..=l).map(|a| rat(a * (a + 2), 4 * (l + 2))).collect();
        let n3 = move |a: Label, b: Label, c: Label| {
            let (a, b, c) = (a.0 as i64, b.0 as i64, c.0 as i64);
            let ok = (a + b + c) % 2 == 0 && (a - b).abs() <= c && c <= (a + b).min(2 * l - a - b);
            u64::from(ok)
        };
        Self::new(names, dual, Label(0), n3, weights, rat(3 * l, l + 2))
            .expect("sl2 fusion table satisfies the axioms")
    }

    /// sl_r at level one: labels are column lengths `0..r`.
    pub fn slr_level1(r: u32) -> Self {
        assert!(r >= 2, "rank must be at least 2");
        let ri = r as i64;
        let names = (0..r).map(|i| i.to_string()).collect();
        let dual = (0..r).map(|i| Label((r - i) % r)).collect();
        let weights = (0..ri).map(|i| rat(i * (ri - i), 2 * ri)).collect();
        let n3 = move |a: Label, b: Label, c: Label| u64::from((a.0 + b.0 + c.0).is_multiple_of(r));
        Self::new(names, dual, Label(0), n3, weights, int(ri - 1))
            .expect("sl_r level-1 fusion table satisfies the axioms")
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn labels(&self) -> impl Iterator<Item = Label> + Clone + '_ {
        (0..self.names.len() as u32).map(Label)
    }

    pub fn name(&self, mu: Label) -> &str {
        &self.names[mu.index()]
    }

    pub fn label(&self, name: &str) -> Result<Label> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| Label(i as u32))
            .ok_or_else(|| Error::UnknownLabel(name.to_string()))
    }

    pub fn dual(&self, mu: Label) -> Label {
        self.dual[mu.index()]
    }

    pub fn unit(&self) -> Label {
        self.unit
    }

    pub fn n3(&self, a: Label, b: Label, c: Label) -> u64 {
        self.n3.get(&sorted_triple(a, b, c)).copied().unwrap_or(0)
    }

    pub fn weight(&self, mu: Label) -> &Rational {
        &self.weights[mu.index()]
    }

    pub fn anomaly(&self) -> &Rational {
        &self.anomaly
    }

    /// Coefficient of λ₁ in the exponent of the Hodge prefactor: `-c/2`.
    pub fn anomaly_prefactor_exponent(&self) -> Rational {
        -(self.anomaly.clone() / int(2))
    }

    /// `d_g(labels)` with a throwaway memo. Use [`RankTable`] for repeated queries.
    pub fn rank(&self, g: u32, labels: &[Label]) -> u64 {
        RankTable::new(self).rank(g, labels)
    }

    pub fn check_labels(&self, labels: &[Label]) -> Result<()> {
        match labels.iter().find(|l| l.index() >= self.size()) {
            Some(l) => Err(Error::UnknownLabel(l.to_string())),
            None => Ok(()),
        }
    }

    /// Parses the JSON fusion-datum file format and validates the result.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: DatumFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let lookup = |name: &str| -> Result<Label> {
            file.labels
                .iter()
                .position(|n| n == name)
                .map(|i| Label(i as u32))
                .ok_or_else(|| Error::UnknownLabel(name.to_string()))
        };
        let mut dual = Vec::with_capacity(file.labels.len());
        let mut weights = Vec::with_capacity(file.labels.len());
        for name in &file.labels {
            let d = file.dual.get(name).ok_or_else(|| {
                Error::Parse(format!("label {name:?} has no entry in \"dual\""))
            })?;
            dual.push(lookup(d)?);
            let w = file.weights.get(name).ok_or_else(|| {
                Error::Parse(format!("label {name:?} has no entry in \"weights\""))
            })?;
            weights.push(parse_rational(w)?);
        }
        for key in file.dual.keys().chain(file.weights.keys()) {
            lookup(key)?;
        }
        let mut n3 = BTreeMap::new();
        for entry in &file.n3 {
            let key = sorted_triple(lookup(&entry.a)?, lookup(&entry.b)?, lookup(&entry.c)?);
            if let Some(prev) = n3.insert(key, entry.value) {
                if prev != entry.value {
                    return Err(Error::Invariant {
                        axiom: "n3 symmetry",
                        detail: format!(
                            "permutations of ({}, {}, {}) given values {prev} and {}",
                            entry.a, entry.b, entry.c, entry.value
                        ),
                    });
                }
            }
        }
        n3.retain(|_, v| *v != 0);
        Self::from_table(
            file.labels.clone(),
            dual,
            lookup(&file.unit)?,
            n3,
            weights,
            parse_rational(&file.anomaly)?,
        )
    }

    pub fn to_json(&self) -> String {
        let file = DatumFile {
            labels: self.names.clone(),
            dual: self
                .labels()
                .map(|mu| (self.name(mu).to_string(), self.name(self.dual(mu)).to_string()))
                .collect(),
            unit: self.name(self.unit).to_string(),
            n3: self
                .n3
                .iter()
                .map(|(t, v)| N3Entry {
                    a: self.names[t[0] as usize].clone(),
                    b: self.names[t[1] as usize].clone(),
                    c: self.names[t[2] as usize].clone(),
                    value: *v,
                })
                .collect(),
            weights: self
                .labels()
                .map(|mu| (self.name(mu).to_string(), format_rational(self.weight(mu))))
                .collect(),
            anomaly: format_rational(&self.anomaly),
        };
        serde_json::to_string_pretty(&file).expect("datum serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct N3Entry {
    a: String,
    b: String,
    c: String,
    value: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DatumFile {
    labels: Vec<String>,
    dual: BTreeMap<String, String>,
    unit: String,
    #[serde(default)]
    n3: Vec<N3Entry>,
    weights: BTreeMap<String, String>,
    anomaly: String,
}

/// Memoized ranks keyed on `(g, sorted labels)`. Safe to share across threads.
pub struct RankTable<'a> {
    datum: &'a FusionDatum,
    memo: RwLock<HashMap<(u32, Vec<Label>), u64>>,
}

impl<'a> RankTable<'a> {
    pub fn new(datum: &'a FusionDatum) -> Self {
        RankTable {
            datum,
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn datum(&self) -> &'a FusionDatum {
        self.datum
    }

    pub fn rank(&self, g: u32, labels: &[Label]) -> u64 {
        let mut key = labels.to_vec();
        key.sort_unstable();
        self.rank_sorted(g, key)
    }

    fn rank_sorted(&self, g: u32, labels: Vec<Label>) -> u64 {
        let d = self.datum;
        match (g, labels.len()) {
            (0, 0) => return 1,
            (0, 1) => return u64::from(labels[0] == d.unit),
            (0, 2) => return u64::from(labels[1] == d.dual(labels[0])),
            (0, 3) => return d.n3(labels[0], labels[1], labels[2]),
            _ => {}
        }
        let key = (g, labels);
        if let Some(v) = self.memo.read().unwrap().get(&key) {
            return *v;
        }
        let (g, labels) = key;
        let value = if g > 0 {
            d.labels()
                .map(|nu| {
                    let mut next = labels.clone();
                    next.push(nu);
                    next.push(d.dual(nu));
                    self.rank(g - 1, &next)
                })
                .sum()
        } else {
            d.labels()
                .map(|nu| {
                    let left = d.n3(labels[0], labels[1], nu);
                    if left == 0 {
                        return 0;
                    }
                    let mut rest = vec![d.dual(nu)];
                    rest.extend_from_slice(&labels[2..]);
                    left * self.rank(0, &rest)
                })
                .sum()
        };
        self.memo.write().unwrap().insert((g, labels), value);
        value
    }
}
