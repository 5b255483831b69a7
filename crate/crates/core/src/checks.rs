//! Verification suites run by `verlinde verify`.
//!
//! Each suite returns one [`Check`] per identity it verifies, with the
//! expected and observed values rendered as text.

use std::fmt;

use crate::cohft::{
    compact_type_closed_form, slope_restriction_check, symplectic_check, two_loop_report,
    verlinde_chern_character, verlinde_w_matrix, DiagonalRMatrix,
};
use crate::error::Result;
use crate::fusion::{FusionDatum, Label};
use crate::graphs::{automorphism_order, enumerate_stable_graphs, is_stable_type, Locus, LoopParity};
use crate::rational::{format_rational, rat};
use crate::series::Series;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub expected: String,
    pub actual: String,
}

impl Check {
    fn new(name: impl Into<String>, expected: impl fmt::Display, actual: impl fmt::Display) -> Self {
        let expected = expected.to_string();
        let actual = actual.to_string();
        Check {
            name: name.into(),
            passed: expected == actual,
            expected,
            actual,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {}: expected {}, got {}", self.name, self.expected, self.actual)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Ranks,
    Slope,
    CompactType,
    TwoLoop,
    Symplectic,
    Graphs,
}

impl std::str::FromStr for Suite {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "ranks" => Suite::Ranks,
            "slope" => Suite::Slope,
            "prop52" => Suite::CompactType,
            "twoloop" => Suite::TwoLoop,
            "symplectic" => Suite::Symplectic,
            "graphs" => Suite::Graphs,
            _ => return Err(crate::Error::Parse(format!("unknown suite {s:?}"))),
        })
    }
}

/// The data shipped with the crate.
pub fn builtin_data() -> Vec<(String, FusionDatum)> {
    let mut out: Vec<(String, FusionDatum)> = (1..=3)
        .map(|l| (format!("sl2 level {l}"), FusionDatum::sl2(l)))
        .collect();
    out.extend((2..=5).map(|r| (format!("sl{r} level 1"), FusionDatum::slr_level1(r))));
    out
}

/// Every label vector of length `n` over `0..size`.
pub fn label_vectors(size: u32, n: usize) -> Vec<Vec<Label>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..size).map(move |l| {
                    let mut w = v.clone();
                    w.push(Label(l));
                    w
                })
            })
            .collect();
    }
    out
}

fn table_check(name: String, cases: impl Iterator<Item = (String, u64, u64)>) -> Check {
    let mut total = 0;
    for (case, expected, actual) in cases {
        total += 1;
        if expected != actual {
            return Check::new(format!("{name} at {case}"), expected, actual);
        }
    }
    Check::new(name, format!("{total} cases agree"), format!("{total} cases agree"))
}

fn show(labels: &[Label]) -> String {
    labels.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")
}

pub fn rank_suite() -> Vec<Check> {
    let mut checks = Vec::new();
    let sl2 = FusionDatum::sl2(1);
    let cases = (0..=4u32).flat_map(|g| (0..=4usize).map(move |n| (g, n)))
        .filter(|&(g, n)| is_stable_type(g, n))
        .flat_map(|(g, n)| label_vectors(2, n).into_iter().map(move |l| (g, l)))
        .map(|(g, l)| {
            let odd = l.iter().filter(|x| x.0 == 1).count() % 2 == 1;
            let expected = if odd { 0 } else { 1 << g };
            (format!("g={g} [{}]", show(&l)), expected, sl2.rank(g, &l))
        });
    checks.push(table_check("sl2 level 1 ranks are 2^g or 0 (g≤4, n≤4)".into(), cases));

    for r in 2..=4u32 {
        let datum = FusionDatum::slr_level1(r);
        let cases = (0..=3u32).flat_map(|g| (0..=4usize).map(move |n| (g, n)))
            .filter(|&(g, n)| is_stable_type(g, n))
            .flat_map(|(g, n)| label_vectors(r, n).into_iter().map(move |l| (g, l)))
            .map(|(g, l)| {
                let sum: u32 = l.iter().map(|x| x.0).sum();
                let expected = if sum.is_multiple_of(r) { (r as u64).pow(g) } else { 0 };
                (format!("g={g} [{}]", show(&l)), expected, datum.rank(g, &l))
            });
        checks.push(table_check(format!("sl{r} level 1 ranks are {r}^g or 0 (g≤3, n≤4)"), cases));
    }

    for (name, datum) in builtin_data() {
        let d = &datum;
        let cases = (1..=3u32)
            .flat_map(|g| (0..=2usize).map(move |n| (g, n)))
            .flat_map(|(g, n)| label_vectors(d.size() as u32, n).into_iter().map(move |l| (g, l)))
            .map(|(g, l)| {
                let glued: u64 = d
                    .labels()
                    .map(|nu| {
                        let mut m = l.clone();
                        m.push(nu);
                        m.push(d.dual(nu));
                        d.rank(g - 1, &m)
                    })
                    .sum();
                (format!("g={g} [{}]", show(&l)), glued, d.rank(g, &l))
            });
        checks.push(table_check(format!("{name}: gluing identity (g≤3)"), cases));
    }
    checks
}

pub fn slope_suite() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for level in 1..=2 {
        let datum = FusionDatum::sl2(level);
        for (g, n) in [(1, 1), (2, 2), (0, 4)] {
            for labels in label_vectors(datum.size() as u32, n) {
                if datum.rank(g, &labels) == 0 {
                    continue;
                }
                let ok = slope_restriction_check(&datum, g, &labels, 3)?;
                checks.push(Check::new(
                    format!("sl2 level {level} (g,n)=({g},{n}) [{}]: smooth part = rank·exp(slope)", show(&labels)),
                    true,
                    ok,
                ));
            }
        }
    }
    Ok(checks)
}

pub fn compact_type_suite() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for r in [2u32, 3] {
        let datum = FusionDatum::slr_level1(r);
        for (g, n) in [(1u32, 2usize), (2, 3)] {
            for labels in label_vectors(r, n) {
                let sum: u32 = labels.iter().map(|l| l.0).sum();
                if !sum.is_multiple_of(r) {
                    continue;
                }
                let graph_sum = verlinde_chern_character(&datum, g, &labels, 3)?.restrict(Locus::CompactType);
                let closed = compact_type_closed_form(r, g, &labels, 3)?;
                let diff = graph_sum.sub(&closed)?;
                checks.push(Check::new(
                    format!(
                        "sl{r} level 1 (g,n)=({g},{n}) [{}]: compact-type exponential, {} terms",
                        show(&labels),
                        closed.len()
                    ),
                    "0 differing terms",
                    format!("{} differing terms", diff.len()),
                ));
            }
        }
    }
    Ok(checks)
}

pub fn two_loop_suite() -> Result<Vec<Check>> {
    let rows = two_loop_report(3, 2, 2)?;
    let mut checks = Vec::new();
    let mut even_values = Vec::new();
    for row in &rows {
        match row.parity {
            LoopParity::Odd => checks.push(Check::new(
                format!("odd 2-loop {}: coefficient", row.graph),
                "0/1",
                format_rational(&row.raw),
            )),
            LoopParity::Even => {
                checks.push(Check::new(
                    format!("even 2-loop {}: normalized coefficient", row.graph),
                    "1/16",
                    format_rational(&row.normalized),
                ));
                even_values.push(row.normalized.clone());
            }
        }
    }
    let distinct = {
        let mut v = even_values.clone();
        v.sort();
        v.dedup();
        v.len()
    };
    checks.push(Check::new("even 2-loops share one normalized coefficient", 1, distinct));
    checks.push(Check::new(
        "some odd 2-loop differs from the even value",
        true,
        rows.iter().any(|r| r.parity == LoopParity::Odd) && !even_values.is_empty(),
    ));
    Ok(checks)
}

pub fn symplectic_suite() -> Vec<Check> {
    let mut checks: Vec<Check> = builtin_data()
        .into_iter()
        .map(|(name, datum)| {
            let w = verlinde_w_matrix(&datum, 8);
            Check::new(format!("{name}: W(z)W*(-z) = 1 through degree 8"), true, symplectic_check(&datum, &w, 8))
        })
        .collect();
    let datum = FusionDatum::sl2(1);
    let w = verlinde_w_matrix(&datum, 8);
    let mut perturbed = w.entry(Label(1)).coeffs().to_vec();
    perturbed[3] += rat(1, 1000);
    let bad = DiagonalRMatrix::new(vec![w.entry(Label(0)).clone(), Series::new(perturbed, 8)])
        .expect("constant term untouched");
    checks.push(Check::new(
        "perturbed sl2 level 1 W-matrix fails the symplectic condition",
        false,
        symplectic_check(&datum, &bad, 8),
    ));
    checks
}

pub fn graph_suite() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for ((g, n, e), expected) in [((0, 4, 1), 4), ((1, 1, 1), 2), ((2, 0, 1), 3), ((0, 3, 2), 1), ((0, 3, 5), 1)] {
        checks.push(Check::new(
            format!("(g,n,max_edges)=({g},{n},{e}) graph count"),
            expected,
            enumerate_stable_graphs(g, n, e)?.len(),
        ));
    }
    let auts: Vec<u64> = enumerate_stable_graphs(1, 1, 1)?.iter().map(automorphism_order).collect();
    checks.push(Check::new("(1,1,1) automorphism orders", "[1, 2]", format!("{auts:?}")));
    for g in 0..=2u32 {
        for n in 0..=3usize {
            if !is_stable_type(g, n) {
                continue;
            }
            let graphs = enumerate_stable_graphs(g, n, 3)?;
            let valid = graphs.iter().all(|gr| {
                gr.validate().is_ok() && gr.total_genus() == g && gr.num_legs() == n && gr.canonical() == *gr
            });
            let mut keys = graphs.clone();
            keys.dedup();
            checks.push(Check::new(
                format!("({g},{n}) up to 3 edges: {} graphs valid, canonical and distinct", graphs.len()),
                true,
                valid && keys.len() == graphs.len(),
            ));
        }
    }
    Ok(checks)
}

pub fn run_suite(suite: Suite) -> Result<Vec<Check>> {
    Ok(match suite {
        Suite::Ranks => rank_suite(),
        Suite::Slope => slope_suite()?,
        Suite::CompactType => compact_type_suite()?,
        Suite::TwoLoop => two_loop_suite()?,
        Suite::Symplectic => symplectic_suite(),
        Suite::Graphs => graph_suite()?,
        Suite::All => {
            let mut all = Vec::new();
            for s in [Suite::Ranks, Suite::Symplectic, Suite::Graphs, Suite::Slope, Suite::TwoLoop, Suite::CompactType] {
                all.extend(run_suite(s)?);
            }
            all
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use num_traits::Zero;

    #[test]
    fn label_vector_count() {
        assert_eq!(label_vectors(3, 2).len(), 9);
        assert_eq!(label_vectors(2, 0), vec![Vec::<Label>::new()]);
    }

    #[test]
    fn check_rendering() {
        let c = Check::new("x", 1, 2);
        assert!(!c.passed);
        assert_eq!(c.to_string(), "[FAIL] x: expected 1, got 2");
        assert!(Check::new("y", int(1), int(1)).passed);
        assert!(int(0).is_zero());
    }
}
