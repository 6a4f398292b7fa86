//! Grid verification suites.
//!
//! Each suite evaluates an identity at every point of a finite grid and
//! collects the points where it fails. Points are checked in parallel and
//! reported in grid order.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::grid::{cube, weakly_increasing};
use crate::intervals::{check_first_identity, check_second_identity};
use crate::labelings::{restricted_with, DistinctFilter, RestrictionSpec, SignedCounter};
use crate::monotone::{
    alpha, alpha_operator, check_alpha_property, count_extension, doubly_refined_asm, enumerate_extension,
    monotone_triangles, refined_asm, Alpha, AlphaProperty, Extension, OperatorForm, DEFAULT_MAX_EXPANSION,
};
use crate::operators::{binomial_determinant, product_formula, LatticeFunction, OperatorExpression, ProductFormula};
use crate::paths::{count_nonintersecting, signed_families, PathVariant};
use crate::patterns::{shift_antisym_decomposition, swapped_bottom};
use crate::perm::all_subsets;
use crate::trees::TreeSequence;

/// One failed check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub point: Vec<i64>,
    pub detail: String,
}

impl Violation {
    pub fn new(point: &[i64], detail: impl Into<String>) -> Self {
        Violation { point: point.to_vec(), detail: detail.into() }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub suite: String,
    pub parameters: Value,
    pub points_checked: u64,
    pub violations: Vec<Violation>,
    /// Seconds.
    pub wall_time: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Concatenates several reports into one named `suite`.
    pub fn merge(suite: &str, parameters: Value, parts: Vec<VerificationReport>) -> Self {
        let mut out = VerificationReport {
            suite: suite.to_string(),
            parameters,
            points_checked: 0,
            violations: Vec::new(),
            wall_time: 0.0,
        };
        for p in parts {
            out.points_checked += p.points_checked;
            out.wall_time += p.wall_time;
            out.violations.extend(
                p.violations
                    .into_iter()
                    .map(|v| Violation { point: v.point, detail: format!("{}: {}", p.suite, v.detail) }),
            );
        }
        out
    }
}

/// Runs `check` on every point in parallel; violations keep point order.
pub fn run_points<T, F>(suite: &str, parameters: Value, points: &[T], check: F) -> VerificationReport
where
    T: Sync,
    F: Fn(&T) -> Vec<Violation> + Sync,
{
    let start = Instant::now();
    let violations: Vec<Violation> = points.par_iter().map(&check).collect::<Vec<_>>().into_iter().flatten().collect();
    VerificationReport {
        suite: suite.to_string(),
        parameters,
        points_checked: points.len() as u64,
        violations,
        wall_time: start.elapsed().as_secs_f64(),
    }
}

/// The verification suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    TheoremMain,
    Formula,
    Independence,
    ShiftAntisym,
    DeltaN,
    ERho,
    PropFirst,
    PropSecond,
    LemmaDistinct,
    RhoZero,
    ExtensionsAgree,
    AlphaProps,
    Refined,
    DoublyRefined,
    Paths,
    Intervals,
    Decomposition,
}

impl Suite {
    pub const ALL: [Suite; 17] = [
        Suite::TheoremMain,
        Suite::Formula,
        Suite::Independence,
        Suite::ShiftAntisym,
        Suite::DeltaN,
        Suite::ERho,
        Suite::PropFirst,
        Suite::PropSecond,
        Suite::LemmaDistinct,
        Suite::RhoZero,
        Suite::ExtensionsAgree,
        Suite::AlphaProps,
        Suite::Refined,
        Suite::DoublyRefined,
        Suite::Paths,
        Suite::Intervals,
        Suite::Decomposition,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::TheoremMain => "theorem-main",
            Suite::Formula => "formula",
            Suite::Independence => "independence",
            Suite::ShiftAntisym => "shift-antisym",
            Suite::DeltaN => "delta-n",
            Suite::ERho => "e-rho",
            Suite::PropFirst => "prop-first",
            Suite::PropSecond => "prop-second",
            Suite::LemmaDistinct => "lemma-distinct",
            Suite::RhoZero => "rho-zero",
            Suite::ExtensionsAgree => "extensions-agree",
            Suite::AlphaProps => "alpha-props",
            Suite::Refined => "refined",
            Suite::DoublyRefined => "doubly-refined",
            Suite::Paths => "paths",
            Suite::Intervals => "intervals",
            Suite::Decomposition => "decomposition",
        }
    }

    /// Default largest order checked.
    pub fn default_max_n(self) -> usize {
        match self {
            Suite::Formula => 5,
            Suite::Paths | Suite::Decomposition => 3,
            Suite::Intervals => 3,
            _ => 4,
        }
    }

    /// Default grid `{lo..=hi}`.
    pub fn default_grid(self) -> (i64, i64) {
        match self {
            Suite::Formula => (-3, 3),
            Suite::PropFirst | Suite::PropSecond | Suite::LemmaDistinct | Suite::RhoZero => (-1, 1),
            Suite::Intervals => (-5, 5),
            _ => (-2, 2),
        }
    }
}

impl std::fmt::Display for Suite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::OutOfRange(format!("unknown suite {s:?}")))
    }
}

/// Overrides for a suite run; `None` means the suite default.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SuiteConfig {
    /// Check this order only.
    pub n: Option<usize>,
    pub grid: Option<(i64, i64)>,
    /// Number of random tree sequences per order.
    pub trees: usize,
    pub seed: u64,
    /// Upper bound on memo entries per tree-sequence counter.
    pub memo_cap: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { n: None, grid: None, trees: 5, seed: 0, memo_cap: None }
    }
}

impl SuiteConfig {
    fn orders(&self, suite: Suite) -> Vec<usize> {
        match self.n {
            _ if suite == Suite::Intervals => vec![3],
            Some(n) => vec![n],
            None => (1..=suite.default_max_n()).collect(),
        }
    }

    fn grid(&self, suite: Suite) -> (i64, i64) {
        self.grid.unwrap_or(suite.default_grid())
    }

    fn parameters(&self, suite: Suite) -> Value {
        let (lo, hi) = self.grid(suite);
        json!({
            "orders": self.orders(suite),
            "grid": format!("{lo}..{hi}"),
            "trees": self.trees,
            "seed": self.seed,
        })
    }

    /// The sampled random tree sequences of order `n`.
    pub fn tree_sequences(&self, n: usize) -> Vec<TreeSequence> {
        (0..self.trees as u64).map(|t| TreeSequence::random(n, self.seed.wrapping_add(t)).expect("n >= 1")).collect()
    }

    fn counter(&self, ts: TreeSequence) -> SignedCounter {
        match self.memo_cap {
            Some(c) => SignedCounter::with_cap(ts, c),
            None => SignedCounter::new(ts),
        }
    }

    fn counters(&self, n: usize) -> Vec<SignedCounter> {
        self.tree_sequences(n).into_iter().map(|t| self.counter(t)).collect()
    }
}

/// Runs one suite.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> VerificationReport {
    let start = Instant::now();
    let (lo, hi) = cfg.grid(suite);
    let mut parts = Vec::new();
    for n in cfg.orders(suite) {
        parts.extend(run_order(suite, cfg, n, lo, hi));
    }
    let mut report = VerificationReport::merge(suite.name(), cfg.parameters(suite), parts);
    report.wall_time = start.elapsed().as_secs_f64();
    report
}

/// Runs every suite with its defaults, keeping the tree count and seed.
pub fn run_all(cfg: &SuiteConfig) -> Vec<VerificationReport> {
    let base = SuiteConfig { n: None, grid: None, ..cfg.clone() };
    Suite::ALL.iter().map(|&s| run_suite(s, &base)).collect()
}

fn residual_check(
    f: &(impl LatticeFunction + ?Sized),
    op: &OperatorExpression,
    k: &[i64],
    what: &str,
) -> Option<Violation> {
    let r = op.apply(f, k).expect("arity matches");
    (!r.is_zero()).then(|| Violation::new(k, format!("{what}: residual {r}")))
}

fn subsets_of(m: usize) -> Vec<BTreeSet<usize>> {
    all_subsets(&(1..=m).collect::<Vec<_>>()).into_iter().map(|s| s.into_iter().collect()).collect()
}

fn run_order(suite: Suite, cfg: &SuiteConfig, n: usize, lo: i64, hi: i64) -> Vec<VerificationReport> {
    let name = format!("n = {n}");
    let params = json!({ "n": n, "grid": format!("{lo}..{hi}") });
    let grid = cube(n, lo, hi);
    match suite {
        Suite::TheoremMain => {
            let counters: Vec<SignedCounter> = cfg.counters(n);
            vec![run_points(&name, params, &grid, |k| {
                let p = product_formula(k);
                counters
                    .iter()
                    .enumerate()
                    .filter_map(|(t, c)| {
                        let v = c.count(k);
                        (v != p).then(|| Violation::new(k, format!("tree sequence {t}: count {v}, product {p}")))
                    })
                    .collect()
            })]
        }
        Suite::Formula => vec![run_points(&name, params, &grid, |k| {
            let (d, p) = (binomial_determinant(k), product_formula(k));
            if d == p {
                Vec::new()
            } else {
                vec![Violation::new(k, format!("determinant {d}, product {p}"))]
            }
        })],
        Suite::Independence => {
            let mut seqs = cfg.tree_sequences(n);
            seqs.push(TreeSequence::basic(n).expect("n >= 1"));
            seqs.push(TreeSequence::leaf_chain(n, 1).expect("n >= 1"));
            if n >= 2 {
                seqs.push(TreeSequence::swap(n, 1, n).expect("n >= 2"));
            }
            let counters: Vec<SignedCounter> = seqs.into_iter().map(|t| cfg.counter(t)).collect();
            vec![run_points(&name, params, &grid, |k| {
                let first = counters[0].count(k);
                counters[1..]
                    .iter()
                    .enumerate()
                    .filter_map(|(t, c)| {
                        let v = c.count(k);
                        (v != first)
                            .then(|| Violation::new(k, format!("tree sequence {}: {v} differs from {first}", t + 1)))
                    })
                    .collect()
            })]
        }
        Suite::ShiftAntisym => {
            let counters: Vec<SignedCounter> = cfg.counters(n);
            vec![run_points(&name, params, &grid, |k| {
                let mut out = Vec::new();
                for (t, c) in counters.iter().enumerate() {
                    let v = c.count(k);
                    for i in 0..n {
                        for j in i + 1..n {
                            let d = (j - i) as i64;
                            let mut s = k.clone();
                            s[i] = k[j] + d;
                            s[j] = k[i] - d;
                            let w = c.count(&s);
                            if v != -w.clone() {
                                out.push(Violation::new(
                                    k,
                                    format!("tree sequence {t}, ({}, {}): {v} vs {w}", i + 1, j + 1),
                                ));
                            }
                        }
                    }
                }
                out
            })]
        }
        Suite::DeltaN | Suite::ERho => {
            let ts =
                cfg.tree_sequences(n).into_iter().next().unwrap_or_else(|| TreeSequence::basic(n).expect("n >= 1"));
            let counter = cfg.counter(ts);
            let alpha = Alpha { arity: n };
            let ops: Vec<(String, OperatorExpression)> = if suite == Suite::DeltaN {
                (0..n)
                    .map(|i| (format!("Delta_{}^{n}", i + 1), OperatorExpression::delta(n, i).pow(n as u32)))
                    .collect()
            } else {
                let d: Vec<_> = (0..n).map(|i| OperatorExpression::delta(n, i)).collect();
                let nb: Vec<_> = (0..n).map(|i| OperatorExpression::nabla(n, i)).collect();
                (1..=n)
                    .flat_map(|r| {
                        [
                            (format!("e_{r}(Delta)"), OperatorExpression::elementary(r, &d)),
                            (format!("e_{r}(delta)"), OperatorExpression::elementary(r, &nb)),
                        ]
                    })
                    .collect()
            };
            vec![run_points(&name, params, &grid, |k| {
                let mut out = Vec::new();
                for (what, op) in &ops {
                    out.extend(residual_check(&counter, op, k, &format!("L, {what}")));
                    out.extend(residual_check(&alpha, op, k, &format!("alpha, {what}")));
                }
                out
            })]
        }
        Suite::PropFirst => {
            let counters: Vec<SignedCounter> = cfg.counters(n);
            let rs = subsets_of(n);
            let ops: Vec<OperatorExpression> = rs
                .iter()
                .map(|r| {
                    r.iter()
                        .fold(OperatorExpression::identity(n), |acc, &i| acc.mul(&OperatorExpression::delta(n, i - 1)))
                })
                .collect();
            vec![run_points(&name, params, &grid, |k| {
                let mut out = Vec::new();
                for (t, c) in counters.iter().enumerate() {
                    for (r, op) in rs.iter().zip(&ops) {
                        let lhs = op.apply(c, k).expect("arity matches");
                        let spec = RestrictionSpec::VertexSet { m: n, r: r.clone() };
                        let rhs = restricted_with(c, k, &spec, None).expect("valid spec");
                        if lhs != rhs {
                            out.push(Violation::new(
                                k,
                                format!("tree sequence {t}, R = {r:?}: difference {lhs}, restricted {rhs}"),
                            ));
                        }
                    }
                }
                out
            })]
        }
        Suite::PropSecond => {
            let counters: Vec<SignedCounter> = cfg.counters(n);
            vec![run_points(&name, params, &grid, |k| {
                let mut out = Vec::new();
                for (t, c) in counters.iter().enumerate() {
                    for m in 2..=n {
                        for r in subsets_of(m - 1) {
                            let edge = RestrictionSpec::EdgeSet { m, r: r.clone() };
                            let vertex = RestrictionSpec::VertexSet { m: m - 1, r: r.clone() };
                            let lhs = restricted_with(c, k, &edge, None).expect("valid spec");
                            let rhs = restricted_with(c, k, &vertex, None).expect("valid spec");
                            if lhs != rhs {
                                out.push(Violation::new(
                                    k,
                                    format!("tree sequence {t}, m = {m}, R = {r:?}: edge {lhs}, vertex {rhs}"),
                                ));
                            }
                        }
                    }
                }
                out
            })]
        }
        Suite::LemmaDistinct => {
            let counters: Vec<SignedCounter> = cfg.counters(n);
            vec![run_points(&name, params, &grid, |k| {
                let mut out = Vec::new();
                for (t, c) in counters.iter().enumerate() {
                    for m in 2..=n {
                        for r in subsets_of(m) {
                            let spec = RestrictionSpec::VertexSet { m, r: r.clone() };
                            let whole = restricted_with(c, k, &spec, None).expect("valid spec");
                            for level in 2..=m {
                                let edges = level - 1;
                                let all_pairs: Vec<(usize, usize)> =
                                    (1..=edges).flat_map(|a| (a + 1..=edges).map(move |b| (a, b))).collect();
                                if all_pairs.is_empty() {
                                    continue;
                                }
                                let mut filters: Vec<Vec<(usize, usize)>> =
                                    all_pairs.iter().map(|&p| vec![p]).collect();
                                if all_pairs.len() > 1 {
                                    filters.push(all_pairs.clone());
                                }
                                for pairs in filters {
                                    let f = DistinctFilter { level, pairs: pairs.clone() };
                                    let part = restricted_with(c, k, &spec, Some(&f)).expect("valid filter");
                                    if part != whole {
                                        out.push(Violation::new(
                                            k,
                                            format!("tree sequence {t}, m = {m}, R = {r:?}, level {level}, pairs {pairs:?}: {part} vs {whole}"),
                                        ));
                                    }
                                }
                            }
                        }
                    }
                }
                out
            })]
        }
        Suite::RhoZero => {
            let counters: Vec<SignedCounter> = cfg.counters(n);
            vec![run_points(&name, params, &grid, |k| {
                let mut out = Vec::new();
                for (t, c) in counters.iter().enumerate() {
                    for m in 1..=n {
                        for rho in 1..=m {
                            let spec = RestrictionSpec::Size { m, rho };
                            let v = restricted_with(c, k, &spec, None).expect("valid spec");
                            if !v.is_zero() {
                                out.push(Violation::new(k, format!("tree sequence {t}, m = {m}, rho = {rho}: {v}")));
                            }
                        }
                    }
                }
                out
            })]
        }
        Suite::ExtensionsAgree => {
            // order 4 runs on the nonnegative box unless a grid is given
            let grid = if n == 4 && cfg.grid.is_none() { cube(4, 0, 3) } else { grid };
            let params = json!({ "n": n, "points": grid.len() });
            let ops: Vec<(OperatorForm, OperatorExpression)> = [OperatorForm::ThreeTerm, OperatorForm::DeltaDelta]
                .into_iter()
                .map(|f| (f, alpha_operator(n, f, DEFAULT_MAX_EXPANSION).expect("small order")))
                .collect();
            let product = ProductFormula { arity: n };
            let stream = n <= 3;
            let mut parts = vec![run_points(&name, params, &grid, |k| {
                let a = alpha(k);
                let mut out = Vec::new();
                for v in Extension::ALL {
                    let c = count_extension(v, k);
                    if c != a {
                        out.push(Violation::new(k, format!("extension {}: {c}, alpha {a}", v.index())));
                    }
                    if stream {
                        let s: i64 = enumerate_extension(v, k).map(|t| t.sign as i64).sum();
                        if BigInt::from(s) != a {
                            out.push(Violation::new(k, format!("extension {} stream: {s}, alpha {a}", v.index())));
                        }
                    }
                }
                for (form, op) in &ops {
                    let c = op.apply(&product, k).expect("arity matches");
                    if c != a {
                        out.push(Violation::new(k, format!("operator {form:?}: {c}, alpha {a}")));
                    }
                }
                out
            })];
            let staircase: Vec<i64> = (1..=n as i64).collect();
            parts.push(run_points(&format!("{name}, staircase"), json!({ "n": n }), &[staircase], |k| {
                let (a, t) = (alpha(k), BigInt::from(monotone_triangles(k).len()));
                if a == t {
                    Vec::new()
                } else {
                    vec![Violation::new(k, format!("alpha {a}, triangles {t}"))]
                }
            }));
            parts
        }
        Suite::AlphaProps => AlphaProperty::ALL.iter().map(|&p| check_alpha_property(p, n, lo, hi)).collect(),
        Suite::Refined => vec![run_points(&name, params, &[n], |&n| {
            let counts = match refined_asm(n) {
                Ok(c) => c,
                Err(e) => return vec![Violation::new(&[n as i64], e.to_string())],
            };
            let a = &counts.refined;
            let mut out = Vec::new();
            let total: BigInt = a.iter().sum();
            let staircase: Vec<i64> = (1..=n as i64).collect();
            if total != alpha(&staircase) {
                out.push(Violation::new(&[n as i64], format!("row total {total}")));
            }
            for i in 0..n {
                if a[i] != a[n - 1 - i] {
                    out.push(Violation::new(&[n as i64, i as i64 + 1], "symmetry fails"));
                }
            }
            let lin = check_alpha_property(AlphaProperty::LinearSystem, n, lo, hi);
            out.extend(lin.violations);
            out
        })],
        Suite::DoublyRefined => {
            let mut parts = vec![run_points(&name, params, &[n], |&n| {
                let counts = match doubly_refined_asm(n) {
                    Ok(c) => c,
                    Err(e) => return vec![Violation::new(&[n as i64], e.to_string())],
                };
                let d = counts.doubly.expect("doubly refined");
                let mut out = Vec::new();
                for i in 0..n {
                    for j in 0..n {
                        if d[i][j] != d[j][i] || d[i][j] != d[n - 1 - i][n - 1 - j] {
                            out.push(Violation::new(&[i as i64 + 1, j as i64 + 1], "symmetry fails"));
                        }
                    }
                }
                out
            })];
            parts.push(check_alpha_property(AlphaProperty::DoublyRefinedIdentity, n, lo, hi));
            parts
        }
        Suite::Paths => {
            let weak: Vec<Vec<i64>> = weakly_increasing(n, 0, 3);
            vec![
                run_points(
                    &format!("{name}, classic"),
                    json!({ "n": n, "grid": "0..3", "weaklyIncreasing": true }),
                    &weak,
                    |k| {
                        let p = product_formula(k);
                        let mut out = Vec::new();
                        let s = signed_families(k, PathVariant::Classic).expect("nonnegative");
                        let c = count_nonintersecting(k).expect("weakly increasing");
                        if s != p || c != p {
                            out.push(Violation::new(k, format!("signed {s}, non-intersecting {c}, product {p}")));
                        }
                        out
                    },
                ),
                run_points(&format!("{name}, general"), params, &grid, |k| {
                    let p = product_formula(k);
                    let s = signed_families(k, PathVariant::General).expect("total");
                    if s == p {
                        Vec::new()
                    } else {
                        vec![Violation::new(k, format!("signed {s}, product {p}"))]
                    }
                }),
            ]
        }
        Suite::Intervals => {
            if n != 3 {
                return Vec::new();
            }
            vec![run_points(&name, params, &grid, |p| {
                let (x, y, z) = (p[0], p[1], p[2]);
                let mut out = Vec::new();
                for (which, c) in [("first", check_first_identity(x, y, z)), ("second", check_second_identity(x, y, z))]
                {
                    if !c.identity_holds {
                        out.push(Violation::new(p, format!("{which} identity")));
                    }
                    if !c.dichotomy_holds {
                        out.push(Violation::new(p, format!("{which} dichotomy")));
                    }
                }
                out
            })]
        }
        Suite::Decomposition => {
            if n < 2 {
                return Vec::new();
            }
            vec![run_points(&name, params, &grid, |k| {
                let mut out = Vec::new();
                for i in 1..n {
                    let a = shift_antisym_decomposition(k, i).expect("valid position");
                    let b = shift_antisym_decomposition(&swapped_bottom(k, i), i).expect("valid position");
                    for c in 0..4 {
                        if a[c] != -b[c].clone() {
                            out.push(Violation::new(k, format!("i = {i}, class {}: {} vs {}", c + 1, a[c], b[c])));
                        }
                    }
                }
                out
            })]
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_runs_pass() {
        let cfg = SuiteConfig { n: Some(2), grid: Some((-1, 1)), trees: 2, seed: 3, memo_cap: Some(100) };
        for s in Suite::ALL {
            let r = run_suite(s, &cfg);
            assert!(r.passed(), "{s}: {:?}", r.violations);
            assert!(r.points_checked > 0, "{s}");
        }
    }

    #[test]
    fn report_json_shape() {
        let cfg = SuiteConfig { n: Some(2), grid: Some((0, 1)), ..SuiteConfig::default() };
        let r = run_suite(Suite::Formula, &cfg);
        let v = serde_json::to_value(&r).unwrap();
        for key in ["suite", "parameters", "pointsChecked", "violations", "wallTime"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["pointsChecked"], 4);
    }

    #[test]
    fn violations_are_reported() {
        let r = run_points("odd", json!({}), &[1i64, 2, 3], |&x| {
            if x % 2 == 1 {
                vec![Violation::new(&[x], "odd")]
            } else {
                Vec::new()
            }
        });
        assert!(!r.passed());
        assert_eq!(r.violations.iter().map(|v| v.point[0]).collect::<Vec<_>>(), vec![1, 3]);
    }
}
