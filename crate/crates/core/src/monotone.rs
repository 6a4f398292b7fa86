//! Monotone triangles and the polynomial `alpha(n; k)`.
//!
//! `alpha` is evaluated through the subset expansion of the defining
//! recursion: for `I` a subset of `[n-1]`, `l_q = k_q` when `q` is in `I`,
//! and otherwise `l_q` runs over `sum_{k_q+1}^{k_{q+1}}`, or
//! `sum_{k_q+1}^{k_{q+1}-1}` when `q + 1` is in `I`, all sums taken in the
//! extended sense of [`extended_sum`](crate::operators::extended_sum).
//!
//! The four [`Extension`]s are signed triangle families whose signed count
//! is `alpha(n; k)` for every `k` in `Z^n`. Each is described by a local
//! rule that produces the row above from the row below; the same rule
//! drives both the object stream and the memoized counter.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use dashmap::DashMap;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::grid::cube;
use crate::operators::{binomial, LatticeFunction, OperatorExpression};
use crate::verify::{run_points, VerificationReport, Violation};

/// `sum_{a}^{b}` as `(sign, lo, hi)` over the plain range `lo..=hi`;
/// `None` for the empty sum.
fn ext_range(a: i64, b: i64) -> Option<(i32, i64, i64)> {
    if a <= b {
        Some((1, a, b))
    } else if b == a - 1 {
        None
    } else {
        Some((-1, b + 1, a - 1))
    }
}

/// Values of `sum_{a}^{b}` with an inversion flag for the reversed case.
fn range_options(a: i64, b: i64) -> Vec<(i64, bool)> {
    match ext_range(a, b) {
        None => Vec::new(),
        Some((s, lo, hi)) => (lo..=hi).map(|v| (v, s < 0)).collect(),
    }
}

fn for_each_point(ranges: &[(i64, i64)], mut visit: impl FnMut(&[i64])) {
    if ranges.iter().any(|&(lo, hi)| lo > hi) {
        return;
    }
    let mut p: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    loop {
        visit(&p);
        let mut idx = ranges.len();
        loop {
            if idx == 0 {
                return;
            }
            idx -= 1;
            if p[idx] < ranges[idx].1 {
                p[idx] += 1;
                for (q, r) in p.iter_mut().zip(ranges).skip(idx + 1) {
                    *q = r.0;
                }
                break;
            }
        }
    }
}

fn alpha_memo() -> &'static DashMap<Vec<i64>, BigInt> {
    static MEMO: OnceLock<DashMap<Vec<i64>, BigInt>> = OnceLock::new();
    MEMO.get_or_init(DashMap::new)
}

/// The monotone triangle polynomial `alpha(n; k)` with `n = k.len()`.
pub fn alpha(k: &[i64]) -> BigInt {
    if k.len() <= 1 {
        return BigInt::one();
    }
    // translation invariant, so memoize on k - k_1
    let key: Vec<i64> = k.iter().map(|v| v - k[0]).collect();
    if let Some(v) = alpha_memo().get(&key) {
        return v.clone();
    }
    let v = alpha_uncached(&key);
    alpha_memo().insert(key, v.clone());
    v
}

fn alpha_uncached(k: &[i64]) -> BigInt {
    let m = k.len() - 1;
    let mut total = BigInt::zero();
    for mask in 0u32..(1 << m) {
        let in_i = |q: usize| q < m && mask & (1 << q) != 0;
        let mut sign = 1;
        let mut ranges = Vec::with_capacity(m);
        let mut empty = false;
        for q in 0..m {
            if in_i(q) {
                ranges.push((k[q], k[q]));
                continue;
            }
            let hi = if in_i(q + 1) { k[q + 1] - 1 } else { k[q + 1] };
            match ext_range(k[q] + 1, hi) {
                None => {
                    empty = true;
                    break;
                }
                Some((s, lo, hi)) => {
                    sign *= s;
                    ranges.push((lo, hi));
                }
            }
        }
        if empty {
            continue;
        }
        let mut sub = BigInt::zero();
        for_each_point(&ranges, |l| sub += alpha(l));
        total += sub * sign;
    }
    total
}

/// `alpha` as a lattice function of fixed arity.
#[derive(Debug, Clone, Copy)]
pub struct Alpha {
    pub arity: usize,
}

impl LatticeFunction for Alpha {
    fn arity(&self) -> usize {
        self.arity
    }

    fn eval(&self, point: &[i64]) -> BigInt {
        alpha(point)
    }
}

/// The four signed extensions of monotone triangles to arbitrary bottom rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Extension {
    /// Left stars: a starred entry equals its lower-left neighbour.
    First,
    /// Left and right stars.
    Second,
    /// Special entries whose two parents equal them; sign per special entry.
    Third,
    /// An arrow on every entry; sign per two-sided arrow.
    Fourth,
}

impl Extension {
    pub const ALL: [Extension; 4] = [Extension::First, Extension::Second, Extension::Third, Extension::Fourth];

    pub fn from_index(v: u8) -> Result<Self> {
        match v {
            1 => Ok(Extension::First),
            2 => Ok(Extension::Second),
            3 => Ok(Extension::Third),
            4 => Ok(Extension::Fourth),
            _ => Err(Error::OutOfRange(format!("extension variant {v} is not in 1..=4"))),
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Extension::First => 1,
            Extension::Second => 2,
            Extension::Third => 3,
            Extension::Fourth => 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Arrow {
    #[serde(rename = "<-")]
    Left,
    #[serde(rename = "->")]
    Right,
    #[serde(rename = "<->")]
    Both,
}

impl Arrow {
    const ALL: [Arrow; 3] = [Arrow::Left, Arrow::Right, Arrow::Both];
}

/// Per-entry marks of one row.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum RowMarks {
    None,
    Stars(Vec<bool>),
    TwoSided { left: Vec<bool>, right: Vec<bool> },
    Special(Vec<bool>),
    Arrows(Vec<Arrow>),
}

impl RowMarks {
    /// The part of the marks that constrains the row above.
    fn state(&self) -> RowMarks {
        match self {
            RowMarks::Special(_) | RowMarks::Arrows(_) => self.clone(),
            _ => RowMarks::None,
        }
    }
}

/// Decorations of a whole triangle; positions are `(row, column)`, 1-based,
/// row 1 at the top.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "camelCase")]
pub enum Decorations {
    First { left_stars: BTreeSet<(usize, usize)> },
    Second { left_stars: BTreeSet<(usize, usize)>, right_stars: BTreeSet<(usize, usize)> },
    Third { special: BTreeSet<(usize, usize)> },
    Fourth { arrows: Vec<Vec<Arrow>> },
}

/// One object of an extension.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExtTriangle {
    /// Top row first.
    pub rows: Vec<Vec<i64>>,
    pub decorations: Decorations,
    pub inversions: BTreeSet<(usize, usize)>,
    pub sign: i32,
}

struct Step {
    row: Vec<i64>,
    inversions: Vec<bool>,
    marks: RowMarks,
    sign: i32,
}

fn subsets(m: usize, allow_adjacent: bool, allowed: impl Fn(usize) -> bool) -> Vec<Vec<bool>> {
    (0u32..(1 << m))
        .filter(|mask| (0..m).all(|j| mask & (1 << j) == 0 || allowed(j)))
        .filter(|mask| allow_adjacent || mask & (mask >> 1) == 0)
        .map(|mask| (0..m).map(|j| mask & (1 << j) != 0).collect())
        .collect()
}

fn parity(count: usize) -> i32 {
    if count.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Cartesian product of per-position options.
fn rows_from_options(options: &[Vec<(i64, bool)>]) -> Vec<(Vec<i64>, Vec<bool>)> {
    let mut out = vec![(Vec::new(), Vec::new())];
    for opts in options {
        if opts.is_empty() {
            return Vec::new();
        }
        let mut next = Vec::with_capacity(out.len() * opts.len());
        for (row, inv) in &out {
            for &(v, i) in opts {
                let mut r = row.clone();
                r.push(v);
                let mut f = inv.clone();
                f.push(i);
                next.push((r, f));
            }
        }
        out = next;
    }
    out
}

#[derive(Debug, Clone, Copy)]
struct Rules {
    variant: Extension,
    allow_adjacent: bool,
}

impl Rules {
    /// Marks of the bottom row with their sign contribution.
    fn initial(&self, n: usize) -> Vec<(RowMarks, i32)> {
        match self.variant {
            Extension::First | Extension::Second => vec![(RowMarks::None, 1)],
            Extension::Third => subsets(n, self.allow_adjacent, |j| j >= 1 && j + 1 < n)
                .into_iter()
                .map(|s| {
                    let c = s.iter().filter(|&&b| b).count();
                    (RowMarks::Special(s), parity(c))
                })
                .collect(),
            Extension::Fourth => arrow_rows(n)
                .into_iter()
                .map(|a| {
                    let c = a.iter().filter(|&&x| x == Arrow::Both).count();
                    (RowMarks::Arrows(a), parity(c))
                })
                .collect(),
        }
    }

    /// Every row that may sit directly above `below`.
    fn steps(&self, below: &[i64], marks: &RowMarks) -> Vec<Step> {
        let m = below.len() - 1;
        let mut out = Vec::new();
        let mut emit = |options: Vec<Vec<(i64, bool)>>, marks: RowMarks, mark_sign: i32| {
            for (row, inversions) in rows_from_options(&options) {
                let sign = mark_sign * parity(inversions.iter().filter(|&&b| b).count());
                out.push(Step { row, inversions, marks: marks.clone(), sign });
            }
        };
        match self.variant {
            Extension::First => {
                for stars in subsets(m, true, |_| true) {
                    let options = (0..m)
                        .map(|j| {
                            if stars[j] {
                                vec![(below[j], false)]
                            } else {
                                let next_special = j + 1 < m && stars[j + 1];
                                let hi = if next_special { below[j + 1] - 1 } else { below[j + 1] };
                                range_options(below[j] + 1, hi)
                            }
                        })
                        .collect();
                    emit(options, RowMarks::Stars(stars), 1);
                }
            }
            Extension::Second => {
                for left in subsets(m, true, |_| true) {
                    for right in subsets(m, true, |j| !left[j] && !(j + 1 < m && left[j + 1])) {
                        let options = (0..m)
                            .map(|j| {
                                if left[j] {
                                    vec![(below[j], false)]
                                } else if right[j] {
                                    vec![(below[j + 1], false)]
                                } else {
                                    range_options(below[j] + 1, below[j + 1] - 1)
                                }
                            })
                            .collect();
                        emit(options, RowMarks::TwoSided { left: left.clone(), right }, 1);
                    }
                }
            }
            Extension::Third => {
                let RowMarks::Special(special) = marks else { unreachable!("third extension carries special marks") };
                let mut forced: Vec<Option<i64>> = vec![None; m];
                for s in (0..=m).filter(|&s| special[s]) {
                    for p in [s - 1, s] {
                        match forced[p] {
                            Some(v) if v != below[s] => return Vec::new(),
                            _ => forced[p] = Some(below[s]),
                        }
                    }
                }
                let options: Vec<Vec<(i64, bool)>> = (0..m)
                    .map(|j| match forced[j] {
                        Some(v) => vec![(v, false)],
                        None => range_options(below[j], below[j + 1]),
                    })
                    .collect();
                for s in subsets(m, self.allow_adjacent, |j| j >= 1 && j + 1 < m) {
                    let c = s.iter().filter(|&&b| b).count();
                    emit(options.clone(), RowMarks::Special(s), parity(c));
                }
            }
            Extension::Fourth => {
                let RowMarks::Arrows(arrows) = marks else { unreachable!("fourth extension carries arrows") };
                let options: Vec<Vec<(i64, bool)>> = (0..m)
                    .map(|j| {
                        let lo = if arrows[j] == Arrow::Left { below[j] } else { below[j] + 1 };
                        let hi = if arrows[j + 1] == Arrow::Right { below[j + 1] } else { below[j + 1] - 1 };
                        range_options(lo, hi)
                    })
                    .collect();
                for a in arrow_rows(m) {
                    let c = a.iter().filter(|&&x| x == Arrow::Both).count();
                    emit(options.clone(), RowMarks::Arrows(a), parity(c));
                }
            }
        }
        out
    }
}

fn arrow_rows(m: usize) -> Vec<Vec<Arrow>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|r: Vec<Arrow>| {
                Arrow::ALL.iter().map(move |&a| {
                    let mut r = r.clone();
                    r.push(a);
                    r
                })
            })
            .collect();
    }
    out
}

/// Every object of an extension with bottom row `k`, depth first.
pub fn enumerate_extension(variant: Extension, k: &[i64]) -> ExtensionStream {
    enumerate_extension_with(variant, k, false)
}

/// As [`enumerate_extension`]; with `allow_adjacent` the third extension
/// also admits adjacent special entries in a row.
pub fn enumerate_extension_with(variant: Extension, k: &[i64], allow_adjacent: bool) -> ExtensionStream {
    let rules = Rules { variant, allow_adjacent };
    let stack = if k.is_empty() {
        Vec::new()
    } else {
        rules
            .initial(k.len())
            .into_iter()
            .rev()
            .map(|(marks, sign)| Frame { rows: vec![(k.to_vec(), vec![false; k.len()], marks)], sign })
            .collect()
    };
    ExtensionStream { rules, stack }
}

struct Frame {
    // bottom row first: (values, inversion flags, marks)
    rows: Vec<(Vec<i64>, Vec<bool>, RowMarks)>,
    sign: i32,
}

pub struct ExtensionStream {
    rules: Rules,
    stack: Vec<Frame>,
}

impl ExtensionStream {
    fn finish(&self, frame: Frame) -> ExtTriangle {
        let n = frame.rows.len();
        let mut rows = Vec::with_capacity(n);
        let mut inversions = BTreeSet::new();
        let mut left_stars = BTreeSet::new();
        let mut right_stars = BTreeSet::new();
        let mut special = BTreeSet::new();
        let mut arrows = Vec::with_capacity(n);
        for (idx, (row, inv, marks)) in frame.rows.into_iter().rev().enumerate() {
            let i = idx + 1;
            let mark_at = |flags: &[bool], set: &mut BTreeSet<(usize, usize)>| {
                set.extend(flags.iter().enumerate().filter(|(_, &b)| b).map(|(j, _)| (i, j + 1)));
            };
            mark_at(&inv, &mut inversions);
            match marks {
                RowMarks::None => {}
                RowMarks::Stars(s) => mark_at(&s, &mut left_stars),
                RowMarks::TwoSided { left, right } => {
                    mark_at(&left, &mut left_stars);
                    mark_at(&right, &mut right_stars);
                }
                RowMarks::Special(s) => mark_at(&s, &mut special),
                RowMarks::Arrows(a) => arrows.push(a),
            }
            rows.push(row);
        }
        let decorations = match self.rules.variant {
            Extension::First => Decorations::First { left_stars },
            Extension::Second => Decorations::Second { left_stars, right_stars },
            Extension::Third => Decorations::Third { special },
            Extension::Fourth => Decorations::Fourth { arrows },
        };
        ExtTriangle { rows, decorations, inversions, sign: frame.sign }
    }
}

impl Iterator for ExtensionStream {
    type Item = ExtTriangle;

    fn next(&mut self) -> Option<ExtTriangle> {
        while let Some(frame) = self.stack.pop() {
            let (below, _, marks) = frame.rows.last().expect("frames are nonempty");
            if below.len() == 1 {
                return Some(self.finish(frame));
            }
            for step in self.rules.steps(below, marks).into_iter().rev() {
                let mut rows = frame.rows.clone();
                rows.push((step.row, step.inversions, step.marks));
                self.stack.push(Frame { rows, sign: frame.sign * step.sign });
            }
        }
        None
    }
}

/// Signed count of an extension by row recursion with memoization.
pub fn count_extension(variant: Extension, k: &[i64]) -> BigInt {
    count_extension_with(variant, k, false)
}

pub fn count_extension_with(variant: Extension, k: &[i64], allow_adjacent: bool) -> BigInt {
    if k.is_empty() {
        return BigInt::one();
    }
    let rules = Rules { variant, allow_adjacent };
    let mut memo = HashMap::new();
    rules.initial(k.len()).into_iter().map(|(marks, sign)| count_above(&rules, k, &marks, &mut memo) * sign).sum()
}

fn count_above(
    rules: &Rules,
    row: &[i64],
    marks: &RowMarks,
    memo: &mut HashMap<(Vec<i64>, RowMarks), BigInt>,
) -> BigInt {
    if row.len() == 1 {
        return BigInt::one();
    }
    let key = (row.to_vec(), marks.state());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let mut total = BigInt::zero();
    for step in rules.steps(row, &key.1) {
        total += count_above(rules, &step.row, &step.marks.state(), memo) * step.sign;
    }
    memo.insert(key, total.clone());
    total
}

/// The two product forms of the operator formula for `alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum OperatorForm {
    /// `prod_{p<q} (E_p + E_q^{-1} - E_p E_q^{-1})`.
    ThreeTerm,
    /// `prod_{p<q} (id + Delta_p delta_q)`.
    DeltaDelta,
}

impl FromStr for OperatorForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "threeTerm" | "three-term" => Ok(OperatorForm::ThreeTerm),
            "deltaDelta" | "delta-delta" => Ok(OperatorForm::DeltaDelta),
            _ => Err(Error::OutOfRange(format!("unknown operator form {s:?}"))),
        }
    }
}

/// Largest number of raw product terms `alpha_operator` will expand.
pub const DEFAULT_MAX_EXPANSION: u64 = 14_348_907; // 3^15, n = 6

/// The operator that maps the product formula to `alpha` in arity `n`.
pub fn alpha_operator(n: usize, form: OperatorForm, max_expansion: u64) -> Result<OperatorExpression> {
    let pairs = (n * n.saturating_sub(1) / 2) as u32;
    let base: u64 = match form {
        OperatorForm::ThreeTerm => 3,
        OperatorForm::DeltaDelta => 2,
    };
    match base.checked_pow(pairs) {
        Some(t) if t <= max_expansion => {}
        _ => return Err(Error::BoundExceeded(format!("{base}^{pairs} raw terms exceed the limit {max_expansion}"))),
    }
    let mut op = OperatorExpression::identity(n);
    for p in 0..n {
        for q in p + 1..n {
            let factor = match form {
                OperatorForm::ThreeTerm => {
                    let ep = OperatorExpression::shift(n, p, 1);
                    let eq = OperatorExpression::shift(n, q, -1);
                    ep.add(&eq).sub(&ep.mul(&eq))
                }
                OperatorForm::DeltaDelta => OperatorExpression::identity(n)
                    .add(&OperatorExpression::delta(n, p).mul(&OperatorExpression::nabla(n, q))),
            };
            op = op.mul(&factor);
        }
    }
    Ok(op)
}

/// `alpha(n; k)` by applying [`alpha_operator`] to the product formula.
pub fn alpha_via_operator(k: &[i64], form: OperatorForm) -> Result<BigInt> {
    let op = alpha_operator(k.len(), form, DEFAULT_MAX_EXPANSION)?;
    op.apply(&crate::operators::ProductFormula { arity: k.len() }, k)
}

/// Every Gelfand-Tsetlin pattern with bottom row `k` whose other rows are
/// strictly increasing, top row first.
pub fn monotone_triangles(k: &[i64]) -> Vec<Vec<Vec<i64>>> {
    fn above(below: &[i64]) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new()];
        for j in 0..below.len() - 1 {
            let mut next = Vec::new();
            for r in &out {
                let lo = r.last().map_or(below[j], |&v: &i64| below[j].max(v + 1));
                for v in lo..=below[j + 1] {
                    let mut r = r.clone();
                    r.push(v);
                    next.push(r);
                }
            }
            out = next;
        }
        out
    }
    fn walk(rows: &mut Vec<Vec<i64>>, out: &mut Vec<Vec<Vec<i64>>>) {
        let below = rows.last().expect("nonempty").clone();
        if below.len() <= 1 {
            out.push(rows.iter().rev().cloned().collect());
            return;
        }
        for r in above(&below) {
            rows.push(r);
            walk(rows, out);
            rows.pop();
        }
    }
    if k.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    walk(&mut vec![k.to_vec()], &mut out);
    out
}

/// Number of Gelfand-Tsetlin patterns with weakly increasing bottom row `k`
/// and all other rows strictly increasing.
pub fn strict_row_patterns(k: &[i64]) -> Result<BigInt> {
    if k.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Precondition(format!("bottom row {k:?} is not weakly increasing")));
    }
    fn count(row: &[i64], memo: &mut HashMap<Vec<i64>, BigInt>) -> BigInt {
        if row.len() <= 1 {
            return BigInt::one();
        }
        if let Some(v) = memo.get(row) {
            return v.clone();
        }
        let m = row.len() - 1;
        let mut total = BigInt::zero();
        let mut l = vec![0i64; m];
        fn fill(j: usize, row: &[i64], l: &mut Vec<i64>, total: &mut BigInt, memo: &mut HashMap<Vec<i64>, BigInt>) {
            if j == l.len() {
                *total += count(l, memo);
                return;
            }
            let lo = if j == 0 { row[0] } else { row[j].max(l[j - 1] + 1) };
            for v in lo..=row[j + 1] {
                l[j] = v;
                fill(j + 1, row, l, total, memo);
            }
        }
        fill(0, row, &mut l, &mut total, memo);
        memo.insert(row.to_vec(), total.clone());
        total
    }
    Ok(count(k, &mut HashMap::new()))
}

/// Refined and doubly refined alternating sign matrix numbers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefinedCounts {
    pub n: usize,
    /// `A_{n,i}` for `i = 1..=n`.
    #[serde(serialize_with = "crate::bigjson::vec")]
    pub refined: Vec<BigInt>,
    /// `A_{n,i,j}`, indexed `[i-1][j-1]`.
    #[serde(serialize_with = "crate::bigjson::opt_matrix")]
    pub doubly: Option<Vec<Vec<BigInt>>>,
}

/// Largest order accepted by the refined counts.
pub const MAX_REFINED_N: usize = 7;

fn check_refined_bound(n: usize) -> Result<()> {
    if n == 0 || n > MAX_REFINED_N {
        return Err(Error::BoundExceeded(format!("refined counts need 1 <= n <= {MAX_REFINED_N}, got {n}")));
    }
    Ok(())
}

fn refined_point_first(n: usize) -> Vec<i64> {
    (0..n).map(|m| if m == 0 { 1 } else { m as i64 }).collect()
}

fn refined_point_last(n: usize) -> Vec<i64> {
    (0..n).map(|m| if m + 1 == n { n as i64 - 1 } else { m as i64 + 1 }).collect()
}

fn doubly_point(n: usize) -> Vec<i64> {
    if n == 1 {
        return vec![1];
    }
    (0..n)
        .map(|m| match m {
            0 => 2,
            _ if m + 1 == n => n as i64 - 1,
            _ => m as i64 + 1,
        })
        .collect()
}

/// `(-1)^{i-1} Delta_{k_1}^{i-1} alpha` at `(1, 1, 2, ..., n-1)`.
pub fn refined_by_first_difference(n: usize, i: usize) -> BigInt {
    let op = OperatorExpression::delta(n, 0).pow(i as u32 - 1);
    let v = op.apply(&Alpha { arity: n }, &refined_point_first(n)).expect("arity matches");
    if i.is_multiple_of(2) {
        -v
    } else {
        v
    }
}

/// `delta_{k_n}^{i-1} alpha` at `(1, 2, ..., n-1, n-1)`.
pub fn refined_by_last_difference(n: usize, i: usize) -> BigInt {
    let op = OperatorExpression::nabla(n, n - 1).pow(i as u32 - 1);
    op.apply(&Alpha { arity: n }, &refined_point_last(n)).expect("arity matches")
}

/// `(-1)^{i-1} Delta_{k_1}^{i-1} delta_{k_n}^{j-1} alpha` at
/// `(2, 2, 3, ..., n-1, n-1)`. Defined for all `i, j >= 1`; zero once
/// `i > n` or `j > n`.
pub fn doubly_refined_value(n: usize, i: usize, j: usize) -> BigInt {
    let op =
        OperatorExpression::delta(n, 0).pow(i as u32 - 1).mul(&OperatorExpression::nabla(n, n - 1).pow(j as u32 - 1));
    let v = op.apply(&Alpha { arity: n }, &doubly_point(n)).expect("arity matches");
    if i.is_multiple_of(2) {
        -v
    } else {
        v
    }
}

/// Counts monotone triangles with bottom row `1..=n` by the number of 1s
/// on the left edge and the number of `n`s on the right edge.
pub fn triangle_edge_counts(n: usize) -> Vec<Vec<BigInt>> {
    let bottom: Vec<i64> = (1..=n as i64).collect();
    let mut table = vec![vec![BigInt::zero(); n]; n];
    for t in monotone_triangles(&bottom) {
        let ones = t.iter().filter(|r| r[0] == 1).count();
        let last = t.iter().filter(|r| *r.last().expect("nonempty") == n as i64).count();
        table[ones - 1][last - 1] += 1;
    }
    table
}

/// `A_{n,i}` computed by the two difference formulas and by counting
/// triangles; an error if they disagree.
pub fn refined_asm(n: usize) -> Result<RefinedCounts> {
    check_refined_bound(n)?;
    let table = triangle_edge_counts(n);
    let counted: Vec<BigInt> = table.iter().map(|r| r.iter().sum()).collect();
    let first: Vec<BigInt> = (1..=n).map(|i| refined_by_first_difference(n, i)).collect();
    let last: Vec<BigInt> = (1..=n).map(|i| refined_by_last_difference(n, i)).collect();
    if first != counted || last != counted {
        return Err(Error::Inconsistent(format!(
            "refined counts for n = {n}: first-difference {first:?}, last-difference {last:?}, triangles {counted:?}"
        )));
    }
    Ok(RefinedCounts { n, refined: counted, doubly: None })
}

/// [`refined_asm`] together with the doubly refined matrix, computed by the
/// mixed difference formula and checked against triangle counts.
pub fn doubly_refined_asm(n: usize) -> Result<RefinedCounts> {
    let mut out = refined_asm(n)?;
    let table = triangle_edge_counts(n);
    let formula: Vec<Vec<BigInt>> = (1..=n).map(|i| (1..=n).map(|j| doubly_refined_value(n, i, j)).collect()).collect();
    if formula != table {
        return Err(Error::Inconsistent(format!(
            "doubly refined counts for n = {n}: formula {formula:?}, triangles {table:?}"
        )));
    }
    out.doubly = Some(table);
    Ok(out)
}

/// Identities satisfied by `alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AlphaProperty {
    /// `(id + E_{k_{i+1}} E_{k_i}^{-1} S_{k_i,k_{i+1}}) V_{k_i,k_{i+1}} alpha = 0`.
    P1,
    /// `Delta_{k_i}^n alpha = 0`.
    P2,
    /// `alpha(k) = (-1)^{n-1} alpha(k_2, ..., k_n, k_1 - n)`.
    P3,
    /// `e_p(Delta) alpha = 0` and `e_p(delta) alpha = 0` for `p = 1..=n`.
    P4,
    /// The linear system satisfied by `A_{n,i}`.
    #[serde(rename = "linearSystem")]
    LinearSystem,
    /// The recurrence satisfied by the doubly refined numbers.
    #[serde(rename = "doublyRefinedIdentity")]
    DoublyRefinedIdentity,
}

impl AlphaProperty {
    pub const ALL: [AlphaProperty; 6] = [
        AlphaProperty::P1,
        AlphaProperty::P2,
        AlphaProperty::P3,
        AlphaProperty::P4,
        AlphaProperty::LinearSystem,
        AlphaProperty::DoublyRefinedIdentity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlphaProperty::P1 => "P1",
            AlphaProperty::P2 => "P2",
            AlphaProperty::P3 => "P3",
            AlphaProperty::P4 => "P4",
            AlphaProperty::LinearSystem => "linearSystem",
            AlphaProperty::DoublyRefinedIdentity => "doublyRefinedIdentity",
        }
    }
}

impl fmt::Display for AlphaProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlphaProperty {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AlphaProperty::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::OutOfRange(format!("unknown property {s:?}")))
    }
}

/// `V_{x,y} f` at `k`.
fn v_apply(f: &impl LatticeFunction, k: &[i64], x: usize, y: usize) -> BigInt {
    let at = |dx: i64, dy: i64| {
        let mut p = k.to_vec();
        p[x] += dx;
        p[y] += dy;
        f.eval(&p)
    };
    at(-1, 0) + at(0, 1) - at(-1, 1)
}

/// Checks one property of `alpha` in arity `n` over `{lo..=hi}^n`. The two
/// refined identities do not use the grid.
pub fn check_alpha_property(prop: AlphaProperty, n: usize, lo: i64, hi: i64) -> VerificationReport {
    let params = json!({ "property": prop.name(), "n": n, "grid": format!("{lo}..{hi}") });
    let f = Alpha { arity: n };
    match prop {
        AlphaProperty::P1 => run_points(prop.name(), params, &cube(n, lo, hi), |k| {
            let mut out = Vec::new();
            for i in 0..n.saturating_sub(1) {
                let mut swapped = k.clone();
                swapped[i] = k[i + 1] + 1;
                swapped[i + 1] = k[i] - 1;
                let r = v_apply(&f, k, i, i + 1) + v_apply(&f, &swapped, i, i + 1);
                if !r.is_zero() {
                    out.push(Violation::new(k, format!("i = {}: residual {r}", i + 1)));
                }
            }
            out
        }),
        AlphaProperty::P2 => {
            let ops: Vec<OperatorExpression> = (0..n).map(|i| OperatorExpression::delta(n, i).pow(n as u32)).collect();
            run_points(prop.name(), params, &cube(n, lo, hi), |k| {
                ops.iter()
                    .enumerate()
                    .filter_map(|(i, op)| {
                        let r = op.apply(&f, k).expect("arity matches");
                        (!r.is_zero()).then(|| Violation::new(k, format!("i = {}: residual {r}", i + 1)))
                    })
                    .collect()
            })
        }
        AlphaProperty::P3 => run_points(prop.name(), params, &cube(n, lo, hi), |k| {
            let mut rotated: Vec<i64> = k[1..].to_vec();
            rotated.push(k[0] - n as i64);
            let rhs = alpha(&rotated) * parity(n - 1);
            let lhs = alpha(k);
            if lhs == rhs {
                Vec::new()
            } else {
                vec![Violation::new(k, format!("alpha = {lhs}, rotated side = {rhs}"))]
            }
        }),
        AlphaProperty::P4 => {
            let deltas: Vec<OperatorExpression> = (0..n).map(|i| OperatorExpression::delta(n, i)).collect();
            let nablas: Vec<OperatorExpression> = (0..n).map(|i| OperatorExpression::nabla(n, i)).collect();
            let ops: Vec<(String, OperatorExpression)> = (1..=n)
                .flat_map(|p| {
                    [
                        (format!("e_{p}(Delta)"), OperatorExpression::elementary(p, &deltas)),
                        (format!("e_{p}(delta)"), OperatorExpression::elementary(p, &nablas)),
                    ]
                })
                .collect();
            run_points(prop.name(), params, &cube(n, lo, hi), |k| {
                ops.iter()
                    .filter_map(|(name, op)| {
                        let r = op.apply(&f, k).expect("arity matches");
                        (!r.is_zero()).then(|| Violation::new(k, format!("{name}: residual {r}")))
                    })
                    .collect()
            })
        }
        AlphaProperty::LinearSystem => {
            let params = json!({ "property": prop.name(), "n": n });
            let a: Vec<BigInt> = (1..=n).map(|i| refined_by_first_difference(n, i)).collect();
            let rows: Vec<i64> = (1..=n as i64).collect();
            let m = 2 * n as i64 - 1;
            run_points(prop.name(), params, &rows, |&i| {
                let mut rhs = BigInt::zero();
                for kk in i..=n as i64 {
                    let c = binomial(m - i, (kk - i) as usize);
                    rhs += c * &a[kk as usize - 1] * parity((kk + n as i64) as usize);
                }
                let lhs = &a[i as usize - 1];
                if *lhs == rhs {
                    Vec::new()
                } else {
                    vec![Violation::new(&[i], format!("A = {lhs}, right side = {rhs}"))]
                }
            })
        }
        AlphaProperty::DoublyRefinedIdentity => {
            let params = json!({ "property": prop.name(), "n": n });
            let top = if n >= 2 { n.min(2 * n - 3) } else { 0 };
            let idx: Vec<(usize, usize)> = (1..=top).flat_map(|i| (1..=top).map(move |j| (i, j))).collect();
            let span = 2 * n;
            let table: Vec<Vec<BigInt>> =
                (1..=span).map(|i| (1..=span).map(|j| doubly_refined_value(n, i, j)).collect()).collect();
            let abar = |i: usize, j: usize| table[i - 1][j - 1].clone();
            run_points(prop.name(), params, &idx, |&(i, j)| {
                let lhs = abar(i + 1, j + 1) - abar(i, j);
                let mut rhs = BigInt::zero();
                let (pi, qj) = (2 * n - 3 - i, 2 * n - 3 - j);
                for p in 0..=pi {
                    for q in 0..=qj {
                        let c = binomial(pi as i64, p) * binomial(qj as i64, q) * parity(i + j + p + q);
                        rhs += c * (abar(q + j, p + i) - abar(q + j + 1, p + i + 1));
                    }
                }
                if lhs == rhs {
                    Vec::new()
                } else {
                    vec![Violation::new(&[i as i64, j as i64], format!("left {lhs}, right {rhs}"))]
                }
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::weakly_increasing;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(&[5]), big(1));
        assert_eq!(alpha(&[0, 2]), big(3));
        assert_eq!(alpha(&[2, 0]), big(-1));
        assert_eq!(alpha(&[1, 2, 3]), big(7));
        assert_eq!(alpha(&[1, 2, 3, 4]), big(42));
        for k in cube(2, -4, 4) {
            assert_eq!(alpha(&k), big(k[1] - k[0] + 1));
        }
    }

    #[test]
    fn alpha_matches_triangles_on_strict_rows() {
        for n in 1..=4 {
            for k in cube(n, 0, 4).into_iter().filter(|k| k.windows(2).all(|w| w[0] < w[1])) {
                assert_eq!(alpha(&k), big(monotone_triangles(&k).len() as i64), "k = {k:?}");
            }
        }
    }

    #[test]
    fn strict_row_examples() {
        assert_eq!(strict_row_patterns(&[0, 0]).unwrap(), big(1));
        assert_eq!(strict_row_patterns(&[1, 2, 3]).unwrap(), big(7));
        assert_eq!(strict_row_patterns(&[0, 0, 1]).unwrap(), alpha(&[0, 0, 1]));
        assert!(strict_row_patterns(&[1, 0]).is_err());
        for n in 1..=4 {
            for k in weakly_increasing(n, 0, 3) {
                let s = strict_row_patterns(&k).unwrap();
                assert_eq!(s, alpha(&k), "k = {k:?}");
                assert_eq!(s, big(monotone_triangles(&k).len() as i64));
            }
        }
    }

    #[test]
    fn extension_examples() {
        let objs: Vec<_> = enumerate_extension(Extension::First, &[1, 3]).collect();
        assert_eq!(objs.len(), 3);
        assert!(objs.iter().all(|t| t.sign == 1));
        let tops: BTreeSet<(i64, bool)> = objs
            .iter()
            .map(|t| {
                let Decorations::First { left_stars } = &t.decorations else { panic!() };
                (t.rows[0][0], !left_stars.is_empty())
            })
            .collect();
        assert_eq!(tops, BTreeSet::from([(1, true), (2, false), (3, false)]));

        let objs: Vec<_> = enumerate_extension(Extension::Fourth, &[4]).collect();
        let signs: Vec<i32> = objs.iter().map(|t| t.sign).collect();
        assert_eq!(signs, vec![1, 1, -1]);

        let total: i64 = enumerate_extension(Extension::Third, &[1, 2, 3]).map(|t| t.sign as i64).sum();
        assert_eq!(total, 7);
    }

    #[test]
    fn extensions_agree_with_alpha() {
        for n in 1..=3 {
            for k in cube(n, -2, 2) {
                let a = alpha(&k);
                for v in Extension::ALL {
                    assert_eq!(count_extension(v, &k), a, "variant {v:?}, k = {k:?}");
                    let streamed: i64 = enumerate_extension(v, &k).map(|t| t.sign as i64).sum();
                    assert_eq!(big(streamed), a, "stream, variant {v:?}, k = {k:?}");
                }
            }
        }
    }

    #[test]
    fn plain_enumeration_for_strict_rows() {
        for k in [vec![1, 2, 3], vec![0, 2, 3, 5], vec![1, 3]] {
            let plain = monotone_triangles(&k);
            for v in [Extension::First, Extension::Second] {
                let objs: Vec<_> = enumerate_extension(v, &k).collect();
                assert!(objs.iter().all(|t| t.sign == 1));
                let rows: BTreeSet<_> = objs.iter().map(|t| t.rows.clone()).collect();
                assert_eq!(rows.len(), objs.len());
                assert_eq!(rows, plain.iter().cloned().collect());
            }
        }
    }

    #[test]
    fn third_extension_relaxation() {
        for k in cube(4, -1, 2) {
            assert_eq!(count_extension_with(Extension::Third, &k, true), count_extension(Extension::Third, &k));
        }
    }

    #[test]
    fn entries_stay_between_bottom_extremes() {
        for v in Extension::ALL {
            for k in cube(3, -2, 2) {
                let (lo, hi) = (*k.iter().min().unwrap(), *k.iter().max().unwrap());
                for t in enumerate_extension(v, &k) {
                    assert!(t.rows.iter().flatten().all(|&a| lo <= a && a <= hi));
                }
            }
        }
    }

    #[test]
    fn operator_forms() {
        assert_eq!(alpha_via_operator(&[7], OperatorForm::ThreeTerm).unwrap(), big(1));
        assert_eq!(alpha_via_operator(&[0, 2], OperatorForm::DeltaDelta).unwrap(), big(3));
        for form in [OperatorForm::ThreeTerm, OperatorForm::DeltaDelta] {
            assert_eq!(alpha_via_operator(&[1, 2, 3], form).unwrap(), big(7));
        }
        assert_eq!(
            alpha_operator(4, OperatorForm::ThreeTerm, DEFAULT_MAX_EXPANSION).unwrap(),
            alpha_operator(4, OperatorForm::DeltaDelta, DEFAULT_MAX_EXPANSION).unwrap()
        );
        assert!(matches!(
            alpha_operator(8, OperatorForm::ThreeTerm, DEFAULT_MAX_EXPANSION),
            Err(Error::BoundExceeded(_))
        ));
    }

    #[test]
    fn refined_examples() {
        assert_eq!(refined_asm(1).unwrap().refined, vec![big(1)]);
        assert_eq!(refined_asm(3).unwrap().refined, vec![big(2), big(3), big(2)]);
        assert_eq!(refined_asm(4).unwrap().refined, vec![big(7), big(14), big(14), big(7)]);
        assert!(refined_asm(0).is_err());
        assert!(refined_asm(MAX_REFINED_N + 1).is_err());
    }

    #[test]
    fn doubly_refined_examples() {
        assert_eq!(doubly_refined_asm(1).unwrap().doubly.unwrap(), vec![vec![big(1)]]);
        assert_eq!(doubly_refined_asm(2).unwrap().doubly.unwrap(), vec![vec![big(0), big(1)], vec![big(1), big(0)]]);
        for n in 3..=4 {
            let r = doubly_refined_asm(n).unwrap();
            let d = r.doubly.unwrap();
            let total: BigInt = d.iter().flatten().sum();
            assert_eq!(total, alpha(&(1..=n as i64).collect::<Vec<_>>()));
            for i in 0..n {
                let row: BigInt = d[i].iter().sum();
                assert_eq!(row, r.refined[i]);
                for j in 0..n {
                    assert_eq!(d[i][j], d[j][i]);
                    assert_eq!(d[i][j], d[n - 1 - i][n - 1 - j]);
                }
            }
        }
    }

    #[test]
    fn properties_small() {
        for n in 1..=3 {
            for prop in AlphaProperty::ALL {
                let r = check_alpha_property(prop, n, -2, 2);
                assert!(r.passed(), "{prop} n = {n}: {:?}", r.violations);
            }
        }
        let r = check_alpha_property(AlphaProperty::P3, 2, -2, 2);
        assert_eq!(r.points_checked, 25);
    }

    #[test]
    fn json_shapes() {
        let r = refined_asm(3).unwrap();
        assert_eq!(serde_json::to_string(&r).unwrap(), r#"{"n":3,"refined":["2","3","2"],"doubly":null}"#);
        let t = enumerate_extension(Extension::Fourth, &[0]).next().unwrap();
        let v = serde_json::to_value(&t).unwrap();
        assert_eq!(v["decorations"]["variant"], "fourth");
        assert_eq!(v["decorations"]["arrows"][0][0], "<-");
    }
}
