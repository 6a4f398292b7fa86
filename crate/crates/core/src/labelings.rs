//! Admissible labelings of `n`-trees and signed counts of Gelfand-Tsetlin
//! tree sequences.
//!
//! Labels are shifted: vertex `i` carries `k_i + i`, edge `j'` carries
//! `l_j + j`. For an edge `j' = (p, q)` the label `l_j + j` must lie in
//! `[min, max)` of the two endpoint labels; the edge is an inversion when it
//! points from the larger label to the smaller one. Equal endpoint labels
//! admit no labeling at all.
//!
//! Counts are memoized per `(level, labels)` in concurrent maps so a single
//! [`SignedCounter`] can be shared by parallel workers.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use dashmap::DashMap;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::LatticeFunction;
use crate::perm;
use crate::trees::{NTree, TreeSequence};

/// Shifted vertex labels `k`; the actual label of vertex `i` is `k_i + i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ShiftedLabels(pub Vec<i64>);

impl ShiftedLabels {
    pub fn new(k: Vec<i64>) -> Self {
        ShiftedLabels(k)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    /// Actual labels `k_i + i`.
    pub fn actual(&self) -> Vec<i64> {
        actual_labels(&self.0)
    }
}

impl From<Vec<i64>> for ShiftedLabels {
    fn from(k: Vec<i64>) -> Self {
        ShiftedLabels(k)
    }
}

fn actual_labels(k: &[i64]) -> Vec<i64> {
    k.iter().enumerate().map(|(idx, &v)| v + idx as i64 + 1).collect()
}

/// An admissible shifted edge labeling together with its inversion set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AdmissibleLabeling {
    pub l: Vec<i64>,
    pub inversions: BTreeSet<usize>,
}

impl AdmissibleLabeling {
    pub fn sign(&self) -> i32 {
        parity(self.inversions.len())
    }
}

fn parity(count: usize) -> i32 {
    if count.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Range of a shifted edge label: `lo..=hi` plus the inversion flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct EdgeRange {
    lo: i64,
    hi: i64,
    inversion: bool,
}

/// Per-edge ranges of shifted edge labels, or `None` if some edge has equal
/// endpoint labels.
fn edge_ranges(tree: &NTree, k: &[i64]) -> Option<Vec<EdgeRange>> {
    let labels = actual_labels(k);
    tree.edges()
        .iter()
        .enumerate()
        .map(|(idx, e)| {
            let j = idx as i64 + 1;
            let (a, b) = (labels[e.tail - 1], labels[e.head - 1]);
            if a == b {
                return None;
            }
            Some(EdgeRange { lo: a.min(b) - j, hi: a.max(b) - 1 - j, inversion: a > b })
        })
        .collect()
}

/// Visits every point of the box `ranges` in lexicographic order.
fn for_each_in_box(ranges: &[(i64, i64)], mut visit: impl FnMut(&[i64])) {
    if ranges.iter().any(|&(lo, hi)| lo > hi) {
        return;
    }
    let mut point: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    loop {
        visit(&point);
        let mut idx = ranges.len();
        loop {
            if idx == 0 {
                return;
            }
            idx -= 1;
            if point[idx] < ranges[idx].1 {
                point[idx] += 1;
                for (p, r) in point.iter_mut().zip(ranges).skip(idx + 1) {
                    *p = r.0;
                }
                break;
            }
        }
    }
}

/// All admissible labelings of `(tree, k)` in lexicographic order of `l`.
pub fn admissible_labelings(tree: &NTree, k: &ShiftedLabels) -> Vec<AdmissibleLabeling> {
    check_len(tree.n(), k.len());
    let Some(ranges) = edge_ranges(tree, k.as_slice()) else {
        return Vec::new();
    };
    let inversions: BTreeSet<usize> =
        ranges.iter().enumerate().filter(|(_, r)| r.inversion).map(|(idx, _)| idx + 1).collect();
    let bounds: Vec<(i64, i64)> = ranges.iter().map(|r| (r.lo, r.hi)).collect();
    let mut out = Vec::new();
    for_each_in_box(&bounds, |l| out.push(AdmissibleLabeling { l: l.to_vec(), inversions: inversions.clone() }));
    out
}

fn check_len(expected: usize, got: usize) {
    assert_eq!(expected, got, "label vector length must match the vertex count");
}

/// A Gelfand-Tsetlin tree sequence: `levels[i - 1] = l_i` and
/// `inversions[i - 1]` is the inversion set of `T_i` (empty for `T_1`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GTTreeSequence {
    pub levels: Vec<Vec<i64>>,
    pub inversions: Vec<BTreeSet<usize>>,
    pub sign: i32,
}

impl GTTreeSequence {
    /// Checks admissibility at every level and recomputes the sign.
    pub fn is_valid_for(&self, ts: &TreeSequence) -> bool {
        let n = ts.order();
        if self.levels.len() != n || self.inversions.len() != n {
            return false;
        }
        if self.levels.iter().enumerate().any(|(idx, l)| l.len() != idx + 1) {
            return false;
        }
        let mut total = 0;
        for i in 2..=n {
            let Some(ranges) = edge_ranges(ts.tree(i), &self.levels[i - 1]) else {
                return false;
            };
            let mut inv = BTreeSet::new();
            for (idx, (r, &l)) in ranges.iter().zip(&self.levels[i - 2]).enumerate() {
                if l < r.lo || l > r.hi {
                    return false;
                }
                if r.inversion {
                    inv.insert(idx + 1);
                }
            }
            if inv != self.inversions[i - 1] {
                return false;
            }
            total += inv.len();
        }
        self.inversions[0].is_empty() && self.sign == parity(total) * ts.sign()
    }

    /// One JSON line: `{"levels": [...], "inversions": [...], "sign": s}`.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

/// Memoized signed counter for a fixed tree sequence.
///
/// `level_count(i, l)` is the signed count of partial sequences
/// `(l_1, ..., l_i)` with `l_i = l`, without the factor `sgn T`.
pub struct SignedCounter {
    ts: TreeSequence,
    sign: i32,
    memo: DashMap<(usize, Vec<i64>), BigInt>,
    cap: Option<usize>,
}

impl SignedCounter {
    pub fn new(ts: TreeSequence) -> Self {
        let sign = ts.sign();
        SignedCounter { ts, sign, memo: DashMap::new(), cap: None }
    }

    /// Stops caching new entries once the memo holds `cap` of them.
    pub fn with_cap(ts: TreeSequence, cap: usize) -> Self {
        SignedCounter { cap: Some(cap), ..SignedCounter::new(ts) }
    }

    pub fn tree_sequence(&self) -> &TreeSequence {
        &self.ts
    }

    /// `L_n(T, k)`.
    pub fn count(&self, k: &[i64]) -> BigInt {
        check_len(self.ts.order(), k.len());
        self.level_count(k.len(), k) * self.sign
    }

    pub fn level_count(&self, level: usize, l: &[i64]) -> BigInt {
        if level <= 1 {
            return BigInt::one();
        }
        let key = (level, l.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let value = match edge_ranges(self.ts.tree(level), l) {
            None => BigInt::zero(),
            Some(ranges) => {
                let inv = ranges.iter().filter(|r| r.inversion).count();
                let bounds: Vec<(i64, i64)> = ranges.iter().map(|r| (r.lo, r.hi)).collect();
                let mut sum = BigInt::zero();
                for_each_in_box(&bounds, |below| sum += self.level_count(level - 1, below));
                sum * parity(inv)
            }
        };
        if self.cap.is_none_or(|c| self.memo.len() < c) {
            self.memo.insert(key, value.clone());
        }
        value
    }

    pub fn cache_len(&self) -> usize {
        self.memo.len()
    }
}

impl LatticeFunction for SignedCounter {
    fn arity(&self) -> usize {
        self.ts.order()
    }

    fn eval(&self, point: &[i64]) -> BigInt {
        self.count(point)
    }
}

/// `L_n(T, k)`: the signed number of Gelfand-Tsetlin tree sequences.
pub fn signed_count(ts: &TreeSequence, k: &ShiftedLabels) -> BigInt {
    SignedCounter::new(ts.clone()).count(k.as_slice())
}

/// Lazily streams every Gelfand-Tsetlin tree sequence of `(ts, k)`.
///
/// Order: lexicographic in `(l_{n-1}, l_{n-2}, ..., l_1)`, so the top level
/// varies slowest and `l_1` fastest.
pub fn enumerate_sequences(ts: &TreeSequence, k: &ShiftedLabels) -> SequenceStream {
    check_len(ts.order(), k.len());
    SequenceStream::new(ts.clone(), k.0.clone())
}

pub struct SequenceStream {
    ts: TreeSequence,
    sign: i32,
    levels: Vec<Vec<i64>>,
    // frames[d] enumerates l_{n-1-d}; each is (candidates, next index)
    frames: Vec<(Vec<AdmissibleLabeling>, usize)>,
    started: bool,
    finished: bool,
}

impl SequenceStream {
    fn new(ts: TreeSequence, k: Vec<i64>) -> Self {
        let sign = ts.sign();
        SequenceStream { ts, sign, levels: vec![k], frames: Vec::new(), started: false, finished: false }
    }

    fn n(&self) -> usize {
        self.ts.order()
    }

    fn emit(&self) -> GTTreeSequence {
        let n = self.n();
        let mut levels: Vec<Vec<i64>> = self.levels.iter().rev().cloned().collect();
        levels.truncate(n);
        let mut inversions = vec![BTreeSet::new(); n];
        let mut total = 0;
        for (d, (cands, idx)) in self.frames.iter().enumerate() {
            let inv = &cands[idx - 1].inversions;
            total += inv.len();
            inversions[n - 1 - d] = inv.clone();
        }
        GTTreeSequence { levels, inversions, sign: parity(total) * self.sign }
    }

    /// Pushes frames until the bottom is reached; false if some level is empty.
    fn descend(&mut self) -> bool {
        while self.levels.len() < self.n() {
            let top = self.levels.len();
            let level = self.n() - top + 1;
            let cands = admissible_labelings(self.ts.tree(level), &ShiftedLabels(self.levels[top - 1].clone()));
            if cands.is_empty() {
                return false;
            }
            self.levels.push(cands[0].l.clone());
            self.frames.push((cands, 1));
        }
        true
    }

    /// Advances the deepest frame that still has candidates.
    fn advance(&mut self) -> bool {
        while let Some((cands, idx)) = self.frames.last_mut() {
            if *idx < cands.len() {
                let next = cands[*idx].l.clone();
                *idx += 1;
                *self.levels.last_mut().expect("frame has a level") = next;
                return true;
            }
            self.frames.pop();
            self.levels.pop();
        }
        false
    }
}

impl Iterator for SequenceStream {
    type Item = GTTreeSequence;

    fn next(&mut self) -> Option<GTTreeSequence> {
        if self.finished {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.descend() {
                return Some(self.emit());
            }
        }
        loop {
            if !self.advance() {
                self.finished = true;
                return None;
            }
            if self.descend() {
                return Some(self.emit());
            }
        }
    }
}

/// A weakly `R`-admissible labeling with its assignment `r -> i(r)`, the
/// dominating endpoints of edges claimed by both endpoints, and its sign.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeakAdmissibleWitness {
    pub l: Vec<i64>,
    pub assignment: BTreeMap<usize, usize>,
    pub dominating: BTreeMap<usize, usize>,
    pub inversions: BTreeSet<usize>,
    pub sign: i32,
    /// The assignment is injective (strict `R`-admissibility).
    pub injective: bool,
}

/// All weakly `R`-admissible witnesses of `(tree, k)`.
///
/// Every combination of dominating endpoints is listed separately.
pub fn weak_r_admissible(tree: &NTree, k: &ShiftedLabels, r: &BTreeSet<usize>) -> Vec<WeakAdmissibleWitness> {
    check_len(tree.n(), k.len());
    let mut out = Vec::new();
    let choices: Vec<(usize, Vec<usize>)> = r.iter().map(|&v| (v, tree.incident_edges(v))).collect();
    let option_lists: Vec<Vec<usize>> = choices.iter().map(|(_, c)| c.clone()).collect();
    for pick in cartesian(&option_lists) {
        let assignment: BTreeMap<usize, usize> = choices.iter().map(|(v, _)| *v).zip(pick).collect();
        witnesses_for_assignment(tree, k.as_slice(), &assignment, &mut out);
    }
    out
}

fn cartesian(lists: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut acc: Vec<Vec<usize>> = vec![Vec::new()];
    for list in lists {
        acc = acc
            .into_iter()
            .flat_map(|prefix| {
                list.iter().map(move |&x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    acc
}

/// Witnesses whose assignment equals `assignment` (vertex -> edge name).
fn witnesses_for_assignment(
    tree: &NTree,
    k: &[i64],
    assignment: &BTreeMap<usize, usize>,
    out: &mut Vec<WeakAdmissibleWitness>,
) {
    let labels = actual_labels(k);
    let label = |v: usize| labels[v - 1];
    let m = tree.edges().len();
    let mut preimage: Vec<Vec<usize>> = vec![Vec::new(); m + 1];
    for (&v, &e) in assignment {
        if !tree.edge(e).map(|ed| ed.touches(v)).unwrap_or(false) {
            return;
        }
        preimage[e].push(v);
    }
    let mut fixed: Vec<Option<i64>> = vec![None; m + 1];
    let mut bounds = Vec::new();
    let mut free = Vec::new();
    for j in 1..=m {
        let e = tree.edges()[j - 1];
        let (a, b) = (label(e.tail), label(e.head));
        if preimage[j].is_empty() {
            if a == b {
                return;
            }
            let (min_v, min_label) = if a < b { (e.tail, a) } else { (e.head, b) };
            let lo = min_label + i64::from(assignment.contains_key(&min_v));
            let hi = a.max(b) - 1;
            if lo > hi {
                return;
            }
            bounds.push((lo - j as i64, hi - j as i64));
            free.push(j);
        } else {
            let value = label(preimage[j][0]);
            if preimage[j].iter().any(|&v| label(v) != value) {
                return;
            }
            fixed[j] = Some(value - j as i64);
        }
    }
    // each r must be the only vertex whose label sits on an image edge at r other than i(r)
    for (&v, &e) in assignment {
        for other in tree.incident_edges(v) {
            if other != e {
                if let Some(val) = fixed[other] {
                    if val + other as i64 == label(v) {
                        return;
                    }
                }
            }
        }
    }
    let shared: Vec<usize> = (1..=m).filter(|&j| preimage[j].len() == 2).collect();
    let injective = shared.is_empty();
    for_each_in_box(&bounds, |values| {
        let mut l = vec![0i64; m];
        for (j, v) in free.iter().zip(values) {
            l[j - 1] = *v;
        }
        for j in 1..=m {
            if let Some(v) = fixed[j] {
                l[j - 1] = v;
            }
        }
        for mask in 0u32..(1 << shared.len()) {
            let dominating: BTreeMap<usize, usize> = shared
                .iter()
                .enumerate()
                .map(|(bit, &j)| {
                    let e = tree.edges()[j - 1];
                    (j, if mask & (1 << bit) == 0 { e.tail } else { e.head })
                })
                .collect();
            let mut inversions = BTreeSet::new();
            let mut minima = 0usize;
            for j in 1..=m {
                let e = tree.edges()[j - 1];
                let (a, b) = (label(e.tail), label(e.head));
                let max_v = if a != b {
                    if a > b {
                        e.tail
                    } else {
                        e.head
                    }
                } else if preimage[j].len() == 1 {
                    preimage[j][0]
                } else {
                    dominating[&j]
                };
                if e.tail == max_v {
                    inversions.insert(j);
                }
                minima += preimage[j].iter().filter(|&&v| v != max_v).count();
            }
            let sign = parity(inversions.len() + minima);
            out.push(WeakAdmissibleWitness {
                l: l.clone(),
                assignment: assignment.clone(),
                dominating,
                inversions,
                sign,
                injective,
            });
        }
    });
}

/// Which restricted family to count at level `m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "camelCase")]
pub enum RestrictionSpec {
    /// `L_{n,m,R}` for a vertex set `R` of `T_m`.
    VertexSet { m: usize, r: BTreeSet<usize> },
    /// `L_{n,m,rho}`: the sum of `L_{n,m,R}` over `rho`-subsets `R` of `[m]`.
    Size { m: usize, rho: usize },
    /// `L^{R'}_{n,m}` for an edge set `R'` of `T_m`.
    EdgeSet { m: usize, r: BTreeSet<usize> },
}

impl RestrictionSpec {
    pub fn level(&self) -> usize {
        match self {
            RestrictionSpec::VertexSet { m, .. }
            | RestrictionSpec::Size { m, .. }
            | RestrictionSpec::EdgeSet { m, .. } => *m,
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        let m = self.level();
        match self {
            RestrictionSpec::VertexSet { r, .. } => {
                if m < 1 || m > n || r.iter().any(|&v| v < 1 || v > m) {
                    return Err(Error::OutOfRange(format!("vertex set {r:?} at level {m} with n = {n}")));
                }
            }
            RestrictionSpec::Size { rho, .. } => {
                if m < 1 || m > n || *rho > m {
                    return Err(Error::OutOfRange(format!("rho = {rho} at level {m} with n = {n}")));
                }
            }
            RestrictionSpec::EdgeSet { r, .. } => {
                if m < 2 || m > n || r.iter().any(|&e| e < 1 || e >= m) {
                    return Err(Error::OutOfRange(format!("edge set {r:?} at level {m} with n = {n}")));
                }
            }
        }
        Ok(())
    }
}

/// Restrict `T_{level}` so that the listed pairs of edges get distinct labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistinctFilter {
    pub level: usize,
    pub pairs: Vec<(usize, usize)>,
}

impl DistinctFilter {
    fn accepts(&self, l: &[i64]) -> bool {
        self.pairs.iter().all(|&(a, b)| l[a - 1] + a as i64 != l[b - 1] + b as i64)
    }
}

/// Signed count of a restricted family.
pub fn signed_count_restricted(ts: &TreeSequence, k: &ShiftedLabels, spec: &RestrictionSpec) -> Result<BigInt> {
    let counter = SignedCounter::new(ts.clone());
    restricted_with(&counter, k.as_slice(), spec, None)
}

/// [`signed_count_restricted`] reusing a counter's memo for the unrestricted
/// lower levels, with an optional distinct-labels filter.
pub fn restricted_with(
    counter: &SignedCounter,
    k: &[i64],
    spec: &RestrictionSpec,
    filter: Option<&DistinctFilter>,
) -> Result<BigInt> {
    let ts = counter.tree_sequence();
    let n = ts.order();
    if k.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: k.len() });
    }
    spec.validate(n)?;
    if let Some(f) = filter {
        if f.level < 2 || f.level > spec.level().max(2) || f.level > n {
            return Err(Error::OutOfRange(format!("filter level {} for restriction level {}", f.level, spec.level())));
        }
    }
    let m = spec.level();
    let total = match spec {
        RestrictionSpec::VertexSet { r, .. } => {
            let rule = LevelRule::Vertex(r.clone());
            Restricted { counter, m, rule: &rule, filter, memo: HashMap::new() }.run(k)
        }
        RestrictionSpec::Size { rho, .. } => {
            let vertices: Vec<usize> = (1..=m).collect();
            let mut sum = BigInt::zero();
            for subset in perm::subsets_of_size(&vertices, *rho) {
                let rule = LevelRule::Vertex(subset.into_iter().collect());
                sum += Restricted { counter, m, rule: &rule, filter, memo: HashMap::new() }.run(k);
            }
            sum
        }
        RestrictionSpec::EdgeSet { r, .. } => {
            let rule = LevelRule::Edge(r.clone());
            Restricted { counter, m, rule: &rule, filter, memo: HashMap::new() }.run(k)
        }
    };
    Ok(total * ts.sign())
}

enum LevelRule {
    Vertex(BTreeSet<usize>),
    Edge(BTreeSet<usize>),
}

struct Restricted<'a> {
    counter: &'a SignedCounter,
    m: usize,
    rule: &'a LevelRule,
    filter: Option<&'a DistinctFilter>,
    memo: HashMap<(usize, Vec<i64>), BigInt>,
}

impl Restricted<'_> {
    fn run(&mut self, k: &[i64]) -> BigInt {
        self.level(k.len(), k)
    }

    fn filter_at(&self, level: usize, l: &[i64]) -> bool {
        match self.filter {
            Some(f) if f.level == level => f.accepts(l),
            _ => true,
        }
    }

    fn level(&mut self, i: usize, l: &[i64]) -> BigInt {
        let filter_below = self.filter.is_some_and(|f| f.level <= i);
        if i < self.m && !filter_below {
            return self.counter.level_count(i, l);
        }
        if i == 1 && self.m != 1 {
            return BigInt::one();
        }
        let key = (i, l.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let tree = self.counter.tree_sequence().tree(i).clone();
        let mut sum = BigInt::zero();
        if i == self.m {
            for w in self.level_witnesses(&tree, l) {
                if self.filter_at(i, &w.l) {
                    sum += self.level(i - 1, &w.l) * w.sign;
                }
            }
        } else {
            for a in admissible_labelings(&tree, &ShiftedLabels(l.to_vec())) {
                if self.filter_at(i, &a.l) {
                    sum += self.level(i - 1, &a.l) * a.sign();
                }
            }
        }
        self.memo.insert(key, sum.clone());
        sum
    }

    fn level_witnesses(&self, tree: &NTree, l: &[i64]) -> Vec<WeakAdmissibleWitness> {
        match self.rule {
            LevelRule::Vertex(r) => weak_r_admissible(tree, &ShiftedLabels(l.to_vec()), r),
            LevelRule::Edge(edges) => edge_admissible(tree, l, edges),
        }
    }
}

/// `R'`-edge-admissible witnesses: an injective choice `t(r)` of an endpoint
/// of each edge `r'` in `R'`, then a strict `t(R')`-admissible labeling whose
/// assignment is `t^{-1}`.
fn edge_admissible(tree: &NTree, k: &[i64], edges: &BTreeSet<usize>) -> Vec<WeakAdmissibleWitness> {
    let endpoint_lists: Vec<Vec<usize>> = edges
        .iter()
        .map(|&e| {
            let ed = tree.edge(e).expect("edge set validated");
            vec![ed.tail, ed.head]
        })
        .collect();
    let mut out = Vec::new();
    for pick in cartesian(&endpoint_lists) {
        let distinct: BTreeSet<usize> = pick.iter().copied().collect();
        if distinct.len() != pick.len() {
            continue;
        }
        let assignment: BTreeMap<usize, usize> = pick.into_iter().zip(edges.iter().copied()).collect();
        witnesses_for_assignment(tree, k, &assignment, &mut out);
    }
    out
}
