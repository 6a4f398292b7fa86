//! Generalized Gelfand-Tsetlin patterns.
//!
//! A pattern with bottom row `k` is stored top row first: `rows[i - 1]` is
//! row `i` and has `i` entries, `rows[n - 1] = k`. Entry `a_{i,j}` must lie in
//! the generalized interval `[a_{i+1,j}, a_{i+1,j+1}]`; it is an inversion
//! when that interval is.
//!
//! Rows are used as shifted labels without any offset: row `i` is level `i`
//! of a tree sequence over the basic trees, so the vertex label of position
//! `j` is `a_{i,j} + j`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intervals::{interval, GeneralizedInterval};
use crate::labelings::GTTreeSequence;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PatternJson", into = "PatternJson")]
pub struct GTPattern {
    rows: Vec<Vec<i64>>,
    inversions: BTreeSet<(usize, usize)>,
    sign: i32,
}

#[derive(Serialize, Deserialize)]
struct PatternJson {
    rows: Vec<Vec<i64>>,
    sign: i32,
}

impl TryFrom<PatternJson> for GTPattern {
    type Error = Error;

    fn try_from(raw: PatternJson) -> Result<Self> {
        let p = GTPattern::from_rows(raw.rows)?;
        if p.sign != raw.sign {
            return Err(Error::Precondition(format!("stated sign {} but the pattern has sign {}", raw.sign, p.sign)));
        }
        Ok(p)
    }
}

impl From<GTPattern> for PatternJson {
    fn from(p: GTPattern) -> Self {
        PatternJson { rows: p.rows, sign: p.sign }
    }
}

fn parent_interval(below: &[i64], j: usize) -> GeneralizedInterval {
    interval(below[j], below[j + 1])
}

impl GTPattern {
    /// Validates the rows (top first) and computes inversions and sign.
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::OutOfRange("a pattern needs at least one row".into()));
        }
        for (idx, row) in rows.iter().enumerate() {
            if row.len() != idx + 1 {
                return Err(Error::LengthMismatch { expected: idx + 1, got: row.len() });
            }
        }
        let mut inversions = BTreeSet::new();
        for i in 1..rows.len() {
            for j in 0..i {
                let iv = parent_interval(&rows[i], j);
                if !iv.contains(rows[i - 1][j]) {
                    return Err(Error::Precondition(format!(
                        "entry ({i},{}) = {} is outside [{}, {}]",
                        j + 1,
                        rows[i - 1][j],
                        iv.x,
                        iv.y
                    )));
                }
                if iv.is_inversion() {
                    inversions.insert((i, j + 1));
                }
            }
        }
        let sign = if inversions.len() % 2 == 0 { 1 } else { -1 };
        Ok(GTPattern { rows, inversions, sign })
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }

    pub fn bottom(&self) -> &[i64] {
        self.rows.last().expect("at least one row")
    }

    /// Inverted positions `(i, j)`, 1-based.
    pub fn inversions(&self) -> &BTreeSet<(usize, usize)> {
        &self.inversions
    }

    pub fn sign(&self) -> i32 {
        self.sign
    }

    /// `a_{i,j}` with 1-based indices.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.rows[i - 1][j - 1]
    }

    /// The same data as a tree sequence over the basic trees.
    pub fn to_tree_sequence(&self) -> GTTreeSequence {
        let n = self.order();
        let mut inversions = vec![BTreeSet::new(); n];
        for &(i, j) in &self.inversions {
            inversions[i].insert(j);
        }
        GTTreeSequence { levels: self.rows.clone(), inversions, sign: self.sign }
    }

    pub fn from_tree_sequence(seq: &GTTreeSequence) -> Result<Self> {
        let p = GTPattern::from_rows(seq.levels.clone())?;
        if p.sign != seq.sign {
            return Err(Error::Precondition("sign does not match the pattern".into()));
        }
        Ok(p)
    }

    pub fn is_classical(&self) -> bool {
        self.inversions.is_empty() && self.rows.iter().flatten().all(|&a| a >= 0)
    }

    /// The semistandard tableau: the cells of the skew shape
    /// `(a_{i,i}, ..., a_{i,1}) / (a_{i-1,i-1}, ..., a_{i-1,1})` get entry `i`.
    pub fn to_ssyt(&self) -> Result<Ssyt> {
        if !self.inversions.is_empty() {
            return Err(Error::NotClassical("pattern has inversions".into()));
        }
        if self.rows.iter().flatten().any(|&a| a < 0) {
            return Err(Error::NotClassical("pattern has negative entries".into()));
        }
        let n = self.order();
        let shape: Vec<usize> = self.bottom().iter().rev().map(|&a| a as usize).collect();
        let mut rows: Vec<Vec<u32>> = vec![Vec::new(); n];
        for i in 1..=n {
            let lam: Vec<usize> = self.rows[i - 1].iter().rev().map(|&a| a as usize).collect();
            for (r, &len) in lam.iter().enumerate() {
                while rows[r].len() < len {
                    rows[r].push(i as u32);
                }
            }
        }
        Ssyt::new(shape, rows)
    }

    /// Inverse of [`GTPattern::to_ssyt`] for a tableau with entries in `1..=n`.
    pub fn from_ssyt(t: &Ssyt, n: usize) -> Result<Self> {
        if t.shape.iter().filter(|&&s| s > 0).count() > n {
            return Err(Error::InvalidTableau(format!("more than {n} nonempty rows")));
        }
        if t.rows.iter().flatten().any(|&e| e < 1 || e as usize > n) {
            return Err(Error::InvalidTableau(format!("entries must lie in 1..={n}")));
        }
        let mut rows = Vec::with_capacity(n);
        for i in 1..=n {
            let lam: Vec<i64> = (0..i)
                .map(|r| t.rows.get(r).map_or(0, |row| row.iter().filter(|&&e| e as usize <= i).count() as i64))
                .collect();
            rows.push(lam.into_iter().rev().collect());
        }
        GTPattern::from_rows(rows)
    }
}

/// A semistandard Young tableau stored row by row with its shape.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SsytJson", into = "SsytJson")]
pub struct Ssyt {
    shape: Vec<usize>,
    rows: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct SsytJson {
    shape: Vec<usize>,
    rows: Vec<Vec<u32>>,
}

impl TryFrom<SsytJson> for Ssyt {
    type Error = Error;

    fn try_from(raw: SsytJson) -> Result<Self> {
        Ssyt::new(raw.shape, raw.rows)
    }
}

impl From<Ssyt> for SsytJson {
    fn from(t: Ssyt) -> Self {
        SsytJson { shape: t.shape, rows: t.rows }
    }
}

impl Ssyt {
    /// Checks shape, row weak increase and column strict increase.
    /// Shape parts may be zero; `rows` may omit trailing empty rows.
    pub fn new(shape: Vec<usize>, mut rows: Vec<Vec<u32>>) -> Result<Self> {
        if shape.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidTableau("shape is not weakly decreasing".into()));
        }
        if rows.len() > shape.len() {
            return Err(Error::InvalidTableau("more rows than shape parts".into()));
        }
        rows.resize(shape.len(), Vec::new());
        for (r, row) in rows.iter().enumerate() {
            if row.len() != shape[r] {
                return Err(Error::InvalidTableau(format!(
                    "row {} has {} cells, shape says {}",
                    r + 1,
                    row.len(),
                    shape[r]
                )));
            }
            if row.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::InvalidTableau(format!("row {} decreases", r + 1)));
            }
            if r > 0 && row.iter().zip(&rows[r - 1]).any(|(lo, up)| lo <= up) {
                return Err(Error::InvalidTableau(format!("column strictness fails in row {}", r + 1)));
            }
        }
        Ok(Ssyt { shape, rows })
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }
}

/// Every generalized pattern with the given bottom row.
///
/// Depth-first from the bottom row; each row varies over the product of
/// its intervals in lexicographic order.
pub fn enumerate_patterns(bottom: &[i64]) -> PatternStream {
    PatternStream { stack: vec![vec![bottom.to_vec()]], n: bottom.len() }
}

pub struct PatternStream {
    // partial patterns, bottom row first
    stack: Vec<Vec<Vec<i64>>>,
    n: usize,
}

impl Iterator for PatternStream {
    type Item = GTPattern;

    fn next(&mut self) -> Option<GTPattern> {
        while let Some(partial) = self.stack.pop() {
            if partial.len() == self.n {
                let rows: Vec<Vec<i64>> = partial.into_iter().rev().collect();
                return Some(GTPattern::from_rows(rows).expect("constructed within intervals"));
            }
            let below = partial.last().expect("nonempty");
            let children = next_rows(below);
            for row in children.into_iter().rev() {
                let mut p = partial.clone();
                p.push(row);
                self.stack.push(p);
            }
        }
        None
    }
}

/// All rows that may sit above `below`.
fn next_rows(below: &[i64]) -> Vec<Vec<i64>> {
    let intervals: Vec<GeneralizedInterval> = (0..below.len() - 1).map(|j| parent_interval(below, j)).collect();
    let mut out = vec![Vec::new()];
    for iv in intervals {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<i64>| {
                iv.iter().map(move |v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out
}

/// Signed number of patterns with bottom row `bottom`, by row recursion.
pub fn signed_pattern_count(bottom: &[i64]) -> BigInt {
    if bottom.len() <= 1 {
        return BigInt::from(1);
    }
    let sign: i32 = (0..bottom.len() - 1).map(|j| parent_interval(bottom, j).sign()).product();
    let total: BigInt = next_rows(bottom).iter().map(|r| signed_pattern_count(r)).sum();
    total * sign
}

/// All semistandard tableaux of `shape` with entries in `1..=n`, by
/// filling cells in reading order with backtracking.
pub fn enumerate_ssyt(shape: &[usize], n: u32) -> Vec<Ssyt> {
    fn fill(shape: &[usize], n: u32, cell: usize, rows: &mut Vec<Vec<u32>>, out: &mut Vec<Ssyt>) {
        let cells: Vec<(usize, usize)> =
            shape.iter().enumerate().flat_map(|(r, &len)| (0..len).map(move |c| (r, c))).collect();
        if cell == cells.len() {
            out.push(Ssyt { shape: shape.to_vec(), rows: rows.clone() });
            return;
        }
        let (r, c) = cells[cell];
        let left = if c > 0 { rows[r][c - 1] } else { 1 };
        let above = if r > 0 { rows[r - 1][c] + 1 } else { 1 };
        for v in left.max(above)..=n {
            rows[r].push(v);
            fill(shape, n, cell + 1, rows, out);
            rows[r].pop();
        }
    }
    let mut out = Vec::new();
    fill(shape, n, 0, &mut vec![Vec::new(); shape.len()], &mut out);
    out
}

/// Signed subtotals of the four-set split used for shift-antisymmetry at
/// positions `(i, i + 1)` of the bottom row (1-based `i`).
///
/// The replacement `k_i -> k_{i+1} + 1`, `k_{i+1} -> k_i - 1` keeps the
/// condition on `a_{n-1,i}`; the classes record whether it breaks the
/// condition on `a_{n-1,i-1}` (class 2), on `a_{n-1,i+1}` (class 3), both
/// (class 4) or neither (class 1).
pub fn shift_antisym_decomposition(k: &[i64], i: usize) -> Result<[BigInt; 4]> {
    let n = k.len();
    if i < 1 || i + 1 > n {
        return Err(Error::OutOfRange(format!("position {i} needs 1 <= i <= n - 1 with n = {n}")));
    }
    let swapped = swapped_bottom(k, i);
    let mut totals = [BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero()];
    for p in enumerate_patterns(k) {
        let l = &p.rows()[n - 2];
        // 0-based: l_{i-1} is l[i - 2], l_{i+1} is l[i]
        let left_bad = i >= 2 && !interval(swapped[i - 2], swapped[i - 1]).contains(l[i - 2]);
        let right_bad = i < n - 1 && !interval(swapped[i], swapped[i + 1]).contains(l[i]);
        let class = match (left_bad, right_bad) {
            (false, false) => 0,
            (true, false) => 1,
            (false, true) => 2,
            (true, true) => 3,
        };
        totals[class] += p.sign();
    }
    Ok(totals)
}

/// `k` with `(k_i, k_{i+1}) -> (k_{i+1} + 1, k_i - 1)`.
pub fn swapped_bottom(k: &[i64], i: usize) -> Vec<i64> {
    let mut s = k.to_vec();
    s[i - 1] = k[i] + 1;
    s[i] = k[i - 1] - 1;
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::cube;
    use crate::labelings::{enumerate_sequences, ShiftedLabels};
    use crate::operators::product_formula;
    use crate::trees::TreeSequence;

    fn example() -> GTPattern {
        GTPattern::from_rows(vec![
            vec![2],
            vec![2, 2],
            vec![1, 2, 4],
            vec![1, 1, 3, 4],
            vec![0, 1, 3, 3, 5],
            vec![0, 0, 2, 3, 5, 6],
        ])
        .unwrap()
    }

    #[test]
    fn small_examples() {
        let ps: Vec<_> = enumerate_patterns(&[0, 1]).collect();
        assert_eq!(ps.len(), 2);
        assert!(ps.iter().all(|p| p.sign() == 1));
        assert_eq!(enumerate_patterns(&[1, 0]).count(), 0);
        let p = example();
        assert!(p.inversions().is_empty());
        assert!(enumerate_patterns(&[0, 0, 2, 3, 5, 6]).any(|q| q == p));
    }

    #[test]
    fn example_tableau() {
        let t = example().to_ssyt().unwrap();
        assert_eq!(t.shape(), &[6, 5, 3, 2, 0, 0]);
        assert_eq!(
            t.rows()[..4].to_vec(),
            vec![vec![1, 1, 3, 3, 5, 6], vec![2, 2, 4, 6, 6], vec![3, 5, 5], vec![4, 6]]
        );
        assert_eq!(GTPattern::from_ssyt(&t, 6).unwrap(), example());
    }

    #[test]
    fn small_tableaux() {
        let zero = GTPattern::from_rows(vec![vec![0], vec![0, 0]]).unwrap();
        assert!(zero.to_ssyt().unwrap().rows().iter().all(|r| r.is_empty()));

        let p = GTPattern::from_rows(vec![vec![1], vec![1, 2]]).unwrap();
        let t = p.to_ssyt().unwrap();
        assert_eq!(t.shape(), &[2, 1]);
        assert_eq!(t.rows(), &[vec![1, 2], vec![2]]);
        assert!(enumerate_ssyt(&[2, 1], 2).contains(&t));

        let inv = GTPattern::from_rows(vec![vec![1], vec![2, 0]]).unwrap();
        assert!(matches!(inv.to_ssyt(), Err(Error::NotClassical(_))));
        let neg = GTPattern::from_rows(vec![vec![-1], vec![-1, 0]]).unwrap();
        assert!(matches!(neg.to_ssyt(), Err(Error::NotClassical(_))));
    }

    #[test]
    fn tree_sequence_examples() {
        let z = GTPattern::from_rows(vec![vec![0], vec![0, 0], vec![0, 0, 0]]).unwrap();
        let g = z.to_tree_sequence();
        assert_eq!(g.levels, vec![vec![0], vec![0, 0], vec![0, 0, 0]]);
        assert_eq!(g.sign, 1);

        let p = GTPattern::from_rows(vec![vec![1], vec![2, 0]]).unwrap();
        let g = p.to_tree_sequence();
        // level-2 edge label is 1 + 1 = 2, one inversion
        assert_eq!(g.levels[0][0] + 1, 2);
        assert_eq!(g.inversions[1], BTreeSet::from([1]));
        assert_eq!(g.sign, -1);

        let ex = example();
        let g = ex.to_tree_sequence();
        assert!(g.is_valid_for(&TreeSequence::basic(6).unwrap()));
        assert_eq!(GTPattern::from_tree_sequence(&g).unwrap(), ex);
    }

    #[test]
    fn bijection_with_basic_tree_sequences() {
        for n in 1..=3 {
            let ts = TreeSequence::basic(n).unwrap();
            for k in cube(n, -2, 2) {
                let from_patterns: Vec<GTTreeSequence> = enumerate_patterns(&k).map(|p| p.to_tree_sequence()).collect();
                let mut from_trees: Vec<GTTreeSequence> = enumerate_sequences(&ts, &ShiftedLabels(k.clone())).collect();
                let mut sorted = from_patterns.clone();
                sorted.sort_by(|a, b| a.levels.cmp(&b.levels));
                from_trees.sort_by(|a, b| a.levels.cmp(&b.levels));
                assert_eq!(sorted, from_trees, "k = {k:?}");
            }
        }
    }

    #[test]
    fn counts_match_product() {
        for n in 1..=3 {
            for k in cube(n, -3, 3) {
                let signed: i64 = enumerate_patterns(&k).map(|p| p.sign() as i64).sum();
                assert_eq!(BigInt::from(signed), product_formula(&k));
                assert_eq!(signed_pattern_count(&k), product_formula(&k));
            }
        }
    }

    #[test]
    fn ssyt_counts_and_round_trip() {
        for n in 1..=3usize {
            for k in crate::grid::weakly_increasing(n, 0, 3) {
                let shape: Vec<usize> = k.iter().rev().map(|&v| v as usize).collect();
                let oracle = enumerate_ssyt(&shape, n as u32);
                let mapped: BTreeSet<Vec<Vec<u32>>> = enumerate_patterns(&k)
                    .map(|p| {
                        let t = p.to_ssyt().unwrap();
                        assert_eq!(GTPattern::from_ssyt(&t, n).unwrap(), p);
                        t.rows().to_vec()
                    })
                    .collect();
                let expected: BTreeSet<Vec<Vec<u32>>> = oracle.iter().map(|t| t.rows().to_vec()).collect();
                assert_eq!(mapped, expected, "k = {k:?}");
            }
        }
    }

    #[test]
    fn decomposition_examples() {
        for k in cube(2, -2, 2) {
            let parts = shift_antisym_decomposition(&k, 1).unwrap();
            assert_eq!(parts[0], product_formula(&k));
            assert!(parts[1..].iter().all(|x| x.is_zero()));
        }
        let parts = shift_antisym_decomposition(&[0, 1, 2], 1).unwrap();
        let total: BigInt = parts.iter().sum();
        assert_eq!(total, BigInt::from(8));
        assert!(shift_antisym_decomposition(&[0, 1, 2], 3).is_err());
        assert!(shift_antisym_decomposition(&[0, 1, 2], 0).is_err());
    }

    #[test]
    fn decomposition_antisymmetry() {
        for k in cube(3, -2, 2) {
            for i in 1..=2 {
                let left = shift_antisym_decomposition(&k, i).unwrap();
                let right = shift_antisym_decomposition(&swapped_bottom(&k, i), i).unwrap();
                for c in 0..4 {
                    assert_eq!(left[c], -right[c].clone(), "k = {k:?}, i = {i}, class {}", c + 1);
                }
            }
        }
    }

    #[test]
    fn json_shapes() {
        let p = GTPattern::from_rows(vec![vec![1], vec![2, 0]]).unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"rows":[[1],[2,0]],"sign":-1}"#);
        let back: GTPattern = serde_json::from_str(r#"{"rows":[[1],[2,0]],"sign":-1}"#).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<GTPattern>(r#"{"rows":[[1],[2,0]],"sign":1}"#).is_err());
        let t = Ssyt::new(vec![2, 1], vec![vec![1, 2], vec![2]]).unwrap();
        assert_eq!(serde_json::to_string(&t).unwrap(), r#"{"shape":[2,1],"rows":[[1,2],[2]]}"#);
        assert!(Ssyt::new(vec![2, 1], vec![vec![1, 2], vec![1]]).is_err());
    }
}
