//! Signed families of lattice paths.
//!
//! Path `i` starts at `(-i + 1, i - 1)` and end `j` sits at `(0, h_j)` with
//! `h_j = k_j + j - 1`. A family joins start `i` to end `pi_i` and has sign
//! `sgn(pi)` times the signs of its paths.
//!
//! Step grammar:
//!
//! * [`PathVariant::Classic`]: unit steps east `(1, 0)` and north `(0, 1)`.
//!   All paths have sign `+1`.
//! * [`PathVariant::General`]: a path whose end is reachable by east and
//!   north steps uses only those. Otherwise it starts with a south step
//!   `(0, -1)` and continues with south steps and south-east steps
//!   `(1, -1)`; each south-east step contributes `-1`.
//!
//! With this grammar the signed number of paths from start `i` to height
//! `h` is the binomial `C(h, i - 1)` extended polynomially to negative `h`,
//! so the signed family count is `det C(k_j + j - 1, i - 1)` for every
//! `k` in `Z^n`. Dropping the mandatory first south step breaks this (see
//! the tests).
//!
//! The non-intersecting model ends at `(1, h_j)` with a final east step;
//! only vertex-disjoint families are counted.

use std::collections::HashSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{permutations, sign as perm_sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Step {
    #[serde(rename = "E")]
    East,
    #[serde(rename = "N")]
    North,
    #[serde(rename = "S")]
    South,
    #[serde(rename = "SE")]
    SouthEast,
}

impl Step {
    pub fn delta(self) -> (i64, i64) {
        match self {
            Step::East => (1, 0),
            Step::North => (0, 1),
            Step::South => (0, -1),
            Step::SouthEast => (1, -1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum PathVariant {
    Classic,
    General,
}

impl std::str::FromStr for PathVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "classic" => Ok(PathVariant::Classic),
            "general" => Ok(PathVariant::General),
            _ => Err(Error::OutOfRange(format!("unknown path variant {s:?}"))),
        }
    }
}

/// A family of `n` paths; `pi` is 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PathFamily {
    pub pi: Vec<usize>,
    pub paths: Vec<Vec<Step>>,
    pub sign: i32,
}

pub fn start(i: usize) -> (i64, i64) {
    (-(i as i64) + 1, i as i64 - 1)
}

pub fn end_height(k: &[i64], j: usize) -> i64 {
    k[j - 1] + j as i64 - 1
}

impl PathFamily {
    pub fn n(&self) -> usize {
        self.pi.len()
    }

    /// Lattice points visited by path `i` (1-based), start included.
    pub fn vertices(&self, i: usize) -> Vec<(i64, i64)> {
        let mut p = start(i);
        let mut out = vec![p];
        for s in &self.paths[i - 1] {
            let (dx, dy) = s.delta();
            p = (p.0 + dx, p.1 + dy);
            out.push(p);
        }
        out
    }

    pub fn is_nonintersecting(&self) -> bool {
        let mut seen = HashSet::new();
        (1..=self.n()).all(|i| self.vertices(i).into_iter().all(|v| seen.insert(v)))
    }

    /// Simple SVG drawing: one polyline per path on a unit grid.
    pub fn to_svg(&self) -> String {
        let all: Vec<(i64, i64)> = (1..=self.n()).flat_map(|i| self.vertices(i)).collect();
        let (x0, x1) = (all.iter().map(|p| p.0).min().unwrap_or(0), all.iter().map(|p| p.0).max().unwrap_or(0));
        let (y0, y1) = (all.iter().map(|p| p.1).min().unwrap_or(0), all.iter().map(|p| p.1).max().unwrap_or(0));
        let unit = 40;
        let pad = 20;
        let w = (x1 - x0) * unit + 2 * pad;
        let h = (y1 - y0) * unit + 2 * pad;
        let px = |p: (i64, i64)| ((p.0 - x0) * unit + pad, (y1 - p.1) * unit + pad);
        let mut s = String::new();
        let _ =
            writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
        for x in x0..=x1 {
            let (a, _) = px((x, 0));
            let _ = writeln!(s, r##"<line x1="{a}" y1="{pad}" x2="{a}" y2="{}" stroke="#ddd"/>"##, h - pad);
        }
        for y in y0..=y1 {
            let (_, b) = px((0, y));
            let _ = writeln!(s, r##"<line x1="{pad}" y1="{b}" x2="{}" y2="{b}" stroke="#ddd"/>"##, w - pad);
        }
        for i in 1..=self.n() {
            let pts: Vec<String> = self
                .vertices(i)
                .into_iter()
                .map(|p| {
                    let (a, b) = px(p);
                    format!("{a},{b}")
                })
                .collect();
            let _ =
                writeln!(s, r#"<polyline points="{}" fill="none" stroke="black" stroke-width="2"/>"#, pts.join(" "));
            let (a, b) = px(start(i));
            let _ = writeln!(s, r#"<circle cx="{a}" cy="{b}" r="4"/>"#);
        }
        s.push_str("</svg>\n");
        s
    }
}

/// All words with `a` copies of `x` and `b` copies of `y`.
fn words(x: Step, a: usize, y: Step, b: usize) -> Vec<Vec<Step>> {
    if a == 0 && b == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    if a > 0 {
        for mut w in words(x, a - 1, y, b) {
            w.insert(0, x);
            out.push(w);
        }
    }
    if b > 0 {
        for mut w in words(x, a, y, b - 1) {
            w.insert(0, y);
            out.push(w);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Grammar {
    Classic,
    General,
    #[cfg(test)]
    FreeDown,
}

impl From<PathVariant> for Grammar {
    fn from(v: PathVariant) -> Self {
        match v {
            PathVariant::Classic => Grammar::Classic,
            PathVariant::General => Grammar::General,
        }
    }
}

/// Paths from start `i` to `(0, h)` under a grammar.
fn paths_to(grammar: Grammar, i: usize, h: i64) -> Vec<Vec<Step>> {
    let east = i - 1;
    let rise = h - (i as i64 - 1);
    if rise >= 0 {
        return words(Step::East, east, Step::North, rise as usize);
    }
    match grammar {
        Grammar::Classic => Vec::new(),
        Grammar::General => {
            // first south step, then `east` south-east steps; the rest are south
            let south = -h - 1;
            if south < 0 {
                return Vec::new();
            }
            words(Step::SouthEast, east, Step::South, south as usize)
                .into_iter()
                .map(|mut w| {
                    w.insert(0, Step::South);
                    w
                })
                .collect()
        }
        #[cfg(test)]
        Grammar::FreeDown => {
            let south = -h;
            if south < 0 {
                return Vec::new();
            }
            words(Step::SouthEast, east, Step::South, south as usize)
        }
    }
}

fn path_sign(p: &[Step]) -> i32 {
    if p.iter().filter(|&&s| s == Step::SouthEast).count() % 2 == 0 {
        1
    } else {
        -1
    }
}

fn check_classic(k: &[i64], variant: PathVariant) -> Result<()> {
    if variant == PathVariant::Classic && k.iter().any(|&v| v < 0) {
        return Err(Error::Precondition("the classic model needs nonnegative k".into()));
    }
    Ok(())
}

/// Every family of the model, permutation by permutation.
pub fn enumerate_families(k: &[i64], variant: PathVariant) -> Result<impl Iterator<Item = PathFamily>> {
    check_classic(k, variant)?;
    Ok(families(k.to_vec(), variant.into()))
}

fn families(k: Vec<i64>, grammar: Grammar) -> impl Iterator<Item = PathFamily> {
    let n = k.len();
    permutations(n).into_iter().flat_map(move |p| {
        let pi: Vec<usize> = p.iter().map(|v| v + 1).collect();
        let choices: Vec<Vec<Vec<Step>>> = (1..=n).map(|i| paths_to(grammar, i, end_height(&k, pi[i - 1]))).collect();
        let sgn = perm_sign(&pi);
        let mut out = Vec::new();
        if choices.iter().all(|c| !c.is_empty()) {
            let mut idx = vec![0usize; n];
            loop {
                let paths: Vec<Vec<Step>> = idx.iter().zip(&choices).map(|(&c, ch)| ch[c].clone()).collect();
                let sign = sgn * paths.iter().map(|p| path_sign(p)).product::<i32>();
                out.push(PathFamily { pi: pi.clone(), paths, sign });
                let mut d = n;
                loop {
                    if d == 0 {
                        return out.into_iter();
                    }
                    d -= 1;
                    if idx[d] + 1 < choices[d].len() {
                        idx[d] += 1;
                        for x in idx.iter_mut().skip(d + 1) {
                            *x = 0;
                        }
                        break;
                    }
                }
            }
        }
        out.into_iter()
    })
}

fn signed_total(k: &[i64], grammar: Grammar) -> BigInt {
    let n = k.len();
    let mut total = BigInt::zero();
    for p in permutations(n) {
        let pi: Vec<usize> = p.iter().map(|v| v + 1).collect();
        let mut term = BigInt::from(perm_sign(&pi));
        for i in 1..=n {
            let s: i64 = paths_to(grammar, i, end_height(k, pi[i - 1])).iter().map(|w| path_sign(w) as i64).sum();
            term *= s;
            if term.is_zero() {
                break;
            }
        }
        total += term;
    }
    total
}

/// Signed number of families; each factor is counted path by path.
pub fn signed_families(k: &[i64], variant: PathVariant) -> Result<BigInt> {
    check_classic(k, variant)?;
    Ok(signed_total(k, variant.into()))
}

/// Vertex-disjoint families ending at `(1, h_j)` with a final east step.
pub fn nonintersecting_families(k: &[i64]) -> Result<Vec<PathFamily>> {
    if k.first().is_some_and(|&v| v < 0) || k.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Precondition("need 0 <= k_1 <= ... <= k_n".into()));
    }
    Ok(families(k.to_vec(), Grammar::Classic)
        .filter(|f| f.is_nonintersecting())
        .map(|mut f| {
            for p in &mut f.paths {
                p.push(Step::East);
            }
            f
        })
        .collect())
}

pub fn count_nonintersecting(k: &[i64]) -> Result<BigInt> {
    Ok(BigInt::from(nonintersecting_families(k)?.len()))
}

/// Swaps the tails of the first two paths that meet, at their first
/// common vertex: the smallest `i` whose path meets a later one, the
/// first vertex of path `i` on another path, and the smallest such other
/// path. `None` for non-intersecting families. Applying it twice is the
/// identity and the sign flips.
pub fn tail_swap(f: &PathFamily) -> Option<PathFamily> {
    let n = f.n();
    let verts: Vec<Vec<(i64, i64)>> = (1..=n).map(|i| f.vertices(i)).collect();
    for i in 0..n {
        for (a, v) in verts[i].iter().enumerate() {
            for (j, vj) in verts.iter().enumerate() {
                if j == i {
                    continue;
                }
                if let Some(b) = vj.iter().position(|w| w == v) {
                    let mut out = f.clone();
                    let tail_i = f.paths[i][a..].to_vec();
                    let tail_j = f.paths[j][b..].to_vec();
                    out.paths[i].truncate(a);
                    out.paths[i].extend(tail_j);
                    out.paths[j].truncate(b);
                    out.paths[j].extend(tail_i);
                    out.pi.swap(i, j);
                    out.sign = -f.sign;
                    return Some(out);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{cube, weakly_increasing};
    use crate::operators::{binomial, binomial_determinant, product_formula};

    #[test]
    fn examples() {
        for m in 0..5 {
            assert_eq!(count_nonintersecting(&[m]).unwrap(), BigInt::from(1));
            assert_eq!(signed_families(&[m], PathVariant::Classic).unwrap(), BigInt::from(1));
        }
        assert_eq!(count_nonintersecting(&[0, 2]).unwrap(), BigInt::from(3));
        assert_eq!(count_nonintersecting(&[0, 0, 0]).unwrap(), BigInt::from(1));
        assert_eq!(signed_families(&[0, 2], PathVariant::Classic).unwrap(), BigInt::from(3));
        assert!(count_nonintersecting(&[2, 0]).is_err());
        assert!(signed_families(&[-1, 0], PathVariant::Classic).is_err());
    }

    #[test]
    fn single_path_counts_are_binomials() {
        for i in 1..=4 {
            for h in -6..=6 {
                let s: i64 = paths_to(Grammar::General, i, h).iter().map(|p| path_sign(p) as i64).sum();
                assert_eq!(BigInt::from(s), binomial(h, i - 1), "i = {i}, h = {h}");
            }
        }
    }

    #[test]
    fn classic_matches_product() {
        for n in 1..=3 {
            for k in weakly_increasing(n, 0, 3) {
                let p = product_formula(&k);
                assert_eq!(signed_families(&k, PathVariant::Classic).unwrap(), p);
                assert_eq!(count_nonintersecting(&k).unwrap(), p);
                assert_eq!(binomial_determinant(&k), p);
                assert_eq!(signed_families(&k, PathVariant::General).unwrap(), p);
            }
        }
    }

    #[test]
    fn general_matches_product() {
        for n in 1..=3 {
            for k in cube(n, -2, 2) {
                assert_eq!(signed_families(&k, PathVariant::General).unwrap(), product_formula(&k), "k = {k:?}");
            }
        }
        for k in cube(2, -2, 2) {
            let streamed: i64 = enumerate_families(&k, PathVariant::General).unwrap().map(|f| f.sign as i64).sum();
            assert_eq!(BigInt::from(streamed), product_formula(&k));
        }
    }

    #[test]
    fn calibration_rejects_free_down_grammar() {
        let failures =
            cube(2, -2, 2).into_iter().filter(|k| signed_total(k, Grammar::FreeDown) != product_formula(k)).count();
        assert!(failures > 0);
    }

    #[test]
    fn tail_swap_is_sign_reversing_involution() {
        let mut intersecting = 0;
        for k in [vec![0, 2], vec![2, 2], vec![1, 1, 2], vec![0, 1, 1]] {
            for f in enumerate_families(&k, PathVariant::Classic).unwrap() {
                match tail_swap(&f) {
                    None => assert!(f.is_nonintersecting()),
                    Some(g) => {
                        intersecting += 1;
                        assert_eq!(g.sign, -f.sign);
                        assert!(!g.is_nonintersecting());
                        for i in 1..=g.n() {
                            let last = *g.vertices(i).last().unwrap();
                            assert_eq!(last, (0, end_height(&k, g.pi[i - 1])));
                        }
                        assert_eq!(tail_swap(&g).unwrap(), f);
                    }
                }
            }
        }
        assert!(intersecting > 0);
    }

    #[test]
    fn nonintersecting_families_use_identity() {
        for f in nonintersecting_families(&[0, 1, 3]).unwrap() {
            assert_eq!(f.pi, vec![1, 2, 3]);
            assert!(f.paths.iter().all(|p| p.last() == Some(&Step::East)));
        }
    }

    #[test]
    fn json_and_svg() {
        let f = enumerate_families(&[0, 1], PathVariant::Classic).unwrap().next().unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert!(s.starts_with(r#"{"pi":[1,2],"paths":[[],["#), "{s}");
        let back: PathFamily = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        let svg = f.to_svg();
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<polyline").count(), 2);
    }
}
