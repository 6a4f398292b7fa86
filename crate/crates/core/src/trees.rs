//! Directed `n`-trees and tree sequences.
//!
//! An `n`-tree has vertices named `1..=n` and edges named `1'..=(n-1)'`.
//! Edge `j'` is stored at index `j - 1` as an ordered pair `(tail, head)`.
//!
//! The sign of a tree is computed from a root `r`: orient every edge away
//! from `r` (the standard orientation), count the edges whose orientation
//! disagrees, and take the permutation `pi = (r, h_1, ..., h_{n-1})` where
//! `h_j` is the head of edge `j'` under the standard orientation. Then
//! `sgn T = (-1)^{#reversed} * sgn(pi)`, which does not depend on `r`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm;

/// A directed edge `(tail, head)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
}

impl Edge {
    pub fn new(tail: usize, head: usize) -> Self {
        Edge { tail, head }
    }

    pub fn reversed(self) -> Self {
        Edge { tail: self.head, head: self.tail }
    }

    pub fn touches(&self, v: usize) -> bool {
        self.tail == v || self.head == v
    }

    /// The endpoint different from `v`. `v` must be an endpoint.
    pub fn other(&self, v: usize) -> usize {
        if self.tail == v {
            self.head
        } else {
            self.tail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "NTreeJson", into = "NTreeJson")]
pub struct NTree {
    n: usize,
    edges: Vec<Edge>,
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    id: usize,
    tail: usize,
    head: usize,
}

#[derive(Serialize, Deserialize)]
struct NTreeJson {
    n: usize,
    edges: Vec<EdgeJson>,
}

impl TryFrom<NTreeJson> for NTree {
    type Error = Error;

    fn try_from(raw: NTreeJson) -> Result<Self> {
        let mut slots: Vec<Option<Edge>> = vec![None; raw.n.saturating_sub(1)];
        for e in raw.edges {
            let slot =
                e.id.checked_sub(1)
                    .and_then(|idx| slots.get_mut(idx))
                    .ok_or_else(|| Error::InvalidTree(format!("edge id {} out of range", e.id)))?;
            if slot.is_some() {
                return Err(Error::InvalidTree(format!("duplicate edge id {}", e.id)));
            }
            *slot = Some(Edge::new(e.tail, e.head));
        }
        let edges = slots
            .into_iter()
            .enumerate()
            .map(|(idx, e)| e.ok_or_else(|| Error::InvalidTree(format!("missing edge {}", idx + 1))))
            .collect::<Result<Vec<_>>>()?;
        NTree::new(raw.n, edges)
    }
}

impl From<NTree> for NTreeJson {
    fn from(t: NTree) -> Self {
        NTreeJson {
            n: t.n,
            edges: t
                .edges
                .iter()
                .enumerate()
                .map(|(idx, e)| EdgeJson { id: idx + 1, tail: e.tail, head: e.head })
                .collect(),
        }
    }
}

/// Root, permutation, reversed edges and resulting sign of a tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeSignData {
    pub root: usize,
    pub permutation: Vec<usize>,
    pub reversed_edges: BTreeSet<usize>,
    pub sign: i32,
}

impl NTree {
    /// Builds a tree from its edge list; `edges[j - 1]` is edge `j'`.
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidTree("a tree needs at least one vertex".into()));
        }
        if edges.len() != n - 1 {
            return Err(Error::InvalidTree(format!("{} vertices need {} edges, got {}", n, n - 1, edges.len())));
        }
        for (idx, e) in edges.iter().enumerate() {
            if e.tail == 0 || e.tail > n || e.head == 0 || e.head > n {
                return Err(Error::InvalidTree(format!("edge {}' has an endpoint outside 1..={n}", idx + 1)));
            }
            if e.tail == e.head {
                return Err(Error::InvalidTree(format!("edge {}' is a loop", idx + 1)));
            }
        }
        // n - 1 edges and connected implies acyclic
        let mut seen = vec![false; n + 1];
        let mut queue = VecDeque::from([1usize]);
        seen[1] = true;
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for e in edges.iter().filter(|e| e.touches(v)) {
                let w = e.other(v);
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        if reached != n {
            return Err(Error::InvalidTree("underlying graph is not connected".into()));
        }
        Ok(NTree { n, edges })
    }

    /// Convenience constructor from `(tail, head)` pairs.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        NTree::new(n, pairs.iter().map(|&(t, h)| Edge::new(t, h)).collect())
    }

    /// The basic `n`-tree: edge `j' = (j, j + 1)`.
    pub fn basic(n: usize) -> Self {
        let edges = (1..n).map(|j| Edge::new(j, j + 1)).collect();
        NTree::new(n.max(1), edges).expect("path is a tree")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Edge `j'` (1-based name).
    pub fn edge(&self, j: usize) -> Result<Edge> {
        j.checked_sub(1)
            .and_then(|idx| self.edges.get(idx))
            .copied()
            .ok_or(Error::UnknownEdge { edge: j, edges: self.edges.len() })
    }

    /// Names of the edges incident with vertex `v`.
    pub fn incident_edges(&self, v: usize) -> Vec<usize> {
        self.edges.iter().enumerate().filter(|(_, e)| e.touches(v)).map(|(idx, _)| idx + 1).collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.touches(v)).count()
    }

    /// Sign with root fixed to vertex 1.
    pub fn sign(&self) -> i32 {
        self.sign_data().sign
    }

    pub fn sign_data(&self) -> TreeSignData {
        self.sign_data_with_root(1)
    }

    pub fn sign_data_with_root(&self, root: usize) -> TreeSignData {
        assert!(root >= 1 && root <= self.n, "root {root} outside 1..={}", self.n);
        let mut depth = vec![usize::MAX; self.n + 1];
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for e in self.edges.iter().filter(|e| e.touches(v)) {
                let w = e.other(v);
                if depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        let mut permutation = Vec::with_capacity(self.n);
        permutation.push(root);
        let mut reversed_edges = BTreeSet::new();
        for (idx, e) in self.edges.iter().enumerate() {
            let standard_head = if depth[e.head] > depth[e.tail] { e.head } else { e.tail };
            if standard_head != e.head {
                reversed_edges.insert(idx + 1);
            }
            permutation.push(standard_head);
        }
        let parity = if reversed_edges.len() % 2 == 0 { 1 } else { -1 };
        let sign = parity * perm::sign(&permutation);
        TreeSignData { root, permutation, reversed_edges, sign }
    }

    /// Reverses the orientation of edge `j'`. Flips the sign.
    pub fn reverse_edge(&self, j: usize) -> Result<NTree> {
        let e = self.edge(j)?;
        let mut edges = self.edges.clone();
        edges[j - 1] = e.reversed();
        Ok(NTree { n: self.n, edges })
    }

    /// Slides edge `i'` along edge `j'`: the common vertex `q` of the two
    /// edges is replaced in `i'` by the other endpoint of `j'`. The position
    /// (tail or head) of the replaced endpoint is kept. Preserves the sign.
    pub fn slide_edge(&self, i: usize, j: usize) -> Result<NTree> {
        let ei = self.edge(i)?;
        let ej = self.edge(j)?;
        if i == j {
            return Err(Error::NotAdjacent(i, j));
        }
        let q = common_vertex(ei, ej).ok_or(Error::NotAdjacent(i, j))?;
        let r = ej.other(q);
        let moved = if ei.tail == q { Edge::new(r, ei.head) } else { Edge::new(ei.tail, r) };
        let mut edges = self.edges.clone();
        edges[i - 1] = moved;
        Ok(NTree { n: self.n, edges })
    }

    /// The tree with vertex names `a` and `b` exchanged.
    pub fn with_vertices_swapped(&self, a: usize, b: usize) -> NTree {
        let rename = |v: usize| {
            if v == a {
                b
            } else if v == b {
                a
            } else {
                v
            }
        };
        let edges = self.edges.iter().map(|e| Edge::new(rename(e.tail), rename(e.head))).collect();
        NTree { n: self.n, edges }
    }

    /// The tree with edge names `x'` and `y'` exchanged.
    pub fn with_edges_swapped(&self, x: usize, y: usize) -> NTree {
        let mut edges = self.edges.clone();
        edges.swap(x - 1, y - 1);
        NTree { n: self.n, edges }
    }

    /// Exchanges the names of two adjacent edges using only slides and
    /// reversals: normalize to `x' = (a, b)`, `y' = (b, c)`, then
    /// slide, slide, slide, reverse.
    pub fn swap_adjacent_edges(&self, x: usize, y: usize) -> Result<NTree> {
        let ex = self.edge(x)?;
        let ey = self.edge(y)?;
        if x == y {
            return Err(Error::NotAdjacent(x, y));
        }
        let b = common_vertex(ex, ey).ok_or(Error::NotAdjacent(x, y))?;
        let mut t = self.clone();
        let flip_x = ex.head != b;
        let flip_y = ey.tail != b;
        if flip_x {
            t = t.reverse_edge(x)?;
        }
        if flip_y {
            t = t.reverse_edge(y)?;
        }
        t = t.slide_edge(x, y)?;
        t = t.slide_edge(y, x)?;
        t = t.slide_edge(x, y)?;
        t = t.reverse_edge(y)?;
        // the orientation that belonged to x now sits on y and vice versa
        if flip_x {
            t = t.reverse_edge(y)?;
        }
        if flip_y {
            t = t.reverse_edge(x)?;
        }
        Ok(t)
    }

    /// Exchanges the names of two adjacent vertices using only slides and a
    /// reversal: reverse the connecting edge, then slide every other edge at
    /// `a` over to `b` and every other edge at `b` over to `a`.
    pub fn swap_adjacent_vertices(&self, a: usize, b: usize) -> Result<NTree> {
        let x = self
            .edges
            .iter()
            .position(|e| e.touches(a) && e.touches(b))
            .map(|idx| idx + 1)
            .ok_or_else(|| Error::Precondition(format!("vertices {a} and {b} are not adjacent")))?;
        let at_a: Vec<usize> = self.incident_edges(a).into_iter().filter(|&e| e != x).collect();
        let at_b: Vec<usize> = self.incident_edges(b).into_iter().filter(|&e| e != x).collect();
        let mut t = self.reverse_edge(x)?;
        for e in at_a {
            t = t.slide_edge(e, x)?;
        }
        for e in at_b {
            t = t.slide_edge(e, x)?;
        }
        Ok(t)
    }

    /// Graphviz rendering: vertex names as node labels, edge names as edge labels.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph T {\n");
        for v in 1..=self.n {
            let _ = writeln!(out, "  {v} [label=\"{v}\"];");
        }
        for (idx, e) in self.edges.iter().enumerate() {
            let _ = writeln!(out, "  {} -> {} [label=\"{}'\"];", e.tail, e.head, idx + 1);
        }
        out.push_str("}\n");
        out
    }

    /// Every `n`-tree: all labeled trees, all edge namings, all orientations.
    ///
    /// There are `n^(n-2) * (n-1)! * 2^(n-1)` of them; intended for `n <= 5`.
    pub fn all(n: usize) -> Vec<NTree> {
        if n == 1 {
            return vec![NTree::basic(1)];
        }
        let mut shapes = Vec::new();
        let mut code = vec![1usize; n.saturating_sub(2)];
        loop {
            shapes.push(prufer_decode(n, &code));
            let mut idx = code.len();
            let mut advanced = false;
            while idx > 0 {
                idx -= 1;
                if code[idx] < n {
                    code[idx] += 1;
                    for c in code.iter_mut().skip(idx + 1) {
                        *c = 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
        let namings = perm::permutations(n - 1);
        let mut out = Vec::new();
        for shape in &shapes {
            for naming in &namings {
                for mask in 0u32..(1 << (n - 1)) {
                    let mut edges = vec![Edge::new(0, 0); n - 1];
                    for (pos, &name) in naming.iter().enumerate() {
                        let (u, v) = shape[pos];
                        edges[name] = if mask & (1 << pos) == 0 { Edge::new(u, v) } else { Edge::new(v, u) };
                    }
                    out.push(NTree { n, edges });
                }
            }
        }
        out
    }

    /// Uniform random `n`-tree: Prüfer shape, random edge names, random orientations.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> NTree {
        if n <= 1 {
            return NTree::basic(1);
        }
        let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(1..=n)).collect();
        let mut shape = prufer_decode(n, &code);
        shape.shuffle(rng);
        let edges =
            shape.into_iter().map(|(u, v)| if rng.gen_bool(0.5) { Edge::new(u, v) } else { Edge::new(v, u) }).collect();
        NTree::new(n, edges).expect("Prüfer decoding yields a tree")
    }
}

fn common_vertex(a: Edge, b: Edge) -> Option<usize> {
    let shared: Vec<usize> = [a.tail, a.head].into_iter().filter(|&v| b.touches(v)).collect();
    match shared.as_slice() {
        [q] => Some(*q),
        _ => None,
    }
}

/// Decodes a Prüfer code over `1..=n` into the undirected edge list of a tree.
fn prufer_decode(n: usize, code: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n + 1];
    for &c in code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &c in code {
        let leaf = (1..=n).find(|&v| degree[v] == 1).expect("a leaf always exists");
        edges.push((leaf, c));
        degree[leaf] = 0;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (1..=n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// A tree sequence `(T_1, ..., T_n)` where `T_i` is an `i`-tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TreeSequenceJson", into = "TreeSequenceJson")]
pub struct TreeSequence {
    trees: Vec<NTree>,
}

#[derive(Serialize, Deserialize)]
struct TreeSequenceJson {
    order: usize,
    trees: Vec<NTree>,
}

impl TryFrom<TreeSequenceJson> for TreeSequence {
    type Error = Error;

    fn try_from(raw: TreeSequenceJson) -> Result<Self> {
        if raw.trees.len() != raw.order {
            return Err(Error::InvalidTreeSequence(format!("order {} but {} trees", raw.order, raw.trees.len())));
        }
        TreeSequence::new(raw.trees)
    }
}

impl From<TreeSequence> for TreeSequenceJson {
    fn from(ts: TreeSequence) -> Self {
        TreeSequenceJson { order: ts.order(), trees: ts.trees }
    }
}

/// Which canonical family [`TreeSequence::canonical`] should build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CanonicalKind {
    Basic,
    Swap { i: usize, j: usize },
    LeafChain { i: usize },
    Random { seed: u64 },
}

impl TreeSequence {
    pub fn new(trees: Vec<NTree>) -> Result<Self> {
        if trees.is_empty() {
            return Err(Error::InvalidTreeSequence("order must be at least 1".into()));
        }
        for (idx, t) in trees.iter().enumerate() {
            if t.n() != idx + 1 {
                return Err(Error::InvalidTreeSequence(format!("member {} has {} vertices", idx + 1, t.n())));
            }
        }
        Ok(TreeSequence { trees })
    }

    pub fn order(&self) -> usize {
        self.trees.len()
    }

    pub fn trees(&self) -> &[NTree] {
        &self.trees
    }

    /// `T_i` (1-based).
    pub fn tree(&self, i: usize) -> &NTree {
        &self.trees[i - 1]
    }

    pub fn sign(&self) -> i32 {
        self.trees.iter().map(NTree::sign).product()
    }

    /// Replaces `T_i`; the new tree must have `i` vertices.
    pub fn with_tree(&self, i: usize, tree: NTree) -> Result<Self> {
        let mut trees = self.trees.clone();
        *trees.get_mut(i.wrapping_sub(1)).ok_or_else(|| Error::OutOfRange(format!("no member {i}")))? = tree;
        TreeSequence::new(trees)
    }

    pub fn canonical(kind: CanonicalKind, n: usize) -> Result<Self> {
        match kind {
            CanonicalKind::Basic => TreeSequence::basic(n),
            CanonicalKind::Swap { i, j } => TreeSequence::swap(n, i, j),
            CanonicalKind::LeafChain { i } => TreeSequence::leaf_chain(n, i),
            CanonicalKind::Random { seed } => TreeSequence::random(n, seed),
        }
    }

    /// `(B_1, ..., B_n)`.
    pub fn basic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::OutOfRange("order must be at least 1".into()));
        }
        TreeSequence::new((1..=n).map(NTree::basic).collect())
    }

    /// `S^{i,j}_n`: every `T_m` with `m >= 3` is a broom whose two sinks hang
    /// off the last vertex of a directed path. The sinks of `T_n` are `i` and
    /// `j`; the sinks of `T_m` for `m < n` are `m - 1` and `m`, which are the
    /// names of the two sink edges of `T_{m+1}`. Path vertices and path edges
    /// take the lowest remaining names in increasing order.
    pub fn swap(n: usize, i: usize, j: usize) -> Result<Self> {
        if n < 2 || i < 1 || i >= j || j > n {
            return Err(Error::OutOfRange(format!("swap needs 1 <= i < j <= n, n >= 2; got n={n}, i={i}, j={j}")));
        }
        let mut trees = vec![NTree::basic(1)];
        for m in 2..=n {
            let (s1, s2) = if m == n { (i, j) } else { (m - 1, m) };
            trees.push(broom(m, s1, s2));
        }
        TreeSequence::new(trees)
    }

    /// Sink coordinates exchanged by the shift-antisymmetry involution on
    /// [`TreeSequence::swap`], listed for levels `2..=n`.
    pub fn swap_sinks(n: usize, i: usize, j: usize) -> Vec<(usize, usize)> {
        (2..=n).map(|m| if m == n { (i, j) } else { (m - 1, m) }).collect()
    }

    /// `R_{n,i}`: every member is a directed path ending in a sink leaf; the
    /// sink of `R_n` is `i`, and the sink of `R_m` (`m < n`) is `m`, the name
    /// of the edge into the sink of `R_{m+1}`.
    pub fn leaf_chain(n: usize, i: usize) -> Result<Self> {
        if i < 1 || i > n {
            return Err(Error::OutOfRange(format!("leafchain needs 1 <= i <= n; got n={n}, i={i}")));
        }
        let mut trees: Vec<NTree> = (1..n).map(NTree::basic).collect();
        let mut order: Vec<usize> = (1..=n).filter(|&v| v != i).collect();
        order.push(i);
        let edges = order.windows(2).map(|w| Edge::new(w[0], w[1])).collect();
        trees.push(NTree::new(n, edges)?);
        TreeSequence::new(trees)
    }

    /// Designated sink leaves `(i_1, ..., i_n)` of [`TreeSequence::leaf_chain`].
    pub fn leaf_chain_sinks(n: usize, i: usize) -> Vec<usize> {
        (1..=n).map(|m| if m == n { i } else { m }).collect()
    }

    /// A seeded random tree sequence; identical seeds give identical sequences.
    pub fn random(n: usize, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::OutOfRange("order must be at least 1".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        TreeSequence::new((1..=n).map(|m| NTree::random(m, &mut rng)).collect())
    }
}

fn broom(m: usize, s1: usize, s2: usize) -> NTree {
    if m <= 2 {
        return NTree::basic(m);
    }
    let path: Vec<usize> = (1..=m).filter(|&v| v != s1 && v != s2).collect();
    let mut edges: Vec<Edge> = path.windows(2).map(|w| Edge::new(w[0], w[1])).collect();
    let hub = *path.last().expect("m >= 3 leaves a path vertex");
    edges.push(Edge::new(hub, s1));
    edges.push(Edge::new(hub, s2));
    NTree::new(m, edges).expect("broom is a tree")
}

/// Breadth-first search over reversals and slides starting from `B_n`;
/// returns the set of reachable trees.
pub fn reachable_from_basic(n: usize) -> HashSet<NTree> {
    let start = NTree::basic(n);
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(t) = queue.pop_front() {
        let m = t.edges().len();
        let mut next = Vec::new();
        for j in 1..=m {
            next.push(t.reverse_edge(j).expect("edge exists"));
            for i in 1..=m {
                if let Ok(s) = t.slide_edge(i, j) {
                    next.push(s);
                }
            }
        }
        for s in next {
            if seen.insert(s.clone()) {
                queue.push_back(s);
            }
        }
    }
    seen
}
