//! Labeled graphs over the n-petal rose.
//!
//! A [`RawGraph`] is an arbitrary edge-labeled multigraph, the input to
//! folding. A [`LabeledGraph`] is folded and connected: for every generator
//! the edge relation is a partial injection, so reading a word from a vertex
//! is deterministic. Vertex 0 is the basepoint.
//!
//! Every tie-break (canonical numbering, spanning tree, basis order) follows
//! one neighbor order: generator ascending, the outgoing edge before the
//! incoming one, explored depth-first from the basepoint.

mod fold;
mod tree;

use std::fmt;

use serde_json::{json, Value};

pub use fold::{fold, fold_shuffled, UnionFind};
pub use tree::{SpanningTree, TreeEdge};

use crate::error::{Error, Result};
use crate::word::{Alphabet, Letter, Word};

const UNSEEN: usize = usize::MAX;

/// Subgroup index: number of sheets of the cover, or infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Index {
    Finite(usize),
    Infinite,
}

impl Index {
    pub fn finite(self) -> Option<usize> {
        match self {
            Index::Finite(e) => Some(e),
            Index::Infinite => None,
        }
    }

    pub fn to_json(self) -> Value {
        match self {
            Index::Finite(e) => json!(e),
            Index::Infinite => json!("infinite"),
        }
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Finite(e) => write!(f, "{e}"),
            Index::Infinite => f.write_str("infinite"),
        }
    }
}

/// Unfolded multigraph with labeled edges `(generator, source, target)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawGraph {
    rank: usize,
    vertices: usize,
    edges: Vec<(usize, usize, usize)>,
}

impl RawGraph {
    /// A lone basepoint.
    pub fn new(rank: usize) -> Self {
        RawGraph {
            rank,
            vertices: 1,
            edges: Vec::new(),
        }
    }

    pub fn add_vertex(&mut self) -> usize {
        self.vertices += 1;
        self.vertices - 1
    }

    pub fn add_edge(&mut self, generator: usize, source: usize, target: usize) -> Result<()> {
        if generator >= self.rank {
            return Err(Error::InvalidGraph(format!(
                "generator {generator} out of range for rank {}",
                self.rank
            )));
        }
        for v in [source, target] {
            if v >= self.vertices {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    count: self.vertices,
                });
            }
        }
        self.edges.push((generator, source, target));
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges.len() as i64
    }

    pub fn fold(&self) -> LabeledGraph {
        fold(self)
    }
}

/// Wedge of loops at the basepoint, one per non-identity word.
pub fn bouquet(rank: usize, words: &[Word]) -> Result<RawGraph> {
    let mut g = RawGraph::new(rank);
    for w in words {
        if w.rank() != rank {
            return Err(Error::RankMismatch {
                expected: rank,
                found: w.rank(),
            });
        }
        let n = w.len();
        let mut current = 0;
        for (i, l) in w.letters().iter().enumerate() {
            let next = if i + 1 == n { 0 } else { g.add_vertex() };
            if l.positive {
                g.edges.push((l.generator, current, next));
            } else {
                g.edges.push((l.generator, next, current));
            }
            current = next;
        }
    }
    Ok(g)
}

/// Canonical byte encoding of a basepointed folded graph.
///
/// Big-endian `u32` fields, so byte order agrees with numeric order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

/// Folded, connected, basepointed graph labeled by the generators of F_rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    rank: usize,
    vertices: usize,
    // [v * rank + g]
    out: Vec<Option<usize>>,
    inc: Vec<Option<usize>>,
}

impl LabeledGraph {
    /// The one-vertex rose with a loop for every generator: the whole group.
    pub fn rose(rank: usize) -> Self {
        LabeledGraph {
            rank,
            vertices: 1,
            out: vec![Some(0); rank],
            inc: vec![Some(0); rank],
        }
    }

    /// One vertex, no edges: the trivial subgroup.
    pub fn trivial(rank: usize) -> Self {
        LabeledGraph {
            rank,
            vertices: 1,
            out: vec![None; rank],
            inc: vec![None; rank],
        }
    }

    /// Validates foldedness and connectivity; keeps the given numbering.
    pub fn from_edges(
        rank: usize,
        vertices: usize,
        edges: &[(usize, usize, usize)],
    ) -> Result<Self> {
        if vertices == 0 {
            return Err(Error::InvalidGraph(
                "a graph needs at least the basepoint".into(),
            ));
        }
        let mut g = LabeledGraph {
            rank,
            vertices,
            out: vec![None; vertices * rank],
            inc: vec![None; vertices * rank],
        };
        for &(gen, s, t) in edges {
            if gen >= rank {
                return Err(Error::InvalidGraph(format!(
                    "generator {gen} out of range for rank {rank}"
                )));
            }
            for v in [s, t] {
                if v >= vertices {
                    return Err(Error::VertexOutOfRange {
                        vertex: v,
                        count: vertices,
                    });
                }
            }
            if g.out[s * rank + gen].replace(t).is_some() {
                return Err(Error::InvalidGraph(format!(
                    "not folded: two edges labeled {gen} leave vertex {s}"
                )));
            }
            if g.inc[t * rank + gen].replace(s).is_some() {
                return Err(Error::InvalidGraph(format!(
                    "not folded: two edges labeled {gen} enter vertex {t}"
                )));
            }
        }
        let (order, _) = g.dfs(0);
        if order.len() != vertices {
            return Err(Error::InvalidGraph("not connected to the basepoint".into()));
        }
        Ok(g)
    }

    pub fn ambient_rank(&self) -> usize {
        self.rank
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().flatten().count()
    }

    pub fn target(&self, v: usize, generator: usize) -> Option<usize> {
        self.out[v * self.rank + generator]
    }

    pub fn source(&self, v: usize, generator: usize) -> Option<usize> {
        self.inc[v * self.rank + generator]
    }

    pub fn step(&self, v: usize, letter: Letter) -> Option<usize> {
        if letter.positive {
            self.target(v, letter.generator)
        } else {
            self.source(v, letter.generator)
        }
    }

    /// Edges `(generator, source, target)` sorted by generator, then source.
    pub fn edges(&self) -> Vec<(usize, usize, usize)> {
        (0..self.rank)
            .flat_map(|g| {
                (0..self.vertices).filter_map(move |v| self.target(v, g).map(|t| (g, v, t)))
            })
            .collect()
    }

    pub fn to_raw(&self) -> RawGraph {
        RawGraph {
            rank: self.rank,
            vertices: self.vertices,
            edges: self.edges(),
        }
    }

    /// Every label is a bijection on the vertex set, i.e. the graph covers the rose.
    pub fn is_complete(&self) -> bool {
        self.out.iter().all(Option::is_some)
    }

    pub fn index(&self) -> Index {
        if self.is_complete() {
            Index::Finite(self.vertices)
        } else {
            Index::Infinite
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edge_count() as i64
    }

    /// Rank of the represented free subgroup, `E - V + 1`.
    pub fn rank(&self) -> usize {
        self.edge_count() + 1 - self.vertices
    }

    /// Endpoint of the path spelled by `w` from `start`, if every step exists.
    pub fn trace(&self, start: usize, w: &Word) -> Option<usize> {
        w.letters().iter().try_fold(start, |v, &l| self.step(v, l))
    }

    /// Whether `w` reads a closed path at the basepoint.
    pub fn accepts(&self, w: &Word) -> Result<bool> {
        if w.rank() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: w.rank(),
            });
        }
        Ok(self.trace(0, w) == Some(0))
    }

    fn neighbor(&self, v: usize, slot: usize) -> Option<usize> {
        let g = slot / 2;
        if slot.is_multiple_of(2) {
            self.target(v, g)
        } else {
            self.source(v, g)
        }
    }

    /// Depth-first preorder from `root` with the parent edge of each vertex.
    fn dfs(&self, root: usize) -> (Vec<usize>, Vec<Option<TreeEdge>>) {
        let mut seen = vec![false; self.vertices];
        let mut parents = vec![None; self.vertices];
        let mut order = vec![root];
        seen[root] = true;
        let mut stack = vec![(root, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (v, slot) = *top;
            if slot == 2 * self.rank {
                stack.pop();
                continue;
            }
            top.1 += 1;
            if let Some(u) = self.neighbor(v, slot) {
                if !seen[u] {
                    seen[u] = true;
                    parents[u] = Some(TreeEdge {
                        parent: v,
                        generator: slot / 2,
                        forward: slot % 2 == 0,
                    });
                    order.push(u);
                    stack.push((u, 0));
                }
            }
        }
        (order, parents)
    }

    /// Restriction to the part reachable from `root`, renumbered in
    /// depth-first discovery order with `root` as the new basepoint.
    pub(crate) fn renumbered_from(&self, root: usize) -> LabeledGraph {
        let (order, _) = self.dfs(root);
        self.relabel(&order)
    }

    /// Keeps the vertices in `order` (old ids), assigning new id `i` to `order[i]`.
    fn relabel(&self, order: &[usize]) -> LabeledGraph {
        let mut new_id = vec![UNSEEN; self.vertices];
        for (i, &v) in order.iter().enumerate() {
            new_id[v] = i;
        }
        let n = order.len();
        let mut out = vec![None; n * self.rank];
        let mut inc = vec![None; n * self.rank];
        for (i, &v) in order.iter().enumerate() {
            for g in 0..self.rank {
                if let Some(t) = self.target(v, g) {
                    if new_id[t] != UNSEEN {
                        out[i * self.rank + g] = Some(new_id[t]);
                        inc[new_id[t] * self.rank + g] = Some(i);
                    }
                }
            }
        }
        LabeledGraph {
            rank: self.rank,
            vertices: n,
            out,
            inc,
        }
    }

    /// Same graph in canonical numbering.
    pub fn canonical(&self) -> LabeledGraph {
        self.renumbered_from(0)
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        let c = self.canonical();
        let mut bytes = Vec::with_capacity(8 + 12 * c.edge_count());
        let mut put = |x: usize| bytes.extend_from_slice(&(x as u32).to_be_bytes());
        put(c.rank);
        put(c.vertices);
        for (g, s, t) in c.edges() {
            put(g);
            put(s);
            put(t);
        }
        CanonicalForm(bytes)
    }

    fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices];
        for (_, s, t) in self.edges() {
            deg[s] += 1;
            deg[t] += 1;
        }
        deg
    }

    /// Repeatedly removes degree-≤1 vertices, optionally sparing the basepoint.
    fn trimmed(&self, spare_basepoint: bool) -> Vec<bool> {
        let mut deg = self.degrees();
        let mut alive = vec![true; self.vertices];
        let mut stack: Vec<usize> = (0..self.vertices)
            .filter(|&v| deg[v] <= 1 && !(spare_basepoint && v == 0))
            .collect();
        let mut remaining = self.vertices;
        while let Some(v) = stack.pop() {
            if !alive[v] || remaining == 1 {
                continue;
            }
            alive[v] = false;
            remaining -= 1;
            for slot in 0..2 * self.rank {
                if let Some(u) = self.neighbor(v, slot) {
                    if alive[u] && u != v {
                        deg[u] -= 1;
                        if deg[u] <= 1 && !(spare_basepoint && u == 0) {
                            stack.push(u);
                        }
                    }
                }
            }
        }
        alive
    }

    fn induced(&self, alive: &[bool], root: usize) -> LabeledGraph {
        let mut keep = self.clone();
        for v in 0..self.vertices {
            for g in 0..self.rank {
                let i = v * self.rank + g;
                if !alive[v] {
                    keep.out[i] = None;
                    keep.inc[i] = None;
                }
                if keep.out[i].is_some_and(|t| !alive[t]) {
                    keep.out[i] = None;
                }
                if keep.inc[i].is_some_and(|s| !alive[s]) {
                    keep.inc[i] = None;
                }
            }
        }
        keep.renumbered_from(root)
    }

    /// Removes hanging trees away from the basepoint; the subgroup is unchanged.
    pub fn core_trim(&self) -> LabeledGraph {
        let alive = self.trimmed(true);
        self.induced(&alive, 0)
    }

    /// Whether no vertex other than the basepoint has degree below 2.
    pub fn is_core(&self) -> bool {
        self.degrees().iter().skip(1).all(|&d| d >= 2)
    }

    /// Core with the basepoint also trimmable; determines the conjugacy class.
    /// Rooted at its lowest surviving vertex.
    pub fn cyclic_core(&self) -> LabeledGraph {
        let alive = self.trimmed(false);
        let root = alive.iter().position(|&a| a).unwrap_or(0);
        self.induced(&alive, root)
    }

    /// Moves the basepoint to `v` and re-trims; represents the conjugate
    /// `u⁻¹ H u` where `u` reads a path from the old basepoint to `v`.
    pub fn rebase(&self, v: usize) -> Result<LabeledGraph> {
        if v >= self.vertices {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                count: self.vertices,
            });
        }
        Ok(self.renumbered_from(v).core_trim())
    }

    /// Isomorphism of the underlying unbased graphs, up to hanging trees:
    /// the represented subgroups are conjugate.
    pub fn isomorphic_as_covers(&self, other: &LabeledGraph) -> Result<bool> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        let (c1, c2) = (self.cyclic_core(), other.cyclic_core());
        if c1.vertices != c2.vertices || c1.edge_count() != c2.edge_count() {
            return Ok(false);
        }
        let target = c2.canonical_form();
        Ok((0..c1.vertices).any(|v| c1.renumbered_from(v).canonical_form() == target))
    }

    /// Least canonical form over all basepoints of the cyclic core; equal
    /// keys exactly when the subgroups are conjugate.
    pub fn conjugacy_key(&self) -> CanonicalForm {
        let core = self.cyclic_core();
        (0..core.vertices)
            .map(|v| core.renumbered_from(v).canonical_form())
            .min()
            .expect("graphs have at least one vertex")
    }

    pub fn spanning_tree(&self) -> SpanningTree {
        let (order, parents) = self.dfs(0);
        SpanningTree::new(self.rank, order, parents)
    }

    /// One generator per edge outside the spanning tree, in (generator, source) order.
    pub fn free_basis(&self) -> Vec<Word> {
        let tree = self.spanning_tree();
        let paths: Vec<Word> = (0..self.vertices).map(|v| tree.path_to(v)).collect();
        self.edges()
            .into_iter()
            .filter(|&(g, s, t)| !tree.contains(g, s, t))
            .map(|(g, s, t)| {
                let back = paths[t].inverse();
                let raw = paths[s]
                    .letters()
                    .iter()
                    .copied()
                    .chain(std::iter::once(Letter::pos(g)))
                    .chain(back.letters().iter().copied());
                Word::reduce(self.rank, raw)
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rank": self.rank,
            "vertices": self.vertices,
            "basepoint": 0,
            "edges": self.edges().into_iter().map(|(g, s, t)| json!([g, s, t])).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let field = |name: &str| {
            value
                .get(name)
                .and_then(Value::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| Error::Json(format!("missing or non-integer {name:?}")))
        };
        let rank = field("rank")?;
        let vertices = field("vertices")?;
        let basepoint = field("basepoint")?;
        if basepoint != 0 {
            return Err(Error::InvalidGraph("basepoint must be vertex 0".into()));
        }
        let edges = value
            .get("edges")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Json("missing \"edges\" array".into()))?
            .iter()
            .map(|e| {
                let bad =
                    || Error::Json(format!("edge must be [generator, source, target], got {e}"));
                let e = e.as_array().filter(|e| e.len() == 3).ok_or_else(bad)?;
                let x = |i: usize| e[i].as_u64().map(|x| x as usize).ok_or_else(bad);
                Ok((x(0)?, x(1)?, x(2)?))
            })
            .collect::<Result<Vec<_>>>()?;
        LabeledGraph::from_edges(rank, vertices, &edges)
    }

    /// Graphviz rendering; the basepoint is double-circled.
    pub fn to_dot(&self, alphabet: &Alphabet) -> String {
        let mut s = String::from("digraph G {\n  node [shape=circle];\n");
        for v in 0..self.vertices {
            if v == 0 {
                s.push_str("  0 [shape=doublecircle];\n");
            } else {
                s.push_str(&format!("  {v};\n"));
            }
        }
        for (g, src, dst) in self.edges() {
            s.push_str(&format!(
                "  {src} -> {dst} [label=\"{}\"];\n",
                alphabet.name(g)
            ));
        }
        s.push_str("}\n");
        s
    }
}
