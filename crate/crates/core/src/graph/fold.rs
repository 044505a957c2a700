//! Stallings folding of a [`RawGraph`] into a [`LabeledGraph`].

use rand::{seq::SliceRandom, Rng, RngCore};

use super::{LabeledGraph, RawGraph};

/// Disjoint sets with path compression and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(len: usize) -> Self {
        UnionFind {
            parent: (0..len).collect(),
            size: vec![1; len],
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut x = x;
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    /// Merges two roots; returns `(kept, absorbed)`.
    fn union_roots(&mut self, a: usize, b: usize, prefer_b: bool) -> (usize, usize) {
        let (keep, gone) = match self.size[a].cmp(&self.size[b]) {
            std::cmp::Ordering::Greater => (a, b),
            std::cmp::Ordering::Less => (b, a),
            std::cmp::Ordering::Equal if prefer_b => (b, a),
            std::cmp::Ordering::Equal => (a.min(b), a.max(b)),
        };
        self.parent[gone] = keep;
        self.size[keep] += self.size[gone];
        (keep, gone)
    }
}

pub fn fold(raw: &RawGraph) -> LabeledGraph {
    fold_impl(raw, None)
}

/// Folds with a randomized merge order. The result must not depend on `rng`.
pub fn fold_shuffled<R: RngCore>(raw: &RawGraph, rng: &mut R) -> LabeledGraph {
    fold_impl(raw, Some(rng))
}

fn fold_impl(raw: &RawGraph, mut rng: Option<&mut dyn RngCore>) -> LabeledGraph {
    let rank = raw.rank;
    let slots = 2 * rank;
    // adj[v][2g] = targets of g-edges leaving v, adj[v][2g + 1] = sources of g-edges entering v.
    let mut adj: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); slots]; raw.vertices];
    let mut edges = raw.edges.clone();
    if let Some(r) = rng.as_deref_mut() {
        edges.shuffle(r);
    }
    for &(g, s, t) in &edges {
        adj[s][2 * g].push(t);
        adj[t][2 * g + 1].push(s);
    }

    let mut queue: Vec<(usize, usize)> = Vec::new();
    for lists in adj.iter_mut() {
        for list in lists.iter_mut() {
            queue_clashes(list, &mut queue);
        }
    }

    let mut uf = UnionFind::new(raw.vertices);
    while !queue.is_empty() {
        let pick = match rng.as_deref_mut() {
            Some(r) => r.gen_range(0..queue.len()),
            None => queue.len() - 1,
        };
        let (x, y) = queue.swap_remove(pick);
        let (rx, ry) = (uf.find(x), uf.find(y));
        if rx == ry {
            continue;
        }
        let coin = rng.as_deref_mut().is_some_and(|r| r.gen_bool(0.5));
        let (keep, gone) = uf.union_roots(rx, ry, coin);
        let absorbed = std::mem::take(&mut adj[gone]);
        for (slot, moved) in absorbed.into_iter().enumerate() {
            let list = &mut adj[keep][slot];
            list.extend(moved);
            queue_clashes(list, &mut queue);
        }
    }

    let mut out = vec![None; raw.vertices * rank];
    let mut inc = vec![None; raw.vertices * rank];
    for v in 0..raw.vertices {
        if uf.find(v) != v {
            continue;
        }
        for g in 0..rank {
            if let Some(&t) = adj[v][2 * g].first() {
                let t = uf.find(t);
                out[v * rank + g] = Some(t);
                inc[t * rank + g] = Some(v);
            }
        }
    }
    let root = uf.find(0);
    LabeledGraph {
        rank,
        vertices: raw.vertices,
        out,
        inc,
    }
    .renumbered_from(root)
}

/// Keeps one entry of `list` and queues merges of the rest with it.
fn queue_clashes(list: &mut Vec<usize>, queue: &mut Vec<(usize, usize)>) {
    if list.len() > 1 {
        let first = list[0];
        queue.extend(list[1..].iter().map(|&x| (first, x)));
        list.truncate(1);
    }
}
