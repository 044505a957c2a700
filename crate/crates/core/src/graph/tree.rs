use crate::word::{Letter, Word};

/// Edge by which a vertex was first reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TreeEdge {
    pub parent: usize,
    pub generator: usize,
    /// `true` when the edge runs parent → child.
    pub forward: bool,
}

/// Depth-first spanning tree rooted at the basepoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    rank: usize,
    order: Vec<usize>,
    parents: Vec<Option<TreeEdge>>,
}

impl SpanningTree {
    pub(super) fn new(rank: usize, order: Vec<usize>, parents: Vec<Option<TreeEdge>>) -> Self {
        SpanningTree {
            rank,
            order,
            parents,
        }
    }

    /// Vertices in discovery order, basepoint first.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn parent(&self, v: usize) -> Option<TreeEdge> {
        self.parents[v]
    }

    /// Tree edges as `(generator, source, target)` in discovery order.
    pub fn edges(&self) -> Vec<(usize, usize, usize)> {
        self.order
            .iter()
            .filter_map(|&v| {
                self.parents[v].map(|e| {
                    if e.forward {
                        (e.generator, e.parent, v)
                    } else {
                        (e.generator, v, e.parent)
                    }
                })
            })
            .collect()
    }

    pub fn contains(&self, generator: usize, source: usize, target: usize) -> bool {
        let is = |child: usize, parent: usize, forward: bool| {
            self.parents[child]
                == Some(TreeEdge {
                    parent,
                    generator,
                    forward,
                })
        };
        source != target && (is(target, source, true) || is(source, target, false))
    }

    /// Label of the tree path from the basepoint to `v`.
    pub fn path_to(&self, v: usize) -> Word {
        let mut letters = Vec::new();
        let mut cur = v;
        while let Some(e) = self.parents[cur] {
            letters.push(Letter::new(e.generator, e.forward));
            cur = e.parent;
        }
        letters.reverse();
        Word::reduce(self.rank, letters)
    }
}
