//! Subgroups of F_n as folded core graphs, with normality, conjugation,
//! the standard constructions and the existence criteria for free
//! subgroups, normal subgroups and quotients.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{bouquet, CanonicalForm, Index, LabeledGraph};
use crate::word::{parse_word, Alphabet, Word};

/// A finitely generated subgroup of F_n.
///
/// The graph is core-trimmed and canonically numbered, so two `Subgroup`
/// values are equal exactly when they are the same subgroup.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    graph: LabeledGraph,
    basis: Vec<Word>,
    index: Index,
    rank: usize,
}

impl Subgroup {
    pub fn generated_by(ambient_rank: usize, generators: &[Word]) -> Result<Self> {
        Ok(Subgroup::from_graph(
            &bouquet(ambient_rank, generators)?.fold(),
        ))
    }

    pub fn from_graph(graph: &LabeledGraph) -> Self {
        let graph = graph.core_trim();
        Subgroup {
            basis: graph.free_basis(),
            index: graph.index(),
            rank: graph.rank(),
            graph,
        }
    }

    pub fn whole(ambient_rank: usize) -> Self {
        Subgroup::from_graph(&LabeledGraph::rose(ambient_rank))
    }

    pub fn ambient_rank(&self) -> usize {
        self.graph.ambient_rank()
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn basis(&self) -> &[Word] {
        &self.basis
    }

    pub fn index(&self) -> Index {
        self.index
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        self.graph.canonical_form()
    }

    pub fn contains(&self, w: &Word) -> Result<bool> {
        self.graph.accepts(w)
    }

    pub fn is_normal(&self) -> bool {
        self.normal_by_rebase()
            .unwrap_or_else(|| self.normal_by_conjugation())
    }

    /// Deck-group test: a finite cover is normal when every choice of
    /// basepoint yields the same based graph. `None` for infinite index.
    pub fn normal_by_rebase(&self) -> Option<bool> {
        self.index.finite()?;
        let form = self.canonical_form();
        Some((0..self.graph.vertex_count()).all(|v| {
            self.graph
                .rebase(v)
                .is_ok_and(|g| g.canonical_form() == form)
        }))
    }

    /// `xHx⁻¹ = H` for every generator `x` and every inverse `x⁻¹`.
    pub fn normal_by_conjugation(&self) -> bool {
        let n = self.ambient_rank();
        (0..n).all(|g| {
            let x = Word::generator(n, g);
            [x.clone(), x.inverse()]
                .iter()
                .all(|by| self.conjugate(by).is_ok_and(|c| c == *self))
        })
    }

    /// `w H w⁻¹`, generated by the conjugated basis.
    pub fn conjugate(&self, w: &Word) -> Result<Subgroup> {
        let words = self
            .basis
            .iter()
            .map(|b| b.conjugate_by(w))
            .collect::<Result<Vec<_>>>()?;
        Subgroup::generated_by(self.ambient_rank(), &words)
    }

    pub fn is_conjugate_to(&self, other: &Subgroup) -> Result<bool> {
        self.graph.isomorphic_as_covers(&other.graph)
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        json!({
            "ambientRank": self.ambient_rank(),
            "graph": self.graph.to_json(),
            "basis": self.basis.iter().map(|b| b.to_string_with(alphabet)).collect::<Vec<_>>(),
            "index": self.index.to_json(),
            "rank": self.rank,
            "normal": self.is_normal(),
        })
    }

    /// Loads a record and checks that every cached field agrees with the graph.
    pub fn from_json(value: &Value, alphabet: &Alphabet) -> Result<Self> {
        let graph = LabeledGraph::from_json(
            value
                .get("graph")
                .ok_or_else(|| Error::Json("missing \"graph\"".into()))?,
        )?;
        let ambient = value.get("ambientRank").and_then(Value::as_u64);
        if ambient != Some(graph.ambient_rank() as u64) || alphabet.rank() != graph.ambient_rank() {
            return Err(Error::InvalidGraph(
                "ambientRank disagrees with the graph or alphabet".into(),
            ));
        }
        if !graph.is_core() {
            return Err(Error::InvalidGraph(
                "subgroup graph is not a core graph".into(),
            ));
        }
        let sub = Subgroup::from_graph(&graph);
        let basis = value
            .get("basis")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Json("missing \"basis\" array".into()))?
            .iter()
            .map(|b| {
                let text = b
                    .as_str()
                    .ok_or_else(|| Error::Json("basis entries must be strings".into()))?;
                parse_word(text, alphabet)
            })
            .collect::<Result<Vec<_>>>()?;
        if basis.len() != sub.rank || Subgroup::generated_by(sub.ambient_rank(), &basis)? != sub {
            return Err(Error::InvalidGraph(
                "basis does not generate the graph's subgroup".into(),
            ));
        }
        if value.get("index") != Some(&sub.index.to_json())
            || value.get("rank").and_then(Value::as_u64) != Some(sub.rank as u64)
            || value.get("normal").and_then(Value::as_bool) != Some(sub.is_normal())
        {
            return Err(Error::InvalidGraph(
                "cached index, rank or normal flag is wrong".into(),
            ));
        }
        Ok(Subgroup { basis, ..sub })
    }
}

/// Kernel of the map onto ℤ/k reading the exponent sum of the last
/// generator: the other generators are loops at every vertex and the last
/// one cycles `i → i + 1 mod k`.
pub fn cyclic_cover(n: usize, k: usize) -> Result<Subgroup> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidArgument(format!(
            "cyclic cover needs n ≥ 1 and k ≥ 1, got n = {n}, k = {k}"
        )));
    }
    let mut edges = Vec::with_capacity(n * k);
    for g in 0..n {
        for i in 0..k {
            let t = if g + 1 == n { (i + 1) % k } else { i };
            edges.push((g, i, t));
        }
    }
    Ok(Subgroup::from_graph(&LabeledGraph::from_edges(
        n, k, &edges,
    )?))
}

/// A subgroup of F₂ isomorphic to F_m: the index-(m − 1) cyclic cover.
pub fn embed_in_f2(m: usize) -> Result<Subgroup> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "F_{m} is abelian; only m ≥ 2 has a cover-based embedding"
        )));
    }
    cyclic_cover(2, m - 1)
}

/// `⟨bⁱ a b⁻ⁱ : 0 ≤ i < r⟩` in F₂: rank r, infinite index, not normal.
pub fn infinite_index_example(r: usize) -> Result<Subgroup> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be at least 1".into()));
    }
    let a = Word::generator(2, 0);
    let b = Word::generator(2, 1);
    let gens = (0..r)
        .map(|i| a.conjugate_by(&b.pow(i as i64)))
        .collect::<Result<Vec<_>>>()?;
    Subgroup::generated_by(2, &gens)
}

/// Rank of an index-`e` subgroup of F_n.
pub fn nielsen_schreier_rank(n: usize, e: usize) -> Result<usize> {
    if n == 0 || e == 0 {
        return Err(Error::InvalidArgument("need n ≥ 1 and e ≥ 1".into()));
    }
    e.checked_mul(n - 1)
        .and_then(|x| x.checked_add(1))
        .ok_or(Error::Overflow)
}

/// Whether F_m has a subgroup isomorphic to F_n.
pub fn subgroup_exists(m: usize, n: usize) -> bool {
    match n {
        0 => true,
        1 => m >= 1,
        _ => m >= 2,
    }
}

/// Whether F_ambient has a normal subgroup isomorphic to F_sub.
///
/// For ambient, sub ≥ 2 this is `(ambient − 1) | (sub − 1)`: a nontrivial
/// normal subgroup of infinite index is not finitely generated, so the
/// subgroup has some finite index e and rank `1 + e(ambient − 1)`.
pub fn normal_subgroup_exists(ambient: usize, sub: usize) -> bool {
    match (ambient, sub) {
        (_, 0) => true,
        (0, _) => false,
        (a, s) if a == s => true,
        (1, _) => false,
        (_, 1) => false,
        (a, s) => (s - 1) % (a - 1) == 0,
    }
}
