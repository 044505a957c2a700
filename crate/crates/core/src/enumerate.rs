//! Finite-index subgroups from transitive permutation actions.
//!
//! An index-e subgroup of F_n is the stabilizer of point 0 under a
//! transitive action of F_n on `{0, …, e−1}`, i.e. an n-tuple of
//! permutations. Tuples that differ by relabeling the points other than 0
//! give the same subgroup; deduplication is by canonical form.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{CanonicalForm, LabeledGraph};
use crate::subgroup::Subgroup;
use crate::word::Word;

/// Default ceiling on `e · (e!)^(n−1)`.
pub const DEFAULT_ENUM_CAP: u64 = 10_000_000;

/// One permutation of `{0, …, degree−1}` per generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PermTuple {
    degree: usize,
    perms: Vec<Vec<usize>>,
}

impl PermTuple {
    pub fn new(degree: usize, perms: Vec<Vec<usize>>) -> Result<Self> {
        for (g, p) in perms.iter().enumerate() {
            if p.len() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator {g}: {} images for degree {degree}",
                    p.len()
                )));
            }
            let mut hit = vec![false; degree];
            for &x in p {
                if x >= degree || std::mem::replace(&mut hit[x], true) {
                    return Err(Error::InvalidPermutation(format!(
                        "generator {g}: {p:?} is not a bijection"
                    )));
                }
            }
        }
        Ok(PermTuple { degree, perms })
    }

    /// Reads the action off a complete graph; `None` if some label is partial.
    pub fn from_graph(g: &LabeledGraph) -> Option<Self> {
        let perms = (0..g.ambient_rank())
            .map(|gen| {
                (0..g.vertex_count())
                    .map(|v| g.target(v, gen))
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<Vec<_>>>()?;
        Some(PermTuple {
            degree: g.vertex_count(),
            perms,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    pub fn is_transitive(&self) -> bool {
        if self.degree == 0 {
            return false;
        }
        let mut seen = vec![false; self.degree];
        seen[0] = true;
        let mut stack = vec![0];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for p in &self.perms {
                let y = p[x];
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == self.degree
    }

    /// Right action of `w` on `point`, letter by letter.
    pub fn act(&self, point: usize, w: &Word) -> usize {
        let inverses: Vec<Vec<usize>> = self.perms.iter().map(|p| invert(p)).collect();
        w.letters().iter().fold(point, |x, l| {
            if l.positive {
                self.perms[l.generator][x]
            } else {
                inverses[l.generator][x]
            }
        })
    }
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

/// Covering graph of a transitive action: `i → t[g](i)` under generator g.
pub fn graph_from_perms(t: &PermTuple) -> Result<LabeledGraph> {
    if !t.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let edges: Vec<_> = t
        .perms
        .iter()
        .enumerate()
        .flat_map(|(g, p)| p.iter().enumerate().map(move |(i, &x)| (g, i, x)))
        .collect();
    LabeledGraph::from_edges(t.perms.len(), t.degree, &edges)
}

/// `e · (e!)^(n−1)`, or `None` on overflow.
pub fn candidate_count(n: usize, e: usize) -> Option<u128> {
    let fact = (1..=e as u128).try_fold(1u128, |acc, k| acc.checked_mul(k))?;
    (1..n).try_fold(e as u128, |acc, _| acc.checked_mul(fact))
}

/// Number of index-e subgroups of F_n by the classical recursion
/// `N_e = e·(e!)^(n−1) − Σ_{i<e} ((e−i)!)^(n−1) · N_i`.
pub fn count_index(n: usize, e: usize) -> Result<u128> {
    if n == 0 || e == 0 {
        return Err(Error::InvalidArgument("need n ≥ 1 and e ≥ 1".into()));
    }
    let pow = |base: u128, exp: usize| -> Result<u128> {
        (0..exp).try_fold(1u128, |acc, _| acc.checked_mul(base).ok_or(Error::Overflow))
    };
    let mut fact = vec![1u128];
    for k in 1..=e as u128 {
        fact.push(fact[fact.len() - 1].checked_mul(k).ok_or(Error::Overflow)?);
    }
    let mut counts: Vec<u128> = vec![0];
    for k in 1..=e {
        let mut total = (k as u128)
            .checked_mul(pow(fact[k], n - 1)?)
            .ok_or(Error::Overflow)?;
        for (i, &n_i) in counts.iter().enumerate().skip(1) {
            let term = pow(fact[k - i], n - 1)?
                .checked_mul(n_i)
                .ok_or(Error::Overflow)?;
            total = total.checked_sub(term).ok_or(Error::Overflow)?;
        }
        counts.push(total);
    }
    Ok(counts[e])
}

/// One permutation per conjugacy class under the stabilizer of 0: the cycle
/// through 0 is `(0 1 … l−1)`, the remaining cycles follow in
/// non-increasing length on consecutive points.
fn first_generator_representatives(e: usize) -> Vec<Vec<usize>> {
    let mut reps = Vec::new();
    for l in 1..=e {
        for parts in partitions(e - l, e - l) {
            let mut p = vec![0; e];
            let mut start = 0;
            for len in std::iter::once(l).chain(parts) {
                for i in 0..len {
                    p[start + i] = start + (i + 1) % len;
                }
                start += len;
            }
            reps.push(p);
        }
    }
    reps
}

/// Partitions of `n` into parts of size at most `max`, non-increasing.
fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every subgroup of index exactly `e` in F_n, sorted by canonical form.
///
/// Refuses when `e · (e!)^(n−1)` exceeds `cap`.
pub fn enumerate_index(n: usize, e: usize, cap: u64) -> Result<Vec<Subgroup>> {
    if n == 0 || e == 0 {
        return Err(Error::InvalidArgument(format!(
            "enumeration needs n ≥ 1 and e ≥ 1, got n = {n}, e = {e}"
        )));
    }
    match candidate_count(n, e) {
        Some(c) if c <= u128::from(cap) => {}
        c => {
            return Err(Error::CapExceeded {
                candidates: c.map_or_else(|| "more than 2^128".to_string(), |c| c.to_string()),
                cap,
            })
        }
    }

    let firsts = first_generator_representatives(e);
    let all: Vec<Vec<usize>> = (0..e).permutations(e).collect();
    let found: BTreeMap<CanonicalForm, LabeledGraph> = firsts
        .par_iter()
        .flat_map_iter(|first| {
            let rest = std::iter::repeat_n(0..all.len(), n - 1).multi_cartesian_product();
            // multi_cartesian_product of zero iterators yields nothing; n = 1 has one tuple.
            let rest: Box<dyn Iterator<Item = Vec<usize>>> = if n == 1 {
                Box::new(std::iter::once(Vec::new()))
            } else {
                Box::new(rest)
            };
            let all = &all;
            rest.filter_map(move |choice| {
                let mut perms = Vec::with_capacity(n);
                perms.push(first.clone());
                perms.extend(choice.into_iter().map(|i| all[i].clone()));
                let graph = graph_from_perms(&PermTuple { degree: e, perms }).ok()?;
                Some((graph.canonical_form(), graph))
            })
        })
        .collect();
    Ok(found.values().map(Subgroup::from_graph).collect())
}

/// Partition into conjugacy classes, as indices into `subs`.
///
/// Classes are ordered by their representative, the member with least
/// canonical form; members within a class are ordered the same way.
pub fn conjugacy_classes(subs: &[Subgroup]) -> Vec<Vec<usize>> {
    let keys: Vec<CanonicalForm> = subs.par_iter().map(|s| s.graph().conjugacy_key()).collect();
    let forms: Vec<CanonicalForm> = subs.iter().map(Subgroup::canonical_form).collect();
    let mut classes: HashMap<&CanonicalForm, Vec<usize>> = HashMap::new();
    for (i, key) in keys.iter().enumerate() {
        classes.entry(key).or_default().push(i);
    }
    let mut classes: Vec<Vec<usize>> = classes
        .into_values()
        .map(|mut members| {
            members.sort_by(|&a, &b| forms[a].cmp(&forms[b]).then(a.cmp(&b)));
            members
        })
        .collect();
    classes.sort_by(|x, y| forms[x[0]].cmp(&forms[y[0]]).then(x[0].cmp(&y[0])));
    classes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Index;

    #[test]
    fn perm_validation() {
        assert!(PermTuple::new(3, vec![vec![1, 2, 0], vec![0, 1, 2]]).is_ok());
        assert!(PermTuple::new(3, vec![vec![1, 1, 0]]).is_err());
        assert!(PermTuple::new(3, vec![vec![1, 0]]).is_err());
        assert!(PermTuple::new(2, vec![vec![0, 2]]).is_err());
    }

    #[test]
    fn graphs_from_perms() {
        let rose = graph_from_perms(&PermTuple::new(1, vec![vec![0], vec![0]]).unwrap()).unwrap();
        assert_eq!(rose, LabeledGraph::rose(2));
        let t = PermTuple::new(3, vec![vec![1, 2, 0], vec![0, 1, 2]]).unwrap();
        let g = graph_from_perms(&t).unwrap();
        assert_eq!(
            g.edges(),
            vec![
                (0, 0, 1),
                (0, 1, 2),
                (0, 2, 0),
                (1, 0, 0),
                (1, 1, 1),
                (1, 2, 2)
            ]
        );
        assert_eq!(PermTuple::from_graph(&g), Some(t));
        let stuck = PermTuple::new(2, vec![vec![0, 1], vec![0, 1]]).unwrap();
        assert!(matches!(
            graph_from_perms(&stuck),
            Err(Error::NotTransitive)
        ));
    }

    #[test]
    fn hall_counts() {
        assert_eq!(count_index(2, 1).unwrap(), 1);
        assert_eq!(count_index(2, 2).unwrap(), 3);
        assert_eq!(count_index(2, 3).unwrap(), 13);
        assert_eq!(count_index(1, 7).unwrap(), 1);
        assert!(count_index(0, 1).is_err());
        assert!(matches!(count_index(30, 40), Err(Error::Overflow)));
    }

    #[test]
    fn representatives_cover_cycle_types() {
        // e = 4: l = 1 → 3 partitions of 3; l = 2 → 2; l = 3 → 1; l = 4 → 1.
        let reps = first_generator_representatives(4);
        assert_eq!(reps.len(), 7);
        assert!(reps.contains(&vec![1, 2, 3, 0]));
        assert!(reps.contains(&vec![0, 2, 1, 3]));
        assert_eq!(partitions(4, 4).len(), 5);
    }

    #[test]
    fn small_enumerations() {
        let one = enumerate_index(2, 1, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(one, vec![Subgroup::whole(2)]);
        let two = enumerate_index(2, 2, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(two.len(), 3);
        assert!(two
            .iter()
            .all(|s| s.index() == Index::Finite(2) && s.is_normal()));
        assert_eq!(conjugacy_classes(&two).len(), 3);
        let three = enumerate_index(2, 3, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(three.len(), 13);
        assert!(three
            .windows(2)
            .all(|w| w[0].canonical_form() < w[1].canonical_form()));
        assert_eq!(enumerate_index(1, 5, DEFAULT_ENUM_CAP).unwrap().len(), 1);
    }

    #[test]
    fn cap_guard() {
        assert_eq!(candidate_count(2, 3), Some(18));
        assert!(matches!(
            enumerate_index(2, 3, 17),
            Err(Error::CapExceeded { .. })
        ));
        assert!(enumerate_index(2, 3, 18).is_ok());
        assert!(matches!(
            enumerate_index(3, 9, DEFAULT_ENUM_CAP),
            Err(Error::CapExceeded { .. })
        ));
        assert!(enumerate_index(2, 0, DEFAULT_ENUM_CAP).is_err());
    }

    #[test]
    fn classes_singleton() {
        let s = vec![Subgroup::whole(2)];
        assert_eq!(conjugacy_classes(&s), vec![vec![0]]);
        assert!(conjugacy_classes(&[]).is_empty());
    }
}
