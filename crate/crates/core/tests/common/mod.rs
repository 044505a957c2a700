//! Permutation-action oracle shared by the integration tests: a transitive
//! tuple of permutations of {0..e} describes the index-e subgroup fixing 0.
#![allow(dead_code)]

use std::collections::BTreeSet;

use itertools::Itertools;

pub type Tuple = Vec<Vec<usize>>;

pub fn transitive(t: &Tuple, e: usize) -> bool {
    let mut seen = BTreeSet::from([0]);
    let mut frontier = vec![0];
    while let Some(x) = frontier.pop() {
        for p in t {
            let inv = p.iter().position(|&y| y == x).unwrap();
            for y in [p[x], inv] {
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
    }
    seen.len() == e
}

/// `π σ π⁻¹` for every σ in the tuple.
pub fn relabel(t: &Tuple, pi: &[usize]) -> Tuple {
    t.iter()
        .map(|p| {
            let mut q = vec![0; p.len()];
            for (i, &x) in p.iter().enumerate() {
                q[pi[i]] = pi[x];
            }
            q
        })
        .collect()
}

/// Point stabilisers of 0 agree iff the actions are isomorphic fixing 0.
pub fn subgroup_key(t: &Tuple, e: usize) -> Tuple {
    (1..e)
        .permutations(e - 1)
        .map(|rest| {
            let pi: Vec<usize> = std::iter::once(0).chain(rest).collect();
            relabel(t, &pi)
        })
        .min()
        .unwrap()
}

pub fn class_key(t: &Tuple, e: usize) -> Tuple {
    (0..e)
        .permutations(e)
        .map(|pi| relabel(t, &pi))
        .min()
        .unwrap()
}

/// Stabiliser of 0 moved to point p: swap the roles of 0 and p.
pub fn moved_basepoint(t: &Tuple, e: usize, p: usize) -> Tuple {
    let mut pi: Vec<usize> = (0..e).collect();
    pi.swap(0, p);
    relabel(t, &pi)
}
