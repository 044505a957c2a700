//! Abelianization F_n → ℤⁿ and the exact integer linear algebra around it.
//!
//! All elimination runs on `i128` with checked operations; overflow is
//! reported as [`Error::Overflow`], never wrapped.

use std::fmt;
use std::ops::{Add, Neg};

use serde_json::Value;

use crate::error::{Error, Result};
use crate::hom::Homomorphism;
use crate::word::Word;

/// Exponent-sum vector of a word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExpVector(pub Vec<i64>);

impl ExpVector {
    pub fn zero(rank: usize) -> Self {
        ExpVector(vec![0; rank])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

impl Add for &ExpVector {
    type Output = ExpVector;

    fn add(self, rhs: &ExpVector) -> ExpVector {
        assert_eq!(
            self.0.len(),
            rhs.0.len(),
            "exponent vectors of different rank"
        );
        ExpVector(self.0.iter().zip(&rhs.0).map(|(x, y)| x + y).collect())
    }
}

impl Neg for &ExpVector {
    type Output = ExpVector;

    fn neg(self) -> ExpVector {
        ExpVector(self.0.iter().map(|x| -x).collect())
    }
}

impl fmt::Display for ExpVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

pub fn abelianize(w: &Word) -> ExpVector {
    let mut v = vec![0i64; w.rank()];
    for l in w.letters() {
        v[l.generator] += l.sign();
    }
    ExpVector(v)
}

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows; an empty row list is `0 × cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::InvalidArgument(format!(
                "ragged matrix: row of length {} in a {cols}-column matrix",
                r.len()
            )));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            entries: rows.concat(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: i64) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row_vecs(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|r| self.entries[r * self.cols..(r + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn to_json(&self) -> Value {
        Value::from(self.row_vecs())
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let rows: Vec<Vec<i64>> = value
            .as_array()
            .ok_or_else(|| Error::Json("matrix must be an array of rows".into()))?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::Json("matrix row must be an array".into()))?
                    .iter()
                    .map(|x| {
                        x.as_i64()
                            .ok_or_else(|| Error::Json(format!("non-integer entry {x}")))
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        let cols = rows.first().map_or(0, Vec::len);
        IntMatrix::from_rows(cols, &rows)
    }

    fn wide(&self) -> Vec<Vec<i128>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| i128::from(self.get(r, c))).collect())
            .collect()
    }
}

/// Column `j` is the abelianized image of generator `j`.
pub fn hom_matrix(hom: &Homomorphism) -> IntMatrix {
    let mut m = IntMatrix::zeros(hom.target_rank(), hom.source_rank());
    for (j, image) in hom.images().iter().enumerate() {
        for (i, x) in abelianize(image).0.into_iter().enumerate() {
            m.set(i, j, x);
        }
    }
    m
}

/// Rank over ℚ by fraction-free (Bareiss) elimination.
#[allow(clippy::needless_range_loop)]
pub fn integer_rank(m: &IntMatrix) -> Result<usize> {
    let mut a = m.wide();
    let (rows, cols) = (m.rows, m.cols);
    let mut rank = 0;
    let mut prev_pivot: i128 = 1;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][c];
        for r in rank + 1..rows {
            let factor = a[r][c];
            for k in c..cols {
                // Exact division: Bareiss keeps every entry a minor of the input.
                let num = checked_sub(
                    checked_mul(pivot, a[r][k])?,
                    checked_mul(factor, a[rank][k])?,
                )?;
                a[r][k] = num / prev_pivot;
            }
        }
        prev_pivot = pivot;
        rank += 1;
    }
    Ok(rank)
}

/// Nonzero invariant factors of `m`, in diagonal order.
///
/// Repeated gcd elimination: the pivot is the smallest nonzero absolute value
/// in the remaining block, ties broken by lowest row then lowest column.
#[allow(clippy::needless_range_loop)]
pub fn smith_divisors(m: &IntMatrix) -> Result<Vec<i64>> {
    let mut a = m.wide();
    let (rows, cols) = (m.rows, m.cols);
    let mut divisors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pr, pc)) = smallest_entry(&a, t) else {
            break;
        };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        let pivot = a[t][t];
        let mut dirty = false;
        for r in t + 1..rows {
            let q = a[r][t] / pivot;
            if q != 0 {
                for k in t..cols {
                    a[r][k] = checked_sub(a[r][k], checked_mul(q, a[t][k])?)?;
                }
            }
            dirty |= a[r][t] != 0;
        }
        for c in t + 1..cols {
            let q = a[t][c] / pivot;
            if q != 0 {
                for row in a.iter_mut().skip(t) {
                    row[c] = checked_sub(row[c], checked_mul(q, row[t])?)?;
                }
            }
            dirty |= a[t][c] != 0;
        }
        if dirty {
            // A smaller remainder appeared in the pivot row or column.
            continue;
        }
        if let Some(r) = (t + 1..rows).find(|&r| (t + 1..cols).any(|c| a[r][c] % pivot != 0)) {
            for k in t..cols {
                a[t][k] = checked_add(a[t][k], a[r][k])?;
            }
            continue;
        }
        divisors.push(i64::try_from(pivot.abs()).map_err(|_| Error::Overflow)?);
        t += 1;
    }
    Ok(divisors)
}

fn smallest_entry(a: &[Vec<i128>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(u128, usize, usize)> = None;
    for (r, row) in a.iter().enumerate().skip(t) {
        for (c, &x) in row.iter().enumerate().skip(t) {
            if x != 0 && best.is_none_or(|(v, _, _)| x.unsigned_abs() < v) {
                best = Some((x.unsigned_abs(), r, c));
            }
        }
    }
    best.map(|(_, r, c)| (r, c))
}

/// Whether the map ℤ^cols → ℤ^rows given by `m` is onto.
pub fn is_surjective_onto_zn(m: &IntMatrix) -> Result<bool> {
    let d = smith_divisors(m)?;
    Ok(d.len() == m.rows && d.iter().all(|&x| x == 1))
}

/// Whether F_m has a quotient isomorphic to F_n.
pub fn quotient_exists(m: usize, n: usize) -> bool {
    m >= n
}

/// F_m → F_n keeping the first `n` generators and killing the rest.
pub fn canonical_surjection(m: usize, n: usize) -> Result<Homomorphism> {
    if m < n {
        return Err(Error::NoSurjection { m, n });
    }
    let images = (0..m)
        .map(|j| {
            if j < n {
                Word::generator(n, j)
            } else {
                Word::identity(n)
            }
        })
        .collect();
    Homomorphism::new(n, images)
}

fn checked_mul(x: i128, y: i128) -> Result<i128> {
    x.checked_mul(y).ok_or(Error::Overflow)
}

fn checked_sub(x: i128, y: i128) -> Result<i128> {
    x.checked_sub(y).ok_or(Error::Overflow)
}

fn checked_add(x: i128, y: i128) -> Result<i128> {
    x.checked_add(y).ok_or(Error::Overflow)
}
