//! Exact linear algebra over `Scalar`: dense elimination for small systems and
//! a sparse incremental echelon form for the large invariance systems.

use std::collections::BTreeMap;

use super::scalar::Scalar;
use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<Scalar>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![Scalar::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Scalar::one();
    }
    m
}

pub fn transpose(m: &Matrix) -> Matrix {
    if m.is_empty() {
        return Vec::new();
    }
    let (r, c) = (m.len(), m[0].len());
    (0..c).map(|j| (0..r).map(|i| m[i][j].clone()).collect()).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = Scalar::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            acc += &(&row[k] * &b[k][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &Matrix, v: &[Scalar]) -> Vec<Scalar> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(x, y)| !x.is_zero() && !y.is_zero())
                .map(|(x, y)| x * y)
                .sum()
        })
        .collect()
}

pub fn mat_add(a: &Matrix, b: &Matrix, k: &Scalar) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + &(y * k)).collect())
        .collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let (pivot_row, other) = if i < r {
                    let (lo, hi) = m.split_at_mut(r);
                    (&hi[0], &mut lo[i])
                } else {
                    let (lo, hi) = m.split_at_mut(i);
                    (&lo[r], &mut hi[0])
                };
                for (x, y) in other.iter_mut().zip(pivot_row.iter()) {
                    if !y.is_zero() {
                        *x = &*x - &(y * &f);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut w = m.clone();
    rref(&mut w).len()
}

/// Solves `a·x = b` for a unique `x` (b may have several columns).
pub fn solve_unique(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let n = a.first().map_or(0, |r| r.len());
    let k = b.first().map_or(0, |r| r.len());
    let mut aug: Matrix = a.iter().zip(b).map(|(ra, rb)| ra.iter().chain(rb).cloned().collect()).collect();
    let pivots = rref(&mut aug);
    if pivots.iter().any(|&p| p >= n) {
        return Err(Error::Singular("inconsistent system".into()));
    }
    if pivots.len() < n {
        return Err(Error::Singular(format!("rank {} < {n} unknowns", pivots.len())));
    }
    let mut x = zeros(n, k);
    for (row, &p) in pivots.iter().enumerate() {
        for j in 0..k {
            x[p][j] = aug[row][n + j].clone();
        }
    }
    Ok(x)
}

pub fn inverse(m: &Matrix) -> Result<Matrix> {
    solve_unique(m, &identity(m.len()))
}

/// Basis of the right null space.
pub fn nullspace(m: &Matrix) -> Vec<Vec<Scalar>> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut w = m.clone();
    let pivots = rref(&mut w);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); cols];
            v[f] = Scalar::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -&w[row][f];
            }
            v
        })
        .collect()
}

/// Sparse row: sorted `(column, value)` pairs without zeros.
pub type SparseRow = Vec<(usize, Scalar)>;

/// Incremental row echelon form over sparse rows, keyed by pivot column.
#[derive(Default, Debug, Clone)]
pub struct SparseEchelon {
    rows: BTreeMap<usize, SparseRow>,
}

fn axpy(row: &SparseRow, other: &SparseRow, k: &Scalar) -> SparseRow {
    // row + k·other
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < other.len() {
        let take_i = j >= other.len() || (i < row.len() && row[i].0 < other[j].0);
        let take_j = i >= row.len() || (j < other.len() && other[j].0 < row[i].0);
        if take_i {
            out.push(row[i].clone());
            i += 1;
        } else if take_j {
            let v = &other[j].1 * k;
            if !v.is_zero() {
                out.push((other[j].0, v));
            }
            j += 1;
        } else {
            let v = &row[i].1 + &(&other[j].1 * k);
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a row; returns true when it increased the rank.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        row.retain(|t| !t.1.is_zero());
        row.sort_by_key(|t| t.0);
        loop {
            let Some((lead, val)) = row.first().cloned() else { return false };
            match self.rows.get(&lead) {
                Some(p) => row = axpy(&row, p, &(-val)),
                None => {
                    let inv = val.recip().expect("nonzero");
                    for t in row.iter_mut() {
                        t.1 = &t.1 * &inv;
                    }
                    self.rows.insert(lead, row);
                    return true;
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Back-substitutes into reduced row echelon form.
    pub fn reduce(&mut self) {
        let pivots: Vec<usize> = self.rows.keys().rev().copied().collect();
        for &p in &pivots {
            let prow = self.rows[&p].clone();
            let targets: Vec<usize> = self
                .rows
                .iter()
                .filter(|(&q, r)| q < p && r.iter().any(|t| t.0 == p))
                .map(|(&q, _)| q)
                .collect();
            for q in targets {
                let r = &self.rows[&q];
                let k = r.iter().find(|t| t.0 == p).map(|t| -&t.1).unwrap();
                let nr = axpy(r, &prow, &k);
                self.rows.insert(q, nr);
            }
        }
    }

    /// After `reduce`: a column is zero on the whole solution space iff it is
    /// a pivot whose row has no other entries.
    pub fn forced_zero(&self, col: usize) -> bool {
        self.rows.get(&col).is_some_and(|r| r.len() == 1)
    }

    pub fn row(&self, pivot: usize) -> Option<&SparseRow> {
        self.rows.get(&pivot)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| Scalar::int(x)).collect()).collect()
    }

    #[test]
    fn inverse_2x2() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity(2));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_err());
    }

    #[test]
    fn nullspace_dim() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = nullspace(&a);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(mat_vec(&a, &v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn sparse_matches_dense_rank() {
        let rows = [[1, 0, 2, 0], [0, 1, 1, 0], [1, 1, 3, 0], [0, 0, 0, 5]];
        let mut e = SparseEchelon::new();
        for r in rows {
            e.insert(r.iter().enumerate().map(|(c, &x)| (c, Scalar::int(x))).collect());
        }
        let dense: Matrix = rows.iter().map(|r| r.iter().map(|&x| Scalar::int(x)).collect()).collect();
        assert_eq!(e.rank(), rank(&dense));
        e.reduce();
        assert!(e.forced_zero(3));
        assert!(!e.forced_zero(0));
    }
}
