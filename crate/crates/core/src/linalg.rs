//! Small exact linear algebra over the rationals: dense matrices for weight
//! spaces and sparse matrices for whole-representation generators.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::ratfun::Scalar;

#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows).map(|r| self.row(r).iter().map(|x| x.to_string()).collect()).collect();
        write!(f, "QMatrix{rows:?}")
    }
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_columns(rows: usize, cols: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum()
            })
            .collect()
    }

    pub fn scale(&self, k: &Scalar) -> QMatrix {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else { continue };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        let v = &m[(r, j)] * &f;
                        m[(i, j)] -= v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, one vector per free column, in column order.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(row, f)].clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Some(QMatrix::zeros(0, 0));
        }
        let mut aug = QMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Scalar::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(inv)
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Scalar;

    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }
}

/// Incrementally built basis with coordinates: accepts a vector when it is
/// independent of those already accepted, and otherwise expresses it in
/// terms of them.
#[derive(Debug, Default)]
pub struct EchelonBasis {
    accepted: usize,
    // (pivot column, reduced row, the row as a combination of accepted vectors)
    rows: Vec<(usize, Vec<Scalar>, Vec<Scalar>)>,
}

pub enum Reduction {
    Independent,
    Combination(Vec<Scalar>),
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.accepted
    }

    pub fn is_empty(&self) -> bool {
        self.accepted == 0
    }

    fn reduce(&self, v: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
        let mut w = v.to_vec();
        let mut coeffs = vec![Scalar::zero(); self.accepted];
        for (p, row, combo) in &self.rows {
            if w[*p].is_zero() {
                continue;
            }
            let c = w[*p].clone();
            for (x, r) in w.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &c * r;
                }
            }
            for (y, t) in coeffs.iter_mut().zip(combo) {
                if !t.is_zero() {
                    *y += &c * t;
                }
            }
        }
        (w, coeffs)
    }

    /// Coordinates of `v` in the accepted vectors, if it lies in their span.
    pub fn express(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let (w, coeffs) = self.reduce(v);
        w.iter().all(Zero::is_zero).then_some(coeffs)
    }

    /// Accepts `v` if independent; otherwise returns its coordinates.
    pub fn insert(&mut self, v: &[Scalar]) -> Reduction {
        let (w, mut coeffs) = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return Reduction::Combination(coeffs);
        };
        // w = v - sum(coeffs * a); new accepted vector is v itself.
        let inv = w[p].recip();
        let row: Vec<Scalar> = w.iter().map(|x| x * &inv).collect();
        for c in coeffs.iter_mut() {
            *c = -(&*c) * &inv;
        }
        coeffs.push(inv);
        self.accepted += 1;
        for (_, _, combo) in self.rows.iter_mut() {
            combo.push(Scalar::zero());
        }
        for (_, r, combo) in self.rows.iter_mut() {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, y) in r.iter_mut().zip(&row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            for (x, y) in combo.iter_mut().zip(&coeffs) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push((p, row, coeffs));
        Reduction::Independent
    }
}

/// Square sparse matrix stored by rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    n: usize,
    rows: Vec<BTreeMap<usize, Scalar>>,
}

impl SparseMatrix {
    pub fn zeros(n: usize) -> Self {
        SparseMatrix { n, rows: vec![BTreeMap::new(); n] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn add_entry(&mut self, r: usize, c: usize, v: Scalar) {
        if v.is_zero() {
            return;
        }
        let e = self.rows[r].entry(c).or_insert_with(Scalar::zero);
        *e += v;
        if e.is_zero() {
            self.rows[r].remove(&c);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.rows[r].get(&c).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BTreeMap::is_empty)
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    /// `(row, col, value)` in row-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.rows.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(&c, v)| (r, c, v)))
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.n, other.n);
        let mut out = SparseMatrix::zeros(self.n);
        for (r, row) in self.rows.iter().enumerate() {
            for (k, a) in row {
                for (c, b) in &other.rows[*k] {
                    out.add_entry(r, *c, a * b);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut out = self.clone();
        for (r, c, v) in other.triplets() {
            out.add_entry(r, c, v.clone());
        }
        out
    }

    pub fn scale(&self, k: &Scalar) -> SparseMatrix {
        let mut out = SparseMatrix::zeros(self.n);
        for (r, c, v) in self.triplets() {
            out.add_entry(r, c, v * k);
        }
        out
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        self.add(&other.scale(&-Scalar::one()))
    }

    /// `[self, other]`.
    pub fn bracket(&self, other: &SparseMatrix) -> SparseMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.n, "matrix-vector shape mismatch");
        self.rows
            .iter()
            .map(|row| row.iter().filter(|(c, _)| !v[**c].is_zero()).map(|(c, a)| a * &v[*c]).sum())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfun::int;

    fn m(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn inverse_and_rank() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), QMatrix::identity(2));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(QMatrix::zeros(0, 0).inverse().unwrap().rows(), 0);
    }

    #[test]
    fn kernel_basis() {
        let a = m(&[&[1, 1, 0], &[0, 0, 1]]);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        assert!(a.mul_vec(&k[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn echelon_tracks_coordinates() {
        let mut b = EchelonBasis::new();
        let v1 = vec![int(1), int(2), int(0)];
        let v2 = vec![int(0), int(1), int(1)];
        assert!(matches!(b.insert(&v1), Reduction::Independent));
        assert!(matches!(b.insert(&v2), Reduction::Independent));
        let target = vec![int(2), int(1), int(-3)];
        let Reduction::Combination(c) = b.insert(&target) else { panic!("dependent") };
        assert_eq!(c, vec![int(2), int(-3)]);
        assert!(b.express(&[int(0), int(0), int(1)]).is_none());
        assert_eq!(b.len(), 2);
    }

    #[test]
    fn sparse_bracket() {
        let mut e = SparseMatrix::zeros(2);
        e.add_entry(0, 1, int(1));
        let mut f = SparseMatrix::zeros(2);
        f.add_entry(1, 0, int(1));
        let h = e.bracket(&f);
        assert_eq!(h.get(0, 0), int(1));
        assert_eq!(h.get(1, 1), int(-1));
        assert_eq!(h.nnz(), 2);
    }
}
