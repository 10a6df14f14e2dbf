use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Mul;

use num_traits::{One, Zero};

use super::Rat;
use crate::error::{Error, Result};

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors. `cols` is needed for the zero-row case.
    pub fn from_rows(cols: usize, rows: Vec<Vec<T>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [T] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[T]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.iter_rows().map(|r| r.to_vec()).collect()
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    /// Keeps the columns in `range`.
    pub fn columns(&self, range: core::ops::Range<usize>) -> Self {
        let cols = range.len();
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in self.iter_rows() {
            data.extend_from_slice(&r[range.clone()]);
        }
        Matrix { rows: self.rows, cols, data }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Matrix { rows: idx.len(), cols: self.cols, data }
    }

    pub fn push_row(&mut self, row: Vec<T>) {
        assert_eq!(row.len(), self.cols, "row has wrong length");
        self.data.extend(row);
        self.rows += 1;
    }

    pub fn map<U, F: FnMut(&T) -> U>(&self, f: F) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }
}

impl<'a, T> Mul for &'a Matrix<T>
where
    T: Clone + Zero,
    for<'b> &'b T: Mul<&'b T, Output = T>,
{
    type Output = Matrix<T>;

    fn mul(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "incompatible matrix shapes");
        let mut data = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    acc = acc + self.get(i, k) * rhs.get(k, j);
                }
                data.push(acc);
            }
        }
        Matrix { rows: self.rows, cols: rhs.cols, data }
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Exact determinant by Gaussian elimination over the rationals.
pub fn det(m: &Matrix<Rat>) -> Result<Rat> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows, cols: m.cols });
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut result = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a.get(r, c).is_zero()) else {
            return Ok(Rat::zero());
        };
        if p != c {
            a.swap_rows(p, c);
            result = -result;
        }
        let pivot = a.get(c, c).clone();
        result *= &pivot;
        for r in c + 1..n {
            if a.get(r, c).is_zero() {
                continue;
            }
            let f = a.get(r, c) / &pivot;
            for j in c..n {
                let v = a.get(r, j) - &f * a.get(c, j);
                a.set(r, j, v);
            }
        }
    }
    Ok(result)
}

/// Reduced row echelon form and its pivot columns. Zero rows are dropped.
pub fn rref(m: &Matrix<Rat>) -> (Matrix<Rat>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        a.swap_rows(p, r);
        let inv = a.get(r, c).recip();
        for j in c..a.cols {
            let v = a.get(r, j) * &inv;
            a.set(r, j, v);
        }
        for i in 0..a.rows {
            if i == r || a.get(i, c).is_zero() {
                continue;
            }
            let f = a.get(i, c).clone();
            for j in c..a.cols {
                let v = a.get(i, j) - &f * a.get(r, j);
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    let keep: Vec<usize> = (0..r).collect();
    (a.select_rows(&keep), pivots)
}

pub fn rank(m: &Matrix<Rat>) -> usize {
    rref(m).1.len()
}

/// Basis (as rows) of the right null space `{x : m x = 0}`.
pub fn nullspace(m: &Matrix<Rat>) -> Matrix<Rat> {
    let (r, pivots) = rref(m);
    let n = m.cols;
    let mut basis = Matrix::zeros(0, n);
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rat::zero(); n];
        v[free] = Rat::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -r.get(i, free).clone();
        }
        basis.push_row(v);
    }
    basis
}

/// Solution set of a linear system `m x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Vec<Rat>,
    /// Rows spanning the homogeneous solutions.
    pub kernel: Matrix<Rat>,
}

pub fn solve(m: &Matrix<Rat>, b: &[Rat]) -> Option<Solution> {
    assert_eq!(m.rows, b.len(), "right-hand side has wrong length");
    let n = m.cols;
    let mut aug = Matrix::zeros(m.rows, n + 1);
    for (i, bi) in b.iter().enumerate() {
        for j in 0..n {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, n, bi.clone());
    }
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut particular = vec![Rat::zero(); n];
    for (i, &p) in pivots.iter().enumerate() {
        particular[p] = r.get(i, n).clone();
    }
    Some(Solution { particular, kernel: nullspace(m) })
}

pub fn inverse(m: &Matrix<Rat>) -> Result<Matrix<Rat>> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows, cols: m.cols });
    }
    let n = m.rows;
    let mut aug = Matrix::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, n + i, Rat::one());
    }
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return Err(Error::DependentRows);
    }
    Ok(r.columns(n..2 * n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};

    fn rm(rows: &[&[i64]]) -> Matrix<Rat> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    /// Cofactor expansion, kept independent of the elimination path.
    fn cofactor_det(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * cofactor_det(&minor)
            })
            .sum()
    }

    #[test]
    fn det_examples() {
        assert_eq!(det(&Matrix::identity(3)).unwrap(), rat(1));
        let rows = vec![vec![4, 0, 0], vec![3, 6, 0], vec![2, 2, 2]];
        assert_eq!(cofactor_det(&rows), 48);
        assert_eq!(det(&rm(&[&[4, 0, 0], &[3, 6, 0], &[2, 2, 2]])).unwrap(), rat(48));
        assert_eq!(det(&rm(&[&[3, 6, 0], &[4, 0, 0], &[2, 2, 2]])).unwrap(), rat(-48));
    }

    #[test]
    fn det_rejects_non_square() {
        assert_eq!(det(&rm(&[&[1, 2]])), Err(Error::NotSquare { rows: 1, cols: 2 }));
    }

    #[test]
    fn det_matches_cofactor_on_small_grid() {
        let mut seed = 7u64;
        for _ in 0..50 {
            let rows: Vec<Vec<i64>> = (0..4)
                .map(|_| {
                    (0..4)
                        .map(|_| {
                            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                            ((seed >> 33) % 11) as i64 - 5
                        })
                        .collect()
                })
                .collect();
            let m = Matrix::from_rows(4, rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect());
            assert_eq!(det(&m).unwrap(), rat(cofactor_det(&rows)));
        }
    }

    #[test]
    fn nullspace_and_solve() {
        let m = rm(&[&[1, 1, 0], &[0, 0, 1]]);
        let k = nullspace(&m);
        assert_eq!(k.rows(), 1);
        assert_eq!(k.row(0), &[rat(-1), rat(1), rat(0)][..]);
        let s = solve(&m, &[rat(2), rat(3)]).unwrap();
        assert_eq!(s.particular, vec![rat(2), rat(0), rat(3)]);
        assert!(solve(&rm(&[&[1, 1], &[1, 1]]), &[rat(1), rat(2)]).is_none());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = rm(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(&m * &inv, Matrix::identity(2));
        assert_eq!(inverse(&rm(&[&[1, 2], &[2, 4]])), Err(Error::DependentRows));
        let h = Matrix::from_rows(1, vec![vec![ratio(1, 2)]]);
        assert_eq!(inverse(&h).unwrap().get(0, 0), &rat(2));
    }
}
