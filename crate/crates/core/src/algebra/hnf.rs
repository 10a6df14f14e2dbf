use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{IMatrix, Int, Rat};

/// Row Hermite normal form `h = u * m` with `u` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hnf {
    pub h: IMatrix,
    pub u: IMatrix,
    /// Pivot column of each nonzero row of `h`; nonzero rows come first.
    pub pivots: Vec<usize>,
}

impl Hnf {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// The nonzero rows of `h`.
    pub fn basis(&self) -> IMatrix {
        let keep: Vec<usize> = (0..self.rank()).collect();
        self.h.select_rows(&keep)
    }
}

fn row_axpy(m: &mut IMatrix, target: usize, q: &Int, source: usize) {
    // row[target] -= q * row[source]
    for j in 0..m.cols() {
        let v = m.get(target, j) - q * m.get(source, j);
        m.set(target, j, v);
    }
}

fn negate_row(m: &mut IMatrix, i: usize) {
    for j in 0..m.cols() {
        let v = -m.get(i, j).clone();
        m.set(i, j, v);
    }
}

/// Row-style Hermite normal form: positive pivots, entries above each pivot
/// reduced into `[0, pivot)`, zero rows at the bottom.
pub fn hnf(m: &IMatrix) -> Hnf {
    let mut h = m.clone();
    let mut u = IMatrix::identity(m.rows());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..h.cols() {
        if r == h.rows() {
            break;
        }
        loop {
            // Smallest nonzero entry at or below row r becomes the pivot candidate.
            let best = (r..h.rows())
                .filter(|&i| !h.get(i, c).is_zero())
                .min_by(|&a, &b| h.get(a, c).abs().cmp(&h.get(b, c).abs()));
            let Some(best) = best else { break };
            h.swap_rows(best, r);
            u.swap_rows(best, r);
            let mut done = true;
            for i in r + 1..h.rows() {
                if h.get(i, c).is_zero() {
                    continue;
                }
                let q = h.get(i, c).div_floor(h.get(r, c));
                row_axpy(&mut h, i, &q, r);
                row_axpy(&mut u, i, &q, r);
                if !h.get(i, c).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.get(r, c).is_zero() {
            continue;
        }
        if h.get(r, c).is_negative() {
            negate_row(&mut h, r);
            negate_row(&mut u, r);
        }
        for i in 0..r {
            let q = h.get(i, c).div_floor(h.get(r, c));
            if !q.is_zero() {
                row_axpy(&mut h, i, &q, r);
                row_axpy(&mut u, i, &q, r);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Hnf { h, u, pivots }
}

/// Basis (as rows) of the integer solutions of `m x = 0`.
pub fn integer_kernel(m: &IMatrix) -> IMatrix {
    let t = m.transpose();
    let f = hnf(&t);
    let zero_rows: Vec<usize> = (f.rank()..t.rows()).collect();
    f.u.select_rows(&zero_rows)
}

/// One integer solution of `m x = b`, if any exists.
pub fn integer_solve(m: &IMatrix, b: &[Rat]) -> Option<Vec<Int>> {
    assert_eq!(m.rows(), b.len(), "right-hand side has wrong length");
    if b.iter().any(|x| !x.is_integer()) {
        return None;
    }
    let b: Vec<Int> = b.iter().map(|x| x.to_integer()).collect();
    // v m^T = h, so m v^T = h^T and x = v^T z solves m x = b when h^T z = b.
    let f = hnf(&m.transpose());
    let n = m.cols();
    let mut z = vec![Int::zero(); n];
    for (i, &p) in f.pivots.iter().enumerate() {
        let acc: Int = (0..i).map(|t| &z[t] * f.h.get(t, p)).sum();
        let rest = &b[p] - acc;
        let (q, rem) = rest.div_rem(f.h.get(i, p));
        if !rem.is_zero() {
            return None;
        }
        z[i] = q;
    }
    for (j, bj) in b.iter().enumerate() {
        let acc: Int = (0..f.rank()).map(|t| &z[t] * f.h.get(t, j)).sum();
        if &acc != bj {
            return None;
        }
    }
    let x = (0..n).map(|j| (0..n).map(|t| &z[t] * f.u.get(t, j)).sum()).collect();
    Some(x)
}
