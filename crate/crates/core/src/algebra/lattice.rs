use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use super::{clear_denominators, det, hnf, int_to_rat, integer_kernel, inverse, rank, IMatrix, Int, RMatrix, Rat};
use crate::error::{Error, Result};

/// A sublattice of `Z^D`, stored by its row Hermite normal form basis.
///
/// Two sublattices are equal exactly when their stored bases are equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Sublattice {
    ambient_dim: usize,
    basis: IMatrix,
    pivots: Vec<usize>,
}

/// Result of [`Sublattice::split`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    /// Image under the projection onto the first `k` coordinates, in `Z^k`.
    pub proj: Sublattice,
    /// Elements whose first `k` coordinates vanish.
    pub ker: Sublattice,
    /// Rows projecting onto a basis of `proj`, followed by a basis of `ker`.
    pub adapted_basis: IMatrix,
}

impl Sublattice {
    /// The lattice generated by the rows of `generators`.
    pub fn generated_by(generators: &IMatrix) -> Self {
        let f = hnf(generators);
        Sublattice { ambient_dim: generators.cols(), basis: f.basis(), pivots: f.pivots }
    }

    /// `Z^D`.
    pub fn full(ambient_dim: usize) -> Self {
        Sublattice {
            ambient_dim,
            basis: IMatrix::identity(ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Sublattice { ambient_dim, basis: IMatrix::zeros(0, ambient_dim), pivots: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IMatrix {
        &self.basis
    }

    pub fn rational_basis(&self) -> RMatrix {
        self.basis.map(int_to_rat)
    }

    /// The lattice `U ∩ Z^D` of the subspace `U` spanned by the rows.
    pub fn saturate(span_basis: &RMatrix) -> Result<Self> {
        if rank(span_basis) != span_basis.rows() {
            return Err(Error::DependentRows);
        }
        let d = span_basis.cols();
        let mut ints = IMatrix::zeros(0, d);
        for row in span_basis.iter_rows() {
            ints.push_row(clear_denominators(row));
        }
        // Integer vectors orthogonal to the integer kernel are exactly U ∩ Z^D.
        let ortho = integer_kernel(&ints);
        let sat = integer_kernel(&ortho);
        Ok(Sublattice::generated_by(&sat))
    }

    pub fn is_saturated(&self) -> bool {
        Sublattice::saturate(&self.rational_basis()).is_ok_and(|s| s == *self)
    }

    /// Integer coordinates of `v` in this basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[Rat]) -> Option<Vec<Int>> {
        let c = self.rational_coordinates(v)?;
        c.iter().all(|x| x.is_integer()).then(|| c.iter().map(|x| x.to_integer()).collect())
    }

    /// Rational coordinates of `v` in this basis, if `v` lies in the span.
    pub fn rational_coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(v.len(), self.ambient_dim, "vector has wrong dimension");
        // The basis is in echelon form, so the pivot columns determine the coordinates.
        let mut c: Vec<Rat> = Vec::with_capacity(self.rank());
        for (i, &p) in self.pivots.iter().enumerate() {
            let acc = (0..i).fold(Rat::zero(), |acc, t| acc + &c[t] * int_to_rat(self.basis.get(t, p)));
            c.push((&v[p] - acc) / int_to_rat(self.basis.get(i, p)));
        }
        for (j, vj) in v.iter().enumerate() {
            let acc = (0..self.rank()).fold(Rat::zero(), |acc, t| acc + &c[t] * int_to_rat(self.basis.get(t, j)));
            if &acc != vj {
                return None;
            }
        }
        Some(c)
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Splits the lattice along the first `k` coordinates.
    pub fn split(&self, k: usize) -> Result<Split> {
        if k > self.ambient_dim {
            return Err(Error::LevelOutOfRange { level: k, max: self.ambient_dim });
        }
        // Echelon rows with a pivot before column k project onto an echelon
        // basis of the projection; the remaining rows vanish there and span the kernel.
        let top: Vec<usize> = (0..self.rank()).filter(|&i| self.pivots[i] < k).collect();
        let bottom: Vec<usize> = (0..self.rank()).filter(|&i| self.pivots[i] >= k).collect();
        let proj_basis = self.basis.select_rows(&top).columns(0..k);
        let ker_basis = self.basis.select_rows(&bottom);
        Ok(Split {
            proj: Sublattice {
                ambient_dim: k,
                basis: proj_basis,
                pivots: top.iter().map(|&i| self.pivots[i]).collect(),
            },
            ker: Sublattice {
                ambient_dim: self.ambient_dim,
                basis: ker_basis,
                pivots: bottom.iter().map(|&i| self.pivots[i]).collect(),
            },
            adapted_basis: self.basis.clone(),
        })
    }

    /// A unimodular `D x D` matrix whose first rows are this lattice's basis.
    pub fn extend_basis(&self) -> Result<IMatrix> {
        if !self.is_saturated() {
            return Err(Error::NotSaturated);
        }
        let d = self.ambient_dim;
        if self.rank() == 0 {
            return Ok(IMatrix::identity(d));
        }
        // For a saturated basis B, hnf(B^T) = [I; 0] with u B^T = [I; 0],
        // so the columns of u^{-1} start with B^T.
        let f = hnf(&self.basis.transpose());
        let u_inv = inverse(&f.u.map(int_to_rat))?;
        let completed = u_inv.transpose().map(|x| x.to_integer());
        debug_assert_eq!(completed.select_rows(&(0..self.rank()).collect::<Vec<_>>()), self.basis);
        Ok(completed)
    }

    /// Index `[self : sub]` for a sublattice `sub` of equal rank.
    pub fn index_of(&self, sub: &Sublattice) -> Option<Int> {
        if sub.rank() != self.rank() || sub.ambient_dim != self.ambient_dim {
            return None;
        }
        let mut coords = RMatrix::zeros(0, self.rank());
        for row in sub.basis.iter_rows() {
            let v: Vec<Rat> = row.iter().map(int_to_rat).collect();
            let c = self.coordinates(&v)?;
            coords.push_row(c.iter().map(int_to_rat).collect());
        }
        if self.rank() == 0 {
            return Some(Int::one());
        }
        Some(det(&coords).ok()?.abs().to_integer())
    }
}

impl fmt::Display for Sublattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}> in Z^{}", self.basis, self.ambient_dim)
    }
}
