use alloc::vec::Vec;

use super::{Face, Polytope};
use crate::algebra::{add, dot, scale, solve, RMatrix, Rat};
use crate::error::{Error, Result};

impl Polytope {
    /// Image under the projection onto the first `k` coordinates.
    pub fn project(&self, k: usize) -> Result<Polytope> {
        if k > self.ambient_dim {
            return Err(Error::LevelOutOfRange { level: k, max: self.ambient_dim });
        }
        Polytope::new(k, self.vertices.iter().map(|v| v[..k].to_vec()).collect())
    }

    /// `P ∩ {x : (x_1, ..., x_k) = y}` with `k = y.len()`.
    ///
    /// Vertices of the slice are the points where the flat meets the affine
    /// hull of a face in exactly one point, so the whole face lattice is
    /// scanned and each candidate is checked for membership.
    pub fn slice(&self, y: &[Rat]) -> Result<Polytope> {
        let k = y.len();
        if k > self.ambient_dim {
            return Err(Error::LevelOutOfRange { level: k, max: self.ambient_dim });
        }
        let mut points = Vec::new();
        for face in &self.faces {
            if let Some(x) = self.face_meets_flat(face, y) {
                if self.contains(&x) {
                    points.push(x);
                }
            }
        }
        Polytope::new(self.ambient_dim, points)
    }

    fn face_meets_flat(&self, face: &Face, y: &[Rat]) -> Option<Vec<Rat>> {
        let k = y.len();
        let (base, lin) = self.face_affine_hull(face);
        if lin.rows() == 0 {
            return (base[..k] == *y).then_some(base);
        }
        // base + t L has leading coordinates y  <=>  L_k^T t = y - base_k.
        let system = lin.columns(0..k).transpose();
        let rhs: Vec<Rat> = (0..k).map(|j| &y[j] - &base[j]).collect();
        let sol = solve(&system, &rhs)?;
        if sol.kernel.rows() > 0 {
            return None;
        }
        let offset = (0..self.ambient_dim).map(|j| {
            (0..lin.rows()).fold(Rat::from_integer(0.into()), |acc, i| acc + &sol.particular[i] * lin.get(i, j))
        });
        Some(base.iter().zip(offset).map(|(b, o)| b + o).collect())
    }

    /// `mP`, scaling every cached structure instead of recomputing the hull.
    pub fn dilate(&self, m: &Rat) -> Result<Polytope> {
        if m <= &Rat::from_integer(0.into()) {
            return Err(Error::BadDilation);
        }
        let mut p = self.clone();
        for v in &mut p.vertices {
            *v = scale(v, m);
        }
        for e in p.hrep.inequality_rhs.iter_mut().chain(p.hrep.equality_rhs.iter_mut()) {
            *e = &*e * m;
        }
        Ok(p)
    }

    /// `P + t`.
    pub fn translate(&self, t: &[Rat]) -> Result<Polytope> {
        if t.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: t.len() });
        }
        let mut p = self.clone();
        for v in &mut p.vertices {
            *v = add(v, t);
        }
        let shift = |rows: &RMatrix, rhs: &mut Vec<Rat>| {
            for (a, b) in rows.iter_rows().zip(rhs.iter_mut()) {
                *b = &*b + dot(a, t);
            }
        };
        shift(&p.hrep.inequalities, &mut p.hrep.inequality_rhs);
        shift(&p.hrep.equalities, &mut p.hrep.equality_rhs);
        Ok(p)
    }
}
