//! Exact V-polytopes.
//!
//! A [`Polytope`] is built from any finite point set; construction removes
//! duplicates and non-extreme points and derives the affine hull, an
//! irredundant H-representation and the full face lattice. These caches are
//! computed once, so a polytope is immutable afterwards.
//!
//! Facets are found by checking every affinely independent `d`-subset of the
//! points for a supporting hyperplane. That is quadratic-to-exponential in the
//! number of points and intended for small instances (a handful of dimensions,
//! a few dozen vertices).

mod hull;
mod lattice_points;
mod ops;

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::algebra::{dot, integer_solve, rank, rref, sub, IMatrix, RMatrix, Rat, Sublattice};
use crate::error::{Error, Result};

pub use lattice_points::DEFAULT_CELL_BUDGET;

/// Constraints `A x = b`, `C x <= e` describing a polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRep {
    pub equalities: RMatrix,
    pub equality_rhs: Vec<Rat>,
    /// Each row is facet-defining and no two rows define the same facet.
    pub inequalities: RMatrix,
    pub inequality_rhs: Vec<Rat>,
}

impl HRep {
    fn empty(ambient_dim: usize) -> Self {
        HRep {
            equalities: RMatrix::zeros(0, ambient_dim),
            equality_rhs: Vec::new(),
            inequalities: RMatrix::zeros(0, ambient_dim),
            inequality_rhs: Vec::new(),
        }
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.equalities.iter_rows().zip(&self.equality_rhs).all(|(a, b)| &dot(a, x) == b)
            && self.inequalities.iter_rows().zip(&self.inequality_rhs).all(|(c, e)| &dot(c, x) <= e)
    }
}

/// A nonempty face, given by the indices of its vertices in the parent polytope.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face {
    pub dim: usize,
    pub vertices: Vec<usize>,
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-face {:?}", self.dim, self.vertices)
    }
}

/// Where a point sits relative to a polytope, using the relative topology of its affine hull.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Outside,
    Boundary,
    Interior,
}

#[derive(Clone, Debug)]
pub struct Polytope {
    ambient_dim: usize,
    vertices: Vec<Vec<Rat>>,
    dim: usize,
    lin: RMatrix,
    hrep: HRep,
    /// Every nonempty face including the polytope itself, sorted by (dim, vertices).
    faces: Vec<Face>,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.sorted_vertices() == other.sorted_vertices()
    }
}

impl Eq for Polytope {}

impl Polytope {
    /// Convex hull of `points` in `R^ambient_dim`.
    pub fn new(ambient_dim: usize, points: Vec<Vec<Rat>>) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.len() != ambient_dim) {
            return Err(Error::DimensionMismatch { expected: ambient_dim, found: p.len() });
        }
        let mut seen = BTreeSet::new();
        let points: Vec<Vec<Rat>> = points.into_iter().filter(|p| seen.insert(p.clone())).collect();
        if points.is_empty() {
            return Ok(Polytope::empty(ambient_dim));
        }
        Ok(hull::build(ambient_dim, points))
    }

    pub fn from_integers(ambient_dim: usize, points: &[&[i64]]) -> Result<Self> {
        Polytope::new(
            ambient_dim,
            points.iter().map(|p| p.iter().map(|&x| crate::algebra::rat(x)).collect()).collect(),
        )
    }

    pub fn empty(ambient_dim: usize) -> Self {
        Polytope {
            ambient_dim,
            vertices: Vec::new(),
            dim: 0,
            lin: RMatrix::zeros(0, ambient_dim),
            hrep: HRep::empty(ambient_dim),
            faces: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Dimension of the affine hull. An empty polytope also reports 0; check
    /// [`Polytope::is_empty`] first where that matters.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }

    pub fn sorted_vertices(&self) -> Vec<Vec<Rat>> {
        let mut v = self.vertices.clone();
        v.sort();
        v
    }

    pub fn is_integral(&self) -> bool {
        self.vertices.iter().all(|v| crate::algebra::is_integral_point(v))
    }

    pub fn is_simplex(&self) -> bool {
        !self.is_empty() && self.vertices.len() == self.dim + 1
    }

    /// A point of the affine hull and a basis (reduced echelon rows) of `lin(P)`.
    pub fn affine_hull(&self) -> Option<(&[Rat], &RMatrix)> {
        self.vertices.first().map(|p| (p.as_slice(), &self.lin))
    }

    pub fn lin(&self) -> &RMatrix {
        &self.lin
    }

    pub fn hrep(&self) -> &HRep {
        &self.hrep
    }

    /// Whether `aff(P)` passes through the origin.
    pub fn is_central(&self) -> bool {
        let zero = alloc::vec![Rat::zero(); self.ambient_dim];
        !self.is_empty() && self.hrep.equalities.iter_rows().zip(&self.hrep.equality_rhs).all(|(a, b)| dot(a, &zero) == *b)
    }

    /// The lattice `lin(P) ∩ Z^D`.
    pub fn lin_lattice(&self) -> Sublattice {
        Sublattice::saturate(&self.lin).expect("echelon basis is independent")
    }

    /// An integer point of `aff(P)`, if there is one.
    pub fn lattice_point_in_affine_hull(&self) -> Option<Vec<Rat>> {
        let (base, _) = self.affine_hull()?;
        let a = &self.hrep.equalities;
        let int_rows: Vec<Vec<crate::algebra::Int>> = a.iter_rows().map(crate::algebra::clear_denominators).collect();
        let ai = IMatrix::from_rows(self.ambient_dim, int_rows);
        let rhs: Vec<Rat> = ai.iter_rows().map(|r| dot(&r.iter().map(crate::algebra::int_to_rat).collect::<Vec<_>>(), base)).collect();
        integer_solve(&ai, &rhs).map(|x| x.iter().map(crate::algebra::int_to_rat).collect())
    }

    /// All nonempty faces, including the polytope itself.
    pub fn all_faces(&self) -> &[Face] {
        &self.faces
    }

    /// The faces of dimension exactly `l`.
    pub fn faces(&self, l: usize) -> Result<Vec<&Face>> {
        if l > self.dim {
            return Err(Error::LevelOutOfRange { level: l, max: self.dim });
        }
        Ok(self.faces.iter().filter(|f| f.dim == l).collect())
    }

    /// The face as a polytope of its own.
    pub fn face_polytope(&self, face: &Face) -> Polytope {
        let pts = face.vertices.iter().map(|&i| self.vertices[i].clone()).collect();
        Polytope::new(self.ambient_dim, pts).expect("face vertices have the ambient dimension")
    }

    /// Point and echelon basis of the affine hull of a face.
    pub fn face_affine_hull(&self, face: &Face) -> (Vec<Rat>, RMatrix) {
        let base = self.vertices[face.vertices[0]].clone();
        let diffs = RMatrix::from_rows(
            self.ambient_dim,
            face.vertices[1..].iter().map(|&i| sub(&self.vertices[i], &base)).collect(),
        );
        (base, rref(&diffs).0)
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        !self.is_empty() && self.hrep.contains(x)
    }

    pub fn classify_point(&self, x: &[Rat]) -> Location {
        if !self.contains(x) {
            return Location::Outside;
        }
        let tight = self.hrep.inequalities.iter_rows().zip(&self.hrep.inequality_rhs).any(|(c, e)| &dot(c, x) == e);
        if tight {
            Location::Boundary
        } else {
            Location::Interior
        }
    }

    /// Bounding box of the vertices, per coordinate.
    pub fn bounding_box(&self) -> Option<(Vec<Rat>, Vec<Rat>)> {
        let first = self.vertices.first()?;
        let mut lo = first.clone();
        let mut hi = first.clone();
        for v in &self.vertices[1..] {
            for j in 0..self.ambient_dim {
                if v[j] < lo[j] {
                    lo[j] = v[j].clone();
                }
                if v[j] > hi[j] {
                    hi[j] = v[j].clone();
                }
            }
        }
        Some((lo, hi))
    }
}

pub(crate) fn affine_rank(points: &[Vec<Rat>]) -> usize {
    let Some(base) = points.first() else { return 0 };
    let diffs = RMatrix::from_rows(base.len(), points[1..].iter().map(|p| sub(p, base)).collect());
    rank(&diffs)
}

impl fmt::Display for Polytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "conv{{}}");
        }
        write!(f, "conv{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "(")?;
            for (j, x) in v.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        write!(f, "}}")
    }
}

pub(crate) fn sign_of(x: &Rat) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}
