//! Integrality and general position of subspaces, affine spaces and polytopes.
//!
//! A linear subspace `U` of dimension `r` is *integral* when projecting its
//! lattice `U ∩ Z^D` onto the first `r` coordinates gives all of `Z^r`, and in
//! *general position* when that projection is onto `R^r` at all. An affine
//! space is integral when it also contains a lattice point. A polytope is
//! `k`-integral (`k`-general) when every face of dimension at most `k` has an
//! integral (general) affine hull.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use num_traits::One;

use crate::algebra::{clear_denominators, dot, int_to_rat, integer_solve, nullspace, rank, IMatrix, Int, RMatrix, Rat, Sublattice};
use crate::error::{Error, Result};
use crate::polytope::{Face, Polytope};

/// Which face condition a certificate is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    Integral,
    General,
}

impl Condition {
    pub fn adjective(&self) -> &'static str {
        match self {
            Condition::Integral => "integral",
            Condition::General => "general",
        }
    }
}

/// Why a face fails its condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    /// A vertex with a non-integer coordinate.
    NonIntegralVertex,
    /// The affine hull contains no lattice point.
    NoLatticePoint,
    /// The lattice of `lin(F)` projects onto a proper sublattice of `Z^r` of this index.
    ProjectionIndex(Int),
    /// `lin(F)` does not project onto `R^r` (a leading minor is singular).
    SingularProjection,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::NonIntegralVertex => write!(f, "vertex is not a lattice point"),
            Failure::NoLatticePoint => write!(f, "affine hull contains no lattice point"),
            Failure::ProjectionIndex(i) => write!(f, "lattice projects to a sublattice of index {i}"),
            Failure::SingularProjection => write!(f, "affine hull does not project onto the leading coordinates"),
        }
    }
}

/// A face on which the condition fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub face: Face,
    pub vertices: Vec<Vec<Rat>>,
    pub failure: Failure,
}

/// The largest level `k` such that every face of dimension at most `k` passes
/// the condition, with the first failing face above it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelCertificate {
    pub condition: Condition,
    /// Dimension of the polytope.
    pub dim: usize,
    /// In `-1..=dim`; `-1` means some vertex fails.
    pub max_level: i64,
    /// Present exactly when `max_level < dim`: the lexicographically first
    /// failing face of dimension `max_level + 1`.
    pub witness: Option<Witness>,
}

impl LevelCertificate {
    pub fn holds_at(&self, k: usize) -> bool {
        self.max_level >= k as i64
    }

    pub fn is_full(&self) -> bool {
        self.max_level == self.dim as i64
    }

    /// Re-checks the witness face against the polytope it came from.
    pub fn witness_fails(&self, p: &Polytope) -> bool {
        match &self.witness {
            None => false,
            Some(w) => face_failure(p, &w.face, self.condition).is_some(),
        }
    }

    /// `Ok(self)` if the condition holds at level `k`, otherwise a hypothesis error.
    pub fn require(self, k: usize) -> Result<Self> {
        if self.holds_at(k) {
            Ok(self)
        } else {
            Err(Error::Hypothesis { condition: self.condition, level: k, certificate: Box::new(self) })
        }
    }
}

impl fmt::Display for LevelCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} up to level {} of {}", self.condition.adjective(), self.max_level, self.dim)?;
        if let Some(w) = &self.witness {
            write!(f, "; fails on {}-face conv{{", w.face.dim)?;
            for (i, v) in w.vertices.iter().enumerate() {
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
            write!(f, "}}: {}", w.failure)?;
        }
        Ok(())
    }
}

fn check_independent(lin: &RMatrix) -> Result<()> {
    if rank(lin) != lin.rows() {
        return Err(Error::DependentRows);
    }
    Ok(())
}

/// Index of the projection of `span(lin) ∩ Z^D` inside `Z^r`, or `None` when
/// the projection is not of full rank.
pub fn projection_index(lin: &RMatrix) -> Result<Option<Int>> {
    check_independent(lin)?;
    let r = lin.rows();
    let proj = Sublattice::saturate(lin)?.split(r)?.proj;
    if proj.rank() < r {
        return Ok(None);
    }
    Ok(Some((0..r).fold(Int::one(), |acc, i| acc * proj.basis().get(i, i))))
}

/// Whether the subspace spanned by the rows is integral.
pub fn subspace_is_integral(lin: &RMatrix) -> Result<bool> {
    Ok(projection_index(lin)?.is_some_and(|i| i.is_one()))
}

/// Whether the subspace spanned by the rows projects onto the first `r` coordinates.
pub fn subspace_in_general_position(lin: &RMatrix) -> Result<bool> {
    check_independent(lin)?;
    let r = lin.rows();
    Ok(r <= lin.cols() && rank(&lin.columns(0..r)) == r)
}

/// An integer point of `point + span(lin)`, if one exists.
pub fn lattice_point_on(point: &[Rat], lin: &RMatrix) -> Option<Vec<Rat>> {
    let normals = nullspace(lin);
    let a = IMatrix::from_rows(point.len(), normals.iter_rows().map(clear_denominators).collect());
    let rhs: Vec<Rat> = a.iter_rows().map(|row| dot(&row.iter().map(int_to_rat).collect::<Vec<_>>(), point)).collect();
    integer_solve(&a, &rhs).map(|x| x.iter().map(int_to_rat).collect())
}

/// Whether the affine space `point + span(lin)` is integral.
pub fn affine_is_integral(point: &[Rat], lin: &RMatrix) -> Result<bool> {
    check_independent(lin)?;
    Ok(lattice_point_on(point, lin).is_some() && subspace_is_integral(lin)?)
}

fn face_failure(p: &Polytope, face: &Face, condition: Condition) -> Option<Failure> {
    let (base, lin) = p.face_affine_hull(face);
    match condition {
        Condition::Integral => {
            if face.dim == 0 {
                return (!crate::algebra::is_integral_point(&base)).then_some(Failure::NonIntegralVertex);
            }
            if lattice_point_on(&base, &lin).is_none() {
                return Some(Failure::NoLatticePoint);
            }
            match projection_index(&lin).expect("echelon rows are independent") {
                None => Some(Failure::SingularProjection),
                Some(i) if i.is_one() => None,
                Some(i) => Some(Failure::ProjectionIndex(i)),
            }
        }
        Condition::General => {
            let ok = subspace_in_general_position(&lin).expect("echelon rows are independent");
            (!ok).then_some(Failure::SingularProjection)
        }
    }
}

fn level(p: &Polytope, condition: Condition) -> LevelCertificate {
    let dim = p.dim();
    // Faces are sorted by (dim, vertex indices), so the first failure is the
    // lowest-dimensional, lexicographically first one.
    for face in p.all_faces() {
        if let Some(failure) = face_failure(p, face, condition) {
            return LevelCertificate {
                condition,
                dim,
                max_level: face.dim as i64 - 1,
                witness: Some(Witness {
                    face: face.clone(),
                    vertices: face.vertices.iter().map(|&i| p.vertices()[i].clone()).collect(),
                    failure,
                }),
            };
        }
    }
    LevelCertificate { condition, dim, max_level: dim as i64, witness: None }
}

/// Largest `k` such that `P` is `k`-integral (`-1` if a vertex is not a lattice point).
pub fn integrality_level(p: &Polytope) -> LevelCertificate {
    level(p, Condition::Integral)
}

/// Largest `k` such that `P` is in `k`-general position.
pub fn generality_level(p: &Polytope) -> LevelCertificate {
    level(p, Condition::General)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};
    use alloc::vec;

    fn rows(r: &[&[i64]]) -> RMatrix {
        RMatrix::from_rows(r[0].len(), r.iter().map(|x| x.iter().map(|&v| rat(v)).collect()).collect())
    }

    fn p1() -> Polytope {
        Polytope::from_integers(3, &[&[0, 0, 0], &[4, 0, 0], &[3, 6, 0], &[2, 2, 2]]).unwrap()
    }

    fn p2() -> Polytope {
        Polytope::from_integers(3, &[&[0, 0, 0], &[4, 0, 0], &[3, 3, 0], &[2, 1, 5]]).unwrap()
    }

    fn square() -> Polytope {
        Polytope::from_integers(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap()
    }

    #[test]
    fn subspace_examples() {
        assert!(subspace_is_integral(&rows(&[&[1, 0, 3]])).unwrap());
        assert!(!subspace_is_integral(&rows(&[&[2, 1, 0]])).unwrap());
        assert_eq!(projection_index(&rows(&[&[2, 1, 0]])).unwrap(), Some(Int::from(2)));
        assert!(subspace_is_integral(&rows(&[&[1, 0, 0]])).unwrap());
        assert!(!subspace_in_general_position(&rows(&[&[0, 1]])).unwrap());
        assert!(subspace_in_general_position(&rows(&[&[1, 1]])).unwrap());
        assert!(matches!(subspace_is_integral(&rows(&[&[1, 1], &[2, 2]])), Err(Error::DependentRows)));
    }

    #[test]
    fn affine_examples() {
        let edge = rows(&[&[2, 1, 5]]);
        assert!(!affine_is_integral(&[rat(0), rat(0), rat(0)], &edge).unwrap());
        assert!(affine_is_integral(&[rat(0), rat(0), rat(0)], &rows(&[&[4, 0, 0]])).unwrap());
        assert!(affine_is_integral(&[rat(1), rat(2), rat(3)], &RMatrix::zeros(0, 3)).unwrap());
        assert!(!affine_is_integral(&[rat(0), ratio(1, 2)], &rows(&[&[1, 0]])).unwrap());
    }

    #[test]
    fn worked_example_levels() {
        let c1 = integrality_level(&p1());
        assert_eq!(c1.max_level, 1);
        assert!(c1.witness_fails(&p1()));
        assert!(generality_level(&p1()).max_level >= 2);

        let c2 = integrality_level(&p2());
        assert_eq!(c2.max_level, 0);
        let w = c2.witness.as_ref().unwrap();
        assert_eq!(w.vertices, vec![vec![rat(0), rat(0), rat(0)], vec![rat(2), rat(1), rat(5)]]);
        assert_eq!(w.failure, Failure::ProjectionIndex(Int::from(2)));
        assert!(generality_level(&p2()).max_level >= 2);

        assert_eq!(integrality_level(&square()).max_level, 0);
        let g = generality_level(&square());
        assert_eq!(g.max_level, 0);
        assert!(g.witness_fails(&square()));
        assert!(matches!(g.require(1), Err(Error::Hypothesis { condition: Condition::General, level: 1, .. })));
    }

    #[test]
    fn non_integral_vertex_gives_minus_one() {
        let p = Polytope::new(1, vec![vec![rat(0)], vec![ratio(1, 2)]]).unwrap();
        let c = integrality_level(&p);
        assert_eq!(c.max_level, -1);
        assert_eq!(c.witness.unwrap().failure, Failure::NonIntegralVertex);
    }

    #[test]
    fn certificate_message_names_the_face() {
        let msg = alloc::format!("{}", integrality_level(&p2()));
        assert!(msg.contains("(0,0,0), (2,1,5)"), "{msg}");
    }
}
