//! Affine maps that send a `(k-1)`-integral polytope in `k`-general position
//! to a full-dimensional one in fully general position, keeping its
//! normalized volume and `k`-th S-volume.
//!
//! The map is built in two stages:
//!
//! 1. A change of basis `x ↦ x F⁻¹` where the rows of `F` are: the rows of
//!    the Hermite basis of `Λ_P = lin(P) ∩ Z^D` with a pivot among the first `k`
//!    coordinates, then the remaining Hermite rows (a basis of the part of
//!    `Λ_P` vanishing on the first `k` coordinates), then a completion of those
//!    to a basis of `{x ∈ Z^D : x_1 = ... = x_k = 0}`. The image lies in `R^d`.
//! 2. For `l = k, ..., d-1`, a unimodular shear replacing column `l` of the
//!    identity by `(0, w)`, where `w` (from [`find_w`]) is chosen so that every
//!    `(l+1)`-face ends up in general position.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::algebra::{det, dot, int_to_rat, inverse, rref, IMatrix, Int, RMatrix, Rat, Sublattice};
use crate::error::{Error, Result};
use crate::integrality::{generality_level, integrality_level, LevelCertificate};
use crate::polytope::Polytope;

/// The affine map `x ↦ offset + x · matrix` on row vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub matrix: RMatrix,
    pub offset: Vec<Rat>,
}

impl AffineMap {
    pub fn new(matrix: RMatrix, offset: Vec<Rat>) -> Result<Self> {
        if matrix.cols() != offset.len() {
            return Err(Error::DimensionMismatch { expected: matrix.cols(), found: offset.len() });
        }
        Ok(AffineMap { matrix, offset })
    }

    pub fn identity(dim: usize) -> Self {
        AffineMap { matrix: RMatrix::identity(dim), offset: vec![Rat::zero(); dim] }
    }

    pub fn linear(matrix: RMatrix) -> Self {
        let n = matrix.cols();
        AffineMap { matrix, offset: vec![Rat::zero(); n] }
    }

    pub fn translation(t: Vec<Rat>) -> Self {
        AffineMap { matrix: RMatrix::identity(t.len()), offset: t }
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn apply(&self, x: &[Rat]) -> Result<Vec<Rat>> {
        if x.len() != self.source_dim() {
            return Err(Error::DimensionMismatch { expected: self.source_dim(), found: x.len() });
        }
        Ok((0..self.target_dim())
            .map(|j| (0..x.len()).fold(self.offset[j].clone(), |acc, i| acc + &x[i] * self.matrix.get(i, j)))
            .collect())
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &AffineMap) -> Result<AffineMap> {
        let offset = then.apply(&self.offset)?;
        Ok(AffineMap { matrix: &self.matrix * &then.matrix, offset })
    }

    /// Whether the map is block upper triangular at level `k` with a
    /// unimodular upper-triangular leading block, a trailing block of
    /// determinant 1 and an integral leading offset. Such maps preserve
    /// normalized volume and the `k`-th S-volume with respect to `Z^D`.
    pub fn preserves_volumes(&self, k: usize) -> bool {
        let n = self.source_dim();
        if !self.matrix.is_square() || k > n {
            return false;
        }
        let m = &self.matrix;
        let lower_left_zero = (k..n).all(|i| (0..k).all(|j| m.get(i, j).is_zero()));
        let leading = (0..k).all(|i| {
            (0..i).all(|j| m.get(i, j).is_zero()) && (i..k).all(|j| m.get(i, j).is_integer()) && m.get(i, i).abs().is_one()
        });
        let trailing = RMatrix::from_rows(n - k, (k..n).map(|i| m.row(i)[k..].to_vec()).collect());
        let trailing_det = if n == k { Rat::one() } else { det(&trailing).expect("square") };
        lower_left_zero && leading && trailing_det.is_one() && self.offset[..k].iter().all(|x| x.is_integer())
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x -> (")?;
        for (i, x) in self.offset.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ") + x {}", self.matrix)
    }
}

/// Image of a polytope under an affine map (vertex-wise, then re-hulled).
pub fn apply_affine(p: &Polytope, phi: &AffineMap) -> Result<Polytope> {
    if p.ambient_dim() != phi.source_dim() {
        return Err(Error::DimensionMismatch { expected: phi.source_dim(), found: p.ambient_dim() });
    }
    let pts = p.vertices().iter().map(|v| phi.apply(v)).collect::<Result<Vec<_>>>()?;
    Polytope::new(phi.target_dim(), pts)
}

/// Order key for candidate entries: 0, 1, -1, 2, -2, ...
fn key_to_int(key: u64) -> i64 {
    let half = key.div_ceil(2) as i64;
    if key % 2 == 1 {
        half
    } else {
        -half
    }
}

/// An integer vector `w` with `w_1 = 1` and `v · w != 0` for every `v`.
///
/// Candidates `(1, t_2, ..., t_m)` are tried by increasing `max |t_i|`, and
/// lexicographically within one norm using the entry order `0, 1, -1, 2, -2, ...`.
pub fn find_w(vectors: &[Vec<Rat>]) -> Result<Vec<Int>> {
    let Some(first) = vectors.first() else { return Err(Error::ZeroVector) };
    let m = first.len();
    if m == 0 {
        return Err(Error::ZeroVector);
    }
    if let Some(v) = vectors.iter().find(|v| v.len() != m) {
        return Err(Error::DimensionMismatch { expected: m, found: v.len() });
    }
    if vectors.iter().any(|v| v.iter().all(|x| x.is_zero())) {
        return Err(Error::ZeroVector);
    }
    let works = |w: &[Rat]| vectors.iter().all(|v| !dot(v, w).is_zero());
    for norm in 0u64.. {
        let max_key = 2 * norm;
        let mut keys = vec![0u64; m - 1];
        loop {
            if keys.iter().any(|&k| k.div_ceil(2) == norm) || (norm == 0) {
                let mut w = vec![Rat::one()];
                w.extend(keys.iter().map(|&k| Rat::from_integer(key_to_int(k).into())));
                if works(&w) {
                    return Ok(w.iter().map(|x| x.to_integer()).collect());
                }
            }
            let Some(i) = (0..m - 1).rev().find(|&i| keys[i] < max_key) else { break };
            keys[i] += 1;
            for k in &mut keys[i + 1..] {
                *k = 0;
            }
        }
    }
    unreachable!("a suitable vector exists for every finite set of nonzero vectors")
}

/// Output of [`reduce_to_full_general`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    /// Map on `R^D`; `q` is its image of `P` with the last `D - d` coordinates
    /// (which all vanish) dropped.
    pub map: AffineMap,
    pub q: Polytope,
    pub integrality: LevelCertificate,
    pub generality: LevelCertificate,
}

fn to_rat(m: &IMatrix) -> RMatrix {
    m.map(int_to_rat)
}

/// Change of basis sending `P` (central) into `R^d`.
fn dimension_reduction(p: &Polytope, k: usize) -> Result<RMatrix> {
    let big_d = p.ambient_dim();
    let lattice = p.lin_lattice();
    let split = lattice.split(k)?;
    if split.proj.rank() != k {
        return Err(generality_level(p).require(k).expect_err("projection rank below k means a face is not general"));
    }
    let mut f = IMatrix::zeros(0, big_d);
    for row in split.adapted_basis.iter_rows() {
        f.push_row(row.to_vec());
    }
    // Complete the kernel rows to a basis of the coordinates after the first k.
    let tail = IMatrix::from_rows(big_d - k, split.ker.basis().iter_rows().map(|r| r[k..].to_vec()).collect());
    let tail_lattice = Sublattice::generated_by(&tail);
    let completed = tail_lattice.extend_basis()?;
    debug_assert_eq!(tail_lattice.basis(), &tail);
    for row in completed.iter_rows().skip(tail_lattice.rank()) {
        let mut full = vec![Int::zero(); k];
        full.extend(row.iter().cloned());
        f.push_row(full);
    }
    inverse(&to_rat(&f))
}

/// Shear making every `(l+1)`-face of a full-dimensional `q` general.
fn generality_step(q: &Polytope, l: usize) -> Result<RMatrix> {
    let d = q.ambient_dim();
    let mut vs = Vec::new();
    for face in q.faces(l + 1)? {
        let (_, lin) = q.face_affine_hull(face);
        let (r, _) = rref(&lin);
        let last = r.row(r.rows() - 1);
        vs.push(last[l..].to_vec());
    }
    let w = find_w(&vs)?;
    let mut m = RMatrix::identity(d);
    for (i, wi) in w.iter().enumerate() {
        m.set(l + i, l, int_to_rat(wi));
    }
    Ok(m)
}

fn block_diag(m: &RMatrix, total: usize) -> RMatrix {
    let mut out = RMatrix::identity(total);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.set(i, j, m.get(i, j).clone());
        }
    }
    out
}

/// Reduces a `(k-1)`-integral polytope in `k`-general position (`0 < k <= d`)
/// to a full-dimensional polytope in `R^d` in fully general position.
///
/// A polytope whose affine hull misses the origin is first translated by a
/// lattice point of its affine hull.
pub fn reduce_to_full_general(p: &Polytope, k: usize) -> Result<Reduction> {
    if p.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    let d = p.dim();
    if k == 0 || k > d {
        return Err(Error::LevelOutOfRange { level: k, max: d });
    }
    integrality_level(p).require(k - 1)?;
    generality_level(p).require(k)?;
    let big_d = p.ambient_dim();
    let beta = p.lattice_point_in_affine_hull().ok_or(Error::NoLatticePoint)?;
    let mut map = AffineMap::translation(beta.iter().map(|x| -x).collect());
    map = map.then(&AffineMap::linear(dimension_reduction(p, k)?))?;

    let truncate = |phi: &AffineMap| -> Result<Polytope> {
        let image = apply_affine(p, phi)?;
        debug_assert!(image.vertices().iter().all(|v| v[d..].iter().all(|x| x.is_zero())));
        Polytope::new(d, image.vertices().iter().map(|v| v[..d].to_vec()).collect())
    };
    let mut q = truncate(&map)?;
    for l in k..d {
        let step = generality_step(&q, l)?;
        map = map.then(&AffineMap::linear(block_diag(&step, big_d)))?;
        q = truncate(&map)?;
        let reached = generality_level(&q);
        if !reached.holds_at(l + 1) || integrality_level(&q).max_level < k as i64 - 1 {
            return Err(Error::IdentityViolated("shear keeps integrality and raises generality"));
        }
    }
    let integrality = integrality_level(&q);
    let generality = generality_level(&q);
    if !generality.is_full() || integrality.max_level < k as i64 - 1 {
        return Err(Error::IdentityViolated("reduction reaches fully general position"));
    }
    Ok(Reduction { map, q, integrality, generality })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::polytope::DEFAULT_CELL_BUDGET as B;
    use crate::volume::{lattice_volume, svol};

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    fn rats(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x)).collect()
    }

    fn p1() -> Polytope {
        Polytope::from_integers(3, &[&[0, 0, 0], &[4, 0, 0], &[3, 6, 0], &[2, 2, 2]]).unwrap()
    }

    #[test]
    fn find_w_examples() {
        assert_eq!(find_w(&[rats(&[1, 0])]).unwrap(), ints(&[1, 0]));
        assert_eq!(find_w(&[rats(&[0, 1])]).unwrap(), ints(&[1, 1]));
        assert_eq!(find_w(&[rats(&[1, -1]), rats(&[0, 1])]).unwrap(), ints(&[1, -1]));
        assert_eq!(find_w(&[rats(&[5])]).unwrap(), ints(&[1]));
        assert!(matches!(find_w(&[rats(&[0, 0])]), Err(Error::ZeroVector)));
        assert!(matches!(find_w(&[]), Err(Error::ZeroVector)));
        // (1,0,0),(1,1,0) need a nonzero second entry; then the third vector rules out t2 = 1, t3 = 0.
        let w = find_w(&[rats(&[0, 1, 0]), rats(&[0, 0, 1]), rats(&[1, -1, 0])]).unwrap();
        assert_eq!(w, ints(&[1, -1, 1]));
    }

    #[test]
    fn key_order() {
        let v: Vec<i64> = (0..5).map(key_to_int).collect();
        assert_eq!(v, vec![0, 1, -1, 2, -2]);
    }

    #[test]
    fn affine_maps() {
        let id = AffineMap::identity(3);
        assert_eq!(apply_affine(&p1(), &id).unwrap(), p1());
        let t = AffineMap::translation(rats(&[1, -2, 3]));
        let moved = apply_affine(&p1(), &t).unwrap();
        assert_eq!(
            crate::ehrhart::ehrhart_interpolated(&moved, B).unwrap(),
            crate::ehrhart::ehrhart_interpolated(&p1(), B).unwrap()
        );
        let shear = RMatrix::from_rows(3, vec![rats(&[1, 2, 0]), rats(&[0, 1, 0]), rats(&[0, 5, 1])]);
        let sheared = apply_affine(&p1(), &AffineMap::linear(shear)).unwrap();
        assert_eq!(lattice_volume(&sheared).unwrap(), rat(8));
        assert!(t.preserves_volumes(2));
        let upper = AffineMap::linear(RMatrix::from_rows(2, vec![rats(&[1, 3]), rats(&[0, 1])]));
        assert!(upper.preserves_volumes(1) && upper.preserves_volumes(2));
        let lower = AffineMap::linear(RMatrix::from_rows(2, vec![rats(&[1, 0]), rats(&[3, 1])]));
        assert!(!lower.preserves_volumes(1));
    }

    #[test]
    fn worked_example_is_preserved() {
        let r = reduce_to_full_general(&p1(), 2).unwrap();
        assert_eq!(r.q.ambient_dim(), 3);
        assert!(r.generality.is_full());
        assert!(r.integrality.max_level >= 1);
        assert_eq!(lattice_volume(&r.q).unwrap(), rat(8));
        assert_eq!(svol(&r.q, 2, &Sublattice::full(3), B).unwrap(), rat(8));
    }

    #[test]
    fn segment_reduces_to_unit_interval() {
        let seg = Polytope::from_integers(2, &[&[0, 0], &[2, 3]]).unwrap();
        let r = reduce_to_full_general(&seg, 1).unwrap();
        assert_eq!(r.q.sorted_vertices(), vec![rats(&[0]), rats(&[1])]);
        assert_eq!(lattice_volume(&r.q).unwrap(), rat(1));
        let gamma = seg.lin_lattice();
        assert_eq!(svol(&seg, 1, &gamma, B).unwrap(), svol(&r.q, 1, &Sublattice::full(1), B).unwrap());
    }

    #[test]
    fn lower_dimensional_non_central_input() {
        // A triangle in a plane of R^3 that misses the origin.
        let tri = Polytope::from_integers(3, &[&[1, 0, 2], &[3, 1, 5], &[2, 4, 3]]).unwrap();
        let gamma = tri.lin_lattice();
        let r = reduce_to_full_general(&tri, 1).unwrap();
        assert_eq!(r.q.ambient_dim(), 2);
        assert!(r.generality.is_full());
        assert_eq!(lattice_volume(&tri).unwrap(), lattice_volume(&r.q).unwrap());
        assert_eq!(svol(&tri, 1, &gamma, B).unwrap(), svol(&r.q, 1, &Sublattice::full(2), B).unwrap());
    }

    #[test]
    fn square_is_rejected() {
        let sq = Polytope::from_integers(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        assert!(matches!(
            reduce_to_full_general(&sq, 1),
            Err(Error::Hypothesis { condition: crate::integrality::Condition::General, level: 1, .. })
        ));
    }
}
