//! Triangulations, lattice-normalized volumes and S-volumes.
//!
//! The normalized volume `Vol_Γ(P)` of a `d`-polytope with respect to a rank-`d`
//! lattice `Γ` spanning `lin(P)` is the Lebesgue measure in which a fundamental
//! cell of `Γ` has volume 1; a simplex has volume `|det(edges in Γ-coordinates)| / d!`.
//!
//! The `k`-th S-volume sums, over the points `y` of the projected lattice lying
//! in the projection of `P` to the first `k` coordinates, the volumes of the
//! slices over `y` measured with the part of `Γ` whose first `k` coordinates vanish.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::algebra::{det, factorial, int_to_rat, sub, RMatrix, Rat, Sublattice};
use crate::error::{Error, Result};
use crate::integrality::{generality_level, integrality_level};
use crate::polytope::{Face, Location, Polytope};
use crate::report::{Check, Report};

/// Simplices given by indices into the vertex list of the triangulated polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    pub simplices: Vec<Vec<usize>>,
}

impl Triangulation {
    /// The simplices as polytopes.
    pub fn polytopes(&self, p: &Polytope) -> Vec<Polytope> {
        self.simplices
            .iter()
            .map(|s| Polytope::new(p.ambient_dim(), s.iter().map(|&i| p.vertices()[i].clone()).collect()).expect("same ambient dimension"))
            .collect()
    }
}

fn require_positive_dim(p: &Polytope) -> Result<()> {
    if p.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    if p.dim() == 0 {
        return Err(Error::DimensionTooSmall { dim: 0, min: 1 });
    }
    Ok(())
}

/// Cones from `apex(face)` over the triangulated facets of `face` that miss it.
fn cone_triangulation(p: &Polytope, face: &Face, apex: &dyn Fn(&Face) -> usize, out: &mut Vec<Vec<usize>>) {
    if face.vertices.len() == face.dim + 1 {
        out.push(face.vertices.clone());
        return;
    }
    let a = apex(face);
    for facet in p.all_faces() {
        if facet.dim + 1 != face.dim || facet.vertices.contains(&a) || !facet.vertices.iter().all(|v| face.vertices.contains(v)) {
            continue;
        }
        let mut sub = Vec::new();
        cone_triangulation(p, facet, apex, &mut sub);
        for mut s in sub {
            s.push(a);
            s.sort_unstable();
            out.push(s);
        }
    }
}

fn whole(p: &Polytope) -> &Face {
    p.all_faces().last().expect("nonempty polytope has itself as a face")
}

/// Pulling triangulation: cone from the first vertex, recursing on the facets that miss it.
pub fn triangulate(p: &Polytope) -> Result<Triangulation> {
    require_positive_dim(p)?;
    let mut simplices = Vec::new();
    cone_triangulation(p, whole(p), &|f: &Face| f.vertices[0], &mut simplices);
    Ok(Triangulation { simplices })
}

/// Triangulation of a polytope in 1-general position into 1-general simplices:
/// each cone apex is the vertex with the smallest first coordinate.
pub fn triangulate_1general(p: &Polytope) -> Result<Triangulation> {
    require_positive_dim(p)?;
    generality_level(p).require(1)?;
    let verts = p.vertices();
    let lowest = |f: &Face| *f.vertices.iter().min_by(|&&a, &&b| verts[a][0].cmp(&verts[b][0]).then(a.cmp(&b))).expect("faces are nonempty");
    let mut simplices = Vec::new();
    cone_triangulation(p, whole(p), &lowest, &mut simplices);
    Ok(Triangulation { simplices })
}

fn check_lattice(p: &Polytope, gamma: &Sublattice) -> Result<()> {
    if gamma.ambient_dim() != p.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: p.ambient_dim(), found: gamma.ambient_dim() });
    }
    let spans = gamma.rank() == p.dim() && p.lin().iter_rows().all(|r| gamma.rational_coordinates(r).is_some());
    if !spans {
        return Err(Error::LatticeMismatch { rank: gamma.rank(), dim: p.dim() });
    }
    Ok(())
}

/// `|det|` of the simplex edges in `Γ`-coordinates; `d!` times its normalized volume.
fn simplex_det(points: &[&Vec<Rat>], gamma: &Sublattice) -> Rat {
    let d = points.len() - 1;
    let rows = points[1..]
        .iter()
        .map(|v| gamma.rational_coordinates(&sub(v, points[0])).expect("edge lies in the span of the lattice"))
        .collect();
    det(&RMatrix::from_rows(d, rows)).expect("square").abs()
}

/// `Vol_Γ(P)`; `Γ` must be a lattice of rank `dim P` spanning `lin(P)`.
///
/// A single point has volume 1 and the empty polytope volume 0.
pub fn normalized_volume(p: &Polytope, gamma: &Sublattice) -> Result<Rat> {
    if p.is_empty() {
        return Ok(Rat::zero());
    }
    check_lattice(p, gamma)?;
    if p.dim() == 0 {
        return Ok(Rat::from_integer(1.into()));
    }
    let t = triangulate(p)?;
    let total = t.simplices.iter().fold(Rat::zero(), |acc, s| {
        let pts: Vec<&Vec<Rat>> = s.iter().map(|&i| &p.vertices()[i]).collect();
        acc + simplex_det(&pts, gamma)
    });
    Ok(total / int_to_rat(&factorial(p.dim())))
}

/// Volume normalized to the lattice `lin(P) ∩ Z^D`.
pub fn lattice_volume(p: &Polytope) -> Result<Rat> {
    normalized_volume(p, &p.lin_lattice())
}

/// One term of an S-volume sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceTerm {
    /// The projected point, in the coordinates of the original polytope.
    pub y: Vec<Rat>,
    /// Position of `y` relative to the projection of `P`.
    pub location: Location,
    pub slice: Polytope,
    /// Slice volume with respect to the kernel part of the lattice (0 for
    /// slices of lower dimension).
    pub volume: Rat,
}

/// Points of `Γ_k ∩ Q` where `Q ⊂ span(Γ_k)`, enumerated in lattice coordinates.
fn lattice_points_in(q: &Polytope, lattice: &Sublattice, budget: u64) -> Result<Vec<Vec<Rat>>> {
    let t = lattice.rank();
    let coords: Vec<Vec<Rat>> = q
        .vertices()
        .iter()
        .map(|v| lattice.rational_coordinates(v).expect("projection lies in the span of the projected lattice"))
        .collect();
    let local = Polytope::new(t, coords)?;
    let basis = lattice.rational_basis();
    let mut points: Vec<Vec<Rat>> = local
        .lattice_points(budget)?
        .into_iter()
        .map(|c| (0..lattice.ambient_dim()).map(|j| (0..t).fold(Rat::zero(), |acc, i| acc + &c[i] * basis.get(i, j))).collect())
        .collect();
    points.sort();
    Ok(points)
}

/// The terms of `SVol^k_Γ(P)`, one per projected lattice point, sorted by `y`.
///
/// When `aff(P)` contains a lattice point `β`, the sum runs over the coset
/// `β_k + π(Γ)`, which amounts to translating `P` to pass through the origin.
/// Otherwise it runs over `π(Γ)` itself.
pub fn svol_terms(p: &Polytope, k: usize, gamma: &Sublattice, budget: u64) -> Result<Vec<SliceTerm>> {
    if k > p.ambient_dim() {
        return Err(Error::LevelOutOfRange { level: k, max: p.ambient_dim() });
    }
    if p.is_empty() {
        return Ok(Vec::new());
    }
    check_lattice(p, gamma)?;
    let shift = p.lattice_point_in_affine_hull().unwrap_or_else(|| vec![Rat::zero(); p.ambient_dim()]);
    let centered = p.translate(&shift.iter().map(|x| -x).collect::<Vec<_>>())?;
    let split = gamma.split(k)?;
    let proj = centered.project(k)?;
    let mut terms = Vec::new();
    for y in lattice_points_in(&proj, &split.proj, budget)? {
        let slice = centered.slice(&y)?;
        let volume = if slice.is_empty() || slice.dim() < split.ker.rank() {
            Rat::zero()
        } else {
            normalized_volume(&slice, &split.ker)?
        };
        let y_orig: Vec<Rat> = y.iter().zip(&shift).map(|(a, b)| a + b).collect();
        let slice = slice.translate(&shift)?;
        terms.push(SliceTerm { location: proj.classify_point(&y), y: y_orig, slice, volume });
    }
    Ok(terms)
}

/// `SVol^k_Γ(P)`.
pub fn svol(p: &Polytope, k: usize, gamma: &Sublattice, budget: u64) -> Result<Rat> {
    Ok(svol_terms(p, k, gamma, budget)?.into_iter().fold(Rat::zero(), |acc, t| acc + t.volume))
}

/// Checks `Vol(P) = SVol^k(P)`, both normalized to `lin(P) ∩ Z^D`, which holds
/// whenever `P` is `(k-1)`-integral and in `k`-general position.
pub fn verify_mainvol(p: &Polytope, k: usize, budget: u64) -> Result<Report> {
    if p.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    if k == 0 || k >= p.dim() {
        return Err(Error::LevelOutOfRange { level: k, max: p.dim().saturating_sub(1) });
    }
    let hypotheses = vec![
        Check::level("(k-1)-integral", integrality_level(p), k as i64 - 1),
        Check::level("k-general", generality_level(p), k as i64),
    ];
    let gamma = p.lin_lattice();
    let lhs = normalized_volume(p, &gamma)?;
    let rhs = svol(p, k, &gamma, budget)?;
    Report::new("volume equals S-volume", hypotheses, lhs, rhs).into_checked()
}
