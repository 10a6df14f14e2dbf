use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_traits::Zero;

use super::{affine_rank, sign_of, Face, HRep, Polytope};
use crate::algebra::{dot, int_to_rat, nullspace, primitive, rank, rref, sub, Int, RMatrix, Rat};

/// Calls `f` with every `k`-subset of `0..n`, in lexicographic order.
pub(crate) fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else { return };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

struct LocalFacet {
    normal: Vec<Int>,
    rhs: Rat,
    incident: Vec<usize>,
}

/// Facets of a full-dimensional point set in `R^d`, as `normal . x <= rhs`.
fn local_facets(points: &[Vec<Rat>], d: usize) -> Vec<LocalFacet> {
    let mut found: BTreeMap<(Vec<Int>, Rat), Vec<usize>> = BTreeMap::new();
    for_each_subset(points.len(), d, |idx| {
        let base = &points[idx[0]];
        let diffs = RMatrix::from_rows(d, idx[1..].iter().map(|&i| sub(&points[i], base)).collect());
        let ns = nullspace(&diffs);
        if ns.rows() != 1 {
            return;
        }
        let normal: Vec<Rat> = primitive(ns.row(0)).iter().map(int_to_rat).collect();
        let b = dot(&normal, base);
        let mut side = 0i8;
        let mut incident = Vec::new();
        for (j, p) in points.iter().enumerate() {
            let s = sign_of(&(dot(&normal, p) - &b));
            if s == 0 {
                incident.push(j);
            } else if side == 0 {
                side = s;
            } else if side != s {
                return;
            }
        }
        // side != 0 because the points span R^d.
        let (normal, b) = if side > 0 {
            (normal.iter().map(|x| -x).collect::<Vec<_>>(), -b)
        } else {
            (normal, b)
        };
        let key: Vec<Int> = normal.iter().map(|x| x.to_integer()).collect();
        found.entry((key, b)).or_insert(incident);
    });
    found.into_iter().map(|((normal, rhs), incident)| LocalFacet { normal, rhs, incident }).collect()
}

pub(super) fn build(ambient_dim: usize, points: Vec<Vec<Rat>>) -> Polytope {
    let base = points[0].clone();
    let diffs = RMatrix::from_rows(ambient_dim, points[1..].iter().map(|p| sub(p, &base)).collect());
    let (lin, pivots) = rref(&diffs);
    let dim = pivots.len();

    // Coordinates at the pivot columns identify aff(P) with R^dim.
    let local: Vec<Vec<Rat>> = points.iter().map(|p| pivots.iter().map(|&c| p[c].clone()).collect()).collect();
    let facets = if dim == 0 { Vec::new() } else { local_facets(&local, dim) };

    let is_vertex: Vec<bool> = (0..points.len())
        .map(|j| {
            if dim == 0 {
                return true;
            }
            let normals: Vec<Vec<Rat>> = facets
                .iter()
                .filter(|f| f.incident.contains(&j))
                .map(|f| f.normal.iter().map(int_to_rat).collect())
                .collect();
            normals.len() >= dim && rank(&RMatrix::from_rows(dim, normals)) == dim
        })
        .collect();
    let mut new_index = alloc::vec![usize::MAX; points.len()];
    let mut vertices = Vec::new();
    for (j, p) in points.into_iter().enumerate() {
        if is_vertex[j] {
            new_index[j] = vertices.len();
            vertices.push(p);
        }
    }

    let mut inequalities = RMatrix::zeros(0, ambient_dim);
    let mut inequality_rhs = Vec::new();
    let mut facet_sets: Vec<Vec<usize>> = Vec::new();
    for f in &facets {
        let mut row = alloc::vec![Rat::zero(); ambient_dim];
        for (t, &c) in pivots.iter().enumerate() {
            row[c] = int_to_rat(&f.normal[t]);
        }
        inequalities.push_row(row);
        inequality_rhs.push(f.rhs.clone());
        facet_sets.push(f.incident.iter().filter(|&&j| is_vertex[j]).map(|&j| new_index[j]).collect());
    }

    let mut equalities = RMatrix::zeros(0, ambient_dim);
    let mut equality_rhs = Vec::new();
    for n in nullspace(&lin).iter_rows() {
        let row: Vec<Rat> = primitive(n).iter().map(int_to_rat).collect();
        equality_rhs.push(dot(&row, &base));
        equalities.push_row(row);
    }

    let faces = face_lattice(&vertices, &facet_sets, dim);
    Polytope {
        ambient_dim,
        vertices,
        dim,
        lin,
        hrep: HRep { equalities, equality_rhs, inequalities, inequality_rhs },
        faces,
    }
}

/// All nonempty faces: the polytope plus every nonempty intersection of facets.
fn face_lattice(vertices: &[Vec<Rat>], facet_sets: &[Vec<usize>], dim: usize) -> Vec<Face> {
    let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
    all.insert((0..vertices.len()).collect());
    let mut frontier: Vec<Vec<usize>> = facet_sets.to_vec();
    while let Some(set) = frontier.pop() {
        if set.is_empty() || !all.insert(set.clone()) {
            continue;
        }
        for f in facet_sets {
            let meet: Vec<usize> = set.iter().copied().filter(|i| f.contains(i)).collect();
            if !meet.is_empty() && !all.contains(&meet) {
                frontier.push(meet);
            }
        }
    }
    let mut faces: Vec<Face> = all
        .into_iter()
        .map(|vs| {
            let pts: Vec<Vec<Rat>> = vs.iter().map(|&i| vertices[i].clone()).collect();
            let d = if vs.len() == vertices.len() { dim } else { affine_rank(&pts) };
            Face { dim: d, vertices: vs }
        })
        .collect();
    faces.sort();
    faces
}
