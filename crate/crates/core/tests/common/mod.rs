//! Random instance generators and independent brute-force oracles shared by
//! the property suites and the acceptance target.
//!
//! The oracles deliberately avoid the library: they use Leibniz determinants,
//! barycentric coordinates from a local Gaussian elimination, and literal
//! summation.

#![allow(dead_code)]

use latticeface_core::{Int, Polytope, Rat};
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub type Points = Vec<Vec<i64>>;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn r(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn q(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn to_rat(points: &[Vec<i64>]) -> Vec<Vec<Rat>> {
    points.iter().map(|p| p.iter().map(|&x| r(x)).collect()).collect()
}

pub fn polytope(points: &[Vec<i64>]) -> Polytope {
    Polytope::new(points[0].len(), to_rat(points)).expect("generated points form a polytope")
}

/// `n` distinct sorted integers from `lo..=hi`.
pub fn distinct(rng: &mut StdRng, n: usize, lo: i64, hi: i64) -> Vec<i64> {
    let mut pool: Vec<i64> = (lo..=hi).collect();
    pool.shuffle(rng);
    let mut out = pool[..n].to_vec();
    out.sort();
    out
}

/// Vertices `(t, t^2, ..., t^d)` for distinct integer parameters: every face
/// lies in a flat `x_j = integer affine function of x_1..x_r`, so the simplex
/// is fully integral and fully general.
pub fn moment_simplex(params: &[i64]) -> Points {
    let d = params.len() - 1;
    params.iter().map(|&t| (1..=d as u32).map(|j| t.pow(j)).collect()).collect()
}

/// Upper triangular integer matrix with diagonal entries `±1`.
pub fn upper_unitriangular(rng: &mut StdRng, n: usize, spread: i64) -> Points {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match j.cmp(&i) {
                    std::cmp::Ordering::Less => 0,
                    std::cmp::Ordering::Equal => {
                        if rng.gen_bool(0.5) {
                            1
                        } else {
                            -1
                        }
                    }
                    std::cmp::Ordering::Greater => rng.gen_range(-spread..=spread),
                })
                .collect()
        })
        .collect()
}

/// A random element of `GL_n(Z)` built from elementary row operations.
pub fn unimodular(rng: &mut StdRng, n: usize, steps: usize) -> Points {
    let mut m: Points = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    if n < 2 {
        return m;
    }
    for _ in 0..steps {
        let a = rng.gen_range(0..n);
        let mut b = rng.gen_range(0..n - 1);
        if b >= a {
            b += 1;
        }
        match rng.gen_range(0..3) {
            0 => m.swap(a, b),
            1 => m[a].iter_mut().for_each(|x| *x = -*x),
            _ => {
                let c = if rng.gen_bool(0.5) { 1 } else { -1 };
                let row_b = m[b].clone();
                m[a].iter_mut().zip(&row_b).for_each(|(x, y)| *x += c * y);
            }
        }
    }
    m
}

/// Row-vector image `x ↦ x M + t`.
pub fn map_points(points: &[Vec<i64>], m: &[Vec<i64>], t: &[i64]) -> Points {
    points
        .iter()
        .map(|x| (0..m[0].len()).map(|j| t[j] + (0..x.len()).map(|i| x[i] * m[i][j]).sum::<i64>()).collect())
        .collect()
}

pub fn random_translation(rng: &mut StdRng, n: usize, spread: i64) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(-spread..=spread)).collect()
}

/// Applies a random upper unitriangular shear and integer translation; both
/// keep every integrality and generality level.
pub fn level_preserving_image(rng: &mut StdRng, points: &[Vec<i64>], spread: i64) -> Points {
    let n = points[0].len();
    let m = upper_unitriangular(rng, n, spread);
    let t = random_translation(rng, n, 3);
    map_points(points, &m, &t)
}

/// Appends `extra` coordinates that are integer linear functions of the
/// existing ones; the lattice of every face keeps its projections.
pub fn embed(rng: &mut StdRng, points: &[Vec<i64>], extra: usize) -> Points {
    let n = points[0].len();
    let a: Points = (0..n).map(|_| (0..extra).map(|_| rng.gen_range(-1..=1)).collect()).collect();
    points
        .iter()
        .map(|x| {
            let mut y = x.clone();
            y.extend((0..extra).map(|j| (0..n).map(|i| x[i] * a[i][j]).sum::<i64>()));
            y
        })
        .collect()
}

/// A random fully integral `d`-simplex in `R^d`.
pub fn fully_integral_simplex(rng: &mut StdRng, d: usize) -> Points {
    let window = match d {
        0..=2 => 3,
        3 => 2,
        _ => 2,
    };
    let params = distinct(rng, d + 1, -window, window);
    let spread = if d >= 4 { 0 } else { 1 };
    level_preserving_image(rng, &moment_simplex(&params), spread)
}

pub fn product(a: &[Vec<i64>], b: &[Vec<i64>]) -> Points {
    a.iter()
        .flat_map(|x| {
            b.iter().map(move |y| {
                let mut v = x.clone();
                v.extend(y.iter().copied());
                v
            })
        })
        .collect()
}

/// `conv(base × {0}, (apex, height))`.
pub fn pyramid(base: &[Vec<i64>], apex: &[i64], height: i64) -> Points {
    let mut out: Points = base
        .iter()
        .map(|x| {
            let mut v = x.clone();
            v.push(0);
            v
        })
        .collect();
    let mut top = apex.to_vec();
    top.push(height);
    out.push(top);
    out
}

/// A random full-dimensional integer simplex in `R^d` with coordinates in `-c..=c`.
pub fn random_simplex(rng: &mut StdRng, d: usize, c: i64) -> Points {
    loop {
        let pts: Points = (0..=d).map(|_| (0..d).map(|_| rng.gen_range(-c..=c)).collect()).collect();
        let edges: Vec<Vec<Rat>> =
            pts[1..].iter().map(|p| p.iter().zip(&pts[0]).map(|(a, b)| r(a - b)).collect()).collect();
        if !leibniz_det(&edges).is_zero() {
            return pts;
        }
    }
}

// ---------------------------------------------------------------- oracles

/// Determinant by the Leibniz formula.
pub fn leibniz_det(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Rat::zero();
    permute(&mut perm, 0, &mut |p| {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let term = (0..n).fold(Rat::one(), |acc, i| acc * &m[i][p[i]]);
        if inversions % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    });
    total
}

fn permute(p: &mut Vec<usize>, i: usize, f: &mut impl FnMut(&[usize])) {
    if i == p.len() {
        f(p);
        return;
    }
    for j in i..p.len() {
        p.swap(i, j);
        permute(p, i + 1, f);
        p.swap(i, j);
    }
}

pub fn factorial(n: usize) -> Rat {
    (1..=n as i64).fold(Rat::one(), |acc, i| acc * r(i))
}

/// Volume `|det(edges)| / d!` of a full-dimensional simplex in `R^d`.
pub fn simplex_volume(points: &[Vec<i64>]) -> Rat {
    let edges: Vec<Vec<Rat>> =
        points[1..].iter().map(|p| p.iter().zip(&points[0]).map(|(a, b)| r(a - b)).collect()).collect();
    leibniz_det(&edges).abs() / factorial(edges.len())
}

/// Solves the square system `a x = b` by Gaussian elimination.
fn gauss_solve(mut a: Vec<Vec<Rat>>, mut b: Vec<Rat>) -> Option<Vec<Rat>> {
    let n = a.len();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        b.swap(c, p);
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[c][c];
                let pivot_row = a[c].clone();
                for (aij, acj) in a[i].iter_mut().zip(&pivot_row).skip(c) {
                    *aij -= acj * &f;
                }
                let v = &b[c] * &f;
                b[i] -= v;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// Whether `x` lies in the full-dimensional simplex `m · conv(points)`.
pub fn in_dilated_simplex(points: &[Vec<i64>], m: i64, x: &[i64]) -> bool {
    let d = x.len();
    // Barycentric coordinates λ_1..λ_d with respect to v_0: x - m v_0 = Σ λ_i m (v_i - v_0).
    let a: Vec<Vec<Rat>> = (0..d).map(|row| (1..=d).map(|i| r(m * (points[i][row] - points[0][row]))).collect()).collect();
    let b: Vec<Rat> = (0..d).map(|row| r(x[row] - m * points[0][row])).collect();
    let lambda = gauss_solve(a, b).expect("simplex is full-dimensional");
    let sum = lambda.iter().fold(Rat::zero(), |acc, l| acc + l);
    lambda.iter().all(|l| !l.is_negative()) && sum <= Rat::one()
}

/// Lattice points of `m · S` for a full-dimensional simplex, by scanning its bounding box.
pub fn brute_force_simplex_count(points: &[Vec<i64>], m: i64) -> u64 {
    let d = points[0].len();
    let lo: Vec<i64> = (0..d).map(|j| points.iter().map(|p| p[j]).min().unwrap() * m).collect();
    let hi: Vec<i64> = (0..d).map(|j| points.iter().map(|p| p[j]).max().unwrap() * m).collect();
    let mut x = lo.clone();
    let mut count = 0;
    loop {
        if in_dilated_simplex(points, m, &x) {
            count += 1;
        }
        let Some(i) = (0..d).rev().find(|&i| x[i] < hi[i]) else { return count };
        x[i] += 1;
        x[i + 1..].copy_from_slice(&lo[i + 1..]);
    }
}

/// `1^k + 2^k + ... + n^k`.
pub fn literal_power_sum(k: u32, n: i64) -> Rat {
    (1..=n).fold(Rat::zero(), |acc, i| acc + r(i).pow(k as i32))
}
