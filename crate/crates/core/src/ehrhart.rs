//! Ehrhart polynomials: by counting and interpolation, by slices over the
//! projection of a `k`-integral polytope, and by projection volumes for fully
//! integral polytopes.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::algebra::{int_to_rat, solve, Int, RMatrix, Rat, Sublattice};
use crate::error::{Error, Result};
use crate::integrality::integrality_level;
use crate::polytope::{Location, Polytope};
use crate::report::{Check, Report};
use crate::volume::{lattice_volume, normalized_volume};

/// Polynomial in the dilation factor `m`, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EhrhartPolynomial {
    coefficients: Vec<Rat>,
}

impl EhrhartPolynomial {
    /// Trailing zero coefficients are kept, so the length records the degree bound.
    pub fn new(coefficients: Vec<Rat>) -> Self {
        EhrhartPolynomial { coefficients }
    }

    pub fn coefficients(&self) -> &[Rat] {
        &self.coefficients
    }

    pub fn coefficient(&self, j: usize) -> Rat {
        self.coefficients.get(j).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn evaluate(&self, m: &Rat) -> Rat {
        self.coefficients.iter().rev().fold(Rat::zero(), |acc, c| acc * m + c)
    }

    /// `self + other`, with length the larger of the two.
    pub fn add(&self, other: &Self) -> Self {
        let n = self.coefficients.len().max(other.coefficients.len());
        EhrhartPolynomial::new((0..n).map(|j| self.coefficient(j) + other.coefficient(j)).collect())
    }

    /// `m^k * self`.
    pub fn shift(&self, k: usize) -> Self {
        let mut c = vec![Rat::zero(); k];
        c.extend(self.coefficients.iter().cloned());
        EhrhartPolynomial::new(c)
    }

    /// Same polynomial padded or truncated (dropping only zeros) to `len` coefficients.
    pub fn with_len(&self, len: usize) -> Self {
        let mut c = self.coefficients.clone();
        while c.len() > len && c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        c.resize(len.max(c.len()), Rat::zero());
        EhrhartPolynomial::new(c)
    }
}

impl fmt::Display for EhrhartPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let show_coeff = j == 0 || !a.is_one();
            if show_coeff {
                if a.is_integer() || j == 0 {
                    write!(f, "{a}")?;
                } else {
                    write!(f, "({a})")?;
                }
            }
            match j {
                0 => {}
                1 => write!(f, "m")?,
                _ => write!(f, "m^{j}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `#(mP ∩ Z^D)` for `m >= 1`.
pub fn count_points(p: &Polytope, m: u64, budget: u64) -> Result<Int> {
    if m == 0 {
        return Err(Error::BadDilation);
    }
    p.dilate(&Rat::from_integer(m.into()))?.count_lattice_points(budget)
}

fn require_nonempty(p: &Polytope) -> Result<()> {
    if p.is_empty() {
        Err(Error::EmptyPolytope)
    } else {
        Ok(())
    }
}

/// Ehrhart polynomial of an integral polytope from the counts at `m = 1..=d+1`.
///
/// The interpolated constant term must be 1; anything else is reported as a
/// violated identity.
pub fn ehrhart_interpolated(p: &Polytope, budget: u64) -> Result<EhrhartPolynomial> {
    require_nonempty(p)?;
    if !p.is_integral() {
        return Err(Error::NotIntegral);
    }
    let d = p.dim();
    let mut vandermonde = RMatrix::zeros(0, d + 1);
    let mut values = Vec::with_capacity(d + 1);
    for m in 1..=(d as u64 + 1) {
        let mr = Rat::from_integer(m.into());
        let mut row = Vec::with_capacity(d + 1);
        let mut power = Rat::one();
        for _ in 0..=d {
            row.push(power.clone());
            power *= &mr;
        }
        vandermonde.push_row(row);
        values.push(int_to_rat(&count_points(p, m, budget)?));
    }
    let sol = solve(&vandermonde, &values).expect("Vandermonde matrix on distinct nodes is invertible");
    let poly = EhrhartPolynomial::new(sol.particular);
    if !poly.coefficient(0).is_one() {
        return Err(Error::IdentityViolated("Ehrhart constant term is 1"));
    }
    Ok(poly)
}

/// `Vol_{Z^j}(π_j(P))` for `j = 0..=k`, where `π_j` keeps the first `j` coordinates.
pub fn projection_volumes(p: &Polytope, k: usize) -> Result<Vec<Rat>> {
    (0..=k).map(|j| normalized_volume(&p.project(j)?, &Sublattice::full(j))).collect()
}

/// Ehrhart polynomial of one slice in a slice decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceEhrhart {
    pub y: Vec<Rat>,
    pub location: Location,
    pub slice: Polytope,
    pub polynomial: EhrhartPolynomial,
}

/// The pieces of the slice formula for a `k`-integral polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceDecomposition {
    pub k: usize,
    /// One entry per lattice point of the projection, sorted by `y`.
    pub slices: Vec<SliceEhrhart>,
    /// `Σ_y i(slice_y, m)`.
    pub slice_sum: EhrhartPolynomial,
    /// `Vol_{Z^j}(π_j(P))` for `j = 0..=k`.
    pub projection_volumes: Vec<Rat>,
    pub polynomial: EhrhartPolynomial,
}

/// Ehrhart polynomial of a `k`-integral polytope:
/// `i(P, m) = m^k Σ_y (i(slice_y, m) - 1) + Σ_{j<=k} Vol(π_j(P)) m^j`,
/// with `y` over the lattice points of the projection to the first `k` coordinates.
pub fn ehrhart_k_integral(p: &Polytope, k: usize, budget: u64) -> Result<SliceDecomposition> {
    require_nonempty(p)?;
    let d = p.dim();
    if k > d {
        return Err(Error::LevelOutOfRange { level: k, max: d });
    }
    integrality_level(p).require(k)?;
    let proj = p.project(k)?;
    let mut slices = Vec::new();
    let mut slice_sum = EhrhartPolynomial::new(vec![Rat::zero(); d - k + 1]);
    for y in proj.lattice_points(budget)? {
        let slice = p.slice(&y)?;
        let location = proj.classify_point(&y);
        // Boundary slices of a k-integral polytope are single lattice points.
        let polynomial = if slice.dim() == 0 {
            EhrhartPolynomial::new(vec![Rat::one()])
        } else {
            ehrhart_interpolated(&slice, budget)?
        };
        slice_sum = slice_sum.add(&polynomial);
        slices.push(SliceEhrhart { y, location, slice, polynomial });
    }
    let count = Rat::from_integer(Int::from(slices.len()));
    let mut reduced = slice_sum.clone();
    reduced.coefficients[0] -= count;
    let projection_volumes = projection_volumes(p, k)?;
    let polynomial = reduced.shift(k).add(&EhrhartPolynomial::new(projection_volumes.clone())).with_len(d + 1);
    Ok(SliceDecomposition { k, slices, slice_sum: slice_sum.with_len(d - k + 1), projection_volumes, polynomial })
}

/// Ehrhart polynomial of a fully integral polytope: the coefficient of `m^j`
/// is the normalized volume of the projection to the first `j` coordinates.
pub fn ehrhart_fully_integral(p: &Polytope) -> Result<EhrhartPolynomial> {
    require_nonempty(p)?;
    integrality_level(p).require(p.dim())?;
    Ok(EhrhartPolynomial::new(projection_volumes(p, p.dim())?))
}

/// How to compute an Ehrhart polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Fully integral closed form if it applies, else slices at the highest
    /// integrality level, else counting.
    Auto,
    Interpolate,
    KIntegral(usize),
    FullyIntegral,
}

pub fn ehrhart(p: &Polytope, method: Method, budget: u64) -> Result<EhrhartPolynomial> {
    match method {
        Method::Interpolate => ehrhart_interpolated(p, budget),
        Method::KIntegral(k) => Ok(ehrhart_k_integral(p, k, budget)?.polynomial),
        Method::FullyIntegral => ehrhart_fully_integral(p),
        Method::Auto => ehrhart(p, resolve_auto(p)?, budget),
    }
}

/// The method [`Method::Auto`] uses for `p`: the fully integral closed form
/// if it applies, else slices at the highest integrality level (if at least
/// 1), else counting.
pub fn resolve_auto(p: &Polytope) -> Result<Method> {
    require_nonempty(p)?;
    let level = integrality_level(p).max_level;
    Ok(if level == p.dim() as i64 {
        Method::FullyIntegral
    } else if level >= 1 {
        Method::KIntegral(level as usize)
    } else {
        Method::Interpolate
    })
}

/// Checks `i(P) = i(π_{d-1}(P)) + Vol(P)`, which holds for `(d-1)`-integral `P`.
pub fn verify_codim1(p: &Polytope, budget: u64) -> Result<Report> {
    require_nonempty(p)?;
    let d = p.dim();
    if d == 0 {
        return Err(Error::DimensionTooSmall { dim: 0, min: 1 });
    }
    let hypotheses = vec![Check::level("(d-1)-integral", integrality_level(p), d as i64 - 1)];
    let lhs = int_to_rat(&p.count_lattice_points(budget)?);
    let proj_count = int_to_rat(&p.project(d - 1)?.count_lattice_points(budget)?);
    let volume = lattice_volume(p)?;
    let rhs = &proj_count + &volume;
    Report::new("lattice points = projection points + volume", hypotheses, lhs, rhs)
        .with_extra("projection points", proj_count)
        .with_extra("volume", volume)
        .into_checked()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::polytope::DEFAULT_CELL_BUDGET as B;

    fn poly(c: &[i64]) -> EhrhartPolynomial {
        EhrhartPolynomial::new(c.iter().map(|&x| rat(x)).collect())
    }

    fn p1() -> Polytope {
        Polytope::from_integers(3, &[&[0, 0, 0], &[4, 0, 0], &[3, 6, 0], &[2, 2, 2]]).unwrap()
    }

    fn triangle() -> Polytope {
        Polytope::from_integers(2, &[&[0, 0], &[4, 0], &[3, 6]]).unwrap()
    }

    fn segment() -> Polytope {
        Polytope::from_integers(1, &[&[0], &[4]]).unwrap()
    }

    #[test]
    fn counts() {
        assert_eq!(count_points(&p1(), 1, B).unwrap(), Int::from(23));
        assert_eq!(count_points(&segment(), 2, B).unwrap(), Int::from(9));
        let mut cube = Vec::new();
        for i in 0..8i64 {
            cube.push(vec![rat(i & 1), rat((i >> 1) & 1), rat((i >> 2) & 1)]);
        }
        assert_eq!(count_points(&Polytope::new(3, cube).unwrap(), 2, B).unwrap(), Int::from(27));
        assert!(matches!(count_points(&p1(), 0, B), Err(Error::BadDilation)));
    }

    #[test]
    fn interpolation() {
        assert_eq!(ehrhart_interpolated(&p1(), B).unwrap(), poly(&[1, 4, 10, 8]));
        let s = p1().slice(&[rat(2)]).unwrap();
        assert_eq!(ehrhart_interpolated(&s, B).unwrap(), poly(&[1, 4, 4]));
        assert_eq!(ehrhart_interpolated(&Polytope::from_integers(1, &[&[0], &[1]]).unwrap(), B).unwrap(), poly(&[1, 1]));
        let half = Polytope::new(1, vec![vec![rat(0)], vec![crate::algebra::ratio(1, 2)]]).unwrap();
        assert!(matches!(ehrhart_interpolated(&half, B), Err(Error::NotIntegral)));
    }

    #[test]
    fn slice_formula_on_the_worked_example() {
        let dec = ehrhart_k_integral(&p1(), 1, B).unwrap();
        assert_eq!(dec.polynomial, poly(&[1, 4, 10, 8]));
        assert_eq!(dec.slice_sum, poly(&[5, 10, 8]));
        let slice_polys: Vec<EhrhartPolynomial> = dec.slices.iter().map(|s| s.polynomial.with_len(3)).collect();
        assert_eq!(slice_polys, vec![poly(&[1, 0, 0]), poly(&[1, 2, 1]), poly(&[1, 4, 4]), poly(&[1, 4, 3]), poly(&[1, 0, 0])]);
        assert_eq!(dec.projection_volumes, vec![rat(1), rat(4)]);
        // Boundary slices are single points.
        for s in &dec.slices {
            assert_eq!(s.location == Location::Boundary, s.slice.dim() == 0);
        }
        assert_eq!(ehrhart_k_integral(&p1(), 0, B).unwrap().polynomial, poly(&[1, 4, 10, 8]));
        assert!(matches!(ehrhart_k_integral(&p1(), 2, B), Err(Error::Hypothesis { .. })));
        let unit = Polytope::from_integers(1, &[&[0], &[1]]).unwrap();
        assert_eq!(ehrhart_k_integral(&unit, 1, B).unwrap().polynomial, poly(&[1, 1]));
    }

    #[test]
    fn fully_integral_closed_form() {
        assert_eq!(ehrhart_fully_integral(&segment()).unwrap(), poly(&[1, 4]));
        assert_eq!(ehrhart_fully_integral(&triangle()).unwrap(), poly(&[1, 4, 12]));
        assert_eq!(ehrhart_interpolated(&triangle(), B).unwrap(), poly(&[1, 4, 12]));
        assert_eq!(ehrhart_fully_integral(&Polytope::from_integers(2, &[&[3, -1]]).unwrap()).unwrap(), poly(&[1]));
        assert!(matches!(ehrhart_fully_integral(&p1()), Err(Error::Hypothesis { .. })));
    }

    #[test]
    fn auto_agrees_with_interpolation() {
        for p in [p1(), triangle(), segment()] {
            assert_eq!(ehrhart(&p, Method::Auto, B).unwrap(), ehrhart(&p, Method::Interpolate, B).unwrap());
        }
    }

    #[test]
    fn codim1_examples() {
        let r = verify_codim1(&triangle(), B).unwrap();
        assert!(r.hypotheses_hold() && r.equal);
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (rat(17), rat(17)));
        assert_eq!(r.extra, vec![("projection points".into(), rat(5)), ("volume".into(), rat(12))]);
        let r = verify_codim1(&segment(), B).unwrap();
        assert_eq!((r.lhs, r.rhs, r.equal), (rat(5), rat(5), true));
        let r = verify_codim1(&p1(), B).unwrap();
        assert!(!r.hypotheses_hold());
    }

    #[test]
    fn display() {
        assert_eq!(alloc::format!("{}", poly(&[1, 4, 10, 8])), "8m^3 + 10m^2 + 4m + 1");
        assert_eq!(alloc::format!("{}", poly(&[1, -1, 0, 1])), "m^3 - m + 1");
        assert_eq!(alloc::format!("{}", poly(&[0])), "0");
    }
}
