//! Lattice-point enumeration by scanning the bounding box.
//!
//! All coordinates but one are enumerated; for the remaining (innermost)
//! coordinate the constraints are solved for an integer interval directly.
//! The scan runs on `i128` when every number involved is small and falls back
//! to big integers otherwise.

use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use super::Polytope;
use crate::algebra::{int_to_rat, Int, Rat};
use crate::error::{Error, Result};

/// Default cap on the number of enumerated cells.
pub const DEFAULT_CELL_BUDGET: u64 = 10_000_000;

/// `coeffs . x <= rhs`, or `= rhs` for equalities, with integer data.
struct Constraint<T> {
    coeffs: Vec<T>,
    rhs: T,
    equality: bool,
}

struct System<T> {
    constraints: Vec<Constraint<T>>,
    lo: Vec<T>,
    hi: Vec<T>,
    inner: usize,
}

impl<T> System<T> {
    fn convert<U>(&self, f: impl Fn(&T) -> U) -> System<U> {
        System {
            constraints: self
                .constraints
                .iter()
                .map(|c| Constraint { coeffs: c.coeffs.iter().map(&f).collect(), rhs: f(&c.rhs), equality: c.equality })
                .collect(),
            lo: self.lo.iter().map(&f).collect(),
            hi: self.hi.iter().map(&f).collect(),
            inner: self.inner,
        }
    }

    fn values(&self) -> impl Iterator<Item = &T> {
        self.constraints
            .iter()
            .flat_map(|c| c.coeffs.iter().chain(core::iter::once(&c.rhs)))
            .chain(self.lo.iter())
            .chain(self.hi.iter())
    }
}

fn scaled(row: &[Rat], rhs: &Rat) -> (Vec<Int>, Rat) {
    let lcm = int_to_rat(&row.iter().fold(Int::one(), |acc, x| acc.lcm(x.denom())));
    (row.iter().map(|x| (x * &lcm).to_integer()).collect(), rhs * &lcm)
}

/// Integer form of the constraints, or `None` when there is trivially no lattice point.
fn integer_system(p: &Polytope) -> Option<System<Int>> {
    let (lo, hi) = p.bounding_box()?;
    let lo: Vec<Int> = lo.iter().map(|x| x.ceil().to_integer()).collect();
    let hi: Vec<Int> = hi.iter().map(|x| x.floor().to_integer()).collect();
    if lo.iter().zip(&hi).any(|(a, b)| a > b) {
        return None;
    }
    let mut constraints = Vec::new();
    let h = p.hrep();
    for (row, rhs) in h.equalities.iter_rows().zip(&h.equality_rhs) {
        let (coeffs, rhs) = scaled(row, rhs);
        if !rhs.is_integer() {
            return None;
        }
        constraints.push(Constraint { coeffs, rhs: rhs.to_integer(), equality: true });
    }
    for (row, rhs) in h.inequalities.iter_rows().zip(&h.inequality_rhs) {
        let (coeffs, rhs) = scaled(row, rhs);
        constraints.push(Constraint { coeffs, rhs: rhs.floor().to_integer(), equality: false });
    }
    let inner = (0..lo.len()).max_by_key(|&j| &hi[j] - &lo[j]).unwrap_or(0);
    Some(System { constraints, lo, hi, inner })
}

fn cells(sys: &System<Int>) -> u128 {
    (0..sys.lo.len()).filter(|&j| j != sys.inner).fold(1u128, |acc, j| {
        let extent = (&sys.hi[j] - &sys.lo[j] + 1u32).to_u128().unwrap_or(u128::MAX);
        acc.saturating_mul(extent)
    })
}

/// Calls `visit(x, a, b)` for every outer cell `x` whose fibre along the
/// inner coordinate contains the integers `a..=b` (with `a <= b`).
fn scan<T>(sys: &System<T>, visit: &mut dyn FnMut(&[T], &T, &T))
where
    T: Clone + Integer + Signed,
{
    let n = sys.lo.len();
    if n == 0 {
        // R^0 has the single lattice point ().
        if sys.constraints.iter().all(|c| if c.equality { c.rhs.is_zero() } else { !c.rhs.is_negative() }) {
            visit(&[], &T::zero(), &T::zero());
        }
        return;
    }
    let inner = sys.inner;
    let outer: Vec<usize> = (0..n).filter(|&j| j != inner).collect();
    let mut x = sys.lo.clone();
    'cells: loop {
        let mut a = sys.lo[inner].clone();
        let mut b = sys.hi[inner].clone();
        let mut feasible = true;
        for c in &sys.constraints {
            let mut r = c.rhs.clone();
            for &j in &outer {
                if !c.coeffs[j].is_zero() {
                    r = r - c.coeffs[j].clone() * x[j].clone();
                }
            }
            let ci = &c.coeffs[inner];
            if ci.is_zero() {
                feasible = if c.equality { r.is_zero() } else { !r.is_negative() };
            } else if c.equality {
                let (q, rem) = r.div_rem(ci);
                feasible = rem.is_zero();
                if q > a {
                    a = q.clone();
                }
                if q < b {
                    b = q;
                }
            } else if ci.is_positive() {
                let q = r.div_floor(ci);
                if q < b {
                    b = q;
                }
            } else {
                let q = r.div_ceil(ci);
                if q > a {
                    a = q;
                }
            }
            if !feasible || a > b {
                feasible = false;
                break;
            }
        }
        if feasible {
            visit(&x, &a, &b);
        }
        for &j in outer.iter().rev() {
            if x[j] < sys.hi[j] {
                x[j] = x[j].clone() + T::one();
                continue 'cells;
            }
            x[j] = sys.lo[j].clone();
        }
        break;
    }
}

/// Bound below which every intermediate value of the `i128` scan fits.
const SMALL: i64 = 1 << 40;

fn run(p: &Polytope, budget: u64, visit: &mut dyn FnMut(&[Int], &Int, &Int)) -> Result<()> {
    let Some(sys) = integer_system(p) else { return Ok(()) };
    let cells = cells(&sys);
    if cells > u128::from(budget) {
        return Err(Error::BudgetExceeded { cells, budget });
    }
    let small = Int::from(SMALL);
    if sys.values().all(|v| v.abs() < small) {
        let sys = sys.convert(|v| v.to_i128().expect("checked bound"));
        scan(&sys, &mut |x, a, b| {
            let x: Vec<Int> = x.iter().map(|&v| Int::from(v)).collect();
            visit(&x, &Int::from(*a), &Int::from(*b));
        });
    } else {
        scan(&sys, visit);
    }
    Ok(())
}

impl Polytope {
    /// Number of points of `P ∩ Z^D`.
    ///
    /// Fails with [`Error::BudgetExceeded`] when more than `budget` cells of
    /// the bounding box would have to be scanned.
    pub fn count_lattice_points(&self, budget: u64) -> Result<Int> {
        let mut total = Int::from(0);
        run(self, budget, &mut |_, a, b| total += b - a + 1u32)?;
        Ok(total)
    }

    /// The points of `P ∩ Z^D`, sorted lexicographically.
    pub fn lattice_points(&self, budget: u64) -> Result<Vec<Vec<Rat>>> {
        let inner = integer_system(self).map_or(0, |s| s.inner);
        let mut points = Vec::new();
        run(self, budget, &mut |x, a, b| {
            let mut t = a.clone();
            while &t <= b {
                let mut p: Vec<Rat> = x.iter().map(int_to_rat).collect();
                if !p.is_empty() {
                    p[inner] = int_to_rat(&t);
                }
                points.push(p);
                t += 1u32;
            }
        })?;
        points.sort();
        Ok(points)
    }
}
