//! Exact linear algebra over the integers and the rationals.

mod hnf;
mod lattice;
mod matrix;

pub use hnf::{hnf, integer_kernel, integer_solve, Hnf};
pub use lattice::Sublattice;
pub use matrix::{det, inverse, nullspace, rank, rref, solve, Matrix, Solution};

use alloc::vec::Vec;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Arbitrary-precision integer.
pub type Int = num_bigint::BigInt;
/// Exact rational, always kept in lowest terms with a positive denominator.
pub type Rat = num_rational::BigRational;

pub type IMatrix = Matrix<Int>;
pub type RMatrix = Matrix<Rat>;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn int_to_rat(n: &Int) -> Rat {
    Rat::from_integer(n.clone())
}

/// Returns the integer value of `x` when it is one.
pub fn as_integer(x: &Rat) -> Option<Int> {
    x.is_integer().then(|| x.to_integer())
}

pub fn is_integral_point(p: &[Rat]) -> bool {
    p.iter().all(|x| x.is_integer())
}

/// Multiplies `row` by the lcm of its denominators.
pub fn clear_denominators(row: &[Rat]) -> Vec<Int> {
    let lcm = row.iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| (x * int_to_rat(&lcm)).to_integer()).collect()
}

/// Scales a rational vector to the primitive integer vector pointing the same way.
pub fn primitive(row: &[Rat]) -> Vec<Int> {
    let ints = clear_denominators(row);
    let g = ints.iter().fold(Int::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[Rat], s: &Rat) -> Vec<Rat> {
    a.iter().map(|x| x * s).collect()
}

pub fn factorial(n: usize) -> Int {
    (1..=n).fold(Int::one(), |acc, i| acc * Int::from(i))
}

pub fn binomial(n: usize, k: usize) -> Int {
    if k > n {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut acc = Int::one();
    for i in 0..k {
        acc = acc * Int::from(n - i) / Int::from(i + 1);
    }
    acc
}
