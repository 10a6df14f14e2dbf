//! Determinant ratios of a fully general simplex and the signed identities
//! built from them.
//!
//! For a full-dimensional simplex in `R^d` with ordered vertices `x_1..x_{d+1}`
//! and a permutation `σ` of `1..d`:
//!
//! * `X(σ,k)` is the `(k+1)×(k+1)` matrix with rows `(1, x_{σ(i),1..k})` for
//!   `i = 1..k` followed by `(1, x_{d+1,1..k})`;
//! * `Y(σ,k)` is the `k×k` matrix with rows `(1, x_{σ(i),1..k-1})`;
//! * `z(σ,k) = det X(σ,k) / det Y(σ,k)`.
//!
//! Both determinants are nonzero exactly when the simplex is in fully general
//! position. The slice S-volume of an integral such simplex is
//! `Σ_σ sign(σ,P) |Π z| / z_1^d · P_{d-1}(z_1) / (d-1)!` with
//! `sign(σ,P) = sign(det X(σ,d)) · sign(Π z)`, and `P_k` the power-sum polynomial.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::algebra::{binomial, det, factorial, int_to_rat, RMatrix, Rat};
use crate::error::{Error, Result};
use crate::integrality::{generality_level, integrality_level};
use crate::polytope::{sign_of, Polytope};
use crate::report::{Check, Report};

/// Largest dimension for which the `d!` permutations are enumerated.
pub const MAX_PERMUTATION_DIM: usize = 7;

/// All permutations of `0..n` in lexicographic order, with their signs.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, i8)> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        out.push((p.clone(), if inversions % 2 == 0 { 1 } else { -1 }));
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else { return out };
        let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).expect("a larger element exists");
        p.swap(i, j);
        p[i + 1..].reverse();
    }
}

fn x_matrix(verts: &[Vec<Rat>], sigma: &[usize], k: usize) -> RMatrix {
    let d = sigma.len();
    let row = |v: &Vec<Rat>| {
        let mut r = vec![Rat::one()];
        r.extend(v[..k].iter().cloned());
        r
    };
    let mut rows: Vec<Vec<Rat>> = sigma[..k].iter().map(|&i| row(&verts[i])).collect();
    rows.push(row(&verts[d]));
    RMatrix::from_rows(k + 1, rows)
}

fn y_matrix(verts: &[Vec<Rat>], sigma: &[usize], k: usize) -> RMatrix {
    let rows = sigma[..k]
        .iter()
        .map(|&i| {
            let mut r = vec![Rat::one()];
            r.extend(verts[i][..k - 1].iter().cloned());
            r
        })
        .collect();
    RMatrix::from_rows(k, rows)
}

/// Checks that `s` is a full-dimensional simplex in fully general position
/// (and integral, if asked) with a manageable number of permutations.
fn require_simplex(s: &Polytope, integral: bool) -> Result<Vec<Check>> {
    if s.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    let d = s.dim();
    if !s.is_simplex() {
        return Err(Error::NotSimplex(d));
    }
    if d == 0 || d != s.ambient_dim() {
        return Err(Error::NotFullyGeneral);
    }
    if d > MAX_PERMUTATION_DIM {
        return Err(Error::TooManyPermutations(d));
    }
    let mut checks = Vec::new();
    if integral {
        checks.push(Check::level("integral", integrality_level(s).require(0)?, 0));
    }
    checks.push(Check::level("fully general", generality_level(s).require(d)?, d as i64));
    Ok(checks)
}

/// `z(σ,1), ..., z(σ,d)` for a permutation `σ` of `0..d` (0-based vertex indices).
pub fn z_values(s: &Polytope, sigma: &[usize]) -> Result<Vec<Rat>> {
    require_simplex(s, false)?;
    if sigma.len() != s.dim() {
        return Err(Error::DimensionMismatch { expected: s.dim(), found: sigma.len() });
    }
    z_unchecked(s.vertices(), sigma)
}

fn z_unchecked(verts: &[Vec<Rat>], sigma: &[usize]) -> Result<Vec<Rat>> {
    (1..=sigma.len())
        .map(|k| {
            let den = det(&y_matrix(verts, sigma, k))?;
            if den.is_zero() {
                return Err(Error::NotFullyGeneral);
            }
            let num = det(&x_matrix(verts, sigma, k))?;
            if num.is_zero() {
                return Err(Error::NotFullyGeneral);
            }
            Ok(num / den)
        })
        .collect()
}

/// Bernoulli numbers `B_0..B_n` with `B_1 = +1/2`.
fn bernoulli(n: usize) -> Vec<Rat> {
    let mut b: Vec<Rat> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        if m == 0 {
            b.push(Rat::one());
            continue;
        }
        let s = (0..m).fold(Rat::zero(), |acc, j| acc + int_to_rat(&binomial(m + 1, j)) * &b[j]);
        b.push(-s / Rat::from_integer((m + 1).into()));
    }
    if n >= 1 {
        b[1] = -b[1].clone();
    }
    b
}

/// Coefficients (constant term first) of the power-sum polynomial `P_k` with
/// `P_k(n) = 1^k + 2^k + ... + n^k` for integers `n >= 0`.
///
/// `P_k` has degree `k+1`, constant term 0 and leading coefficient `1/(k+1)`;
/// in particular `P_0(x) = x`.
pub fn power_sum_coefficients(k: usize) -> Vec<Rat> {
    let b = bernoulli(k);
    let mut c = vec![Rat::zero(); k + 2];
    let scale = Rat::from_integer((k + 1).into());
    for (j, bj) in b.iter().enumerate() {
        c[k + 1 - j] = int_to_rat(&binomial(k + 1, j)) * bj / &scale;
    }
    c
}

fn evaluate(coefficients: &[Rat], x: &Rat) -> Rat {
    coefficients.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
}

/// `P_k(x)`, the power-sum polynomial evaluated at a rational.
pub fn power_sum(k: usize, x: &Rat) -> Rat {
    evaluate(&power_sum_coefficients(k), x)
}

struct Tableau {
    d: usize,
    terms: Vec<(i8, Vec<Rat>)>,
    det_x_identity: Rat,
}

fn tableau(s: &Polytope) -> Result<Tableau> {
    let d = s.dim();
    let verts = s.vertices();
    let terms = permutations(d)
        .into_iter()
        .map(|(sigma, sign)| Ok((sign, z_unchecked(verts, &sigma)?)))
        .collect::<Result<Vec<_>>>()?;
    let identity: Vec<usize> = (0..d).collect();
    let det_x_identity = det(&x_matrix(verts, &identity, d))?;
    Ok(Tableau { d, terms, det_x_identity })
}

fn product(z: &[Rat]) -> Rat {
    z.iter().fold(Rat::one(), |acc, x| acc * x)
}

fn pow(x: &Rat, e: usize) -> Rat {
    (0..e).fold(Rat::one(), |acc, _| acc * x)
}

/// `SVol^1(S)` of an integral, fully general `d`-simplex in `R^d` from the
/// signed decomposition over all permutations.
pub fn svol_simplex_slices(s: &Polytope) -> Result<Rat> {
    require_simplex(s, true)?;
    let t = tableau(s)?;
    let d = t.d;
    let ps = power_sum_coefficients(d - 1);
    let mut total = Rat::zero();
    for (sigma_sign, z) in &t.terms {
        let prod = product(z);
        // sign(det X(σ,d)) = sign(σ) · sign(det X(id,d)).
        let sign = sign_of(&t.det_x_identity) * sigma_sign * sign_of(&prod);
        let term = prod.abs() / pow(&z[0], d) * evaluate(&ps, &z[0]);
        total = if sign > 0 { total + term } else { total - term };
    }
    Ok(total / int_to_rat(&factorial(d - 1)))
}

/// Checks `Σ_σ sign(σ) Π z / z_1^d · P_{d-1}(z_1) / (d-1)! = det X(id,d) / d!`
/// and that the right side also equals `Σ_σ sign(σ) Π z / d!`.
pub fn verify_signed_identity(s: &Polytope) -> Result<Report> {
    let hypotheses = require_simplex(s, true)?;
    let t = tableau(s)?;
    let d = t.d;
    let ps = power_sum_coefficients(d - 1);
    let mut signed = Rat::zero();
    let mut rewritten = Rat::zero();
    for (sign, z) in &t.terms {
        let prod = product(z);
        let term = &prod / pow(&z[0], d) * evaluate(&ps, &z[0]);
        let sign = Rat::from_integer((*sign).into());
        signed += &sign * term;
        rewritten += sign * prod;
    }
    let signed = signed / int_to_rat(&factorial(d - 1));
    let rewritten = rewritten / int_to_rat(&factorial(d));
    let rhs = &t.det_x_identity / int_to_rat(&factorial(d));
    let mut report = Report::new("signed power-sum sum equals det X / d!", hypotheses, signed, rhs.clone())
        .with_extra("permutation sum of products / d!", rewritten.clone());
    report.equal = report.equal && rewritten == rhs;
    report.into_checked()
}

/// A polynomial with rational coefficients in a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultivariatePolynomial {
    vars: usize,
    /// Exponent vectors with their coefficients.
    terms: Vec<(Vec<u32>, Rat)>,
}

impl MultivariatePolynomial {
    pub fn new(vars: usize, terms: Vec<(Vec<u32>, Rat)>) -> Result<Self> {
        if let Some((e, _)) = terms.iter().find(|(e, _)| e.len() != vars) {
            return Err(Error::PolynomialArity { expected: vars, found: e.len() });
        }
        Ok(MultivariatePolynomial { vars, terms })
    }

    pub fn constant(vars: usize, c: Rat) -> Self {
        MultivariatePolynomial { vars, terms: vec![(vec![0; vars], c)] }
    }

    pub fn monomial(exponents: Vec<u32>) -> Self {
        MultivariatePolynomial { vars: exponents.len(), terms: vec![(exponents, Rat::one())] }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn evaluate(&self, x: &[Rat]) -> Result<Rat> {
        if x.len() != self.vars {
            return Err(Error::PolynomialArity { expected: self.vars, found: x.len() });
        }
        Ok(self.terms.iter().fold(Rat::zero(), |acc, (e, c)| {
            acc + e.iter().zip(x).fold(c.clone(), |t, (&k, xi)| t * pow(xi, k as usize))
        }))
    }

    /// All monomials in `vars` variables of total degree at most `max_degree`.
    pub fn monomials_up_to(vars: usize, max_degree: u32) -> Vec<Self> {
        let mut out = Vec::new();
        let mut e = vec![0u32; vars];
        loop {
            if e.iter().sum::<u32>() <= max_degree {
                out.push(MultivariatePolynomial::monomial(e.clone()));
            }
            let Some(i) = (0..vars).rev().find(|&i| e[i] < max_degree) else { return out };
            e[i] += 1;
            for x in &mut e[i + 1..] {
                *x = 0;
            }
        }
    }
}

/// Checks `Σ_σ sign(σ) p(z_1..z_l) Π_{j>l} z_j / z_{l+1}^{m+1} = 0` for `l + m <= d - 2`.
pub fn verify_zero_lemma(s: &Polytope, l: usize, m: usize, p: &MultivariatePolynomial) -> Result<Report> {
    let d = s.dim();
    if l + m + 2 > d {
        return Err(Error::ZeroLemmaRange { l, m, d });
    }
    if p.vars() != l {
        return Err(Error::PolynomialArity { expected: l, found: p.vars() });
    }
    let hypotheses = require_simplex(s, false)?;
    let t = tableau(s)?;
    let mut sum = Rat::zero();
    for (sign, z) in &t.terms {
        let q = p.evaluate(&z[..l])?;
        let term = q * product(&z[l..]) / pow(&z[l], m + 1);
        sum += Rat::from_integer((*sign).into()) * term;
    }
    Report::new("signed zero sum", hypotheses, sum, Rat::zero())
        .with_extra("l", Rat::from_integer(l.into()))
        .with_extra("m", Rat::from_integer(m.into()))
        .into_checked()
}

/// [`verify_zero_lemma`] for every admissible `(l, m)` and every monomial of
/// degree at most `max_degree`.
pub fn zero_lemma_sweep(s: &Polytope, max_degree: u32) -> Result<Vec<Report>> {
    let d = s.dim();
    let mut reports = Vec::new();
    for l in 0..=d.saturating_sub(2) {
        for m in 0..=(d.saturating_sub(2) - l) {
            if l + m + 2 > d {
                continue;
            }
            for p in MultivariatePolynomial::monomials_up_to(l, max_degree) {
                reports.push(verify_zero_lemma(s, l, m, &p)?);
            }
        }
    }
    Ok(reports)
}
