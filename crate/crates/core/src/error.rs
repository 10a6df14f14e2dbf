use alloc::boxed::Box;

use crate::integrality::LevelCertificate;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("rows are linearly dependent")]
    DependentRows,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("level {level} is out of range 0..={max}")]
    LevelOutOfRange { level: usize, max: usize },

    #[error("sublattice is not saturated")]
    NotSaturated,

    #[error("lattice of rank {rank} does not span the linear hull of a {dim}-dimensional polytope")]
    LatticeMismatch { rank: usize, dim: usize },

    #[error("polytope is empty")]
    EmptyPolytope,

    #[error("polytope has dimension {dim}, need at least {min}")]
    DimensionTooSmall { dim: usize, min: usize },

    #[error("polytope has a non-integral vertex")]
    NotIntegral,

    #[error("affine hull contains no lattice point")]
    NoLatticePoint,

    #[error("polytope is not {level}-{}: {certificate}", .condition.adjective())]
    Hypothesis {
        condition: crate::integrality::Condition,
        level: usize,
        certificate: Box<LevelCertificate>,
    },

    #[error("polytope is not a {0}-simplex")]
    NotSimplex(usize),

    #[error("simplex must be full-dimensional in fully general position")]
    NotFullyGeneral,

    #[error("dimension {0} exceeds the permutation cap of 7")]
    TooManyPermutations(usize),

    #[error("index constraint l + m <= d - 2 violated (l = {l}, m = {m}, d = {d})")]
    ZeroLemmaRange { l: usize, m: usize, d: usize },

    #[error("polynomial has {found} variables, expected {expected}")]
    PolynomialArity { expected: usize, found: usize },

    #[error("input vector is zero or empty")]
    ZeroVector,

    #[error("lattice-point enumeration needs {cells} cells, budget is {budget}")]
    BudgetExceeded { cells: u128, budget: u64 },

    #[error("dilation factor must be at least 1")]
    BadDilation,

    #[error("identity `{0}` fails although its hypotheses hold")]
    IdentityViolated(&'static str),
}
