use thiserror::Error;

/// Errors raised by the arithmetic kernels and the lattice machinery.
///
/// Variants fall in three groups: invalid caller input, missing Conway data,
/// and broken internal invariants. The last group should never surface from
/// correct inputs; seeing one means a bug or corrupted data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime in the supported range [2, 2^31)")]
    NotPrime(u64),
    #[error("operands live over different moduli ({0} vs {1})")]
    ModulusMismatch(u64, u64),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("operands belong to different Kummer algebras")]
    AlgebraMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    ZeroGcd,
    #[error("negative exponent")]
    NegativeExponent,
    #[error("modulus must have degree at least 1")]
    ConstantModulus,
    #[error("{0} does not divide {1} exactly")]
    InexactDivision(String, String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("polynomial is not irreducible")]
    Reducible,
    #[error("element is zero")]
    ZeroElement,
    #[error("base is not a primitive element")]
    NotPrimitive,
    #[error("element has no {0}-th root")]
    NoRoot(u64),
    #[error("degree {ell} is divisible by the characteristic {p}")]
    DegreeDivisibleByP { ell: u64, p: u64 },
    #[error("{0} does not divide {1}")]
    NotDivisible(u64, u64),
    #[error("no Conway polynomial of degree {degree} for p = {p} within the work bound")]
    ConwayUnavailable { p: u64, degree: u32 },
    #[error("element is not in the image of the embedding")]
    NotInImage,
    #[error("degree {0} is not registered")]
    Unregistered(u64),
    #[error("degree {0} is already registered with a different defining polynomial")]
    AlreadyRegistered(u64),
    #[error("integer out of supported range: {0}")]
    OutOfRange(String),
    #[error("resource bound exceeded: {0}")]
    ResourceBound(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
