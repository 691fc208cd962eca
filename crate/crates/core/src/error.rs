use thiserror::Error;

use crate::poly::Var;
use crate::scalar::Field;

/// Errors from the coefficient fields, polynomial arithmetic and the expression parser.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u64),
    #[error("unknown field `{0}` (expected `Q` or `Fp:<p>`)")]
    BadField(String),
    #[error("coefficient {0} is not an element of {1}")]
    CoefficientNotInField(String, Field),
    #[error("division by zero")]
    DivisionByZero,
    #[error("mixed coefficient fields {0} and {1}")]
    FieldMismatch(Field, Field),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("polynomial is not divisible by {var}^{power}")]
    NotDivisible { var: Var, power: i32 },
    #[error("coefficient {0} too large for the rational-root search")]
    RootSearchLimit(String),
    #[error("negative exponent of {0} in an ordinary polynomial")]
    NegativeExponent(Var),
}

/// Errors raised while building or manipulating surface data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("d and e must be positive (got d={d}, e={e})")]
    BadExponents { d: i64, e: i64 },
    #[error("P must be monic in Z: {0}")]
    PNotMonic(String),
    #[error("Q must be monic in Y: {0}")]
    QNotMonic(String),
    #[error("P must have positive degree in Z")]
    PConstant,
    #[error("Q must have positive degree in Y")]
    QConstant,
    #[error("P may only involve X and Z")]
    PVariables,
    #[error("Q may only involve X, Y and Z")]
    QVariables,
    #[error("operands belong to different surfaces")]
    SpecMismatch,
    #[error("element is not divisible by x: residue {residue} mod x is nonzero")]
    NotDivisible { residue: String },
    #[error("the zero element has no filtration degree")]
    ZeroElement,
    #[error("exponential map check failed: {0}")]
    AxiomFailure(String),
    #[error("malformed map: {0}")]
    BadMap(String),
    #[error("{relation} is not killed: residue {residue}")]
    RelationNotKilled { relation: String, residue: String },
    #[error("invariant tuples differ: {source_tuple:?} vs {target_tuple:?}")]
    TupleMismatch {
        source_tuple: (u32, u32, u32, u32),
        target_tuple: (u32, u32, u32, u32),
    },
    #[error("seed does not extend to an endomorphism: {0}")]
    SeedNotExtendable(String),
    #[error("surface {0} does not satisfy the mlc conditions")]
    NotMlc(String),
    #[error("characteristic {p} divides r = {r}")]
    CharacteristicDividesR { p: u64, r: u32 },
    #[error("invalid isomorphism data: {0}")]
    BadIsoData(String),
    #[error("invalid Danielewski data: {0}")]
    BadDanielewski(String),
    #[error("fiber ideal is not the unit ideal: {0}")]
    NotUnit(String),
    #[error("stable cancellation needs e >= 2 (got e={0})")]
    ExponentTooSmall(u32),
    #[error("Laurent expression is not the image of a surface element (stuck at x^{x_exp} z^{z_exp})")]
    NotInImage { x_exp: i32, z_exp: i32 },
}
