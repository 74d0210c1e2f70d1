use thiserror::Error;

/// Errors raised across the crate.
///
/// Several variants (`NotMember`, `NotInSpan`, `NotAPthPower`) are meaningful
/// negative answers rather than failures; callers that produce reports turn
/// them into witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element {0} is not a unit")]
    NonUnit(String),
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("ring {0} admits no Tits endomorphism")]
    NoTitsEndo(String),
    #[error("{elem} is not a {p}-th power")]
    NotAPthPower { elem: String, p: u32 },
    #[error("modulus {0} is not irreducible")]
    Reducible(String),
    #[error("{0} is not a supported prime characteristic")]
    NotPrime(u32),
    #[error("field of order {0} is too large for table arithmetic")]
    FieldTooLarge(u64),
    #[error("inexact division of {0} by {1}")]
    InexactDivision(String, String),
    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("ring {0} is not a field")]
    NotAField(String),
    #[error("target is not in the span of the basis")]
    NotInSpan,
    #[error("operation requires characteristic {expected}, ring has {found}")]
    WrongCharacteristic { expected: u32, found: u32 },

    #[error("not a member: entry ({row},{col}) is {lhs} on the twisted side but {rhs} on the image side")]
    NotMember { row: usize, col: usize, lhs: String, rhs: String },
    #[error("matrix does not preserve the defining forms: {0}")]
    FormsNotPreserved(String),
    #[error("conjugate leaves the Lie algebra span")]
    NotInLieAlgebra,
    #[error("matrix does not preserve the quadratic form: {0}")]
    NotOrthogonal(String),
    #[error("matrix does not preserve the symplectic form: {0}")]
    NotSymplectic(String),
    #[error("conjugate of {0} escapes the Clifford span")]
    NotInSCliff(String),
    #[error("parameter {param} is not in the {slot} subring")]
    ParamNotInSubring { param: String, slot: String },
    #[error("element is not in the expected subgroup: {0}")]
    NotInSubgroup(String),

    #[error("enumeration exceeded limit {limit} ({found} elements found)")]
    LimitExceeded { limit: usize, found: usize },
    #[error("element is not in the group table")]
    ElementNotInGroup,
    #[error("ring {0} is infinite; group tables need a finite field")]
    InfiniteRing(String),
    #[error("table cache: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
