use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("F{0}: field order must be a prime power")]
    NotPrimePower(u64),
    #[error("ring order {order} exceeds the cap {cap}")]
    OrderCap { order: usize, cap: usize },
    #[error("SL2 order {order} exceeds the group cap {cap}")]
    GroupCap { order: usize, cap: usize },
    #[error("a ring needs at least one local factor")]
    ZeroRing,
    #[error("{0} is not a unit")]
    NotUnit(String),
    #[error("{0} is a unit but u^2 != 1, so uI is not in SL2")]
    ScalarNotInSl2(String),
    #[error("determinant is {0}, expected 1")]
    DeterminantNotOne(String),
    #[error("the ideal is the whole ring")]
    IdealIsWholeRing,
    #[error("matrix {0} is not in the group")]
    NotInGroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("level ideal l(N) is zero")]
    LevelZero,
    #[error("ring {0} does not have many units")]
    ManyUnitsFailed(String),
    #[error("expected the ring {expected}, got {got}")]
    WrongRing { expected: String, got: String },
    #[error("{0} is not in the level ideal l(A)")]
    NotInLevelIdeal(String),
    #[error("the additive subgroup is not a radix")]
    NotRadix,
    #[error("k = {k} is below v = {v}: the abelianization has rank {v}, so no set of {k} elements normally generates")]
    RankObstruction { k: usize, v: usize },
    #[error("D = {0} is not square-free")]
    NotSquareFree(i64),
    #[error("D = {0} must be a square-free integer greater than 1")]
    DOutOfRange(i64),
    #[error("D = {0} < 0: imaginary quadratic rings have finitely many units, so the lower bounds do not apply")]
    NegativeDiscriminant(i64),
    #[error("k must be at least 1")]
    InvalidK,
    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),
}
