use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("Betti vector must be nonempty with b_0 = 1")]
    InvalidBetti,
    #[error("base profile must have even real dimension, got {0}")]
    OddBaseDimension(usize),
    #[error("base profile fails the hard-Lefschetz admissibility check")]
    LefschetzViolated,
    #[error("inconsistent Betti data: {0}")]
    Inconsistent(String),
    #[error("negative rank in degree {0}")]
    NegativeRank(usize),
    #[error("torsion orders must be at least 2, got {0}")]
    InvalidTorsion(String),
    #[error("integral Künneth product needs a torsion-free factor")]
    BothFactorsHaveTorsion,
    #[error("rank {0} is too large to materialize")]
    RankTooLarge(String),

    #[error("del Pezzo bundle S_k needs 3 <= k <= 8, got k = {0} (no regular Sasakian-Einstein structure for k = 2 or k >= 9)")]
    OutsideDelPezzoRange(u64),
    #[error("Fermat hypersurface of degree {d} in P^{np1} is not Fano", np1 = .n + 1)]
    NotFano { d: u64, n: u64 },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("weights {0:?} are not pairwise coprime")]
    NotPairwiseCoprime([u64; 3]),

    #[error("catalog parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invariant violation in `{space}`: {rule}: {detail}")]
    InvariantViolation {
        space: String,
        rule: String,
        detail: String,
    },
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("io error: {0}")]
    Io(String),

    #[error("`{0}` is not simply connected; joins are defined on simply connected spaces")]
    NotSimplyConnected(String),
    #[error("join needs at least one factor")]
    EmptyJoin,
    #[error("integral model {rule} disagrees with the rational engine in degree {degree}")]
    ModelRationalMismatch { rule: String, degree: usize },
    #[error("n-fold join depends on fold order (field {0})")]
    FoldOrderMismatch(String),

    #[error("lattice points need (l, k) != (0, 0)")]
    BothZero,
    #[error("lattice points belong to different factor pairs")]
    MismatchedFactors,
    #[error("order of `{0}` is not known")]
    IndeterminateOrder(String),

    #[error("`{space}` has the wrong shape: {expected}")]
    WrongShape { space: String, expected: String },
}

pub type Result<T> = std::result::Result<T, Error>;
