//! Error type shared by every module of the crate.
//!
//! Most variants are precondition failures: the requested computation is only
//! defined (or only terminates) under a hypothesis the input violates. They
//! carry enough detail to say which index or bound was at fault.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("diagonal entry at index {0} is not 2")]
    DiagonalNotTwo(usize),

    #[error("off-diagonal entry ({0},{1}) is positive")]
    PositiveOffDiagonal(usize, usize),

    #[error("entries ({0},{1}) and ({1},{0}) have mismatched zero pattern")]
    AsymmetricZero(usize, usize),

    #[error("matrix is not symmetrizable")]
    NotSymmetrizable,

    #[error("operation requires a symmetrizable matrix")]
    RequiresSymmetrizable,

    #[error("operation requires a finite-type matrix")]
    RequiresFiniteType,

    #[error("index {0} is out of range for rank {1}")]
    IndexOutOfRange(usize, usize),

    #[error("dominance raising exceeded {max_steps} steps: weight not in the Tits cone within the bound")]
    NotInTitsCone { max_steps: usize },

    #[error("pairing at index {0} is not integral")]
    NonIntegralPairing(usize),

    #[error("weight is not dominant at index {0}")]
    NotDominant(usize),

    #[error("weight has non-negative-integral pairing at index {0}, expected dominant integral")]
    NotDominantIntegral(usize),

    #[error("stabilizer generates an infinite group; bounded enumeration would not terminate")]
    InfiniteStabilizer,

    #[error(
        "integrability set contains index {0} where the pairing is not a non-negative integer"
    )]
    IntegrabilityTooLarge(usize),

    #[error("series have different basepoints or cutoffs")]
    BasepointMismatch,

    #[error("Freudenthal denominator vanished at offset {0:?}")]
    ZeroDenominator(Vec<i64>),

    #[error("membership is undecidable from a truncated hull presentation")]
    TruncationUncertain,

    #[error("cannot parse rational {0:?}, expected \"n\" or \"p/q\"")]
    BadRational(String),

    #[error("{0}")]
    BadInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
