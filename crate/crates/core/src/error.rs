use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse {what} from {input:?}: bad token {token:?} ({reason})")]
    Parse {
        what: &'static str,
        input: String,
        token: String,
        reason: &'static str,
    },

    #[error("image {image} out of range for degree {degree}")]
    ImageOutOfRange { image: usize, degree: usize },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("transformation {index} does not preserve the partition")]
    NotInT { index: usize },

    #[error("transformation is not in Sigma(X,P)")]
    NotInSigma,

    #[error("transformation is not a unit of T(X,P)")]
    NotUnit,

    #[error("partition {partition} has |S(X,P)| <= 2; the general formula does not apply")]
    SpecialCase { partition: String },

    #[error("closure exceeded the cap of {cap} elements")]
    OverCap { cap: u64 },

    #[error("empty generator list")]
    EmptyGenerators,

    #[error("search failed: {0}")]
    SearchFailure(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
