use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("resultant vanishes identically: the polynomials share a common component")]
    IdenticallyZeroResultant,
    #[error("polynomial has positive degree requirement violated in {0}")]
    NotPositiveDegree(char),
    #[error("single-monomial polynomial has an empty tropical curve")]
    EmptyCurve,
    #[error("stable intersection depends on the displacement vector")]
    GenericityFailure,
    #[error("no generic displacement vector found")]
    NoGenericDisplacement,
    #[error("intersection cell {0} does not lie on the curve")]
    CellNotOnCurve(String),
    #[error("divisor point {0} lies outside the marked subcomplex")]
    SupportOutsideS(String),
    #[error("configuration enumeration requires an acyclic marked subcomplex")]
    CyclicSubcomplexUnsupported,
    #[error("configuration enumeration requires a bounded marked subcomplex")]
    UnboundedSubcomplexUnsupported,
    #[error("no pairing of coordinate valuations lands on the intersection complex")]
    NoAdmissiblePairing,
    #[error("invalid piecewise-linear function: {0}")]
    InvalidFunction(String),
    #[error("parse error at {line}:{col}: {msg}; expected one of {expected:?}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
        expected: Vec<String>,
    },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
