use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("constant term is not a unit")]
    NonUnitConstantTerm,
    #[error("exponent {exponent} of '{var}' is below the Laurent floor {floor}")]
    FloorExceeded { var: String, exponent: i32, floor: i32 },
    #[error("negative exponent of '{var}' survived composition in monomial {monomial:?}")]
    NegativeExponentSurvived { var: String, monomial: Vec<i32> },
    #[error("series variable sets do not match: {0}")]
    VariableMismatch(String),
    #[error("invalid q: q^{m} = 1 with m < n = {n}")]
    InvalidQ { n: u32, m: u32 },
    #[error("invalid height profile: {0}")]
    InvalidProfile(String),
    #[error("composition {composition:?} does not partition depth {depth}")]
    BadComposition { composition: Vec<u32>, depth: usize },
    #[error("box filling contracts to a non-positive part")]
    InvalidContraction,
    #[error("coefficient is not rational: {0}")]
    IrrationalCoefficient(String),
    #[error("zero q-Pochhammer factor in a lower parameter at step {0}")]
    ZeroPochhammerDenominator(usize),
    #[error("unknown identity '{0}'")]
    UnknownIdentity(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
