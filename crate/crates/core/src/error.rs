use thiserror::Error;

use crate::Rational;

/// Errors raised by the algebra layer.
///
/// Violations found by relation checkers are reported as data, not through
/// this type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring parameters: {0}")]
    InvalidParams(String),
    #[error("operands live in different rings")]
    MismatchedParams,
    #[error("operands have different truncation orders ({0} vs {1})")]
    MismatchedTruncation(usize, usize),
    #[error("element is not a unit")]
    NonUnit,
    #[error("element is not divisible by pi^{0}")]
    NotDivisible(u32),
    #[error("residue class is zero")]
    ZeroResidue,
    #[error("exponent {0} is not a multiple of 1/{1}")]
    DenominatorMismatch(Rational, u32),
    #[error("exponent {0} is negative")]
    NegativeExponent(Rational),
    #[error("constant term is not a unit")]
    NonUnitConstantTerm,
    #[error("value vanishes at working precision")]
    ZeroAtPrecision,
    #[error("lambda = {lambda} does not fit in truncation order {truncation}")]
    InsufficientTruncation { lambda: usize, truncation: usize },
    #[error("point lies outside the domain of convergence")]
    OutsideDomain,
    #[error("interpolation nodes {0} and {1} coincide at working precision")]
    CoincidentNodes(usize, usize),
    #[error("precision exhausted")]
    PrecisionExhausted,
    #[error("incompatible values: difference has valuation {obstruction}, need at least {required}")]
    Incompatible {
        obstruction: Rational,
        required: Rational,
    },
    #[error("image of the conjugation letter is not diag(-1, 1)")]
    BadConjugationImage,
    #[error("matrix image of generator {0} is not invertible")]
    NotInvertible(usize),
    #[error("Xi vanishes at the centre on every searched pair")]
    ApparentlyReducible,
    #[error("reconstructed entry for generator {0} is not integral")]
    NonIntegralEntry(usize),
    #[error("module has positive free rank")]
    NotTorsion,
    #[error("torsion generator {0} vanishes only up to lost precision at this point")]
    PrecisionAmbiguous(usize),
    #[error("torsion generator {0} vanishes at working precision")]
    ZeroTorsionGenerator(usize),
    #[error("no admissible weight up to the bound")]
    EmptyWindow,
    #[error("parse error (line {line}): {msg}")]
    Parse { line: usize, msg: String },
    #[error("q-expansion is not normalized (a_1 = {0})")]
    NotNormalized(i64),
    #[error("level {level} is not coprime to p = {p}")]
    LevelNotCoprime { level: u64, p: u64 },
    #[error("coefficient a_{0} is missing")]
    MissingCoefficient(u64),
    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
