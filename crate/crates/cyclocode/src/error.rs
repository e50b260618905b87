//! Error type shared by every module of the crate.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A value that must be prime is not.
    NotPrime(u64),
    /// A requested parameter is outside the domain the toolkit accepts
    /// (e.g. a `q` that is not an odd prime power).
    InvalidParameter(String),
    /// Field table construction would exceed the element budget.
    TableBudgetExceeded { size: u128, budget: u128 },
    /// A modulus override factors over F_p.
    ReducibleModulus(String),
    /// A modulus override is irreducible but its root does not generate
    /// the multiplicative group.
    NonPrimitiveModulus(String),
    /// Multiplicative inverse of zero.
    DivisionByZero,
    /// A cyclotomic-class order that does not divide q^k - 1.
    OrderDoesNotDivide { m: u64, group_order: u64 },
    /// A closed form was requested outside its hypotheses.
    HypothesisViolated(String),
    /// Gaussian-period closed forms are only defined here for even tk.
    OddDegree { t: u32, k: u32 },
    /// Exhaustive enumeration would exceed the configured budget.
    EnumerationBudgetExceeded { pairs: u128, budget: u128 },
    /// A table was requested for a parameter set whose conditions report
    /// does not fully pass.
    ConditionsNotMet(String),
    /// The standing divisibility assumptions fail for (q, k).
    AssumptionViolated(String),
    /// A minimal-polynomial coefficient landed outside the base subfield;
    /// indicates an internal arithmetic bug, never a caller mistake.
    CoefficientOutsideSubfield { exponent: u64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{} is not prime", p),
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {}", msg),
            Error::TableBudgetExceeded { size, budget } => {
                write!(f, "field of {} elements exceeds table budget {}", size, budget)
            }
            Error::ReducibleModulus(poly) => write!(f, "modulus {} is reducible", poly),
            Error::NonPrimitiveModulus(poly) => {
                write!(f, "modulus {} is irreducible but not primitive", poly)
            }
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::OrderDoesNotDivide { m, group_order } => {
                write!(f, "class order {} does not divide {}", m, group_order)
            }
            Error::HypothesisViolated(msg) => write!(f, "hypothesis violated: {}", msg),
            Error::OddDegree { t, k } => {
                write!(f, "degree t*k = {}*{} is odd; quadratic-period closed form undefined", t, k)
            }
            Error::EnumerationBudgetExceeded { pairs, budget } => {
                write!(f, "enumeration of {} codewords exceeds budget {}", pairs, budget)
            }
            Error::ConditionsNotMet(msg) => write!(f, "conditions not met: {}", msg),
            Error::AssumptionViolated(msg) => write!(f, "standing assumption violated: {}", msg),
            Error::CoefficientOutsideSubfield { exponent } => write!(
                f,
                "internal error: minimal-polynomial coefficient gamma^{} lies outside the subfield",
                exponent
            ),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
