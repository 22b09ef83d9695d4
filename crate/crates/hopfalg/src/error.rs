use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("input is not a universal 1-form: mu(T) = {residual} != 0")]
    NotUniversalForm { residual: String },

    #[error("element is not coinvariant (nonzero circle degree terms): {element}")]
    NotCoinvariant { element: String },

    #[error("element mixes charges; expected homogeneous circle degree {expected}")]
    MixedCharge { expected: i64 },

    #[error("1-form is not horizontal: residual {residual}")]
    NotHorizontal { residual: String },

    #[error("gauge parameter must lie in the coinvariant subalgebra: {element}")]
    BadGaugeParameter { element: String },

    #[error("normal-form completion exceeded degree bound {bound}; this signals an order or implementation bug")]
    DegreeBoundExceeded { bound: u32 },

    #[error("leading coefficient is not invertible: {coeff}")]
    NonUnitLeading { coeff: String },

    #[error("parse error at line {line}, column {col}: {message}; expected {expected}")]
    Parse { line: usize, col: usize, message: String, expected: String },

    #[error("type error at {location}: {message}")]
    Eval { location: String, message: String },

    #[error("unknown suite `{id}`; available: {available}")]
    UnknownSuite { id: String, available: String },
}

pub type Result<T> = std::result::Result<T, Error>;
