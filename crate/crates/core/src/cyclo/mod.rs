//! Exact arithmetic in cyclotomic fields Q(ζ_N).

mod number;
mod parse;
pub(crate) mod phi;

use thiserror::Error;

pub use number::CyclotomicNumber;
pub use parse::{parse_cyclotomic, parse_expr, Expr};
pub use phi::{cyclotomic_polynomial, totient};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycloError {
    #[error("parse error at offset {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor {to} is not a multiple of {from}")]
    NotAMultiple { from: u32, to: u32 },
}
