use thiserror::Error;

use crate::freealg::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator of {value} vanishes at the given parameters")]
    DenominatorVanishes { value: String },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("m = {0} is a root of unity; Lie membership is not decided in this regime")]
    RootOfUnityParam(String),
    #[error("not a Lie polynomial: complement part is {complement}")]
    NotLiePolynomial { complement: String },
    #[error("ambiguity {id} does not resolve: {lhs} != {rhs}")]
    NotResolvable {
        id: String,
        lhs: String,
        rhs: String,
    },
    #[error(transparent)]
    Parse(#[from] ParseError),
}
