//! Exact computations around quiver Grassmannians of generalized Kronecker
//! quivers `K(n)`: preprojective representations and their truncations,
//! lifts to the universal covering quiver, maximal Dyck paths with compatible
//! pairs, 2-quivers with strong successor closed subsets, Euler
//! characteristics, F-polynomials and counting polynomials, all
//! cross-checked against brute-force point counts over small finite fields.

pub mod cells;
pub mod covering;
pub mod dyck;
pub mod field;
pub mod kron;
pub mod matrix;
pub mod oracle;
pub mod quiver;
pub mod twoquiver;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("evaluation map is not injective")]
    NotInjective,
    #[error("subset is not strong successor closed")]
    NotSsc,
    #[error("search space budget exceeded ({0} > {1})")]
    BudgetExceeded(u128, u128),
    #[error("unsupported scale: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    Validation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
