//! Cayley-type periodicity conditions.

pub mod conditions;
pub mod linalg;
pub mod quadext;
pub mod series;

pub use conditions::{
    cayley_coefficients, cayley_determinant, closed_form_condition, hankel_matrix, period_check,
    CayleyCurve, PeriodCheck,
};
pub use quadext::QuadExt;
pub use series::TruncatedSeries;
