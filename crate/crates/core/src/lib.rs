//! Exact algebra for rational functions over the Gaussian rationals:
//! polynomials, certified root isolation, critical-value analysis of pairs
//! `(F, G)` and non-decomposability certificates for `F(f) = G(g)`.

pub mod ball;
pub mod certificate;
pub mod critical;
pub mod error;
pub mod exact;
pub mod parser;
pub mod poly;
pub mod ratfun;
pub mod roots;
mod zi;

pub use ball::{ComplexBall, ZeroTest, DEFAULT_PRECISION, PRECISION_CAP};
pub use certificate::{evaluate_all, evaluate_theorem1, evaluate_theorem2, evaluate_theorem3, Certificate, Theorem};
pub use critical::{check_conditions, critical_numerator, critical_values, ConditionReport, Variant};
pub use error::{Error, Result};
pub use exact::GaussianRational;
pub use parser::{parse_ratfun, parse_str, ExprSource, ParseError};
pub use poly::Poly;
pub use ratfun::RatFun;
