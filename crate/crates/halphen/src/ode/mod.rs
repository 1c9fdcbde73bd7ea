//! Linear differential operators with polynomial coefficients: Lamé and Heun normal
//! forms, Riemann schemes, Möbius changes of variable and gauge transformations.

mod equations;
mod matching;
mod moebius;
mod operator;
mod scheme;

pub use equations::{root_sum, HeunEquation, LameEquation};
pub use matching::{for_each_candidate, match_operators, MatchWitness};
pub use moebius::{cross_ratio_orbit, moebius_transform, normalize_heun, normalize_heun_with_hints, MoebiusMap};
pub use operator::{binomial, DiffOperator};
pub use scheme::{
    at_infinity, fuchs_defect, fuchs_holds, indicial_at, indicial_at_infinity, riemann_scheme, riemann_scheme_split, roots_with_multiplicity,
    singular_factors, Point, RiemannScheme, SchemeEntry, SingularPoint,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OdeError {
    #[error("degenerate operator: order must be at least 1 with a nonzero leading coefficient")]
    Degenerate,
    #[error("irregular singular point at {0}")]
    Irregular(String),
    #[error("expected an operator of order {expected}, got {got}")]
    Order { expected: usize, got: usize },
    #[error("expected 4 singular points, found {0}")]
    PointCount(usize),
    #[error("not a {0} operator: {1}")]
    NotNormalForm(&'static str, String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}
