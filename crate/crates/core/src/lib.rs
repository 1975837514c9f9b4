pub mod error;
pub mod im;
pub mod models;
pub mod regions;
pub mod roots;
pub mod simulation;
pub mod special;

pub use error::{Error, Result};
pub use im::{
    default_prs_contour, default_prs_miss, elastic_mnm_plausibility, Monotonicity, RandomSetKind,
    ScalarPivotIm,
};
pub use models::{Curve, ModelId, ModelInstance};
pub use regions::{extract_region, Piece, PlausibilityCurve, Region, SearchConfig, Shape, Support};
pub use special::AccuracyPolicy;
