//! The base domain, collar charts around holes and ∞, and the Cousin data on
//! each collar.

mod chart;
mod cousin;
mod domain;

use thiserror::Error;

pub use chart::{
    collar_chart, region_contains, sample_region, BaseMap, ChartMap, CollarChart, RegionKind,
    Site,
};
pub use cousin::{cousin_solve, BranchAtom, BranchCut, BranchFunction, CousinData, CUT_EPS};
pub use domain::{validate_domain, DiskSpec, DomainSpec};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("radius must be positive and finite, got {0}")]
    InvalidRadius(f64),
    #[error("hole {} is not inside the outer disc", .hole + 1)]
    HoleOutsideDomain { hole: usize },
    #[error("collar overlap: {0}")]
    CollarOverlap(String),
    #[error("hole index {index} out of range")]
    IndexOutOfRange { index: usize },
    #[error("evaluation on a branch cut at w = {re}{im:+}i")]
    BranchCutCrossing { re: f64, im: f64 },
}
