//! Bundles over the holed disc in gap-word form, their extension over every
//! hole and over ∞, and the sampled check of the resulting cocycle.
//!
//! Conventions: hole `j` (0-based) sits between bands `j` and `j + 1`; in its
//! collar chart the right overlap component (omega) lies on band `j + 1`
//! and carries `T0`, the left one (omega') lies on band `j` and carries
//! `T1`. The monodromy is `T1 ∘ T0⁻¹`. Around ∞ the chart is `w = −R/ζ`, so
//! omega lies on band 0 and omega' on band `N`.

mod assemble;
mod builtin;
mod case1;
mod gluing;
mod param;
mod refine;
mod verify;

use thiserror::Error;

use crate::autgroup::AlgebraError;
use crate::geometry::GeometryError;

pub use assemble::{
    extend_bundle, ChartId, DegreeScan, ExtendedBundle, FillingMethod, FillingRecord,
    IdentityCheck, PathStep, Provenance, SampleDomain, SiteSummary, Transition,
};
pub use builtin::{
    builtin_example, demailly_spec, skoda_linear, skoda_over_shear, skoda_spec, BUILTIN_NAMES,
};
pub use case1::{extend_case1, CaseOneExtension};
pub use gluing::{BundleSpec, HoleGluing};
pub use param::{ParamElement, ParamWord};
pub use refine::{refine_hole, RefinedHole, SubHole, SubHoleLayout};
pub use verify::{
    check_restriction, verify_cocycle, IdentityRecord, VerificationReport, DEFAULT_SAMPLES,
    DEFAULT_SEED, DEFAULT_TOL, EXPONENT_TOL, FIBER_RADIUS, OUTER_CONVENTION, OUT_OF_SCOPE,
    REGION_MARGIN,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExtensionError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("invalid bundle spec: {0}")]
    InvalidSpec(String),
    #[error("factorization does not reproduce the monodromy (residual {residual:e})")]
    FactorizationMismatch { residual: f64 },
    #[error("flow is not a time-1 map for the monodromy (residual {residual:e})")]
    NotTimeOneMap { residual: f64 },
    #[error("factorization has {found} factors, need at least {needed}")]
    FactorizationTooShort { found: usize, needed: usize },
    #[error("base-dependent word evaluated without a base point")]
    NeedsBasePoint,
    #[error("unknown example {0:?}")]
    UnknownExample(String),
    #[error("{0}")]
    InvalidExampleParameter(String),
}
