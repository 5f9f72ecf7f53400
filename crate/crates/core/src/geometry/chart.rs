use std::fmt;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{DomainSpec, GeometryError};

/// First step of a chart: the base coordinate itself, or `−R/ζ` (which sends
/// ∞ to 0 and keeps the sign of `Im`).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BaseMap {
    Identity,
    NegInverse { radius: f64 },
}

impl BaseMap {
    fn forward(&self, zeta: Complex64) -> Complex64 {
        match self {
            Self::Identity => zeta,
            Self::NegInverse { radius } => -Complex64::new(*radius, 0.0) / zeta,
        }
    }

    // `−R/·` is an involution.
    fn backward(&self, v: Complex64) -> Complex64 {
        self.forward(v)
    }
}

/// Chart coordinate `w = (f(ζ) − center) / scale`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChartMap {
    pub base: BaseMap,
    pub center: [f64; 2],
    pub scale: f64,
}

impl ChartMap {
    pub fn affine(center: f64, scale: f64) -> Self {
        Self {
            base: BaseMap::Identity,
            center: [center, 0.0],
            scale,
        }
    }

    pub fn outer(radius: f64) -> Self {
        Self {
            base: BaseMap::NegInverse { radius },
            center: [0.0, 0.0],
            scale: 1.0,
        }
    }

    fn center_c(&self) -> Complex64 {
        Complex64::new(self.center[0], self.center[1])
    }

    /// Base point to chart coordinate.
    pub fn to_local(&self, zeta: Complex64) -> Complex64 {
        (self.base.forward(zeta) - self.center_c()) / self.scale
    }

    /// Chart coordinate to base point (infinite when the chart point is ∞).
    pub fn to_base(&self, w: Complex64) -> Complex64 {
        self.base.backward(self.center_c() + w * self.scale)
    }

    /// The chart of the disc `{|w − center| < radius}` (center on the real
    /// axis of this chart), rescaled to the unit disc.
    pub fn nested(&self, center: f64, radius: f64) -> Self {
        Self {
            base: self.base,
            center: [
                self.center[0] + self.scale * center,
                self.center[1],
            ],
            scale: self.scale * radius,
        }
    }
}

/// Where a collar sits: around hole `j` (0-based) or around ∞.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", content = "index", rename_all = "snake_case")]
pub enum Site {
    Hole(usize),
    Outer,
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Hole(j) => write!(f, "hole {}", j + 1),
            Self::Outer => write!(f, "outer"),
        }
    }
}

/// Pieces of the chart annulus `1 < |w| < 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionKind {
    /// `Im w > −1/2`.
    Vplus,
    /// `Im w < 1/2`.
    Vminus,
    /// Right component of the overlap: `|Im w| < 1/2`, `Re w > 0`.
    Omega,
    /// Left component of the overlap: `|Im w| < 1/2`, `Re w < 0`.
    OmegaPrime,
}

impl fmt::Display for RegionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Vplus => "V+",
            Self::Vminus => "V-",
            Self::Omega => "omega",
            Self::OmegaPrime => "omega'",
        })
    }
}

/// Membership test in chart coordinates, shrunk by `margin` away from every
/// boundary.
pub fn region_contains(kind: RegionKind, w: Complex64, margin: f64) -> bool {
    let r = w.norm();
    if !(r > 1.0 + margin && r < 2.0 - margin) {
        return false;
    }
    let plus = w.im > -0.5 + margin;
    let minus = w.im < 0.5 - margin;
    match kind {
        RegionKind::Vplus => plus,
        RegionKind::Vminus => minus,
        RegionKind::Omega => plus && minus && w.re > margin,
        RegionKind::OmegaPrime => plus && minus && w.re < -margin,
    }
}

/// Rejection sample from a region of the chart annulus.
pub fn sample_region<R: Rng + ?Sized>(rng: &mut R, kind: RegionKind, margin: f64) -> Complex64 {
    let (re_lo, re_hi, im_lo, im_hi) = match kind {
        RegionKind::Vplus => (-2.0, 2.0, -0.5, 2.0),
        RegionKind::Vminus => (-2.0, 2.0, -2.0, 0.5),
        RegionKind::Omega => (0.0, 2.0, -0.5, 0.5),
        RegionKind::OmegaPrime => (-2.0, 0.0, -0.5, 0.5),
    };
    loop {
        let w = Complex64::new(
            rng.random_range(re_lo..re_hi),
            rng.random_range(im_lo..im_hi),
        );
        if region_contains(kind, w, margin) {
            return w;
        }
    }
}

/// Coordinate chart on a neighbourhood of a hole (or of ∞): the hole is the
/// image of the unit disc, the collar the image of `1 < |w| < 2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CollarChart {
    pub site: Site,
    pub map: ChartMap,
}

impl CollarChart {
    pub fn to_local(&self, zeta: Complex64) -> Complex64 {
        self.map.to_local(zeta)
    }

    pub fn to_base(&self, w: Complex64) -> Complex64 {
        self.map.to_base(w)
    }

    pub fn in_vplus(&self, w: Complex64) -> bool {
        region_contains(RegionKind::Vplus, w, 0.0)
    }

    pub fn in_vminus(&self, w: Complex64) -> bool {
        region_contains(RegionKind::Vminus, w, 0.0)
    }

    pub fn in_omega(&self, w: Complex64) -> bool {
        region_contains(RegionKind::Omega, w, 0.0)
    }

    pub fn in_omega_prime(&self, w: Complex64) -> bool {
        region_contains(RegionKind::OmegaPrime, w, 0.0)
    }
}

/// `ζ = c_j + r_j w` for hole `j`, `ζ = −R/w` for the outer site.
pub fn collar_chart(spec: &DomainSpec, which: Site) -> Result<CollarChart, GeometryError> {
    let map = match which {
        Site::Hole(j) => {
            let h = spec
                .holes
                .get(j)
                .ok_or(GeometryError::IndexOutOfRange { index: j })?;
            ChartMap::affine(h.center, h.radius)
        }
        Site::Outer => ChartMap::outer(spec.outer_radius),
    };
    Ok(CollarChart { site: which, map })
}
