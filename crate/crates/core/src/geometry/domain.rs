use serde::{Deserialize, Serialize};

use super::GeometryError;

/// A round hole `{|ζ − center| < radius}` with its center on the real axis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiskSpec {
    pub center: f64,
    pub radius: f64,
}

/// The base domain: the disc `{|ζ| < outer_radius}` minus the closed holes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DomainSpec {
    pub outer_radius: f64,
    pub holes: Vec<DiskSpec>,
}

impl DomainSpec {
    pub fn new(outer_radius: f64, holes: Vec<DiskSpec>) -> Result<Self, GeometryError> {
        validate_domain(Self {
            outer_radius,
            holes,
        })
    }

    pub fn num_holes(&self) -> usize {
        self.holes.len()
    }

    /// Index of the real-axis band containing `Re ζ`: 0 left of every hole,
    /// `N` right of every hole.
    pub fn band_of(&self, re: f64) -> usize {
        self.holes.iter().filter(|h| h.center < re).count()
    }
}

/// Checks that holes are inside the domain with disjoint closures, that every
/// collar `{|ζ − c| < 2r}` stays in the domain and misses the other collars,
/// and that the collars are compatible with the collar of ∞ (the annulus
/// `R/2 < |ζ| < R`). Holes are returned sorted by center.
///
/// Compatibility with the outer collar means: every closed hole lies in
/// `|ζ| ≤ R/2`, and a hole collar that reaches into the outer annulus meets it
/// only on the far side of the hole's center, so the real-axis bands stay
/// separated.
pub fn validate_domain(mut spec: DomainSpec) -> Result<DomainSpec, GeometryError> {
    let r_out = spec.outer_radius;
    if !(r_out.is_finite() && r_out > 0.0) {
        return Err(GeometryError::InvalidRadius(r_out));
    }
    for (j, h) in spec.holes.iter().enumerate() {
        if !(h.radius.is_finite() && h.radius > 0.0) {
            return Err(GeometryError::InvalidRadius(h.radius));
        }
        if !h.center.is_finite() || h.center.abs() + h.radius >= r_out {
            return Err(GeometryError::HoleOutsideDomain { hole: j });
        }
    }
    spec.holes
        .sort_by(|a, b| a.center.partial_cmp(&b.center).expect("finite centers"));
    for (j, h) in spec.holes.iter().enumerate() {
        if h.center.abs() + 2.0 * h.radius >= r_out {
            return Err(GeometryError::CollarOverlap(format!(
                "collar of hole {} leaves the domain",
                j + 1
            )));
        }
        if h.center.abs() + h.radius > 0.5 * r_out {
            return Err(GeometryError::CollarOverlap(format!(
                "hole {} meets the collar of infinity (|c| + r > R/2)",
                j + 1
            )));
        }
        let reaches_outer = h.center.abs() + 2.0 * h.radius > 0.5 * r_out;
        if reaches_outer && h.center * h.center + 4.0 * h.radius * h.radius >= 0.25 * r_out * r_out {
            return Err(GeometryError::CollarOverlap(format!(
                "collar of hole {} wraps into the collar of infinity",
                j + 1
            )));
        }
    }
    for (j, pair) in spec.holes.windows(2).enumerate() {
        let gap = pair[1].center - pair[0].center;
        if gap <= pair[0].radius + pair[1].radius {
            return Err(GeometryError::CollarOverlap(format!(
                "holes {} and {} intersect",
                j + 1,
                j + 2
            )));
        }
        if gap <= 2.0 * (pair[0].radius + pair[1].radius) {
            return Err(GeometryError::CollarOverlap(format!(
                "collars of holes {} and {} intersect",
                j + 1,
                j + 2
            )));
        }
    }
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(center: f64, radius: f64) -> DiskSpec {
        DiskSpec { center, radius }
    }

    #[test]
    fn two_holes_at_plus_minus_four() {
        let spec = DomainSpec::new(10.0, vec![d(4.0, 1.0), d(-4.0, 1.0)]).unwrap();
        assert_eq!(spec.holes[0].center, -4.0);
        assert_eq!(spec.band_of(0.0), 1);
        assert_eq!(spec.band_of(-9.0), 0);
        assert_eq!(spec.band_of(5.5), 2);
    }

    #[test]
    fn close_holes_overlap_collars() {
        assert!(matches!(
            DomainSpec::new(10.0, vec![d(-1.5, 1.0), d(1.5, 1.0)]),
            Err(GeometryError::CollarOverlap(_))
        ));
    }

    #[test]
    fn hole_outside() {
        assert_eq!(
            DomainSpec::new(2.0, vec![d(3.0, 0.5)]),
            Err(GeometryError::HoleOutsideDomain { hole: 0 })
        );
    }

    #[test]
    fn hole_reaching_outer_collar() {
        assert!(matches!(
            DomainSpec::new(10.0, vec![d(5.0, 1.0)]),
            Err(GeometryError::CollarOverlap(_))
        ));
    }

    #[test]
    fn bad_radius() {
        assert_eq!(
            DomainSpec::new(10.0, vec![d(0.0, 0.0)]),
            Err(GeometryError::InvalidRadius(0.0))
        );
        assert!(DomainSpec::new(-1.0, vec![]).is_err());
    }
}
