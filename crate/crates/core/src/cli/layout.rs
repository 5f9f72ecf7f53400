use num_complex::Complex64;

use crate::extension::{BundleSpec, ExtendedBundle};
use crate::geometry::{ChartMap, Site};

/// A circle in the base plane, for plotting.
#[derive(Clone, Debug, PartialEq)]
pub struct LayoutRow {
    pub kind: &'static str,
    pub site: String,
    pub sub: usize,
    pub center_re: f64,
    pub center_im: f64,
    pub radius: f64,
}

impl LayoutRow {
    pub const HEADER: &'static str = "kind,site,sub,center_re,center_im,radius";

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.kind, self.site, self.sub, self.center_re, self.center_im, self.radius
        )
    }
}

/// Image of the chart circle with real diameter `[−s, s]`. Charts are real
/// on the real axis, so the image has diameter `[χ(−s), χ(s)]`; around ∞
/// this is the circle bounding the region, not the region itself.
fn circle(kind: &'static str, site: Site, sub: usize, map: &ChartMap, s: f64) -> LayoutRow {
    let a = map.to_base(Complex64::new(-s, 0.0));
    let b = map.to_base(Complex64::new(s, 0.0));
    let c = (a + b) / 2.0;
    LayoutRow {
        kind,
        site: site.to_string(),
        sub,
        center_re: c.re,
        center_im: c.im,
        radius: (a - b).norm() / 2.0,
    }
}

pub fn layout_rows(spec: &BundleSpec, ext: &ExtendedBundle) -> Vec<LayoutRow> {
    let mut rows = vec![LayoutRow {
        kind: "outer_boundary",
        site: Site::Outer.to_string(),
        sub: 0,
        center_re: 0.0,
        center_im: 0.0,
        radius: spec.domain.outer_radius,
    }];
    for site in spec.sites() {
        let map = match site {
            Site::Hole(j) => {
                let h = spec.domain.holes[j];
                ChartMap::affine(h.center, h.radius)
            }
            Site::Outer => ChartMap::outer(spec.domain.outer_radius),
        };
        if site != Site::Outer {
            rows.push(circle("hole", site, 0, &map, 1.0));
        }
        rows.push(circle("collar", site, 0, &map, 2.0));
        for f in ext.fillings.iter().filter(|f| f.site == site && f.sub > 0) {
            rows.push(circle("sub_hole", site, f.sub, &f.extension.chart, 1.0));
            rows.push(circle("sub_collar", site, f.sub, &f.extension.chart, 2.0));
        }
    }
    // A chart circle through w = 0 of the outer chart is a line in the base.
    rows.retain(|r| r.center_re.is_finite() && r.center_im.is_finite() && r.radius.is_finite());
    rows
}
