use serde::{Deserialize, Serialize};

use crate::autgroup::{recognize_flow, AutomorphismWord, OneParameterFlow};
use crate::geometry::{ChartMap, CollarChart};

use super::{ExtensionError, HoleGluing};

/// Sub-holes on the real axis of a collar chart. Sub-hole `p` (1-based)
/// is the disc on the middle half of the `p`-th of `k` equal subintervals of
/// `[−1, 1]`, counted from the right, so the arc to the right of sub-hole `p`
/// carries `E_{p−1} ∘ … ∘ E_1 ∘ T0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubHoleLayout {
    pub k: usize,
}

impl SubHoleLayout {
    pub fn new(k: usize) -> Result<Self, ExtensionError> {
        if k == 0 {
            return Err(ExtensionError::FactorizationTooShort { found: 0, needed: 1 });
        }
        Ok(Self { k })
    }

    /// Center and radius of sub-hole `p` (1-based) in chart coordinates.
    pub fn sub_hole(&self, p: usize) -> (f64, f64) {
        let k = self.k as f64;
        (1.0 - (2 * p - 1) as f64 / k, 0.5 / k)
    }

    /// Diameter `[a_p, b_p]` of sub-hole `p`.
    pub fn diameter(&self, p: usize) -> (f64, f64) {
        let (c, r) = self.sub_hole(p);
        (c - r, c + r)
    }

    /// The real-axis points from left to right: `−2`, then each sub-hole's
    /// diameter endpoints, then `2`.
    pub fn points(&self) -> Vec<f64> {
        let mut pts = vec![-2.0];
        for p in (1..=self.k).rev() {
            let (a, b) = self.diameter(p);
            pts.push(a);
            pts.push(b);
        }
        pts.push(2.0);
        pts
    }
}

/// A sub-hole ready for Case 1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubHole {
    pub gluing: HoleGluing,
    pub flow: OneParameterFlow,
    pub chart: ChartMap,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RefinedHole {
    pub layout: SubHoleLayout,
    /// `arcs[p] = E_p ∘ … ∘ E_1 ∘ T0`, the transition on the arc between
    /// sub-holes `p` and `p + 1` (`arcs[0]` on the right of the first one).
    pub arcs: Vec<AutomorphismWord>,
    pub sub_holes: Vec<SubHole>,
}

/// Splits a hole with `k ≥ 2` factors into `k` sub-holes, each with a single
/// factor as monodromy.
pub fn refine_hole(g: &HoleGluing, chart: &CollarChart) -> Result<RefinedHole, ExtensionError> {
    let k = g.factorization.len();
    if k < 2 {
        return Err(ExtensionError::FactorizationTooShort { found: k, needed: 2 });
    }
    split_hole(g, chart.map)
}

pub(crate) fn split_hole(g: &HoleGluing, chart: ChartMap) -> Result<RefinedHole, ExtensionError> {
    let layout = SubHoleLayout::new(g.factorization.len())?;
    let mut arcs = vec![g.t0.clone()];
    let mut sub_holes = Vec::with_capacity(layout.k);
    for (i, e) in g.factorization.iter().enumerate() {
        let flow = recognize_flow(e)?;
        let mut next = arcs[i].clone();
        next.push(e.clone())?;
        let (c, r) = layout.sub_hole(i + 1);
        sub_holes.push(SubHole {
            gluing: HoleGluing {
                t0: arcs[i].clone(),
                t1: next.clone(),
                factorization: vec![e.clone()],
            },
            flow,
            chart: chart.nested(c, r),
        });
        arcs.push(next);
    }
    Ok(RefinedHole {
        layout,
        arcs,
        sub_holes,
    })
}
