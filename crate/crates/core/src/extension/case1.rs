use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::autgroup::{
    flow_at, invert_word, AutomorphismWord, OneParameterFlow, EQUALITY_TOL,
};
use crate::geometry::{ChartMap, CollarChart, CousinData};

use super::{ExtensionError, HoleGluing, ParamElement, ParamWord};

/// The two maps from the trivial bundle over a filled disc into the upper
/// and lower trivializations over the collar.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseOneExtension {
    /// Filling to upper piece, defined over `V+`.
    pub phi_plus: ParamWord,
    /// Filling to lower piece, defined over `V-`.
    pub phi_minus: ParamWord,
    pub chart: ChartMap,
    pub flow: OneParameterFlow,
    pub cousin: CousinData,
}

/// Fills a hole whose monodromy `T1 ∘ T0⁻¹` is the time-1 map of `flow`.
///
/// The upper trivialization receives `z ↦ T0⁻¹ S^{L+}(z)` and the lower one
/// `z ↦ S^{−L-}(z)`, so that `Φ-⁻¹ T0 Φ+ = S^{L+ + L-}` is the identity on
/// omega and `Φ-⁻¹ T1 Φ+ = S^{L+ + L- + 1}` the identity on omega'.
pub fn extend_case1(
    g: &HoleGluing,
    flow: &OneParameterFlow,
    chart: &CollarChart,
    cousin: &CousinData,
) -> Result<CaseOneExtension, ExtensionError> {
    let time_one = AutomorphismWord::single(flow_at(flow, Complex64::new(1.0, 0.0)));
    let residual = time_one.max_residual_against(&g.monodromy()?);
    if !(residual < EQUALITY_TOL) {
        return Err(ExtensionError::NotTimeOneMap { residual });
    }
    build_case1(g, flow, chart.map, cousin)
}

/// [`extend_case1`] without the time-1 check.
pub(crate) fn build_case1(
    g: &HoleGluing,
    flow: &OneParameterFlow,
    chart: ChartMap,
    cousin: &CousinData,
) -> Result<CaseOneExtension, ExtensionError> {
    let n = g.dimension();
    let plus = ParamWord {
        dimension: n,
        elements: vec![ParamElement::Flow {
            flow: flow.clone(),
            chart,
            exponent: cousin.lplus.clone(),
        }],
    }
    .then(ParamWord::constant(&invert_word(&g.t0)?));
    let minus = ParamWord {
        dimension: n,
        elements: vec![ParamElement::Flow {
            flow: flow.clone(),
            chart,
            exponent: cousin.lminus.scale(Complex64::new(-1.0, 0.0)),
        }],
    };
    Ok(CaseOneExtension {
        phi_plus: plus,
        phi_minus: minus,
        chart,
        flow: flow.clone(),
        cousin: cousin.clone(),
    })
}
