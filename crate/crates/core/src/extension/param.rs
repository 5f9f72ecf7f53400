use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::autgroup::{
    flow_at, AutomorphismWord, ElementaryAutomorphism, OneParameterFlow,
};
use crate::geometry::{BranchFunction, ChartMap};

use super::ExtensionError;

/// One factor of a [`ParamWord`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ParamElement {
    Constant {
        map: ElementaryAutomorphism,
    },
    /// `S^{t(w)}` with `w` the coordinate of `chart` at the base point.
    Flow {
        flow: OneParameterFlow,
        chart: ChartMap,
        exponent: BranchFunction,
    },
}

/// A word whose factors may depend holomorphically on the base point.
/// Application order as for [`AutomorphismWord`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamWord {
    pub dimension: usize,
    pub elements: Vec<ParamElement>,
}

impl ParamWord {
    pub fn identity(dimension: usize) -> Self {
        Self {
            dimension,
            elements: Vec::new(),
        }
    }

    pub fn constant(w: &AutomorphismWord) -> Self {
        Self {
            dimension: w.dimension(),
            elements: w
                .factors()
                .iter()
                .map(|e| ParamElement::Constant { map: e.clone() })
                .collect(),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.elements
            .iter()
            .all(|e| matches!(e, ParamElement::Constant { .. }))
    }

    /// `self` first, then `other`.
    pub fn then(mut self, other: ParamWord) -> Self {
        self.elements.extend(other.elements);
        self
    }

    fn time(flow_elem: (&ChartMap, &BranchFunction), zeta: Option<Complex64>) -> Result<Complex64, ExtensionError> {
        let zeta = zeta.ok_or(ExtensionError::NeedsBasePoint)?;
        let (chart, exponent) = flow_elem;
        Ok(exponent.eval(chart.to_local(zeta))?)
    }

    /// The fiber automorphism over `zeta`. Constant words accept `None`.
    pub fn eval_at(&self, zeta: Option<Complex64>) -> Result<AutomorphismWord, ExtensionError> {
        let mut out = AutomorphismWord::identity(self.dimension);
        for e in &self.elements {
            let f = match e {
                ParamElement::Constant { map } => map.clone(),
                ParamElement::Flow {
                    flow,
                    chart,
                    exponent,
                } => flow_at(flow, Self::time((chart, exponent), zeta)?),
            };
            out.push(f)?;
        }
        Ok(out)
    }

    pub fn apply(&self, zeta: Option<Complex64>, z: &[Complex64]) -> Result<Vec<Complex64>, ExtensionError> {
        let mut cur = z.to_vec();
        for e in &self.elements {
            match e {
                ParamElement::Constant { map } => map.apply_in_place(&mut cur),
                ParamElement::Flow {
                    flow,
                    chart,
                    exponent,
                } => cur = flow.apply(Self::time((chart, exponent), zeta)?, &cur),
            }
        }
        Ok(cur)
    }

    pub fn apply_inverse(
        &self,
        zeta: Option<Complex64>,
        z: &[Complex64],
    ) -> Result<Vec<Complex64>, ExtensionError> {
        let mut cur = z.to_vec();
        for e in self.elements.iter().rev() {
            match e {
                ParamElement::Constant { map } => map.inverse()?.apply_in_place(&mut cur),
                ParamElement::Flow {
                    flow,
                    chart,
                    exponent,
                } => cur = flow.apply(-Self::time((chart, exponent), zeta)?, &cur),
            }
        }
        Ok(cur)
    }

    /// Every constant elementary and every flow, for degree scans.
    pub fn degrees(&self) -> impl Iterator<Item = Option<u32>> + '_ {
        self.elements.iter().map(|e| match e {
            ParamElement::Constant { map } => map.degree(),
            ParamElement::Flow { flow, .. } => flow.degree(),
        })
    }

    pub fn flows(&self) -> impl Iterator<Item = &OneParameterFlow> {
        self.elements.iter().filter_map(|e| match e {
            ParamElement::Flow { flow, .. } => Some(flow),
            ParamElement::Constant { .. } => None,
        })
    }
}
