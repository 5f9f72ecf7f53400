//! Branch logarithms on the collar and the explicit solution of the additive
//! Cousin problem on `V+ ∪ V-`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{CollarChart, GeometryError};

/// Points closer than this to a cut ray count as on the cut.
pub const CUT_EPS: f64 = 1e-12;

/// Branch of `arg`: the downward cut takes values in `(−π/2, 3π/2)`, the
/// upward cut in `(−3π/2, π/2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchCut {
    DownwardRay,
    UpwardRay,
}

impl BranchCut {
    fn on_cut(self, w: Complex64) -> bool {
        if w.norm() == 0.0 {
            return true;
        }
        let on_axis = w.re.abs() < CUT_EPS;
        match self {
            Self::DownwardRay => on_axis && w.im < 0.0,
            Self::UpwardRay => on_axis && w.im > 0.0,
        }
    }

    pub fn arg(self, w: Complex64) -> Result<f64, GeometryError> {
        if self.on_cut(w) {
            return Err(GeometryError::BranchCutCrossing {
                re: w.re,
                im: w.im,
            });
        }
        let a = w.arg();
        Ok(match self {
            Self::DownwardRay if a <= -PI / 2.0 => a + 2.0 * PI,
            Self::UpwardRay if a >= PI / 2.0 => a - 2.0 * PI,
            _ => a,
        })
    }

    pub fn log(self, w: Complex64) -> Result<Complex64, GeometryError> {
        Ok(Complex64::new(w.norm().ln(), self.arg(w)?))
    }
}

/// Building blocks of a [`BranchFunction`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "cut", rename_all = "snake_case")]
pub enum BranchAtom {
    Identity,
    Log(BranchCut),
}

/// `constant + Σ coeff·atom(w)`, a holomorphic function of the chart
/// coordinate away from its cuts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchFunction {
    pub constant: [f64; 2],
    pub terms: Vec<([f64; 2], BranchAtom)>,
}

impl BranchFunction {
    pub fn constant(c: Complex64) -> Self {
        Self {
            constant: [c.re, c.im],
            terms: Vec::new(),
        }
    }

    pub fn log(coeff: Complex64, cut: BranchCut) -> Self {
        Self {
            constant: [0.0, 0.0],
            terms: vec![([coeff.re, coeff.im], BranchAtom::Log(cut))],
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mul = |p: [f64; 2]| {
            let c = Complex64::new(p[0], p[1]) * s;
            [c.re, c.im]
        };
        Self {
            constant: mul(self.constant),
            terms: self.terms.iter().map(|(c, a)| (mul(*c), *a)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let c = Complex64::new(self.constant[0], self.constant[1])
            + Complex64::new(other.constant[0], other.constant[1]);
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self {
            constant: [c.re, c.im],
            terms,
        }
    }

    pub fn eval(&self, w: Complex64) -> Result<Complex64, GeometryError> {
        let mut acc = Complex64::new(self.constant[0], self.constant[1]);
        for (c, atom) in &self.terms {
            let v = match atom {
                BranchAtom::Identity => w,
                BranchAtom::Log(cut) => cut.log(w)?,
            };
            acc += Complex64::new(c[0], c[1]) * v;
        }
        Ok(acc)
    }
}

/// `L+` on `V+` and `L-` on `V-` with `L+ + L- = 0` on omega and `−1` on
/// omega'.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CousinData {
    pub lplus: BranchFunction,
    pub lminus: BranchFunction,
}

/// `L+(w) = −log₊(w)/(2πi)` (downward cut) and `L-(w) = log₋(w)/(2πi)`
/// (upward cut). The two arguments agree for `Re w > 0` and differ by `2π` for
/// `Re w < 0`, which gives the required jumps.
///
/// The solution is expressed in chart coordinates, so it is the same for
/// every chart.
pub fn cousin_solve(_chart: &CollarChart) -> CousinData {
    let inv_two_pi_i = Complex64::new(0.0, -1.0 / (2.0 * PI));
    CousinData {
        lplus: BranchFunction::log(-inv_two_pi_i, BranchCut::DownwardRay),
        lminus: BranchFunction::log(inv_two_pi_i, BranchCut::UpwardRay),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{ChartMap, Site};

    fn chart() -> CollarChart {
        CollarChart {
            site: Site::Hole(0),
            map: ChartMap::affine(0.0, 1.0),
        }
    }

    #[test]
    fn argument_ranges() {
        let down = BranchCut::DownwardRay;
        let up = BranchCut::UpwardRay;
        let left = Complex64::new(-1.0, 0.0);
        assert!((down.arg(left).unwrap() - PI).abs() < 1e-15);
        assert!((up.arg(left).unwrap() + PI).abs() < 1e-15);
        let low_left = Complex64::new(-1.0, -0.1);
        assert!(down.arg(low_left).unwrap() > PI);
        let high_left = Complex64::new(-1.0, 0.1);
        assert!(up.arg(high_left).unwrap() < -PI);
    }

    #[test]
    fn cut_points_error() {
        assert!(matches!(
            BranchCut::DownwardRay.arg(Complex64::new(0.0, -1.5)),
            Err(GeometryError::BranchCutCrossing { .. })
        ));
        assert!(BranchCut::DownwardRay.arg(Complex64::new(0.0, 1.5)).is_ok());
        assert!(matches!(
            BranchCut::UpwardRay.arg(Complex64::new(0.0, 1.5)),
            Err(GeometryError::BranchCutCrossing { .. })
        ));
    }

    #[test]
    fn jumps_at_sample_points() {
        let data = cousin_solve(&chart());
        let right = Complex64::new(1.5, 0.0);
        let left = Complex64::new(-1.5, 0.0);
        let s_right = data.lplus.eval(right).unwrap() + data.lminus.eval(right).unwrap();
        let s_left = data.lplus.eval(left).unwrap() + data.lminus.eval(left).unwrap();
        assert!(s_right.norm() < 1e-15);
        assert!((s_left + 1.0).norm() < 1e-15);
    }

    #[test]
    fn lplus_defined_on_top_of_collar() {
        let data = cousin_solve(&chart());
        assert!(data.lplus.eval(Complex64::new(0.0, 1.5)).is_ok());
        assert!(data.lminus.eval(Complex64::new(0.0, -1.5)).is_ok());
    }
}
