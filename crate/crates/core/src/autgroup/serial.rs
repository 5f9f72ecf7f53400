//! JSON-facing representations. Complex numbers are `[re, im]` pairs,
//! matrices are lists of rows, polynomials are lists of
//! `{exponents, coeff}` terms.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::matrix::CMatrix;
use super::{
    AlgebraError, AutomorphismWord, ElementaryAutomorphism, MultivariatePolynomial,
    OneParameterFlow,
};

pub(crate) fn c_to_pair(c: Complex64) -> [f64; 2] {
    [c.re, c.im]
}

pub(crate) fn pair_to_c(p: [f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

/// One polynomial term. `exponents` has length `n`, or `n − 1` for a shear
/// polynomial written without its axis variable.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermRepr {
    pub exponents: Vec<u32>,
    pub coeff: [f64; 2],
}

fn poly_to_repr(q: &MultivariatePolynomial) -> Vec<TermRepr> {
    q.terms()
        .map(|(e, c)| TermRepr {
            exponents: e.to_vec(),
            coeff: c_to_pair(c),
        })
        .collect()
}

fn poly_from_repr(
    terms: Vec<TermRepr>,
    dimension: usize,
    axis: usize,
) -> Result<MultivariatePolynomial, AlgebraError> {
    if axis >= dimension {
        return Err(AlgebraError::AxisOutOfRange { axis, dimension });
    }
    let full = terms.into_iter().map(|t| {
        let mut e = t.exponents;
        if e.len() + 1 == dimension {
            e.insert(axis, 0);
        }
        (e, pair_to_c(t.coeff))
    });
    MultivariatePolynomial::from_terms(dimension, full)
}

fn matrix_to_repr(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    m.row_iter()
        .map(|row| row.iter().map(|c| c_to_pair(*c)).collect())
        .collect()
}

fn matrix_from_repr(rows: Vec<Vec<[f64; 2]>>) -> Result<CMatrix, AlgebraError> {
    let n = rows.len();
    if n == 0 {
        return Err(AlgebraError::DimensionMismatch {
            expected: 1,
            found: 0,
        });
    }
    if let Some(bad) = rows.iter().find(|r| r.len() != n) {
        return Err(AlgebraError::DimensionMismatch {
            expected: n,
            found: bad.len(),
        });
    }
    Ok(CMatrix::from_fn(n, n, |i, j| pair_to_c(rows[i][j])))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub(crate) enum ElementaryRepr {
    Affine {
        matrix: Vec<Vec<[f64; 2]>>,
        translation: Vec<[f64; 2]>,
    },
    Shear {
        dimension: usize,
        axis: usize,
        q: Vec<TermRepr>,
    },
    OverShear {
        dimension: usize,
        axis: usize,
        q: Vec<TermRepr>,
    },
}

impl From<ElementaryAutomorphism> for ElementaryRepr {
    fn from(e: ElementaryAutomorphism) -> Self {
        match e {
            ElementaryAutomorphism::Affine {
                matrix,
                translation,
            } => Self::Affine {
                matrix: matrix_to_repr(&matrix),
                translation: translation.into_iter().map(c_to_pair).collect(),
            },
            ElementaryAutomorphism::Shear { axis, q } => Self::Shear {
                dimension: q.nvars(),
                axis,
                q: poly_to_repr(&q),
            },
            ElementaryAutomorphism::OverShear { axis, q } => Self::OverShear {
                dimension: q.nvars(),
                axis,
                q: poly_to_repr(&q),
            },
        }
    }
}

impl TryFrom<ElementaryRepr> for ElementaryAutomorphism {
    type Error = AlgebraError;

    fn try_from(r: ElementaryRepr) -> Result<Self, Self::Error> {
        match r {
            ElementaryRepr::Affine {
                matrix,
                translation,
            } => Self::affine(
                matrix_from_repr(matrix)?,
                translation.into_iter().map(pair_to_c).collect(),
            ),
            ElementaryRepr::Shear { dimension, axis, q } => {
                Self::shear(axis, poly_from_repr(q, dimension, axis)?)
            }
            ElementaryRepr::OverShear { dimension, axis, q } => {
                Self::over_shear(axis, poly_from_repr(q, dimension, axis)?)
            }
        }
    }
}

impl Serialize for ElementaryAutomorphism {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ElementaryRepr::from(self.clone()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ElementaryAutomorphism {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = ElementaryRepr::deserialize(d)?;
        Self::try_from(r).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct WordRepr {
    dimension: usize,
    factors: Vec<ElementaryAutomorphism>,
}

impl Serialize for AutomorphismWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        WordRepr {
            dimension: self.dimension(),
            factors: self.factors().to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AutomorphismWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = WordRepr::deserialize(d)?;
        AutomorphismWord::new(r.dimension, r.factors).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum FlowRepr {
    ShearFlow {
        dimension: usize,
        axis: usize,
        q: Vec<TermRepr>,
    },
    OverShearFlow {
        dimension: usize,
        axis: usize,
        q: Vec<TermRepr>,
    },
    LinearFlow {
        generator: Vec<Vec<[f64; 2]>>,
    },
    AffineFlow {
        generator: Vec<Vec<[f64; 2]>>,
    },
}

impl Serialize for OneParameterFlow {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let r = match self {
            Self::Shear { axis, q } => FlowRepr::ShearFlow {
                dimension: q.nvars(),
                axis: *axis,
                q: poly_to_repr(q),
            },
            Self::OverShear { axis, q } => FlowRepr::OverShearFlow {
                dimension: q.nvars(),
                axis: *axis,
                q: poly_to_repr(q),
            },
            Self::Linear { generator } => FlowRepr::LinearFlow {
                generator: matrix_to_repr(generator),
            },
            Self::Affine { generator } => FlowRepr::AffineFlow {
                generator: matrix_to_repr(generator),
            },
        };
        r.serialize(s)
    }
}

impl<'de> Deserialize<'de> for OneParameterFlow {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let r = FlowRepr::deserialize(d)?;
        let shear_poly = |dimension, axis, q| -> Result<MultivariatePolynomial, AlgebraError> {
            let p = poly_from_repr(q, dimension, axis)?;
            if p.involves(axis) {
                return Err(AlgebraError::PolynomialInvolvesAxis { axis });
            }
            Ok(p)
        };
        Ok(match r {
            FlowRepr::ShearFlow { dimension, axis, q } => Self::Shear {
                axis,
                q: shear_poly(dimension, axis, q).map_err(D::Error::custom)?,
            },
            FlowRepr::OverShearFlow { dimension, axis, q } => Self::OverShear {
                axis,
                q: shear_poly(dimension, axis, q).map_err(D::Error::custom)?,
            },
            FlowRepr::LinearFlow { generator } => Self::Linear {
                generator: matrix_from_repr(generator).map_err(D::Error::custom)?,
            },
            FlowRepr::AffineFlow { generator } => {
                let generator = matrix_from_repr(generator).map_err(D::Error::custom)?;
                if generator.nrows() < 2 {
                    return Err(D::Error::custom("affine flow generator must be at least 2x2"));
                }
                Self::Affine { generator }
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autgroup::{henon_word, recognize_flow};

    #[test]
    fn shear_accepts_reduced_exponents() {
        let json = r#"{"kind":"shear","dimension":2,"axis":1,"q":[{"exponents":[2],"coeff":[1.0,0.0]}]}"#;
        let e: ElementaryAutomorphism = serde_json::from_str(json).unwrap();
        assert_eq!(e, henon_word(2).factors()[1]);
    }

    #[test]
    fn shear_rejects_axis_variable() {
        let json = r#"{"kind":"shear","dimension":2,"axis":1,"q":[{"exponents":[0,1],"coeff":[1.0,0.0]}]}"#;
        assert!(serde_json::from_str::<ElementaryAutomorphism>(json).is_err());
    }

    #[test]
    fn word_json_shape() {
        let v = serde_json::to_value(henon_word(2)).unwrap();
        assert_eq!(v["dimension"], 2);
        assert_eq!(v["factors"][0]["kind"], "affine");
        assert_eq!(v["factors"][0]["matrix"][1][0], serde_json::json!([-1.0, 0.0]));
        assert_eq!(v["factors"][1]["q"][0]["exponents"], serde_json::json!([2, 0]));
    }

    #[test]
    fn flow_roundtrip() {
        let f = recognize_flow(&henon_word(3).factors()[0]).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        let back: OneParameterFlow = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }
}
