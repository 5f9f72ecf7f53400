use num_complex::Complex64;

use super::matrix::{is_invertible, CMatrix};
use super::{AlgebraError, MultivariatePolynomial};

/// A point of the fiber C^n.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexPoint(Vec<Complex64>);

impl ComplexPoint {
    pub fn new(coords: Vec<Complex64>) -> Result<Self, AlgebraError> {
        if coords.is_empty() {
            return Err(AlgebraError::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        if coords.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(AlgebraError::NonFinite);
        }
        Ok(Self(coords))
    }

    /// Real coordinates, mostly for tests and examples.
    pub fn from_real(coords: &[f64]) -> Result<Self, AlgebraError> {
        Self::new(coords.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Complex64> {
        self.0
    }
}

/// One generator of the automorphism group.
///
/// `Shear` adds `q` to coordinate `axis`; `OverShear` multiplies it by
/// `exp(q)`. In both cases `q` is stored as a polynomial in all `n`
/// variables that does not involve `z_axis`.
#[derive(Clone, Debug, PartialEq)]
pub enum ElementaryAutomorphism {
    Affine {
        matrix: CMatrix,
        translation: Vec<Complex64>,
    },
    Shear {
        axis: usize,
        q: MultivariatePolynomial,
    },
    OverShear {
        axis: usize,
        q: MultivariatePolynomial,
    },
}

impl ElementaryAutomorphism {
    pub fn affine(matrix: CMatrix, translation: Vec<Complex64>) -> Result<Self, AlgebraError> {
        let n = matrix.nrows();
        if matrix.ncols() != n {
            return Err(AlgebraError::DimensionMismatch {
                expected: n,
                found: matrix.ncols(),
            });
        }
        if translation.len() != n {
            return Err(AlgebraError::DimensionMismatch {
                expected: n,
                found: translation.len(),
            });
        }
        let finite = |c: &Complex64| c.re.is_finite() && c.im.is_finite();
        if !matrix.iter().all(finite) || !translation.iter().all(finite) {
            return Err(AlgebraError::NonFinite);
        }
        if !is_invertible(&matrix) {
            return Err(AlgebraError::SingularMatrix);
        }
        Ok(Self::Affine {
            matrix,
            translation,
        })
    }

    pub fn linear(matrix: CMatrix) -> Result<Self, AlgebraError> {
        let n = matrix.nrows();
        Self::affine(matrix, vec![Complex64::new(0.0, 0.0); n])
    }

    pub fn shear(axis: usize, q: MultivariatePolynomial) -> Result<Self, AlgebraError> {
        check_axis(axis, &q)?;
        Ok(Self::Shear { axis, q })
    }

    pub fn over_shear(axis: usize, q: MultivariatePolynomial) -> Result<Self, AlgebraError> {
        check_axis(axis, &q)?;
        Ok(Self::OverShear { axis, q })
    }

    pub fn identity(n: usize) -> Self {
        Self::Shear {
            axis: 0,
            q: MultivariatePolynomial::zero(n),
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            Self::Affine { matrix, .. } => matrix.nrows(),
            Self::Shear { q, .. } | Self::OverShear { q, .. } => q.nvars(),
        }
    }

    /// Exact structural identity test (zero shear, identity matrix with zero
    /// translation).
    pub fn is_identity(&self) -> bool {
        match self {
            Self::Shear { q, .. } | Self::OverShear { q, .. } => q.is_zero(),
            Self::Affine {
                matrix,
                translation,
            } => {
                let n = matrix.nrows();
                *matrix == CMatrix::identity(n, n)
                    && translation.iter().all(|c| *c == Complex64::new(0.0, 0.0))
            }
        }
    }

    /// Applies the map in place.
    pub fn apply_in_place(&self, z: &mut [Complex64]) {
        match self {
            Self::Affine {
                matrix,
                translation,
            } => {
                let out: Vec<Complex64> = (0..z.len())
                    .map(|i| {
                        (0..z.len()).map(|j| matrix[(i, j)] * z[j]).sum::<Complex64>()
                            + translation[i]
                    })
                    .collect();
                z.copy_from_slice(&out);
            }
            Self::Shear { axis, q } => {
                let v = q.eval(z);
                z[*axis] += v;
            }
            Self::OverShear { axis, q } => {
                let v = q.eval(z);
                z[*axis] *= v.exp();
            }
        }
    }

    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        Ok(match self {
            Self::Affine {
                matrix,
                translation,
            } => {
                if !is_invertible(matrix) {
                    return Err(AlgebraError::SingularMatrix);
                }
                let inv = matrix
                    .clone()
                    .try_inverse()
                    .ok_or(AlgebraError::SingularMatrix)?;
                let b = nalgebra::DVector::from_column_slice(translation);
                let shift = -(&inv * b);
                Self::Affine {
                    matrix: inv,
                    translation: shift.iter().copied().collect(),
                }
            }
            Self::Shear { axis, q } => Self::Shear {
                axis: *axis,
                q: q.scale(Complex64::new(-1.0, 0.0)),
            },
            Self::OverShear { axis, q } => Self::OverShear {
                axis: *axis,
                q: q.scale(Complex64::new(-1.0, 0.0)),
            },
        })
    }

    /// Polynomial degree of the map: 1 for affine maps, `max(1, deg q)` for
    /// shears, `None` for over-shears (not polynomial).
    pub fn degree(&self) -> Option<u32> {
        match self {
            Self::Affine { .. } => Some(1),
            Self::Shear { q, .. } => Some(q.degree().max(1)),
            Self::OverShear { .. } => None,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Self::Affine { .. } => "affine",
            Self::Shear { .. } => "shear",
            Self::OverShear { .. } => "over_shear",
        }
    }
}

fn check_axis(axis: usize, q: &MultivariatePolynomial) -> Result<(), AlgebraError> {
    if axis >= q.nvars() {
        return Err(AlgebraError::AxisOutOfRange {
            axis,
            dimension: q.nvars(),
        });
    }
    if q.involves(axis) {
        return Err(AlgebraError::PolynomialInvolvesAxis { axis });
    }
    if q.terms().any(|(_, c)| !(c.re.is_finite() && c.im.is_finite())) {
        return Err(AlgebraError::NonFinite);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shear_rejects_its_own_axis() {
        let q = MultivariatePolynomial::variable(2, 1);
        assert_eq!(
            ElementaryAutomorphism::shear(1, q),
            Err(AlgebraError::PolynomialInvolvesAxis { axis: 1 })
        );
    }

    #[test]
    fn affine_rejects_singular() {
        let m = CMatrix::from_element(2, 2, Complex64::new(1.0, 0.0));
        assert_eq!(
            ElementaryAutomorphism::linear(m),
            Err(AlgebraError::SingularMatrix)
        );
    }

    #[test]
    fn point_rejects_nan() {
        assert_eq!(
            ComplexPoint::new(vec![Complex64::new(f64::NAN, 0.0)]),
            Err(AlgebraError::NonFinite)
        );
    }

    #[test]
    fn over_shear_with_zero_exponent_fixes_point() {
        let e = ElementaryAutomorphism::over_shear(1, MultivariatePolynomial::variable(2, 0)).unwrap();
        let mut z = [Complex64::new(0.0, 0.0), Complex64::new(5.0, 0.0)];
        e.apply_in_place(&mut z);
        assert_eq!(z, [Complex64::new(0.0, 0.0), Complex64::new(5.0, 0.0)]);
    }
}
