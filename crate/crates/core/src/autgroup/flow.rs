use nalgebra::DVector;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::matrix::{expm, matrix_log, CMatrix};
use super::{
    relative_residual, sample_polydisc, AlgebraError, ElementaryAutomorphism,
    MultivariatePolynomial, EQUALITY_SAMPLES, EQUALITY_TOL, INTERNAL_SAMPLE_SEED,
};

/// A one-parameter group `t ↦ S^t` of automorphisms of C^n.
#[derive(Clone, Debug, PartialEq)]
pub enum OneParameterFlow {
    /// `S^t` adds `t·q` to `z_axis`.
    Shear {
        axis: usize,
        q: MultivariatePolynomial,
    },
    /// `S^t` multiplies `z_axis` by `exp(t·q)`.
    OverShear {
        axis: usize,
        q: MultivariatePolynomial,
    },
    /// `S^t = exp(tA)`.
    Linear { generator: CMatrix },
    /// `S^t` acts on `(z, 1)` by `exp(tH)` for an `(n+1)×(n+1)` generator `H`
    /// with zero last row.
    Affine { generator: CMatrix },
}

impl OneParameterFlow {
    pub fn dimension(&self) -> usize {
        match self {
            Self::Shear { q, .. } | Self::OverShear { q, .. } => q.nvars(),
            Self::Linear { generator } => generator.nrows(),
            Self::Affine { generator } => generator.nrows() - 1,
        }
    }

    /// The flow that is constantly the identity.
    pub fn trivial(n: usize) -> Self {
        Self::Shear {
            axis: 0,
            q: MultivariatePolynomial::zero(n),
        }
    }

    /// `S^t(z)`, without materializing the elementary.
    pub fn apply(&self, t: Complex64, z: &[Complex64]) -> Vec<Complex64> {
        let mut out = z.to_vec();
        match self {
            Self::Shear { axis, q } => out[*axis] += t * q.eval(z),
            Self::OverShear { axis, q } => out[*axis] *= (t * q.eval(z)).exp(),
            _ => flow_at(self, t).apply_in_place(&mut out),
        }
        out
    }

    /// Degree of every `S^t` as a polynomial map (`None` for over-shears).
    pub fn degree(&self) -> Option<u32> {
        match self {
            Self::Shear { q, .. } => Some(q.degree().max(1)),
            Self::OverShear { .. } => None,
            Self::Linear { .. } | Self::Affine { .. } => Some(1),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Self::Shear { .. } => "shear_flow",
            Self::OverShear { .. } => "over_shear_flow",
            Self::Linear { .. } => "linear_flow",
            Self::Affine { .. } => "affine_flow",
        }
    }
}

/// The automorphism `S^t`.
pub fn flow_at(f: &OneParameterFlow, t: Complex64) -> ElementaryAutomorphism {
    match f {
        OneParameterFlow::Shear { axis, q } => ElementaryAutomorphism::Shear {
            axis: *axis,
            q: q.scale(t),
        },
        OneParameterFlow::OverShear { axis, q } => ElementaryAutomorphism::OverShear {
            axis: *axis,
            q: q.scale(t),
        },
        OneParameterFlow::Linear { generator } => {
            let n = generator.nrows();
            ElementaryAutomorphism::Affine {
                matrix: expm(&generator.map(|c| c * t)),
                translation: vec![Complex64::new(0.0, 0.0); n],
            }
        }
        OneParameterFlow::Affine { generator } => {
            let n = generator.nrows() - 1;
            let e = expm(&generator.map(|c| c * t));
            ElementaryAutomorphism::Affine {
                matrix: e.view((0, 0), (n, n)).into_owned(),
                translation: (0..n).map(|i| e[(i, n)]).collect(),
            }
        }
    }
}

/// Embeds a one-parameter group through `e` and checks `S^1 = e` on sampled
/// points.
///
/// Shears and over-shears map to their own flows. Affine maps with zero
/// translation get a [`OneParameterFlow::Linear`] from the logarithm of the
/// matrix; the others an [`OneParameterFlow::Affine`] from the logarithm of
/// the homogeneous `(n+1)×(n+1)` matrix.
pub fn recognize_flow(e: &ElementaryAutomorphism) -> Result<OneParameterFlow, AlgebraError> {
    let flow = match e {
        ElementaryAutomorphism::Shear { axis, q } => OneParameterFlow::Shear {
            axis: *axis,
            q: q.clone(),
        },
        ElementaryAutomorphism::OverShear { axis, q } => OneParameterFlow::OverShear {
            axis: *axis,
            q: q.clone(),
        },
        ElementaryAutomorphism::Affine {
            matrix,
            translation,
        } => {
            let n = matrix.nrows();
            let no_shift = translation.iter().all(|c| *c == Complex64::new(0.0, 0.0));
            if no_shift {
                let log = matrix_log(matrix).map_err(|err| AlgebraError::NoKnownFlow(err.to_string()))?;
                OneParameterFlow::Linear { generator: log.log }
            } else {
                let mut h = CMatrix::identity(n + 1, n + 1);
                h.view_mut((0, 0), (n, n)).copy_from(matrix);
                h.view_mut((0, n), (n, 1))
                    .copy_from(&DVector::from_column_slice(translation));
                let log = matrix_log(&h).map_err(|err| AlgebraError::NoKnownFlow(err.to_string()))?;
                OneParameterFlow::Affine { generator: log.log }
            }
        }
    };
    let one = flow_at(&flow, Complex64::new(1.0, 0.0));
    let mut rng = ChaCha8Rng::seed_from_u64(INTERNAL_SAMPLE_SEED);
    let n = e.dimension();
    for _ in 0..EQUALITY_SAMPLES {
        let z = sample_polydisc(&mut rng, n, 2.0);
        let mut a = z.clone();
        e.apply_in_place(&mut a);
        let mut b = z;
        one.apply_in_place(&mut b);
        let r = relative_residual(&a, &b);
        if !(r < EQUALITY_TOL) {
            return Err(AlgebraError::NoKnownFlow(format!(
                "time-1 map misses the elementary by {r:e}"
            )));
        }
    }
    Ok(flow)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn shear_flow_scales_q() {
        let q = MultivariatePolynomial::monomial(2, 0, 2, c(1.0, 0.0));
        let e = ElementaryAutomorphism::shear(1, q.clone()).unwrap();
        let f = recognize_flow(&e).unwrap();
        assert_eq!(f, OneParameterFlow::Shear { axis: 1, q: q.clone() });
        assert_eq!(flow_at(&f, c(1.0, 0.0)), e);
        let z = [c(2.0, 0.0), c(1.0, 0.0)];
        assert_eq!(f.apply(c(0.5, 0.0), &z), vec![c(2.0, 0.0), c(3.0, 0.0)]);
    }

    #[test]
    fn over_shear_flow_multiplies() {
        let q = MultivariatePolynomial::variable(2, 0);
        let e = ElementaryAutomorphism::over_shear(1, q).unwrap();
        let f = recognize_flow(&e).unwrap();
        assert!(matches!(f, OneParameterFlow::OverShear { axis: 1, .. }));
        let z = [c(1.0, 0.0), c(1.0, 0.0)];
        let out = f.apply(c(2.0, 0.0), &z);
        assert!((out[1] - c(2f64.exp(), 0.0)).norm() < 1e-14);
    }

    #[test]
    fn linear_flow_for_skoda_swap() {
        let m = CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., 1.), c(1., 0.), c(0., 0.)]);
        let e = ElementaryAutomorphism::linear(m.clone()).unwrap();
        let f = recognize_flow(&e).unwrap();
        let OneParameterFlow::Linear { generator } = &f else {
            panic!("expected a linear flow, got {f:?}");
        };
        assert!(super::super::matrix::max_abs_diff(&expm(generator), &m) < 1e-9);
    }

    #[test]
    fn translation_gives_affine_flow() {
        let m = CMatrix::from_diagonal_element(2, 2, c(2.0, 0.0));
        let e = ElementaryAutomorphism::affine(m, vec![c(1.0, 0.0), c(0.0, -1.0)]).unwrap();
        let f = recognize_flow(&e).unwrap();
        assert!(matches!(f, OneParameterFlow::Affine { .. }));
        assert_eq!(f.dimension(), 2);
    }

    #[test]
    fn flow_at_zero_is_identity() {
        let m = CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(-1., 0.), c(0., 0.)]);
        let f = recognize_flow(&ElementaryAutomorphism::linear(m).unwrap()).unwrap();
        let z = [c(0.3, -1.0), c(1.5, 0.2)];
        let out = f.apply(c(0.0, 0.0), &z);
        assert!(relative_residual(&out, &z) < 1e-15);
    }

    #[test]
    fn defective_affine_has_no_flow() {
        // A Jordan block next to a distinct eigenvalue is outside what
        // matrix_log handles.
        let m = CMatrix::from_row_slice(
            3,
            3,
            &[
                c(2., 0.), c(1., 0.), c(0., 0.),
                c(0., 0.), c(2., 0.), c(0., 0.),
                c(0., 0.), c(0., 0.), c(3., 0.),
            ],
        );
        let e = ElementaryAutomorphism::linear(m).unwrap();
        assert!(matches!(recognize_flow(&e), Err(AlgebraError::NoKnownFlow(_))));
    }
}
