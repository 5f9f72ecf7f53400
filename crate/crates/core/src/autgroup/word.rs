use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::matrix::CMatrix;
use super::{
    relative_residual, sample_polydisc, AlgebraError, ComplexPoint, ElementaryAutomorphism,
    MultivariatePolynomial, EQUALITY_SAMPLES, EQUALITY_TOL, INTERNAL_SAMPLE_SEED,
};

/// A finite composition of elementaries, in application order.
#[derive(Clone, Debug, PartialEq)]
pub struct AutomorphismWord {
    dimension: usize,
    factors: Vec<ElementaryAutomorphism>,
}

impl AutomorphismWord {
    pub fn new(
        dimension: usize,
        factors: Vec<ElementaryAutomorphism>,
    ) -> Result<Self, AlgebraError> {
        if dimension == 0 {
            return Err(AlgebraError::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        if let Some(bad) = factors.iter().find(|f| f.dimension() != dimension) {
            return Err(AlgebraError::DimensionMismatch {
                expected: dimension,
                found: bad.dimension(),
            });
        }
        Ok(Self { dimension, factors })
    }

    pub fn identity(dimension: usize) -> Self {
        Self {
            dimension,
            factors: Vec::new(),
        }
    }

    pub fn single(e: ElementaryAutomorphism) -> Self {
        Self {
            dimension: e.dimension(),
            factors: vec![e],
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn factors(&self) -> &[ElementaryAutomorphism] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// `other ∘ self`: the factors of `self` act first.
    pub fn then(&self, other: &AutomorphismWord) -> Result<Self, AlgebraError> {
        if other.dimension != self.dimension {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dimension,
                found: other.dimension,
            });
        }
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Ok(Self {
            dimension: self.dimension,
            factors,
        })
    }

    pub fn push(&mut self, e: ElementaryAutomorphism) -> Result<(), AlgebraError> {
        if e.dimension() != self.dimension {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dimension,
                found: e.dimension(),
            });
        }
        self.factors.push(e);
        Ok(())
    }

    pub fn apply_in_place(&self, z: &mut [Complex64]) {
        for f in &self.factors {
            f.apply_in_place(z);
        }
    }

    pub fn apply(&self, z: &[Complex64]) -> Vec<Complex64> {
        let mut out = z.to_vec();
        self.apply_in_place(&mut out);
        out
    }

    /// Merges adjacent factors of the same kind (same-axis shears, same-axis
    /// over-shears, consecutive affine maps) and drops exact identities.
    pub fn simplified(&self) -> Self {
        let mut out: Vec<ElementaryAutomorphism> = Vec::new();
        for f in &self.factors {
            if f.is_identity() {
                continue;
            }
            let merged = match (out.last(), f) {
                (
                    Some(ElementaryAutomorphism::Shear { axis: a, q: p }),
                    ElementaryAutomorphism::Shear { axis: b, q },
                ) if a == b => Some(ElementaryAutomorphism::Shear {
                    axis: *a,
                    q: p.add(q),
                }),
                (
                    Some(ElementaryAutomorphism::OverShear { axis: a, q: p }),
                    ElementaryAutomorphism::OverShear { axis: b, q },
                ) if a == b => Some(ElementaryAutomorphism::OverShear {
                    axis: *a,
                    q: p.add(q),
                }),
                (
                    Some(ElementaryAutomorphism::Affine {
                        matrix: m1,
                        translation: b1,
                    }),
                    ElementaryAutomorphism::Affine {
                        matrix: m2,
                        translation: b2,
                    },
                ) => {
                    let v1 = nalgebra::DVector::from_column_slice(b1);
                    let v2 = nalgebra::DVector::from_column_slice(b2);
                    Some(ElementaryAutomorphism::Affine {
                        matrix: m2 * m1,
                        translation: (m2 * v1 + v2).iter().copied().collect(),
                    })
                }
                _ => None,
            };
            match merged {
                Some(m) => {
                    out.pop();
                    if !m.is_identity() {
                        out.push(m);
                    }
                }
                None => out.push(f.clone()),
            }
        }
        Self {
            dimension: self.dimension,
            factors: out,
        }
    }

    /// Largest relative residual between the two words on
    /// [`EQUALITY_SAMPLES`] points of the polydisc of radius 2.
    pub fn max_residual_against(&self, other: &AutomorphismWord) -> f64 {
        let mut rng = ChaCha8Rng::seed_from_u64(INTERNAL_SAMPLE_SEED);
        (0..EQUALITY_SAMPLES)
            .map(|_| {
                let z = sample_polydisc(&mut rng, self.dimension, 2.0);
                relative_residual(&self.apply(&z), &other.apply(&z))
            })
            .fold(0.0, f64::max)
    }

    /// Equality of the represented maps, decided by sampled evaluation.
    pub fn agrees_with(&self, other: &AutomorphismWord) -> bool {
        self.dimension == other.dimension && self.max_residual_against(other) < EQUALITY_TOL
    }
}

/// `e_m(…e_1(z)…)`.
pub fn eval_word(w: &AutomorphismWord, z: &ComplexPoint) -> Result<ComplexPoint, AlgebraError> {
    if z.dimension() != w.dimension() {
        return Err(AlgebraError::DimensionMismatch {
            expected: w.dimension(),
            found: z.dimension(),
        });
    }
    ComplexPoint::new(w.apply(z.coords()))
}

/// Reversed sequence of factor inverses.
pub fn invert_word(w: &AutomorphismWord) -> Result<AutomorphismWord, AlgebraError> {
    let factors = w
        .factors
        .iter()
        .rev()
        .map(ElementaryAutomorphism::inverse)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AutomorphismWord {
        dimension: w.dimension,
        factors,
    })
}

/// Symbolic composition of a word without over-shears: the `n` component
/// polynomials of the composite map and their maximal degree.
pub fn expand_polynomial(
    w: &AutomorphismWord,
) -> Result<(Vec<MultivariatePolynomial>, u32), AlgebraError> {
    let n = w.dimension;
    let mut comps: Vec<MultivariatePolynomial> =
        (0..n).map(|i| MultivariatePolynomial::variable(n, i)).collect();
    for f in &w.factors {
        match f {
            ElementaryAutomorphism::OverShear { .. } => {
                return Err(AlgebraError::TranscendentalWord)
            }
            ElementaryAutomorphism::Shear { axis, q } => {
                let added = q.substitute(&comps);
                comps[*axis] = comps[*axis].add(&added);
            }
            ElementaryAutomorphism::Affine {
                matrix,
                translation,
            } => {
                comps = (0..n)
                    .map(|i| {
                        let mut acc = MultivariatePolynomial::constant(n, translation[i]);
                        for (j, c) in comps.iter().enumerate() {
                            acc = acc.add(&c.scale(matrix[(i, j)]));
                        }
                        acc
                    })
                    .collect();
            }
        }
    }
    let degree = comps.iter().map(|c| c.degree()).max().unwrap_or(0);
    Ok((comps, degree))
}

/// The Hénon-type map `(z1, z2) ↦ (z2, −z1 + z2^k)` as the word
/// `[linear (z1, z2) ↦ (z2, −z1), shear z2 += z1^k]`.
///
/// # Panics
/// If `k == 0`.
pub fn henon_word(k: u32) -> AutomorphismWord {
    assert!(k >= 1, "henon_word needs k >= 1");
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let rot = CMatrix::from_row_slice(2, 2, &[zero, one, -one, zero]);
    let linear = ElementaryAutomorphism::linear(rot).expect("rotation is invertible");
    let shear = ElementaryAutomorphism::shear(1, MultivariatePolynomial::monomial(2, 0, k, one))
        .expect("z1^k does not involve z2");
    AutomorphismWord {
        dimension: 2,
        factors: vec![linear, shear],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(xs: &[f64]) -> ComplexPoint {
        ComplexPoint::from_real(xs).unwrap()
    }

    #[test]
    fn zero_shear_is_identity() {
        let w = AutomorphismWord::single(
            ElementaryAutomorphism::shear(1, MultivariatePolynomial::zero(2)).unwrap(),
        );
        assert_eq!(eval_word(&w, &pt(&[1.0, 2.0])).unwrap(), pt(&[1.0, 2.0]));
    }

    #[test]
    fn henon_k2_at_one_two() {
        assert_eq!(
            eval_word(&henon_word(2), &pt(&[1.0, 2.0])).unwrap(),
            pt(&[2.0, 3.0])
        );
    }

    #[test]
    fn henon_k3_at_one_one() {
        assert_eq!(
            eval_word(&henon_word(3), &pt(&[1.0, 1.0])).unwrap(),
            pt(&[1.0, 0.0])
        );
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        assert!(matches!(
            eval_word(&henon_word(2), &pt(&[1.0, 2.0, 3.0])),
            Err(AlgebraError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn inverse_of_scaled_translation() {
        // 2·(3, 4) + (1, 0) = (7, 8).
        let two = Complex64::new(2.0, 0.0);
        let m = CMatrix::from_diagonal_element(2, 2, two);
        let e = ElementaryAutomorphism::affine(
            m,
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        )
        .unwrap();
        let w = AutomorphismWord::single(e);
        let image = eval_word(&w, &pt(&[3.0, 4.0])).unwrap();
        assert_eq!(image, pt(&[7.0, 8.0]));
        let back = eval_word(&invert_word(&w).unwrap(), &image).unwrap();
        assert_eq!(back, pt(&[3.0, 4.0]));
    }

    #[test]
    fn inverse_of_anisotropic_scaling() {
        let m = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            Complex64::new(2.0, 0.0),
            Complex64::new(1.0, 0.0),
        ]));
        let e = ElementaryAutomorphism::affine(
            m,
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        )
        .unwrap();
        let w = AutomorphismWord::single(e);
        let image = eval_word(&w, &pt(&[3.0, 4.0])).unwrap();
        assert_eq!(image, pt(&[7.0, 4.0]));
        let back = eval_word(&invert_word(&w).unwrap(), &image).unwrap();
        assert_eq!(back, pt(&[3.0, 4.0]));
    }

    #[test]
    fn henon_inverse_roundtrip() {
        let inv = invert_word(&henon_word(2)).unwrap();
        assert_eq!(eval_word(&inv, &pt(&[2.0, 3.0])).unwrap(), pt(&[1.0, 2.0]));
    }

    #[test]
    fn shear_inverse_negates_q() {
        let q = MultivariatePolynomial::monomial(2, 0, 3, Complex64::new(2.0, 1.0));
        let w = AutomorphismWord::single(ElementaryAutomorphism::shear(1, q.clone()).unwrap());
        let inv = invert_word(&w).unwrap();
        assert_eq!(
            inv.factors(),
            &[ElementaryAutomorphism::Shear {
                axis: 1,
                q: q.scale(Complex64::new(-1.0, 0.0))
            }]
        );
    }

    #[test]
    fn expand_henon_k2() {
        let (comps, degree) = expand_polynomial(&henon_word(2)).unwrap();
        let one = Complex64::new(1.0, 0.0);
        assert_eq!(comps[0], MultivariatePolynomial::variable(2, 1));
        let expected = MultivariatePolynomial::from_terms(
            2,
            vec![(vec![1, 0], -one), (vec![0, 2], one)],
        )
        .unwrap();
        assert_eq!(comps[1], expected);
        assert_eq!(degree, 2);
    }

    #[test]
    fn expand_single_cubic_shear() {
        let one = Complex64::new(1.0, 0.0);
        let w = AutomorphismWord::single(
            ElementaryAutomorphism::shear(1, MultivariatePolynomial::monomial(2, 0, 3, one)).unwrap(),
        );
        let (comps, degree) = expand_polynomial(&w).unwrap();
        assert_eq!(degree, 3);
        assert_eq!(comps[0], MultivariatePolynomial::variable(2, 0));
        assert_eq!(
            comps[1],
            MultivariatePolynomial::variable(2, 1)
                .add(&MultivariatePolynomial::monomial(2, 0, 3, one))
        );
    }

    #[test]
    fn expand_rejects_over_shear() {
        let w = AutomorphismWord::single(
            ElementaryAutomorphism::over_shear(1, MultivariatePolynomial::variable(2, 0)).unwrap(),
        );
        assert_eq!(expand_polynomial(&w), Err(AlgebraError::TranscendentalWord));
    }

    #[test]
    fn henon_k1_is_linear() {
        let (comps, degree) = expand_polynomial(&henon_word(1)).unwrap();
        assert_eq!(degree, 1);
        let one = Complex64::new(1.0, 0.0);
        let expected = MultivariatePolynomial::from_terms(
            2,
            vec![(vec![1, 0], -one), (vec![0, 1], one)],
        )
        .unwrap();
        assert_eq!(comps[1], expected);
    }

    #[test]
    fn simplify_cancels_inverse_pairs() {
        let e = ElementaryAutomorphism::over_shear(1, MultivariatePolynomial::variable(2, 0)).unwrap();
        let w = AutomorphismWord::new(2, vec![e.clone(), e.inverse().unwrap()]).unwrap();
        assert!(w.simplified().is_empty());
        let h = henon_word(2);
        let both = h.then(&invert_word(&h).unwrap()).unwrap();
        assert!(both.agrees_with(&AutomorphismWord::identity(2)));
    }
}
