use num_complex::Complex64;

use crate::autgroup::{
    henon_word, invert_word, AutomorphismWord, CMatrix, ElementaryAutomorphism,
    MultivariatePolynomial,
};
use crate::geometry::{DiskSpec, DomainSpec};

use super::{BundleSpec, ExtensionError};

pub const BUILTIN_NAMES: &[&str] = &["skoda", "demailly"];

/// `(z1, z2) ↦ (z1, z2·e^{z1})`.
pub fn skoda_over_shear() -> ElementaryAutomorphism {
    ElementaryAutomorphism::over_shear(1, MultivariatePolynomial::variable(2, 0))
        .expect("z1 does not involve z2")
}

/// `(z1, z2) ↦ (i·z2, z1)`.
pub fn skoda_linear() -> ElementaryAutomorphism {
    let (o, i, l) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(1.0, 0.0));
    ElementaryAutomorphism::linear(CMatrix::from_row_slice(2, 2, &[o, i, l, o]))
        .expect("invertible")
}

/// Two holes at `∓4` in the disc of radius 10, with monodromy the
/// over-shear around the left hole and the linear map around the right one.
pub fn skoda_spec() -> BundleSpec {
    let domain = DomainSpec::new(
        10.0,
        vec![
            DiskSpec {
                center: -4.0,
                radius: 1.0,
            },
            DiskSpec {
                center: 4.0,
                radius: 1.0,
            },
        ],
    )
    .expect("valid domain");
    let over = AutomorphismWord::single(skoda_over_shear());
    let lin = AutomorphismWord::single(skoda_linear());
    // Hole j has monodromy G_j ∘ G_{j+1}⁻¹ (0-based); take G_0 = 1.
    let g0 = AutomorphismWord::identity(2);
    let g1 = invert_word(&over).expect("invertible");
    let g2 = g1.then(&invert_word(&lin).expect("invertible")).expect("same dimension");
    BundleSpec {
        domain,
        dimension: 2,
        gap_words: vec![g0, g1, g2],
        hole_factorizations: vec![Some(vec![skoda_over_shear()]), Some(vec![skoda_linear()])],
        outer_factorization: None,
    }
}

/// One hole at the origin whose monodromy is the Hénon-type word of degree
/// `k`, factored as linear map then shear.
pub fn demailly_spec(k: u32) -> Result<BundleSpec, ExtensionError> {
    if k < 2 {
        return Err(ExtensionError::InvalidExampleParameter(format!(
            "demailly needs k >= 2, got {k}"
        )));
    }
    let domain = DomainSpec::new(
        10.0,
        vec![DiskSpec {
            center: 0.0,
            radius: 1.0,
        }],
    )
    .expect("valid domain");
    let h = henon_word(k);
    Ok(BundleSpec {
        domain,
        dimension: 2,
        gap_words: vec![AutomorphismWord::identity(2), invert_word(&h)?],
        hole_factorizations: vec![Some(h.factors().to_vec())],
        outer_factorization: None,
    })
}

pub fn builtin_example(name: &str, k: Option<u32>) -> Result<BundleSpec, ExtensionError> {
    match name {
        "skoda" => Ok(skoda_spec()),
        "demailly" => demailly_spec(k.unwrap_or(2)),
        other => Err(ExtensionError::UnknownExample(other.to_string())),
    }
}
