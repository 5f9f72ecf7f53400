use serde::{Deserialize, Serialize};

use crate::autgroup::{invert_word, AutomorphismWord, ElementaryAutomorphism, EQUALITY_TOL};
use crate::geometry::{validate_domain, DomainSpec, Site};

use super::ExtensionError;

/// A bundle over the domain in gap-word normal form.
///
/// `gap_words[p]` identifies `(ζ, z)` in the upper trivialization with
/// `(ζ, G_p z)` in the lower one on the `p`-th real-axis band (band 0 left of
/// every hole, band `N` right of every hole).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BundleSpec {
    pub domain: DomainSpec,
    pub dimension: usize,
    pub gap_words: Vec<AutomorphismWord>,
    /// Per hole, an optional factorization of its monodromy into elementaries
    /// (application order).
    #[serde(default)]
    pub hole_factorizations: Vec<Option<Vec<ElementaryAutomorphism>>>,
    #[serde(default)]
    pub outer_factorization: Option<Vec<ElementaryAutomorphism>>,
}

impl BundleSpec {
    pub fn new(
        domain: DomainSpec,
        dimension: usize,
        gap_words: Vec<AutomorphismWord>,
    ) -> Result<Self, ExtensionError> {
        let n_holes = domain.holes.len();
        Self {
            domain,
            dimension,
            gap_words,
            hole_factorizations: vec![None; n_holes],
            outer_factorization: None,
        }
        .validated()
    }

    /// Checks the domain and the word dimensions and counts; hole order is
    /// normalized by center, so a spec must list holes sorted already.
    pub fn validated(mut self) -> Result<Self, ExtensionError> {
        let sorted = validate_domain(self.domain.clone())?;
        if sorted != self.domain {
            return Err(ExtensionError::InvalidSpec(
                "holes must be listed in increasing order of center".into(),
            ));
        }
        self.domain = sorted;
        let n_holes = self.domain.holes.len();
        if self.dimension == 0 {
            return Err(ExtensionError::InvalidSpec("fiber dimension must be positive".into()));
        }
        if self.gap_words.len() != n_holes + 1 {
            return Err(ExtensionError::InvalidSpec(format!(
                "{} holes need {} gap words, found {}",
                n_holes,
                n_holes + 1,
                self.gap_words.len()
            )));
        }
        if let Some(p) = self.gap_words.iter().position(|w| w.dimension() != self.dimension) {
            return Err(ExtensionError::InvalidSpec(format!(
                "gap word {p} has the wrong dimension"
            )));
        }
        if self.hole_factorizations.is_empty() {
            self.hole_factorizations = vec![None; n_holes];
        }
        if self.hole_factorizations.len() != n_holes {
            return Err(ExtensionError::InvalidSpec(format!(
                "expected {} hole factorizations, found {}",
                n_holes,
                self.hole_factorizations.len()
            )));
        }
        let factors = self
            .hole_factorizations
            .iter()
            .flatten()
            .chain(self.outer_factorization.iter())
            .flatten();
        if factors.clone().any(|e| e.dimension() != self.dimension) {
            return Err(ExtensionError::InvalidSpec(
                "factorization element has the wrong dimension".into(),
            ));
        }
        Ok(self)
    }

    pub fn num_holes(&self) -> usize {
        self.domain.holes.len()
    }

    /// Bands carrying `T0` (right side in the chart) and `T1` (left side).
    pub fn site_bands(&self, site: Site) -> (usize, usize) {
        match site {
            Site::Hole(j) => (j + 1, j),
            // With w = −R/ζ the right half of the chart is Re ζ < 0.
            Site::Outer => (0, self.num_holes()),
        }
    }

    /// Every site in processing order: holes left to right, then ∞.
    pub fn sites(&self) -> Vec<Site> {
        (0..self.num_holes())
            .map(Site::Hole)
            .chain(std::iter::once(Site::Outer))
            .collect()
    }

    /// Factorization used for `site`: the explicit one if present, otherwise
    /// the simplified monodromy word for holes, and the concatenation of the
    /// inverted hole factorizations for ∞ (`G_N ∘ G_0⁻¹` telescopes into the
    /// hole monodromies).
    pub fn factorization(&self, site: Site) -> Result<Vec<ElementaryAutomorphism>, ExtensionError> {
        match site {
            Site::Hole(j) => {
                if let Some(f) = self.hole_factorizations.get(j).cloned().flatten() {
                    return Ok(f);
                }
                let (b0, b1) = self.site_bands(site);
                let mono = invert_word(&self.gap_words[b0])?.then(&self.gap_words[b1])?;
                Ok(mono.simplified().factors().to_vec())
            }
            Site::Outer => {
                if let Some(f) = &self.outer_factorization {
                    return Ok(f.clone());
                }
                let mut out = Vec::new();
                for j in 0..self.num_holes() {
                    let fac = AutomorphismWord::new(self.dimension, self.factorization(Site::Hole(j))?)?;
                    out.extend(invert_word(&fac)?.factors().iter().cloned());
                }
                Ok(out)
            }
        }
    }

    /// The gluing pair and factorization at `site`, without checking the
    /// factorization against the monodromy.
    pub fn gluing(&self, site: Site) -> Result<HoleGluing, ExtensionError> {
        let (b0, b1) = self.site_bands(site);
        Ok(HoleGluing {
            t0: self.gap_words[b0].clone(),
            t1: self.gap_words[b1].clone(),
            factorization: self.factorization(site)?,
        })
    }
}

/// The two gap words seen from one collar and a factorization of
/// `T1 ∘ T0⁻¹` into elementaries.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HoleGluing {
    pub t0: AutomorphismWord,
    pub t1: AutomorphismWord,
    pub factorization: Vec<ElementaryAutomorphism>,
}

impl HoleGluing {
    /// Builds the gluing and checks `E_k ∘ … ∘ E_1 = T1 ∘ T0⁻¹` by sampled
    /// evaluation.
    pub fn new(
        t0: AutomorphismWord,
        t1: AutomorphismWord,
        factorization: Vec<ElementaryAutomorphism>,
    ) -> Result<Self, ExtensionError> {
        let g = Self {
            t0,
            t1,
            factorization,
        };
        let r = g.factorization_residual()?;
        if !(r < EQUALITY_TOL) {
            return Err(ExtensionError::FactorizationMismatch { residual: r });
        }
        Ok(g)
    }

    pub fn dimension(&self) -> usize {
        self.t0.dimension()
    }

    /// `T1 ∘ T0⁻¹` as a word.
    pub fn monodromy(&self) -> Result<AutomorphismWord, ExtensionError> {
        Ok(invert_word(&self.t0)?.then(&self.t1)?)
    }

    pub fn product(&self) -> Result<AutomorphismWord, ExtensionError> {
        Ok(AutomorphismWord::new(self.dimension(), self.factorization.clone())?)
    }

    pub fn factorization_residual(&self) -> Result<f64, ExtensionError> {
        Ok(self.product()?.max_residual_against(&self.monodromy()?))
    }
}
