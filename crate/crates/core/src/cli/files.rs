use serde::{Deserialize, Serialize};

use crate::autgroup::{AutomorphismWord, ElementaryAutomorphism};
use crate::extension::{BundleSpec, ExtendedBundle, ExtensionError, VerificationReport};
use crate::geometry::DomainSpec;

pub const SPEC_FORMAT: &str = "bundlex-spec";
pub const EXTENSION_FORMAT: &str = "bundlex-extension";
pub const REPORT_FORMAT: &str = "bundlex-report";
pub const FILE_VERSION: u32 = 1;
/// Words list their factors in the order they act on a point.
pub const WORD_ORDER: &str = "application";

/// On-disk form of a [`BundleSpec`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub format: String,
    pub version: u32,
    pub word_order: String,
    pub dimension: usize,
    pub domain: DomainSpec,
    pub gap_words: Vec<AutomorphismWord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hole_factorizations: Option<Vec<Option<Vec<ElementaryAutomorphism>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outer_factorization: Option<Vec<ElementaryAutomorphism>>,
}

impl SpecFile {
    pub fn from_spec(spec: &BundleSpec) -> Self {
        let any_fac = spec.hole_factorizations.iter().any(Option::is_some);
        Self {
            format: SPEC_FORMAT.into(),
            version: FILE_VERSION,
            word_order: WORD_ORDER.into(),
            dimension: spec.dimension,
            domain: spec.domain.clone(),
            gap_words: spec.gap_words.clone(),
            hole_factorizations: any_fac.then(|| spec.hole_factorizations.clone()),
            outer_factorization: spec.outer_factorization.clone(),
        }
    }

    pub fn into_spec(self) -> Result<BundleSpec, ExtensionError> {
        if self.format != SPEC_FORMAT {
            return Err(ExtensionError::InvalidSpec(format!("unexpected format {:?}", self.format)));
        }
        if self.version != FILE_VERSION {
            return Err(ExtensionError::InvalidSpec(format!("unsupported version {}", self.version)));
        }
        if self.word_order != WORD_ORDER {
            return Err(ExtensionError::InvalidSpec(format!(
                "word_order must be {WORD_ORDER:?}, found {:?}",
                self.word_order
            )));
        }
        BundleSpec {
            domain: self.domain,
            dimension: self.dimension,
            gap_words: self.gap_words,
            hole_factorizations: self.hole_factorizations.unwrap_or_default(),
            outer_factorization: self.outer_factorization,
        }
        .validated()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtensionFile {
    pub format: String,
    pub version: u32,
    pub word_order: String,
    pub bundle: ExtendedBundle,
}

impl ExtensionFile {
    pub fn new(bundle: ExtendedBundle) -> Self {
        Self {
            format: EXTENSION_FORMAT.into(),
            version: FILE_VERSION,
            word_order: WORD_ORDER.into(),
            bundle,
        }
    }
}

/// Run timing; the only part of a report that varies between identical runs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub started_unix_seconds: f64,
    pub elapsed_seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub format: String,
    pub version: u32,
    pub tool_version: String,
    pub seed: u64,
    pub samples: usize,
    pub tolerance: f64,
    pub pass: bool,
    pub report: VerificationReport,
    pub timing: Timing,
}

impl ReportFile {
    pub fn new(report: VerificationReport, timing: Timing) -> Self {
        Self {
            format: REPORT_FORMAT.into(),
            version: FILE_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").into(),
            seed: report.seed,
            samples: report.samples,
            tolerance: report.tolerance,
            pass: report.pass,
            report,
            timing,
        }
    }

    /// The file's overall flag agrees with its records.
    pub fn is_consistent(&self) -> bool {
        self.pass == self.report.pass && self.report.pass == self.report.records.iter().all(|r| r.pass)
    }
}
