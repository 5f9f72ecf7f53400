use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::autgroup::{relative_residual, sample_disc, sample_polydisc, OneParameterFlow};
use crate::geometry::{sample_region, RegionKind, Site};

use super::{
    BundleSpec, ExtendedBundle, ExtensionError, FillingMethod, IdentityCheck, PathStep,
    SampleDomain, SiteSummary,
};

pub const DEFAULT_SAMPLES: usize = 1000;
pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_SEED: u64 = 42;
/// Distance kept from region boundaries (and so from branch cuts), in chart
/// units.
pub const REGION_MARGIN: f64 = 1e-3;
/// Fiber points are drawn from the polydisc of this radius.
pub const FIBER_RADIUS: f64 = 2.0;
/// Absolute tolerance for the exponent sums `L+ + L-`.
pub const EXPONENT_TOL: f64 = 1e-12;

/// Claims this tool does not attempt to check.
pub const OUT_OF_SCOPE: &[&str] = &[
    "non-triviality of the extended bundle is not checked",
    "the total space being non-Stein is not checked",
];

pub const OUTER_CONVENTION: &str = "outer chart w = -R/zeta; outer monodromy G_N o G_0^-1; \
     default outer factorization = inverted hole factorizations, hole 1 first";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityRecord {
    pub identity: String,
    pub site: Option<Site>,
    pub location: String,
    pub samples: usize,
    /// `null` in files when not finite (a failed evaluation).
    #[serde(with = "residual_repr")]
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

mod residual_repr {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
    }
}

impl IdentityRecord {
    fn new(identity: &str, site: Option<Site>, location: String, tolerance: f64) -> Self {
        Self {
            identity: identity.to_string(),
            site,
            location,
            samples: 0,
            max_residual: 0.0,
            tolerance,
            pass: false,
            error: None,
        }
    }

    fn observe(&mut self, r: Result<f64, ExtensionError>) {
        self.samples += 1;
        match r {
            // NaN counts as failure.
            Ok(v) if v.is_nan() => self.max_residual = f64::INFINITY,
            Ok(v) => self.max_residual = self.max_residual.max(v),
            Err(e) => {
                self.max_residual = f64::INFINITY;
                self.error.get_or_insert(e.to_string());
            }
        }
    }

    fn finish(mut self) -> Self {
        self.pass = self.error.is_none() && self.max_residual < self.tolerance;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub samples: usize,
    pub tolerance: f64,
    pub exponent_tolerance: f64,
    pub pass: bool,
    #[serde(with = "residual_repr")]
    pub max_residual: f64,
    pub out_of_scope: Vec<String>,
    pub outer_convention: String,
    pub sites: Vec<SiteSummary>,
    pub records: Vec<IdentityRecord>,
}

impl VerificationReport {
    pub fn failing(&self) -> impl Iterator<Item = &IdentityRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn records_named<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a IdentityRecord> {
        self.records.iter().filter(move |r| r.identity == name)
    }

    /// Appends a record and refreshes the overall flags.
    pub fn push(&mut self, record: IdentityRecord) {
        self.records.push(record);
        self.refresh();
    }

    fn refresh(&mut self) {
        self.pass = self.records.iter().all(|r| r.pass);
        self.max_residual = self
            .records
            .iter()
            .filter(|r| r.tolerance == self.tolerance)
            .map(|r| r.max_residual)
            .fold(0.0, f64::max);
    }

    pub fn general_case_sites(&self) -> impl Iterator<Item = (&SiteSummary, usize)> {
        self.sites.iter().filter_map(|s| match s.method {
            FillingMethod::General { sub_holes } => Some((s, sub_holes)),
            _ => None,
        })
    }
}

fn run_path(
    ext: &ExtendedBundle,
    path: &[PathStep],
    zeta: Option<Complex64>,
    z: &[Complex64],
) -> Result<Vec<Complex64>, ExtensionError> {
    let mut cur = z.to_vec();
    for step in path {
        cur = match step {
            PathStep::Forward { transition } => transition_of(ext, *transition)?.apply(zeta, &cur)?,
            PathStep::Backward { transition } => {
                transition_of(ext, *transition)?.apply_inverse(zeta, &cur)?
            }
            PathStep::Word { word } => word.apply(&cur),
        };
    }
    Ok(cur)
}

fn transition_of(ext: &ExtendedBundle, i: usize) -> Result<&super::ParamWord, ExtensionError> {
    ext.transitions
        .get(i)
        .map(|t| &t.word)
        .ok_or_else(|| ExtensionError::InvalidSpec(format!("path refers to missing transition {i}")))
}

fn check_identity(
    ext: &ExtendedBundle,
    c: &IdentityCheck,
    samples: usize,
    tol: f64,
    rng: &mut ChaCha8Rng,
) -> IdentityRecord {
    let mut rec = IdentityRecord::new(&c.name, c.site, c.location.clone(), tol);
    for _ in 0..samples {
        let zeta = match c.domain {
            SampleDomain::Region { chart, region } => {
                Some(chart.to_base(sample_region(rng, region, REGION_MARGIN)))
            }
            SampleDomain::FiberOnly => None,
        };
        let z = sample_polydisc(rng, ext.dimension, FIBER_RADIUS);
        let r = run_path(ext, &c.path_a, zeta, &z).and_then(|a| {
            let b = run_path(ext, &c.path_b, zeta, &z)?;
            Ok(relative_residual(&a, &b))
        });
        rec.observe(r);
    }
    rec.finish()
}

fn check_group_law(
    flow: &OneParameterFlow,
    n: usize,
    samples: usize,
    tol: f64,
    rng: &mut ChaCha8Rng,
) -> IdentityRecord {
    let mut rec = IdentityRecord::new("group law", None, flow.kind_name().to_string(), tol);
    for _ in 0..samples {
        let s = sample_disc(rng, 1.0);
        let t = sample_disc(rng, 1.0);
        let z = sample_polydisc(rng, n, FIBER_RADIUS);
        let lhs = flow.apply(s + t, &z);
        let rhs = flow.apply(s, &flow.apply(t, &z));
        rec.observe(Ok(relative_residual(&lhs, &rhs)));
    }
    rec.finish()
}

/// Samples every recorded identity of `ext`, the exponent sums of every
/// Case-1 filling and the group law of every flow in use. Deterministic in
/// `seed`; failures are reported, never returned as errors.
pub fn verify_cocycle(ext: &ExtendedBundle, samples: usize, tol: f64, seed: u64) -> VerificationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut records: Vec<IdentityRecord> = ext
        .identities
        .iter()
        .map(|c| check_identity(ext, c, samples, tol, &mut rng))
        .collect();

    for f in &ext.fillings {
        let what = if f.sub == 0 {
            String::new()
        } else {
            format!(", sub-hole {}", f.sub)
        };
        let cousin = &f.extension.cousin;
        for (region, target) in [(RegionKind::Omega, 0.0), (RegionKind::OmegaPrime, -1.0)] {
            let mut rec = IdentityRecord::new(
                "exponent sum",
                Some(f.site),
                format!("{region}{what}"),
                EXPONENT_TOL,
            );
            for _ in 0..samples {
                let w = sample_region(&mut rng, region, REGION_MARGIN);
                let r = cousin
                    .lplus
                    .eval(w)
                    .and_then(|a| Ok(a + cousin.lminus.eval(w)?))
                    .map(|s| (s - target).norm())
                    .map_err(ExtensionError::from);
                rec.observe(r);
            }
            records.push(rec.finish());
        }
    }

    let mut flows: Vec<&OneParameterFlow> = Vec::new();
    for f in ext.transitions.iter().flat_map(|t| t.word.flows()) {
        if !flows.contains(&f) {
            flows.push(f);
        }
    }
    for (i, f) in flows.into_iter().enumerate() {
        let mut rec = check_group_law(f, ext.dimension, samples, tol, &mut rng);
        rec.location = format!("flow {} ({})", i + 1, f.kind_name());
        records.push(rec);
    }

    let mut report = VerificationReport {
        seed,
        samples,
        tolerance: tol,
        exponent_tolerance: EXPONENT_TOL,
        pass: false,
        max_residual: 0.0,
        out_of_scope: OUT_OF_SCOPE.iter().map(|s| s.to_string()).collect(),
        outer_convention: OUTER_CONVENTION.to_string(),
        sites: ext.sites.clone(),
        records,
    };
    report.refresh();
    report
}

/// Compares the `Λ+ → Λ-` transitions of `ext` with the input gap words
/// (exact equality of the stored words).
pub fn check_restriction(spec: &BundleSpec, ext: &ExtendedBundle) -> IdentityRecord {
    let got = ext.restriction();
    let mut rec = IdentityRecord::new("restriction", None, "Lambda".into(), 0.0);
    rec.samples = spec.gap_words.len();
    let same = got == spec.gap_words;
    rec.max_residual = if same { 0.0 } else { f64::INFINITY };
    rec.pass = same;
    rec
}
