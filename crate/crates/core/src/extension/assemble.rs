use std::fmt;

use serde::{Deserialize, Serialize};

use crate::autgroup::{invert_word, recognize_flow, AutomorphismWord, ElementaryAutomorphism};
use crate::geometry::{collar_chart, cousin_solve, ChartMap, DomainSpec, RegionKind, Site};

use super::case1::build_case1;
use super::refine::{split_hole, SubHoleLayout};
use super::{BundleSpec, CaseOneExtension, ExtensionError, ParamWord};

/// Charts of the global cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChartId {
    /// Λ ∩ {Im ζ > −δ}.
    LambdaPlus,
    /// Λ ∩ {Im ζ < δ}.
    LambdaMinus,
    /// Trivial chart over a filled disc (whole hole, or sub-hole `sub` ≥ 1).
    Filling { site: Site, sub: usize },
    /// Upper and lower halves of a refined collar.
    WPlus { site: Site },
    WMinus { site: Site },
}

impl fmt::Display for ChartId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::LambdaPlus => write!(f, "Lambda+"),
            Self::LambdaMinus => write!(f, "Lambda-"),
            Self::Filling { site, sub: 0 } => write!(f, "filling({site})"),
            Self::Filling { site, sub } => write!(f, "filling({site}, sub-hole {sub})"),
            Self::WPlus { site } => write!(f, "W+({site})"),
            Self::WMinus { site } => write!(f, "W-({site})"),
        }
    }
}

/// Which construction step produced a transition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    InputGapWord { band: usize },
    CaseOnePlus,
    CaseOneMinus,
    /// `W±` is a piece of `Λ±`; the transition is the identity.
    CollarInclusion,
    RefinedArc { arc: usize },
    /// Holes with trivial monodromy: `Φ+ = T0⁻¹`, `Φ- = 1`.
    TrivialFilling,
}

/// Transition map from chart `from` into chart `to`: a point `(ζ, z)` of
/// `from` is `(ζ, word(ζ)(z))` in `to`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Transition {
    pub from: ChartId,
    pub to: ChartId,
    pub site: Option<Site>,
    pub word: ParamWord,
    pub provenance: Provenance,
}

/// One step of a path through the cover.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PathStep {
    Forward { transition: usize },
    Backward { transition: usize },
    /// A fixed fiber map, for identities between words.
    Word { word: AutomorphismWord },
}

/// Where an identity is sampled: base points in a region of a chart, or
/// only fiber points when both paths are constant.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SampleDomain {
    Region { chart: ChartMap, region: RegionKind },
    FiberOnly,
}

/// Two paths that must induce the same fiber map.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub site: Option<Site>,
    pub location: String,
    pub domain: SampleDomain,
    pub path_a: Vec<PathStep>,
    pub path_b: Vec<PathStep>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FillingMethod {
    Trivial,
    CaseOne,
    General { sub_holes: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SiteSummary {
    pub site: Site,
    pub method: FillingMethod,
    pub factors: usize,
    pub layout: Option<SubHoleLayout>,
}

/// A Case-1 filling (a whole hole, or sub-hole `sub`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FillingRecord {
    pub site: Site,
    pub sub: usize,
    pub extension: CaseOneExtension,
}

/// The bundle over the whole sphere, as a cover with transitions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtendedBundle {
    pub dimension: usize,
    pub domain: DomainSpec,
    pub transitions: Vec<Transition>,
    pub identities: Vec<IdentityCheck>,
    pub fillings: Vec<FillingRecord>,
    pub sites: Vec<SiteSummary>,
}

/// Largest degree over all elementaries and flows, and the number of factors
/// without a polynomial degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeScan {
    pub elementaries: usize,
    pub max_degree: u32,
    pub over_shears: usize,
}

impl ExtendedBundle {
    /// The `Λ+ → Λ-` transitions, one per band, as constant words.
    pub fn restriction(&self) -> Vec<AutomorphismWord> {
        self.transitions
            .iter()
            .filter(|t| matches!(t.provenance, Provenance::InputGapWord { .. }))
            .map(|t| t.word.eval_at(None).expect("gap words are constant"))
            .collect()
    }

    pub fn degree_scan(&self) -> DegreeScan {
        let steps = self.identities.iter().flat_map(|c| c.path_a.iter().chain(&c.path_b));
        let words = steps.filter_map(|s| match s {
            PathStep::Word { word } => Some(word),
            _ => None,
        });
        let degrees = self
            .transitions
            .iter()
            .flat_map(|t| t.word.degrees())
            .chain(words.flat_map(|w| w.factors().iter().map(ElementaryAutomorphism::degree)));
        let mut scan = DegreeScan {
            elementaries: 0,
            max_degree: 0,
            over_shears: 0,
        };
        for d in degrees {
            scan.elementaries += 1;
            match d {
                Some(d) => scan.max_degree = scan.max_degree.max(d),
                None => scan.over_shears += 1,
            }
        }
        scan
    }
}

struct Builder {
    transitions: Vec<Transition>,
    identities: Vec<IdentityCheck>,
    fillings: Vec<FillingRecord>,
}

impl Builder {
    fn add(&mut self, from: ChartId, to: ChartId, site: Option<Site>, word: ParamWord, provenance: Provenance) -> usize {
        self.transitions.push(Transition {
            from,
            to,
            site,
            word,
            provenance,
        });
        self.transitions.len() - 1
    }

    fn check(
        &mut self,
        name: &str,
        site: Site,
        location: String,
        domain: SampleDomain,
        path_a: Vec<PathStep>,
        path_b: Vec<PathStep>,
    ) {
        self.identities.push(IdentityCheck {
            name: name.to_string(),
            site: Some(site),
            location,
            domain,
            path_a,
            path_b,
        });
    }

    /// Adds `Φ±` of a Case-1 filling into `(upper, lower)` and the two gluing
    /// identities against the transitions `right` (on omega) and `left` (on
    /// omega').
    fn case_one(
        &mut self,
        site: Site,
        sub: usize,
        ext: CaseOneExtension,
        (upper, lower): (ChartId, ChartId),
        (right, left): (usize, usize),
    ) {
        let filling = ChartId::Filling { site, sub };
        let plus = self.add(filling, upper, Some(site), ext.phi_plus.clone(), Provenance::CaseOnePlus);
        let minus = self.add(filling, lower, Some(site), ext.phi_minus.clone(), Provenance::CaseOneMinus);
        let what = if sub == 0 {
            String::new()
        } else {
            format!(", sub-hole {sub}")
        };
        for (name, region, via) in [("(*)", RegionKind::Omega, right), ("(**)", RegionKind::OmegaPrime, left)] {
            self.check(
                name,
                site,
                format!("{region}{what}"),
                SampleDomain::Region {
                    chart: ext.chart,
                    region,
                },
                vec![PathStep::Forward { transition: plus }, PathStep::Forward { transition: via }],
                vec![PathStep::Forward { transition: minus }],
            );
        }
        self.fillings.push(FillingRecord {
            site,
            sub,
            extension: ext,
        });
    }
}

/// Extends the bundle over every hole and over ∞.
///
/// Mismatched factorizations are not rejected here: they surface as failing
/// `factorization` and gluing identities in [`verify_cocycle`](super::verify_cocycle).
pub fn extend_bundle(spec: &BundleSpec) -> Result<ExtendedBundle, ExtensionError> {
    let spec = spec.clone().validated()?;
    let n = spec.dimension;
    let mut b = Builder {
        transitions: Vec::new(),
        identities: Vec::new(),
        fillings: Vec::new(),
    };
    let bands: Vec<usize> = spec
        .gap_words
        .iter()
        .enumerate()
        .map(|(p, g)| {
            b.add(
                ChartId::LambdaPlus,
                ChartId::LambdaMinus,
                None,
                ParamWord::constant(g),
                Provenance::InputGapWord { band: p },
            )
        })
        .collect();

    let mut sites = Vec::new();
    for site in spec.sites() {
        let gluing = spec.gluing(site)?;
        let chart = collar_chart(&spec.domain, site)?;
        let cousin = cousin_solve(&chart);
        let (b0, b1) = spec.site_bands(site);
        let k = gluing.factorization.len();
        b.check(
            "factorization",
            site,
            "monodromy".into(),
            SampleDomain::FiberOnly,
            vec![
                PathStep::Backward { transition: bands[b0] },
                PathStep::Forward { transition: bands[b1] },
            ],
            gluing
                .factorization
                .iter()
                .map(|e| PathStep::Word {
                    word: AutomorphismWord::single(e.clone()),
                })
                .collect(),
        );
        let lambda = (ChartId::LambdaPlus, ChartId::LambdaMinus);
        let (method, layout) = match k {
            0 => {
                let filling = ChartId::Filling { site, sub: 0 };
                let plus = b.add(
                    filling,
                    ChartId::LambdaPlus,
                    Some(site),
                    ParamWord::constant(&invert_word(&gluing.t0)?),
                    Provenance::TrivialFilling,
                );
                let minus = b.add(filling, ChartId::LambdaMinus, Some(site), ParamWord::identity(n), Provenance::TrivialFilling);
                for (name, region, via) in [("(*)", RegionKind::Omega, bands[b0]), ("(**)", RegionKind::OmegaPrime, bands[b1])] {
                    b.check(
                        name,
                        site,
                        region.to_string(),
                        SampleDomain::Region {
                            chart: chart.map,
                            region,
                        },
                        vec![PathStep::Forward { transition: plus }, PathStep::Forward { transition: via }],
                        vec![PathStep::Forward { transition: minus }],
                    );
                }
                (FillingMethod::Trivial, None)
            }
            1 => {
                let flow = recognize_flow(&gluing.factorization[0])?;
                let ext = build_case1(&gluing, &flow, chart.map, &cousin)?;
                b.case_one(site, 0, ext, lambda, (bands[b0], bands[b1]));
                (FillingMethod::CaseOne, None)
            }
            _ => {
                let refined = split_hole(&gluing, chart.map)?;
                let (wp, wm) = (ChartId::WPlus { site }, ChartId::WMinus { site });
                let incl_p = b.add(wp, ChartId::LambdaPlus, Some(site), ParamWord::identity(n), Provenance::CollarInclusion);
                let incl_m = b.add(wm, ChartId::LambdaMinus, Some(site), ParamWord::identity(n), Provenance::CollarInclusion);
                let arcs: Vec<usize> = refined
                    .arcs
                    .iter()
                    .enumerate()
                    .map(|(p, w)| b.add(wp, wm, Some(site), ParamWord::constant(w), Provenance::RefinedArc { arc: p }))
                    .collect();
                // The outermost arcs meet the collar bands.
                for (name, region, band, arc) in [
                    ("collar", RegionKind::Omega, bands[b0], arcs[0]),
                    ("collar", RegionKind::OmegaPrime, bands[b1], arcs[k]),
                ] {
                    b.check(
                        name,
                        site,
                        region.to_string(),
                        SampleDomain::Region {
                            chart: chart.map,
                            region,
                        },
                        vec![PathStep::Forward { transition: incl_p }, PathStep::Forward { transition: band }],
                        vec![PathStep::Forward { transition: arc }, PathStep::Forward { transition: incl_m }],
                    );
                }
                for p in 1..=k {
                    b.check(
                        "telescoping",
                        site,
                        format!("sub-hole {p}"),
                        SampleDomain::FiberOnly,
                        vec![
                            PathStep::Backward { transition: arcs[p - 1] },
                            PathStep::Forward { transition: arcs[p] },
                        ],
                        vec![PathStep::Word {
                            word: AutomorphismWord::single(gluing.factorization[p - 1].clone()),
                        }],
                    );
                }
                for (i, sub) in refined.sub_holes.iter().enumerate() {
                    let p = i + 1;
                    let ext = build_case1(&sub.gluing, &sub.flow, sub.chart, &cousin)?;
                    b.case_one(site, p, ext, (wp, wm), (arcs[p - 1], arcs[p]));
                }
                (FillingMethod::General { sub_holes: k }, Some(refined.layout))
            }
        };
        sites.push(SiteSummary {
            site,
            method,
            factors: k,
            layout,
        });
    }
    Ok(ExtendedBundle {
        dimension: n,
        domain: spec.domain.clone(),
        transitions: b.transitions,
        identities: b.identities,
        fillings: b.fillings,
        sites,
    })
}
