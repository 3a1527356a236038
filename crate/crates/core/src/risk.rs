//! Rule-based risk assessment over a datasheet.
//!
//! Rules look at what a datasheet says and at what it leaves out: an absent
//! demographic distribution is itself a sample-bias risk. Aggregate levels
//! are computed from the fired items; authored risk levels are never
//! overridden, only compared.

use std::fmt;

use chrono::{Months, NaiveDate};
use serde::{Serialize, Serializer};

use crate::model::{Datasheet, FractionMap};
use crate::vocab::{BiasCategory, LegalRiskTier, Likelihood, RiskLevel, Vocabulary};

/// Non-bias risk kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DataRiskKind {
    Missingness,
    Staleness,
    Reidentification,
    Incompleteness,
    /// Authored risk level disagrees with the computed one.
    DeclarationMismatch,
}

impl DataRiskKind {
    pub fn token(self) -> &'static str {
        match self {
            DataRiskKind::Missingness => "missingness",
            DataRiskKind::Staleness => "staleness",
            DataRiskKind::Reidentification => "reidentification",
            DataRiskKind::Incompleteness => "incompleteness",
            DataRiskKind::DeclarationMismatch => "declaration-mismatch",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RiskCategory {
    Bias(BiasCategory),
    Data(DataRiskKind),
}

impl RiskCategory {
    pub fn token(self) -> &'static str {
        match self {
            RiskCategory::Bias(b) => b.token(),
            RiskCategory::Data(d) => d.token(),
        }
    }
}

impl fmt::Display for RiskCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RiskCategory::Bias(b) => write!(f, "{b} bias"),
            RiskCategory::Data(d) => f.write_str(d.token()),
        }
    }
}

impl Serialize for RiskCategory {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.token())
    }
}

pub const B_SAMPLE_MISSING: &str = "B-SAMPLE-MISSING";
pub const B_DATADRIVEN_IMBALANCE: &str = "B-DATADRIVEN-IMBALANCE";
pub const B_TEMPORAL_STALE: &str = "B-TEMPORAL-STALE";
pub const B_ANNOTATOR_UNKNOWN: &str = "B-ANNOTATOR-UNKNOWN";
pub const B_DECLARED: &str = "B-DECLARED";
pub const D_REIDENT: &str = "D-REIDENT";
pub const D_INCOMPLETE: &str = "D-INCOMPLETE";
pub const D_FRACTION_GAP: &str = "D-FRACTION-GAP";
pub const D_DECLARED_MISMATCH: &str = "D-DECLARED-MISMATCH";

/// Prefix of a trigger that fired because a field is unpopulated.
pub const ABSENT_PREFIX: &str = "absent:";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RiskItem {
    pub rule_id: &'static str,
    pub category: RiskCategory,
    pub likelihood: Likelihood,
    pub severity: RiskLevel,
    /// A registry path, or `absent:<path>`.
    pub trigger: String,
}

impl RiskItem {
    /// The registry path named by the trigger, without any `absent:` marker.
    pub fn trigger_path(&self) -> &str {
        self.trigger
            .strip_prefix(ABSENT_PREFIX)
            .unwrap_or(&self.trigger)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RiskAssessment {
    pub reference_date: String,
    pub generic_level: RiskLevel,
    pub legal_level: LegalRiskTier,
    pub items: Vec<RiskItem>,
    pub mitigations: Vec<String>,
    pub derived_prohibitions: Vec<String>,
}

impl RiskAssessment {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("assessment serializes")
    }

    pub fn fired(&self, rule_id: &str) -> bool {
        self.items.iter().any(|i| i.rule_id == rule_id)
    }
}

/// Thresholds used by the rules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiskConfig {
    /// A distribution whose largest share exceeds this is imbalanced.
    pub imbalance_max_share: f64,
    /// Data last updated (or ending) more than this many years before the
    /// reference date is stale.
    pub staleness_years: u32,
    /// A distribution summing below this leaves too much undocumented.
    pub fraction_gap_min_sum: f64,
}

impl Default for RiskConfig {
    fn default() -> Self {
        RiskConfig {
            imbalance_max_share: 0.8,
            staleness_years: 5,
            fraction_gap_min_sum: 0.9,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RiskRuleDescriptor {
    pub rule_id: &'static str,
    pub category: &'static str,
    pub condition: &'static str,
    /// `None` when the likelihood is taken from the datasheet.
    pub likelihood: Option<Likelihood>,
    /// `None` when the severity is derived from the likelihood.
    pub severity: Option<RiskLevel>,
    pub mitigation: &'static str,
    pub derived_prohibition: Option<&'static str>,
}

const MITIGATE_SAMPLE: &str =
    "assess representativeness for the undocumented demographic attributes before use";
const MITIGATE_IMBALANCE: &str =
    "rebalance or reweight over-represented groups and evaluate per-group performance";
const MITIGATE_STALE: &str = "verify the data still reflects current clinical patterns before use";
const MITIGATE_ANNOTATOR: &str =
    "document the labelling process and audit annotations for annotator bias";
const MITIGATE_DECLARED: &str =
    "apply the suggested bias mitigation methods for declared bias risks";
const MITIGATE_REIDENT: &str =
    "assess re-identification risk and apply appropriate anonymisation before reuse";
const MITIGATE_INCOMPLETE: &str = "assess impact of missing elements before reuse";
const MITIGATE_GAP: &str = "document the undocumented share of each demographic distribution";
const MITIGATE_MISMATCH: &str = "reconcile the declared risk levels with the computed assessment";

pub const PROHIBIT_PUBLIC_REDISTRIBUTION: &str = "no public redistribution";

const CATALOG: &[RiskRuleDescriptor] = &[
    RiskRuleDescriptor {
        rule_id: B_SAMPLE_MISSING,
        category: "sample",
        condition: "any of demographics.age_distribution, gender_distribution, ethnicity_distribution is absent (one item per absent field)",
        likelihood: Some(Likelihood::Unknown),
        severity: Some(RiskLevel::High),
        mitigation: MITIGATE_SAMPLE,
        derived_prohibition: None,
    },
    RiskRuleDescriptor {
        rule_id: B_DATADRIVEN_IMBALANCE,
        category: "data-driven",
        condition: "a populated demographic distribution has a largest share above the imbalance threshold (0.8)",
        likelihood: Some(Likelihood::High),
        severity: Some(RiskLevel::Medium),
        mitigation: MITIGATE_IMBALANCE,
        derived_prohibition: None,
    },
    RiskRuleDescriptor {
        rule_id: B_TEMPORAL_STALE,
        category: "temporal",
        condition: "temporal.last_updated or temporal.coverage_end lies more than the staleness threshold (5 years) before the reference date",
        likelihood: Some(Likelihood::Medium),
        severity: Some(RiskLevel::Medium),
        mitigation: MITIGATE_STALE,
        derived_prohibition: None,
    },
    RiskRuleDescriptor {
        rule_id: B_ANNOTATOR_UNKNOWN,
        category: "annotator",
        condition: "characteristics.media_type is populated and source.provenance does not describe labelling or annotation",
        likelihood: Some(Likelihood::Unknown),
        severity: Some(RiskLevel::High),
        mitigation: MITIGATE_ANNOTATOR,
        derived_prohibition: None,
    },
    RiskRuleDescriptor {
        rule_id: B_DECLARED,
        category: "declared bias category",
        condition: "demographics.bias_likelihoods declares a category at medium likelihood or above, or unknown (one item per category)",
        likelihood: None,
        severity: None,
        mitigation: MITIGATE_DECLARED,
        derived_prohibition: None,
    },
    RiskRuleDescriptor {
        rule_id: D_REIDENT,
        category: "reidentification",
        condition: "contains_personal_data = true and anonymization_techniques is absent or reidentification_risk is high, very-high, unknown or absent",
        likelihood: None,
        severity: Some(RiskLevel::High),
        mitigation: MITIGATE_REIDENT,
        derived_prohibition: Some(PROHIBIT_PUBLIC_REDISTRIBUTION),
    },
    RiskRuleDescriptor {
        rule_id: D_INCOMPLETE,
        category: "incompleteness",
        condition: "characteristics.incomplete = true",
        likelihood: Some(Likelihood::High),
        severity: Some(RiskLevel::Medium),
        mitigation: MITIGATE_INCOMPLETE,
        derived_prohibition: None,
    },
    RiskRuleDescriptor {
        rule_id: D_FRACTION_GAP,
        category: "missingness",
        condition: "a populated demographic distribution sums below the documentation threshold (0.9)",
        likelihood: Some(Likelihood::Medium),
        severity: Some(RiskLevel::Medium),
        mitigation: MITIGATE_GAP,
        derived_prohibition: None,
    },
    RiskRuleDescriptor {
        rule_id: D_DECLARED_MISMATCH,
        category: "declaration-mismatch",
        condition: "risk_compliance.generic_risk_level or legal_risk_level is populated and differs from the computed level",
        likelihood: Some(Likelihood::Medium),
        severity: Some(RiskLevel::Low),
        mitigation: MITIGATE_MISMATCH,
        derived_prohibition: None,
    },
];

/// Every rule `assess` applies, in application order.
pub fn rule_catalog() -> &'static [RiskRuleDescriptor] {
    CATALOG
}

fn descriptor(rule_id: &str) -> &'static RiskRuleDescriptor {
    CATALOG
        .iter()
        .find(|r| r.rule_id == rule_id)
        .expect("rule id is in the catalog")
}

/// Severity implied by a likelihood. Unknown counts as high.
pub fn severity_for(likelihood: Likelihood) -> RiskLevel {
    match likelihood {
        Likelihood::VeryLow | Likelihood::Low => RiskLevel::Low,
        Likelihood::Medium => RiskLevel::Medium,
        Likelihood::High | Likelihood::VeryHigh | Likelihood::Unknown => RiskLevel::High,
    }
}

const DISTRIBUTIONS: [&str; 3] = [
    "demographics.age_distribution",
    "demographics.gender_distribution",
    "demographics.ethnicity_distribution",
];

fn distributions(ds: &Datasheet) -> [(&'static str, Option<&FractionMap>); 3] {
    let d = ds.demographics();
    [
        (DISTRIBUTIONS[0], d.age_distribution.as_ref()),
        (DISTRIBUTIONS[1], d.gender_distribution.as_ref()),
        (DISTRIBUTIONS[2], d.ethnicity_distribution.as_ref()),
    ]
}

fn item(
    rule_id: &'static str,
    category: RiskCategory,
    likelihood: Likelihood,
    severity: RiskLevel,
    trigger: impl Into<String>,
) -> RiskItem {
    RiskItem {
        rule_id,
        category,
        likelihood,
        severity,
        trigger: trigger.into(),
    }
}

fn absent(path: &str) -> String {
    format!("{ABSENT_PREFIX}{path}")
}

fn is_stale(date: NaiveDate, reference: NaiveDate, years: u32) -> bool {
    match reference.checked_sub_months(Months::new(years * 12)) {
        Some(cutoff) => date < cutoff,
        None => false,
    }
}

fn describes_labelling(provenance: &str) -> bool {
    let p = provenance.to_lowercase();
    p.contains("label") || p.contains("annotat")
}

fn content_items(ds: &Datasheet, reference: NaiveDate, config: &RiskConfig) -> Vec<RiskItem> {
    let mut items = Vec::new();
    let dists = distributions(ds);

    for (path, dist) in dists {
        if dist.is_none() {
            items.push(item(
                B_SAMPLE_MISSING,
                RiskCategory::Bias(BiasCategory::Sample),
                Likelihood::Unknown,
                RiskLevel::High,
                absent(path),
            ));
        }
    }

    for (path, dist) in dists {
        if dist.is_some_and(|m| m.max_share() > config.imbalance_max_share) {
            items.push(item(
                B_DATADRIVEN_IMBALANCE,
                RiskCategory::Bias(BiasCategory::DataDriven),
                Likelihood::High,
                RiskLevel::Medium,
                path,
            ));
        }
    }

    let t = ds.temporal();
    let stale_trigger = if t
        .last_updated
        .is_some_and(|d| is_stale(d, reference, config.staleness_years))
    {
        Some("temporal.last_updated")
    } else if t
        .coverage_end
        .is_some_and(|d| is_stale(d, reference, config.staleness_years))
    {
        Some("temporal.coverage_end")
    } else {
        None
    };
    if let Some(trigger) = stale_trigger {
        items.push(item(
            B_TEMPORAL_STALE,
            RiskCategory::Bias(BiasCategory::Temporal),
            Likelihood::Medium,
            RiskLevel::Medium,
            trigger,
        ));
    }

    if ds.characteristics().media_type.is_some() {
        let trigger = match &ds.source().provenance {
            None => Some(absent("source.provenance")),
            Some(p) if !describes_labelling(p) => Some("source.provenance".to_string()),
            Some(_) => None,
        };
        if let Some(trigger) = trigger {
            items.push(item(
                B_ANNOTATOR_UNKNOWN,
                RiskCategory::Bias(BiasCategory::Annotator),
                Likelihood::Unknown,
                RiskLevel::High,
                trigger,
            ));
        }
    }

    if let Some(declared) = &ds.demographics().bias_likelihoods {
        for (category, likelihood) in declared {
            if *likelihood >= Likelihood::Medium {
                items.push(item(
                    B_DECLARED,
                    RiskCategory::Bias(*category),
                    *likelihood,
                    severity_for(*likelihood),
                    "demographics.bias_likelihoods",
                ));
            }
        }
    }

    let pd = ds.personal_data();
    if pd.contains_personal_data == Some(true) {
        let trigger = if pd.anonymization_techniques.is_none() {
            Some(absent("personal_data.anonymization_techniques"))
        } else {
            match pd.reidentification_risk {
                None => Some(absent("personal_data.reidentification_risk")),
                Some(l) if l.is_elevated() => Some("personal_data.reidentification_risk".into()),
                Some(_) => None,
            }
        };
        if let Some(trigger) = trigger {
            items.push(item(
                D_REIDENT,
                RiskCategory::Data(DataRiskKind::Reidentification),
                pd.reidentification_risk.unwrap_or(Likelihood::Unknown),
                RiskLevel::High,
                trigger,
            ));
        }
    }

    if ds.characteristics().incomplete == Some(true) {
        items.push(item(
            D_INCOMPLETE,
            RiskCategory::Data(DataRiskKind::Incompleteness),
            Likelihood::High,
            RiskLevel::Medium,
            "characteristics.incomplete",
        ));
    }

    for (path, dist) in dists {
        if dist.is_some_and(|m| m.sum() < config.fraction_gap_min_sum) {
            items.push(item(
                D_FRACTION_GAP,
                RiskCategory::Data(DataRiskKind::Missingness),
                Likelihood::Medium,
                RiskLevel::Medium,
                path,
            ));
        }
    }
    items
}

/// Whether the datasheet may describe personal data. Absence is treated as
/// "may".
pub fn personal_data_present(ds: &Datasheet) -> bool {
    ds.personal_data().contains_personal_data != Some(false)
}

/// Generic level is the highest item severity (low when there are none).
/// Legal tier is high when re-identification fired or any item concerns a
/// personal-data field; limited when personal data is present regardless;
/// minimal otherwise. Unacceptable is never assigned automatically.
pub fn aggregate(items: &[RiskItem], personal_data: bool) -> (RiskLevel, LegalRiskTier) {
    let generic = items
        .iter()
        .map(|i| i.severity)
        .max()
        .unwrap_or(RiskLevel::Low);
    let touches_personal = items
        .iter()
        .any(|i| i.rule_id == D_REIDENT || i.trigger_path().starts_with("personal_data."));
    let legal = if touches_personal {
        LegalRiskTier::High
    } else if personal_data {
        LegalRiskTier::Limited
    } else {
        LegalRiskTier::Minimal
    };
    (generic, legal)
}

fn dedup(values: impl IntoIterator<Item = &'static str>) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for v in values {
        if !out.iter().any(|o| o == v) {
            out.push(v.to_string());
        }
    }
    out
}

pub fn assess(ds: &Datasheet, reference_date: NaiveDate) -> RiskAssessment {
    assess_with(ds, reference_date, &RiskConfig::default())
}

pub fn assess_with(
    ds: &Datasheet,
    reference_date: NaiveDate,
    config: &RiskConfig,
) -> RiskAssessment {
    let mut items = content_items(ds, reference_date, config);
    let personal = personal_data_present(ds);
    let (generic, legal) = aggregate(&items, personal);

    let declared = ds.risk_compliance();
    if declared.generic_risk_level.is_some_and(|d| d != generic) {
        items.push(item(
            D_DECLARED_MISMATCH,
            RiskCategory::Data(DataRiskKind::DeclarationMismatch),
            Likelihood::Medium,
            RiskLevel::Low,
            "risk_compliance.generic_risk_level",
        ));
    }
    if declared.legal_risk_level.is_some_and(|d| d != legal) {
        items.push(item(
            D_DECLARED_MISMATCH,
            RiskCategory::Data(DataRiskKind::DeclarationMismatch),
            Likelihood::Medium,
            RiskLevel::Low,
            "risk_compliance.legal_risk_level",
        ));
    }
    let (generic_level, legal_level) = aggregate(&items, personal);

    let mitigations = dedup(items.iter().map(|i| descriptor(i.rule_id).mitigation));
    let derived_prohibitions = dedup(
        items
            .iter()
            .filter_map(|i| descriptor(i.rule_id).derived_prohibition),
    );
    RiskAssessment {
        reference_date: crate::date::format_date(reference_date),
        generic_level,
        legal_level,
        items,
        mitigations,
        derived_prohibitions,
    }
}

/// Markdown reference of the rule catalog.
pub fn render_rule_reference() -> String {
    let cfg = RiskConfig::default();
    let mut out = String::from("# Risk rule reference\n\n");
    out.push_str(&format!(
        "Thresholds: imbalance max share {}, staleness {} years, fraction-gap minimum sum {}.\n\n",
        cfg.imbalance_max_share, cfg.staleness_years, cfg.fraction_gap_min_sum
    ));
    for r in CATALOG {
        out.push_str(&format!("## {}\n\n", r.rule_id));
        out.push_str(&format!("- category: {}\n", r.category));
        out.push_str(&format!("- condition: {}\n", r.condition));
        out.push_str(&format!(
            "- likelihood: {}\n",
            r.likelihood.map_or("from datasheet", |l| l.token())
        ));
        out.push_str(&format!(
            "- severity: {}\n",
            r.severity.map_or("from likelihood", |s| s.token())
        ));
        out.push_str(&format!("- mitigation: {}\n", r.mitigation));
        if let Some(p) = r.derived_prohibition {
            out.push_str(&format!("- derived prohibition: {p}\n"));
        }
        out.push('\n');
    }
    out
}
