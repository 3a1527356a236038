//! In-memory datasheet: ten typed sections holding 55 optional fields.
//!
//! A [`Datasheet`] is immutable and can only be obtained through
//! [`DatasheetBuilder::build`], which enforces the per-field and ordering
//! invariants. Cross-field consistency rules that a document can violate and
//! still be meaningful (e.g. `incomplete` without `missing_elements`) are left
//! to the validator.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use chrono::NaiveDate;
use thiserror::Error;

use crate::date::format_date;
use crate::registry::{field_registry, ValueType};
use crate::vocab::{
    BiasCategory, LegalRiskTier, Likelihood, MediaType, RiskLevel, SectionId, Sensitivity, VocabId,
    Vocabulary,
};

/// Tolerance on the upper bound of a fraction-map's sum.
pub const FRACTION_SUM_TOLERANCE: f64 = 1e-9;

/// Maximum plausible age in years.
pub const MAX_AGE: u64 = 150;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FractionMapError {
    #[error("share for `{label}` is {value}, outside [0, 1]")]
    OutOfRange { label: String, value: f64 },
    #[error("shares sum to {0}, above 1")]
    SumExceedsOne(f64),
}

/// Label → population share. Shares lie in `[0, 1]` and sum to at most one;
/// any shortfall is the undocumented remainder.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FractionMap(BTreeMap<String, f64>);

impl FractionMap {
    pub fn new<I, K>(entries: I) -> Result<Self, FractionMapError>
    where
        I: IntoIterator<Item = (K, f64)>,
        K: Into<String>,
    {
        let mut map = BTreeMap::new();
        for (label, value) in entries {
            let label = label.into();
            if !(0.0..=1.0).contains(&value) {
                return Err(FractionMapError::OutOfRange { label, value });
            }
            map.insert(label, value);
        }
        let sum: f64 = map.values().sum();
        if sum > 1.0 + FRACTION_SUM_TOLERANCE {
            return Err(FractionMapError::SumExceedsOne(sum));
        }
        Ok(FractionMap(map))
    }

    pub fn get(&self, label: &str) -> Option<f64> {
        self.0.get(label).copied()
    }

    /// Entries in label order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.0.values().sum()
    }

    /// Largest single share, 0 for an empty map.
    pub fn max_share(&self) -> f64 {
        self.0.values().copied().fold(0.0, f64::max)
    }
}

/// A populated value of any vocabulary-bound field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VocabValue {
    Likelihood(Likelihood),
    RiskLevel(RiskLevel),
    LegalRiskTier(LegalRiskTier),
    Sensitivity(Sensitivity),
    MediaType(MediaType),
}

impl VocabValue {
    pub fn vocabulary(self) -> VocabId {
        match self {
            VocabValue::Likelihood(_) => VocabId::Likelihood,
            VocabValue::RiskLevel(_) => VocabId::RiskLevel,
            VocabValue::LegalRiskTier(_) => VocabId::LegalRiskTier,
            VocabValue::Sensitivity(_) => VocabId::Sensitivity,
            VocabValue::MediaType(_) => VocabId::MediaType,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            VocabValue::Likelihood(v) => v.token(),
            VocabValue::RiskLevel(v) => v.token(),
            VocabValue::LegalRiskTier(v) => v.token(),
            VocabValue::Sensitivity(v) => v.token(),
            VocabValue::MediaType(v) => v.token(),
        }
    }

    /// Decodes `token` in the given vocabulary.
    pub fn decode(vocab: VocabId, token: &str) -> Result<Self, crate::vocab::VocabError> {
        Ok(match vocab {
            VocabId::Likelihood => VocabValue::Likelihood(Likelihood::from_token(token)?),
            VocabId::RiskLevel => VocabValue::RiskLevel(RiskLevel::from_token(token)?),
            VocabId::LegalRiskTier => VocabValue::LegalRiskTier(LegalRiskTier::from_token(token)?),
            VocabId::Sensitivity => VocabValue::Sensitivity(Sensitivity::from_token(token)?),
            VocabId::MediaType => VocabValue::MediaType(MediaType::from_token(token)?),
            VocabId::BiasCategory | VocabId::SectionId => {
                return Err(crate::vocab::VocabError {
                    vocabulary: vocab,
                    token: token.to_string(),
                    expected: "no field binds this vocabulary".into(),
                })
            }
        })
    }
}

/// Value of a single populated field.
#[derive(Debug, Clone, PartialEq)]
pub enum FieldValue {
    Text(String),
    TextList(Vec<String>),
    Date(NaiveDate),
    Integer(u64),
    Boolean(bool),
    FractionMap(FractionMap),
    Vocab(VocabValue),
    BiasLikelihoods(BTreeMap<BiasCategory, Likelihood>),
}

impl FieldValue {
    /// Whether the value has the shape `value_type` demands.
    pub fn conforms_to(&self, value_type: ValueType) -> bool {
        match (self, value_type) {
            (FieldValue::Text(_), ValueType::Text)
            | (FieldValue::TextList(_), ValueType::TextList)
            | (FieldValue::Date(_), ValueType::Date)
            | (FieldValue::Integer(_), ValueType::Integer)
            | (FieldValue::Boolean(_), ValueType::Boolean)
            | (FieldValue::FractionMap(_), ValueType::FractionMap)
            | (FieldValue::BiasLikelihoods(_), ValueType::Structured) => true,
            (FieldValue::Vocab(v), ValueType::Vocab(id)) => v.vocabulary() == id,
            _ => false,
        }
    }
}

impl fmt::Display for FieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldValue::Text(s) => f.write_str(s),
            FieldValue::TextList(items) if items.is_empty() => f.write_str("(none)"),
            FieldValue::TextList(items) => f.write_str(&items.join("; ")),
            FieldValue::Date(d) => f.write_str(&format_date(*d)),
            FieldValue::Integer(n) => write!(f, "{n}"),
            FieldValue::Boolean(b) => write!(f, "{}", if *b { "yes" } else { "no" }),
            FieldValue::FractionMap(m) if m.is_empty() => f.write_str("(none)"),
            FieldValue::FractionMap(m) => {
                let parts: Vec<_> = m.iter().map(|(k, v)| format!("{k} {v}")).collect();
                f.write_str(&parts.join(", "))
            }
            FieldValue::Vocab(v) => f.write_str(v.token()),
            FieldValue::BiasLikelihoods(m) if m.is_empty() => f.write_str("(none)"),
            FieldValue::BiasLikelihoods(m) => {
                let parts: Vec<_> = m.iter().map(|(k, v)| format!("{k}: {v}")).collect();
                f.write_str(&parts.join(", "))
            }
        }
    }
}

/// Conversion between a section field's Rust type and [`FieldValue`].
pub trait FieldType: Sized {
    fn into_value(self) -> FieldValue;
    fn from_value(value: FieldValue) -> Option<Self>;
}

macro_rules! plain_field_type {
    ($ty:ty => $variant:ident) => {
        impl FieldType for $ty {
            fn into_value(self) -> FieldValue {
                FieldValue::$variant(self)
            }
            fn from_value(value: FieldValue) -> Option<Self> {
                match value {
                    FieldValue::$variant(v) => Some(v),
                    _ => None,
                }
            }
        }
    };
}

plain_field_type!(String => Text);
plain_field_type!(Vec<String> => TextList);
plain_field_type!(NaiveDate => Date);
plain_field_type!(u64 => Integer);
plain_field_type!(bool => Boolean);
plain_field_type!(FractionMap => FractionMap);
plain_field_type!(BTreeMap<BiasCategory, Likelihood> => BiasLikelihoods);

macro_rules! vocab_field_type {
    ($ty:ident) => {
        impl FieldType for $ty {
            fn into_value(self) -> FieldValue {
                FieldValue::Vocab(VocabValue::$ty(self))
            }
            fn from_value(value: FieldValue) -> Option<Self> {
                match value {
                    FieldValue::Vocab(VocabValue::$ty(v)) => Some(v),
                    _ => None,
                }
            }
        }
    };
}

vocab_field_type!(Likelihood);
vocab_field_type!(RiskLevel);
vocab_field_type!(LegalRiskTier);
vocab_field_type!(Sensitivity);
vocab_field_type!(MediaType);

#[derive(Debug, Clone, PartialEq, Default)]
pub struct MetadataSection {
    pub title: Option<String>,
    pub version: Option<String>,
    pub publisher: Option<String>,
    pub license: Option<String>,
    pub identifier: Option<String>,
    pub contact: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PurposeSection {
    pub creation_purpose: Option<String>,
    pub intended_benefit: Option<String>,
    pub beneficiaries: Option<Vec<String>>,
    pub intended_uses: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SourceSection {
    pub source_description: Option<String>,
    pub provenance: Option<String>,
    pub ethical_approval: Option<bool>,
    pub approving_body: Option<String>,
    pub funding_sources: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TemporalSection {
    pub coverage_start: Option<NaiveDate>,
    pub coverage_end: Option<NaiveDate>,
    pub last_updated: Option<NaiveDate>,
    pub update_frequency: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct DemographicSection {
    pub age_min: Option<u64>,
    pub age_max: Option<u64>,
    pub age_distribution: Option<FractionMap>,
    pub gender_distribution: Option<FractionMap>,
    pub ethnicity_distribution: Option<FractionMap>,
    pub geographic_origin: Option<Vec<String>>,
    pub socioeconomic_notes: Option<String>,
    pub underrepresented_groups: Option<Vec<String>>,
    pub bias_likelihoods: Option<BTreeMap<BiasCategory, Likelihood>>,
    pub demographic_notes: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CharacteristicsSection {
    pub media_type: Option<MediaType>,
    pub record_count: Option<u64>,
    pub feature_description: Option<String>,
    pub incomplete: Option<bool>,
    pub missing_elements: Option<Vec<String>>,
    pub missing_reasons: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct BiasMitigationSection {
    pub applied_methods: Option<Vec<String>>,
    pub suggested_methods: Option<Vec<String>>,
    pub residual_bias_notes: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PersonalDataSection {
    pub contains_personal_data: Option<bool>,
    pub personal_categories: Option<Vec<String>>,
    pub special_categories: Option<Vec<String>>,
    pub sensitivity: Option<Sensitivity>,
    pub anonymization_techniques: Option<Vec<String>>,
    pub reidentification_risk: Option<Likelihood>,
    pub legal_basis: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RiskComplianceSection {
    pub generic_risk_level: Option<RiskLevel>,
    pub legal_risk_level: Option<LegalRiskTier>,
    pub jurisdiction: Option<Vec<String>>,
    pub applicable_laws: Option<Vec<String>>,
    pub impact_assessments: Option<Vec<String>>,
    pub suggested_mitigations: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct UsageRestrictionSection {
    pub access_restrictions: Option<Vec<String>>,
    pub permissions: Option<Vec<String>>,
    pub prohibitions: Option<Vec<String>>,
    pub obligations: Option<Vec<String>>,
}

/// A validated datasheet.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Datasheet {
    inner: DatasheetBuilder,
}

/// Mutable staging area for a [`Datasheet`]. Sections are plain data;
/// invariants are checked by [`DatasheetBuilder::build`].
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DatasheetBuilder {
    pub metadata: MetadataSection,
    pub purpose: PurposeSection,
    pub source: SourceSection,
    pub temporal: TemporalSection,
    pub demographics: DemographicSection,
    pub characteristics: CharacteristicsSection,
    pub bias_mitigation: BiasMitigationSection,
    pub personal_data: PersonalDataSection,
    pub risk_compliance: RiskComplianceSection,
    pub usage_restriction: UsageRestrictionSection,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("unknown field path `{0}`")]
    UnknownPath(String),
    #[error("`{path}` expects a {expected} value")]
    TypeMismatch { path: String, expected: ValueType },
}

/// A construction invariant broken by a builder's contents.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{path}: {message}")]
pub struct InvariantViolation {
    pub path: String,
    pub message: String,
}

macro_rules! field_table {
    ($($path:literal => $section:ident . $field:ident),* $(,)?) => {
        /// Paths handled by the accessors, in registry order.
        #[cfg(test)]
        const TABLE_PATHS: &[&str] = &[$($path),*];

        impl DatasheetBuilder {
            fn value_at(&self, path: &str) -> Result<Option<FieldValue>, ModelError> {
                match path {
                    $($path => Ok(self.$section.$field.clone().map(FieldType::into_value)),)*
                    _ => Err(ModelError::UnknownPath(path.to_string())),
                }
            }

            fn is_populated_at(&self, path: &str) -> Result<bool, ModelError> {
                match path {
                    $($path => Ok(self.$section.$field.is_some()),)*
                    _ => Err(ModelError::UnknownPath(path.to_string())),
                }
            }

            /// Populates `path` with `value` after checking its type.
            pub fn set(&mut self, path: &str, value: FieldValue) -> Result<&mut Self, ModelError> {
                let spec = field_registry()
                    .get(path)
                    .ok_or_else(|| ModelError::UnknownPath(path.to_string()))?;
                let mismatch = || ModelError::TypeMismatch {
                    path: path.to_string(),
                    expected: spec.value_type,
                };
                if !value.conforms_to(spec.value_type) {
                    return Err(mismatch());
                }
                match path {
                    $($path => {
                        self.$section.$field = Some(FieldType::from_value(value).ok_or_else(mismatch)?);
                    })*
                    _ => return Err(ModelError::UnknownPath(path.to_string())),
                }
                Ok(self)
            }

            /// Unpopulates `path`.
            pub fn clear(&mut self, path: &str) -> Result<&mut Self, ModelError> {
                match path {
                    $($path => self.$section.$field = None,)*
                    _ => return Err(ModelError::UnknownPath(path.to_string())),
                }
                Ok(self)
            }
        }
    };
}

field_table! {
    "metadata.title" => metadata.title,
    "metadata.version" => metadata.version,
    "metadata.publisher" => metadata.publisher,
    "metadata.license" => metadata.license,
    "metadata.identifier" => metadata.identifier,
    "metadata.contact" => metadata.contact,
    "purpose.creation_purpose" => purpose.creation_purpose,
    "purpose.intended_benefit" => purpose.intended_benefit,
    "purpose.beneficiaries" => purpose.beneficiaries,
    "purpose.intended_uses" => purpose.intended_uses,
    "source.source_description" => source.source_description,
    "source.provenance" => source.provenance,
    "source.ethical_approval" => source.ethical_approval,
    "source.approving_body" => source.approving_body,
    "source.funding_sources" => source.funding_sources,
    "temporal.coverage_start" => temporal.coverage_start,
    "temporal.coverage_end" => temporal.coverage_end,
    "temporal.last_updated" => temporal.last_updated,
    "temporal.update_frequency" => temporal.update_frequency,
    "demographics.age_min" => demographics.age_min,
    "demographics.age_max" => demographics.age_max,
    "demographics.age_distribution" => demographics.age_distribution,
    "demographics.gender_distribution" => demographics.gender_distribution,
    "demographics.ethnicity_distribution" => demographics.ethnicity_distribution,
    "demographics.geographic_origin" => demographics.geographic_origin,
    "demographics.socioeconomic_notes" => demographics.socioeconomic_notes,
    "demographics.underrepresented_groups" => demographics.underrepresented_groups,
    "demographics.bias_likelihoods" => demographics.bias_likelihoods,
    "demographics.demographic_notes" => demographics.demographic_notes,
    "characteristics.media_type" => characteristics.media_type,
    "characteristics.record_count" => characteristics.record_count,
    "characteristics.feature_description" => characteristics.feature_description,
    "characteristics.incomplete" => characteristics.incomplete,
    "characteristics.missing_elements" => characteristics.missing_elements,
    "characteristics.missing_reasons" => characteristics.missing_reasons,
    "bias_mitigation.applied_methods" => bias_mitigation.applied_methods,
    "bias_mitigation.suggested_methods" => bias_mitigation.suggested_methods,
    "bias_mitigation.residual_bias_notes" => bias_mitigation.residual_bias_notes,
    "personal_data.contains_personal_data" => personal_data.contains_personal_data,
    "personal_data.personal_categories" => personal_data.personal_categories,
    "personal_data.special_categories" => personal_data.special_categories,
    "personal_data.sensitivity" => personal_data.sensitivity,
    "personal_data.anonymization_techniques" => personal_data.anonymization_techniques,
    "personal_data.reidentification_risk" => personal_data.reidentification_risk,
    "personal_data.legal_basis" => personal_data.legal_basis,
    "risk_compliance.generic_risk_level" => risk_compliance.generic_risk_level,
    "risk_compliance.legal_risk_level" => risk_compliance.legal_risk_level,
    "risk_compliance.jurisdiction" => risk_compliance.jurisdiction,
    "risk_compliance.applicable_laws" => risk_compliance.applicable_laws,
    "risk_compliance.impact_assessments" => risk_compliance.impact_assessments,
    "risk_compliance.suggested_mitigations" => risk_compliance.suggested_mitigations,
    "usage_restriction.access_restrictions" => usage_restriction.access_restrictions,
    "usage_restriction.permissions" => usage_restriction.permissions,
    "usage_restriction.prohibitions" => usage_restriction.prohibitions,
    "usage_restriction.obligations" => usage_restriction.obligations,
}

fn is_version_token(v: &str) -> bool {
    let dotted_numeric = |s: &str| {
        !s.is_empty()
            && s.split('.')
                .all(|p| !p.is_empty() && p.bytes().all(|b| b.is_ascii_digit()))
    };
    let v = v.strip_prefix('v').unwrap_or(v);
    dotted_numeric(v) || crate::date::parse_date(v).is_ok()
}

fn check_unique(path: &str, list: &Option<Vec<String>>, out: &mut Vec<InvariantViolation>) {
    if let Some(items) = list {
        let mut seen = BTreeSet::new();
        for item in items {
            if !seen.insert(item.as_str()) {
                out.push(InvariantViolation {
                    path: path.to_string(),
                    message: format!("duplicate entry `{item}`"),
                });
                return;
            }
        }
    }
}

impl DatasheetBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Checks every construction invariant, reporting all violations.
    pub fn violations(&self) -> Vec<InvariantViolation> {
        let mut out = Vec::new();
        let mut push = |path: &str, message: String| {
            out.push(InvariantViolation {
                path: path.to_string(),
                message,
            })
        };

        if let Some(v) = &self.metadata.version {
            if !is_version_token(v) {
                push(
                    "metadata.version",
                    format!("`{v}` is neither dotted-numeric nor date-stamped"),
                );
            }
        }
        if let Some(id) = &self.metadata.identifier {
            if id.is_empty() || id.trim() != id {
                push(
                    "metadata.identifier",
                    "identifier must be non-empty and carry no surrounding whitespace".into(),
                );
            }
        }

        let t = &self.temporal;
        if let (Some(start), Some(end)) = (t.coverage_start, t.coverage_end) {
            if start > end {
                push(
                    "temporal.coverage_end",
                    format!(
                        "coverage_end {} precedes coverage_start {}",
                        format_date(end),
                        format_date(start)
                    ),
                );
            }
        }
        if let (Some(start), Some(updated)) = (t.coverage_start, t.last_updated) {
            if updated < start {
                push(
                    "temporal.last_updated",
                    format!(
                        "last_updated {} precedes coverage_start {}",
                        format_date(updated),
                        format_date(start)
                    ),
                );
            }
        }

        let d = &self.demographics;
        for (path, age) in [
            ("demographics.age_min", d.age_min),
            ("demographics.age_max", d.age_max),
        ] {
            if let Some(a) = age {
                if a > MAX_AGE {
                    push(path, format!("age {a} exceeds {MAX_AGE}"));
                }
            }
        }
        if let (Some(min), Some(max)) = (d.age_min, d.age_max) {
            if min > max {
                push(
                    "demographics.age_max",
                    format!("age_max {max} is below age_min {min}"),
                );
            }
        }

        if let Some(labels) = &self.risk_compliance.impact_assessments {
            if labels.iter().any(|l| l.trim().is_empty()) {
                push(
                    "risk_compliance.impact_assessments",
                    "impact assessment labels must be non-empty".into(),
                );
            }
        }

        check_unique(
            "purpose.beneficiaries",
            &self.purpose.beneficiaries,
            &mut out,
        );
        check_unique(
            "purpose.intended_uses",
            &self.purpose.intended_uses,
            &mut out,
        );
        check_unique(
            "bias_mitigation.applied_methods",
            &self.bias_mitigation.applied_methods,
            &mut out,
        );
        check_unique(
            "bias_mitigation.suggested_methods",
            &self.bias_mitigation.suggested_methods,
            &mut out,
        );
        out
    }

    pub fn build(self) -> Result<Datasheet, Vec<InvariantViolation>> {
        let violations = self.violations();
        if violations.is_empty() {
            Ok(Datasheet { inner: self })
        } else {
            Err(violations)
        }
    }
}

impl Datasheet {
    pub fn builder() -> DatasheetBuilder {
        DatasheetBuilder::default()
    }

    /// Copies the contents back into a builder for modification.
    pub fn to_builder(&self) -> DatasheetBuilder {
        self.inner.clone()
    }

    pub fn metadata(&self) -> &MetadataSection {
        &self.inner.metadata
    }
    pub fn purpose(&self) -> &PurposeSection {
        &self.inner.purpose
    }
    pub fn source(&self) -> &SourceSection {
        &self.inner.source
    }
    pub fn temporal(&self) -> &TemporalSection {
        &self.inner.temporal
    }
    pub fn demographics(&self) -> &DemographicSection {
        &self.inner.demographics
    }
    pub fn characteristics(&self) -> &CharacteristicsSection {
        &self.inner.characteristics
    }
    pub fn bias_mitigation(&self) -> &BiasMitigationSection {
        &self.inner.bias_mitigation
    }
    pub fn personal_data(&self) -> &PersonalDataSection {
        &self.inner.personal_data
    }
    pub fn risk_compliance(&self) -> &RiskComplianceSection {
        &self.inner.risk_compliance
    }
    pub fn usage_restriction(&self) -> &UsageRestrictionSection {
        &self.inner.usage_restriction
    }

    /// The populated value at `path`, or `None` when unpopulated.
    pub fn get(&self, path: &str) -> Result<Option<FieldValue>, ModelError> {
        self.inner.value_at(path)
    }

    pub fn is_populated(&self, path: &str) -> Result<bool, ModelError> {
        self.inner.is_populated_at(path)
    }

    /// Registry paths of populated fields, in registry order.
    pub fn populated_paths(&self) -> impl Iterator<Item = &'static str> + '_ {
        field_registry()
            .paths()
            .filter(move |p| self.inner.is_populated_at(p).unwrap_or(false))
    }

    pub fn populated_count(&self) -> usize {
        self.populated_paths().count()
    }

    pub fn populated_in(&self, section: SectionId) -> usize {
        field_registry()
            .section(section)
            .filter(|e| self.inner.is_populated_at(e.path).unwrap_or(false))
            .count()
    }

    /// Number of section containers; always ten.
    pub fn section_count(&self) -> usize {
        SectionId::ALL.len()
    }

    /// A copy with only `path` unpopulated. Removing a field never breaks a
    /// construction invariant.
    pub fn without(&self, path: &str) -> Result<Datasheet, ModelError> {
        let mut b = self.to_builder();
        b.clear(path)?;
        Ok(Datasheet { inner: b })
    }
}

/// Every section present, every field unpopulated.
pub fn new_template() -> Datasheet {
    Datasheet::default()
}

pub fn get_field(ds: &Datasheet, path: &str) -> Result<Option<FieldValue>, ModelError> {
    ds.get(path)
}
