//! The canonical field registry: 55 fields in 10 sections.

use std::fmt;

use crate::vocab::{SectionId, VocabId};

/// Declared type of a field's value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ValueType {
    Text,
    TextList,
    Date,
    Integer,
    FractionMap,
    Vocab(VocabId),
    Boolean,
    /// A map from bias category to likelihood.
    Structured,
}

impl fmt::Display for ValueType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueType::Text => f.write_str("text"),
            ValueType::TextList => f.write_str("text-list"),
            ValueType::Date => f.write_str("date"),
            ValueType::Integer => f.write_str("integer"),
            ValueType::FractionMap => f.write_str("fraction-map"),
            ValueType::Vocab(v) => write!(f, "vocab({v})"),
            ValueType::Boolean => f.write_str("boolean"),
            ValueType::Structured => f.write_str("structured"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldSpec {
    /// Dotted `section.field` path.
    pub path: &'static str,
    pub section: SectionId,
    pub value_type: ValueType,
    pub required: bool,
    pub vocabulary: Option<VocabId>,
    pub description: &'static str,
}

impl FieldSpec {
    /// The leaf key used inside the section object.
    pub fn key(&self) -> &'static str {
        self.path
            .split_once('.')
            .map(|(_, k)| k)
            .unwrap_or(self.path)
    }
}

#[derive(Debug)]
pub struct FieldRegistry {
    entries: &'static [FieldSpec],
}

impl FieldRegistry {
    pub fn entries(&self) -> &'static [FieldSpec] {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, path: &str) -> Option<&'static FieldSpec> {
        self.entries.iter().find(|e| e.path == path)
    }

    pub fn index_of(&self, path: &str) -> Option<usize> {
        self.entries.iter().position(|e| e.path == path)
    }

    pub fn section(&self, section: SectionId) -> impl Iterator<Item = &'static FieldSpec> {
        self.entries.iter().filter(move |e| e.section == section)
    }

    pub fn required(&self) -> impl Iterator<Item = &'static FieldSpec> {
        self.entries.iter().filter(|e| e.required)
    }

    pub fn paths(&self) -> impl Iterator<Item = &'static str> {
        self.entries.iter().map(|e| e.path)
    }
}

static REGISTRY: FieldRegistry = FieldRegistry { entries: &FIELDS };

/// The immutable canonical registry.
pub fn field_registry() -> &'static FieldRegistry {
    &REGISTRY
}

const fn field(
    path: &'static str,
    section: SectionId,
    value_type: ValueType,
    required: bool,
    description: &'static str,
) -> FieldSpec {
    let vocabulary = match value_type {
        ValueType::Vocab(v) => Some(v),
        ValueType::Structured => Some(VocabId::Likelihood),
        _ => None,
    };
    FieldSpec {
        path,
        section,
        value_type,
        required,
        vocabulary,
        description,
    }
}

use SectionId as S;
use ValueType as T;

const REQ: bool = true;
const OPT: bool = false;

static FIELDS: [FieldSpec; 55] = [
    // metadata (6)
    field("metadata.title", S::Metadata, T::Text, REQ, "Dataset title"),
    field(
        "metadata.version",
        S::Metadata,
        T::Text,
        OPT,
        "Dotted numeric or date-stamped version",
    ),
    field(
        "metadata.publisher",
        S::Metadata,
        T::Text,
        REQ,
        "Entity publishing the dataset",
    ),
    field(
        "metadata.license",
        S::Metadata,
        T::Text,
        OPT,
        "License name or IRI",
    ),
    field(
        "metadata.identifier",
        S::Metadata,
        T::Text,
        OPT,
        "Persistent identifier",
    ),
    field(
        "metadata.contact",
        S::Metadata,
        T::Text,
        OPT,
        "Contact point for questions and data-subject requests",
    ),
    // purpose (4)
    field(
        "purpose.creation_purpose",
        S::Purpose,
        T::Text,
        REQ,
        "Why the dataset was created",
    ),
    field(
        "purpose.intended_benefit",
        S::Purpose,
        T::Text,
        OPT,
        "Intended benefit, e.g. improved diagnostic accuracy",
    ),
    field(
        "purpose.beneficiaries",
        S::Purpose,
        T::TextList,
        OPT,
        "Intended beneficiaries",
    ),
    field(
        "purpose.intended_uses",
        S::Purpose,
        T::TextList,
        OPT,
        "Intended uses",
    ),
    // source (5)
    field(
        "source.source_description",
        S::Source,
        T::Text,
        REQ,
        "Source and origin of the data",
    ),
    field(
        "source.provenance",
        S::Source,
        T::Text,
        OPT,
        "Collection and labelling provenance",
    ),
    field(
        "source.ethical_approval",
        S::Source,
        T::Boolean,
        OPT,
        "Whether collection had ethical approval",
    ),
    field(
        "source.approving_body",
        S::Source,
        T::Text,
        OPT,
        "Body that granted ethical approval",
    ),
    field(
        "source.funding_sources",
        S::Source,
        T::TextList,
        OPT,
        "Funding sources",
    ),
    // temporal (4)
    field(
        "temporal.coverage_start",
        S::Temporal,
        T::Date,
        OPT,
        "Start of the covered period",
    ),
    field(
        "temporal.coverage_end",
        S::Temporal,
        T::Date,
        OPT,
        "End of the covered period",
    ),
    field(
        "temporal.last_updated",
        S::Temporal,
        T::Date,
        OPT,
        "Date of the last update",
    ),
    field(
        "temporal.update_frequency",
        S::Temporal,
        T::Text,
        OPT,
        "How often the dataset is updated",
    ),
    // demographics (10)
    field(
        "demographics.age_min",
        S::Demographics,
        T::Integer,
        OPT,
        "Minimum age in years",
    ),
    field(
        "demographics.age_max",
        S::Demographics,
        T::Integer,
        OPT,
        "Maximum age in years",
    ),
    field(
        "demographics.age_distribution",
        S::Demographics,
        T::FractionMap,
        OPT,
        "Age bucket shares",
    ),
    field(
        "demographics.gender_distribution",
        S::Demographics,
        T::FractionMap,
        OPT,
        "Gender shares",
    ),
    field(
        "demographics.ethnicity_distribution",
        S::Demographics,
        T::FractionMap,
        OPT,
        "Ethnicity shares",
    ),
    field(
        "demographics.geographic_origin",
        S::Demographics,
        T::TextList,
        OPT,
        "Geographic origin of individuals",
    ),
    field(
        "demographics.socioeconomic_notes",
        S::Demographics,
        T::Text,
        OPT,
        "Socioeconomic composition notes",
    ),
    field(
        "demographics.underrepresented_groups",
        S::Demographics,
        T::TextList,
        OPT,
        "Known under-represented groups",
    ),
    field(
        "demographics.bias_likelihoods",
        S::Demographics,
        T::Structured,
        OPT,
        "Likelihood of each bias category",
    ),
    field(
        "demographics.demographic_notes",
        S::Demographics,
        T::Text,
        OPT,
        "Other demographic notes",
    ),
    // characteristics (6)
    field(
        "characteristics.media_type",
        S::Characteristics,
        T::Vocab(VocabId::MediaType),
        OPT,
        "Media type of the records",
    ),
    field(
        "characteristics.record_count",
        S::Characteristics,
        T::Integer,
        OPT,
        "Number of records",
    ),
    field(
        "characteristics.feature_description",
        S::Characteristics,
        T::Text,
        OPT,
        "Description of features",
    ),
    field(
        "characteristics.incomplete",
        S::Characteristics,
        T::Boolean,
        OPT,
        "Whether the data is incomplete",
    ),
    field(
        "characteristics.missing_elements",
        S::Characteristics,
        T::TextList,
        OPT,
        "Missing elements",
    ),
    field(
        "characteristics.missing_reasons",
        S::Characteristics,
        T::TextList,
        OPT,
        "Reasons for missing elements",
    ),
    // bias_mitigation (3)
    field(
        "bias_mitigation.applied_methods",
        S::BiasMitigation,
        T::TextList,
        OPT,
        "Bias mitigation methods already applied",
    ),
    field(
        "bias_mitigation.suggested_methods",
        S::BiasMitigation,
        T::TextList,
        OPT,
        "Methods suggested to adopters",
    ),
    field(
        "bias_mitigation.residual_bias_notes",
        S::BiasMitigation,
        T::Text,
        OPT,
        "Known residual bias",
    ),
    // personal_data (7)
    field(
        "personal_data.contains_personal_data",
        S::PersonalData,
        T::Boolean,
        REQ,
        "Whether the data is personal data",
    ),
    field(
        "personal_data.personal_categories",
        S::PersonalData,
        T::TextList,
        OPT,
        "Categories of personal data",
    ),
    field(
        "personal_data.special_categories",
        S::PersonalData,
        T::TextList,
        OPT,
        "Special categories of personal data",
    ),
    field(
        "personal_data.sensitivity",
        S::PersonalData,
        T::Vocab(VocabId::Sensitivity),
        OPT,
        "Sensitivity level",
    ),
    field(
        "personal_data.anonymization_techniques",
        S::PersonalData,
        T::TextList,
        OPT,
        "Anonymisation techniques used",
    ),
    field(
        "personal_data.reidentification_risk",
        S::PersonalData,
        T::Vocab(VocabId::Likelihood),
        OPT,
        "Likelihood of re-identification",
    ),
    field(
        "personal_data.legal_basis",
        S::PersonalData,
        T::Text,
        OPT,
        "Legal basis for processing",
    ),
    // risk_compliance (6)
    field(
        "risk_compliance.generic_risk_level",
        S::RiskCompliance,
        T::Vocab(VocabId::RiskLevel),
        OPT,
        "Declared generic risk level",
    ),
    field(
        "risk_compliance.legal_risk_level",
        S::RiskCompliance,
        T::Vocab(VocabId::LegalRiskTier),
        OPT,
        "Declared legal risk tier",
    ),
    field(
        "risk_compliance.jurisdiction",
        S::RiskCompliance,
        T::TextList,
        OPT,
        "Jurisdictions",
    ),
    field(
        "risk_compliance.applicable_laws",
        S::RiskCompliance,
        T::TextList,
        OPT,
        "Applicable laws",
    ),
    field(
        "risk_compliance.impact_assessments",
        S::RiskCompliance,
        T::TextList,
        OPT,
        "Impact assessments performed, e.g. a DPIA",
    ),
    field(
        "risk_compliance.suggested_mitigations",
        S::RiskCompliance,
        T::TextList,
        OPT,
        "Suggested mitigation measures",
    ),
    // usage_restriction (4)
    field(
        "usage_restriction.access_restrictions",
        S::UsageRestriction,
        T::TextList,
        OPT,
        "Access restrictions",
    ),
    field(
        "usage_restriction.permissions",
        S::UsageRestriction,
        T::TextList,
        OPT,
        "Permitted uses",
    ),
    field(
        "usage_restriction.prohibitions",
        S::UsageRestriction,
        T::TextList,
        OPT,
        "Prohibited uses",
    ),
    field(
        "usage_restriction.obligations",
        S::UsageRestriction,
        T::TextList,
        OPT,
        "Obligations on users",
    ),
];
