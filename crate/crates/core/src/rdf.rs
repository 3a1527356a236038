//! RDF export using DCAT, ODRL and DPV terms.
//!
//! Every registry field has one row in [`mapping_table`]. Fields without a
//! fitting standard term use an artifact-owned namespace, `<base>terms#`.
//! Free-text policy entries become annotated ODRL rules; no action
//! vocabulary is inferred from them.
//!
//! Output is N-Triples: one triple per line, sorted, duplicates removed.
//! Structural nodes that several fields share (the policy, the period of
//! time) are emitted by each field that needs them, so a document's triples
//! are exactly the union of its per-field triples plus the dataset typing
//! triple.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::date::format_date;
use crate::model::{Datasheet, FieldValue};
use crate::vocab::Vocabulary;

pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";
pub const DCAT: &str = "http://www.w3.org/ns/dcat#";
pub const DCT: &str = "http://purl.org/dc/terms/";
pub const FOAF: &str = "http://xmlns.com/foaf/0.1/";
pub const VCARD: &str = "http://www.w3.org/2006/vcard/ns#";
pub const ODRL: &str = "http://www.w3.org/ns/odrl/2/";
pub const DPV: &str = "https://w3id.org/dpv#";

/// Local name of the artifact-owned namespace under the base IRI.
pub const LOCAL_NAMESPACE: &str = "terms#";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExportError {
    #[error("invalid base IRI `{iri}`: {reason}")]
    InvalidBaseIri { iri: String, reason: String },
}

/// A vocabulary term: a namespace plus local name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    /// `None` for the artifact-owned namespace.
    pub namespace: Option<&'static str>,
    pub name: &'static str,
}

impl Term {
    pub fn iri(&self, base: &BaseIri) -> String {
        match self.namespace {
            Some(ns) => format!("{ns}{}", self.name),
            None => format!("{}{LOCAL_NAMESPACE}{}", base.0, self.name),
        }
    }

    pub fn is_local(&self) -> bool {
        self.namespace.is_none()
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.namespace {
            None => "local",
            Some(RDF) => "rdf",
            Some(RDFS) => "rdfs",
            Some(XSD) => "xsd",
            Some(DCAT) => "dcat",
            Some(DCT) => "dct",
            Some(FOAF) => "foaf",
            Some(VCARD) => "vcard",
            Some(ODRL) => "odrl",
            Some(DPV) => "dpv",
            Some(other) => other,
        };
        write!(f, "{prefix}:{}", self.name)
    }
}

const fn std_term(namespace: &'static str, name: &'static str) -> Term {
    Term {
        namespace: Some(namespace),
        name,
    }
}

const fn local(name: &'static str) -> Term {
    Term {
        namespace: None,
        name,
    }
}

const RDF_TYPE: Term = std_term(RDF, "type");
const RDF_NIL: Term = std_term(RDF, "nil");
const RDFS_LABEL: Term = std_term(RDFS, "label");
const RDFS_COMMENT: Term = std_term(RDFS, "comment");
const DCAT_DATASET: Term = std_term(DCAT, "Dataset");
const DCT_TEMPORAL: Term = std_term(DCT, "temporal");
const DCT_PERIOD: Term = std_term(DCT, "PeriodOfTime");
const DCT_LICENSE: Term = std_term(DCT, "license");
const DCT_LICENSE_DOC: Term = std_term(DCT, "LicenseDocument");
const ODRL_HAS_POLICY: Term = std_term(ODRL, "hasPolicy");
const ODRL_SET: Term = std_term(ODRL, "Set");
const ODRL_TARGET: Term = std_term(ODRL, "target");
const BIAS_LIKELIHOOD: Term = local("biasLikelihood");
const BIAS_CATEGORY: Term = local("biasCategory");
const LIKELIHOOD: Term = local("likelihood");
const SHARE: Term = local("share");

/// How one field's value becomes triples.
///
/// Triple counts per populated field (`n` = list or map entries; an empty
/// list or map emits a single link to `rdf:nil`):
///
/// | shape | triples |
/// |---|---|
/// | `Literal` | 1 |
/// | `LiteralList` | n (1 if empty) |
/// | `Node` | 3: link, type, value |
/// | `NodeList` | 3n (1 if empty) |
/// | `License` | 1 when the value is an absolute IRI, else 3 |
/// | `PeriodBound` | 3: link, period type, bound (link and type shared by both bounds) |
/// | `Shares` | 3n: link, label, share (1 if empty) |
/// | `BiasAssessments` | 3n: link, category, likelihood (1 if empty) |
/// | `Policy` | 3 shared (hasPolicy, type, target) + 4n: rule link, type, target, comment (3 + 1 if empty) |
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeShape {
    Literal {
        predicate: Term,
    },
    LiteralList {
        predicate: Term,
    },
    Node {
        link: Term,
        class: Term,
        value: Term,
    },
    NodeList {
        link: Term,
        class: Term,
        value: Term,
    },
    License,
    PeriodBound {
        bound: Term,
    },
    Shares {
        link: Term,
    },
    BiasAssessments,
    Policy {
        link: Term,
        class: Term,
    },
}

impl NodeShape {
    /// Every predicate the shape can emit.
    pub fn predicates(&self) -> Vec<Term> {
        match *self {
            NodeShape::Literal { predicate } | NodeShape::LiteralList { predicate } => {
                vec![predicate]
            }
            NodeShape::Node { link, value, .. } | NodeShape::NodeList { link, value, .. } => {
                vec![link, RDF_TYPE, value]
            }
            NodeShape::License => vec![DCT_LICENSE, RDF_TYPE, RDFS_LABEL],
            NodeShape::PeriodBound { bound } => vec![DCT_TEMPORAL, RDF_TYPE, bound],
            NodeShape::Shares { link } => vec![link, RDFS_LABEL, SHARE],
            NodeShape::BiasAssessments => vec![BIAS_LIKELIHOOD, BIAS_CATEGORY, LIKELIHOOD],
            NodeShape::Policy { link, .. } => {
                vec![ODRL_HAS_POLICY, RDF_TYPE, ODRL_TARGET, link, RDFS_COMMENT]
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MappingRow {
    pub path: &'static str,
    pub shape: NodeShape,
    pub note: &'static str,
}

macro_rules! row {
    ($path:literal, $shape:expr) => {
        row!($path, $shape, "")
    };
    ($path:literal, $shape:expr, $note:literal) => {
        MappingRow {
            path: $path,
            shape: $shape,
            note: $note,
        }
    };
}

use NodeShape::*;

const fn lit(predicate: Term) -> NodeShape {
    Literal { predicate }
}
const fn lits(predicate: Term) -> NodeShape {
    LiteralList { predicate }
}
const fn labelled(link: Term, class: Term) -> NodeShape {
    Node {
        link,
        class,
        value: RDFS_LABEL,
    }
}
const fn labelled_list(link: Term, class: Term) -> NodeShape {
    NodeList {
        link,
        class,
        value: RDFS_LABEL,
    }
}

static MAPPING: [MappingRow; 55] = [
    row!("metadata.title", lit(std_term(DCT, "title"))),
    row!("metadata.version", lit(std_term(DCAT, "version"))),
    row!(
        "metadata.publisher",
        Node {
            link: std_term(DCT, "publisher"),
            class: std_term(FOAF, "Agent"),
            value: std_term(FOAF, "name")
        }
    ),
    row!(
        "metadata.license",
        License,
        "absolute IRIs are linked directly; names become a labelled LicenseDocument"
    ),
    row!("metadata.identifier", lit(std_term(DCT, "identifier"))),
    row!(
        "metadata.contact",
        Node {
            link: std_term(DCAT, "contactPoint"),
            class: std_term(VCARD, "Kind"),
            value: std_term(VCARD, "fn")
        }
    ),
    row!(
        "purpose.creation_purpose",
        labelled(std_term(DPV, "hasPurpose"), std_term(DPV, "Purpose"))
    ),
    row!("purpose.intended_benefit", lit(local("intendedBenefit"))),
    row!("purpose.beneficiaries", lits(local("beneficiary"))),
    row!(
        "purpose.intended_uses",
        labelled_list(std_term(DPV, "hasPurpose"), std_term(DPV, "Purpose"))
    ),
    row!("source.source_description", lit(local("sourceDescription"))),
    row!(
        "source.provenance",
        labelled(
            std_term(DCT, "provenance"),
            std_term(DCT, "ProvenanceStatement")
        )
    ),
    row!("source.ethical_approval", lit(local("ethicalApproval"))),
    row!("source.approving_body", lit(local("approvingBody"))),
    row!("source.funding_sources", lits(local("fundingSource"))),
    row!(
        "temporal.coverage_start",
        PeriodBound {
            bound: std_term(DCAT, "startDate")
        }
    ),
    row!(
        "temporal.coverage_end",
        PeriodBound {
            bound: std_term(DCAT, "endDate")
        }
    ),
    row!("temporal.last_updated", lit(std_term(DCT, "modified"))),
    row!(
        "temporal.update_frequency",
        lit(local("updateFrequency")),
        "free text, so not dct:accrualPeriodicity"
    ),
    row!("demographics.age_min", lit(local("ageMin"))),
    row!("demographics.age_max", lit(local("ageMax"))),
    row!(
        "demographics.age_distribution",
        Shares {
            link: local("ageDistribution")
        }
    ),
    row!(
        "demographics.gender_distribution",
        Shares {
            link: local("genderDistribution")
        }
    ),
    row!(
        "demographics.ethnicity_distribution",
        Shares {
            link: local("ethnicityDistribution")
        }
    ),
    row!(
        "demographics.geographic_origin",
        lits(local("geographicOrigin"))
    ),
    row!(
        "demographics.socioeconomic_notes",
        lit(local("socioeconomicNotes"))
    ),
    row!(
        "demographics.underrepresented_groups",
        lits(local("underrepresentedGroup"))
    ),
    row!(
        "demographics.bias_likelihoods",
        BiasAssessments,
        "no settled DPV home; candidates are dpv:Risk with dpv:hasLikelihood"
    ),
    row!(
        "demographics.demographic_notes",
        lit(local("demographicNotes"))
    ),
    row!(
        "characteristics.media_type",
        lit(std_term(DCT, "type")),
        "vocabulary token as a literal"
    ),
    row!("characteristics.record_count", lit(local("recordCount"))),
    row!(
        "characteristics.feature_description",
        lit(local("featureDescription"))
    ),
    row!("characteristics.incomplete", lit(local("incomplete"))),
    row!(
        "characteristics.missing_elements",
        lits(local("missingElement"))
    ),
    row!(
        "characteristics.missing_reasons",
        lits(local("missingReason"))
    ),
    row!(
        "bias_mitigation.applied_methods",
        lits(local("appliedBiasMitigation"))
    ),
    row!(
        "bias_mitigation.suggested_methods",
        lits(local("suggestedBiasMitigation"))
    ),
    row!(
        "bias_mitigation.residual_bias_notes",
        lit(local("residualBiasNotes"))
    ),
    row!(
        "personal_data.contains_personal_data",
        lit(local("containsPersonalData"))
    ),
    row!(
        "personal_data.personal_categories",
        labelled_list(
            std_term(DPV, "hasPersonalData"),
            std_term(DPV, "PersonalData")
        )
    ),
    row!(
        "personal_data.special_categories",
        labelled_list(
            std_term(DPV, "hasPersonalData"),
            std_term(DPV, "SpecialCategoryPersonalData")
        )
    ),
    row!("personal_data.sensitivity", lit(local("sensitivity"))),
    row!(
        "personal_data.anonymization_techniques",
        labelled_list(
            std_term(DPV, "hasTechnicalMeasure"),
            std_term(DPV, "Anonymisation")
        )
    ),
    row!(
        "personal_data.reidentification_risk",
        Node {
            link: std_term(DPV, "hasRisk"),
            class: std_term(DPV, "Risk"),
            value: std_term(DPV, "hasLikelihood")
        }
    ),
    row!(
        "personal_data.legal_basis",
        labelled(std_term(DPV, "hasLegalBasis"), std_term(DPV, "LegalBasis"))
    ),
    row!(
        "risk_compliance.generic_risk_level",
        lit(std_term(DPV, "hasRiskLevel"))
    ),
    row!(
        "risk_compliance.legal_risk_level",
        lit(local("legalRiskTier"))
    ),
    row!(
        "risk_compliance.jurisdiction",
        lits(std_term(DPV, "hasJurisdiction"))
    ),
    row!(
        "risk_compliance.applicable_laws",
        lits(std_term(DPV, "hasApplicableLaw")),
        "law names as literals"
    ),
    row!(
        "risk_compliance.impact_assessments",
        labelled_list(
            std_term(DPV, "hasOrganisationalMeasure"),
            std_term(DPV, "ImpactAssessment")
        )
    ),
    row!(
        "risk_compliance.suggested_mitigations",
        labelled_list(
            std_term(DPV, "isMitigatedByMeasure"),
            std_term(DPV, "RiskMitigationMeasure")
        )
    ),
    row!(
        "usage_restriction.access_restrictions",
        lits(std_term(DCT, "accessRights"))
    ),
    row!(
        "usage_restriction.permissions",
        Policy {
            link: std_term(ODRL, "permission"),
            class: std_term(ODRL, "Permission")
        },
        "text kept as rdfs:comment"
    ),
    row!(
        "usage_restriction.prohibitions",
        Policy {
            link: std_term(ODRL, "prohibition"),
            class: std_term(ODRL, "Prohibition")
        },
        "text kept as rdfs:comment"
    ),
    row!(
        "usage_restriction.obligations",
        Policy {
            link: std_term(ODRL, "obligation"),
            class: std_term(ODRL, "Duty")
        },
        "text kept as rdfs:comment"
    ),
];

/// One row per registry field, in registry order.
pub fn mapping_table() -> &'static [MappingRow] {
    &MAPPING
}

/// A validated base IRI, normalized to end with `/`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseIri(String);

impl BaseIri {
    pub fn parse(iri: &str) -> Result<Self, ExportError> {
        let invalid = |reason: &str| ExportError::InvalidBaseIri {
            iri: iri.to_string(),
            reason: reason.to_string(),
        };
        if let Some(c) = iri.chars().find(|c| forbidden_in_iri(*c)) {
            return Err(invalid(&format!(
                "character {c:?} is not allowed in an IRI"
            )));
        }
        let parsed = url::Url::parse(iri).map_err(|e| invalid(&e.to_string()))?;
        if parsed.cannot_be_a_base() {
            return Err(invalid("must be hierarchical"));
        }
        let trimmed = iri.strip_suffix('#').unwrap_or(iri);
        if trimmed.contains('#') || parsed.query().is_some() {
            return Err(invalid("must not carry a query or fragment"));
        }
        let mut s = trimmed.to_string();
        if !s.ends_with('/') {
            s.push('/');
        }
        Ok(BaseIri(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    fn node(&self, suffix: &str) -> String {
        format!("{}{suffix}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Object {
    Iri(String),
    Literal {
        lexical: String,
        datatype: Option<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub subject: String,
    pub predicate: String,
    pub object: Object,
}

fn escape_literal(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if c.is_control() => out.push_str(&format!("\\u{:04X}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

impl Triple {
    /// The triple as one N-Triples line, without the newline.
    pub fn to_ntriples(&self) -> String {
        let object = match &self.object {
            Object::Iri(iri) => format!("<{iri}>"),
            Object::Literal {
                lexical,
                datatype: None,
            } => format!("\"{}\"", escape_literal(lexical)),
            Object::Literal {
                lexical,
                datatype: Some(dt),
            } => format!("\"{}\"^^<{dt}>", escape_literal(lexical)),
        };
        format!("<{}> <{}> {object} .", self.subject, self.predicate)
    }
}

struct Emitter<'a> {
    base: &'a BaseIri,
    dataset: String,
    out: Vec<Triple>,
}

impl Emitter<'_> {
    fn push(&mut self, subject: &str, predicate: Term, object: Object) {
        self.out.push(Triple {
            subject: subject.to_string(),
            predicate: predicate.iri(self.base),
            object,
        });
    }

    fn iri(&self, term: Term) -> Object {
        Object::Iri(term.iri(self.base))
    }

    fn nil(&self) -> Object {
        self.iri(RDF_NIL)
    }
}

fn plain(s: &str) -> Object {
    Object::Literal {
        lexical: s.to_string(),
        datatype: None,
    }
}

fn typed(lexical: String, datatype: &str) -> Object {
    Object::Literal {
        lexical,
        datatype: Some(format!("{XSD}{datatype}")),
    }
}

fn literal_of(value: &FieldValue) -> Object {
    match value {
        FieldValue::Text(s) => plain(s),
        FieldValue::Date(d) => typed(format_date(*d), "date"),
        FieldValue::Integer(n) => typed(n.to_string(), "integer"),
        FieldValue::Boolean(b) => typed(b.to_string(), "boolean"),
        FieldValue::Vocab(v) => plain(v.token()),
        other => plain(&other.to_string()),
    }
}

fn is_absolute_iri(s: &str) -> bool {
    !s.chars().any(forbidden_in_iri) && url::Url::parse(s).is_ok()
}

fn forbidden_in_iri(c: char) -> bool {
    c.is_control() || c.is_whitespace() || "<>\"{}|^`\\".contains(c)
}

fn emit_field(e: &mut Emitter<'_>, row: &MappingRow, value: &FieldValue) {
    let ds = e.dataset.clone();
    let node_base = e.base.node(&row.path.replace('.', "/"));
    match row.shape {
        Literal { predicate } => e.push(&ds, predicate, literal_of(value)),
        LiteralList { predicate } => {
            let FieldValue::TextList(items) = value else {
                unreachable!("registry type")
            };
            if items.is_empty() {
                let nil = e.nil();
                e.push(&ds, predicate, nil);
            }
            for item in items {
                e.push(&ds, predicate, plain(item));
            }
        }
        Node {
            link,
            class,
            value: value_pred,
        } => {
            e.push(&ds, link, Object::Iri(node_base.clone()));
            let class = e.iri(class);
            e.push(&node_base, RDF_TYPE, class);
            e.push(&node_base, value_pred, literal_of(value));
        }
        NodeList {
            link,
            class,
            value: value_pred,
        } => {
            let FieldValue::TextList(items) = value else {
                unreachable!("registry type")
            };
            if items.is_empty() {
                let nil = e.nil();
                e.push(&ds, link, nil);
            }
            for (i, item) in items.iter().enumerate() {
                let node = format!("{node_base}/{}", i + 1);
                e.push(&ds, link, Object::Iri(node.clone()));
                let class = e.iri(class);
                e.push(&node, RDF_TYPE, class);
                e.push(&node, value_pred, plain(item));
            }
        }
        License => {
            let FieldValue::Text(text) = value else {
                unreachable!("registry type")
            };
            if is_absolute_iri(text) {
                e.push(&ds, DCT_LICENSE, Object::Iri(text.clone()));
            } else {
                e.push(&ds, DCT_LICENSE, Object::Iri(node_base.clone()));
                let class = e.iri(DCT_LICENSE_DOC);
                e.push(&node_base, RDF_TYPE, class);
                e.push(&node_base, RDFS_LABEL, plain(text));
            }
        }
        PeriodBound { bound } => {
            let period = e.base.node("temporal/period");
            e.push(&ds, DCT_TEMPORAL, Object::Iri(period.clone()));
            let class = e.iri(DCT_PERIOD);
            e.push(&period, RDF_TYPE, class);
            e.push(&period, bound, literal_of(value));
        }
        Shares { link } => {
            let FieldValue::FractionMap(map) = value else {
                unreachable!("registry type")
            };
            if map.is_empty() {
                let nil = e.nil();
                e.push(&ds, link, nil);
            }
            for (i, (label, share)) in map.iter().enumerate() {
                let node = format!("{node_base}/{}", i + 1);
                e.push(&ds, link, Object::Iri(node.clone()));
                e.push(&node, RDFS_LABEL, plain(label));
                e.push(&node, SHARE, typed(format!("{share}"), "decimal"));
            }
        }
        BiasAssessments => {
            let FieldValue::BiasLikelihoods(map) = value else {
                unreachable!("registry type")
            };
            if map.is_empty() {
                let nil = e.nil();
                e.push(&ds, BIAS_LIKELIHOOD, nil);
            }
            for (category, likelihood) in map {
                let node = format!("{node_base}/{}", category.token());
                e.push(&ds, BIAS_LIKELIHOOD, Object::Iri(node.clone()));
                e.push(&node, BIAS_CATEGORY, plain(category.token()));
                e.push(&node, LIKELIHOOD, plain(likelihood.token()));
            }
        }
        Policy { link, class } => {
            let FieldValue::TextList(items) = value else {
                unreachable!("registry type")
            };
            let policy = e.base.node("policy");
            e.push(&ds, ODRL_HAS_POLICY, Object::Iri(policy.clone()));
            let set = e.iri(ODRL_SET);
            e.push(&policy, RDF_TYPE, set);
            e.push(&policy, ODRL_TARGET, Object::Iri(ds.clone()));
            if items.is_empty() {
                let nil = e.nil();
                e.push(&policy, link, nil);
            }
            let field = row.path.rsplit('.').next().unwrap_or(row.path);
            for (i, item) in items.iter().enumerate() {
                let rule = e.base.node(&format!("policy/{field}/{}", i + 1));
                e.push(&policy, link, Object::Iri(rule.clone()));
                let class = e.iri(class);
                e.push(&rule, RDF_TYPE, class);
                e.push(&rule, ODRL_TARGET, Object::Iri(ds.clone()));
                e.push(&rule, RDFS_COMMENT, plain(item));
            }
        }
    }
}

/// Exports the datasheet as a sorted, duplicate-free list of triples.
pub fn export_triples(ds: &Datasheet, base_iri: &str) -> Result<Vec<Triple>, ExportError> {
    let base = BaseIri::parse(base_iri)?;
    let mut e = Emitter {
        dataset: base.node("dataset"),
        base: &base,
        out: Vec::new(),
    };
    let dataset = e.dataset.clone();
    let class = e.iri(DCAT_DATASET);
    e.push(&dataset, RDF_TYPE, class);
    for row in mapping_table() {
        if let Some(value) = ds.get(row.path).expect("mapping rows are registry paths") {
            emit_field(&mut e, row, &value);
        }
    }
    let unique: BTreeSet<(String, Triple)> =
        e.out.into_iter().map(|t| (t.to_ntriples(), t)).collect();
    Ok(unique.into_iter().map(|(_, t)| t).collect())
}

/// N-Triples document: sorted lines, each newline-terminated.
pub fn to_ntriples(triples: &[Triple]) -> String {
    let lines: BTreeSet<String> = triples.iter().map(Triple::to_ntriples).collect();
    let mut out = String::new();
    for line in lines {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

pub fn export_ntriples(ds: &Datasheet, base_iri: &str) -> Result<String, ExportError> {
    export_triples(ds, base_iri).map(|t| to_ntriples(&t))
}

/// All predicate IRIs named by the mapping table, for `base_iri`.
pub fn mapping_predicates(base_iri: &str) -> Result<BTreeSet<String>, ExportError> {
    let base = BaseIri::parse(base_iri)?;
    Ok(mapping_table()
        .iter()
        .flat_map(|r| r.shape.predicates())
        .map(|t| t.iri(&base))
        .collect())
}
