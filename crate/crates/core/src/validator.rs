//! Required-field, cross-field and completeness checks.
//!
//! Validation never fails: every problem is a finding, so one run reports
//! everything wrong with a document.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::codec::{parse, ParseMode};
use crate::diagnostic::{codes, Diagnostic, Severity};
use crate::model::Datasheet;
use crate::registry::field_registry;
use crate::vocab::{SectionId, Vocabulary};

/// A cross-field consistency rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RuleDescriptor {
    pub id: &'static str,
    pub description: &'static str,
    pub fields: &'static [&'static str],
}

const RULES: &[RuleDescriptor] = &[
    RuleDescriptor {
        id: "R1",
        description: "incomplete = true requires a non-empty missing_elements list",
        fields: &["characteristics.incomplete", "characteristics.missing_elements"],
    },
    RuleDescriptor {
        id: "R2",
        description: "coverage_start must not be after coverage_end (also enforced while parsing)",
        fields: &["temporal.coverage_start", "temporal.coverage_end"],
    },
    RuleDescriptor {
        id: "R3",
        description: "contains_personal_data = false forbids personal_categories entries",
        fields: &["personal_data.contains_personal_data", "personal_data.personal_categories"],
    },
    RuleDescriptor {
        id: "R4",
        description: "a use may not be both permitted and prohibited (compared case- and whitespace-insensitively)",
        fields: &["usage_restriction.permissions", "usage_restriction.prohibitions"],
    },
    RuleDescriptor {
        id: "R5",
        description: "an approving_body requires ethical_approval to be stated",
        fields: &["source.approving_body", "source.ethical_approval"],
    },
    RuleDescriptor {
        id: "R6",
        description: "special_categories entries require contains_personal_data = true",
        fields: &["personal_data.special_categories", "personal_data.contains_personal_data"],
    },
    RuleDescriptor {
        id: "R7",
        description: "reidentification_risk requires anonymization_techniques or contains_personal_data = true",
        fields: &[
            "personal_data.reidentification_risk",
            "personal_data.anonymization_techniques",
            "personal_data.contains_personal_data",
        ],
    },
    RuleDescriptor {
        id: "R8",
        description: "missing_reasons requires missing_elements",
        fields: &["characteristics.missing_reasons", "characteristics.missing_elements"],
    },
];

/// Every cross-field rule the validator enforces, in evaluation order.
pub fn cross_field_rules() -> &'static [RuleDescriptor] {
    RULES
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub populated_fields: usize,
    pub total_fields: usize,
    pub overall_completeness: f64,
    pub section_completeness: BTreeMap<SectionId, f64>,
    pub findings: Vec<Diagnostic>,
}

impl ValidationReport {
    pub fn error_count(&self) -> usize {
        self.findings.iter().filter(|f| f.is_error()).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Prepends parser findings (warnings from a lenient or header-less parse).
    pub fn with_parse_diagnostics(mut self, diagnostics: Vec<Diagnostic>) -> Self {
        let mut all = diagnostics;
        all.append(&mut self.findings);
        self.findings = all;
        self.valid = self.error_count() == 0;
        self
    }
}

/// Lowercased, trimmed, internal whitespace collapsed.
pub fn normalize_use(s: &str) -> String {
    s.split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
        .to_lowercase()
}

fn non_empty(list: &Option<Vec<String>>) -> bool {
    list.as_ref().is_some_and(|l| !l.is_empty())
}

fn rule_findings(ds: &Datasheet) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let chars = ds.characteristics();
    let pd = ds.personal_data();

    if chars.incomplete == Some(true) && !non_empty(&chars.missing_elements) {
        out.push(Diagnostic::error(
            "characteristics.missing_elements",
            "R1",
            "data is marked incomplete but no missing elements are listed",
        ));
    }

    let t = ds.temporal();
    if let (Some(start), Some(end)) = (t.coverage_start, t.coverage_end) {
        if start > end {
            out.push(Diagnostic::error(
                "temporal.coverage_end",
                "R2",
                "coverage ends before it starts",
            ));
        }
    }

    if pd.contains_personal_data == Some(false) && non_empty(&pd.personal_categories) {
        out.push(Diagnostic::error(
            "personal_data.personal_categories",
            "R3",
            "personal data categories listed although contains_personal_data is false",
        ));
    }

    let ur = ds.usage_restriction();
    if let (Some(perms), Some(prohibs)) = (&ur.permissions, &ur.prohibitions) {
        let permitted: BTreeSet<String> = perms.iter().map(|p| normalize_use(p)).collect();
        let clashes: Vec<&str> = prohibs
            .iter()
            .filter(|p| permitted.contains(&normalize_use(p)))
            .map(String::as_str)
            .collect();
        if !clashes.is_empty() {
            out.push(Diagnostic::error(
                "usage_restriction.prohibitions",
                "R4",
                format!("both permitted and prohibited: {}", clashes.join("; ")),
            ));
        }
    }

    let src = ds.source();
    if src.approving_body.is_some() && src.ethical_approval.is_none() {
        out.push(Diagnostic::error(
            "source.ethical_approval",
            "R5",
            "an approving body is named but ethical_approval is not stated",
        ));
    }

    if non_empty(&pd.special_categories) && pd.contains_personal_data != Some(true) {
        out.push(Diagnostic::error(
            "personal_data.contains_personal_data",
            "R6",
            "special categories are listed so contains_personal_data must be true",
        ));
    }

    if pd.reidentification_risk.is_some()
        && pd.anonymization_techniques.is_none()
        && pd.contains_personal_data != Some(true)
    {
        out.push(Diagnostic::error(
            "personal_data.anonymization_techniques",
            "R7",
            "a re-identification risk is stated without anonymisation techniques or personal data",
        ));
    }

    if chars.missing_reasons.is_some() && chars.missing_elements.is_none() {
        out.push(Diagnostic::error(
            "characteristics.missing_reasons",
            "R8",
            "missing reasons are given without missing elements",
        ));
    }
    out
}

pub fn validate(ds: &Datasheet) -> ValidationReport {
    let registry = field_registry();
    let mut findings: Vec<Diagnostic> = registry
        .required()
        .filter(|spec| !ds.is_populated(spec.path).expect("registry path"))
        .map(|spec| {
            Diagnostic::new(
                spec.path,
                codes::MISSING_REQUIRED,
                Severity::Error,
                format!("required field `{}` is not populated", spec.path),
            )
        })
        .collect();
    findings.extend(rule_findings(ds));

    let mut seen = BTreeSet::new();
    findings.retain(|f| seen.insert((f.path.clone(), f.code.clone())));

    let section_completeness = SectionId::ALL
        .iter()
        .map(|s| {
            let total = registry.section(*s).count();
            (*s, ds.populated_in(*s) as f64 / total as f64)
        })
        .collect();
    let populated = ds.populated_count();
    let total = registry.len();
    let valid = !findings.iter().any(Diagnostic::is_error);
    ValidationReport {
        valid,
        populated_fields: populated,
        total_fields: total,
        overall_completeness: populated as f64 / total as f64,
        section_completeness,
        findings,
    }
}

/// Parses then validates. Returns the parser diagnostics when no datasheet
/// could be produced.
pub fn validate_document(
    input: &[u8],
    mode: ParseMode,
) -> Result<ValidationReport, Vec<Diagnostic>> {
    let outcome = parse(input, mode);
    match outcome.datasheet {
        Some(ds) => Ok(validate(&ds).with_parse_diagnostics(outcome.diagnostics)),
        None => Err(outcome.diagnostics),
    }
}
