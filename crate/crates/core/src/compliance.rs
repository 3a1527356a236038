//! GDPR and AI Act obligation checks.
//!
//! A status of `satisfied` means the datasheet documents the evidence an
//! obligation calls for. It is not a statement of legal compliance.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::model::Datasheet;
use crate::vocab::{LegalRiskTier, MediaType, Vocabulary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Law {
    #[serde(rename = "GDPR")]
    Gdpr,
    #[serde(rename = "AI-Act")]
    AiAct,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Law::Gdpr => "GDPR",
            Law::AiAct => "AI-Act",
        })
    }
}

/// How the evidence fields combine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvidenceRule {
    /// Every evidence field populated.
    AllPopulated,
    /// At least one evidence field populated.
    AnyPopulated,
    /// The (single) evidence list names a data protection impact assessment.
    NamesDpia,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Applicability {
    Always,
    /// GDPR applies (personal data present or undeclared).
    Gdpr,
    /// GDPR applies and special-category or health data is present.
    GdprSpecialCategory,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Obligation {
    pub id: &'static str,
    pub law: Law,
    pub citation: &'static str,
    pub description: &'static str,
    pub applicability: Applicability,
    pub applicability_condition: &'static str,
    pub evidence_rule: EvidenceRule,
    pub evidence_fields: &'static [&'static str],
}

const CATALOG: &[Obligation] = &[
    Obligation {
        id: "G-ART9",
        law: Law::Gdpr,
        citation: "Art. 9",
        description: "Special categories of personal data (including health) are identified and their sensitivity stated",
        applicability: Applicability::GdprSpecialCategory,
        applicability_condition: "GDPR applies and special_categories is non-empty or media_type is genomic",
        evidence_rule: EvidenceRule::AllPopulated,
        evidence_fields: &["personal_data.special_categories", "personal_data.sensitivity"],
    },
    Obligation {
        id: "G-ART32",
        law: Law::Gdpr,
        citation: "Art. 32",
        description: "Security and risk management measures are documented",
        applicability: Applicability::Gdpr,
        applicability_condition: "GDPR applies",
        evidence_rule: EvidenceRule::AnyPopulated,
        evidence_fields: &[
            "personal_data.anonymization_techniques",
            "risk_compliance.suggested_mitigations",
        ],
    },
    Obligation {
        id: "G-ART35",
        law: Law::Gdpr,
        citation: "Art. 35",
        description: "A data protection impact assessment has been carried out",
        applicability: Applicability::Gdpr,
        applicability_condition: "GDPR applies",
        evidence_rule: EvidenceRule::NamesDpia,
        evidence_fields: &["risk_compliance.impact_assessments"],
    },
    Obligation {
        id: "G-CONTROLLER",
        law: Law::Gdpr,
        citation: "Art. 4(7)",
        description: "The controller determining the means and purposes of processing is identified, with the legal basis",
        applicability: Applicability::Gdpr,
        applicability_condition: "GDPR applies",
        evidence_rule: EvidenceRule::AllPopulated,
        evidence_fields: &["metadata.publisher", "personal_data.legal_basis"],
    },
    Obligation {
        id: "G-RIGHTS",
        law: Law::Gdpr,
        citation: "Arts. 12-23",
        description: "Data-subject rights are supported through stated obligations or a contact point (minimal proxy)",
        applicability: Applicability::Gdpr,
        applicability_condition: "GDPR applies",
        evidence_rule: EvidenceRule::AnyPopulated,
        evidence_fields: &["usage_restriction.obligations", "metadata.contact"],
    },
    Obligation {
        id: "A-RISKTIER",
        law: Law::AiAct,
        citation: "risk classification",
        description: "The AI Act risk tier for uses of the dataset is declared",
        applicability: Applicability::Always,
        applicability_condition: "always",
        evidence_rule: EvidenceRule::AllPopulated,
        evidence_fields: &["risk_compliance.legal_risk_level"],
    },
];

pub fn obligation_catalog() -> &'static [Obligation] {
    CATALOG
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ComplianceStatus {
    NotApplicable,
    MissingEvidence,
    Satisfied,
}

impl ComplianceStatus {
    pub fn token(self) -> &'static str {
        match self {
            ComplianceStatus::Satisfied => "satisfied",
            ComplianceStatus::MissingEvidence => "missing-evidence",
            ComplianceStatus::NotApplicable => "not-applicable",
        }
    }
}

impl Serialize for ComplianceStatus {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.token())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObligationStatus {
    pub id: &'static str,
    pub law: Law,
    pub citation: &'static str,
    pub status: ComplianceStatus,
    pub rationale: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplianceReport {
    pub gdpr_applicable: bool,
    pub ai_act_tier: LegalRiskTier,
    pub statuses: Vec<ObligationStatus>,
    pub notes: Vec<String>,
}

impl ComplianceReport {
    pub fn status(&self, id: &str) -> Option<ComplianceStatus> {
        self.statuses.iter().find(|s| s.id == id).map(|s| s.status)
    }

    pub fn missing_evidence(&self) -> impl Iterator<Item = &ObligationStatus> {
        self.statuses
            .iter()
            .filter(|s| s.status == ComplianceStatus::MissingEvidence)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Checklist rendering for people.
    pub fn render_checklist(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "GDPR applicable: {}\nAI Act tier: {}\n\n",
            if self.gdpr_applicable { "yes" } else { "no" },
            self.ai_act_tier
        ));
        for s in &self.statuses {
            let mark = match s.status {
                ComplianceStatus::Satisfied => "[x]",
                ComplianceStatus::MissingEvidence => "[ ]",
                ComplianceStatus::NotApplicable => "[-]",
            };
            out.push_str(&format!(
                "{mark} {} ({} {}): {} - {}\n",
                s.id,
                s.law,
                s.citation,
                s.status.token(),
                s.rationale
            ));
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out
    }
}

/// Special-category or health data: listed special categories, or genomic
/// records (genetic data).
pub fn has_special_or_health_data(ds: &Datasheet) -> bool {
    ds.personal_data()
        .special_categories
        .as_ref()
        .is_some_and(|c| !c.is_empty())
        || ds.characteristics().media_type == Some(MediaType::Genomic)
}

pub fn gdpr_applicable(ds: &Datasheet) -> bool {
    ds.personal_data().contains_personal_data != Some(false)
}

fn names_dpia(label: &str) -> bool {
    let l = label.to_lowercase();
    l.contains("dpia") || l.contains("data protection impact assessment")
}

fn evidence_present(ds: &Datasheet, ob: &Obligation) -> Result<(), String> {
    let populated = |p: &str| {
        ds.is_populated(p)
            .expect("catalog paths are registry paths")
    };
    match ob.evidence_rule {
        EvidenceRule::AllPopulated => {
            let missing: Vec<_> = ob
                .evidence_fields
                .iter()
                .filter(|p| !populated(p))
                .collect();
            if missing.is_empty() {
                Ok(())
            } else {
                Err(format!(
                    "not documented: {}",
                    missing
                        .iter()
                        .map(|p| p.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                ))
            }
        }
        EvidenceRule::AnyPopulated => {
            if ob.evidence_fields.iter().any(|p| populated(p)) {
                Ok(())
            } else {
                Err(format!(
                    "none documented of: {}",
                    ob.evidence_fields.join(", ")
                ))
            }
        }
        EvidenceRule::NamesDpia => {
            let listed = ds
                .risk_compliance()
                .impact_assessments
                .as_ref()
                .is_some_and(|l| l.iter().any(|a| names_dpia(a)));
            if listed {
                Ok(())
            } else {
                Err(format!("{} lists no DPIA", ob.evidence_fields[0]))
            }
        }
    }
}

pub fn check(ds: &Datasheet) -> ComplianceReport {
    let gdpr = gdpr_applicable(ds);
    let special = has_special_or_health_data(ds);

    let statuses = CATALOG
        .iter()
        .map(|ob| {
            let applicable = match ob.applicability {
                Applicability::Always => true,
                Applicability::Gdpr => gdpr,
                Applicability::GdprSpecialCategory => gdpr && special,
            };
            let (status, rationale) = if !applicable {
                (
                    ComplianceStatus::NotApplicable,
                    format!("requires {}", ob.applicability_condition),
                )
            } else {
                match evidence_present(ds, ob) {
                    Ok(()) => (
                        ComplianceStatus::Satisfied,
                        "evidence documented".to_string(),
                    ),
                    Err(why) => (ComplianceStatus::MissingEvidence, why),
                }
            };
            ObligationStatus {
                id: ob.id,
                law: ob.law,
                citation: ob.citation,
                status,
                rationale,
            }
        })
        .collect();

    let default_tier = if special {
        LegalRiskTier::High
    } else {
        LegalRiskTier::Limited
    };
    let mut notes = Vec::new();
    if ds.personal_data().contains_personal_data.is_none() {
        notes.push("contains_personal_data is not stated; GDPR treated as applicable".to_string());
    }
    let ai_act_tier = match ds.risk_compliance().legal_risk_level {
        Some(declared) => {
            if declared != default_tier {
                notes.push(format!(
                    "declared AI Act tier `{}` differs from the default `{}` inferred from the data",
                    declared.token(),
                    default_tier.token()
                ));
            }
            declared
        }
        None => default_tier,
    };

    ComplianceReport {
        gdpr_applicable: gdpr,
        ai_act_tier,
        statuses,
        notes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry::field_registry;
    use std::collections::BTreeSet;

    #[test]
    fn catalog_shape() {
        let ids: BTreeSet<_> = CATALOG.iter().map(|o| o.id).collect();
        assert_eq!(
            ids,
            [
                "G-ART9",
                "G-ART32",
                "G-ART35",
                "G-CONTROLLER",
                "G-RIGHTS",
                "A-RISKTIER"
            ]
            .into_iter()
            .collect()
        );
        for o in CATALOG {
            for p in o.evidence_fields {
                assert!(field_registry().get(p).is_some(), "{p}");
            }
        }
        let art35 = CATALOG.iter().find(|o| o.id == "G-ART35").unwrap();
        assert!(art35
            .evidence_fields
            .contains(&"risk_compliance.impact_assessments"));
    }

    #[test]
    fn health_data_without_dpia() {
        let mut b = Datasheet::builder();
        b.personal_data.contains_personal_data = Some(true);
        b.personal_data.special_categories = Some(vec!["health".into()]);
        let r = check(&b.build().unwrap());
        assert!(r.gdpr_applicable);
        assert_eq!(r.status("G-ART35"), Some(ComplianceStatus::MissingEvidence));
        assert_eq!(r.ai_act_tier, LegalRiskTier::High);
        assert_eq!(r.statuses.len(), CATALOG.len());
    }

    #[test]
    fn dpia_entry_satisfies_art35() {
        let mut b = Datasheet::builder();
        b.personal_data.contains_personal_data = Some(true);
        b.risk_compliance.impact_assessments = Some(vec!["GDPR DPIA 2023-11".into()]);
        assert_eq!(
            check(&b.clone().build().unwrap()).status("G-ART35"),
            Some(ComplianceStatus::Satisfied)
        );
        b.risk_compliance.impact_assessments = Some(vec!["Fairness audit".into()]);
        assert_eq!(
            check(&b.build().unwrap()).status("G-ART35"),
            Some(ComplianceStatus::MissingEvidence)
        );
    }

    #[test]
    fn non_personal_data() {
        let mut b = Datasheet::builder();
        b.personal_data.contains_personal_data = Some(false);
        let r = check(&b.build().unwrap());
        assert!(!r.gdpr_applicable);
        for s in &r.statuses {
            if s.law == Law::Gdpr {
                assert_eq!(s.status, ComplianceStatus::NotApplicable, "{}", s.id);
            }
        }
        assert_eq!(
            r.status("A-RISKTIER"),
            Some(ComplianceStatus::MissingEvidence)
        );
        assert_eq!(r.ai_act_tier, LegalRiskTier::Limited);
    }

    #[test]
    fn absent_flag_is_conservative() {
        let r = check(&Datasheet::default());
        assert!(r.gdpr_applicable);
        assert_eq!(r.status("G-ART9"), Some(ComplianceStatus::NotApplicable));
        assert_eq!(r.status("G-ART32"), Some(ComplianceStatus::MissingEvidence));
        assert!(!r.notes.is_empty());
    }

    #[test]
    fn genomic_media_triggers_art9_and_high_tier() {
        let mut b = Datasheet::builder();
        b.personal_data.contains_personal_data = Some(true);
        b.characteristics.media_type = Some(MediaType::Genomic);
        let r = check(&b.build().unwrap());
        assert_eq!(r.status("G-ART9"), Some(ComplianceStatus::MissingEvidence));
        assert_eq!(r.ai_act_tier, LegalRiskTier::High);
    }

    #[test]
    fn declared_tier_takes_precedence_with_note() {
        let mut b = Datasheet::builder();
        b.personal_data.contains_personal_data = Some(true);
        b.personal_data.special_categories = Some(vec!["health".into()]);
        b.risk_compliance.legal_risk_level = Some(LegalRiskTier::Minimal);
        let r = check(&b.build().unwrap());
        assert_eq!(r.ai_act_tier, LegalRiskTier::Minimal);
        assert!(r.notes.iter().any(|n| n.contains("differs")));
        assert_eq!(r.status("A-RISKTIER"), Some(ComplianceStatus::Satisfied));
    }

    #[test]
    fn checklist_mentions_every_obligation() {
        let text = check(&Datasheet::default()).render_checklist();
        for o in CATALOG {
            assert!(text.contains(o.id));
        }
    }
}
