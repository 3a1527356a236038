//! Healthcare dataset datasheets: a typed model with a canonical JSON form,
//! validation, rule-based risk assessment, GDPR / AI Act evidence checks,
//! framework coverage comparison and RDF export.
//!
//! ```
//! use datasheet_forge::{parse, validate, ParseMode};
//!
//! let doc = br#"{"metadata": {"title": "Chest X-ray cohort", "publisher": "Example Hospital"}}"#;
//! let ds = parse(doc, ParseMode::Strict).datasheet.unwrap();
//! let report = validate(&ds);
//! assert!(!report.valid);
//! assert_eq!(report.populated_fields, 2);
//! ```

#[cfg(feature = "arbitrary")]
pub mod arbitrary;
pub mod codec;
pub mod compliance;
pub mod coverage;
pub mod date;
pub mod diagnostic;
pub mod model;
pub mod rdf;
pub mod registry;
pub mod risk;
pub mod validator;
pub mod vocab;

pub use codec::{parse, serialize, ParseMode, ParseOutcome, FORMAT_VERSION};
pub use compliance::{check, ComplianceReport, ComplianceStatus};
pub use coverage::{
    builtin_profiles, coverage_matrix, CoverageMark, CoverageMatrix, FrameworkProfile,
};
pub use diagnostic::{Diagnostic, Severity};
pub use model::{new_template, Datasheet, DatasheetBuilder, FieldValue, FractionMap};
pub use rdf::{export_ntriples, export_triples, mapping_table};
pub use registry::{field_registry, FieldSpec, ValueType};
pub use risk::{assess, RiskAssessment, RiskItem};
pub use validator::{validate, ValidationReport};
pub use vocab::{
    BiasCategory, LegalRiskTier, Likelihood, MediaType, RiskLevel, SectionId, Sensitivity,
};
