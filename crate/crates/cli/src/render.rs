//! Human-readable documents: the datasheet report and the template field guide.

use datasheet_forge::registry::ValueType;
use datasheet_forge::vocab::{SectionId, VocabId, Vocabulary};
use datasheet_forge::{field_registry, validate, Datasheet};
use serde_json::{json, Value};

/// Markdown report: an at-a-glance block, then every section with its
/// documented fields.
pub fn report_markdown(ds: &Datasheet) -> String {
    let registry = field_registry();
    let report = validate(ds);
    let title = ds.metadata().title.as_deref().unwrap_or("Untitled dataset");

    let mut out = format!("# {title}\n\n## At a glance\n\n");
    let glance: [(&str, Option<String>); 6] = [
        ("Publisher", ds.metadata().publisher.clone()),
        ("Version", ds.metadata().version.clone()),
        (
            "Media type",
            ds.characteristics().media_type.map(|m| m.to_string()),
        ),
        (
            "Records",
            ds.characteristics().record_count.map(|n| n.to_string()),
        ),
        (
            "Personal data",
            ds.personal_data().contains_personal_data.map(|b| {
                if b {
                    "yes".to_string()
                } else {
                    "no".to_string()
                }
            }),
        ),
        (
            "Risk level",
            ds.risk_compliance()
                .generic_risk_level
                .map(|r| r.to_string()),
        ),
    ];
    for (label, value) in glance {
        out.push_str(&format!(
            "- {label}: {}\n",
            value.as_deref().unwrap_or("not documented")
        ));
    }
    out.push_str(&format!(
        "- Completeness: {}/{} fields ({:.0}%)\n",
        report.populated_fields,
        report.total_fields,
        report.overall_completeness * 100.0
    ));
    let errors = report.error_count();
    if errors > 0 {
        out.push_str(&format!("- Validation: {errors} error(s)\n"));
    } else {
        out.push_str("- Validation: passed\n");
    }

    for section in SectionId::ALL {
        let total = registry.section(*section).count();
        out.push_str(&format!(
            "\n## {} ({}/{})\n\n",
            section.title(),
            ds.populated_in(*section),
            total
        ));
        let mut any = false;
        for spec in registry.section(*section) {
            if let Some(value) = ds.get(spec.path).expect("registry path") {
                any = true;
                out.push_str(&format!("- **{}**: {value}\n", spec.key()));
            }
        }
        if !any {
            out.push_str("_Nothing documented._\n");
        }
    }

    if !report.findings.is_empty() {
        out.push_str("\n## Findings\n\n");
        for f in &report.findings {
            out.push_str(&format!("- {f}\n"));
        }
    }
    out
}

/// Machine form of the report.
pub fn report_json(ds: &Datasheet) -> Value {
    let registry = field_registry();
    let report = validate(ds);
    let sections: Vec<Value> = SectionId::ALL
        .iter()
        .map(|section| {
            let fields: serde_json::Map<String, Value> = registry
                .section(*section)
                .filter_map(|spec| {
                    ds.get(spec.path)
                        .expect("registry path")
                        .map(|v| (spec.key().to_string(), Value::String(v.to_string())))
                })
                .collect();
            json!({
                "section": section.token(),
                "title": section.title(),
                "completeness": report.section_completeness[section],
                "fields": fields,
            })
        })
        .collect();
    json!({
        "title": ds.metadata().title,
        "overall_completeness": report.overall_completeness,
        "valid": report.valid,
        "sections": sections,
    })
}

fn type_note(ty: ValueType) -> String {
    match ty {
        ValueType::Vocab(id) => format!("one of: {}", id.tokens().join(", ")),
        ValueType::Structured => format!(
            "object mapping {} to {}",
            VocabId::BiasCategory.tokens().join(" | "),
            VocabId::Likelihood.tokens().join(" | ")
        ),
        ValueType::FractionMap => {
            "object of label -> share in [0, 1], shares sum to at most 1".into()
        }
        ValueType::Date => "YYYY, YYYY-MM or YYYY-MM-DD".into(),
        ValueType::Integer => "non-negative integer".into(),
        ValueType::TextList => "array of strings".into(),
        ValueType::Boolean => "true or false".into(),
        ValueType::Text => "string".into(),
    }
}

/// Guide written next to a fresh template: every field, its type and
/// vocabulary, grouped by section.
pub fn field_guide() -> String {
    let registry = field_registry();
    let mut out = String::from(
        "# Datasheet template fields\n\nFields marked (required) must be filled in for the datasheet to validate.\n",
    );
    for section in SectionId::ALL {
        out.push_str(&format!(
            "\n## {} (`{}`)\n\n",
            section.title(),
            section.token()
        ));
        for spec in registry.section(*section) {
            let required = if spec.required { " (required)" } else { "" };
            out.push_str(&format!(
                "- `{}`{required}: {}. {}\n",
                spec.path,
                spec.description,
                type_note(spec.value_type)
            ));
        }
    }
    out
}
