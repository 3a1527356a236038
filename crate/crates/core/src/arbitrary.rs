//! Proptest strategies producing valid datasheets.
//!
//! Every registry field is drawn independently from its declared type, then
//! the few construction invariants are repaired (dates ordered, ages ordered,
//! list entries unique), so the generated set spans all 55 fields and every
//! vocabulary value.

use std::collections::BTreeMap;

use chrono::NaiveDate;
use proptest::prelude::*;
use proptest::sample::select;

use crate::model::{Datasheet, DatasheetBuilder, FieldValue, FractionMap, VocabValue, MAX_AGE};
use crate::registry::{field_registry, FieldSpec, ValueType};
use crate::vocab::{BiasCategory, Likelihood, VocabId, Vocabulary};

/// Free text, including quotes, backslashes, newlines and non-ASCII.
pub fn text() -> impl Strategy<Value = String> {
    "(\\PC|[\n\t\"\\\\]){0,24}"
}

fn non_blank_text() -> impl Strategy<Value = String> {
    "[A-Za-z0-9][A-Za-z0-9 .:/_-]{0,20}[A-Za-z0-9]"
}

fn version() -> impl Strategy<Value = String> {
    prop_oneof![
        prop::collection::vec(0u32..100, 1..4).prop_map(|parts| {
            parts
                .iter()
                .map(u32::to_string)
                .collect::<Vec<_>>()
                .join(".")
        }),
        date().prop_map(|d| d.format("%Y-%m-%d").to_string()),
    ]
}

pub fn date() -> impl Strategy<Value = NaiveDate> {
    let first = NaiveDate::from_ymd_opt(1950, 1, 1).expect("valid date");
    (0i64..60_000).prop_map(move |days| first + chrono::Duration::days(days))
}

/// Shares in hundredths, so the sum never exceeds one.
pub fn fraction_map() -> impl Strategy<Value = FractionMap> {
    prop::collection::btree_map(text(), 0u32..=100, 0..5).prop_map(|raw| {
        let mut budget = 100u32;
        let entries = raw.into_iter().map(|(label, n)| {
            let n = n.min(budget);
            budget -= n;
            (label, f64::from(n) / 100.0)
        });
        FractionMap::new(entries).expect("hundredths summing to at most one")
    })
}

pub fn vocab_value(id: VocabId) -> impl Strategy<Value = VocabValue> {
    select(id.tokens()).prop_map(move |t| VocabValue::decode(id, t).expect("own token"))
}

pub fn bias_likelihoods() -> impl Strategy<Value = BTreeMap<BiasCategory, Likelihood>> {
    prop::collection::btree_map(
        select(BiasCategory::ALL.to_vec()),
        select(Likelihood::ALL.to_vec()),
        0..=BiasCategory::ALL.len(),
    )
}

fn value_for(spec: &'static FieldSpec) -> BoxedStrategy<FieldValue> {
    match (spec.path, spec.value_type) {
        ("metadata.version", _) => version().prop_map(FieldValue::Text).boxed(),
        ("metadata.identifier", _) => non_blank_text().prop_map(FieldValue::Text).boxed(),
        ("demographics.age_min" | "demographics.age_max", _) => {
            (0..=MAX_AGE).prop_map(FieldValue::Integer).boxed()
        }
        ("risk_compliance.impact_assessments", _) => prop::collection::vec(non_blank_text(), 0..4)
            .prop_map(FieldValue::TextList)
            .boxed(),
        (_, ValueType::Text) => text().prop_map(FieldValue::Text).boxed(),
        (_, ValueType::TextList) => prop::collection::vec(text(), 0..4)
            .prop_map(FieldValue::TextList)
            .boxed(),
        (_, ValueType::Date) => date().prop_map(FieldValue::Date).boxed(),
        (_, ValueType::Integer) => any::<u64>().prop_map(FieldValue::Integer).boxed(),
        (_, ValueType::Boolean) => any::<bool>().prop_map(FieldValue::Boolean).boxed(),
        (_, ValueType::FractionMap) => fraction_map().prop_map(FieldValue::FractionMap).boxed(),
        (_, ValueType::Vocab(id)) => vocab_value(id).prop_map(FieldValue::Vocab).boxed(),
        (_, ValueType::Structured) => bias_likelihoods()
            .prop_map(FieldValue::BiasLikelihoods)
            .boxed(),
    }
}

fn dedup(list: &mut Option<Vec<String>>) {
    if let Some(items) = list {
        let mut seen = std::collections::BTreeSet::new();
        items.retain(|i| seen.insert(i.clone()));
    }
}

/// Makes a builder satisfy the construction invariants without emptying
/// any populated field.
pub fn repair(mut b: DatasheetBuilder) -> DatasheetBuilder {
    let t = &mut b.temporal;
    if let (Some(s), Some(e)) = (t.coverage_start, t.coverage_end) {
        if s > e {
            t.coverage_start = Some(e);
            t.coverage_end = Some(s);
        }
    }
    if let (Some(s), Some(u)) = (t.coverage_start, t.last_updated) {
        if u < s {
            t.last_updated = Some(s);
        }
    }
    let d = &mut b.demographics;
    if let (Some(lo), Some(hi)) = (d.age_min, d.age_max) {
        if lo > hi {
            d.age_min = Some(hi);
            d.age_max = Some(lo);
        }
    }
    dedup(&mut b.purpose.beneficiaries);
    dedup(&mut b.purpose.intended_uses);
    dedup(&mut b.bias_mitigation.applied_methods);
    dedup(&mut b.bias_mitigation.suggested_methods);
    b
}

/// Builders with each field present with probability `density`.
pub fn builder_with_density(density: f64) -> impl Strategy<Value = DatasheetBuilder> {
    let fields: Vec<BoxedStrategy<Option<FieldValue>>> = field_registry()
        .entries()
        .iter()
        .map(|spec| {
            if density >= 1.0 {
                value_for(spec).prop_map(Some).boxed()
            } else {
                prop::option::weighted(density, value_for(spec)).boxed()
            }
        })
        .collect();
    fields.prop_map(|values| {
        let mut b = DatasheetBuilder::default();
        for (spec, value) in field_registry().entries().iter().zip(values) {
            if let Some(v) = value {
                b.set(spec.path, v)
                    .expect("strategy follows the registry type");
            }
        }
        repair(b)
    })
}

pub fn datasheet_with_density(density: f64) -> impl Strategy<Value = Datasheet> {
    builder_with_density(density).prop_map(|b| b.build().expect("repaired builder is valid"))
}

/// Valid datasheets with roughly 70% of fields populated.
pub fn datasheet() -> impl Strategy<Value = Datasheet> {
    datasheet_with_density(0.7)
}
