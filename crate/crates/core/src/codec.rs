//! JSON interchange format.
//!
//! A document is an object holding `datasheet_format_version` followed by one
//! object per section. Field keys are the registry leaf names. The canonical
//! serialization emits fields in registry order with two-space indentation
//! and a trailing newline; unpopulated fields are omitted.

use std::collections::BTreeMap;

use serde_json::{Map, Number, Value};

use crate::date::{format_date, parse_date};
use crate::diagnostic::{codes, Diagnostic};
use crate::model::{Datasheet, DatasheetBuilder, FieldValue, FractionMap, VocabValue};
use crate::registry::{field_registry, FieldSpec, ValueType};
use crate::vocab::{BiasCategory, Likelihood, SectionId, Vocabulary};

pub const FORMAT_VERSION: &str = "1.0";
pub const VERSION_KEY: &str = "datasheet_format_version";

pub fn format_version() -> &'static str {
    FORMAT_VERSION
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ParseMode {
    /// Unknown fields are errors.
    #[default]
    Strict,
    /// Unknown fields are dropped with a warning.
    Lenient,
}

#[derive(Debug, Clone)]
pub struct ParseOutcome {
    /// Present iff no diagnostic has error severity.
    pub datasheet: Option<Datasheet>,
    pub diagnostics: Vec<Diagnostic>,
}

impl ParseOutcome {
    pub fn errors(&self) -> impl Iterator<Item = &Diagnostic> {
        self.diagnostics.iter().filter(|d| d.is_error())
    }

    pub fn has_errors(&self) -> bool {
        self.errors().next().is_some()
    }
}

struct Parser {
    mode: ParseMode,
    diagnostics: Vec<Diagnostic>,
}

impl Parser {
    fn unknown(&mut self, path: String) {
        let d = match self.mode {
            ParseMode::Strict => Diagnostic::error(path, codes::UNKNOWN_FIELD, "unknown field"),
            ParseMode::Lenient => {
                Diagnostic::warning(path, codes::UNKNOWN_FIELD, "unknown field dropped")
            }
        };
        self.diagnostics.push(d);
    }

    fn error(&mut self, path: &str, code: &str, message: impl Into<String>) {
        self.diagnostics
            .push(Diagnostic::error(path, code, message));
    }

    fn version(&mut self, doc: &Map<String, Value>) {
        match doc.get(VERSION_KEY) {
            None => self.diagnostics.push(Diagnostic::warning(
                VERSION_KEY,
                codes::VERSION_MISSING,
                format!("no format version header; assuming {FORMAT_VERSION}"),
            )),
            Some(Value::String(v)) if v == FORMAT_VERSION => {}
            Some(Value::String(v)) => self.error(
                VERSION_KEY,
                codes::UNSUPPORTED_VERSION,
                format!("format version `{v}` is not supported (expected {FORMAT_VERSION})"),
            ),
            Some(other) => self.error(
                VERSION_KEY,
                codes::TYPE_MISMATCH,
                format!("format version must be a string, found {}", kind(other)),
            ),
        }
    }

    fn decode(&mut self, spec: &FieldSpec, value: &Value) -> Option<FieldValue> {
        let path = spec.path;
        let mismatch = |p: &mut Parser| {
            p.error(
                path,
                codes::TYPE_MISMATCH,
                format!("expected {}, found {}", spec.value_type, kind(value)),
            );
            None
        };
        match spec.value_type {
            ValueType::Text => match value {
                Value::String(s) => Some(FieldValue::Text(s.clone())),
                _ => mismatch(self),
            },
            ValueType::TextList => {
                let Value::Array(items) = value else {
                    return mismatch(self);
                };
                let mut out = Vec::with_capacity(items.len());
                for (i, item) in items.iter().enumerate() {
                    match item {
                        Value::String(s) => out.push(s.clone()),
                        other => {
                            self.error(
                                path,
                                codes::TYPE_MISMATCH,
                                format!("entry {i} must be a string, found {}", kind(other)),
                            );
                            return None;
                        }
                    }
                }
                Some(FieldValue::TextList(out))
            }
            ValueType::Date => match value {
                Value::String(s) => match parse_date(s) {
                    Ok(d) => Some(FieldValue::Date(d)),
                    Err(e) => {
                        self.error(path, codes::TYPE_MISMATCH, e.to_string());
                        None
                    }
                },
                _ => mismatch(self),
            },
            ValueType::Integer => match value {
                Value::Number(n) if n.is_u64() => n.as_u64().map(FieldValue::Integer),
                Value::Number(n) if n.is_i64() => {
                    self.error(path, codes::INVARIANT_VIOLATION, format!("{n} is negative"));
                    None
                }
                _ => mismatch(self),
            },
            ValueType::Boolean => match value {
                Value::Bool(b) => Some(FieldValue::Boolean(*b)),
                _ => mismatch(self),
            },
            ValueType::FractionMap => {
                let Value::Object(obj) = value else {
                    return mismatch(self);
                };
                let mut entries = Vec::with_capacity(obj.len());
                for (label, v) in obj {
                    match v.as_f64() {
                        Some(x) => entries.push((label.clone(), x)),
                        None => {
                            self.error(
                                path,
                                codes::TYPE_MISMATCH,
                                format!("share for `{label}` must be a number, found {}", kind(v)),
                            );
                            return None;
                        }
                    }
                }
                match FractionMap::new(entries) {
                    Ok(m) => Some(FieldValue::FractionMap(m)),
                    Err(e) => {
                        self.error(path, codes::INVARIANT_VIOLATION, e.to_string());
                        None
                    }
                }
            }
            ValueType::Vocab(vocab) => match value {
                Value::String(s) => match VocabValue::decode(vocab, s) {
                    Ok(v) => Some(FieldValue::Vocab(v)),
                    Err(e) => {
                        self.error(path, codes::VOCAB_VIOLATION, e.to_string());
                        None
                    }
                },
                _ => mismatch(self),
            },
            ValueType::Structured => {
                let Value::Object(obj) = value else {
                    return mismatch(self);
                };
                let mut out = BTreeMap::new();
                let mut ok = true;
                for (key, v) in obj {
                    let category = BiasCategory::from_token(key);
                    let likelihood = match v {
                        Value::String(s) => Likelihood::from_token(s).map_err(|e| e.to_string()),
                        other => {
                            self.error(
                                path,
                                codes::TYPE_MISMATCH,
                                format!(
                                    "likelihood for `{key}` must be a string, found {}",
                                    kind(other)
                                ),
                            );
                            ok = false;
                            continue;
                        }
                    };
                    match (category, likelihood) {
                        (Ok(c), Ok(l)) => {
                            out.insert(c, l);
                        }
                        (Err(e), _) => {
                            self.error(path, codes::VOCAB_VIOLATION, e.to_string());
                            ok = false;
                        }
                        (_, Err(e)) => {
                            self.error(path, codes::VOCAB_VIOLATION, e);
                            ok = false;
                        }
                    }
                }
                ok.then_some(FieldValue::BiasLikelihoods(out))
            }
        }
    }
}

fn kind(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "boolean",
        Value::Number(_) => "number",
        Value::String(_) => "string",
        Value::Array(_) => "array",
        Value::Object(_) => "object",
    }
}

/// Parses a UTF-8 JSON datasheet document.
pub fn parse(input: &[u8], mode: ParseMode) -> ParseOutcome {
    let mut p = Parser {
        mode,
        diagnostics: Vec::new(),
    };
    let doc: Value = match serde_json::from_slice(input) {
        Ok(v) => v,
        Err(e) => {
            let location = format!("document:{}:{}", e.line(), e.column());
            p.error(&location, codes::MALFORMED_DOCUMENT, e.to_string());
            return finish(p, None);
        }
    };
    let Value::Object(doc) = doc else {
        p.error(
            "document",
            codes::MALFORMED_DOCUMENT,
            format!("top level must be an object, found {}", kind(&doc)),
        );
        return finish(p, None);
    };

    p.version(&doc);

    let registry = field_registry();
    let mut builder = DatasheetBuilder::new();
    for (key, section_value) in &doc {
        if key == VERSION_KEY {
            continue;
        }
        let Ok(section) = SectionId::from_token(key) else {
            p.unknown(key.clone());
            continue;
        };
        let fields = match section_value {
            Value::Object(fields) => fields,
            Value::Null => continue,
            other => {
                p.error(
                    key,
                    codes::TYPE_MISMATCH,
                    format!("section must be an object, found {}", kind(other)),
                );
                continue;
            }
        };
        for (field_key, value) in fields {
            let path = format!("{}.{}", section.token(), field_key);
            let Some(spec) = registry.get(&path) else {
                p.unknown(path);
                continue;
            };
            if value.is_null() {
                continue;
            }
            if let Some(v) = p.decode(spec, value) {
                builder
                    .set(spec.path, v)
                    .expect("decoded value conforms to its registry type");
            }
        }
    }

    for v in builder.violations() {
        p.error(&v.path, codes::INVARIANT_VIOLATION, v.message);
    }
    finish(p, Some(builder))
}

fn finish(p: Parser, builder: Option<DatasheetBuilder>) -> ParseOutcome {
    let failed = p.diagnostics.iter().any(Diagnostic::is_error);
    let datasheet = match builder {
        Some(b) if !failed => Some(b.build().expect("violations already reported")),
        _ => None,
    };
    ParseOutcome {
        datasheet,
        diagnostics: p.diagnostics,
    }
}

fn encode(value: &FieldValue) -> Value {
    match value {
        FieldValue::Text(s) => Value::String(s.clone()),
        FieldValue::TextList(items) => {
            Value::Array(items.iter().cloned().map(Value::String).collect())
        }
        FieldValue::Date(d) => Value::String(format_date(*d)),
        FieldValue::Integer(n) => Value::Number((*n).into()),
        FieldValue::Boolean(b) => Value::Bool(*b),
        FieldValue::FractionMap(m) => Value::Object(
            m.iter()
                .map(|(k, v)| {
                    let n = Number::from_f64(v).expect("fraction shares are finite");
                    (k.to_string(), Value::Number(n))
                })
                .collect(),
        ),
        FieldValue::Vocab(v) => Value::String(v.token().to_string()),
        FieldValue::BiasLikelihoods(m) => Value::Object(
            m.iter()
                .map(|(c, l)| (c.token().to_string(), Value::String(l.token().to_string())))
                .collect(),
        ),
    }
}

/// The document as a JSON value in canonical key order.
pub fn to_value(ds: &Datasheet) -> Value {
    let registry = field_registry();
    let mut doc = Map::new();
    doc.insert(VERSION_KEY.into(), Value::String(FORMAT_VERSION.into()));
    for section in SectionId::ALL {
        let mut fields = Map::new();
        for spec in registry.section(*section) {
            if let Some(v) = ds.get(spec.path).expect("registry path") {
                fields.insert(spec.key().to_string(), encode(&v));
            }
        }
        doc.insert(section.token().to_string(), Value::Object(fields));
    }
    Value::Object(doc)
}

/// Canonical byte serialization.
pub fn serialize(ds: &Datasheet) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(&to_value(ds)).expect("JSON values always serialize");
    out.push(b'\n');
    out
}
