//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Oracles here are written independently of the library code.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use chrono::{Months, NaiveDate};
use datasheet_forge::arbitrary;
use datasheet_forge::codec::{parse, serialize, ParseMode};
use datasheet_forge::compliance::{check, obligation_catalog, ComplianceStatus, Law};
use datasheet_forge::coverage::{builtin_profiles, coverage_matrix, Category, CoverageMark};
use datasheet_forge::model::{Datasheet, DatasheetBuilder, FieldValue, FractionMap, VocabValue};
use datasheet_forge::rdf::{export_ntriples, export_triples, Triple};
use datasheet_forge::registry::field_registry;
use datasheet_forge::risk::assess;
use datasheet_forge::validator::validate_document;
use datasheet_forge::vocab::{
    BiasCategory, LegalRiskTier, Likelihood, MediaType, RiskLevel, Sensitivity, Vocabulary,
};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use regex::Regex;
use serde_json::Value;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn workspace() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn corpus(sub: &str) -> Vec<PathBuf> {
    let mut files: Vec<_> = fs::read_dir(workspace().join("corpus").join(sub))
        .expect("corpus directory")
        .map(|e| e.expect("dir entry").path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .filter(|p| p.file_name().is_some_and(|n| n != "manifest.json"))
        .collect();
    files.sort();
    files
}

fn load(path: &Path) -> Datasheet {
    parse(&fs::read(path).expect("readable"), ParseMode::Strict)
        .datasheet
        .unwrap_or_else(|| panic!("{} does not parse", path.display()))
}

fn within(limit: Duration, start: Instant) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))?;
    Ok(took)
}

// 1 ------------------------------------------------------------------------

fn field_counts() -> Verdict {
    let start = Instant::now();
    let reg = field_registry();
    let expected = [
        ("metadata", 6),
        ("purpose", 4),
        ("source", 5),
        ("temporal", 4),
        ("demographics", 10),
        ("characteristics", 6),
        ("bias_mitigation", 3),
        ("personal_data", 7),
        ("risk_compliance", 6),
        ("usage_restriction", 4),
    ];
    let mut counts: Vec<(String, usize)> = Vec::new();
    for spec in reg.entries() {
        let section = spec
            .path
            .split('.')
            .next()
            .expect("dotted path")
            .to_string();
        match counts.last_mut() {
            Some((s, n)) if *s == section => *n += 1,
            _ => counts.push((section, 1)),
        }
    }
    let expected: Vec<(String, usize)> =
        expected.iter().map(|(s, n)| (s.to_string(), *n)).collect();
    ensure(reg.len() == 55, || format!("{} fields", reg.len()))?;
    ensure(counts == expected, || format!("section counts {counts:?}"))?;
    let distinct: BTreeSet<_> = reg.paths().collect();
    ensure(distinct.len() == 55, || "duplicate paths".into())?;
    let took = within(Duration::from_secs(1), start)?;
    Ok(format!(
        "55 fields in 10 sections, counts 6/4/5/4/10/6/3/7/6/4 ({took:?})"
    ))
}

// 2 ------------------------------------------------------------------------

const F: CoverageMark = CoverageMark::Full;
const P: CoverageMark = CoverageMark::Partial;
const A: CoverageMark = CoverageMark::Absent;

/// Rows in table order; columns: this approach, datasheets for datasets,
/// dataset nutrition label, data statements for NLP.
const TABLE: [(&str, [CoverageMark; 4]); 12] = [
    ("Metadata", [F, F, F, F]),
    ("Purpose", [F, F, F, F]),
    ("Source Information", [F, F, F, P]),
    ("Temporal Information", [F, P, P, A]),
    ("Demographics", [F, A, P, F]),
    ("Data Characteristics", [F, P, P, P]),
    ("Bias Mitigations", [F, A, A, A]),
    ("Personal Data", [F, P, P, P]),
    ("Risk and Compliance", [F, P, P, A]),
    ("Usage Restriction", [F, P, F, A]),
    ("Machine-readable", [F, A, F, A]),
    ("Interoperability", [P, A, P, A]),
];

const PROFILES: [&str; 4] = [
    "this-approach",
    "datasheets-for-datasets",
    "dataset-nutrition-label",
    "data-statements-nlp",
];

fn table_one() -> Verdict {
    let start = Instant::now();
    let m = coverage_matrix(&builtin_profiles());
    ensure(m.profiles == PROFILES, || {
        format!("profiles {:?}", m.profiles)
    })?;
    ensure(m.categories.len() == 12, || {
        format!("{} rows", m.categories.len())
    })?;
    let mut mismatches = Vec::new();
    for ((cat, row), (label, golden)) in m.categories.iter().zip(&m.cells).zip(TABLE) {
        ensure(cat.label() == label, || {
            format!("row {} where {label} expected", cat.label())
        })?;
        for (col, (got, want)) in row.iter().zip(golden).enumerate() {
            if *got != want {
                mismatches.push(format!(
                    "{label}/{}: {} vs {}",
                    PROFILES[col],
                    got.token(),
                    want.token()
                ));
            }
        }
    }
    ensure(mismatches.is_empty(), || mismatches.join("; "))?;
    ensure(
        m.get(Category::Interoperability, "this-approach") == Some(P)
            && m.get(Category::MachineReadable, "datasheets-for-datasets") == Some(A),
        || "spot cells differ".into(),
    )?;
    let took = within(Duration::from_secs(1), start)?;
    Ok(format!("48/48 cells match ({took:?})"))
}

// 3 ------------------------------------------------------------------------

#[derive(Default)]
struct Seen {
    fields: BTreeSet<&'static str>,
    tokens: BTreeSet<(&'static str, &'static str)>,
}

fn all_tokens() -> BTreeSet<(&'static str, &'static str)> {
    fn of<V: Vocabulary>(name: &'static str) -> Vec<(&'static str, &'static str)> {
        V::ALL.iter().map(|v| (name, v.token())).collect()
    }
    [
        of::<Likelihood>("likelihood"),
        of::<RiskLevel>("risk-level"),
        of::<LegalRiskTier>("legal-risk-tier"),
        of::<BiasCategory>("bias-category"),
        of::<Sensitivity>("sensitivity"),
        of::<MediaType>("media-type"),
    ]
    .concat()
    .into_iter()
    .collect()
}

fn record(seen: &mut Seen, ds: &Datasheet) {
    for path in ds.populated_paths() {
        seen.fields.insert(path);
        match ds.get(path).expect("registry path") {
            Some(FieldValue::Vocab(v)) => {
                let name = match v {
                    VocabValue::Likelihood(_) => "likelihood",
                    VocabValue::RiskLevel(_) => "risk-level",
                    VocabValue::LegalRiskTier(_) => "legal-risk-tier",
                    VocabValue::Sensitivity(_) => "sensitivity",
                    VocabValue::MediaType(_) => "media-type",
                };
                seen.tokens.insert((name, v.token()));
            }
            Some(FieldValue::BiasLikelihoods(map)) => {
                for (c, l) in map {
                    seen.tokens.insert(("bias-category", c.token()));
                    seen.tokens.insert(("likelihood", l.token()));
                }
            }
            _ => {}
        }
    }
}

fn round_trip() -> Verdict {
    const CASES: u32 = 1000;
    let start = Instant::now();
    let config = Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    };
    let mut runner =
        TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    let seen = RefCell::new(Seen::default());
    let cases = RefCell::new(0u32);
    runner
        .run(&arbitrary::datasheet(), |ds| {
            *cases.borrow_mut() += 1;
            record(&mut seen.borrow_mut(), &ds);
            let bytes = serialize(&ds);
            let outcome = parse(&bytes, ParseMode::Strict);
            let errors = outcome.errors().count();
            proptest::prop_assert_eq!(errors, 0, "{:?}", outcome.diagnostics);
            proptest::prop_assert_eq!(outcome.datasheet.as_ref(), Some(&ds));
            proptest::prop_assert_eq!(
                serialize(&ds),
                bytes,
                "serialization is not byte-deterministic"
            );
            Ok(())
        })
        .map_err(|e| format!("{e}"))?;
    let n = *cases.borrow();
    ensure(n >= CASES, || format!("only {n} cases ran"))?;
    let seen = seen.into_inner();
    ensure(seen.fields.len() == 55, || {
        let missing: Vec<_> = field_registry()
            .paths()
            .filter(|p| !seen.fields.contains(p))
            .collect();
        format!("fields never generated: {missing:?}")
    })?;
    let missing: Vec<_> = all_tokens().difference(&seen.tokens).cloned().collect();
    ensure(missing.is_empty(), || {
        format!("vocabulary values never generated: {missing:?}")
    })?;
    let took = within(Duration::from_secs(30), start)?;
    Ok(format!(
        "{n} datasheets, 55/55 fields, {} vocabulary values ({took:?})",
        seen.tokens.len()
    ))
}

// 4 ------------------------------------------------------------------------

fn error_pairs(path: &Path) -> Vec<(String, String)> {
    let bytes = fs::read(path).expect("readable");
    match validate_document(&bytes, ParseMode::Strict) {
        Ok(report) => report
            .findings
            .into_iter()
            .filter(|f| f.is_error())
            .map(|f| (f.path, f.code))
            .collect(),
        Err(diags) => diags
            .into_iter()
            .filter(|d| d.is_error())
            .map(|d| (d.path, d.code))
            .collect(),
    }
}

fn corpus_soundness() -> Verdict {
    let valid = corpus("valid");
    ensure(valid.len() >= 10, || format!("{} valid files", valid.len()))?;
    for f in &valid {
        let errs = error_pairs(f);
        ensure(errs.is_empty(), || format!("{}: {errs:?}", f.display()))?;
    }

    let manifest: Value = serde_json::from_str(
        &fs::read_to_string(workspace().join("corpus/defects/manifest.json")).expect("manifest"),
    )
    .expect("manifest is JSON");
    let defects = manifest["defects"].as_array().expect("defect list");
    ensure(defects.len() >= 10, || {
        format!("{} defect files", defects.len())
    })?;
    ensure(defects.len() == corpus("defects").len(), || {
        "manifest misses files".into()
    })?;

    let mut rules = BTreeSet::new();
    let mut codes = BTreeSet::new();
    for d in defects {
        let file = d["file"].as_str().expect("file");
        let want = (
            d["path"].as_str().expect("path").to_string(),
            d["code"].as_str().expect("code").to_string(),
        );
        let got = error_pairs(&workspace().join("corpus/defects").join(file));
        ensure(got == vec![want.clone()], || {
            format!("{file}: expected {want:?}, got {got:?}")
        })?;
        if let Some(r) = d["rule"].as_str() {
            rules.insert(r.to_string());
        }
        codes.insert(want.1);
    }
    for r in ["R1", "R2", "R3", "R4", "R5", "R6"] {
        ensure(rules.contains(r), || format!("no defect seeds {r}"))?;
    }
    for c in [
        "malformed-document",
        "unknown-field",
        "type-mismatch",
        "vocab-violation",
        "invariant-violation",
        "unsupported-version",
    ] {
        ensure(codes.contains(c), || format!("no defect seeds {c}"))?;
    }
    Ok(format!(
        "{} valid files clean, {} defect files report exactly their seeded (path, code)",
        valid.len(),
        defects.len()
    ))
}

// 5 ------------------------------------------------------------------------

fn reference() -> NaiveDate {
    NaiveDate::from_ymd_opt(2024, 6, 30).expect("date")
}

fn shares(entries: &[(&str, f64)]) -> FractionMap {
    FractionMap::new(entries.iter().map(|(k, v)| (k.to_string(), *v))).expect("valid shares")
}

/// Minimal datasheet in which exactly the preconditions selected by `mask`
/// hold (bit order: sample-missing, imbalance, stale, annotator, reident,
/// incomplete, fraction-gap).
fn minimal(mask: u8) -> Datasheet {
    let bit = |i: u8| mask & (1 << i) != 0;
    let mut b = DatasheetBuilder::default();
    let d = &mut b.demographics;
    d.age_distribution = Some(if bit(1) {
        shares(&[("young", 0.95), ("old", 0.05)])
    } else {
        shares(&[("young", 0.5), ("old", 0.5)])
    });
    if !bit(0) {
        d.gender_distribution = Some(shares(&[("female", 0.5), ("male", 0.5)]));
    }
    d.ethnicity_distribution = Some(if bit(6) {
        shares(&[("a", 0.4), ("b", 0.3)])
    } else {
        shares(&[("a", 0.6), ("b", 0.4)])
    });
    let years_back = if bit(2) { 9 } else { 1 };
    let updated = reference() - Months::new(12 * years_back);
    b.temporal.coverage_end = Some(updated);
    b.temporal.last_updated = Some(updated);
    if bit(3) {
        b.characteristics.media_type = Some(MediaType::Images);
    }
    b.personal_data.contains_personal_data = Some(bit(4));
    if bit(5) {
        b.characteristics.incomplete = Some(true);
        b.characteristics.missing_elements = Some(vec!["follow-up visits".into()]);
    }
    b.build().expect("minimal datasheet is valid")
}

type OracleItem = (String, String, Likelihood, RiskLevel, String);
type OracleResult = (Vec<OracleItem>, RiskLevel, LegalRiskTier, bool);

/// Brute-force rule applier, straight from the rule definitions.
fn oracle(ds: &Datasheet, reference: NaiveDate) -> OracleResult {
    let mut items: Vec<OracleItem> = Vec::new();
    let demo = ds.demographics();
    let dists = [
        ("demographics.age_distribution", &demo.age_distribution),
        (
            "demographics.gender_distribution",
            &demo.gender_distribution,
        ),
        (
            "demographics.ethnicity_distribution",
            &demo.ethnicity_distribution,
        ),
    ];
    for (path, dist) in dists {
        match dist {
            None => items.push((
                "B-SAMPLE-MISSING".into(),
                "sample".into(),
                Likelihood::Unknown,
                RiskLevel::High,
                format!("absent:{path}"),
            )),
            Some(m) => {
                let values: Vec<f64> = m.iter().map(|(_, v)| v).collect();
                if values.iter().any(|v| *v > 0.8) {
                    items.push((
                        "B-DATADRIVEN-IMBALANCE".into(),
                        "data-driven".into(),
                        Likelihood::High,
                        RiskLevel::Medium,
                        path.into(),
                    ));
                }
                if values.iter().sum::<f64>() < 0.9 {
                    items.push((
                        "D-FRACTION-GAP".into(),
                        "missingness".into(),
                        Likelihood::Medium,
                        RiskLevel::Medium,
                        path.into(),
                    ));
                }
            }
        }
    }
    let cutoff = reference - Months::new(60);
    let t = ds.temporal();
    if t.last_updated.is_some_and(|d| d < cutoff) {
        items.push((
            "B-TEMPORAL-STALE".into(),
            "temporal".into(),
            Likelihood::Medium,
            RiskLevel::Medium,
            "temporal.last_updated".into(),
        ));
    } else if t.coverage_end.is_some_and(|d| d < cutoff) {
        items.push((
            "B-TEMPORAL-STALE".into(),
            "temporal".into(),
            Likelihood::Medium,
            RiskLevel::Medium,
            "temporal.coverage_end".into(),
        ));
    }
    if ds.characteristics().media_type.is_some() {
        let prov = ds.source().provenance.as_deref().map(str::to_lowercase);
        let labelled = prov
            .as_deref()
            .is_some_and(|p| p.contains("label") || p.contains("annotat"));
        if !labelled {
            let trigger = if prov.is_none() {
                "absent:source.provenance"
            } else {
                "source.provenance"
            };
            items.push((
                "B-ANNOTATOR-UNKNOWN".into(),
                "annotator".into(),
                Likelihood::Unknown,
                RiskLevel::High,
                trigger.into(),
            ));
        }
    }
    let pd = ds.personal_data();
    let mut reident = false;
    if pd.contains_personal_data == Some(true) {
        let risk = pd.reidentification_risk;
        let trigger = if pd.anonymization_techniques.is_none() {
            Some("absent:personal_data.anonymization_techniques")
        } else if risk.is_none() {
            Some("absent:personal_data.reidentification_risk")
        } else if matches!(
            risk,
            Some(Likelihood::High | Likelihood::VeryHigh | Likelihood::Unknown)
        ) {
            Some("personal_data.reidentification_risk")
        } else {
            None
        };
        if let Some(trigger) = trigger {
            reident = true;
            items.push((
                "D-REIDENT".into(),
                "reidentification".into(),
                risk.unwrap_or(Likelihood::Unknown),
                RiskLevel::High,
                trigger.into(),
            ));
        }
    }
    if ds.characteristics().incomplete == Some(true) {
        items.push((
            "D-INCOMPLETE".into(),
            "incompleteness".into(),
            Likelihood::High,
            RiskLevel::Medium,
            "characteristics.incomplete".into(),
        ));
    }

    let generic = items.iter().map(|i| i.3).max().unwrap_or(RiskLevel::Low);
    let personal_item = reident
        || items.iter().any(|i| {
            i.4.trim_start_matches("absent:")
                .starts_with("personal_data.")
        });
    let legal = if personal_item {
        LegalRiskTier::High
    } else if pd.contains_personal_data != Some(false) {
        LegalRiskTier::Limited
    } else {
        LegalRiskTier::Minimal
    };
    items.sort();
    (items, generic, legal, reident)
}

fn risk_oracle() -> Verdict {
    let start = Instant::now();
    let mut fired_total = 0;
    for mask in 0u8..128 {
        let ds = minimal(mask);
        let got = assess(&ds, reference());
        let (want, generic, legal, reident) = oracle(&ds, reference());
        let mut items: Vec<OracleItem> = got
            .items
            .iter()
            .map(|i| {
                (
                    i.rule_id.to_string(),
                    i.category.token().to_string(),
                    i.likelihood,
                    i.severity,
                    i.trigger.clone(),
                )
            })
            .collect();
        items.sort();
        ensure(items == want, || {
            format!("mask {mask:07b}: got {items:?}, oracle {want:?}")
        })?;
        ensure(items.len() == mask.count_ones() as usize, || {
            format!(
                "mask {mask:07b}: {} items for {} preconditions",
                items.len(),
                mask.count_ones()
            )
        })?;
        ensure(
            got.generic_level == generic && got.legal_level == legal,
            || {
                format!(
                    "mask {mask:07b}: levels {}/{} vs oracle {generic}/{legal}",
                    got.generic_level, got.legal_level
                )
            },
        )?;
        let prohibits = got
            .derived_prohibitions
            .iter()
            .any(|p| p == "no public redistribution");
        ensure(prohibits == reident, || {
            format!("mask {mask:07b}: derived prohibition mismatch")
        })?;
        fired_total += items.len();
    }
    let took = within(Duration::from_secs(10), start)?;
    Ok(format!(
        "128/128 combinations match, {fired_total} items compared ({took:?})"
    ))
}

// 6 ------------------------------------------------------------------------

fn compliance() -> Verdict {
    let start = Instant::now();
    let mut b = DatasheetBuilder::default();
    b.personal_data.contains_personal_data = Some(true);
    b.personal_data.special_categories = Some(vec!["health".into()]);
    let health = check(&b.build().expect("valid"));
    ensure(
        health.status("G-ART35") == Some(ComplianceStatus::MissingEvidence),
        || format!("G-ART35 is {:?}", health.status("G-ART35")),
    )?;
    ensure(health.ai_act_tier == LegalRiskTier::High, || {
        "health tier not high".into()
    })?;

    let mut b = DatasheetBuilder::default();
    b.personal_data.contains_personal_data = Some(false);
    let non_personal = check(&b.build().expect("valid"));
    ensure(!non_personal.gdpr_applicable, || {
        "GDPR applicable to non-personal data".into()
    })?;
    for s in &non_personal.statuses {
        if s.law == Law::Gdpr {
            ensure(s.status == ComplianceStatus::NotApplicable, || {
                format!("{} is {:?}", s.id, s.status)
            })?;
        }
    }

    let evidence: Vec<&'static str> = obligation_catalog()
        .iter()
        .flat_map(|o| o.evidence_fields.iter().copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let pairs = (
        arbitrary::datasheet_with_density(0.5),
        arbitrary::datasheet_with_density(1.0),
        0..evidence.len(),
    );
    let mut runner = TestRunner::new_with_rng(
        Config {
            cases: 500,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    );
    let checked = RefCell::new(0u32);
    let changed = RefCell::new(0u32);
    for _ in 0..500 {
        let (base, donor, which) = pairs
            .new_tree(&mut runner)
            .map_err(|e| e.to_string())?
            .current();
        let path = evidence[which];
        let mut b = base.without(path).map_err(|e| e.to_string())?.to_builder();
        let before_ds = b.clone().build().map_err(|e| format!("{e:?}"))?;
        let value = donor
            .get(path)
            .map_err(|e| e.to_string())?
            .ok_or("donor lacks field")?;
        b.set(path, value).map_err(|e| e.to_string())?;
        let after_ds = arbitrary::repair(b).build().map_err(|e| format!("{e:?}"))?;
        let (before, after) = (check(&before_ds), check(&after_ds));
        for (x, y) in before.statuses.iter().zip(&after.statuses) {
            ensure(
                !(x.status == ComplianceStatus::Satisfied
                    && y.status == ComplianceStatus::MissingEvidence),
                || {
                    format!(
                        "populating {path} moved {} from satisfied to missing-evidence",
                        x.id
                    )
                },
            )?;
            if x.status != y.status {
                *changed.borrow_mut() += 1;
            }
        }
        *checked.borrow_mut() += 1;
    }
    let n = checked.into_inner();
    ensure(n == 500, || format!("{n} pairs"))?;
    let took = start.elapsed();
    Ok(format!(
        "G-ART35 missing-evidence, non-personal all not-applicable, {n} pairs monotone ({} status changes) ({took:?})",
        changed.into_inner()
    ))
}

// 7 ------------------------------------------------------------------------

const BASE_IRI: &str = "https://data.example.org/datasets/";

/// N-Triples line grammar (IRIREF, STRING_LITERAL_QUOTE with ECHAR/UCHAR,
/// optional datatype or language tag). Blank nodes are not produced, so the
/// checker rejects them.
fn grammar() -> Regex {
    let iri = r#"<[A-Za-z][A-Za-z0-9+.\-]*:[^\x00-\x20<>"{}|^`\\]*>"#;
    let echar = r#"\\[tbnrf"'\\]"#;
    let uchar = r"\\u[0-9A-Fa-f]{4}|\\U[0-9A-Fa-f]{8}";
    let literal =
        format!(r#""(?:[^"\\\n\r]|{echar}|{uchar})*"(?:\^\^{iri}|@[A-Za-z]+(?:-[A-Za-z0-9]+)*)?"#);
    Regex::new(&format!(r"^{iri} {iri} (?:{iri}|{literal}) \.$")).expect("grammar compiles")
}

fn triples(ds: &Datasheet) -> BTreeSet<Triple> {
    export_triples(ds, BASE_IRI)
        .expect("valid base")
        .into_iter()
        .collect()
}

fn export_checks() -> Verdict {
    let g = grammar();
    let typing = triples(&Datasheet::default());
    let mut lines = 0;
    let mut removals = 0;
    let files = corpus("valid");
    for f in &files {
        let ds = load(f);
        let nt = export_ntriples(&ds, BASE_IRI).map_err(|e| e.to_string())?;
        for line in nt.lines() {
            ensure(g.is_match(line), || {
                format!("{}: bad line {line}", f.display())
            })?;
            lines += 1;
        }
        ensure(nt.ends_with('\n') && !nt.contains("\n\n"), || {
            "line framing".into()
        })?;

        let all = triples(&ds);
        ensure(ds.populated_count() <= all.len(), || {
            "fewer triples than fields".into()
        })?;
        let own: BTreeMap<&str, BTreeSet<Triple>> = ds
            .populated_paths()
            .map(|p| {
                let mut b = DatasheetBuilder::default();
                b.set(p, ds.get(p).expect("path").expect("populated"))
                    .expect("typed");
                let t = triples(&b.build().expect("single field is valid"));
                (p, t.difference(&typing).cloned().collect())
            })
            .collect();
        for (path, mine) in &own {
            let others: BTreeSet<Triple> = own
                .iter()
                .filter(|(p, _)| *p != path)
                .flat_map(|(_, t)| t.iter().cloned())
                .collect();
            let reduced = triples(&ds.without(path).map_err(|e| e.to_string())?);
            let removed: BTreeSet<Triple> = all.difference(&reduced).cloned().collect();
            let expected: BTreeSet<Triple> = mine.difference(&others).cloned().collect();
            ensure(reduced.is_subset(&all) && removed == expected, || {
                format!(
                    "{}: removing {path} removed {} triples, expected {}",
                    f.display(),
                    removed.len(),
                    expected.len()
                )
            })?;
            ensure(!mine.is_empty(), || format!("{path} produced no triples"))?;
            removals += 1;
        }
    }
    Ok(format!(
        "{} fixtures, {lines} lines well-formed, {removals} field removals remove exactly their triples",
        files.len()
    ))
}

// 8 ------------------------------------------------------------------------

struct Run {
    code: i32,
    stdout: String,
    took: Duration,
}

fn cli(args: &[&str]) -> Run {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_datasheet-forge"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        took: start.elapsed(),
    }
}

fn cli_contract() -> Verdict {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let tmp = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let valid = |name: &str| {
        workspace()
            .join("corpus/valid")
            .join(name)
            .to_string_lossy()
            .into_owned()
    };
    let defect = |name: &str| {
        workspace()
            .join("corpus/defects")
            .join(name)
            .to_string_lossy()
            .into_owned()
    };
    let (t1, t2) = (tmp("a.json"), tmp("b.json"));
    let unwritable = tmp("no-such-dir/template.json");

    let cxr = valid("chest-radiograph-screening.json");
    let benign = valid("community-health-survey.json");
    let minimal = valid("minimal-required.json");
    let r1 = defect("incomplete-without-missing-elements.json");
    let misspelled = defect("misspelled-field.json");
    let truncated = defect("truncated-document.json");
    let missing = tmp("absent.json");

    type Check = Box<dyn Fn(&Run) -> Result<(), String>>;
    let none: fn() -> Check = || Box::new(|_| Ok(()));
    let json_ok: fn() -> Check = || {
        Box::new(|r: &Run| {
            serde_json::from_str::<Value>(&r.stdout)
                .map(|_| ())
                .map_err(|e| format!("machine output: {e}"))
        })
    };

    let matrix_check: Check = Box::new(|r: &Run| {
        let v: Value = serde_json::from_str(&r.stdout).map_err(|e| e.to_string())?;
        let rows = v["rows"].as_array().ok_or("rows")?;
        ensure(rows.len() == 12, || format!("{} rows", rows.len()))?;
        for (row, (label, golden)) in rows.iter().zip(TABLE) {
            ensure(row["label"] == label, || {
                format!("row {} vs {label}", row["label"])
            })?;
            for (p, want) in PROFILES.iter().zip(golden) {
                ensure(row["marks"][p] == want.token(), || {
                    format!("{label}/{p}: {}", row["marks"][p])
                })?;
            }
        }
        Ok(())
    });
    let names_r1: Check = Box::new(|r: &Run| {
        let v: Value = serde_json::from_str(&r.stdout).map_err(|e| e.to_string())?;
        let hit = v["findings"].as_array().is_some_and(|f| {
            f.iter()
                .any(|d| d["path"] == "characteristics.missing_elements")
        });
        ensure(hit, || {
            "report does not name characteristics.missing_elements".into()
        })
    });
    let zero_score: Check = Box::new(|r: &Run| {
        let v: Value = serde_json::from_str(&r.stdout).map_err(|e| e.to_string())?;
        ensure(v["overall_completeness"] == 0.0, || {
            format!("overall {}", v["overall_completeness"])
        })
    });
    let nt_ok: Check = Box::new(|r: &Run| {
        let g = grammar();
        ensure(
            !r.stdout.is_empty() && r.stdout.lines().all(|l| g.is_match(l)),
            || "export is not N-Triples".into(),
        )
    });
    let t1c = t1.clone();
    let required_only: Check = Box::new(move |r: &Run| {
        let v: Value = serde_json::from_str(&r.stdout).map_err(|e| e.to_string())?;
        let mut got: Vec<(String, String)> = v["findings"]
            .as_array()
            .ok_or("findings")?
            .iter()
            .map(|f| {
                (
                    f["path"].as_str().unwrap_or("").into(),
                    f["code"].as_str().unwrap_or("").into(),
                )
            })
            .collect();
        got.sort();
        let mut want: Vec<(String, String)> = field_registry()
            .required()
            .map(|s| (s.path.to_string(), "missing-required".to_string()))
            .collect();
        want.sort();
        ensure(got == want, || format!("{t1c}: findings {got:?}"))
    });

    let t2c = t2.clone();
    let t1d = t1.clone();
    let identical: Check = Box::new(move |_| {
        let (a, b) = (
            fs::read(&t1d).map_err(|e| e.to_string())?,
            fs::read(&t2c).map_err(|e| e.to_string())?,
        );
        ensure(a == b, || "init output differs between runs".into())
    });

    let cases: Vec<(Vec<&str>, i32, Check)> = vec![
        (vec!["validate", &cxr], 0, none()),
        (vec!["validate", "--format", "machine", &r1], 1, names_r1),
        (vec!["validate", &missing], 2, none()),
        (vec!["validate", &truncated], 2, none()),
        (vec!["validate", &misspelled], 2, none()),
        (
            vec![
                "validate",
                "--mode",
                "lenient",
                "--format",
                "machine",
                &misspelled,
            ],
            0,
            json_ok(),
        ),
        (vec!["score", "--format", "machine", &cxr], 0, json_ok()),
        (
            vec![
                "assess",
                "--reference-date",
                "2024-06-30",
                "--fail-on-high",
                &benign,
            ],
            0,
            none(),
        ),
        (
            vec![
                "assess",
                "--reference-date",
                "2024-06-30",
                "--fail-on-high",
                &minimal,
            ],
            1,
            none(),
        ),
        (
            vec![
                "assess",
                "--reference-date",
                "2024-06-30",
                "--format",
                "machine",
                &minimal,
            ],
            0,
            json_ok(),
        ),
        (vec!["assess", &cxr], 2, none()),
        (
            vec!["assess", "--reference-date", "2024-13-01", &cxr],
            2,
            none(),
        ),
        (
            vec!["assess", "--reference-date", "2024-06-30", &truncated],
            2,
            none(),
        ),
        (vec!["comply", "--strict", &cxr], 0, none()),
        (vec!["comply", "--strict", &minimal], 1, none()),
        (
            vec!["comply", "--format", "machine", &minimal],
            0,
            json_ok(),
        ),
        (
            vec!["compare", "--profiles", "all", "--format", "machine"],
            0,
            matrix_check,
        ),
        (vec!["compare", "--profiles", "no-such-profile"], 2, none()),
        (vec!["export", "--base-iri", BASE_IRI, &cxr], 0, nt_ok),
        (
            vec!["export", "--base-iri", "datasets/local", &cxr],
            2,
            none(),
        ),
        (vec!["render", &cxr], 0, none()),
        (vec!["render", "--format", "machine", &cxr], 0, json_ok()),
        (vec!["init", "--output", &t1], 0, none()),
        (vec!["init", "--output", &t2], 0, identical),
        (vec!["score", "--format", "machine", &t1], 0, zero_score),
        (
            vec!["validate", "--format", "machine", &t1],
            1,
            required_only,
        ),
        (vec!["init", "--output", &unwritable], 2, none()),
        (vec!["init"], 2, none()),
        (vec!["frobnicate"], 2, none()),
        (vec![], 2, none()),
    ];

    let mut slowest = Duration::ZERO;
    for (args, want, extra) in &cases {
        let run = cli(args);
        ensure([0, 1, 2].contains(&run.code), || {
            format!("{args:?} exited {}", run.code)
        })?;
        ensure(run.code == *want, || {
            format!("{args:?} exited {}, expected {want}", run.code)
        })?;
        ensure(run.took < Duration::from_secs(1), || {
            format!("{args:?} took {:?}", run.took)
        })?;
        extra(&run).map_err(|e| format!("{args:?}: {e}"))?;
        slowest = slowest.max(run.took);
    }
    Ok(format!(
        "{} invocations, exit codes as specified, slowest {slowest:?}",
        cases.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("field-count fidelity", field_counts),
        ("coverage table reproduction", table_one),
        ("round-trip property", round_trip),
        ("corpus soundness", corpus_soundness),
        ("risk-rule oracle equivalence", risk_oracle),
        ("compliance conservatism", compliance),
        ("export well-formedness", export_checks),
        ("CLI contract", cli_contract),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let verdict = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into());
            Err(msg)
        });
        match verdict {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
