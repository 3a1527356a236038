//! Coverage of documentation categories by framework profiles.
//!
//! A section is `full` when a profile covers every field in it, `absent` when
//! it covers none, and `partial` otherwise. The two representation rows come
//! from profile flags.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::model::Datasheet;
use crate::registry::field_registry;
use crate::vocab::{SectionId, Vocabulary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoverageMark {
    Absent,
    Partial,
    Full,
}

impl CoverageMark {
    pub fn token(self) -> &'static str {
        match self {
            CoverageMark::Full => "full",
            CoverageMark::Partial => "partial",
            CoverageMark::Absent => "absent",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            CoverageMark::Full => "●",
            CoverageMark::Partial => "○",
            CoverageMark::Absent => "✗",
        }
    }

    fn from_counts(covered: usize, total: usize) -> Self {
        if covered == 0 {
            CoverageMark::Absent
        } else if covered == total {
            CoverageMark::Full
        } else {
            CoverageMark::Partial
        }
    }
}

impl fmt::Display for CoverageMark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl Serialize for CoverageMark {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.token())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameworkProfile {
    pub name: String,
    pub covered_paths: BTreeSet<String>,
    pub structured: bool,
    pub machine_readable: bool,
    pub interoperable: CoverageMark,
}

impl FrameworkProfile {
    /// Marks for the machine-readable row: full when structured and
    /// machine-readable, partial when only one holds.
    fn machine_readable_mark(&self) -> CoverageMark {
        CoverageMark::from_counts(
            usize::from(self.structured) + usize::from(self.machine_readable),
            2,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Category {
    Section(SectionId),
    MachineReadable,
    Interoperability,
}

impl Category {
    /// The twelve rows in display order.
    pub fn all() -> Vec<Category> {
        SectionId::ALL
            .iter()
            .map(|s| Category::Section(*s))
            .chain([Category::MachineReadable, Category::Interoperability])
            .collect()
    }

    pub fn label(self) -> &'static str {
        match self {
            Category::Section(s) => match s {
                SectionId::Metadata => "Metadata",
                SectionId::Purpose => "Purpose",
                SectionId::Source => "Source Information",
                SectionId::Temporal => "Temporal Information",
                SectionId::Demographics => "Demographics",
                SectionId::Characteristics => "Data Characteristics",
                SectionId::BiasMitigation => "Bias Mitigations",
                SectionId::PersonalData => "Personal Data",
                SectionId::RiskCompliance => "Risk and Compliance",
                SectionId::UsageRestriction => "Usage Restriction",
            },
            Category::MachineReadable => "Machine-readable",
            Category::Interoperability => "Interoperability",
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Category::Section(s) => s.token(),
            Category::MachineReadable => "machine_readable",
            Category::Interoperability => "interoperability",
        }
    }
}

impl Serialize for Category {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.token())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageMatrix {
    pub categories: Vec<Category>,
    pub profiles: Vec<String>,
    /// `cells[row][column]`, rows following `categories`, columns `profiles`.
    pub cells: Vec<Vec<CoverageMark>>,
}

impl CoverageMatrix {
    pub fn get(&self, category: Category, profile: &str) -> Option<CoverageMark> {
        let row = self.categories.iter().position(|c| *c == category)?;
        let col = self.profiles.iter().position(|p| p == profile)?;
        Some(self.cells[row][col])
    }

    pub fn row(&self, category: Category) -> Option<&[CoverageMark]> {
        let row = self.categories.iter().position(|c| *c == category)?;
        Some(&self.cells[row])
    }

    fn render(&self, mark: impl Fn(CoverageMark) -> &'static str) -> String {
        let label_width = self
            .categories
            .iter()
            .map(|c| c.label().chars().count())
            .max()
            .unwrap_or(0)
            .max("category".len());
        let widths: Vec<usize> = self
            .profiles
            .iter()
            .map(|p| p.chars().count().max(7))
            .collect();
        let mut out = format!("{:<label_width$}", "category");
        for (p, w) in self.profiles.iter().zip(&widths) {
            out.push_str(&format!("  {p:<w$}"));
        }
        out.push('\n');
        for (cat, row) in self.categories.iter().zip(&self.cells) {
            out.push_str(&format!("{:<label_width$}", cat.label()));
            for (m, w) in row.iter().zip(&widths) {
                out.push_str(&format!("  {:<w$}", mark(*m)));
            }
            out.push('\n');
        }
        out
    }

    /// Text table with `full` / `partial` / `absent` tokens.
    pub fn render_text(&self) -> String {
        self.render(CoverageMark::token)
    }

    /// Text table with ● / ○ / ✗ symbols.
    pub fn render_symbols(&self) -> String {
        self.render(CoverageMark::symbol)
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Row<'a> {
            category: Category,
            label: &'static str,
            marks: BTreeMap<&'a str, CoverageMark>,
        }
        #[derive(Serialize)]
        struct Doc<'a> {
            profiles: &'a [String],
            rows: Vec<Row<'a>>,
        }
        let rows = self
            .categories
            .iter()
            .zip(&self.cells)
            .map(|(c, cells)| Row {
                category: *c,
                label: c.label(),
                marks: self
                    .profiles
                    .iter()
                    .map(String::as_str)
                    .zip(cells.iter().copied())
                    .collect(),
            })
            .collect();
        serde_json::to_string_pretty(&Doc {
            profiles: &self.profiles,
            rows,
        })
        .expect("matrix serializes")
    }
}

fn section_mark(covered: &BTreeSet<String>, section: SectionId) -> CoverageMark {
    let fields: Vec<_> = field_registry().section(section).collect();
    let hit = fields.iter().filter(|f| covered.contains(f.path)).count();
    CoverageMark::from_counts(hit, fields.len())
}

pub fn coverage_matrix(profiles: &[FrameworkProfile]) -> CoverageMatrix {
    let categories = Category::all();
    let cells = categories
        .iter()
        .map(|c| {
            profiles
                .iter()
                .map(|p| match c {
                    Category::Section(s) => section_mark(&p.covered_paths, *s),
                    Category::MachineReadable => p.machine_readable_mark(),
                    Category::Interoperability => p.interoperable,
                })
                .collect()
        })
        .collect();
    CoverageMatrix {
        categories,
        profiles: profiles.iter().map(|p| p.name.clone()).collect(),
        cells,
    }
}

pub fn datasheet_coverage(ds: &Datasheet) -> BTreeMap<SectionId, CoverageMark> {
    let covered: BTreeSet<String> = ds.populated_paths().map(str::to_string).collect();
    SectionId::ALL
        .iter()
        .map(|s| (*s, section_mark(&covered, *s)))
        .collect()
}

pub const THIS_APPROACH: &str = "this-approach";
pub const DATASHEETS_FOR_DATASETS: &str = "datasheets-for-datasets";
pub const DATASET_NUTRITION_LABEL: &str = "dataset-nutrition-label";
pub const DATA_STATEMENTS_NLP: &str = "data-statements-nlp";

fn section_paths(sections: &[SectionId]) -> impl Iterator<Item = &'static str> + '_ {
    sections
        .iter()
        .flat_map(|s| field_registry().section(*s).map(|e| e.path))
}

fn profile(
    name: &str,
    full_sections: &[SectionId],
    extra_paths: &[&str],
    structured: bool,
    machine_readable: bool,
    interoperable: CoverageMark,
) -> FrameworkProfile {
    FrameworkProfile {
        name: name.to_string(),
        covered_paths: section_paths(full_sections)
            .map(str::to_string)
            .chain(extra_paths.iter().map(|p| p.to_string()))
            .collect(),
        structured,
        machine_readable,
        interoperable,
    }
}

/// The four compared approaches.
///
/// The covered paths of the three external frameworks are calibration data:
/// each framework's questions mapped onto the nearest registry fields. They
/// are not a field-by-field claim about those frameworks.
pub fn builtin_profiles() -> Vec<FrameworkProfile> {
    use SectionId as S;
    vec![
        profile(
            THIS_APPROACH,
            SectionId::ALL,
            &[],
            true,
            true,
            CoverageMark::Partial,
        ),
        profile(
            DATASHEETS_FOR_DATASETS,
            &[S::Metadata, S::Purpose, S::Source],
            &[
                "temporal.coverage_start",
                "temporal.coverage_end",
                "temporal.update_frequency",
                "characteristics.record_count",
                "characteristics.feature_description",
                "characteristics.incomplete",
                "characteristics.missing_elements",
                "personal_data.contains_personal_data",
                "personal_data.special_categories",
                "personal_data.reidentification_risk",
                "risk_compliance.impact_assessments",
                "usage_restriction.access_restrictions",
                "usage_restriction.prohibitions",
            ],
            false,
            false,
            CoverageMark::Absent,
        ),
        profile(
            DATASET_NUTRITION_LABEL,
            &[S::Metadata, S::Purpose, S::Source, S::UsageRestriction],
            &[
                "temporal.coverage_start",
                "temporal.coverage_end",
                "demographics.age_distribution",
                "demographics.gender_distribution",
                "demographics.ethnicity_distribution",
                "demographics.underrepresented_groups",
                "characteristics.media_type",
                "characteristics.record_count",
                "characteristics.feature_description",
                "characteristics.missing_elements",
                "personal_data.contains_personal_data",
                "personal_data.personal_categories",
                "risk_compliance.applicable_laws",
                "risk_compliance.suggested_mitigations",
            ],
            true,
            true,
            CoverageMark::Partial,
        ),
        profile(
            DATA_STATEMENTS_NLP,
            &[S::Metadata, S::Purpose, S::Demographics],
            &[
                "source.source_description",
                "source.provenance",
                "characteristics.media_type",
                "characteristics.feature_description",
                "personal_data.contains_personal_data",
            ],
            false,
            false,
            CoverageMark::Absent,
        ),
    ]
}
