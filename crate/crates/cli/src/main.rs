//! `datasheet-forge`: validate, score, assess, check, compare, export and
//! render healthcare dataset datasheets.
//!
//! Exit codes: 0 success, 1 findings at error severity, 2 usage, I/O or
//! parse failure.

mod render;

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chrono::NaiveDate;
use clap::{Parser, Subcommand, ValueEnum};
use datasheet_forge::codec::parse;
use datasheet_forge::coverage::{builtin_profiles, coverage_matrix};
use datasheet_forge::vocab::{LegalRiskTier, RiskLevel, SectionId, Vocabulary};
use datasheet_forge::{
    check, export_ntriples, new_template, serialize, validate, Datasheet, Diagnostic, ParseMode,
    Severity,
};
use serde_json::json;

#[derive(Debug, Parser)]
#[command(
    name = "datasheet-forge",
    version,
    about = "Healthcare dataset datasheet toolkit"
)]
struct Cli {
    /// Output style.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,

    /// Suppress the report; only the exit code and errors remain.
    #[arg(long, short, global = true)]
    quiet: bool,

    /// Write the primary output here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Mode {
    #[default]
    Strict,
    Lenient,
}

impl From<Mode> for ParseMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Strict => ParseMode::Strict,
            Mode::Lenient => ParseMode::Lenient,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a datasheet against the schema and cross-field rules.
    Validate {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        mode: Mode,
    },
    /// Report per-section and overall completeness.
    Score { file: PathBuf },
    /// Run the risk rules as of a given date.
    Assess {
        file: PathBuf,
        /// Date the rules are evaluated against (YYYY-MM-DD).
        #[arg(long, value_parser = parse_reference_date)]
        reference_date: NaiveDate,
        /// Exit 1 when the generic level is high or the legal tier is high or above.
        #[arg(long)]
        fail_on_high: bool,
    },
    /// Check GDPR and AI Act evidence.
    Comply {
        file: PathBuf,
        /// Exit 1 when any applicable obligation lacks evidence.
        #[arg(long)]
        strict: bool,
    },
    /// Print the documentation coverage matrix.
    Compare {
        /// `all` or a comma-separated list of profile names.
        #[arg(long, default_value = "all")]
        profiles: String,
    },
    /// Export N-Triples using DCAT, ODRL and DPV terms.
    Export {
        file: PathBuf,
        #[arg(long)]
        base_iri: String,
    },
    /// Produce a readable report of the whole datasheet.
    Render { file: PathBuf },
    /// Write an empty template and a field guide next to it.
    Init,
}

fn parse_reference_date(s: &str) -> Result<NaiveDate, String> {
    if s.len() != 10 {
        return Err(format!("`{s}` is not a YYYY-MM-DD date"));
    }
    datasheet_forge::date::parse_date(s).map_err(|e| e.to_string())
}

/// Anything that ends the run with exit code 2.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(String),
    Parse(Vec<Diagnostic>),
}

type Outcome = Result<bool, Failure>;

struct Ctx {
    format: Format,
    quiet: bool,
    output: Option<PathBuf>,
}

impl Ctx {
    fn machine(&self) -> bool {
        self.format == Format::Machine
    }

    /// Writes the primary output to `--output` or stdout.
    fn emit(&self, text: &str) -> Result<(), Failure> {
        match &self.output {
            Some(path) => write_file(path, text.as_bytes()),
            None if self.quiet => Ok(()),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout
                    .write_all(text.as_bytes())
                    .and_then(|_| {
                        if text.ends_with('\n') {
                            Ok(())
                        } else {
                            stdout.write_all(b"\n")
                        }
                    })
                    .map_err(|e| Failure::Io(format!("stdout: {e}")))
            }
        }
    }

    fn warn(&self, d: &Diagnostic) {
        if !self.quiet {
            eprintln!("{d}");
        }
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    fs::write(path, bytes).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn read_file(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load(ctx: &Ctx, path: &Path, mode: ParseMode) -> Result<Datasheet, Failure> {
    let outcome = parse(&read_file(path)?, mode);
    match outcome.datasheet {
        Some(ds) => {
            outcome.diagnostics.iter().for_each(|d| ctx.warn(d));
            Ok(ds)
        }
        None => Err(Failure::Parse(outcome.diagnostics)),
    }
}

fn cmd_validate(ctx: &Ctx, file: &Path, mode: Mode) -> Outcome {
    let outcome = parse(&read_file(file)?, mode.into());
    let Some(ds) = outcome.datasheet else {
        if ctx.machine() {
            let doc = json!({ "valid": false, "parsed": false, "findings": outcome.diagnostics });
            ctx.emit(&serde_json::to_string_pretty(&doc).expect("serializes"))?;
        }
        return Err(Failure::Parse(outcome.diagnostics));
    };
    let report = validate(&ds).with_parse_diagnostics(outcome.diagnostics);
    if ctx.machine() {
        ctx.emit(&report.to_json())?;
    } else {
        let mut text = format!(
            "{}: {} ({}/{} fields, {:.1}% complete)\n",
            file.display(),
            if report.valid { "valid" } else { "invalid" },
            report.populated_fields,
            report.total_fields,
            report.overall_completeness * 100.0
        );
        for f in &report.findings {
            text.push_str(&format!("{f}\n"));
        }
        ctx.emit(&text)?;
    }
    Ok(!report.valid)
}

fn cmd_score(ctx: &Ctx, file: &Path) -> Outcome {
    let ds = load(ctx, file, ParseMode::Strict)?;
    let report = validate(&ds);
    if ctx.machine() {
        let doc = json!({
            "populated_fields": report.populated_fields,
            "total_fields": report.total_fields,
            "overall_completeness": report.overall_completeness,
            "section_completeness": report.section_completeness,
        });
        ctx.emit(&serde_json::to_string_pretty(&doc).expect("serializes"))?;
    } else {
        let mut text = format!(
            "overall {:.2} ({}/{})\n",
            report.overall_completeness, report.populated_fields, report.total_fields
        );
        for section in SectionId::ALL {
            text.push_str(&format!(
                "{:<18} {:.2}\n",
                section.token(),
                report.section_completeness[section]
            ));
        }
        ctx.emit(&text)?;
    }
    Ok(false)
}

fn cmd_assess(ctx: &Ctx, file: &Path, reference_date: NaiveDate, fail_on_high: bool) -> Outcome {
    let ds = load(ctx, file, ParseMode::Strict)?;
    let a = datasheet_forge::assess(&ds, reference_date);
    if ctx.machine() {
        ctx.emit(&a.to_json())?;
    } else {
        let mut text = format!(
            "risk as of {}: generic {}, legal {}\n",
            a.reference_date, a.generic_level, a.legal_level
        );
        for item in &a.items {
            text.push_str(&format!(
                "  {:<24} {} likelihood {}, severity {} ({})\n",
                item.rule_id,
                item.category.token(),
                item.likelihood,
                item.severity,
                item.trigger
            ));
        }
        for m in &a.mitigations {
            text.push_str(&format!("mitigation: {m}\n"));
        }
        for p in &a.derived_prohibitions {
            text.push_str(&format!("prohibition: {p}\n"));
        }
        ctx.emit(&text)?;
    }
    let high = a.generic_level == RiskLevel::High
        || matches!(
            a.legal_level,
            LegalRiskTier::High | LegalRiskTier::Unacceptable
        );
    Ok(fail_on_high && high)
}

fn cmd_comply(ctx: &Ctx, file: &Path, strict: bool) -> Outcome {
    let ds = load(ctx, file, ParseMode::Strict)?;
    let report = check(&ds);
    if ctx.machine() {
        ctx.emit(&report.to_json())?;
    } else {
        ctx.emit(&report.render_checklist())?;
    }
    Ok(strict && report.missing_evidence().next().is_some())
}

fn cmd_compare(ctx: &Ctx, profiles: &str) -> Outcome {
    let available = builtin_profiles();
    let selected = if profiles.trim() == "all" {
        available
    } else {
        let mut chosen = Vec::new();
        for name in profiles.split(',').map(str::trim) {
            let profile = available.iter().find(|p| p.name == name).ok_or_else(|| {
                let names: Vec<_> = available.iter().map(|p| p.name.as_str()).collect();
                Failure::Usage(format!(
                    "unknown profile `{name}`; expected `all` or any of {}",
                    names.join(", ")
                ))
            })?;
            chosen.push(profile.clone());
        }
        chosen
    };
    let matrix = coverage_matrix(&selected);
    if ctx.machine() {
        ctx.emit(&matrix.to_json())?;
    } else {
        ctx.emit(&format!(
            "{}\n● full  ○ partial  ✗ absent\n",
            matrix.render_symbols()
        ))?;
    }
    Ok(false)
}

fn cmd_export(ctx: &Ctx, file: &Path, base_iri: &str) -> Outcome {
    // Check the IRI before touching the file, so a bad flag is always a usage error.
    datasheet_forge::rdf::BaseIri::parse(base_iri).map_err(|e| Failure::Usage(e.to_string()))?;
    let ds = load(ctx, file, ParseMode::Strict)?;
    let nt = export_ntriples(&ds, base_iri).map_err(|e| Failure::Usage(e.to_string()))?;
    ctx.emit(&nt)?;
    Ok(false)
}

fn cmd_render(ctx: &Ctx, file: &Path) -> Outcome {
    let ds = load(ctx, file, ParseMode::Strict)?;
    if ctx.machine() {
        let doc = render::report_json(&ds);
        ctx.emit(&serde_json::to_string_pretty(&doc).expect("serializes"))?;
    } else {
        ctx.emit(&render::report_markdown(&ds))?;
    }
    Ok(false)
}

fn cmd_init(ctx: &Ctx) -> Outcome {
    let Some(path) = &ctx.output else {
        return Err(Failure::Usage("init needs --output <path>".into()));
    };
    write_file(path, &serialize(&new_template()))?;
    let mut guide = path.clone().into_os_string();
    guide.push(".fields.md");
    let guide = PathBuf::from(guide);
    write_file(&guide, render::field_guide().as_bytes())?;
    if !ctx.quiet {
        if ctx.machine() {
            let doc = json!({ "template": path, "field_guide": guide });
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("serializes")
            );
        } else {
            println!("wrote {} and {}", path.display(), guide.display());
        }
    }
    Ok(false)
}

fn run(cli: Cli) -> Outcome {
    let ctx = Ctx {
        format: cli.format,
        quiet: cli.quiet,
        output: cli.output,
    };
    match &cli.command {
        Command::Validate { file, mode } => cmd_validate(&ctx, file, *mode),
        Command::Score { file } => cmd_score(&ctx, file),
        Command::Assess {
            file,
            reference_date,
            fail_on_high,
        } => cmd_assess(&ctx, file, *reference_date, *fail_on_high),
        Command::Comply { file, strict } => cmd_comply(&ctx, file, *strict),
        Command::Compare { profiles } => cmd_compare(&ctx, profiles),
        Command::Export { file, base_iri } => cmd_export(&ctx, file, base_iri),
        Command::Render { file } => cmd_render(&ctx, file),
        Command::Init => cmd_init(&ctx),
    }
}

fn main() -> ExitCode {
    // clap reports its own usage errors with exit code 2.
    let cli = Cli::parse();
    match run(cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(failure) => {
            match failure {
                Failure::Usage(msg) => eprintln!("error: {msg}"),
                Failure::Io(msg) => eprintln!("error: {msg}"),
                Failure::Parse(diags) => {
                    for d in diags.iter().filter(|d| d.severity == Severity::Error) {
                        eprintln!("{d}");
                    }
                    if diags.iter().all(|d| !d.is_error()) {
                        eprintln!("error: document could not be parsed");
                    }
                }
            }
            ExitCode::from(2)
        }
    }
}
