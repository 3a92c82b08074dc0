use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cellalg::io::{
    build_cached, run_report, AlgebraFile, AlgebraSpec, DatumJson, Family, ReportOptions, Section, Status,
};
use cellalg::{Error, Field};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "cellalg", version, about = "Cellular algebra workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an algebra and write it as JSON.
    Build {
        #[command(flatten)]
        spec: SpecArgs,
        /// Reuse algebra files stored here, keyed on the spec and version.
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run report sections on an algebra file (or on a spec given by flags).
    Report {
        #[command(flatten)]
        source: Source,
        /// Comma-separated: gram, simples, blocks, loewy, verify-assumptions, verify-theorems, oracle.
        #[arg(long, value_delimiter = ',')]
        sections: Vec<Section>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Assumption and theorem checks only.
    Verify {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Semisimplicity from the trace-form radical.
    Oracle {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SpecArgs {
    #[arg(long)]
    family: Option<Family>,
    #[arg(long, default_value_t = 0)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// Loop parameter; repeat once per colour.
    #[arg(long, allow_hyphen_values = true)]
    delta: Vec<String>,
    #[arg(long, default_value = "rational")]
    field: Field,
    /// Datum JSON for `--family custom-json`.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct Source {
    /// Algebra file written by `build`.
    file: Option<PathBuf>,
    #[command(flatten)]
    spec: SpecArgs,
}

impl SpecArgs {
    fn spec(&self) -> Result<AlgebraSpec, Error> {
        let family = self.family.ok_or_else(|| Error::input("--family is required"))?;
        let spec = AlgebraSpec { family, n: self.n, m: self.m, delta: self.delta.clone(), field: self.field };
        spec.validate()?;
        Ok(spec)
    }

    fn build_text(&self, cache: Option<&Path>) -> Result<String, Error> {
        if self.family == Some(Family::CustomJson) {
            let path = self.input.as_ref().ok_or_else(|| Error::input("custom-json needs --input"))?;
            let datum: DatumJson = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            return AlgebraFile::from_custom(datum)?.to_json();
        }
        build_cached(&self.spec()?, cache)
    }
}

impl Source {
    fn load(&self) -> Result<AlgebraFile, Error> {
        match &self.file {
            Some(path) => AlgebraFile::read(path),
            None => AlgebraFile::from_json(&self.spec.build_text(None)?),
        }
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Error> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn report(source: &Source, sections: Vec<Section>, seed: u64, out: Option<&Path>) -> Result<u8, Error> {
    let file = source.load()?;
    let sections = if sections.is_empty() { Section::ALL.to_vec() } else { sections };
    let doc = run_report(&file, &ReportOptions { sections, seed })?;
    emit(&doc.to_json()?, out)?;
    for s in &doc.sections {
        let status = match s.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Info => "info",
            Status::Unsupported => "unsupported",
        };
        eprintln!("{:<20} {status}", s.section.name());
        for n in &s.notes {
            eprintln!("  {n}");
        }
    }
    Ok(doc.exit_code() as u8)
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Build { spec, cache, out } => {
            let text = spec.build_text(cache.as_deref())?;
            emit(&text, out.as_deref())?;
            Ok(0)
        }
        Command::Report { source, sections, seed, out } => report(&source, sections, seed, out.as_deref()),
        Command::Verify { source, seed, out } => {
            report(&source, vec![Section::VerifyAssumptions, Section::VerifyTheorems], seed, out.as_deref())
        }
        Command::Oracle { source, out } => report(&source, vec![Section::Oracle], 0, out.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
