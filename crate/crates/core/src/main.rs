use clap::{Parser, Subcommand, ValueEnum};
use leafnorm::dsl::{self, ExecOptions, Format, Report};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "leafnorm", version, about = "Run leafnorm programs (.lnf)")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Execute a program and print its report.
    Run {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record per-command wall-clock time (makes output non-deterministic).
        #[arg(long)]
        timing: bool,
    },
    /// Execute a program and report only whether every verdict holds.
    Check { file: PathBuf },
}

const EXIT_PARSE: u8 = 2;

fn load(file: &Path, opts: ExecOptions) -> Result<Report, ExitCode> {
    let src = std::fs::read_to_string(file).map_err(|e| {
        eprintln!("leafnorm: cannot read {}: {e}", file.display());
        ExitCode::from(EXIT_PARSE)
    })?;
    dsl::run(&src, opts).map_err(|e| {
        eprintln!("{}: {e}", file.display());
        ExitCode::from(EXIT_PARSE)
    })
}

fn verdict(report: &Report) -> ExitCode {
    if report.all_ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Cmd::Run {
            file,
            format,
            out,
            timing,
        } => {
            let report = match load(&file, ExecOptions { timing }) {
                Ok(r) => r,
                Err(code) => return code,
            };
            let format = match format {
                OutputFormat::Json => Format::Json,
                OutputFormat::Text => Format::Text,
            };
            let mut text = report.emit(format);
            if !text.ends_with('\n') {
                text.push('\n');
            }
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, text) {
                        eprintln!("leafnorm: cannot write {}: {e}", path.display());
                        return ExitCode::FAILURE;
                    }
                }
                None => print!("{text}"),
            }
            verdict(&report)
        }
        Cmd::Check { file } => {
            let report = match load(&file, ExecOptions::default()) {
                Ok(r) => r,
                Err(code) => return code,
            };
            for r in report.commands.iter().filter(|r| !r.ok) {
                eprintln!("failed: {}", r.cmd);
            }
            let passed = report.commands.iter().filter(|r| r.ok).count();
            println!("{passed}/{} commands ok", report.commands.len());
            verdict(&report)
        }
    }
}
