use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use coevent::rational::{parse_rational, to_decimal, to_exact_string, Rational};
use coevent::report::{write_failure, PipelineFailure};
use coevent::{
    certainty_of, labelling_of, match_coevent, mu_vector, parse_scenario, render_diagram, run_pipeline, write_report,
    CertaintySpace, Error, Format, Labelling, PipelineOptions, RunOptions, Scenario, ScenarioError, Variant, View,
};

/// Co~event Bayes updates over scenario files.
#[derive(Parser)]
#[command(name = "coevent", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Summarize a scenario: atoms, labels, labellings and certainties.
    Inspect {
        file: PathBuf,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u16).range(1..=40))]
        precision: u16,
    },
    /// Match probabilities, optionally with an incidence diagram.
    Match {
        file: PathBuf,
        /// Diagram to draw: H, R or M.
        #[arg(long)]
        render: Option<View>,
        /// ASCII markers only.
        #[arg(long)]
        ascii: bool,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u16).range(1..=40))]
        precision: u16,
    },
    /// One Bayes update.
    Bayes {
        file: PathBuf,
        #[arg(long, default_value = "bra")]
        variant: Variant,
        #[arg(long, default_value = "table")]
        format: Format,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u16).range(1..=40))]
        precision: u16,
    },
    /// Repeat the Bayes update until believabilities settle.
    Iterate {
        file: PathBuf,
        /// Stop when no believability moves by this much (a rational or decimal).
        #[arg(long, default_value = "1e-12", value_parser = parse_eps)]
        eps: Rational,
        #[arg(long, default_value_t = 1_000_000)]
        max_iter: usize,
        /// Report every step, not only the first and last.
        #[arg(long)]
        trace: bool,
        /// Most steps to list when tracing.
        #[arg(long, default_value_t = 100)]
        trace_limit: usize,
        #[arg(long, default_value = "table")]
        format: Format,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u16).range(1..=40))]
        precision: u16,
    },
    /// Print the normalized scenario document.
    Normalize { file: PathBuf },
}

fn parse_eps(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn load(path: &Path) -> anyhow::Result<Result<Scenario, ScenarioError>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(parse_scenario(&text))
}

fn exit_for(error: &Error) -> ExitCode {
    match error {
        Error::UndefinedPosterior | Error::UndefinedConditional | Error::EmptySupport => ExitCode::from(3),
        _ => ExitCode::from(2),
    }
}

fn labelling_lines(name: &str, l: &Labelling, precision: usize) -> String {
    let mut out = format!("{name}\n");
    for t in l.terraces() {
        out.push_str(&format!(
            "  {:<12} {:>4} atoms  p = {}  {}\n",
            t.display_key(l.labels()),
            t.atoms.len(),
            to_decimal(&t.probability, precision),
            to_exact_string(&t.probability)
        ));
    }
    out
}

fn inspect(s: &Scenario, precision: usize) -> String {
    let c = CertaintySpace::new(std::sync::Arc::clone(s.space()), s.believabilities.clone());
    let m = match_coevent(&s.hypotheses, &s.reality).expect("validated scenario");
    let mut out = format!("scenario  {}\n", s.display_name());
    if let Some(d) = &s.description {
        out.push_str(&format!("          {d}\n"));
    }
    out.push_str(&format!("atoms     {}\nlabels    {}\n\n", s.space().len(), s.labels().len()));
    out.push_str("believabilities\n");
    for (l, b) in s.labels().iter().zip(s.believabilities.values()) {
        out.push_str(&format!("  {l}  {}  {}\n", to_decimal(b, precision), to_exact_string(b)));
    }
    out.push('\n');
    for (name, co) in [("H", &s.hypotheses), ("R", &s.reality), ("M", &m)] {
        out.push_str(&labelling_lines(&format!("labelling of {name}"), &labelling_of(co), precision));
        let phi = certainty_of(co, &c).expect("validated scenario");
        out.push_str(&format!("  Φ({name}) = {}  {}\n\n", to_decimal(&phi, precision), to_exact_string(&phi)));
    }
    out
}

fn matching(s: &Scenario, render: Option<View>, ascii: bool, precision: usize) -> String {
    let mu = mu_vector(&s.hypotheses, &s.reality).expect("validated scenario");
    let width = s.labels().iter().map(|l| l.as_str().chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for (l, v) in mu.labels().iter().zip(mu.values()) {
        out.push_str(&format!(
            "μ({l}){}  {}  {}\n",
            " ".repeat(width - l.as_str().chars().count()),
            to_decimal(v, precision),
            to_exact_string(v)
        ));
    }
    if let Some(view) = render {
        out.push('\n');
        out.push_str(&render_diagram(&s.hypotheses, &s.reality, view, ascii).expect("validated scenario"));
    }
    out
}

fn report_or_failure(
    s: &Scenario,
    options: &PipelineOptions,
    format: Format,
    precision: usize,
) -> ExitCode {
    match run_pipeline(s, options) {
        Ok(report) => {
            print!("{}", write_report(&report, format, precision));
            ExitCode::SUCCESS
        }
        Err(failure) => {
            let failure: &PipelineFailure = &failure;
            print!("{}", write_failure(failure, format, precision));
            eprintln!("coevent: {}", failure.error);
            exit_for(&failure.error)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let file = match &cli.command {
        Command::Inspect { file, .. }
        | Command::Match { file, .. }
        | Command::Bayes { file, .. }
        | Command::Iterate { file, .. }
        | Command::Normalize { file } => file.clone(),
    };
    let scenario = match load(&file) {
        Err(e) => {
            eprintln!("coevent: {e:#}");
            return ExitCode::from(1);
        }
        Ok(Err(e)) => {
            eprintln!("coevent: {}: {e}", file.display());
            return ExitCode::from(2);
        }
        Ok(Ok(s)) => s,
    };
    match cli.command {
        Command::Inspect { precision, .. } => {
            print!("{}", inspect(&scenario, precision as usize));
            ExitCode::SUCCESS
        }
        Command::Match { render, ascii, precision, .. } => {
            print!("{}", matching(&scenario, render, ascii, precision as usize));
            ExitCode::SUCCESS
        }
        Command::Bayes { variant, format, precision, .. } => {
            let options = PipelineOptions { variant, ..PipelineOptions::default() };
            report_or_failure(&scenario, &options, format, precision as usize)
        }
        Command::Iterate { eps, max_iter, trace, trace_limit, format, precision, .. } => {
            let options = PipelineOptions {
                iterate: Some(RunOptions { eps, n_max: max_iter, trace }),
                trace_limit,
                ..PipelineOptions::default()
            };
            report_or_failure(&scenario, &options, format, precision as usize)
        }
        Command::Normalize { .. } => {
            print!("{}", scenario.to_json_string());
            ExitCode::SUCCESS
        }
    }
}
