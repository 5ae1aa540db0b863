//! The scenario pipeline and its reports.
//!
//! [`run_pipeline`] matches hypotheses against reality, updates the prior,
//! optionally iterates, and collects everything into a [`Report`]. Reports are
//! rendered by [`write_report`] as JSON or as aligned text tables. Every
//! number is stored exactly; each rendered value carries its exact form next
//! to a round-half-even decimal at the requested precision.

use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::bayes::{bayes_report, ket_posterior, mu_vector, KetPosterior, MatchVector};
use crate::coevent::match_coevent;
use crate::error::Error;
use crate::labelling::{labelling_of, Labelling};
use crate::measures::{certainty_of, condition_certainty, BelievabilityDistribution, CertaintySpace, CertaintyTable};
use crate::rational::{self, Rational};
use crate::recurrence::{limit_believability, run, IterationStep, IterationTrace, LimitResult, RunOptions};
use crate::scenario::Scenario;
use crate::space::Label;

/// Which update formula a report uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Variant {
    /// Believabilities reweighted by match probabilities.
    #[default]
    Bra,
    /// Terrace probabilities reweighted by believabilities. Kept for
    /// comparison only: it updates the chance side, not the hypotheses.
    Ket,
    /// The match certainty table conditioned on itself.
    Braket,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Bra => "bra",
            Variant::Ket => "ket",
            Variant::Braket => "braket",
        }
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "bra" => Ok(Variant::Bra),
            "ket" => Ok(Variant::Ket),
            "braket" => Ok(Variant::Braket),
            other => Err(format!("unknown variant {other:?}; expected bra, ket or braket")),
        }
    }
}

const KET_NOTE: &str = "rejected variant: the ket-formula reweights terrace probabilities by believability; \
it does not update believability in the hypotheses and is shown for comparison only";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineOptions {
    pub variant: Variant,
    /// Run the recurrent update after the first step.
    pub iterate: Option<RunOptions>,
    /// Most iteration steps to list in a rendered report.
    pub trace_limit: usize,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions { variant: Variant::Bra, iterate: None, trace_limit: 100 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterationSummary {
    pub trace: IterationTrace,
    pub limit: LimitResult,
    pub trace_limit: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub scenario: Option<String>,
    pub variant: Variant,
    pub prior: BelievabilityDistribution,
    pub mu: MatchVector,
    /// `Φ(M)` under the prior.
    pub phi_prior: Rational,
    /// Per-label posterior: believabilities for `bra`, covering sums of
    /// terrace posteriors for `ket`, row sums of the conditioned table for
    /// `braket`.
    pub posterior: Vec<Rational>,
    /// Posterior certainty of `M`; only the bra-formula defines one.
    pub phi_post: Option<Rational>,
    /// Named labellings: `H`, `R`, `M`, and the refinement `H∩R`.
    pub labellings: Vec<(String, Labelling)>,
    /// `bra`: posterior certainty over `H∩R`; `braket`: conditioned table of `M`.
    pub table: Option<CertaintyTable>,
    pub ket: Option<KetPosterior>,
    pub note: Option<String>,
    pub iteration: Option<IterationSummary>,
}

impl Report {
    pub fn labels(&self) -> &[Label] {
        self.prior.labels()
    }
}

/// A pipeline that stopped because the update was undefined or invalid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineFailure {
    pub scenario: Option<String>,
    pub variant: Variant,
    pub mu: MatchVector,
    pub phi_prior: Rational,
    pub error: Error,
}

pub fn run_pipeline(s: &Scenario, options: &PipelineOptions) -> Result<Report, Box<PipelineFailure>> {
    let (h, r, prior) = (&s.hypotheses, &s.reality, &s.believabilities);
    let mu = mu_vector(h, r).expect("scenario rows share labels and space");
    let m = match_coevent(h, r).expect("scenario rows share labels and space");
    let c = CertaintySpace::new(std::sync::Arc::clone(s.space()), prior.clone());
    let phi_prior = certainty_of(&m, &c).expect("scenario rows share labels and space");
    let fail = |error: Error| {
        Box::new(PipelineFailure {
            scenario: s.name.clone(),
            variant: options.variant,
            mu: mu.clone(),
            phi_prior: phi_prior.clone(),
            error,
        })
    };

    let bra = bayes_report(h, r, prior).map_err(fail)?;
    let labellings = vec![
        ("H".to_string(), labelling_of(h)),
        ("R".to_string(), labelling_of(r)),
        ("M".to_string(), labelling_of(&m)),
        ("H∩R".to_string(), bra.refinement.clone()),
    ];
    let mut report = Report {
        scenario: s.name.clone(),
        variant: options.variant,
        prior: prior.clone(),
        mu: mu.clone(),
        phi_prior: phi_prior.clone(),
        posterior: bra.posterior.values().to_vec(),
        phi_post: Some(bra.phi_post.clone()),
        labellings,
        table: Some(bra.posterior_table.clone()),
        ket: None,
        note: None,
        iteration: None,
    };
    match options.variant {
        Variant::Bra => {}
        Variant::Ket => {
            let k = ket_posterior(&m, &c).map_err(fail)?;
            report.posterior = k.labels.clone();
            report.phi_post = None;
            report.table = None;
            report.ket = Some(k);
            report.note = Some(KET_NOTE.to_string());
        }
        Variant::Braket => {
            let table = condition_certainty(&m, &c).map_err(fail)?;
            let mut sums = vec![Rational::default(); mu.values().len()];
            for ((x, _), v) in table.cells() {
                sums[x] += v;
            }
            report.posterior = sums;
            report.phi_post = None;
            report.table = Some(table);
        }
    }
    if let Some(run_options) = &options.iterate {
        let trace = run(prior, &mu, run_options).map_err(fail)?;
        let limit = limit_believability(prior, &mu).map_err(fail)?;
        report.iteration = Some(IterationSummary { trace, limit, trace_limit: options.trace_limit });
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Table,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "table" => Ok(Format::Table),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?}; expected table or json")),
        }
    }
}

/// `{"exact": "a/b", "decimal": "0.xxx"}`.
pub fn value_json(v: &Rational, precision: usize) -> Value {
    json!({ "exact": rational::to_exact_string(v), "decimal": rational::to_decimal(v, precision) })
}

fn per_label(labels: &[Label], values: &[Rational], precision: usize) -> Value {
    let map: Map<String, Value> =
        labels.iter().zip(values).map(|(l, v)| (l.to_string(), value_json(v, precision))).collect();
    Value::Object(map)
}

fn terrace_key(labelling: &Labelling, index: usize) -> Value {
    let t = &labelling.terraces()[index];
    match t.covers.as_slice() {
        [one] => json!(one.display(labelling.labels())),
        many => json!(many.iter().map(|c| c.display(labelling.labels())).collect::<Vec<_>>()),
    }
}

fn labelling_json(l: &Labelling, precision: usize) -> Value {
    let items: Vec<Value> = (0..l.len())
        .map(|i| {
            let t = &l.terraces()[i];
            json!({
                "cover": terrace_key(l, i),
                "atoms": t.atoms,
                "probability": value_json(&t.probability, precision),
            })
        })
        .collect();
    Value::Array(items)
}

fn table_json(table: &CertaintyTable, precision: usize) -> Value {
    let l = table.labelling();
    let cells: Vec<Value> = table
        .cells()
        .map(|((x, t), v)| {
            json!({
                "label": table.labels()[x].as_str(),
                "terrace": terrace_key(l, t),
                "atoms": l.terraces()[t].atoms,
                "value": value_json(v, precision),
            })
        })
        .collect();
    json!({ "cells": cells, "total": value_json(&table.total(), precision) })
}

fn step_json(labels: &[Label], step: &IterationStep, precision: usize) -> Value {
    json!({
        "n": step.n,
        "believabilities": per_label(labels, step.believabilities.values(), precision),
        "certainty": value_json(&step.certainty, precision),
    })
}

pub fn report_json(r: &Report, precision: usize) -> Value {
    let labels = r.labels();
    let mut doc = Map::new();
    doc.insert("scenario".into(), json!(r.scenario));
    doc.insert("variant".into(), json!(r.variant.as_str()));
    if let Some(note) = &r.note {
        doc.insert("note".into(), json!(note));
    }
    doc.insert("labels".into(), json!(labels.iter().map(Label::as_str).collect::<Vec<_>>()));
    doc.insert("prior".into(), per_label(labels, r.prior.values(), precision));
    doc.insert("mu".into(), per_label(labels, r.mu.values(), precision));
    doc.insert("phi_prior".into(), value_json(&r.phi_prior, precision));
    doc.insert("posterior".into(), per_label(labels, &r.posterior, precision));
    doc.insert("phi_post".into(), r.phi_post.as_ref().map_or(Value::Null, |v| value_json(v, precision)));
    let labellings: Map<String, Value> =
        r.labellings.iter().map(|(name, l)| (name.clone(), labelling_json(l, precision))).collect();
    doc.insert("labellings".into(), Value::Object(labellings));
    if let Some(table) = &r.table {
        doc.insert("table".into(), table_json(table, precision));
    }
    if let Some(k) = &r.ket {
        let terraces: Vec<Value> = k
            .terraces
            .iter()
            .enumerate()
            .map(|(i, v)| {
                json!({
                    "cover": terrace_key(&k.labelling, i),
                    "atoms": k.labelling.terraces()[i].atoms,
                    "value": value_json(v, precision),
                })
            })
            .collect();
        doc.insert("ket_terraces".into(), Value::Array(terraces));
    }
    if let Some(it) = &r.iteration {
        let steps: Vec<Value> =
            it.trace.steps.iter().take(it.trace_limit).map(|s| step_json(labels, s, precision)).collect();
        let x_max: Vec<&str> = it.limit.x_max.indices().iter().map(|&x| labels[x].as_str()).collect();
        doc.insert(
            "iteration".into(),
            json!({
                "converged": it.trace.converged,
                "n_final": it.trace.n_final,
                "steps": steps,
                "final": step_json(labels, it.trace.last(), precision),
                "limit": {
                    "x_max": x_max,
                    "believabilities": per_label(labels, it.limit.limit_believabilities.values(), precision),
                    "certainty": value_json(&it.limit.limit_certainty, precision),
                },
            }),
        );
    }
    Value::Object(doc)
}

pub fn failure_json(f: &PipelineFailure, precision: usize) -> Value {
    json!({
        "scenario": f.scenario,
        "variant": f.variant.as_str(),
        "error": { "kind": f.error.kind(), "message": f.error.to_string() },
        "mu": per_label(f.mu.labels(), f.mu.values(), precision),
        "phi_prior": value_json(&f.phi_prior, precision),
    })
}

/// Render left-aligned columns separated by two spaces.
pub(crate) fn columns(rows: &[Vec<String>]) -> String {
    let ncols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..ncols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            line.push_str(&" ".repeat(widths[c] - cell.chars().count()));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn dec(v: &Rational, precision: usize) -> String {
    rational::to_decimal(v, precision)
}

fn terrace_legend(l: &Labelling, precision: usize) -> String {
    let rows: Vec<Vec<String>> = l
        .terraces()
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let n = t.atoms.len();
            vec![
                format!("  T{}", i + 1),
                t.display_key(l.labels()),
                format!("{n} atom{}", if n == 1 { "" } else { "s" }),
                format!("p = {}", dec(&t.probability, precision)),
                rational::to_exact_string(&t.probability),
            ]
        })
        .collect();
    columns(&rows)
}

fn table_text(table: &CertaintyTable, precision: usize) -> String {
    let l = table.labelling();
    let mut rows = vec![std::iter::once(String::new()).chain((1..=l.len()).map(|i| format!("T{i}"))).collect()];
    for (x, label) in table.labels().iter().enumerate() {
        let mut row = vec![label.to_string()];
        row.extend((0..l.len()).map(|t| table.get(x, t).map_or("-".to_string(), |v| dec(v, precision))));
        rows.push(row);
    }
    columns(&rows)
}

pub fn report_text(r: &Report, precision: usize) -> String {
    let labels = r.labels();
    let mut out = String::new();
    let _ = writeln!(out, "scenario  {}", r.scenario.as_deref().unwrap_or("unnamed"));
    let _ = writeln!(out, "variant   {}", r.variant.as_str());
    if let Some(note) = &r.note {
        let _ = writeln!(out, "note      {note}");
    }
    out.push('\n');

    let posterior_head = match r.variant {
        Variant::Bra => "posterior",
        Variant::Ket => "ket posterior",
        Variant::Braket => "conditioned",
    };
    let mut rows = vec![vec!["label".into(), "prior".into(), "mu".into(), posterior_head.into()]];
    for (x, label) in labels.iter().enumerate() {
        rows.push(vec![
            label.to_string(),
            dec(r.prior.value(x), precision),
            dec(&r.mu.values()[x], precision),
            dec(&r.posterior[x], precision),
        ]);
    }
    out.push_str(&columns(&rows));
    out.push('\n');

    let mut totals = vec![vec!["Φ(M)".to_string(), dec(&r.phi_prior, precision), rational::to_exact_string(&r.phi_prior)]];
    if let Some(p) = &r.phi_post {
        totals.push(vec!["Φ_post(M)".into(), dec(p, precision), rational::to_exact_string(p)]);
    }
    out.push_str(&columns(&totals));

    if let Some(table) = &r.table {
        let title = match r.variant {
            Variant::Braket => "conditioned certainty φ_x(T)/Φ(M) over M",
            _ => "posterior certainty φ_post_x(T) over H∩R",
        };
        let _ = write!(out, "\n{title}\n{}\n", terrace_legend(table.labelling(), precision));
        out.push_str(&table_text(table, precision));
    }
    if let Some(k) = &r.ket {
        let _ = writeln!(out, "\nket posterior p_post(T) over M\n{}", terrace_legend(&k.labelling, precision));
        let rows: Vec<Vec<String>> =
            k.terraces.iter().enumerate().map(|(i, v)| vec![format!("  T{}", i + 1), dec(v, precision)]).collect();
        out.push_str(&columns(&rows));
    }
    if let Some(it) = &r.iteration {
        let _ = writeln!(
            out,
            "\niteration  {} after {} step{}",
            if it.trace.converged { "converged" } else { "stopped" },
            it.trace.n_final,
            if it.trace.n_final == 1 { "" } else { "s" }
        );
        let mut rows = vec![std::iter::once("n".to_string())
            .chain(labels.iter().map(Label::to_string))
            .chain(std::iter::once("Φ".to_string()))
            .collect::<Vec<_>>()];
        let step_row = |s: &IterationStep| {
            std::iter::once(s.n.to_string())
                .chain(s.believabilities.values().iter().map(|v| dec(v, precision)))
                .chain(std::iter::once(dec(&s.certainty, precision)))
                .collect::<Vec<_>>()
        };
        rows.push(step_row(&it.trace.initial));
        let shown: Vec<&IterationStep> = it.trace.steps.iter().take(it.trace_limit).collect();
        rows.extend(shown.iter().map(|s| step_row(s)));
        let last = it.trace.last();
        if shown.last().map(|s| s.n) != Some(last.n) && last.n != 0 {
            rows.push(vec!["…".to_string()]);
            rows.push(step_row(last));
        }
        out.push_str(&columns(&rows));
        let mut limit_row = vec!["limit".to_string()];
        limit_row.extend(it.limit.limit_believabilities.values().iter().map(|v| dec(v, precision)));
        limit_row.push(dec(&it.limit.limit_certainty, precision));
        out.push_str(&columns(&[limit_row]));
    }
    out
}

pub fn failure_text(f: &PipelineFailure, precision: usize) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "scenario  {}", f.scenario.as_deref().unwrap_or("unnamed"));
    let _ = writeln!(out, "variant   {}", f.variant.as_str());
    let _ = writeln!(out, "error     {}: {}", f.error.kind(), f.error);
    out.push('\n');
    let mut rows = vec![vec!["label".to_string(), "mu".to_string()]];
    for (l, v) in f.mu.labels().iter().zip(f.mu.values()) {
        rows.push(vec![l.to_string(), dec(v, precision)]);
    }
    out.push_str(&columns(&rows));
    let _ = writeln!(out, "\nΦ(M)  {}  {}", dec(&f.phi_prior, precision), rational::to_exact_string(&f.phi_prior));
    out
}

/// Render a report; JSON output is pretty-printed with a stable key order.
pub fn write_report(r: &Report, format: Format, precision: usize) -> String {
    match format {
        Format::Json => pretty(&report_json(r, precision)),
        Format::Table => report_text(r, precision),
    }
}

pub fn write_failure(f: &PipelineFailure, format: Format, precision: usize) -> String {
    match format {
        Format::Json => pretty(&failure_json(f, precision)),
        Format::Table => failure_text(f, precision),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}
