//! Command implementations behind the `diamond` binary.
//!
//! Every command returns an [`Outcome`] holding its output and exit code, so
//! the binary only parses arguments and prints.

pub mod document;

use std::fmt::Write as _;

use diamond_core::ambiguity::{
    all_ambiguities, check_convergence, complete, mc_residual, ConvergenceReport, Mode,
};
use diamond_core::chains::{anick_chains, verify_d_squared, ChainDifferential, SignConvention};
use diamond_core::dgmodel::{build_shafarevich, Differential, Grade};
use diamond_core::order::certify;
use diamond_core::rewrite::{confluence_oracle, DEFAULT_FUSE};
use diamond_core::{Certificate, Error, Rewriter, System};
use serde::Serialize;
use serde_json::{json, Value};

pub use document::{Loaded, SystemDocument};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NOT_CERTIFIED: i32 = 3;
pub const EXIT_NOT_CONVERGENT: i32 = 4;
pub const EXIT_FUSE: i32 = 5;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    NotCertified(String),
    #[error("{0}")]
    Resource(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::NotCertified(_) => EXIT_NOT_CERTIFIED,
            CliError::Resource(_) => EXIT_FUSE,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::FuseExceeded(_) | Error::BudgetExceeded { .. } => CliError::Resource(e.to_string()),
            Error::NotCertified(_) => CliError::NotCertified(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

impl Outcome {
    fn new(code: i32, stdout: String) -> Outcome {
        Outcome { code, stdout }
    }

    fn json(code: i32, v: &impl Serialize) -> Outcome {
        let mut s = serde_json::to_string_pretty(v).expect("serializable");
        s.push('\n');
        Outcome::new(code, s)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Options {
    pub json: bool,
    pub fuse: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            json: false,
            fuse: DEFAULT_FUSE,
        }
    }
}

fn certificate_json(doc: &SystemDocument) -> Value {
    serde_json::to_value(&doc.certificate).expect("serializable")
}

fn rewriter(loaded: &Loaded, opts: Options) -> Result<Rewriter, CliError> {
    Ok(Rewriter::new(loaded.system.clone(), loaded.certificate.clone())?.with_fuse(opts.fuse))
}

pub fn cmd_certify(doc: &SystemDocument, opts: Options) -> Result<Outcome, CliError> {
    let loaded = doc.load()?;
    let res = certify(&loaded.system, &loaded.certificate)?;
    let code = if res.is_certified() { EXIT_OK } else { EXIT_NOT_CERTIFIED };
    let verdict = if res.is_certified() { "Certified" } else { "Failed" };
    let witnesses: Vec<String> = res.witnesses.iter().map(|w| w.describe(&loaded.system)).collect();
    if opts.json {
        return Ok(Outcome::json(
            code,
            &json!({"verdict": verdict, "certificate": certificate_json(doc), "witnesses": witnesses}),
        ));
    }
    let mut out = format!("{verdict}\n");
    for w in witnesses {
        writeln!(out, "  {w}").unwrap();
    }
    Ok(Outcome::new(code, out))
}

#[derive(Debug, Serialize)]
pub struct AmbiguityJson {
    pub grade: String,
    pub kind: String,
    pub minimal: bool,
    pub obstruction: String,
    pub residue: String,
    pub trace_length: usize,
}

#[derive(Debug, Serialize)]
pub struct CheckJson {
    pub verdict: String,
    pub mode: String,
    pub ambiguities: Vec<AmbiguityJson>,
    pub certificate: Value,
}

fn report_json(system: &System, report: &ConvergenceReport, certificate: Value) -> CheckJson {
    CheckJson {
        verdict: report.verdict.to_string(),
        mode: report.mode.to_string(),
        ambiguities: report
            .ambiguities
            .iter()
            .map(|c| AmbiguityJson {
                grade: system.show_word(&c.ambiguity.grade),
                kind: c.ambiguity.kind.to_string(),
                minimal: c.ambiguity.minimal,
                obstruction: system.show(&c.obstruction),
                residue: system.show(&c.residue),
                trace_length: c.trace.len(),
            })
            .collect(),
        certificate,
    }
}

fn report_text(system: &System, report: &ConvergenceReport) -> String {
    let mut out = String::new();
    writeln!(out, "mode: {}", report.mode).unwrap();
    writeln!(out, "ambiguities: {}", report.ambiguities.len()).unwrap();
    for c in &report.ambiguities {
        let a = &c.ambiguity;
        let flag = if a.minimal { " minimal" } else { "" };
        writeln!(out, "  {} {}{}", system.show_word(&a.grade), a.kind, flag).unwrap();
        writeln!(out, "    obstruction: {}", system.show(&c.obstruction)).unwrap();
        writeln!(out, "    residue: {} ({} steps)", system.show(&c.residue), c.trace.len()).unwrap();
    }
    writeln!(out, "failures: {}", report.failures().count()).unwrap();
    writeln!(out, "verdict: {}", report.verdict).unwrap();
    out
}

pub fn cmd_check(doc: &SystemDocument, mode: Mode, opts: Options) -> Result<Outcome, CliError> {
    let loaded = doc.load()?;
    let rw = rewriter(&loaded, opts)?;
    let report = check_convergence(&rw, mode)?;
    let code = if report.is_convergent() { EXIT_OK } else { EXIT_NOT_CONVERGENT };
    if opts.json {
        return Ok(Outcome::json(code, &report_json(&loaded.system, &report, certificate_json(doc))));
    }
    Ok(Outcome::new(code, report_text(&loaded.system, &report)))
}

pub fn cmd_nf(doc: &SystemDocument, expr: &str, opts: Options) -> Result<Outcome, CliError> {
    let loaded = doc.load()?;
    let rw = rewriter(&loaded, opts)?;
    let s = &loaded.system;
    let g = s
        .alphabet()
        .parse_poly(expr, s.field())
        .map_err(|e| CliError::Input(format!("--expr: {e}")))?;
    let (nf, trace) = rw.normal_form(&g)?;
    let steps: Vec<Value> = trace
        .steps
        .iter()
        .map(|st| {
            json!({
                "word": s.show_word(&st.occurrence.host),
                "rule": s.show_word(&s.rule(st.rule).lhs),
                "position": st.occurrence.position(),
                "coeff": st.coeff.to_string(),
            })
        })
        .collect();
    if opts.json {
        return Ok(Outcome::json(
            EXIT_OK,
            &json!({"input": s.show(&g), "normal_form": s.show(&nf), "trace": steps}),
        ));
    }
    let mut out = format!("{}\n", s.show(&nf));
    for (i, st) in trace.steps.iter().enumerate() {
        writeln!(
            out,
            "  {}: {}*{} at {} by {}",
            i + 1,
            st.coeff,
            s.show_word(&st.occurrence.host),
            st.occurrence.position(),
            s.show_word(&s.rule(st.rule).lhs)
        )
        .unwrap();
    }
    Ok(Outcome::new(EXIT_OK, out))
}

pub fn cmd_obstructions(doc: &SystemDocument, opts: Options) -> Result<Outcome, CliError> {
    let loaded = doc.load()?;
    let rw = rewriter(&loaded, opts)?;
    let s = &loaded.system;
    let mut rows = Vec::new();
    for amb in all_ambiguities(s) {
        let mc = mc_residual(&rw, &amb)?;
        rows.push(json!({
            "grade": s.show_word(&amb.grade),
            "kind": amb.kind.to_string(),
            "minimal": amb.minimal,
            "description": amb.describe(s),
            "obstruction": s.show(&mc.obstruction),
            "residue": s.show(&mc.residue),
            "trace_length": mc.trace.len(),
            "witness_residual": s.show(&mc.residual),
            "mc_value": s.show(&mc.mc_value),
            "filtered": mc.filtered,
        }));
    }
    if opts.json {
        return Ok(Outcome::json(EXIT_OK, &json!({"ambiguities": rows})));
    }
    let mut out = format!("ambiguities: {}\n", rows.len());
    for r in &rows {
        writeln!(out, "  {}", r["description"].as_str().unwrap()).unwrap();
        for key in ["obstruction", "residue", "witness_residual", "mc_value"] {
            writeln!(out, "    {key}: {}", r[key].as_str().unwrap()).unwrap();
        }
    }
    Ok(Outcome::new(EXIT_OK, out))
}

pub fn cmd_chains(
    doc: &SystemDocument,
    max_degree: usize,
    max_length: usize,
    opts: Options,
) -> Result<Outcome, CliError> {
    let loaded = doc.load()?;
    let s = &loaded.system;
    let chains = anick_chains(s, max_degree, max_length)?;
    let conv = SignConvention::default();
    let mut d = ChainDifferential::new(s, conv)?;
    let report = verify_d_squared(s, max_degree, max_length, conv)?;
    let code = if report.holds() { EXIT_OK } else { EXIT_VIOLATION };
    let rows: Vec<Value> = chains
        .iter()
        .map(|c| {
            json!({
                "degree": c.degree,
                "chain": s.show_word(&c.word),
                "tail": s.show_word(&c.tail),
                "differential": d.of_chain(&c.word).display(s.alphabet()).to_string(),
            })
        })
        .collect();
    let violations: Vec<String> = report
        .violations
        .iter()
        .map(|(c, _, dd)| format!("{}: d(d(c)) = {}", s.show_word(&c.word), dd.display(s.alphabet())))
        .collect();
    if opts.json {
        return Ok(Outcome::json(
            code,
            &json!({"chains": rows, "d_squared": {"checked": report.checked, "violations": violations}}),
        ));
    }
    let mut out = String::new();
    for r in &rows {
        writeln!(
            out,
            "{} {} (tail {})  d = {}",
            r["degree"],
            r["chain"].as_str().unwrap(),
            r["tail"].as_str().unwrap(),
            r["differential"].as_str().unwrap()
        )
        .unwrap();
    }
    writeln!(out, "d^2 = 0 on {} chains: {}", report.checked, report.holds()).unwrap();
    for v in violations {
        writeln!(out, "  {v}").unwrap();
    }
    Ok(Outcome::new(code, out))
}

pub fn cmd_homology(
    doc: &SystemDocument,
    max_length: usize,
    max_degree: usize,
    differential: Differential,
    opts: Options,
) -> Result<Outcome, CliError> {
    let loaded = doc.load()?;
    let s = &loaded.system;
    let complex = build_shafarevich(s, max_length, max_degree, differential)?;
    let code = if complex.d_squared_violations.is_empty() { EXIT_OK } else { EXIT_VIOLATION };
    let mut rows = Vec::new();
    for g in complex.grades() {
        let grade = match &g {
            Grade::Word(w) => s.show_word(w),
            Grade::Length(l) => l.to_string(),
        };
        for n in 0..=max_degree {
            let h = complex.homology_ranks(&g, n);
            if h.homology > 0 {
                rows.push(json!({
                    "grade": grade, "degree": n, "dimension": h.dimension,
                    "kernel": h.kernel, "image": h.image, "homology": h.homology,
                    "upper_bound": h.truncated,
                }));
            }
        }
    }
    let mode = match differential {
        Differential::Monomial => "monomial",
        Differential::Full => "full",
    };
    if opts.json {
        return Ok(Outcome::json(
            code,
            &json!({"mode": mode, "nonzero": rows, "d_squared_violations": complex.d_squared_violations.len()}),
        ));
    }
    let mut out = format!("{mode} complex, lengths <= {max_length}, degrees <= {max_degree}\n");
    writeln!(out, "grade degree dim ker im H").unwrap();
    for r in &rows {
        let bound = if r["upper_bound"].as_bool().unwrap() { " (upper bound)" } else { "" };
        writeln!(
            out,
            "{} {} {} {} {} {}{bound}",
            r["grade"].as_str().unwrap(),
            r["degree"],
            r["dimension"],
            r["kernel"],
            r["image"],
            r["homology"]
        )
        .unwrap();
    }
    writeln!(out, "d^2 violations: {}", complex.d_squared_violations.len()).unwrap();
    Ok(Outcome::new(code, out))
}

pub fn cmd_oracle(doc: &SystemDocument, max_length: usize, opts: Options) -> Result<Outcome, CliError> {
    let loaded = doc.load()?;
    // the search relies on termination
    let rw = rewriter(&loaded, opts)?;
    let s = rw.system();
    let report = confluence_oracle(s, max_length, opts.fuse)?;
    let code = if report.witness.is_none() { EXIT_OK } else { EXIT_NOT_CONVERGENT };
    let witness = report.witness.as_ref().map(|w| {
        json!({
            "word": s.show_word(&w.word),
            "normal_forms": [s.show(&w.forms[0]), s.show(&w.forms[1])],
        })
    });
    let verdict = if witness.is_none() { "Convergent" } else { "NotConvergent" };
    if opts.json {
        return Ok(Outcome::json(
            code,
            &json!({"verdict": verdict, "max_length": max_length, "unique": report.unique, "witness": witness}),
        ));
    }
    let mut out = String::new();
    match &report.witness {
        None => writeln!(out, "all words of length <= {max_length} have a unique normal form").unwrap(),
        Some(w) => {
            writeln!(out, "{} has two normal forms:", s.show_word(&w.word)).unwrap();
            for f in &w.forms {
                writeln!(out, "  {}", s.show(f)).unwrap();
            }
        }
    }
    writeln!(out, "verdict: {verdict}").unwrap();
    Ok(Outcome::new(code, out))
}

pub fn cmd_complete(doc: &SystemDocument, max_rounds: usize, opts: Options) -> Result<Outcome, CliError> {
    let loaded = doc.load()?;
    let Certificate::Deglex(order) = &loaded.certificate else {
        return Err(CliError::Input("completion needs a deglex certificate".into()));
    };
    let done = complete(&loaded.system, order, max_rounds)?;
    let out_doc = SystemDocument::from_system(&done.system, &loaded.certificate);
    let code = if done.report.is_convergent() { EXIT_OK } else { EXIT_NOT_CONVERGENT };
    let report = report_json(&done.system, &done.report, certificate_json(&out_doc));
    if opts.json {
        return Ok(Outcome::json(
            code,
            &json!({"document": out_doc, "report": report, "rounds": done.rounds, "notes": done.notes}),
        ));
    }
    let mut out = format!("rounds: {}\nadded rules: {}\n", done.rounds, done.added.len());
    for n in &done.notes {
        writeln!(out, "note: {n}").unwrap();
    }
    writeln!(out, "verdict: {}", done.report.verdict).unwrap();
    out.push_str(&out_doc.to_json());
    out.push('\n');
    Ok(Outcome::new(code, out))
}
