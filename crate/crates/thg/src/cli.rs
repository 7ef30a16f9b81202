//! `thg <verb> [target] --n N --max-n N --format text|json --catalog-dir PATH`
//!
//! Exit codes: 0 success, 1 computation error, 2 usage, parse or model
//! error, 3 a verification found a failed check or violation.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};
use thg_core::fox::{describe_layers, gottlieb_fox_index, gottlieb_fox_invariants, is_n_gottlieb, tau_invariants};
use thg_core::rhodes::{classify, compute_g0, gottlieb_rhodes_invariants, sigma_invariants, Membership};
use thg_core::report::{Source, Status};
use thg_core::{CayleyGroup, CheckReport, Determined, ErrorKind, SpaceModel, TowerSummary, TransformationModel};

use crate::catalog::Catalog;
use crate::error::ThgError;
use crate::schema::{document_value, load_document, Document};
use crate::verify::{audit_transformation, rejections, verify_all, verify_document, Run};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    List,
    Show,
    Tau,
    Sigma,
    Gtau,
    Gsigma,
    G0,
    Classify,
    Verify,
    Audit,
}

impl Verb {
    fn as_str(self) -> &'static str {
        match self {
            Verb::List => "list",
            Verb::Show => "show",
            Verb::Tau => "tau",
            Verb::Sigma => "sigma",
            Verb::Gtau => "gtau",
            Verb::Gsigma => "gsigma",
            Verb::G0 => "g0",
            Verb::Classify => "classify",
            Verb::Verify => "verify",
            Verb::Audit => "audit",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "thg", version, about = "Torus homotopy and Rhodes group invariants of spaces and free actions")]
struct Args {
    #[arg(value_enum)]
    verb: Verb,
    /// Catalog model name or path to a model file.
    target: Option<String>,
    /// Degree.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    n: Option<u32>,
    /// Degree bound for classify, verify and audit.
    #[arg(long = "max-n", value_parser = clap::value_parser!(u32).range(1..))]
    max_n: Option<u32>,
    /// Verify every catalog model.
    #[arg(long)]
    all: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Catalog directory; defaults to $THG_CATALOG_DIR, then the built-in catalog.
    #[arg(long = "catalog-dir")]
    catalog_dir: Option<PathBuf>,
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// What a verb produced before rendering.
struct Output {
    json: Value,
    text: String,
    failed: bool,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output { json, text, failed: false }
    }
}

pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let echo = json!({
        "verb": args.verb.as_str(),
        "target": args.target,
        "n": args.n,
        "max_n": args.max_n,
        "all": args.all,
        "format": match args.format { Format::Text => "text", Format::Json => "json" },
    });
    match execute(&args) {
        Ok(out) => {
            let code = if out.failed { 3 } else { 0 };
            let stdout = match args.format {
                Format::Json => pretty(&json!({
                    "command": echo,
                    "result": out.json,
                    "status": if out.failed { "failed" } else { "ok" },
                })),
                Format::Text => out.text,
            };
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(e) => {
            let stdout = match args.format {
                Format::Json => pretty(&json!({ "command": echo, "error": error_value(&e), "status": "error" })),
                Format::Text => String::new(),
            };
            Outcome {
                code: e.exit_code(),
                stdout,
                stderr: format!("thg: {e}\n"),
            }
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn error_value(e: &ThgError) -> Value {
    match e {
        ThgError::Model(file, err) => json!({
            "kind": err.kind.as_str(), "file": file, "path": err.path, "message": err.message
        }),
        ThgError::Compute(err) => json!({ "kind": err.kind.as_str(), "path": err.path, "message": err.message }),
        ThgError::Parse(m) => json!({ "kind": "parse", "message": m }),
        ThgError::Io(m) => json!({ "kind": "io", "message": m }),
        ThgError::Usage(m) => json!({ "kind": "usage", "message": m }),
    }
}

/// A resolved target together with its load warnings.
struct Target {
    document: Document,
    warnings: Vec<String>,
}

fn resolve(catalog: &Catalog, target: Option<&str>) -> Result<Target, ThgError> {
    let Some(t) = target else {
        return Err(ThgError::Usage("this verb needs a target".into()));
    };
    let path = Path::new(t);
    if t.ends_with(".json") || path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| ThgError::Io(format!("{t}: {e}")))?;
        let resolver = catalog.resolver();
        let (document, warnings) = load_document(&text, &resolver).map_err(|e| ThgError::Model(t.to_string(), e))?;
        return Ok(Target { document, warnings });
    }
    if let Some((file, e)) = catalog.rejection(t) {
        return Err(ThgError::Model(file.to_string(), e.clone()));
    }
    if let Some(e) = catalog.get(t) {
        return Ok(Target {
            document: e.document.clone(),
            warnings: e.warnings.clone(),
        });
    }
    match catalog.document(t) {
        Some(document) => Ok(Target { document, warnings: Vec::new() }),
        None => Err(ThgError::Usage(format!("unknown target {t:?}; see `thg list`"))),
    }
}

fn space_of(d: &Document) -> &SpaceModel {
    match d {
        Document::Space(s) => s,
        Document::Transformation { model, .. } => &model.space,
    }
}

fn transformation_of(d: &Document) -> Result<&TransformationModel, ThgError> {
    match d {
        Document::Transformation { model, .. } => Ok(model),
        Document::Space(s) => Err(ThgError::Usage(format!("{} is a space; this verb needs a transformation group", s.name))),
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn execute(args: &Args) -> Result<Output, ThgError> {
    let catalog = Catalog::locate(args.catalog_dir.as_deref())?;
    let n = args.n.unwrap_or(1);
    let target = args.target.as_deref();
    match args.verb {
        Verb::List => Ok(list(&catalog)),
        Verb::Verify if args.all || target.is_none() => {
            let run = verify_all(&catalog, args.max_n.unwrap_or(u32::MAX));
            Ok(run_output(&run))
        }
        Verb::Audit if target.is_none() => {
            let mut run = Run::default();
            rejections(&mut run, &catalog);
            for t in catalog.transformations() {
                audit_transformation(&mut run, t, args.max_n.unwrap_or(u32::MAX));
            }
            Ok(run_output(&run))
        }
        verb => {
            let t = match resolve(&catalog, target) {
                Err(ThgError::Model(file, e))
                    if matches!(verb, Verb::Verify | Verb::Audit) && e.kind == ErrorKind::InvariantViolation =>
                {
                    let mut run = Run::default();
                    let mut rep = CheckReport::new("model-validation", file);
                    rep.push("load", Status::Violation, e.to_string(), "model-invariants", Source::Computed);
                    run.reports.push(rep);
                    return Ok(run_output(&run));
                }
                r => r?,
            };
            match verb {
                Verb::Show => Ok(show(&t)),
                Verb::Tau => tau(space_of(&t.document), n),
                Verb::Gtau => gtau(space_of(&t.document), n),
                Verb::Sigma => sigma(transformation_of(&t.document)?, n),
                Verb::Gsigma => gsigma(transformation_of(&t.document)?, n),
                Verb::G0 => g0(transformation_of(&t.document)?),
                Verb::Classify => match &t.document {
                    Document::Space(s) => classify_space(s, args.max_n.unwrap_or(s.truncation)),
                    Document::Transformation { model, .. } => {
                        classify_transformation(model, args.max_n.unwrap_or(model.space.truncation))
                    }
                },
                Verb::Verify => {
                    let mut run = Run::default();
                    verify_document(&mut run, &catalog, &t.document, &t.warnings, args.max_n.unwrap_or(u32::MAX));
                    Ok(run_output(&run))
                }
                Verb::Audit => {
                    let mut run = Run::default();
                    audit_transformation(&mut run, transformation_of(&t.document)?, args.max_n.unwrap_or(u32::MAX));
                    Ok(run_output(&run))
                }
                Verb::List => unreachable!("handled above"),
            }
        }
    }
}

fn describe(d: &Document) -> (String, String) {
    match d {
        Document::Space(s) => (
            "space".into(),
            format!("truncation {}, pi_1 {}{}", s.truncation, s.pi1.label(), if s.aspherical { ", aspherical" } else { "" }),
        ),
        Document::Transformation { model, .. } => (
            "transformation".into(),
            format!(
                "{} acting {}on {}",
                model.group.label(),
                if model.free { "freely " } else { "" },
                model.space.name
            ),
        ),
    }
}

fn list(catalog: &Catalog) -> Output {
    let mut rows = Vec::new();
    let mut text = String::new();
    for e in catalog.entries() {
        let (kind, summary) = describe(&e.document);
        let _ = writeln!(text, "{:<14} {:<15} {summary}", e.name, kind);
        rows.push(json!({ "name": e.name, "kind": kind, "summary": summary }));
    }
    let template = "s<n>: sphere template, pi_n = Z, truncated at n";
    let _ = writeln!(text, "{template}");
    Output::ok(json!({ "models": rows, "templates": [template] }), text)
}

fn show(t: &Target) -> Output {
    let (kind, summary) = describe(&t.document);
    let model = document_value(&t.document);
    let mut text = format!("{} ({kind}): {summary}\n", t.document.name());
    if let Document::Space(s) = &t.document {
        for (i, a) in &s.pi {
            let g = match s.gottlieb_index(*i) {
                Ok(Some(idx)) => format!("[pi : G] = {idx}"),
                _ => "G unknown".into(),
            };
            let _ = writeln!(text, "  pi_{i} = {a}  {g}");
        }
    }
    if let Some(note) = model.get("note").and_then(Value::as_str) {
        let _ = writeln!(text, "  note: {note}");
    }
    for w in &t.warnings {
        let _ = writeln!(text, "  warning: {w}");
    }
    Output::ok(json!({ "model": model, "warnings": t.warnings }), text)
}

fn summary_text(s: &TowerSummary) -> String {
    format!(
        "{} = {}\n  order {}, free rank {}, direct product {}\n",
        s.name,
        describe_layers(s),
        s.finite_order,
        s.free_rank,
        s.is_direct_product
    )
}

fn tau(x: &SpaceModel, n: u32) -> Result<Output, ThgError> {
    let s = tau_invariants(x, n)?;
    Ok(Output::ok(to_value(&s), summary_text(&s)))
}

fn gtau(x: &SpaceModel, n: u32) -> Result<Output, ThgError> {
    let (verdict, index) = gottlieb_fox_index(x, n)?;
    let (summary, mut text) = match gottlieb_fox_invariants(x, n)? {
        Determined::Known(s) => (to_value(&s), summary_text(&s)),
        Determined::Indeterminate(r) => (Value::Null, format!("Gtau_{n}({}) undetermined: {r}\n", x.name)),
    };
    let _ = writeln!(text, "  gottlieb-fox {verdict}, known index {index}");
    Ok(Output::ok(
        json!({ "summary": summary, "gottlieb_fox": verdict, "index": to_value(&index) }),
        text,
    ))
}

fn sigma(tg: &TransformationModel, n: u32) -> Result<Output, ThgError> {
    let s = sigma_invariants(tg, n)?;
    let text = format!(
        "orbit path:     {}extension path: {}agree: {}\n",
        summary_text(&s.orbit),
        summary_text(&s.extension),
        s.agree()
    );
    Ok(Output::ok(json!({ "orbit": to_value(&s.orbit), "extension": to_value(&s.extension), "agree": s.agree() }), text))
}

fn group_value(g: &CayleyGroup) -> Value {
    json!({ "label": g.label(), "order": g.order(), "abelian": g.is_abelian(), "elements": g.names() })
}

fn gsigma(tg: &TransformationModel, n: u32) -> Result<Output, ThgError> {
    match gottlieb_rhodes_invariants(tg, n)? {
        Determined::Indeterminate(r) => Ok(Output::ok(
            json!({ "determined": false, "reason": r }),
            format!("Gsigma_{n} undetermined: {r}\n"),
        )),
        Determined::Known(gr) => {
            let mut text = summary_text(&gr.summary);
            if let Some(r) = &gr.realized {
                let _ = writeln!(text, "  realized as {} of order {}", r.label(), r.order());
            }
            let abelian = gr.abelian.map_or("unknown".to_string(), |b| b.to_string());
            let _ = writeln!(text, "  abelian: {abelian}, index in sigma_{n}: {}", gr.index);
            Ok(Output::ok(
                json!({
                    "determined": true,
                    "summary": to_value(&gr.summary),
                    "realized": gr.realized.as_ref().map(group_value),
                    "abelian": gr.abelian,
                    "index": to_value(&gr.index),
                }),
                text,
            ))
        }
    }
}

fn g0(tg: &TransformationModel) -> Result<Output, ThgError> {
    let r = compute_g0(tg)?;
    let mut text = String::new();
    for v in &r.verdicts {
        let m = match v.membership {
            Membership::InG0 => "in G0",
            Membership::NotInG0 => "not in G0",
            Membership::Undetermined => "undetermined",
        };
        let _ = writeln!(text, "  {:<6} {m:<13} ({})", v.element, v.rule);
    }
    let whole = r.is_whole();
    let head = if r.is_determined() {
        format!("G0 = {} of order {} in {}; G0 = G: {whole}\n", r.label(), r.subgroup().order(), tg.group.label())
    } else {
        format!("G0 partially determined in {}\n", tg.group.label())
    };
    Ok(Output::ok(
        json!({
            "group": tg.group.label(),
            "determined": r.is_determined(),
            "g0": if r.is_determined() { Value::from(r.label()) } else { Value::Null },
            "order": if r.is_determined() { Value::from(r.subgroup().order()) } else { Value::Null },
            "g0_is_g": whole,
            "verdicts": to_value(&r.verdicts),
        }),
        head + &text,
    ))
}

fn classify_space(x: &SpaceModel, max_n: u32) -> Result<Output, ThgError> {
    let mut rows = Vec::new();
    let mut text = String::new();
    for n in 1..=max_n {
        let g = is_n_gottlieb(x, n)?;
        let (f, idx) = gottlieb_fox_index(x, n)?;
        let _ = writeln!(text, "n={n}: gottlieb {g}, gottlieb-fox {f} (index {idx})");
        rows.push(json!({ "n": n, "gottlieb": g, "gottlieb_fox": f, "index": to_value(&idx) }));
    }
    Ok(Output::ok(json!({ "subject": x.name, "max_n": max_n, "degrees": rows }), text))
}

fn classify_transformation(tg: &TransformationModel, max_n: u32) -> Result<Output, ThgError> {
    let c = classify(tg, max_n)?;
    let mut text = format!("{} through n={}: G0 = G {}\n", c.subject, c.max_n, c.g0_is_g.verdict);
    for d in &c.degrees {
        let _ = writeln!(
            text,
            "n={}: gottlieb {}, gottlieb-fox {}, gottlieb-rhodes {}, equivariant {}, orbit {}",
            d.n,
            d.gottlieb.verdict,
            d.gottlieb_fox.verdict,
            d.gottlieb_rhodes.verdict,
            d.equivariant_gottlieb.verdict,
            d.orbit_gottlieb.verdict
        );
    }
    let _ = writeln!(
        text,
        "overall: gottlieb {}, gottlieb-fox {}, gottlieb-rhodes {}, equivariant {}, orbit {}",
        c.gottlieb, c.gottlieb_fox, c.gottlieb_rhodes, c.equivariant_gottlieb, c.orbit_gottlieb
    );
    text.push_str(&report_text(&c.audit));
    let failed = !c.audit.passed();
    Ok(Output {
        json: to_value(&c),
        text,
        failed,
    })
}

fn report_text(r: &CheckReport) -> String {
    let mut text = format!("{} [{}]\n", r.check, r.subject);
    for e in &r.entries {
        let _ = writeln!(text, "  {:<20} {}: {} ({})", e.status.as_str(), e.item, e.detail, e.rule);
    }
    text
}

fn run_output(run: &Run) -> Output {
    use thg_core::report::Status;
    let mut text = String::new();
    for r in &run.reports {
        text.push_str(&report_text(r));
    }
    let failures: Vec<Value> = run
        .reports
        .iter()
        .flat_map(|r| {
            r.failures().map(move |e| {
                json!({ "check": r.check, "subject": r.subject, "item": e.item, "status": e.status, "rule": e.rule, "detail": e.detail })
            })
        })
        .collect();
    let passed = run.passed();
    let _ = writeln!(
        text,
        "{} checks, {} entries: {} failed, {} violations, {} documented exceptions, {} indeterminate; {}",
        run.reports.len(),
        run.entries(),
        run.count(Status::Fail),
        run.count(Status::Violation),
        run.count(Status::DocumentedException),
        run.count(Status::Indeterminate),
        if passed { "PASS" } else { "FAIL" }
    );
    Output {
        json: json!({
            "passed": passed,
            "reports": to_value(&run.reports),
            "failures": failures,
        }),
        text,
        failed: !passed,
    }
}
