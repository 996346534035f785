//! One function per subcommand. Each returns the report, a human-readable
//! rendering and the process exit code.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use gweave_core::papersuite::{self, Status, SuiteConfig, SuiteReport};
use gweave_core::weaving::{self, Method, UniversalReport};
use gweave_core::{GFrame, Scalar, Strategy, WeavingSelection, DEFAULT_EXHAUSTIVE_CAP};
use serde_json::{json, Value};

use crate::document::{self, FormatError, GFrameDocument};
use crate::report::{InputRef, ReportDocument, Timing};

pub const CAP_ENV: &str = "GWEAVE_EXHAUSTIVE_CAP";

pub const EXIT_OK: u8 = 0;
pub const EXIT_SUITE_FAILURE: u8 = 1;
pub const EXIT_INPUT_ERROR: u8 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Core(#[from] gweave_core::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        EXIT_INPUT_ERROR
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Clone, Debug)]
pub struct CommandOutput {
    pub report: ReportDocument,
    pub text: String,
    pub exit_code: u8,
}

/// `--cap` flag, else `GWEAVE_EXHAUSTIVE_CAP`, else 20.
pub fn resolve_cap(flag: Option<usize>) -> CliResult<usize> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match std::env::var(CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{CAP_ENV}='{v}' is not a non-negative integer"))),
        Err(_) => Ok(DEFAULT_EXHAUSTIVE_CAP),
    }
}

struct Loaded {
    frame: GFrame,
    input: InputRef,
}

fn load(path: &Path) -> CliResult<Loaded> {
    let bytes = document::read_file(path)?;
    let text = std::str::from_utf8(&bytes).map_err(|e| FormatError::Parse {
        line: 0,
        column: 0,
        message: format!("not UTF-8: {e}"),
    })?;
    Ok(Loaded {
        frame: document::parse_gframe(text)?,
        input: InputRef::new(path, &bytes),
    })
}

fn finish(command: &str, inputs: Vec<InputRef>, results: Value, tolerances: Value, start: Instant, text: String, exit_code: u8) -> CommandOutput {
    CommandOutput {
        report: ReportDocument {
            command: command.to_string(),
            inputs,
            results,
            tolerances,
            timing: Timing {
                elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            },
        },
        text,
        exit_code,
    }
}

fn vector_json(v: &[Scalar]) -> Value {
    json!({
        "real": v.iter().map(|z| z.re).collect::<Vec<_>>(),
        "imag": v.iter().map(|z| z.im).collect::<Vec<_>>(),
    })
}

fn fmt_vector(v: &[Scalar]) -> String {
    let parts: Vec<String> = v
        .iter()
        .map(|z| {
            if z.im == 0.0 {
                format!("{:.6}", z.re)
            } else {
                format!("{:.6}{:+.6}i", z.re, z.im)
            }
        })
        .collect();
    format!("[{}]", parts.join(", "))
}

pub fn selection_json(s: &WeavingSelection) -> Value {
    json!({ "indices": s.one_based(), "bitmask": s.bitstring() })
}

fn fmt_selection(s: &WeavingSelection) -> String {
    format!("σ={} (σ={})", s, s.bitstring())
}

/// Twelve significant digits with trailing zeros trimmed; JSON keeps full precision.
pub fn fmt_num(x: f64) -> String {
    if !x.is_finite() || x == 0.0 {
        return format!("{x}");
    }
    let digits = (11 - x.abs().log10().floor() as i32).clamp(0, 40) as usize;
    let s = format!("{x:.digits$}");
    let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.') } else { &s };
    if s == "-0" { "0".into() } else { s.to_string() }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn cmd_bounds(path: &Path, tol: f64) -> CliResult<CommandOutput> {
    let start = Instant::now();
    let l = load(path)?;
    let b = l.frame.optimal_bounds(tol)?;
    let results = json!({
        "n_blocks": l.frame.len(),
        "domain_dim": l.frame.domain_dim(),
        "lower": b.lower,
        "upper": b.upper,
        "is_g_frame": b.is_frame,
        "threshold": b.threshold,
        "witness_lower": vector_json(&b.witness_low),
        "witness_upper": vector_json(&b.witness_high),
    });
    let text = format!(
        "A = {}\nB = {}\ng-frame: {}\nwitness for A: {}\nwitness for B: {}\n",
        fmt_num(b.lower),
        fmt_num(b.upper),
        yes(b.is_frame),
        fmt_vector(&b.witness_low),
        fmt_vector(&b.witness_high)
    );
    Ok(finish("bounds", vec![l.input], results, json!({ "tol": tol }), start, text, EXIT_OK))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WovenMode {
    Exhaustive,
    Search { budget: usize, seed: u64 },
}

fn universal_json(u: &UniversalReport) -> Value {
    json!({
        "lower": u.lower,
        "upper": u.upper,
        "argmin": selection_json(&u.argmin_sigma),
        "argmax": selection_json(&u.argmax_sigma),
        "argmin_ties": u.argmin_ties.iter().map(selection_json).collect::<Vec<_>>(),
        "argmax_ties": u.argmax_ties.iter().map(selection_json).collect::<Vec<_>>(),
        "ties_truncated": u.ties_truncated,
        "threshold": u.threshold,
        "method": u.method.as_str(),
        "subsets_examined": u.subsets_examined,
    })
}

pub fn cmd_woven(path_f: &Path, path_g: &Path, mode: WovenMode, tol: f64, cap: usize) -> CliResult<CommandOutput> {
    let start = Instant::now();
    let f = load(path_f)?;
    let g = load(path_g)?;
    let strategy = match mode {
        WovenMode::Exhaustive => Strategy::Exhaustive { cap },
        WovenMode::Search { budget, seed } => Strategy::Search { budget, seed },
    };
    let v = weaving::is_woven(&f.frame, &g.frame, tol, strategy)?;
    let u = &v.report;
    let mut text = String::new();
    match (&v.certificate, v.woven, v.conclusive) {
        (Some(c), _, _) => {
            let _ = writeln!(text, "NOT WOVEN, certificate {}", fmt_selection(c));
            let _ = writeln!(text, "λ_min at certificate = {}", fmt_num(u.lower));
        }
        (None, true, true) => {
            let _ = writeln!(text, "WOVEN, A={}, B={}", fmt_num(u.lower), fmt_num(u.upper));
        }
        (None, _, _) => {
            let _ = writeln!(
                text,
                "NO COUNTEREXAMPLE FOUND (search is inconclusive), A<={}, B>={}",
                fmt_num(u.lower),
                fmt_num(u.upper)
            );
        }
    }
    let _ = writeln!(text, "argmin {}", fmt_selection(&u.argmin_sigma));
    let _ = writeln!(text, "argmax {}", fmt_selection(&u.argmax_sigma));
    let _ = writeln!(text, "method: {}, subsets examined: {}", u.method.as_str(), u.subsets_examined);
    let results = json!({
        "woven": v.woven,
        "conclusive": v.conclusive,
        "certificate": v.certificate.as_ref().map(selection_json),
        "universal": universal_json(u),
    });
    let (budget, seed) = match mode {
        WovenMode::Exhaustive => (Value::Null, Value::Null),
        WovenMode::Search { budget, seed } => (json!(budget), json!(seed)),
    };
    let tolerances = json!({ "tol": tol, "cap": cap, "search_budget": budget, "seed": seed });
    Ok(finish("woven", vec![f.input, g.input], results, tolerances, start, text, EXIT_OK))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    Frame,
    Exact,
    Riesz,
    Onb,
    DualWith,
}

impl CheckKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckKind::Frame => "frame",
            CheckKind::Exact => "exact",
            CheckKind::Riesz => "riesz",
            CheckKind::Onb => "onb",
            CheckKind::DualWith => "dual-with",
        }
    }
}

pub fn cmd_check(path: &Path, kind: CheckKind, other: Option<&Path>, tol: f64) -> CliResult<CommandOutput> {
    let start = Instant::now();
    let l = load(path)?;
    let f = &l.frame;
    let mut inputs = vec![l.input.clone()];
    let (verdict, details, text) = match kind {
        CheckKind::Frame => {
            let b = f.optimal_bounds(tol)?;
            (
                b.is_frame,
                json!({ "lower": b.lower, "upper": b.upper, "threshold": b.threshold }),
                format!("g-frame: {}\nA = {}\nB = {}\n", yes(b.is_frame), fmt_num(b.lower), fmt_num(b.upper)),
            )
        }
        CheckKind::Exact => {
            let e = f.exactness(tol)?;
            let removable: Vec<usize> = e.removable.iter().map(|m| m + 1).collect();
            let mut text = format!("g-exact: {}\n", yes(e.exact));
            if !removable.is_empty() {
                let list: Vec<String> = removable.iter().map(|m| m.to_string()).collect();
                let _ = writeln!(text, "removable blocks (remaining family is still a g-frame): {}", list.join(", "));
            }
            for (m, lmin) in e.post_removal_lambda_min.iter().enumerate() {
                if let Some(v) = lmin {
                    let _ = writeln!(text, "  without block {}: λ_min = {}", m + 1, fmt_num(*v));
                }
            }
            (
                e.exact,
                json!({
                    "removable": removable,
                    "witness": e.witness().map(|m| m + 1),
                    "post_removal_lambda_min": e.post_removal_lambda_min,
                    "threshold": e.threshold,
                }),
                text,
            )
        }
        CheckKind::Riesz => {
            let r = f.riesz(tol)?;
            (
                r.is_riesz,
                json!({
                    "lower": r.lower,
                    "upper": r.upper,
                    "vector_count": r.vector_count,
                    "domain_dim": r.domain_dim,
                }),
                format!(
                    "g-Riesz basis: {}\nRiesz bounds ({}, {})\ninduced vectors: {} in dimension {}\n",
                    yes(r.is_riesz),
                    fmt_num(r.lower),
                    fmt_num(r.upper),
                    r.vector_count,
                    r.domain_dim
                ),
            )
        }
        CheckKind::Onb => {
            let o = f.orthonormality(tol)?;
            (
                o.is_onb,
                json!({
                    "cross_gram_residual": o.cross_gram_residual,
                    "worst_pair": o.worst_pair.map(|(a, b)| [a + 1, b + 1]),
                    "parseval_residual": o.parseval_residual,
                    "has_trivial_block": o.has_trivial_block,
                }),
                format!(
                    "g-orthonormal basis: {}\ncross-Gram residual {}\nParseval residual {}\n",
                    yes(o.is_onb),
                    fmt_num(o.cross_gram_residual),
                    fmt_num(o.parseval_residual)
                ),
            )
        }
        CheckKind::DualWith => {
            let p = other.ok_or_else(|| CliError::Usage("dual-with needs a second file".into()))?;
            let g = load(p)?;
            inputs.push(g.input);
            let r = f.is_dual_pair(&g.frame, tol)?;
            (
                r.is_dual,
                json!({
                    "residual_forward": r.residual_forward,
                    "residual_backward": r.residual_backward,
                }),
                format!(
                    "dual pair: {}\n‖Σ Γ*Λ − I‖ = {}\n‖Σ Λ*Γ − I‖ = {}\n",
                    yes(r.is_dual),
                    fmt_num(r.residual_forward),
                    fmt_num(r.residual_backward)
                ),
            )
        }
    };
    let results = json!({ "kind": kind.as_str(), "verdict": verdict, "details": details });
    Ok(finish("check", inputs, results, json!({ "tol": tol }), start, text, EXIT_OK))
}

fn derived_family(
    command: &str,
    path: &Path,
    output: Option<&Path>,
    tol: f64,
    build: impl FnOnce(&GFrame) -> gweave_core::Result<GFrame>,
) -> CliResult<CommandOutput> {
    let start = Instant::now();
    let l = load(path)?;
    let out = build(&l.frame)?;
    let b = out.optimal_bounds(tol)?;
    let doc = GFrameDocument::from_gframe(&out);
    let mut results = json!({ "lower": b.lower, "upper": b.upper, "n_blocks": out.len() });
    let text = match output {
        Some(p) => {
            document::save_gframe(p, &out)?;
            results["output"] = json!(p.display().to_string());
            format!("wrote {} ({} blocks), bounds ({}, {})\n", p.display(), out.len(), fmt_num(b.lower), fmt_num(b.upper))
        }
        None => {
            results["document"] = serde_json::to_value(&doc).expect("document serializes");
            doc.to_json()
        }
    };
    Ok(finish(command, vec![l.input], results, json!({ "tol": tol }), start, text, EXIT_OK))
}

pub fn cmd_dual(path: &Path, output: Option<&Path>, tol: f64) -> CliResult<CommandOutput> {
    derived_family("dual", path, output, tol, |f| f.canonical_dual())
}

pub fn cmd_transform_parseval(path: &Path, output: Option<&Path>, tol: f64) -> CliResult<CommandOutput> {
    derived_family("transform-parseval", path, output, tol, |f| f.transform_sqrt_inv())
}

/// JSON form of a suite report.
pub fn suite_json(report: &SuiteReport) -> Value {
    let c = &report.config;
    let records: Vec<Value> = report
        .records
        .iter()
        .map(|r| {
            json!({
                "name": r.name,
                "status": r.status.as_str(),
                "method": r.method.map(|m: Method| m.as_str()),
                "computed": r.computed.iter().map(|(k, v)| json!([k, v])).collect::<Vec<_>>(),
                "expected": r.expected.iter().map(|e| json!({
                    "key": e.key,
                    "value": e.value,
                    "source": e.source.as_str(),
                })).collect::<Vec<_>>(),
                "detail": r.detail,
            })
        })
        .collect();
    json!({
        "passed": report.passed(),
        "counts": {
            "pass": report.count(Status::Pass),
            "fail": report.count(Status::Fail),
            "skipped": report.count(Status::Skipped),
        },
        "config": {
            "weaving_n": c.weaving_n,
            "th35_n": c.th35_n,
            "ex44_k": c.ex44_k,
            "ex43_n": c.ex43_n,
            "onb_d": c.onb_d,
            "cap": c.cap,
            "search_budget": c.search_budget,
            "seed": c.seed,
        },
        "records": records,
    })
}

pub fn cmd_paper_suite(dim_scale: usize, cap: usize, search_budget: Option<usize>, seed: Option<u64>, tol: f64) -> CliResult<CommandOutput> {
    let start = Instant::now();
    let mut cfg = SuiteConfig::default().with_dim_scale(dim_scale);
    cfg.cap = cap;
    cfg.tol = tol;
    if let Some(b) = search_budget {
        cfg.search_budget = b;
    }
    if let Some(s) = seed {
        cfg.seed = s;
    }
    let report = papersuite::run_suite(&cfg);
    let mut text = String::new();
    for r in &report.records {
        let method = r.method.map(|m| format!(" [{}]", m.as_str())).unwrap_or_default();
        let _ = write!(text, "{:<7} {}{}", r.status.as_str().to_uppercase(), r.name, method);
        if !r.detail.is_empty() {
            let _ = write!(text, ": {}", r.detail);
        }
        text.push('\n');
    }
    let _ = writeln!(
        text,
        "{} passed, {} failed, {} skipped",
        report.count(Status::Pass),
        report.count(Status::Fail),
        report.count(Status::Skipped)
    );
    let exit = if report.passed() { EXIT_OK } else { EXIT_SUITE_FAILURE };
    let tolerances = json!({ "tol": tol, "cap": cap });
    Ok(finish("paper-suite", Vec::new(), suite_json(&report), tolerances, start, text, exit))
}
