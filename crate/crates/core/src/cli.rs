//! Command-line front end: argument definitions and command runners.
//!
//! Runners return the text to print on stdout; errors bubble up as
//! [`CliError`] and are rendered by `main` as one `error:` line on stderr.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::closed_forms::{hstar_complete_multipartite, hstar_pq_join, hstar_wheel, JoinSpec};
use crate::ehrhart::{dimension, hstar_via_ehrhart, RootPolytope};
use crate::error::Error;
use crate::graph::{bipartite_double, Family, Graph};
use crate::interior::{hypertrees, interior_polynomial};
use crate::matching::pms_polynomial;
use crate::poly::IntPolynomial;
use crate::spec::{BipartiteSpec, GraphSpec};
use crate::verify::{self, VerifyRow};

#[derive(Debug, Parser)]
#[command(name = "pqhstar", version, about = "h*-polynomials of PQ-type adjacency polytopes")]
pub struct Cli {
    /// Worker threads (default: all cores; 1 is fully serial).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// h*-polynomial and normalized volume of the PQ-type adjacency polytope.
    Hstar {
        /// Graph spec, e.g. `W4`, `KP:2,3`, `J:(C4,K1)`, `EL:n=3;1-2,2-3`.
        spec: Option<String>,
        #[arg(long, value_enum, default_value_t = Method::Interior)]
        method: Method,
        /// Emit one JSON document instead of text.
        #[arg(long)]
        json: bool,
        /// Report wall time per method.
        #[arg(long)]
        time: bool,
        /// Read one spec per line from a file.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Interior polynomial of a connected bipartite graph.
    Interior {
        /// `D:<graph spec>`, `EL2:p=..,q=..;i-j,...`, or a bipartite graph spec.
        spec: String,
        #[arg(long)]
        json: bool,
    },
    /// Run identity checks over a corpus and print a pass/fail table.
    Verify {
        #[arg(value_enum)]
        corpus: Corpus,
        /// Largest wheel / oracle graph size.
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// Largest total vertex count for joins and complete graphs.
        #[arg(long, default_value_t = 6)]
        max_m: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Interior,
    Pms,
    Formula,
    Oracle,
    All,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Interior => "interior",
            Method::Pms => "pms",
            Method::Formula => "formula",
            Method::Oracle => "oracle",
            Method::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Corpus {
    Wheels,
    Joins,
    Oracle,
    Complete,
    Fpoly,
    Cones,
    All,
}

#[derive(Debug)]
pub enum CliError {
    /// A library error: parse failure, guard, inapplicable method, ...
    Lib(Error),
    /// Methods returned different polynomials.
    Disagreement(String),
    /// Some verification rows failed.
    VerifyFailed { output: String, failed: usize },
    Io(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Disagreement(m) => write!(f, "methods disagree: {m}"),
            CliError::VerifyFailed { failed, .. } => write!(f, "verification failed: {failed} check(s)"),
            CliError::Io(m) => write!(f, "io: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(_) | CliError::Io(_) => 1,
            CliError::Disagreement(_) | CliError::VerifyFailed { .. } => 2,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MethodResult {
    pub method: &'static str,
    pub hstar: Vec<String>,
    pub volume: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time_ms: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Skipped {
    pub method: &'static str,
    pub reason: String,
}

/// Result of one `hstar` or `interior` invocation.
#[derive(Debug, Clone, Serialize)]
pub struct ComputationReport {
    pub spec: String,
    pub methods: Vec<MethodResult>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<Skipped>,
    pub hstar: Vec<String>,
    pub hstar_text: String,
    pub volume: String,
    pub dimension: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hypertrees: Option<usize>,
    pub agreement: bool,
}

impl ComputationReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "spec: {}", self.spec);
        for m in &self.methods {
            let _ = write!(s, "method {}: volume {}", m.method, m.volume);
            if let Some(t) = m.time_ms {
                let _ = write!(s, " ({t:.3} ms)");
            }
            s.push('\n');
        }
        for k in &self.skipped {
            let _ = writeln!(s, "skipped {}: {}", k.method, k.reason);
        }
        let _ = writeln!(s, "h*: {}", self.hstar_text);
        let _ = writeln!(s, "volume: {}", self.volume);
        let _ = writeln!(s, "dimension: {}", self.dimension);
        if let Some(n) = self.hypertrees {
            let _ = writeln!(s, "hypertrees: {n}");
        }
        let _ = writeln!(s, "agreement: {}", self.agreement);
        s
    }

    /// Single-line text form for batch mode.
    pub fn to_line(&self) -> String {
        format!(
            "{}\tvolume={}\th*=[{}]\tagreement={}",
            self.spec,
            self.volume,
            self.hstar.join(","),
            self.agreement
        )
    }
}

fn method_result(method: Method, p: &IntPolynomial, time_ms: Option<f64>) -> MethodResult {
    MethodResult {
        method: method.name(),
        hstar: p.to_decimal_strings(),
        volume: p.eval_at_one().to_string(),
        time_ms,
    }
}

/// h* by the closed forms, when the spec is a complete multipartite graph,
/// complete graph, wheel, join or cone.
fn formula_hstar(spec: &GraphSpec) -> crate::Result<IntPolynomial> {
    match spec {
        GraphSpec::Family(Family::CompleteMultipartite(parts)) => hstar_complete_multipartite(parts),
        GraphSpec::Family(Family::Complete(n)) if *n >= 2 => hstar_complete_multipartite(&vec![1; *n]),
        GraphSpec::Family(Family::Wheel(n)) => hstar_wheel(*n),
        GraphSpec::Join(parts) => {
            let graphs = parts.iter().map(GraphSpec::build).collect::<crate::Result<Vec<_>>>()?;
            hstar_pq_join(&JoinSpec::new(graphs)?)
        }
        GraphSpec::Cone(inner) => hstar_pq_join(&JoinSpec::new(vec![inner.build()?, Graph::complete(1)])?),
        _ => Err(Error::Inapplicable(format!(
            "no closed form for `{spec}` (needs KP:, K<n>, W<n>, J:(...) or cone:)"
        ))),
    }
}

fn run_method(method: Method, spec: &GraphSpec, g: &Graph) -> crate::Result<IntPolynomial> {
    match method {
        Method::Interior => {
            let d = bipartite_double(g);
            if !d.is_connected() {
                return Err(Error::Inapplicable(format!("D({spec}) is disconnected")));
            }
            interior_polynomial(&d)
        }
        Method::Pms => {
            let base = spec.cone_base().ok_or_else(|| {
                Error::Inapplicable(format!("pms needs a spec of the form H+K1 (J:(..,K1), W<n> or cone:), got `{spec}`"))
            })?;
            pms_polynomial(&bipartite_double(&base.build()?).to_graph())
        }
        Method::Formula => formula_hstar(spec),
        Method::Oracle => hstar_via_ehrhart(g),
        Method::All => unreachable!("expanded by the caller"),
    }
}

/// Computes h* of `spec` by the selected method(s). With [`Method::All`],
/// inapplicable methods and methods over their size guard are skipped; the
/// rest must agree exactly.
pub fn cmd_hstar(spec_text: &str, method: Method, time: bool) -> Result<ComputationReport, CliError> {
    let spec = GraphSpec::parse(spec_text)?;
    let g = spec.build()?;
    let methods: Vec<Method> = match method {
        Method::All => vec![Method::Interior, Method::Pms, Method::Formula, Method::Oracle],
        m => vec![m],
    };
    let mut results: Vec<(Method, IntPolynomial, Option<f64>)> = Vec::new();
    let mut skipped = Vec::new();
    for m in methods {
        let start = Instant::now();
        match run_method(m, &spec, &g) {
            Ok(p) => {
                let elapsed = time.then(|| start.elapsed().as_secs_f64() * 1e3);
                results.push((m, p, elapsed));
            }
            Err(e @ (Error::Inapplicable(_) | Error::GuardExceeded { .. })) if method == Method::All => {
                skipped.push(Skipped { method: m.name(), reason: e.to_string() });
            }
            Err(e) => return Err(e.into()),
        }
    }
    let Some((first_method, first, _)) = results.first().cloned() else {
        return Err(Error::Inapplicable(format!("no method applies to `{spec}`")).into());
    };
    for (m, p, _) in &results[1..] {
        if let Some(k) = first.first_difference(p) {
            return Err(CliError::Disagreement(format!(
                "{} vs {} on `{spec}` at x^{k}: {} != {}",
                first_method.name(),
                m.name(),
                first.coeff(k),
                p.coeff(k)
            )));
        }
    }
    let dim = dimension(&RootPolytope::new(bipartite_double(&g)));
    Ok(ComputationReport {
        spec: spec.to_string(),
        methods: results.iter().map(|(m, p, t)| method_result(*m, p, *t)).collect(),
        skipped,
        hstar: first.to_decimal_strings(),
        hstar_text: first.to_string(),
        volume: first.eval_at_one().to_string(),
        dimension: dim,
        hypertrees: None,
        agreement: true,
    })
}

/// Interior polynomial and hypertree count of a connected bipartite graph.
pub fn cmd_interior(spec_text: &str) -> Result<ComputationReport, CliError> {
    let spec = BipartiteSpec::parse(spec_text)?;
    let h = spec.build()?;
    let poly = interior_polynomial(&h)?;
    let count = hypertrees(&h)?.len();
    Ok(ComputationReport {
        spec: spec.to_string(),
        methods: vec![method_result(Method::Interior, &poly, None)],
        skipped: Vec::new(),
        hstar: poly.to_decimal_strings(),
        hstar_text: poly.to_string(),
        volume: poly.eval_at_one().to_string(),
        dimension: dimension(&RootPolytope::new(h)),
        hypertrees: Some(count),
        agreement: true,
    })
}

pub fn verify_rows(corpus: Corpus, max_n: usize, max_m: usize) -> Vec<VerifyRow> {
    match corpus {
        Corpus::Wheels => verify::verify_wheels(max_n),
        Corpus::Joins => verify::verify_joins(max_m),
        Corpus::Oracle => verify::verify_oracle(max_n),
        Corpus::Complete => verify::verify_complete(max_m),
        Corpus::Fpoly => verify::verify_fpoly(8),
        Corpus::Cones => verify::verify_cones(),
        Corpus::All => [
            Corpus::Wheels,
            Corpus::Joins,
            Corpus::Oracle,
            Corpus::Complete,
            Corpus::Fpoly,
            Corpus::Cones,
        ]
        .into_iter()
        .flat_map(|c| verify_rows(c, max_n, max_m))
        .collect(),
    }
}

pub fn cmd_verify(corpus: Corpus, max_n: usize, max_m: usize, json: bool) -> Result<String, CliError> {
    let rows = verify_rows(corpus, max_n, max_m);
    let failed = rows.iter().filter(|r| !r.pass).count();
    let output = if json {
        serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n"
    } else {
        let mut s = String::new();
        for r in &rows {
            let _ = writeln!(s, "{r}");
        }
        let _ = writeln!(s, "{} passed, {failed} failed", rows.len() - failed);
        s
    };
    if failed > 0 {
        Err(CliError::VerifyFailed { output, failed })
    } else {
        Ok(output)
    }
}

fn render(report: &ComputationReport, json: bool) -> String {
    if json {
        serde_json::to_string_pretty(report).expect("report serializes") + "\n"
    } else {
        report.to_text()
    }
}

/// Runs a parsed command line. On failure, any partial stdout output is
/// returned alongside the error.
pub fn run(cli: Cli) -> Result<String, (String, CliError)> {
    if let Some(n) = cli.threads {
        // a pool already exists when run() is called twice in one process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match cli.command {
        Command::Hstar { spec, method, json, time, file } => match (spec, file) {
            (Some(s), None) => cmd_hstar(&s, method, time)
                .map(|r| render(&r, json))
                .map_err(|e| (String::new(), e)),
            (None, Some(path)) => run_batch(&path, method, json, time),
            _ => Err((String::new(), CliError::Io("give exactly one of SPEC or --file".into()))),
        },
        Command::Interior { spec, json } => cmd_interior(&spec)
            .map(|r| render(&r, json))
            .map_err(|e| (String::new(), e)),
        Command::Verify { corpus, max_n, max_m, json } => cmd_verify(corpus, max_n, max_m, json).map_err(|e| match e {
            CliError::VerifyFailed { ref output, .. } => (output.clone(), e),
            e => (String::new(), e),
        }),
    }
}

/// Batch mode: one output line per nonblank input line. The first failing
/// line's error is returned after all lines are processed; the others are
/// reported inline as `error:` lines on stdout.
fn run_batch(path: &PathBuf, method: Method, json: bool, time: bool) -> Result<String, (String, CliError)> {
    let text = std::fs::read_to_string(path).map_err(|e| (String::new(), CliError::Io(format!("{}: {e}", path.display()))))?;
    let mut out = String::new();
    let mut first_err = None;
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        match cmd_hstar(line, method, time) {
            Ok(r) => {
                let doc = if json { serde_json::to_string(&r).expect("report serializes") } else { r.to_line() };
                out.push_str(&doc);
                out.push('\n');
            }
            Err(e) => {
                if json {
                    let doc = serde_json::json!({ "spec": line, "error": e.to_string() });
                    out.push_str(&doc.to_string());
                } else {
                    let _ = write!(out, "{line}\terror: {e}");
                }
                out.push('\n');
                first_err.get_or_insert(e);
            }
        }
    }
    match first_err {
        None => Ok(out),
        Some(e) => Err((out, e)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_applicability() {
        assert!(formula_hstar(&GraphSpec::parse("C5").unwrap()).is_err());
        assert!(formula_hstar(&GraphSpec::parse("K1").unwrap()).is_err());
        assert_eq!(
            formula_hstar(&GraphSpec::parse("K4").unwrap()).unwrap(),
            IntPolynomial::from_i64(&[1, 9, 9, 1])
        );
        assert_eq!(
            formula_hstar(&GraphSpec::parse("cone:C4").unwrap()).unwrap(),
            formula_hstar(&GraphSpec::parse("W4").unwrap()).unwrap()
        );
    }

    #[test]
    fn all_skips_inapplicable() {
        let r = cmd_hstar("C5", Method::All, false).unwrap();
        let used: Vec<_> = r.methods.iter().map(|m| m.method).collect();
        assert_eq!(used, vec!["interior", "oracle"]);
        assert_eq!(r.skipped.len(), 2);
    }

    #[test]
    fn timing_only_on_request() {
        let r = cmd_hstar("K3", Method::Interior, false).unwrap();
        assert!(r.methods[0].time_ms.is_none());
        let r = cmd_hstar("K3", Method::Interior, true).unwrap();
        assert!(r.methods[0].time_ms.is_some());
    }
}
