//! `quintic`: batch front end for every verification suite and data dump.

use clap::{Args, Parser, Subcommand, ValueEnum};
use quintic_core::graphs::{self, DecoratedGraph, Leaves};
use quintic_core::{genring, hae, mirrordata, oscpf, qde, Check, Report};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "quintic", version, about = "Exact verification of quintic B-model structure")]
struct Cli {
    #[command(flatten)]
    cfg: RunConfig,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug, Clone)]
struct RunConfig {
    /// Truncation order in q.
    #[arg(long, global = true, default_value_t = 20)]
    order_q: usize,
    /// Truncation order in z.
    #[arg(long, global = true, default_value_t = 10)]
    order_z: usize,
    /// Genus for graph commands.
    #[arg(long, global = true, default_value_t = 2)]
    genus: u32,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Directory for report, JSON and DOT files.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Mirror identities of the I-function data.
    Series,
    /// Realization of the generator ring as q-series.
    Ring {
        /// Largest monomial degree checked.
        #[arg(long, default_value_t = 4)]
        degree: i32,
    },
    /// Quantum product, S-matrix and specialized S-matrices.
    Qde {
        /// Largest delta for the specialized S-matrices.
        #[arg(long, default_value_t = 3)]
        dmax: u32,
    },
    /// R-matrix through z-order --order-z.
    Rmatrix,
    /// Picard-Fuchs route to the R-matrix.
    Pf {
        #[arg(long, default_value_t = 5)]
        m: u32,
    },
    /// Holomorphic anomaly checks and the errata ledger.
    Hae,
    /// Graph enumeration.
    Graphs {
        #[arg(long, value_enum)]
        kind: Option<GraphKind>,
        /// Number of markings.
        #[arg(long, default_value_t = 0)]
        markings: u32,
        /// Comma-separated contact partition for bipartite graphs.
        #[arg(long, value_delimiter = ',')]
        nu: Vec<u32>,
    },
    /// Every suite; exits 1 iff a hard check fails.
    VerifyAll,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum GraphKind {
    Bipartite,
    Tripartite,
    Ginfty,
}

/// Result of one subcommand: the report plus auxiliary files.
struct Outcome {
    report: Report,
    data: Option<Value>,
    files: Vec<(String, String)>,
}

impl Outcome {
    fn report(report: Report) -> Self {
        Outcome { report, data: None, files: Vec::new() }
    }
}

fn series(cfg: &RunConfig) -> Report {
    mirrordata::check_diagonal(&mirrordata::build_idata(cfg.order_q))
}

fn ring(cfg: &RunConfig, degree: i32) -> Report {
    genring::realization_report(cfg.order_q.min(15), degree)
}

fn qde_suite(cfg: &RunConfig, dmax: u32) -> Report {
    let data = mirrordata::build_idata(cfg.order_q);
    let mut rep = qde::qde_report(&data, cfg.order_z, cfg.order_q.min(cfg.order_z));
    rep.extend(qde::s_delta_report(dmax));
    rep
}

fn rmatrix(cfg: &RunConfig) -> Outcome {
    match qde::r_matrix(cfg.order_z) {
        Ok(rm) => Outcome { report: qde::r_matrix_report(&rm), data: Some(rm.to_json()), files: Vec::new() },
        Err(e) => {
            let mut rep = Report::new("rmatrix");
            rep.push(Check::fail("R-matrix recursion", e));
            Outcome::report(rep)
        }
    }
}

fn pf(cfg: &RunConfig, m: u32) -> Report {
    let mut rep = oscpf::pf_report(m, cfg.order_z);
    rep.extend(oscpf::structural_report(6));
    rep
}

fn hae_suite(cfg: &RunConfig) -> Outcome {
    let errata = hae::errata();
    let ledger = serde_json::to_string_pretty(&errata).expect("errata serialize") + "\n";
    let report = match qde::r_matrix(cfg.order_z.max(7)) {
        Ok(rm) => hae::hae_report(&rm, 7, 10),
        Err(e) => {
            let mut rep = Report::new("hae");
            rep.push(Check::fail("R-matrix recursion", e));
            rep
        }
    };
    Outcome { report, data: Some(json!({ "errata": errata })), files: vec![("errata.json".into(), ledger)] }
}

fn graph_suite(cfg: &RunConfig, kind: GraphKind, markings: u32, nu: &[u32]) -> Outcome {
    let g = cfg.genus;
    let (name, list): (&str, Vec<DecoratedGraph>) = match kind {
        GraphKind::Bipartite => ("bipartite", graphs::enumerate_bipartite(g, markings, nu, Leaves::StableQuotient)),
        GraphKind::Tripartite => ("tripartite", graphs::enumerate_tripartite(g, markings)),
        GraphKind::Ginfty => ("ginfty", graphs::enumerate_ginfty(g, markings).into_iter().map(|x| x.graph).collect()),
    };
    let mut report = Report::new("graphs");
    report.push(Check::pass(&format!("{name} g={g} n={markings} nu={nu:?}"), format!("count {}", list.len())));
    let prefix = format!("{name}_g{g}");
    Outcome { report, data: Some(graphs::graph_list_json(name, g, &list)), files: graphs::dot_files(&prefix, &list) }
}

/// Suites of verify-all, in report order.
const SUITES: [&str; 7] = ["series", "ring", "qde", "rmatrix", "pf", "hae", "graphs"];

fn run_suite(name: &str, cfg: &RunConfig) -> Report {
    match name {
        "series" => series(cfg),
        "ring" => ring(cfg, 4),
        "qde" => qde_suite(cfg, 3),
        "rmatrix" => rmatrix(cfg).report,
        "pf" => pf(cfg, 5),
        "hae" => hae_suite(cfg).report,
        "graphs" => graphs::graphs_report(),
        _ => unreachable!("unknown suite {name}"),
    }
}

fn verify_all(cfg: &RunConfig) -> Outcome {
    let reports: Vec<Report> = SUITES.par_iter().map(|s| run_suite(s, cfg)).collect();
    let mut all = Report::new("verify-all");
    for r in reports {
        let suite = r.suite.clone();
        all.extend_prefixed(&suite, r);
    }
    Outcome { report: all, data: None, files: vec![("errata.json".into(), serde_json::to_string_pretty(&hae::errata()).expect("errata serialize") + "\n")] }
}

fn render(out: &Outcome, as_json: bool) -> String {
    if as_json {
        let mut v = json!({ "report": serde_json::from_str::<Value>(&out.report.to_json()).expect("report json") });
        if let Some(d) = &out.data {
            v["data"] = d.clone();
        }
        serde_json::to_string_pretty(&v).expect("json") + "\n"
    } else {
        let mut s = out.report.to_text();
        if let Some(c) = out.data.as_ref().and_then(|d| d.get("count")) {
            s.push_str(&format!("count: {c}\n"));
        }
        s
    }
}

fn write_outputs(dir: &Path, name: &str, out: &Outcome, body: &str, as_json: bool) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join(format!("{name}.{}", if as_json { "json" } else { "txt" })), body)?;
    for (f, contents) in &out.files {
        std::fs::write(dir.join(f), contents)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let cfg = cli.cfg;
    let (name, outcome) = match &cli.cmd {
        Command::Series => ("series", Outcome::report(series(&cfg))),
        Command::Ring { degree } => ("ring", Outcome::report(ring(&cfg, *degree))),
        Command::Qde { dmax } => ("qde", Outcome::report(qde_suite(&cfg, *dmax))),
        Command::Rmatrix => ("rmatrix", rmatrix(&cfg)),
        Command::Pf { m } => ("pf", Outcome::report(pf(&cfg, *m))),
        Command::Hae => ("hae", hae_suite(&cfg)),
        Command::Graphs { kind, markings, nu } => {
            let Some(kind) = kind else {
                return finish("graphs", Outcome::report(graphs::graphs_report()), &cfg);
            };
            ("graphs", graph_suite(&cfg, *kind, *markings, nu))
        }
        Command::VerifyAll => ("verify-all", verify_all(&cfg)),
    };
    finish(name, outcome, &cfg)
}

fn finish(name: &str, outcome: Outcome, cfg: &RunConfig) -> ExitCode {
    let body = render(&outcome, cfg.json);
    print!("{body}");
    if let Some(dir) = &cfg.out {
        if let Err(e) = write_outputs(dir, name, &outcome, &body, cfg.json) {
            eprintln!("cannot write to {}: {e}", dir.display());
            return ExitCode::from(1);
        }
    }
    ExitCode::from(if outcome.report.ok() { 0 } else { 1 })
}
