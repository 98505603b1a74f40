//! Batch command-line surface over the linkednet library. Payloads are JSON
//! on stdout (pretty with `--pretty`), diagnostics go to stderr, and the exit
//! code is 0 when the queried property holds, 1 when it fails with a
//! certificate, and 2 on input or window errors.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use linkednet::analysis::{
    check_intersection_property, decompose, intersection_property_at, AnalysisError,
    AnalysisOptions, CheckScope, DecompositionResult, IntersectionReport, ViolationCertificate,
};
use linkednet::gen::{fixture_nonsemisimple, random_semisimple_net, GenSpec};
use linkednet::io::{parse_gen_spec, parse_net, write_decomposition, write_net};
use linkednet::net::{CheckReport, NetPresentation};
use linkednet::quiver::{hull, Vertex};
use serde_json::json;

#[derive(Parser)]
#[command(name = "linkednet", version, about = "Exact verification and decomposition of linked nets on Z^n-quivers")]
struct Cli {
    /// Pretty-print the JSON payload.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a net file and run every axiom checker.
    Validate { file: PathBuf },
    /// Compute the hull of a set of vertices.
    Hull {
        /// Quiver parameter n.
        #[arg(long)]
        n: usize,
        /// Semicolon-separated twist tuples, e.g. "0,0,0;1,0,1".
        #[arg(long)]
        set: String,
    },
    /// Check the intersection property of a net.
    Intersection {
        file: PathBuf,
        /// Check at one vertex, given as comma-separated twists.
        #[arg(long, conflicts_with_all = ["at_multidegree", "generators", "window"])]
        at: Option<String>,
        /// Check at one vertex, given as a multidegree (needs a frame).
        #[arg(long = "at-multidegree", conflicts_with_all = ["generators", "window"])]
        at_multidegree: Option<String>,
        /// Check at the declared generators (requires purity/generation).
        #[arg(long, conflicts_with = "window")]
        generators: bool,
        /// Check at every window vertex with a computable profile.
        #[arg(long)]
        window: bool,
        /// Allow the doubly-exponential search at n = 4.
        #[arg(long)]
        allow_n4: bool,
    },
    /// Decompose a net into simple summands or emit a violation certificate.
    Decompose {
        file: PathBuf,
        /// Also write the payload to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Allow the doubly-exponential search at n = 4.
        #[arg(long)]
        allow_n4: bool,
    },
    /// Generate a seeded semisimple net and emit it as a net file.
    Gen {
        /// Quiver parameter n.
        #[arg(long, required_unless_present = "spec_file")]
        n: Option<usize>,
        /// Semicolon-separated seed twist tuples, one per summand.
        #[arg(long, required_unless_present = "spec_file")]
        seeds: Option<String>,
        /// Window radius around the hull of the seeds (at least n+1).
        #[arg(long, required_unless_present = "spec_file")]
        radius: Option<usize>,
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
        /// Conjugate by random invertible matrices at every vertex.
        #[arg(long)]
        conjugate: bool,
        /// Read the whole spec from this JSON file instead of the flags.
        #[arg(long)]
        spec_file: Option<PathBuf>,
        /// Also write the net file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit a bundled example net.
    Example {
        /// Example name; `nonsemisimple` is the bundled one.
        which: String,
        /// Also write the net file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    };
    ExitCode::from(code)
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Validate { file } => cmd_validate(&file, cli.pretty),
        Command::Hull { n, set } => cmd_hull(n, &set, cli.pretty),
        Command::Intersection {
            file,
            at,
            at_multidegree,
            generators,
            window,
            allow_n4,
        } => cmd_intersection(
            &file,
            at.as_deref(),
            at_multidegree.as_deref(),
            generators,
            window,
            allow_n4,
            cli.pretty,
        ),
        Command::Decompose {
            file,
            out,
            allow_n4,
        } => cmd_decompose(&file, out.as_deref(), allow_n4, cli.pretty),
        Command::Gen {
            n,
            seeds,
            radius,
            rng_seed,
            conjugate,
            spec_file,
            out,
        } => {
            let spec = match spec_file {
                Some(path) => parse_gen_spec(&read(&path)?).map_err(|e| e.to_string())?,
                None => GenSpec {
                    n: n.expect("clap enforces presence"),
                    window_radius: radius.expect("clap enforces presence"),
                    seeds: parse_vertex_list(&seeds.expect("clap enforces presence"))?,
                    rng_seed,
                    conjugate,
                },
            };
            let (net, _) = random_semisimple_net(&spec).map_err(|e| e.to_string())?;
            emit_net(&net, out.as_deref(), cli.pretty)
        }
        Command::Example { which, out } => {
            if which != "nonsemisimple" {
                return Err(format!("unknown example {which:?}; try `nonsemisimple`"));
            }
            emit_net(&fixture_nonsemisimple(), out.as_deref(), cli.pretty)
        }
    }
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn load_net(path: &Path) -> Result<NetPresentation, String> {
    parse_net(&read(path)?).map_err(|e| e.to_string())
}

fn parse_tuple(text: &str) -> Result<Vec<i64>, String> {
    text.split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|e| format!("bad tuple entry {p:?}: {e}")))
        .collect()
}

fn parse_vertex(text: &str) -> Result<Vertex, String> {
    Vertex::from_twists(parse_tuple(text)?).map_err(|e| e.to_string())
}

fn parse_vertex_list(text: &str) -> Result<Vec<Vertex>, String> {
    text.split(';').map(parse_vertex).collect()
}

fn print_payload(value: &serde_json::Value, pretty: bool) {
    if pretty {
        println!("{}", serde_json::to_string_pretty(value).expect("payloads serialize"));
    } else {
        println!("{}", serde_json::to_string(value).expect("payloads serialize"));
    }
}

fn emit_net(net: &NetPresentation, out: Option<&Path>, pretty: bool) -> Result<u8, String> {
    let text = write_net(net, pretty);
    if let Some(path) = out {
        std::fs::write(path, &text).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    print!("{text}");
    Ok(0)
}

fn cmd_validate(file: &Path, pretty: bool) -> Result<u8, String> {
    let net = load_net(file)?;
    let structural = net.validate();
    let mut reports: Vec<CheckReport> = vec![structural];
    if reports[0].passed() {
        reports.push(net.check_weakly_linked());
        reports.push(net.check_linked());
        reports.push(net.check_exact());
        reports.push(net.check_pure_and_generated());
    } else {
        eprintln!("structural validation failed; axiom checkers skipped");
    }
    let failed = reports.iter().any(|r| !r.passed());
    let payload = json!({
        "verdict": if failed { "fail" } else { "pass" },
        "reports": reports,
    });
    print_payload(&payload, pretty);
    Ok(u8::from(failed))
}

fn cmd_hull(n: usize, set: &str, pretty: bool) -> Result<u8, String> {
    let vertices: BTreeSet<Vertex> = parse_vertex_list(set)?.into_iter().collect();
    for v in &vertices {
        if v.len() != n + 1 {
            return Err(format!("vertex {v} does not have {} twists", n + 1));
        }
    }
    let h = hull(&vertices).map_err(|e| e.to_string())?;
    let payload = json!({ "hull": h.iter().collect::<Vec<_>>() });
    print_payload(&payload, pretty);
    Ok(0)
}

fn analysis_exit(err: AnalysisError) -> Result<u8, String> {
    Err(match err {
        AnalysisError::HypothesesUnverified { .. } => {
            "generators-only mode needs a passing purity/generation check; run `validate`".into()
        }
        other => other.to_string(),
    })
}

fn violation_payload(cert: &ViolationCertificate) -> serde_json::Value {
    json!({ "verdict": "violation", "certificate": cert })
}

fn report_payload(report: &IntersectionReport) -> serde_json::Value {
    json!({
        "verdict": "pass",
        "checked": report.checked,
        "skipped": report.skipped,
    })
}

fn cmd_intersection(
    file: &Path,
    at: Option<&str>,
    at_multidegree: Option<&str>,
    generators: bool,
    window: bool,
    allow_n4: bool,
    pretty: bool,
) -> Result<u8, String> {
    let net = load_net(file)?;
    let opts = AnalysisOptions {
        allow_n4,
        ..Default::default()
    };
    let vertex = match (at, at_multidegree) {
        (Some(text), None) => Some(parse_vertex(text)?),
        (None, Some(text)) => {
            let frame = net
                .frame()
                .ok_or("multidegree input needs a net file with a frame")?;
            Some(frame.to_twists(&parse_tuple(text)?).map_err(|e| e.to_string())?)
        }
        (None, None) => None,
        (Some(_), Some(_)) => unreachable!("clap forbids both"),
    };
    if let Some(v) = vertex {
        return match intersection_property_at(&net, &v, opts) {
            Ok(Some(cert)) => {
                print_payload(&violation_payload(&cert), pretty);
                Ok(1)
            }
            Ok(None) => {
                print_payload(
                    &json!({ "verdict": "pass", "checked": [v], "skipped": [] }),
                    pretty,
                );
                Ok(0)
            }
            Err(e) => analysis_exit(e),
        };
    }
    let scope = if window {
        CheckScope::WholeWindow
    } else if generators {
        CheckScope::GeneratorsOnly
    } else {
        return Err("choose one of --at, --at-multidegree, --generators, --window".into());
    };
    match check_intersection_property(&net, scope, opts) {
        Ok(report) => {
            if let Some(cert) = &report.violation {
                print_payload(&violation_payload(cert), pretty);
                Ok(1)
            } else {
                print_payload(&report_payload(&report), pretty);
                Ok(0)
            }
        }
        Err(e) => analysis_exit(e),
    }
}

fn cmd_decompose(
    file: &Path,
    out: Option<&Path>,
    allow_n4: bool,
    pretty: bool,
) -> Result<u8, String> {
    let net = load_net(file)?;
    let opts = AnalysisOptions {
        allow_n4,
        ..Default::default()
    };
    match decompose(&net, opts) {
        Ok(DecompositionResult::Summands(summands)) => {
            let text = write_decomposition(&net, &summands, pretty);
            if let Some(path) = out {
                std::fs::write(path, &text)
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            }
            print!("{text}");
            Ok(0)
        }
        Ok(DecompositionResult::Violation(cert)) => {
            let payload = violation_payload(&cert);
            if let Some(path) = out {
                let text = serde_json::to_string_pretty(&payload).expect("payloads serialize");
                std::fs::write(path, text)
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            }
            print_payload(&payload, pretty);
            Ok(1)
        }
        Err(AnalysisError::PreconditionFailed { stage, report }) => Err(format!(
            "the {stage} check fails on this net: {} witness(es); run `validate`",
            report.witnesses.len()
        )),
        Err(e) => analysis_exit(e),
    }
}
