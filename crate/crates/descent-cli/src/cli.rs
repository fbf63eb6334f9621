//! Verbs, flags, and the process exit contract.
//!
//! `verify` runs case files, `selftest` runs the bundled verification
//! matrix, `describe` parses and builds a case without verifying anything.
//! Exit codes: 0 all checks passed, 2 a claimed check failed, 3 a verdict is
//! advisory because some hypothesis stayed unverified, 1 malformed input or
//! usage error. `--advisory-ok` downgrades 3 to 0; nothing downgrades 2.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::report::{exit_code_for, render_text, RunReport};
use crate::run::{run_case, RunFailure};
use crate::selftest::{render_selftest_text, run_selftest, SelftestConfig, DEFAULT_SEED};
use crate::spec::{build_coalg_morphism, build_hom, CaseSpec};

#[derive(Debug, Parser)]
#[command(
    name = "descent",
    about = "Exact verification of unit, Picard, and descent statements over finite commutative rings"
)]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Run one or more case files and report verdicts.
    Verify {
        /// Paths to case spec JSON files.
        #[arg(required = true)]
        specs: Vec<PathBuf>,
        #[command(flatten)]
        flags: Flags,
    },
    /// Run the bundled verification matrix.
    Selftest {
        /// Only run blocks whose id or title contains this substring.
        #[arg(long)]
        only: Option<String>,
        #[command(flatten)]
        flags: Flags,
    },
    /// Parse and build a case file, reporting what it describes.
    Describe {
        /// Path to a case spec JSON file.
        spec: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Json,
    Text,
}

#[derive(Debug, Args)]
pub struct Flags {
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    pub emit: Emit,
    /// Write the report to this path instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Cardinality cap for enumerated module families.
    #[arg(long)]
    pub bound: Option<usize>,
    /// Seed for randomized suites.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Treat advisory verdicts (exit 3) as success.
    #[arg(long)]
    pub advisory_ok: bool,
}

/// Runs one parsed command to an exit code. Factored out of `main` so tests
/// can drive the full pipeline in-process.
pub fn execute(cli: Cli) -> i32 {
    match cli.cmd {
        Cmd::Verify { specs, flags } => verify_cmd(&specs, &flags),
        Cmd::Selftest { only, flags } => selftest_cmd(only.as_deref(), &flags),
        Cmd::Describe { spec } => describe_cmd(&spec),
    }
}

fn load_case(path: &Path) -> Result<CaseSpec, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("{}: cannot read: {e}", path.display()))?;
    // serde_json errors already carry line and column positions.
    CaseSpec::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// Exit-code precedence when several cases ran: usage errors dominate, then
/// failed checks, then advisory verdicts.
fn combine_exit(a: i32, b: i32) -> i32 {
    let rank = |c: i32| match c {
        1 => 3,
        2 => 2,
        3 => 1,
        _ => 0,
    };
    if rank(b) > rank(a) {
        b
    } else {
        a
    }
}

fn write_out(out: Option<&Path>, payload: &str) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, payload),
        None => {
            print!("{payload}");
            Ok(())
        }
    }
}

type Outcome = (String, Result<(RunReport, u128), RunFailure>);

fn run_one(spec: CaseSpec, bound: Option<usize>) -> Outcome {
    let id = spec.id.clone();
    let start = Instant::now();
    let result = run_case(&spec, bound).map(|r| (r, start.elapsed().as_millis()));
    (id, result)
}

fn verify_cmd(paths: &[PathBuf], flags: &Flags) -> i32 {
    // A malformed file fails the whole invocation before anything runs.
    let mut specs = Vec::new();
    for path in paths {
        match load_case(path) {
            Ok(spec) => specs.push(spec),
            Err(message) => {
                eprintln!("{message}");
                return 1;
            }
        }
    }
    let bound = flags.bound;
    let mut outcomes: Vec<Outcome> = if specs.len() > 1 {
        let handles: Vec<_> = specs
            .into_iter()
            .map(|spec| std::thread::spawn(move || run_one(spec, bound)))
            .collect();
        handles
            .into_iter()
            .map(|h| {
                h.join().unwrap_or_else(|_| {
                    (
                        String::new(),
                        Err(RunFailure {
                            case: String::new(),
                            code: 2,
                            message: String::from("case panicked"),
                        }),
                    )
                })
            })
            .collect()
    } else {
        specs.into_iter().map(|s| run_one(s, bound)).collect()
    };
    outcomes.sort_by(|a, b| a.0.cmp(&b.0));

    let mut exit = 0;
    let mut reports = Vec::new();
    let mut text = String::new();
    for (_, outcome) in outcomes {
        match outcome {
            Ok((report, wall_ms)) => {
                exit = combine_exit(exit, exit_code_for(&report, flags.advisory_ok));
                text.push_str(&render_text(&report, wall_ms));
                reports.push(report);
            }
            Err(failure) => {
                eprintln!("{}", failure.message);
                exit = combine_exit(exit, failure.code);
            }
        }
    }
    if !reports.is_empty() {
        let payload = match flags.emit {
            Emit::Json if reports.len() == 1 => {
                let mut s = serde_json::to_string_pretty(&reports[0]).expect("report serializes");
                s.push('\n');
                s
            }
            Emit::Json => {
                let mut s = serde_json::to_string_pretty(&reports).expect("reports serialize");
                s.push('\n');
                s
            }
            Emit::Text => text,
        };
        if let Err(e) = write_out(flags.out.as_deref(), &payload) {
            eprintln!("cannot write report: {e}");
            return 1;
        }
    }
    exit
}

fn selftest_cmd(only: Option<&str>, flags: &Flags) -> i32 {
    let cfg = SelftestConfig {
        seed: flags.seed.unwrap_or(DEFAULT_SEED),
        family_bound: flags.bound.unwrap_or(16),
    };
    let report = run_selftest(only, &cfg);
    if report.blocks.is_empty() {
        eprintln!("no selftest block matches the filter");
        return 1;
    }
    let payload = match flags.emit {
        Emit::Json => {
            let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
            s.push('\n');
            s
        }
        Emit::Text => render_selftest_text(&report),
    };
    if let Err(e) = write_out(flags.out.as_deref(), &payload) {
        eprintln!("cannot write report: {e}");
        return 1;
    }
    if report.pass {
        0
    } else {
        2
    }
}

/// Builds the inputs of a case (running all audits) and describes them
/// without verifying any claim.
pub fn describe(spec: &CaseSpec) -> Result<String, RunFailure> {
    let mut out = String::new();
    out.push_str(&format!("case {} (kind {})\n", spec.id, spec.kind.as_str()));
    if let Some(hom_spec) = &spec.hom {
        let hom = build_hom(hom_spec).map_err(|e| RunFailure {
            case: spec.id.clone(),
            code: 1,
            message: format!("case {}: {}: {e}", spec.id, crate::run::error_name(&e)),
        })?;
        out.push_str(&format!("  base ring: order {}\n", hom.dom.order));
        out.push_str(&format!("  extension ring: order {}\n", hom.cod.order));
        out.push_str("  unit map: audited ring homomorphism\n");
    }
    if let Some(m_spec) = &spec.morphism {
        let phi = build_coalg_morphism(m_spec).map_err(|e| RunFailure {
            case: spec.id.clone(),
            code: 1,
            message: format!("case {}: {}: {e}", spec.id, crate::run::error_name(&e)),
        })?;
        out.push_str(&format!(
            "  source coalgebra: dimension {} over a field of order {}\n",
            phi.source.dim, phi.source.field.order
        ));
        out.push_str(&format!(
            "  target coalgebra: dimension {} over a field of order {}\n",
            phi.target.dim, phi.target.field.order
        ));
        out.push_str(&format!(
            "  morphism: audited, {}\n",
            if phi.is_surjective() {
                "surjective"
            } else {
                "not surjective"
            }
        ));
    }
    if spec.hom.is_none() && spec.morphism.is_none() {
        return Err(RunFailure {
            case: spec.id.clone(),
            code: 1,
            message: format!("case {}: no input structure to describe", spec.id),
        });
    }
    if let Some(bounds) = &spec.bounds {
        if let Some(cap) = bounds.max_order {
            out.push_str(&format!("  bound: module family cardinality cap {cap}\n"));
        }
        if let Some(depth) = bounds.depth {
            out.push_str(&format!("  bound: complex depth {depth}\n"));
        }
    }
    if let Some(expect) = &spec.expect {
        if let Some(orders) = &expect.orders {
            out.push_str(&format!("  expect: group orders {orders:?}\n"));
        }
        if let Some(h1) = expect.h1_order {
            out.push_str(&format!("  expect: degree-one cohomology order {h1}\n"));
        }
    }
    Ok(out)
}

fn describe_cmd(path: &Path) -> i32 {
    let spec = match load_case(path) {
        Ok(spec) => spec,
        Err(message) => {
            eprintln!("{message}");
            return 1;
        }
    };
    match describe(&spec) {
        Ok(text) => {
            print!("{text}");
            0
        }
        Err(failure) => {
            eprintln!("{}", failure.message);
            failure.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_combine_by_precedence() {
        assert_eq!(combine_exit(0, 3), 3);
        assert_eq!(combine_exit(3, 2), 2);
        assert_eq!(combine_exit(2, 3), 2);
        assert_eq!(combine_exit(2, 1), 1);
        assert_eq!(combine_exit(1, 2), 1);
        assert_eq!(combine_exit(0, 0), 0);
    }

    #[test]
    fn describe_reports_orders_for_a_ring_case() {
        let spec = CaseSpec::parse(
            r#"{
                "id": "demo",
                "kind": "seq5",
                "hom": {
                    "dom": {"kind": "zmod", "n": 2},
                    "cod": {"kind": "gf", "p": 2, "poly": [1, 1, 1]},
                    "values": [0, 1]
                },
                "expect": {"orders": [1, 3, 3, 1, 1]}
            }"#,
        )
        .unwrap();
        let text = describe(&spec).unwrap();
        assert!(text.contains("base ring: order 2"));
        assert!(text.contains("extension ring: order 4"));
        assert!(text.contains("group orders [1, 3, 3, 1, 1]"));
    }

    #[test]
    fn describe_rejects_cases_without_inputs() {
        let spec = CaseSpec::parse(r#"{"id": "empty", "kind": "seq5"}"#).unwrap();
        let failure = describe(&spec).unwrap_err();
        assert_eq!(failure.code, 1);
    }
}
