//! `eiko`: diagnostics for unit divergence-free fields and Burgers solutions.
//!
//! Exit codes: 0 success, 2 invalid input or configuration, 3 a numerical
//! contract (unit length, loop resolution) was breached.

mod cmd;
mod config;
mod report;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use cmd::{burgers, classify, generate, kinetic, production, seminorm, ContractViolation};
use report::Reporter;
use serde::de::DeserializeOwned;
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(
    name = "eiko",
    version,
    about = "Diagnostics for unit-length divergence-free fields"
)]
struct Cli {
    /// JSON file whose keys override defaults and flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Print the resolved configuration and exit.
    #[arg(long, global = true)]
    print_config: bool,
    /// JSON-lines report destination; stdout if absent.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample a canonical field and write it to a field file.
    Generate(generate::GenerateArgs),
    /// Gagliardo seminorm and commutator ladder on a window.
    Seminorm(seminorm::SeminormArgs),
    /// Entropy production and its regularized decomposition.
    Production(production::ProductionArgs),
    /// Kinetic residuals over a direction fan and averaging reconstruction.
    Kinetic(kinetic::KineticArgs),
    /// Vortex or Lipschitz classification, winding, ordering and traces.
    Classify(classify::ClassifyArgs),
    /// Weak, entropy and Oleinik diagnostics for a Burgers field.
    Burgers(burgers::BurgersArgs),
}

fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var("EIKO_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .with_context(|| format!("EIKO_THREADS must be a positive integer, got `{v}`"))?;
    anyhow::ensure!(n > 0, "EIKO_THREADS must be positive");
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .context("starting thread pool")?;
    Ok(())
}

/// Overlays `--config`, then either prints the result or opens the reporter.
fn resolve<C: Serialize + DeserializeOwned>(
    cli: &Cli,
    name: &'static str,
    cfg: C,
) -> Result<Option<(C, Reporter)>> {
    let cfg = config::overlay(cfg, cli.config.as_deref())?;
    if cli.print_config {
        println!("{}", serde_json::to_string_pretty(&cfg)?);
        return Ok(None);
    }
    let hash = config::config_hash(&cfg)?;
    let rep = Reporter::open(cli.report.as_deref(), name, hash)?;
    Ok(Some((cfg, rep)))
}

fn dispatch(cli: &Cli) -> Result<()> {
    macro_rules! run {
        ($name:literal, $cfg:expr, |$c:ident, $r:ident| $body:expr) => {{
            if let Some(($c, mut $r)) = resolve(cli, $name, $cfg)? {
                $body?;
                $r.finish()?;
            }
        }};
    }
    match &cli.command {
        Command::Generate(a) => {
            run!("generate", generate::configure(a)?, |c, r| generate::run(
                &c,
                a.output.as_ref(),
                &mut r
            ))
        }
        Command::Seminorm(a) => run!("seminorm", seminorm::configure(a)?, |c, r| seminorm::run(
            &c, &mut r
        )),
        Command::Production(a) => run!("production", production::configure(a)?, |c, r| {
            production::run(&c, &mut r)
        }),
        Command::Kinetic(a) => run!("kinetic", kinetic::configure(a)?, |c, r| kinetic::run(
            &c, &mut r
        )),
        Command::Classify(a) => {
            run!("classify", classify::configure(a)?, |c, r| classify::run(
                &c,
                a.csv_dir.as_ref(),
                &mut r
            ))
        }
        Command::Burgers(a) => {
            run!("burgers", burgers::configure(a)?, |c, r| burgers::run(
                &c,
                a.write_field.as_ref(),
                &mut r
            ))
        }
    }
    Ok(())
}

fn exit_code(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if cause.is::<ContractViolation>() {
            return 3;
        }
        if let Some(err) = cause.downcast_ref::<eiko_core::Error>() {
            return match err {
                eiko_core::Error::NotUnit { .. }
                | eiko_core::Error::UnderResolvedLoop { .. }
                | eiko_core::Error::SingularNode { .. } => 3,
                _ => 2,
            };
        }
    }
    2
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|_| dispatch(&cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("eiko: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contract_errors_map_to_three() {
        let e: anyhow::Error = eiko_core::Error::NotUnit {
            index: 0,
            deviation: 0.1,
        }
        .into();
        assert_eq!(exit_code(&e.context("reading")), 3);
        let e: anyhow::Error = ContractViolation("x".into()).into();
        assert_eq!(exit_code(&e), 3);
    }

    #[test]
    fn validation_errors_map_to_two() {
        let e: anyhow::Error = eiko_core::Error::InvalidParameter("x".into()).into();
        assert_eq!(exit_code(&e), 2);
        assert_eq!(exit_code(&anyhow::anyhow!("bad flag")), 2);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    fn run_in(threads: usize, args: &[&str]) -> Result<()> {
        let cli = Cli::parse_from(std::iter::once("eiko").chain(args.iter().copied()));
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| dispatch(&cli))
    }

    fn s(p: &std::path::Path) -> &str {
        p.to_str().unwrap()
    }

    #[test]
    fn reports_do_not_depend_on_the_thread_count() {
        let dir = tempfile::tempdir().unwrap();
        let f = dir.path().join("v.fld");
        run_in(
            2,
            &[
                "generate",
                "--nx",
                "65",
                "--ny",
                "65",
                "--h",
                "0.03125",
                "-o",
                s(&f),
                "--report",
                s(&dir.path().join("g.jsonl")),
            ],
        )
        .unwrap();
        let cases: [&[&str]; 4] = [
            &[
                "kinetic",
                "--field",
                s(&f),
                "--fan",
                "16",
                "--zeta",
                "0.3,0.2,0.3",
                "--reconstruct",
                "16,32",
            ],
            &[
                "production",
                "--field",
                s(&f),
                "--zeta",
                "0.3,0.2,0.3",
                "--eps-ladder",
                "4,2",
            ],
            &[
                "seminorm",
                "--field",
                s(&f),
                "--window",
                "-0.5,-0.5,0.5,0.5",
                "--subsample",
                "8",
                "--eps-ladder",
                "2",
            ],
            &[
                "classify",
                "--field",
                s(&f),
                "--ordering-pairs",
                "500",
                "--trace",
                "0.4,0.1",
            ],
        ];
        for (k, case) in cases.iter().enumerate() {
            let mut out = Vec::new();
            for threads in [1, 4] {
                let r = dir.path().join(format!("r{k}_{threads}.jsonl"));
                let mut args = case.to_vec();
                args.extend(["--report", s(&r)]);
                run_in(threads, &args).unwrap();
                out.push(std::fs::read(&r).unwrap());
            }
            assert!(!out[0].is_empty());
            assert_eq!(out[0], out[1], "{}", case[0]);
        }
    }

    #[test]
    fn every_record_carries_version_and_hash() {
        let dir = tempfile::tempdir().unwrap();
        let r = dir.path().join("b.jsonl");
        run_in(
            1,
            &[
                "burgers",
                "--kind",
                "rarefaction",
                "--n",
                "65",
                "--report",
                s(&r),
            ],
        )
        .unwrap();
        let text = std::fs::read_to_string(&r).unwrap();
        for line in text.lines() {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            assert_eq!(v["version"], report::VERSION);
            assert_eq!(v["config_hash"].as_str().unwrap().len(), 64);
        }
    }

    #[test]
    fn energy_report_matches_the_shock_oracle() {
        let dir = tempfile::tempdir().unwrap();
        let r = dir.path().join("e.jsonl");
        run_in(
            1,
            &[
                "burgers",
                "--kind",
                "shock",
                "--vl",
                "1",
                "--vr",
                "0",
                "--energy",
                "--report",
                s(&r),
            ],
        )
        .unwrap();
        let v: serde_json::Value =
            serde_json::from_str(std::fs::read_to_string(&r).unwrap().trim()).unwrap();
        let (e, o) = (
            v["data"]["energy"].as_f64().unwrap(),
            v["data"]["oracle"].as_f64().unwrap(),
        );
        assert!((e - o).abs() < 0.05 * o.abs() && (o + 0.7 / 12.0).abs() < 1e-9);
    }

    #[test]
    fn non_unit_fields_are_contract_violations() {
        let dir = tempfile::tempdir().unwrap();
        let f = dir.path().join("bad.fld");
        std::fs::write(&f, "EIKO1 2 2 0 0 0.5\n1 0\n0 1\n0.5 0\n1 0\n").unwrap();
        let e = run_in(1, &["kinetic", "--field", s(&f), "--fan", "4"]).unwrap_err();
        assert_eq!(exit_code(&e), 3);
    }

    #[test]
    fn malformed_inputs_are_validation_failures() {
        let dir = tempfile::tempdir().unwrap();
        let f = dir.path().join("bad.fld");
        std::fs::write(&f, "EIKO1 2 2 0 0\n").unwrap();
        assert_eq!(
            exit_code(&run_in(1, &["kinetic", "--field", s(&f)]).unwrap_err()),
            2
        );
        assert_eq!(
            exit_code(
                &run_in(1, &["burgers", "--kind", "shock", "--vl", "0", "--vr", "1"]).unwrap_err()
            ),
            2
        );
        let c = dir.path().join("c.json");
        std::fs::write(&c, r#"{"fan": "many"}"#).unwrap();
        let e = run_in(1, &["kinetic", "--field", s(&f), "--config", s(&c)]).unwrap_err();
        assert_eq!(exit_code(&e), 2);
    }

    #[test]
    fn characteristics_export_as_csv() {
        let dir = tempfile::tempdir().unwrap();
        let f = dir.path().join("v.fld");
        run_in(
            1,
            &[
                "generate",
                "--kind",
                "constant",
                "--angle",
                "0.3",
                "--nx",
                "33",
                "--ny",
                "33",
                "--h",
                "0.0625",
                "-o",
                s(&f),
                "--report",
                s(&dir.path().join("g.jsonl")),
            ],
        )
        .unwrap();
        let out = dir.path().join("csv");
        let r = dir.path().join("r.jsonl");
        run_in(
            1,
            &[
                "classify",
                "--field",
                s(&f),
                "--window",
                "-0.5,-0.5,0.5,0.5",
                "--trace",
                "0,0",
                "--csv-dir",
                s(&out),
                "--report",
                s(&r),
            ],
        )
        .unwrap();
        let csv = std::fs::read_to_string(out.join("characteristic_000.csv")).unwrap();
        assert!(csv.starts_with("t,x1,x2\n") && csv.lines().count() > 10);
    }

    #[test]
    fn flags_then_config_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.json");
        std::fs::write(&p, r#"{"fan": 8, "zeta": {"radius": 0.4}}"#).unwrap();
        let cli = Cli::parse_from(["eiko", "kinetic", "--fan", "16", "--zeta", "0.1,0.2,0.3"]);
        let Command::Kinetic(a) = &cli.command else {
            unreachable!()
        };
        let c = config::overlay(
            kinetic::configure(a).unwrap(),
            Some(std::path::Path::new(&p)),
        )
        .unwrap();
        assert_eq!(c.fan, 8);
        assert_eq!(
            (c.zeta.center.x, c.zeta.center.y, c.zeta.radius),
            (0.1, 0.2, 0.4)
        );
    }
}
