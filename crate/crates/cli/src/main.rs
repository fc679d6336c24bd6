//! `bgames`: run matches and tournaments, verify gauges, replay transcripts.
//!
//! Exit codes: 0 II wins, 10 I wins, 20 undecided, 30 forfeit, 2 bad
//! configuration, 1 any other failure (including a failed verification).

mod config;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use baire_games::arena::{referee, replay, write_atomic, Certificate, Transcript, Verdict};
use baire_games::catalog::list_catalog;
use baire_games::exactnum::parse_rat;
use baire_games::harness::{rows_csv, run_tournament, timings_csv, verify_target, VerifyOptions};
use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use config::{ConfigError, RunConfig, TournamentConfig};

#[derive(Parser)]
#[command(name = "bgames", version, about = "Topological games on Baire class 1 functions, played exactly")]
struct Args {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Play one match; writes a JSONL transcript and a JSON verdict.
    Play {
        config: PathBuf,
        /// Overrides the seed in the config.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run every cell of a tournament; writes a verdict CSV and a timing sidecar.
    Tournament {
        config: PathBuf,
        /// Replaces every seed in the config.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Check gauges, normalization and oscillation for catalog ids.
    Verify {
        #[arg(required = true)]
        targets: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random pairs per ε on top of the breakpoint straddles.
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        /// Replace the analytic gauge by this constant (negative control).
        #[arg(long)]
        bogus_gauge: Option<String>,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-referee a transcript and re-check the certificate.
    Replay {
        transcript: PathBuf,
        /// A recorded verdict file to compare against.
        #[arg(long)]
        verdict: Option<PathBuf>,
    },
    /// Print the built-in functions and families.
    ListCatalog {
        #[arg(long)]
        json: bool,
    },
}

/// What `play` writes next to the transcript.
#[derive(Serialize, Deserialize)]
struct VerdictFile {
    #[serde(flatten)]
    verdict: Verdict,
    exit_code: i32,
    /// Decimal renderings of the certificate numbers; the exact fields are authoritative.
    approx: Option<String>,
}

fn approx(v: &Verdict) -> Option<String> {
    Some(match v.certificate()? {
        Certificate::ValueGap { gap, .. } => format!("gap ≈ {:.6}", gap.to_f64()),
        Certificate::PointGap { dist, .. } => format!("dist ≈ {:.6}", dist.to_f64()),
        Certificate::Residual { residual, .. } => format!("residual ≈ {:.6e}", residual.to_f64()),
        Certificate::Forfeit { .. } => return None,
    })
}

fn verdict_file(v: &Verdict) -> anyhow::Result<Vec<u8>> {
    let f = VerdictFile { verdict: v.clone(), exit_code: v.exit_code(), approx: approx(v) };
    let mut bytes = serde_json::to_vec_pretty(&f)?;
    bytes.push(b'\n');
    Ok(bytes)
}

fn exit(code: i32) -> ExitCode {
    ExitCode::from(u8::try_from(code).unwrap_or(1))
}

fn play(config: &Path, seed: Option<u64>) -> anyhow::Result<ExitCode> {
    let c = RunConfig::load(config, seed)?;
    let out = c.cell().run()?;
    // both files are complete or absent
    let verdict = verdict_file(&out.verdict)?;
    out.transcript.write_jsonl(&c.transcript)?;
    write_atomic(&c.verdict, &verdict)?;
    println!("{}", out.verdict);
    Ok(exit(out.verdict.exit_code()))
}

fn tournament(config: &Path, seed: Option<u64>) -> anyhow::Result<ExitCode> {
    let c = TournamentConfig::load(config, seed)?;
    let cells = c.cells();
    let rows = run_tournament(&cells);
    if let Some(dir) = &c.transcripts {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for (k, r) in rows.iter().enumerate() {
            if let Ok(o) = &r.outcome {
                o.transcript.write_jsonl(&dir.join(format!("cell-{k:05}.jsonl")))?;
            }
        }
    }
    write_atomic(&c.csv, rows_csv(&rows)?.as_bytes())?;
    write_atomic(&c.timings_path(), timings_csv(&rows).as_bytes())?;
    let errors = rows.iter().filter(|r| r.outcome.is_err()).count();
    println!("{} cells, {errors} failed in-row; table at {}", rows.len(), c.csv.display());
    Ok(ExitCode::SUCCESS)
}

fn verify(targets: &[String], opts: VerifyOptions, out: Option<&Path>) -> anyhow::Result<ExitCode> {
    let mut reports = Vec::new();
    for t in targets {
        reports.push(verify_target(t, &opts).map_err(|e| ConfigError(format!("{t}: {e}")))?);
    }
    let pass = reports.iter().all(|r| r.pass);
    let mut json = serde_json::to_vec_pretty(&serde_json::json!({ "pass": pass, "reports": reports }))?;
    json.push(b'\n');
    match out {
        Some(p) => write_atomic(p, &json)?,
        None => print!("{}", String::from_utf8_lossy(&json)),
    }
    for r in reports.iter().filter(|r| !r.pass) {
        for c in r.checks.iter().filter(|c| !c.pass) {
            eprintln!("FAIL {} {}{}: {}", r.target, c.property, c.eps.as_ref().map(|e| format!(" eps={e}")).unwrap_or_default(), c.detail);
        }
    }
    Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn replay_cmd(transcript: &Path, recorded: Option<&Path>) -> anyhow::Result<ExitCode> {
    let t = Transcript::read_jsonl(transcript)?;
    let v = referee(&t)?;
    if let Some(p) = recorded {
        let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
        let f: VerdictFile = serde_json::from_str(&text).map_err(|e| ConfigError(format!("{}: {e}", p.display())))?;
        if !replay(&t, &f.verdict)? {
            bail!("recorded verdict does not replay: recorded {}, derived {v}", f.verdict);
        }
    } else if !baire_games::arena::verify_certificate(&t, &v)? {
        bail!("certificate does not re-verify: {v}");
    }
    println!("{v}");
    Ok(exit(v.exit_code()))
}

fn list(json: bool) -> anyhow::Result<ExitCode> {
    let entries = list_catalog();
    if json {
        println!("{}", serde_json::to_string_pretty(&entries)?);
    } else {
        for e in entries {
            println!("{:<24} {:<8} {:<7} {:<14} {}", e.id, e.kind, e.space, e.class, e.measurability);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run(args: Args) -> anyhow::Result<ExitCode> {
    match args.cmd {
        Cmd::Play { config, seed } => play(&config, seed),
        Cmd::Tournament { config, seed } => tournament(&config, seed),
        Cmd::Verify { targets, seed, budget, bogus_gauge, out } => {
            let bogus = bogus_gauge.map(|s| parse_rat(&s)).transpose().map_err(|e| ConfigError(e.to_string()))?;
            verify(&targets, VerifyOptions { seed, budget, bogus }, out.as_deref())
        }
        Cmd::Replay { transcript, verdict } => replay_cmd(&transcript, verdict.as_deref()),
        Cmd::ListCatalog { json } => list(json),
    }
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<ConfigError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
