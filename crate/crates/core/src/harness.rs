//! Batch plumbing: single matches, tournaments and gauge verification reports.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arena::{play_match, referee, Game, GameKind, MatchConfig, Side, Transcript, Verdict};
use crate::catalog::{
    check_gauge, dense_pair_witness, normalize_gauges, osc_witness, shrink_gauges, FamilySpec, GaugeCheck,
    GaugeFamily, PairSampler, Target,
};
use crate::error::{Error, Result};
use crate::exactnum::{pow2_neg, rat, rat_serde, Point, Rat};
use crate::strategies::{make_i, make_ii, plays};

/// A finished match.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub transcript: Transcript,
    pub verdict: Verdict,
}

pub fn run_match(game: &Game, strategy_i: &str, strategy_ii: &str, config: &MatchConfig) -> Result<Outcome> {
    let mut i = make_i(strategy_i, game)?;
    let mut ii = make_ii(strategy_ii, game)?;
    let transcript = play_match(game, i.as_mut(), ii.as_mut(), config)?;
    let verdict = referee(&transcript)?;
    Ok(Outcome { transcript, verdict })
}

/// One tournament cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Cell {
    pub kind: GameKind,
    pub target: String,
    pub strategy_i: String,
    pub strategy_ii: String,
    pub rounds: usize,
    #[serde(with = "rat_serde")]
    pub eps_dec: Rat,
    #[serde(default)]
    pub window: Option<usize>,
    #[serde(default)]
    pub seed: u64,
}

impl Cell {
    pub fn config(&self) -> Result<MatchConfig> {
        let c = MatchConfig::new(self.rounds, self.eps_dec.clone())?.with_seed(self.seed);
        match self.window {
            Some(w) => c.with_window(w),
            None => Ok(c),
        }
    }

    pub fn game(&self) -> Result<Game> {
        Game::new(self.kind, Target::parse_id(&self.target)?)
    }

    pub fn run(&self) -> Result<Outcome> {
        run_match(&self.game()?, &self.strategy_i, &self.strategy_ii, &self.config()?)
    }
}

/// Cartesian product of kinds, targets, strategies and seeds; combinations a
/// strategy cannot play, or a kind cannot bind, are left out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Matrix {
    pub kinds: Vec<GameKind>,
    pub targets: Vec<String>,
    pub strategies_i: Vec<String>,
    pub strategies_ii: Vec<String>,
    pub seeds: Vec<u64>,
    pub rounds: usize,
    #[serde(with = "rat_serde")]
    pub eps_dec: Rat,
    #[serde(default)]
    pub window: Option<usize>,
}

impl Matrix {
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for &kind in &self.kinds {
            for target in &self.targets {
                let Ok(t) = Target::parse_id(target) else {
                    continue;
                };
                if Game::new(kind, t).is_err() {
                    continue;
                }
                for si in self.strategies_i.iter().filter(|s| plays(s, Side::I, kind)) {
                    for sii in self.strategies_ii.iter().filter(|s| plays(s, Side::II, kind)) {
                        for &seed in &self.seeds {
                            out.push(Cell {
                                kind,
                                target: target.clone(),
                                strategy_i: si.clone(),
                                strategy_ii: sii.clone(),
                                rounds: self.rounds,
                                eps_dec: self.eps_dec.clone(),
                                window: self.window,
                                seed,
                            });
                        }
                    }
                }
            }
        }
        out
    }
}

/// Tournament input: explicit cells, a matrix, or both.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tournament {
    #[serde(default)]
    pub cells: Vec<Cell>,
    #[serde(default)]
    pub matrix: Option<Matrix>,
}

impl Tournament {
    pub fn all_cells(&self) -> Vec<Cell> {
        let mut out = self.cells.clone();
        if let Some(m) = &self.matrix {
            out.extend(m.cells());
        }
        out
    }
}

/// Result of one cell; failures are kept in-row.
#[derive(Debug, Clone)]
pub struct Row {
    pub cell: Cell,
    pub outcome: std::result::Result<Outcome, Error>,
    pub wall_ms: u128,
}

impl Row {
    pub fn verdict_label(&self) -> String {
        match &self.outcome {
            Ok(o) if o.verdict.is_forfeit() => "Forfeit".into(),
            Ok(o) => o.verdict.label().into(),
            Err(_) => "Error".into(),
        }
    }

    pub fn summary(&self) -> String {
        match &self.outcome {
            Ok(o) => match &o.verdict {
                Verdict::Undecided { diagnostics, .. } => diagnostics.clone(),
                v => v.certificate().map(|c| c.to_string()).unwrap_or_default(),
            },
            Err(e) => e.to_string(),
        }
    }

    pub fn rounds(&self) -> usize {
        self.outcome.as_ref().map_or(0, |o| o.transcript.round_count())
    }
}

/// Runs cells in parallel; rows come back in input order.
pub fn run_tournament(cells: &[Cell]) -> Vec<Row> {
    cells
        .par_iter()
        .map(|c| {
            let start = Instant::now();
            let outcome = c.run();
            Row { cell: c.clone(), outcome, wall_ms: start.elapsed().as_millis() }
        })
        .collect()
}

/// The verdict table. Wall times live in a separate table so this one is
/// byte-identical across reruns.
pub fn rows_csv(rows: &[Row]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(["cell", "kind", "target", "strategy_i", "strategy_ii", "seed", "verdict", "certificate", "rounds"])
        .map_err(io)?;
    for (k, r) in rows.iter().enumerate() {
        w.write_record([
            k.to_string(),
            r.cell.kind.to_string(),
            r.cell.target.clone(),
            r.cell.strategy_i.clone(),
            r.cell.strategy_ii.clone(),
            r.cell.seed.to_string(),
            r.verdict_label(),
            r.summary(),
            r.rounds().to_string(),
        ])
        .map_err(io)?;
    }
    String::from_utf8(w.into_inner().map_err(|e| Error::Io(e.to_string()))?).map_err(|e| Error::Io(e.to_string()))
}

pub fn timings_csv(rows: &[Row]) -> String {
    let mut out = String::from("cell,wall_ms\n");
    for (k, r) in rows.iter().enumerate() {
        out.push_str(&format!("{k},{}\n", r.wall_ms));
    }
    out
}

/// Outcome of one verified property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub property: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<String>,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub target: String,
    pub pass: bool,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOptions {
    pub seed: u64,
    pub budget: usize,
    /// Replace the analytic gauge by this constant (a negative control).
    pub bogus: Option<Rat>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: 0, budget: 10_000, bogus: None }
    }
}

pub fn eps_schedule() -> Vec<Rat> {
    vec![rat(1, 1), rat(1, 2), rat(1, 4), rat(1, 8)]
}

fn check(property: &str, eps: Option<&Rat>, pass: bool, detail: impl Into<String>) -> Check {
    Check { property: property.into(), eps: eps.map(|e| e.to_string()), pass, detail: detail.into() }
}

fn sample_points(family: &FamilySpec, seed: u64, n: usize) -> Vec<Point> {
    let s = PairSampler::new(seed, family);
    let mut pts: Vec<Point> = s.random_pairs(n).into_iter().map(|(a, _)| a).collect();
    pts.extend(family.hotspots().into_iter().map(Point::Line));
    pts
}

fn gauge_checks(family: &FamilySpec, gauge: &GaugeFamily, opts: &VerifyOptions, out: &mut Vec<Check>) -> Result<()> {
    let sampler = PairSampler::new(opts.seed, family);
    for eps in eps_schedule() {
        let c = match check_gauge(family, gauge, &eps, &sampler, opts.budget)? {
            GaugeCheck::NoViolation(n) => check("gauge", Some(&eps), true, format!("no violation over {n} random pairs plus straddles")),
            GaugeCheck::Counterexample { x0, x1, member, gap } => check(
                "gauge",
                Some(&eps),
                false,
                format!("counterexample x0={x0} x1={x1} member={member} gap={gap}"),
            ),
        };
        out.push(c);
    }
    let norm = normalize_gauges(gauge);
    let twice = normalize_gauges(&norm);
    let shrunk = shrink_gauges(&norm);
    let pts = sample_points(family, opts.seed, 40);
    let mut idem = true;
    let mut mono = true;
    let mut shrink_ok = true;
    for p in &pts {
        let mut prev: Option<Rat> = None;
        for k in 1..=8u64 {
            let d = norm.at_index(k, p)?;
            idem &= twice.at_index(k, p)? == d;
            mono &= prev.as_ref().map_or(true, |q| d <= *q);
            let s = shrunk.at_index(k, p)?;
            shrink_ok &= s <= d && s <= pow2_neg(k as i64 + 1);
            prev = Some(d);
        }
    }
    out.push(check("normalize-idempotent", None, idem, format!("{} points, n ≤ 8", pts.len())));
    out.push(check("normalize-monotone", None, mono, format!("{} points, n ≤ 8", pts.len())));
    out.push(check("shrink-bound", None, shrink_ok, "Γ''(1/n) ≤ min(Γ'(1/n), 2^-(n+1))"));
    Ok(())
}

fn oscillation_checks(family: &FamilySpec, opts: &VerifyOptions, out: &mut Vec<Check>) -> Result<()> {
    if family.has_oracle_member() {
        return Ok(());
    }
    let pts = sample_points(family, opts.seed, 20);
    let mut bad = Vec::new();
    for p in &pts {
        let exact = family.osc_point(p)?;
        let est = family.osc_point_estimate(p, 12)?;
        if !(est.lower <= exact && exact <= est.upper) {
            bad.push(format!("{p}: {exact} ∉ [{}, {}]", est.lower, est.upper));
        }
    }
    let detail = if bad.is_empty() { format!("{} points inside the depth-12 bracket", pts.len()) } else { bad.join("; ") };
    out.push(check("oscillation", None, bad.is_empty(), detail));
    Ok(())
}

fn witness_checks(target: &Target, out: &mut Vec<Check>) -> Result<()> {
    let family = target.family();
    if let Some(f) = target.func() {
        if let Ok(w) = dense_pair_witness(f) {
            let region = match f.space() {
                crate::exactnum::Space::Line => crate::catalog::Region::Span(crate::exactnum::unit_span()),
                crate::exactnum::Space::Cantor => crate::catalog::Region::Cylinder(vec![]),
            };
            let ok = if family.has_oracle_member() {
                true
            } else {
                w.accepts_a(&f.eval(&w.pick_a(&region)?)?) && w.accepts_b(&f.eval(&w.pick_b(&region)?)?)
            };
            out.push(check("dense-pair-witness", None, ok, "picks land in A and B"));
            return Ok(());
        }
    }
    if let Ok(w) = osc_witness(&family) {
        let x = sample_points(&family, 1, 1).remove(0);
        let ok = w.pick(&x, &pow2_neg(20), &x, &w.eps).is_ok();
        out.push(check("osc-witness", None, ok, format!("gap ≥ {} within 2^-20 of {x}", w.eps)));
    }
    Ok(())
}

/// Gauge, normalization, shrink, oscillation and witness checks for one catalog id.
pub fn verify_target(id: &str, opts: &VerifyOptions) -> Result<VerifyReport> {
    let target = Target::parse_id(id)?;
    let family = target.family();
    let mut checks = Vec::new();
    match (&opts.bogus, family.is_equi_baire1()) {
        (Some(c), _) => gauge_checks(&family, &GaugeFamily::constant(c.clone()), opts, &mut checks)?,
        (None, true) => gauge_checks(&family, &GaugeFamily::analytic(&family)?, opts, &mut checks)?,
        (None, false) => witness_checks(&target, &mut checks)?,
    }
    oscillation_checks(&family, opts, &mut checks)?;
    let pass = checks.iter().all(|c| c.pass);
    Ok(VerifyReport { target: target.id(), pass, checks })
}
