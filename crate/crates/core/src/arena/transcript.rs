//! Match configuration and JSON-lines transcripts.

use std::fs;
use std::io::Write;
use std::path::Path;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::game::{validate_i, validate_ii, Game, History, IIMove, Side, Violation};
use crate::catalog::Target;
use crate::error::{Error, Result};
use crate::exactnum::{rat_serde, Point, QuadPoint, Rat};
use crate::setalgebra::NonMeasOracle;

/// Horizon, decision tolerance, final window and seed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatchConfig {
    pub rounds: usize,
    #[serde(with = "rat_serde")]
    pub eps_dec: Rat,
    pub window: usize,
    pub seed: u64,
}

/// `max(1, R/5)`.
pub fn default_window(rounds: usize) -> usize {
    (rounds / 5).max(1)
}

impl MatchConfig {
    pub fn new(rounds: usize, eps_dec: Rat) -> Result<Self> {
        let c = MatchConfig { rounds, eps_dec, window: default_window(rounds), seed: 0 };
        c.validate()?;
        Ok(c)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_window(mut self, window: usize) -> Result<Self> {
        self.window = window;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.rounds == 0 {
            return Err(Error::Config("rounds must be positive".into()));
        }
        if self.window == 0 || self.window > self.rounds {
            return Err(Error::Config(format!("window {} must lie in 1..={}", self.window, self.rounds)));
        }
        if !self.eps_dec.is_positive() {
            return Err(Error::Config(format!("eps_dec = {} must be positive", self.eps_dec)));
        }
        Ok(())
    }

    /// First index of the final window `[R − W, R)`.
    pub fn window_start(&self) -> usize {
        self.rounds - self.window
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeclaredLimit {
    pub by: Side,
    pub point: Point,
}

/// Everything needed to re-referee a match.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    pub game: Game,
    pub strategy_i: String,
    pub strategy_ii: String,
    pub config: MatchConfig,
    pub history: History,
    pub limit: Option<DeclaredLimit>,
    pub forfeit: Option<Violation>,
    /// Snapshot of the lazy oracle's assignments, when the target uses one.
    pub oracle: Option<NonMeasOracle>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum Line {
    Header { kind: super::GameKind, target: String, strategy_i: String, strategy_ii: String, config: MatchConfig },
    Move {
        round: usize,
        player: Side,
        #[serde(rename = "move")]
        mv: IIMove,
    },
    Limit { by: Side, point: Point },
    Forfeit { violation: Violation },
    Oracle { memo: Vec<(QuadPoint, u8)> },
}

fn bad(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::parse(format!("transcript line {}: {msg}", line + 1))
}

impl Transcript {
    pub fn round_count(&self) -> usize {
        self.history.xs.len()
    }

    pub fn to_jsonl(&self) -> String {
        let mut lines = vec![Line::Header {
            kind: self.game.kind,
            target: self.game.target.id(),
            strategy_i: self.strategy_i.clone(),
            strategy_ii: self.strategy_ii.clone(),
            config: self.config.clone(),
        }];
        for (n, x) in self.history.xs.iter().enumerate() {
            lines.push(Line::Move { round: n, player: Side::I, mv: IIMove::Point(x.clone()) });
            if let Some(m) = self.history.ii.get(n) {
                lines.push(Line::Move { round: n, player: Side::II, mv: m.clone() });
            }
        }
        if let Some(l) = &self.limit {
            lines.push(Line::Limit { by: l.by, point: l.point.clone() });
        }
        if let Some(v) = &self.forfeit {
            lines.push(Line::Forfeit { violation: v.clone() });
        }
        if let Some(o) = &self.oracle {
            lines.push(Line::Oracle { memo: o.memo().map(|(q, v)| (q.clone(), v)).collect() });
        }
        let mut out = String::new();
        for l in lines {
            out.push_str(&serde_json::to_string(&l).expect("transcript lines serialize"));
            out.push('\n');
        }
        out
    }

    /// Parse and re-validate every move in order.
    pub fn from_jsonl(text: &str) -> Result<Self> {
        let mut rows = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (kind, target, strategy_i, strategy_ii, config) = match rows.next() {
            Some((i, l)) => match serde_json::from_str::<Line>(l).map_err(|e| bad(i, e))? {
                Line::Header { kind, target, strategy_i, strategy_ii, config } => {
                    (kind, target, strategy_i, strategy_ii, config)
                }
                _ => return Err(bad(i, "expected header")),
            },
            None => return Err(Error::parse("empty transcript")),
        };
        config.validate()?;
        let game = Game::new(kind, Target::parse_id(&target)?)?;
        let mut t = Transcript {
            game,
            strategy_i,
            strategy_ii,
            config,
            history: History::new(),
            limit: None,
            forfeit: None,
            oracle: None,
        };
        for (i, l) in rows {
            let line: Line = serde_json::from_str(l).map_err(|e| bad(i, e))?;
            if t.limit.is_some() || t.forfeit.is_some() {
                if !matches!(line, Line::Oracle { .. } | Line::Forfeit { .. }) {
                    return Err(bad(i, "moves after the end of the match"));
                }
            }
            match line {
                Line::Header { .. } => return Err(bad(i, "second header")),
                Line::Move { round, player, mv } => {
                    let h = &mut t.history;
                    let expected = if h.xs.len() == h.ii.len() { (h.xs.len(), Side::I) } else { (h.ii.len(), Side::II) };
                    if (round, player) != expected {
                        return Err(bad(i, format!("out of turn: got round {round} player {player}")));
                    }
                    match player {
                        Side::I => {
                            let x = mv.as_point().cloned().ok_or_else(|| bad(i, "I plays points"))?;
                            validate_i(&t.game, h, &x).map_err(|v| bad(i, v))?;
                            h.xs.push(x);
                        }
                        Side::II => {
                            validate_ii(&t.game, h, &mv).map_err(|v| bad(i, v))?;
                            h.ii.push(mv);
                        }
                    }
                }
                Line::Limit { by, point } => t.limit = Some(DeclaredLimit { by, point }),
                Line::Forfeit { violation } => t.forfeit = Some(violation),
                Line::Oracle { memo } => t.oracle = Some(NonMeasOracle::from_memo(memo)),
            }
        }
        if t.history.xs.len() > t.config.rounds {
            return Err(Error::parse("more rounds than the configured horizon"));
        }
        Ok(t)
    }

    /// Atomic write: a temporary sibling is renamed into place.
    pub fn write_jsonl(&self, path: &Path) -> Result<()> {
        write_atomic(path, self.to_jsonl().as_bytes())
    }

    pub fn read_jsonl(path: &Path) -> Result<Self> {
        Transcript::from_jsonl(&fs::read_to_string(path)?)
    }
}

/// Write `bytes` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().ok_or_else(|| Error::Io(format!("{} has no file name", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp", name.to_string_lossy()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}
