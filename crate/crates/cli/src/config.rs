//! JSON run configurations. Unknown keys are rejected.

use std::path::{Path, PathBuf};

use baire_games::exactnum::{rat_serde, Rat};
use baire_games::harness::{Cell, Matrix, Tournament};
use baire_games::strategies::{make_i, make_ii};
use serde::Deserialize;

/// Failure to load or validate a configuration; maps to exit code 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct ConfigError(pub String);

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| ConfigError(format!("{}: {e}", path.display())))
}

/// One match: game, strategies, horizon and where to put the results.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub kind: baire_games::arena::GameKind,
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
    pub transcript: PathBuf,
    pub verdict: PathBuf,
}

impl RunConfig {
    pub fn load(path: &Path, seed: Option<u64>) -> Result<Self, ConfigError> {
        let mut c: RunConfig = read_json(path)?;
        if let Some(s) = seed {
            c.seed = s;
        }
        validate(&c.cell())?;
        Ok(c)
    }

    pub fn cell(&self) -> Cell {
        Cell {
            kind: self.kind,
            target: self.target.clone(),
            strategy_i: self.strategy_i.clone(),
            strategy_ii: self.strategy_ii.clone(),
            rounds: self.rounds,
            eps_dec: self.eps_dec.clone(),
            window: self.window,
            seed: self.seed,
        }
    }
}

/// Every id resolves and both strategies can be built for the game.
fn validate(cell: &Cell) -> Result<(), ConfigError> {
    let bad = |e: baire_games::error::Error| ConfigError(e.to_string());
    cell.config().map_err(bad)?;
    let game = cell.game().map_err(bad)?;
    make_i(&cell.strategy_i, &game).map_err(bad)?;
    make_ii(&cell.strategy_ii, &game).map_err(bad)?;
    Ok(())
}

/// A tournament: explicit cells and/or a matrix, plus output paths.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TournamentConfig {
    #[serde(default)]
    pub cells: Vec<Cell>,
    #[serde(default)]
    pub matrix: Option<Matrix>,
    pub csv: PathBuf,
    /// Wall-clock sidecar; defaults to `<csv stem>.timings.csv`.
    #[serde(default)]
    pub timings: Option<PathBuf>,
    /// Directory for one JSONL transcript per cell.
    #[serde(default)]
    pub transcripts: Option<PathBuf>,
}

impl TournamentConfig {
    /// Cell ids are checked for shape only; a cell that cannot be built is
    /// reported in its row.
    pub fn load(path: &Path, seed: Option<u64>) -> Result<Self, ConfigError> {
        let mut c: TournamentConfig = read_json(path)?;
        if let Some(s) = seed {
            for cell in &mut c.cells {
                cell.seed = s;
            }
            if let Some(m) = &mut c.matrix {
                m.seeds = vec![s];
            }
        }
        for cell in &c.cells {
            cell.config().map_err(|e| ConfigError(e.to_string()))?;
        }
        if let Some(m) = &c.matrix {
            if m.seeds.is_empty() {
                return Err(ConfigError("matrix needs at least one seed".into()));
            }
        }
        Ok(c)
    }

    pub fn cells(&self) -> Vec<Cell> {
        Tournament { cells: self.cells.clone(), matrix: self.matrix.clone() }.all_cells()
    }

    pub fn timings_path(&self) -> PathBuf {
        self.timings.clone().unwrap_or_else(|| {
            let stem = self.csv.file_stem().and_then(|s| s.to_str()).unwrap_or("tournament");
            self.csv.with_file_name(format!("{stem}.timings.csv"))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write(dir: &Path, body: &str) -> PathBuf {
        let p = dir.join("c.json");
        std::fs::File::create(&p).unwrap().write_all(body.as_bytes()).unwrap();
        p
    }

    #[test]
    fn run_config_rejects_unknown_keys_and_bad_ids() {
        let d = tempfile::tempdir().unwrap();
        let ok = r#"{"kind":"Gp","target":"step@1/2","strategy_i":"walk-i@7","strategy_ii":"gauge-ii",
            "rounds":10,"eps_dec":"1/8","transcript":"t.jsonl","verdict":"v.json"}"#;
        let c = RunConfig::load(&write(d.path(), ok), Some(3)).unwrap();
        assert_eq!(c.seed, 3);
        let extra = ok.replace("\"rounds\"", "\"colour\":1,\"rounds\"");
        assert!(RunConfig::load(&write(d.path(), &extra), None).is_err());
        let bad_id = ok.replace("gauge-ii", "oracle-ii");
        assert!(RunConfig::load(&write(d.path(), &bad_id), None).is_err());
        let wrong_side = ok.replace("walk-i@7", "dense-i");
        assert!(RunConfig::load(&write(d.path(), &wrong_side), None).is_err());
    }

    #[test]
    fn timings_default_next_to_the_csv() {
        let d = tempfile::tempdir().unwrap();
        let body = r#"{"csv":"out/results.csv"}"#;
        let c = TournamentConfig::load(&write(d.path(), body), None).unwrap();
        assert_eq!(c.timings_path(), PathBuf::from("out/results.timings.csv"));
        assert!(c.cells().is_empty());
    }
}
