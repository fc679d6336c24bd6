//! Strategies from the proofs plus baseline adversaries, addressable by id.
//!
//! An id is `name` or `name@param`: a seed for the walks, a target id whose
//! gauges `gauge-ii`/`ball-ii` should use, a radius for `center-ball-ii`, or
//! the centre point for `comeager-ii`.

mod baseline;
mod gauge;
mod pick;
mod sets;
mod witness;

pub use baseline::{AdvWalkI, CenterBallII, ConstI, ConstantII, EchoII, WalkI};
pub use gauge::{BallII, GaugeII};
pub use sets::{ComeagerII, ExceptionalEnum, LusinII, SigmaI};
pub use witness::{DenseI, EquiConstI, EquiOpenI};

use crate::arena::{Game, GameKind, PlayerI, PlayerII};
use crate::catalog::{dense_pair_witness, normalize_gauges, osc_witness, shrink_gauges, FuncSpec, GaugeFamily, Target};
use crate::error::{Error, Result};
use crate::exactnum::{parse_rat, rat};

use GameKind::*;

/// Player I ids with the kinds they play.
pub const I_STRATEGIES: &[(&str, &[GameKind])] = &[
    ("dense-i", &[G, Gp, Gpp]),
    ("equi-const-i", &[GpF]),
    ("equi-open-i", &[GppF]),
    ("sigma-i", &[CGpp, MGpp]),
    ("walk-i", &GameKind::ALL),
    ("const-i", &GameKind::ALL),
    ("adv-walk-i", &[G, Gp, GpF]),
];

/// Player II ids with the kinds they play.
pub const II_STRATEGIES: &[(&str, &[GameKind])] = &[
    ("gauge-ii", &[G, Gp, GpF]),
    ("ball-ii", &[Gpp, GppF]),
    ("comeager-ii", &[CGpp]),
    ("lusin-ii", &[MGpp]),
    ("echo-ii", &[G, Gp, GpF]),
    ("greedy-ii", &[G, Gp, GpF]),
    ("constant-ii", &GameKind::ALL),
    ("center-ball-ii", &[Gpp, GppF]),
];

fn split(id: &str) -> (&str, Option<&str>) {
    match id.split_once('@') {
        Some((name, p)) => (name, Some(p)),
        None => (id, None),
    }
}

fn check_kind(table: &[(&str, &[GameKind])], name: &str, kind: GameKind) -> Result<()> {
    let (_, kinds) = table
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::Config(format!("unknown strategy {name:?}")))?;
    if kinds.contains(&kind) {
        Ok(())
    } else {
        Err(Error::Config(format!("{name} does not play {kind}")))
    }
}

fn seed(p: Option<&str>) -> Result<Option<u64>> {
    p.map(|s| s.parse::<u64>().map_err(|_| Error::Config(format!("bad seed {s:?}")))).transpose()
}

fn no_param(name: &str, p: Option<&str>) -> Result<()> {
    match p {
        Some(p) => Err(Error::Config(format!("{name} takes no parameter, got {p:?}"))),
        None => Ok(()),
    }
}

fn func(game: &Game) -> Result<&FuncSpec> {
    game.target.func().ok_or_else(|| Error::Config(format!("{} is not a single function", game.target)))
}

/// Analytic gauges of the bound target, or of the target named in the id.
///
/// A borrowed gauge must live on the game's space.
fn gauges(game: &Game, p: Option<&str>) -> Result<(GaugeFamily, Target)> {
    let source = match p {
        Some(t) => Target::parse_id(t)?,
        None => game.target.clone(),
    };
    if source.space() != game.space() {
        return Err(Error::Config(format!("gauges of {source} live on {}, the game is on {}", source.space(), game.space())));
    }
    Ok((GaugeFamily::analytic(&source.family())?, source))
}

pub fn make_i(id: &str, game: &Game) -> Result<Box<dyn PlayerI>> {
    let (name, p) = split(id);
    check_kind(I_STRATEGIES, name, game.kind)?;
    Ok(match name {
        "dense-i" => {
            no_param(name, p)?;
            Box::new(DenseI::new(dense_pair_witness(func(game)?)?, game.kind.has_step_rule()))
        }
        "equi-const-i" => {
            no_param(name, p)?;
            Box::new(EquiConstI::new(osc_witness(&game.target.family())?))
        }
        "equi-open-i" => {
            no_param(name, p)?;
            Box::new(EquiOpenI::new(osc_witness(&game.target.family())?))
        }
        "sigma-i" => {
            no_param(name, p)?;
            Box::new(SigmaI::default())
        }
        "walk-i" => Box::new(WalkI::new(seed(p)?)),
        "const-i" => Box::new(ConstI::new(seed(p)?)),
        "adv-walk-i" => Box::new(AdvWalkI::new(seed(p)?, game.target.family().hotspots())),
        _ => unreachable!("checked against the table"),
    })
}

pub fn make_ii(id: &str, game: &Game) -> Result<Box<dyn PlayerII>> {
    let (name, p) = split(id);
    check_kind(II_STRATEGIES, name, game.kind)?;
    Ok(match name {
        "gauge-ii" => {
            let (g, source) = gauges(game, p)?;
            Box::new(GaugeII::new(id, normalize_gauges(&g), source.family().hotspots())?)
        }
        "ball-ii" => {
            let (g, _) = gauges(game, p)?;
            Box::new(BallII::new(id, shrink_gauges(&normalize_gauges(&g)))?)
        }
        "comeager-ii" => {
            let a = match p {
                Some(s) => s.parse()?,
                None => ComeagerII::default_point(),
            };
            Box::new(ComeagerII::new(func(game)?, a)?)
        }
        "lusin-ii" => {
            no_param(name, p)?;
            Box::new(LusinII::new(func(game)?))
        }
        "echo-ii" => {
            no_param(name, p)?;
            Box::new(EchoII::echo())
        }
        "greedy-ii" => {
            no_param(name, p)?;
            Box::new(EchoII::greedy())
        }
        "constant-ii" => {
            no_param(name, p)?;
            Box::new(ConstantII)
        }
        "center-ball-ii" => {
            let r = match p {
                Some(s) => parse_rat(s)?,
                None => rat(1, 4),
            };
            Box::new(CenterBallII::new(r)?)
        }
        _ => unreachable!("checked against the table"),
    })
}

/// Does the strategy `id` play `kind` as `side`? Unknown names never do.
pub fn plays(id: &str, side: crate::arena::Side, kind: GameKind) -> bool {
    let table = match side {
        crate::arena::Side::I => I_STRATEGIES,
        crate::arena::Side::II => II_STRATEGIES,
    };
    check_kind(table, split(id).0, kind).is_ok()
}
