//! The match driver and the interfaces strategies implement.

use super::game::{check_limit, validate_i, validate_ii, Game, History, IIMove, Side, Violation};
use super::transcript::{DeclaredLimit, MatchConfig, Transcript};
use crate::catalog::{FamilySpec, FuncSpec, Target};
use crate::error::{Error, Result};
use crate::exactnum::{Point, QuadPoint};
use crate::setalgebra::{NonMeasOracle, Request};

/// Value access for one match. Owns the lazy oracle when the target is one.
#[derive(Debug, Clone)]
pub struct Evaluator {
    target: Target,
    family: FamilySpec,
    oracle: Option<NonMeasOracle>,
}

impl Evaluator {
    pub fn new(target: &Target) -> Self {
        let oracle = matches!(target.func(), Some(FuncSpec::NonMeasOracle)).then(NonMeasOracle::new);
        Evaluator { target: target.clone(), family: target.family(), oracle }
    }

    /// Resume from a recorded oracle snapshot.
    pub fn with_oracle(target: &Target, oracle: Option<NonMeasOracle>) -> Self {
        let mut e = Evaluator::new(target);
        if e.oracle.is_some() {
            e.oracle = Some(oracle.unwrap_or_default());
        }
        e
    }

    pub fn target(&self) -> &Target {
        &self.target
    }

    pub fn family(&self) -> &FamilySpec {
        &self.family
    }

    pub fn oracle(&self) -> Option<&NonMeasOracle> {
        self.oracle.as_ref()
    }

    /// `f(p)` for a single-function target; oracle points are assigned per `role`.
    pub fn value(&mut self, p: &Point, role: Request) -> Result<QuadPoint> {
        if let Some(o) = self.oracle.as_mut() {
            let q = p.as_line().filter(|_| p.in_carrier()).ok_or_else(|| Error::domain(format!("{p} is not in [0,1]")))?;
            return Ok(o.eval(q, role));
        }
        match self.target.func() {
            Some(f) => f.eval(p),
            None => Err(Error::Classification(format!("{} is a family; ask per member", self.target))),
        }
    }

    /// Already-assigned oracle value, or the plain value for ordinary targets.
    pub fn peek(&self, p: &Point) -> Option<QuadPoint> {
        match &self.oracle {
            Some(o) => p.as_line().and_then(|q| o.peek(q)),
            None => self.target.func().and_then(|f| f.eval(p).ok()),
        }
    }
}

/// What a strategy sees when asked for a move.
pub struct Ctx<'a> {
    pub game: &'a Game,
    pub config: &'a MatchConfig,
    pub eval: &'a mut Evaluator,
}

/// A Player I strategy.
pub trait PlayerI: Send {
    fn id(&self) -> String;
    fn play(&mut self, ctx: &mut Ctx<'_>, h: &History) -> Result<Point>;
    fn declare_limit(&mut self, _ctx: &mut Ctx<'_>, _h: &History) -> Result<Option<Point>> {
        Ok(None)
    }
}

/// A Player II strategy.
pub trait PlayerII: Send {
    fn id(&self) -> String;
    fn play(&mut self, ctx: &mut Ctx<'_>, h: &History) -> Result<IIMove>;
    fn declare_limit(&mut self, _ctx: &mut Ctx<'_>, _h: &History) -> Result<Option<Point>> {
        Ok(None)
    }
}

fn strategy_failure(round: usize, player: Side, e: Error) -> Violation {
    Violation { round, player, rule: "strategy".into(), detail: e.to_string() }
}

/// Alternate validated moves for `config.rounds` rounds or until someone forfeits.
///
/// A strategy error counts as a forfeit by that strategy. At the end I may
/// declare a limit, otherwise II may; an inconsistent declaration forfeits.
pub fn play_match(game: &Game, i: &mut dyn PlayerI, ii: &mut dyn PlayerII, config: &MatchConfig) -> Result<Transcript> {
    config.validate()?;
    let mut eval = Evaluator::new(&game.target);
    let mut h = History::new();
    let mut forfeit = None;
    for n in 0..config.rounds {
        let mut ctx = Ctx { game, config, eval: &mut eval };
        let x = match i.play(&mut ctx, &h) {
            Ok(x) => x,
            Err(e) => {
                forfeit = Some(strategy_failure(n, Side::I, e));
                break;
            }
        };
        if let Err(v) = validate_i(game, &h, &x) {
            forfeit = Some(v);
            break;
        }
        h.xs.push(x);
        let mut ctx = Ctx { game, config, eval: &mut eval };
        let m = match ii.play(&mut ctx, &h) {
            Ok(m) => m,
            Err(e) => {
                forfeit = Some(strategy_failure(n, Side::II, e));
                break;
            }
        };
        if let Err(v) = validate_ii(game, &h, &m) {
            forfeit = Some(v);
            break;
        }
        h.ii.push(m);
    }
    let mut limit = None;
    if forfeit.is_none() {
        let mut ctx = Ctx { game, config, eval: &mut eval };
        let declared = match i.declare_limit(&mut ctx, &h) {
            Ok(Some(p)) => Ok(Some((Side::I, p))),
            Ok(None) => ii.declare_limit(&mut ctx, &h).map(|o| o.map(|p| (Side::II, p))).map_err(|e| (Side::II, e)),
            Err(e) => Err((Side::I, e)),
        };
        match declared {
            Ok(Some((by, point))) => match check_limit(game, &h, &point) {
                Ok(()) => limit = Some(DeclaredLimit { by, point }),
                Err(detail) => {
                    forfeit = Some(Violation { round: h.xs.len(), player: by, rule: "limit".into(), detail })
                }
            },
            Ok(None) => {}
            Err((by, e)) => forfeit = Some(strategy_failure(h.xs.len(), by, e)),
        }
    }
    Ok(Transcript {
        game: game.clone(),
        strategy_i: i.id(),
        strategy_ii: ii.id(),
        config: config.clone(),
        history: h,
        limit,
        forfeit,
        oracle: eval.oracle.take(),
    })
}
