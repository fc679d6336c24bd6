//! Game kinds, moves, and the rule checks applied to every move.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::catalog::Target;
use crate::error::{Error, Result};
use crate::exactnum::{cmp_dist, pow2_neg, Ball, Point, QuadPoint, Space};
use crate::setalgebra::{Category, RepSet};

/// The seven games.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GameKind {
    G,
    Gp,
    Gpp,
    GpF,
    GppF,
    #[serde(rename = "cGpp")]
    CGpp,
    #[serde(rename = "mGpp")]
    MGpp,
}

impl GameKind {
    pub const ALL: [GameKind; 7] =
        [GameKind::G, GameKind::Gp, GameKind::Gpp, GameKind::GpF, GameKind::GppF, GameKind::CGpp, GameKind::MGpp];

    pub fn is_family_game(self) -> bool {
        matches!(self, GameKind::GpF | GameKind::GppF)
    }

    /// I moves under `d(x_n, x_{n+1}) ≤ 2^-n`.
    pub fn has_step_rule(self) -> bool {
        matches!(self, GameKind::G | GameKind::Gp | GameKind::GpF)
    }

    /// II answers with balls.
    pub fn is_point_open(self) -> bool {
        matches!(self, GameKind::Gpp | GameKind::GppF)
    }

    /// II answers with representable sets.
    pub fn is_set_game(self) -> bool {
        matches!(self, GameKind::CGpp | GameKind::MGpp)
    }

    /// I must move inside II's previous set (every Gpp-type game).
    pub fn is_nested(self) -> bool {
        self.is_point_open() || self.is_set_game()
    }

    pub fn name(self) -> &'static str {
        match self {
            GameKind::G => "G",
            GameKind::Gp => "Gp",
            GameKind::Gpp => "Gpp",
            GameKind::GpF => "GpF",
            GameKind::GppF => "GppF",
            GameKind::CGpp => "cGpp",
            GameKind::MGpp => "mGpp",
        }
    }
}

impl fmt::Display for GameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GameKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GameKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::parse(format!("unknown game kind {s:?}")))
    }
}

/// A kind bound to what it is played on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Game {
    pub kind: GameKind,
    pub target: Target,
}

impl Game {
    /// Family games accept any target (a function is the singleton family);
    /// function games need a single function; set games live on `[0,1]`.
    pub fn new(kind: GameKind, target: Target) -> Result<Self> {
        if !kind.is_family_game() && target.func().is_none() {
            return Err(Error::Config(format!("{kind} is played on a single function, got {target}")));
        }
        if kind.is_set_game() && target.space() != Space::Line {
            return Err(Error::Config(format!("{kind} is played on [0,1], got {target}")));
        }
        Ok(Game { kind, target })
    }

    pub fn parse(kind: &str, target: &str) -> Result<Self> {
        Game::new(kind.parse()?, Target::parse_id(target)?)
    }

    pub fn space(&self) -> Space {
        self.target.space()
    }
}

/// A move of player II.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IIMove {
    Value(QuadPoint),
    Point(Point),
    Ball(Ball),
    Set(RepSet),
}

impl IIMove {
    pub fn as_point(&self) -> Option<&Point> {
        match self {
            IIMove::Point(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_value(&self) -> Option<&QuadPoint> {
        match self {
            IIMove::Value(v) => Some(v),
            _ => None,
        }
    }

    /// Membership in II's set move (balls and sets only).
    pub fn contains(&self, p: &Point) -> bool {
        match self {
            IIMove::Ball(b) => b.space() == p.space() && b.contains(p),
            IIMove::Set(s) => s.contains_point(p),
            _ => false,
        }
    }
}

impl fmt::Display for IIMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IIMove::Value(v) => write!(f, "{v}"),
            IIMove::Point(p) => write!(f, "{p}"),
            IIMove::Ball(b) => write!(f, "{b}"),
            IIMove::Set(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    I,
    II,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::I => Side::II,
            Side::II => Side::I,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::I => "I",
            Side::II => "II",
        })
    }
}

/// A broken rule, with the failing comparison spelled out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub round: usize,
    pub player: Side,
    pub rule: String,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "round {} player {}: {} ({})", self.round, self.player, self.rule, self.detail)
    }
}

/// Moves so far. Round `n` is I's `xs[n]` followed by II's `ii[n]`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct History {
    pub xs: Vec<Point>,
    pub ii: Vec<IIMove>,
}

impl History {
    pub fn new() -> Self {
        Self::default()
    }

    /// Current round index (the index of the next I move when it is I's turn).
    pub fn round(&self) -> usize {
        self.ii.len()
    }

    pub fn last_x(&self) -> Option<&Point> {
        self.xs.last()
    }
}

/// A move by either side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    I(Point),
    II(IIMove),
}

fn violation(round: usize, player: Side, rule: &str, detail: String) -> Violation {
    Violation { round, player, rule: rule.to_string(), detail }
}

/// Check one move against the history it extends.
pub fn validate_move(game: &Game, h: &History, mover: Side, mv: &Move) -> std::result::Result<(), Violation> {
    match (mover, mv) {
        (Side::I, Move::I(x)) => validate_i(game, h, x),
        (Side::II, Move::II(m)) => validate_ii(game, h, m),
        _ => Err(violation(h.round(), mover, "turn", format!("{mover} submitted the other side's move type"))),
    }
}

pub fn validate_i(game: &Game, h: &History, x: &Point) -> std::result::Result<(), Violation> {
    let n = h.xs.len();
    let err = |rule: &str, detail: String| Err(violation(n, Side::I, rule, detail));
    if h.xs.len() != h.ii.len() {
        return err("turn", "I moved twice".into());
    }
    if x.space() != game.space() || !x.in_carrier() {
        return err("carrier", format!("{x} is not a point of the {} carrier", game.space()));
    }
    if n == 0 {
        return Ok(());
    }
    let prev = &h.xs[n - 1];
    if game.kind.has_step_rule() {
        let bound = pow2_neg((n - 1) as i64);
        if cmp_dist(prev, x, &bound).map_or(true, |o| o == Ordering::Greater) {
            return err("step", format!("d({prev}, {x}) > {bound}"));
        }
    } else if !h.ii[n - 1].contains(x) {
        return err("nested", format!("{x} ∉ U_{} = {}", n - 1, h.ii[n - 1]));
    }
    Ok(())
}

pub fn validate_ii(game: &Game, h: &History, m: &IIMove) -> std::result::Result<(), Violation> {
    let n = h.ii.len();
    let err = |rule: &str, detail: String| Err(violation(n, Side::II, rule, detail));
    if h.xs.len() != n + 1 {
        return err("turn", "II moved before I".into());
    }
    let x = &h.xs[n];
    match (game.kind, m) {
        (GameKind::G, IIMove::Value(_)) => Ok(()),
        (GameKind::Gp | GameKind::GpF, IIMove::Point(p)) => {
            if p.space() == game.space() && p.in_carrier() {
                Ok(())
            } else {
                err("carrier", format!("{p} is not a point of the {} carrier", game.space()))
            }
        }
        (GameKind::Gpp | GameKind::GppF, IIMove::Ball(b)) => {
            if b.is_closed() {
                err("open", format!("{b} is not an open ball"))
            } else if b.space() != game.space() || !b.contains(x) {
                err("contains", format!("{x} ∉ {b}"))
            } else {
                Ok(())
            }
        }
        (GameKind::CGpp, IIMove::Set(s)) => {
            if s.classify_category() != Category::NonMeagerBP {
                err("non-meager", format!("{s} is meager"))
            } else if !s.contains_point(x) {
                err("contains", format!("{x} ∉ {s}"))
            } else {
                Ok(())
            }
        }
        (GameKind::MGpp, IIMove::Set(s)) => {
            if !s.measure().is_positive() {
                err("positive-measure", format!("measure({s}) = {}", s.measure()))
            } else if !s.contains_point(x) {
                err("contains", format!("{x} ∉ {s}"))
            } else {
                Ok(())
            }
        }
        (k, m) => err("move-type", format!("{m} is not a II move of {k}")),
    }
}

/// Does `limit` agree with the I-moves? Step games need `d(x_n, limit) ≤ 2^(−n+1)`;
/// nested games need `limit ∈ U_last`.
pub fn check_limit(game: &Game, h: &History, limit: &Point) -> std::result::Result<(), String> {
    if limit.space() != game.space() || !limit.in_carrier() {
        return Err(format!("{limit} is not a point of the carrier"));
    }
    if game.kind.has_step_rule() {
        for (n, x) in h.xs.iter().enumerate() {
            let bound = pow2_neg(n as i64 - 1);
            if cmp_dist(x, limit, &bound).map_or(true, |o| o == Ordering::Greater) {
                return Err(format!("d(x_{n}, {limit}) > {bound}"));
            }
        }
        Ok(())
    } else {
        match h.ii.last() {
            Some(u) if u.contains(limit) => Ok(()),
            Some(u) => Err(format!("{limit} ∉ U_last = {u}")),
            None => Err("no II move to contain the limit".into()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn game(kind: &str, f: &str) -> Game {
        Game::parse(kind, f).unwrap()
    }

    #[test]
    fn step_rule_example() {
        let g = game("G", "step@1/2");
        let mut h = History::new();
        h.xs.push(Point::rat(1, 8));
        h.ii.push(IIMove::Value(QuadPoint::zero()));
        h.xs.push(Point::rat(0, 1));
        h.ii.push(IIMove::Value(QuadPoint::zero()));
        // prev = x_1 = 0, bound 2^-1
        let v = validate_i(&g, &h, &Point::rat(3, 4)).unwrap_err();
        assert_eq!(v.rule, "step");
        assert!(v.detail.contains("> 1/2"));
        assert!(validate_i(&g, &h, &Point::rat(1, 2)).is_ok());
    }

    #[test]
    fn ball_must_contain_move() {
        let g = game("Gpp", "dirichlet-quad");
        let h = History { xs: vec![Point::rat(1, 2)], ii: vec![] };
        let far = IIMove::Ball(Ball::open(Point::rat(1, 8), rat(1, 16)).unwrap());
        assert_eq!(validate_ii(&g, &h, &far).unwrap_err().rule, "contains");
        let ok = IIMove::Ball(Ball::open(Point::rat(1, 2), rat(1, 16)).unwrap());
        assert!(validate_ii(&g, &h, &ok).is_ok());
        let closed = IIMove::Ball(Ball::closed(Point::rat(1, 2), rat(1, 16)).unwrap());
        assert_eq!(validate_ii(&g, &h, &closed).unwrap_err().rule, "open");
    }

    #[test]
    fn atoms_only_set_is_meager() {
        let g = game("cGpp", "dirichlet-quad");
        let h = History { xs: vec![Point::rat(1, 2)], ii: vec![] };
        let atoms = IIMove::Set(RepSet::atoms(vec![QuadPoint::from_ratio(1, 2)]));
        assert_eq!(validate_ii(&g, &h, &atoms).unwrap_err().rule, "non-meager");
        let m = game("mGpp", "dirichlet-quad");
        assert_eq!(validate_ii(&m, &h, &atoms).unwrap_err().rule, "positive-measure");
        let good = IIMove::Set("{1/2}∪(0,1/4)".parse().unwrap());
        assert!(validate_ii(&g, &h, &good).is_ok());
        assert!(validate_ii(&m, &h, &good).is_ok());
    }

    #[test]
    fn binding_rules() {
        assert!(Game::parse("Gp", "step-family").is_err());
        assert!(Game::parse("GpF", "step@1/2").is_ok());
        assert!(Game::parse("cGpp", "dirichlet-cantor").is_err());
        assert_eq!(Game::parse("GpF", "step-family").unwrap().kind, GameKind::GpF);
        assert_eq!("cGpp".parse::<GameKind>().unwrap(), GameKind::CGpp);
        assert_eq!(serde_json::to_string(&GameKind::MGpp).unwrap(), "\"mGpp\"");
    }

    #[test]
    fn limit_consistency() {
        let g = game("Gp", "lip@1");
        let h = History { xs: vec![Point::rat(0, 1), Point::rat(1, 2), Point::rat(1, 2), Point::rat(1, 2)], ii: vec![] };
        assert!(check_limit(&g, &h, &Point::rat(1, 2)).is_ok());
        // x_3 = 1/2 with bound 1/4
        assert!(check_limit(&g, &h, &Point::rat(3, 4)).is_ok());
        assert!(check_limit(&g, &h, &Point::rat(0, 1)).is_err());
    }
}
