//! Baseline adversaries: random walks, constant play, echoes and fixed balls.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::pick;
use crate::arena::{Ctx, GameKind, History, IIMove, PlayerI, PlayerII};
use crate::catalog::Region;
use crate::error::{Error, Result};
use crate::exactnum::{pow2_neg, rat, Ball, CantorPoint, Point, QuadPoint, Rat, Space};
use crate::setalgebra::{Request, RepSet};

/// A legal random move inside II's last ball or set.
fn nested_move(rng: &mut ChaCha8Rng, h: &History) -> Result<Point> {
    let n = h.xs.len();
    match &h.ii[n - 1] {
        IIMove::Ball(b) => pick::in_region(rng, &Region::of_ball(b))
            .ok_or_else(|| Error::Strategy(format!("{b} has no interior point"))),
        IIMove::Set(u) => {
            let avoid: Vec<QuadPoint> = h.xs.iter().filter_map(|p| p.as_line().cloned()).collect();
            pick::in_set(rng, u, &avoid).map(Point::Line).ok_or_else(|| Error::Strategy(format!("{u} has no interval part")))
        }
        other => Err(Error::Strategy(format!("cannot move inside {other}"))),
    }
}

/// Seeded walk toward a hidden limit `x*`, with `d(x_n, x*) ≤ 2^(−n−1)`; declares `x*`.
///
/// In nested games it moves to a random point of II's last set and declares nothing.
#[derive(Debug, Clone)]
pub struct WalkI {
    seed: Option<u64>,
    rng: Option<ChaCha8Rng>,
    limit: Option<Point>,
}

impl WalkI {
    pub fn new(seed: Option<u64>) -> Self {
        WalkI { seed, rng: None, limit: None }
    }
}

fn walk_step(rng: &mut ChaCha8Rng, limit: &Point, n: usize) -> Point {
    match limit {
        Point::Line(c) => Point::Line(pick::line_jitter(rng, c, n as i64 + 1)),
        Point::Cantor(c) => Point::Cantor(pick::cantor_near(rng, c, n + 1)),
    }
}

impl PlayerI for WalkI {
    fn id(&self) -> String {
        match self.seed {
            Some(s) => format!("walk-i@{s}"),
            None => "walk-i".into(),
        }
    }

    fn play(&mut self, ctx: &mut Ctx<'_>, h: &History) -> Result<Point> {
        let seed = self.seed.unwrap_or(ctx.config.seed);
        let rng = self.rng.get_or_insert_with(|| ChaCha8Rng::seed_from_u64(seed));
        let n = h.xs.len();
        if ctx.game.kind.is_nested() {
            return if n == 0 { Ok(pick::carrier_point(rng, ctx.game.space())) } else { nested_move(rng, h) };
        }
        let limit = self.limit.get_or_insert_with(|| pick::carrier_point(rng, ctx.game.space()));
        Ok(walk_step(rng, limit, n))
    }

    fn declare_limit(&mut self, ctx: &mut Ctx<'_>, _h: &History) -> Result<Option<Point>> {
        Ok(if ctx.game.kind.has_step_rule() { self.limit.clone() } else { None })
    }
}

/// Walks toward `c` for a few rounds, then sits on `c` forever.
#[derive(Debug, Clone)]
pub struct ConstI {
    seed: Option<u64>,
    rng: Option<ChaCha8Rng>,
    plan: Option<(Point, usize)>,
}

impl ConstI {
    pub fn new(seed: Option<u64>) -> Self {
        ConstI { seed, rng: None, plan: None }
    }
}

impl PlayerI for ConstI {
    fn id(&self) -> String {
        match self.seed {
            Some(s) => format!("const-i@{s}"),
            None => "const-i".into(),
        }
    }

    fn play(&mut self, ctx: &mut Ctx<'_>, h: &History) -> Result<Point> {
        let seed = self.seed.unwrap_or(ctx.config.seed);
        let rng = self.rng.get_or_insert_with(|| ChaCha8Rng::seed_from_u64(seed ^ 0xC0_57));
        let space = ctx.game.space();
        let (c, k0) = self.plan.get_or_insert_with(|| (pick::carrier_point(rng, space), rng.gen_range(1..=10))).clone();
        let n = h.xs.len();
        if ctx.game.kind.is_nested() {
            return Ok(h.xs.last().cloned().unwrap_or(c));
        }
        Ok(if n >= k0 { c } else { walk_step(rng, &c, n) })
    }
}

/// Walk whose limit sits on (or within a few `2^-12` of) a discontinuity,
/// approaching from alternating sides; declares the limit.
#[derive(Debug, Clone)]
pub struct AdvWalkI {
    seed: Option<u64>,
    hotspots: Vec<QuadPoint>,
    rng: Option<ChaCha8Rng>,
    limit: Option<Point>,
}

impl AdvWalkI {
    pub fn new(seed: Option<u64>, hotspots: Vec<QuadPoint>) -> Self {
        AdvWalkI { seed, hotspots, rng: None, limit: None }
    }

    fn choose_limit(&self, rng: &mut ChaCha8Rng, space: Space) -> Point {
        if space == Space::Cantor || self.hotspots.is_empty() {
            return pick::carrier_point(rng, space);
        }
        let h = self.hotspots[rng.gen_range(0..self.hotspots.len())].clone();
        if rng.gen_bool(0.5) {
            return Point::Line(h);
        }
        let j: i64 = rng.gen_range(1..=8) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let moved = &h + &QuadPoint::from_rat(pow2_neg(12) * Rat::from_integer(j.into()));
        let inside = moved >= QuadPoint::zero() && moved <= QuadPoint::one();
        Point::Line(if inside { moved } else { &h - &QuadPoint::from_rat(pow2_neg(12) * Rat::from_integer(j.into())) })
    }
}

impl PlayerI for AdvWalkI {
    fn id(&self) -> String {
        match self.seed {
            Some(s) => format!("adv-walk-i@{s}"),
            None => "adv-walk-i".into(),
        }
    }

    fn play(&mut self, ctx: &mut Ctx<'_>, h: &History) -> Result<Point> {
        let seed = self.seed.unwrap_or(ctx.config.seed);
        let mut rng = self.rng.take().unwrap_or_else(|| ChaCha8Rng::seed_from_u64(seed ^ 0xAD_0E));
        let n = h.xs.len();
        if ctx.game.kind.is_nested() {
            let p = if n == 0 { pick::carrier_point(&mut rng, ctx.game.space()) } else { nested_move(&mut rng, h)? };
            self.rng = Some(rng);
            return Ok(p);
        }
        if self.limit.is_none() {
            self.limit = Some(self.choose_limit(&mut rng, ctx.game.space()));
        }
        let limit = self.limit.clone().expect("chosen above");
        let p = match &limit {
            Point::Line(c) => {
                // offset in [2^-(n+2), 2^-(n+1)], sign alternating, flipped at the carrier's ends
                let t = Rat::new(rng.gen_range(128..=256).into(), 256.into());
                let off = QuadPoint::from_rat(t * pow2_neg(n as i64 + 1));
                let (first, second) = if n % 2 == 0 { (c + &off, c - &off) } else { (c - &off, c + &off) };
                let ok = |q: &QuadPoint| *q >= QuadPoint::zero() && *q <= QuadPoint::one();
                Point::Line(if ok(&first) { first } else { second })
            }
            Point::Cantor(c) => {
                let mut pre = c.prefix(n + 1);
                pre.push(!c.bit(n + 1));
                Point::Cantor(CantorPoint::new(pre, pick::bits(&mut rng, 2)).expect("nonempty period"))
            }
        };
        self.rng = Some(rng);
        Ok(p)
    }

    fn declare_limit(&mut self, ctx: &mut Ctx<'_>, _h: &History) -> Result<Option<Point>> {
        Ok(if ctx.game.kind.has_step_rule() { self.limit.clone() } else { None })
    }
}

/// `x'_n = x_n`; in `G` the value `f(x_n)`.
#[derive(Debug, Clone)]
pub struct EchoII {
    id: &'static str,
}

impl EchoII {
    pub fn echo() -> Self {
        EchoII { id: "echo-ii" }
    }

    pub fn greedy() -> Self {
        EchoII { id: "greedy-ii" }
    }
}

impl PlayerII for EchoII {
    fn id(&self) -> String {
        self.id.into()
    }

    fn play(&mut self, ctx: &mut Ctx<'_>, h: &History) -> Result<IIMove> {
        let x = h.xs.last().expect("II moves after I").clone();
        Ok(match ctx.game.kind {
            GameKind::G => IIMove::Value(ctx.eval.value(&x, Request::Plain)?),
            _ => IIMove::Point(x),
        })
    }
}

/// The same answer every round: `0`, the origin, or the whole carrier.
#[derive(Debug, Clone, Default)]
pub struct ConstantII;

impl PlayerII for ConstantII {
    fn id(&self) -> String {
        "constant-ii".into()
    }

    fn play(&mut self, ctx: &mut Ctx<'_>, h: &History) -> Result<IIMove> {
        let x = h.xs.last().expect("II moves after I").clone();
        let origin = match ctx.game.space() {
            Space::Line => Point::rat(0, 1),
            Space::Cantor => Point::Cantor(CantorPoint::eventually_zero(&[])),
        };
        Ok(match ctx.game.kind {
            GameKind::G => IIMove::Value(QuadPoint::zero()),
            GameKind::Gp | GameKind::GpF => IIMove::Point(origin),
            GameKind::Gpp | GameKind::GppF => IIMove::Ball(Ball::open(x, rat(2, 1))?),
            GameKind::CGpp | GameKind::MGpp => IIMove::Set(RepSet::unit()),
        })
    }
}

/// `B(x_n, r)` with a fixed radius.
#[derive(Debug, Clone)]
pub struct CenterBallII {
    radius: Rat,
}

impl CenterBallII {
    pub fn new(radius: Rat) -> Result<Self> {
        if radius <= rat(0, 1) {
            return Err(Error::Config(format!("radius {radius} must be positive")));
        }
        Ok(CenterBallII { radius })
    }
}

impl PlayerII for CenterBallII {
    fn id(&self) -> String {
        format!("center-ball-ii@{}", self.radius)
    }

    fn play(&mut self, _ctx: &mut Ctx<'_>, h: &History) -> Result<IIMove> {
        let x = h.xs.last().expect("II moves after I").clone();
        Ok(IIMove::Ball(Ball::open(x, self.radius.clone())?))
    }
}
