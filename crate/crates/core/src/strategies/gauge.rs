//! Player II strategies driven by ε-gauges.

use crate::arena::{Ctx, GameKind, History, IIMove, PlayerII};
use crate::catalog::GaugeFamily;
use crate::error::{Error, Result};
use crate::exactnum::{pow2_neg, rat, Ball, Point, QuadPoint};
use crate::setalgebra::Request;

/// II answers with a point `x'` whose gauge ball swallows `K_n = B[x_n, 2^(−n+1)]`
/// for the largest possible index; in `G` it answers with `f(x')`.
#[derive(Debug, Clone)]
pub struct GaugeII {
    id: String,
    gauge: GaugeFamily,
    hotspots: Vec<QuadPoint>,
}

impl GaugeII {
    /// `gauge` must be monotone (run it through `normalize_gauges`).
    pub fn new(id: impl Into<String>, gauge: GaugeFamily, hotspots: Vec<QuadPoint>) -> Result<Self> {
        if !gauge.is_monotone() {
            return Err(Error::Config(format!("gauge {} is not monotone", gauge.label())));
        }
        Ok(GaugeII { id: id.into(), gauge, hotspots })
    }

    /// `x_n`, `x_{n−1}`, …, `x_0` inside `K`, then hotspots inside `K`, then `K`'s endpoints.
    fn candidates(&self, h: &History, k: &Ball) -> Vec<Point> {
        let mut out: Vec<Point> = Vec::new();
        let mut push = |p: Point| {
            if k.contains(&p) && !out.contains(&p) {
                out.push(p);
            }
        };
        for x in h.xs.iter().rev() {
            push(x.clone());
        }
        if let Some(span) = k.span() {
            for q in &self.hotspots {
                push(Point::Line(q.clone()));
            }
            push(Point::Line(span.lo));
            push(Point::Line(span.hi));
        }
        out
    }

    fn covers(&self, k: &Ball, c: &Point, m: u64) -> Result<bool> {
        let r = self.gauge.at_index(m, c)?;
        k.subset_of(&Ball::open(c.clone(), r)?)
    }

    /// The witness `x'_n` (or `x_n` when no index qualifies).
    pub fn witness(&self, h: &History) -> Result<Point> {
        let n = h.xs.len() - 1;
        let x = h.xs[n].clone();
        if n < 2 {
            return Ok(x);
        }
        let k = Ball::closed(x.clone(), pow2_neg(n as i64 - 1))?;
        let top = (n - 1) as u64;
        let mut best: Option<(u64, Point)> = None;
        for c in self.candidates(h, &k) {
            if !self.covers(&k, &c, 1)? {
                continue;
            }
            // coverage is monotone in m: binary search the largest good index
            let (mut lo, mut hi) = (1u64, top);
            while lo < hi {
                let mid = (lo + hi).div_ceil(2);
                if self.covers(&k, &c, mid)? {
                    lo = mid;
                } else {
                    hi = mid - 1;
                }
            }
            if best.as_ref().map_or(true, |(m, _)| lo > *m) {
                best = Some((lo, c));
            }
            if lo == top {
                break;
            }
        }
        Ok(best.map_or(x, |(_, c)| c))
    }
}

impl PlayerII for GaugeII {
    fn id(&self) -> String {
        self.id.clone()
    }

    fn play(&mut self, ctx: &mut Ctx<'_>, h: &History) -> Result<IIMove> {
        let w = self.witness(h)?;
        Ok(match ctx.game.kind {
            GameKind::G => IIMove::Value(ctx.eval.value(&w, Request::Plain)?),
            _ => IIMove::Point(w),
        })
    }
}

/// II answers `B(x_n, Γ''(1/n, x_n)/2)` with the shrunk gauge (`Γ''(1, x_0)/2` at round 0).
#[derive(Debug, Clone)]
pub struct BallII {
    id: String,
    gauge: GaugeFamily,
}

impl BallII {
    /// `gauge` must carry the shrink flag (run it through `shrink_gauges`).
    pub fn new(id: impl Into<String>, gauge: GaugeFamily) -> Result<Self> {
        if !(gauge.is_monotone() && gauge.is_shrink()) {
            return Err(Error::Config(format!("gauge {} is not shrunk", gauge.label())));
        }
        Ok(BallII { id: id.into(), gauge })
    }

    pub fn ball(&self, n: usize, x: &Point) -> Result<Ball> {
        let d = self.gauge.at_index(n.max(1) as u64, x)?;
        Ball::open(x.clone(), d * rat(1, 2))
    }
}

impl PlayerII for BallII {
    fn id(&self) -> String {
        self.id.clone()
    }

    fn play(&mut self, _ctx: &mut Ctx<'_>, h: &History) -> Result<IIMove> {
        let n = h.xs.len() - 1;
        Ok(IIMove::Ball(self.ball(n, &h.xs[n])?))
    }

    /// The last center: it lies in the last ball.
    fn declare_limit(&mut self, _ctx: &mut Ctx<'_>, h: &History) -> Result<Option<Point>> {
        Ok(h.xs.last().cloned())
    }
}
