//! Strategies for the category and measure games.

use num_traits::One;

use super::pick;
use crate::arena::{Ctx, History, IIMove, PlayerI, PlayerII};
use crate::catalog::{Exceptional, FuncSpec};
use crate::error::{Error, Result};
use crate::exactnum::{rat, Point, QuadPoint, Rat, Span};
use crate::setalgebra::{continuity_set, minus, refine_closed, Request, RepSet};

fn line(p: &Point) -> Result<QuadPoint> {
    p.as_line().cloned().ok_or_else(|| Error::Strategy(format!("{p} is not a point of [0,1]")))
}

fn set_of(m: &IIMove) -> Result<&RepSet> {
    match m {
        IIMove::Set(s) => Ok(s),
        other => Err(Error::Strategy(format!("expected a set from II, got {other}"))),
    }
}

/// Did I sit still for the whole final window? Then stabilization speaks for itself.
fn sitting_still(ctx: &Ctx<'_>, h: &History) -> bool {
    let s = ctx.config.window_start();
    h.xs.get(s..).is_some_and(|w| !w.is_empty() && w.iter().all(|x| *x == w[0]))
}

/// `U_0 = {x_0} ∪ (B(a,1) ∩ G)`, `U_n = {x_n} ∪ (B(a,1/n) ∩ G)`.
#[derive(Debug, Clone)]
pub struct ComeagerII {
    g: RepSet,
    a: QuadPoint,
}

impl ComeagerII {
    /// `G` is the catalog continuity set of `f`; `a` must lie in it.
    pub fn new(f: &FuncSpec, a: QuadPoint) -> Result<Self> {
        let g = continuity_set(f);
        if !g.contains(&a) {
            return Err(Error::Config(format!("{a} is not in the comeager set {g}")));
        }
        Ok(ComeagerII { g, a })
    }

    pub fn default_point() -> QuadPoint {
        QuadPoint::new(rat(0, 1), rat(1, 2))
    }

    pub fn set_at(&self, n: usize, x: &QuadPoint) -> RepSet {
        let r = QuadPoint::from_rat(if n == 0 { Rat::one() } else { rat(1, n as i64) });
        let span = Span { lo: &self.a - &r, lo_closed: false, hi: &self.a + &r, hi_closed: false };
        self.g.restrict(&span).with_atom(x.clone())
    }
}

impl PlayerII for ComeagerII {
    fn id(&self) -> String {
        format!("comeager-ii@{}", self.a)
    }

    fn play(&mut self, _ctx: &mut Ctx<'_>, h: &History) -> Result<IIMove> {
        let n = h.xs.len() - 1;
        Ok(IIMove::Set(self.set_at(n, &line(&h.xs[n])?)))
    }

    fn declare_limit(&mut self, ctx: &mut Ctx<'_>, h: &History) -> Result<Option<Point>> {
        Ok((!sitting_still(ctx, h)).then(|| Point::Line(self.a.clone())))
    }
}

/// Enumeration of an exceptional set: listed points, or the rationals of
/// `[0,1]` by increasing denominator.
#[derive(Debug, Clone)]
pub struct ExceptionalEnum {
    except: Exceptional,
    cache: Vec<QuadPoint>,
    den: i64,
}

impl ExceptionalEnum {
    pub fn new(except: Exceptional) -> Self {
        ExceptionalEnum { except, cache: Vec::new(), den: 0 }
    }

    /// The first `k` points (fewer if the set is finite).
    pub fn first(&mut self, k: usize) -> &[QuadPoint] {
        match &self.except {
            Exceptional::None => &[],
            Exceptional::Listed(ps) => &ps[..k.min(ps.len())],
            Exceptional::AllRationals => {
                while self.cache.len() < k {
                    self.den += 1;
                    let d = self.den;
                    for num in 0..=d {
                        if num_integer::gcd(num, d) == 1 {
                            self.cache.push(QuadPoint::from_ratio(num, d));
                        }
                    }
                }
                &self.cache[..k]
            }
        }
    }
}

/// Nested closed sets `F_n` of length `< 1/(n+2)` dodging the enumerated
/// exceptional points; `U_n = {x_n} ∪ (F_n \ E)`.
#[derive(Debug, Clone)]
pub struct LusinII {
    except: Exceptional,
    points: ExceptionalEnum,
    closed: Vec<RepSet>,
}

impl LusinII {
    pub fn new(f: &FuncSpec) -> Self {
        let except = f.exceptional();
        LusinII { points: ExceptionalEnum::new(except.clone()), except, closed: Vec::new() }
    }

    /// `F_n`, built on demand.
    pub fn closed_set(&mut self, n: usize) -> Result<&RepSet> {
        while self.closed.len() <= n {
            let k = self.closed.len();
            let next = if k == 0 {
                refine_closed(&RepSet::closed(QuadPoint::zero(), QuadPoint::one()), self.points.first(1), 0)?
            } else {
                let prev = self.closed[k - 1].clone();
                refine_closed(&prev, self.points.first(k), k)?
            };
            self.closed.push(next);
        }
        Ok(&self.closed[n])
    }

    fn open_part(&mut self, n: usize) -> Result<RepSet> {
        let e = self.except.clone();
        minus(self.closed_set(n)?, e)
    }
}

impl PlayerII for LusinII {
    fn id(&self) -> String {
        "lusin-ii".into()
    }

    fn play(&mut self, _ctx: &mut Ctx<'_>, h: &History) -> Result<IIMove> {
        let n = h.xs.len() - 1;
        Ok(IIMove::Set(self.open_part(n)?.with_atom(line(&h.xs[n])?)))
    }

    /// A representable point of `F_last \ E` near the last move.
    fn declare_limit(&mut self, ctx: &mut Ctx<'_>, h: &History) -> Result<Option<Point>> {
        if h.xs.is_empty() || sitting_still(ctx, h) {
            return Ok(None);
        }
        let n = h.xs.len() - 1;
        let near = line(&h.xs[n])?;
        Ok(self.open_part(n)?.fresh_point(Some(&near), &[]).map(Point::Line))
    }
}

/// Fresh points of II's set, alternating `A`-requests (even rounds) and
/// `B`-requests (odd rounds).
#[derive(Debug, Clone)]
pub struct SigmaI {
    y: QuadPoint,
    eps: Rat,
}

impl Default for SigmaI {
    fn default() -> Self {
        SigmaI { y: QuadPoint::one(), eps: rat(1, 4) }
    }
}

impl SigmaI {
    fn wanted(&self, role: Request, v: &QuadPoint) -> bool {
        let d = (v - &self.y).abs();
        match role {
            Request::A => d.cmp_rat(&self.eps).is_lt(),
            _ => d.cmp_rat(&(&self.eps * rat(2, 1))).is_gt(),
        }
    }
}

impl PlayerI for SigmaI {
    fn id(&self) -> String {
        "sigma-i".into()
    }

    fn play(&mut self, ctx: &mut Ctx<'_>, h: &History) -> Result<Point> {
        let n = h.xs.len();
        let role = if n % 2 == 0 { Request::A } else { Request::B };
        let unit = RepSet::unit();
        let u = if n == 0 { &unit } else { set_of(&h.ii[n - 1])? };
        let near = h.xs.last().map(line).transpose()?;
        let mut avoid: Vec<QuadPoint> = h.xs.iter().filter_map(|p| p.as_line().cloned()).collect();
        if ctx.eval.oracle().is_some() {
            // the oracle decides fresh points in the requester's favour
            loop {
                let p = u
                    .fresh_point(near.as_ref(), &avoid)
                    .ok_or_else(|| Error::Strategy(format!("no fresh point in {u}")))?;
                let pt = Point::Line(p.clone());
                if ctx.eval.peek(&pt).is_none() {
                    ctx.eval.value(&pt, role)?;
                    return Ok(pt);
                }
                avoid.push(p);
            }
        }
        let mut cands: Vec<QuadPoint> = u.atom_list().to_vec();
        if let Some(p) = u.fresh_point(near.as_ref(), &avoid) {
            if let Some(q) = pick::irrational_near(u, &p, &avoid) {
                cands.push(q);
            }
            cands.push(p);
        }
        for c in &cands {
            let pt = Point::Line(c.clone());
            if self.wanted(role, &ctx.eval.value(&pt, role)?) {
                return Ok(pt);
            }
        }
        // no point of the requested kind: any fresh point will do
        let p = cands.into_iter().rev().find(|c| u.contains(c)).ok_or_else(|| Error::Strategy(format!("{u} is empty")))?;
        Ok(Point::Line(p))
    }
}
