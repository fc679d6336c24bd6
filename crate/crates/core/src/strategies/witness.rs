//! Player I strategies built from non-Baire-1 witnesses.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::pick;
use crate::arena::{Ctx, History, IIMove, PlayerI};
use crate::catalog::{DensePairWitness, GapDecision, OscWitness, Region};
use crate::error::{Error, Result};
use crate::exactnum::{pow2_neg, rat, unit_span, Ball, Point, Space};
use crate::setalgebra::Request;

fn carrier(space: Space) -> Region {
    match space {
        Space::Line => Region::Span(unit_span()),
        Space::Cantor => Region::Cylinder(Vec::new()),
    }
}

fn ball_region(m: &IIMove) -> Result<Region> {
    match m {
        IIMove::Ball(b) => Ok(Region::of_ball(b)),
        other => Err(Error::Strategy(format!("expected a ball from II, got {other}"))),
    }
}

/// Alternate between the dense sets `B` (even rounds, including the first) and `A` (odd rounds).
///
/// In nested games picks come from II's last ball; with `shrinking` they come
/// from `B(x_{n−1}, 2^(−(n−1)))` so the step rule holds.
#[derive(Debug, Clone)]
pub struct DenseI {
    witness: DensePairWitness,
    shrinking: bool,
}

impl DenseI {
    pub fn new(witness: DensePairWitness, shrinking: bool) -> Self {
        DenseI { witness, shrinking }
    }
}

impl PlayerI for DenseI {
    fn id(&self) -> String {
        "dense-i".into()
    }

    fn play(&mut self, ctx: &mut Ctx<'_>, h: &History) -> Result<Point> {
        let n = h.xs.len();
        let region = if n == 0 {
            carrier(self.witness.space)
        } else if self.shrinking {
            Region::of_ball(&Ball::open(h.xs[n - 1].clone(), pow2_neg(n as i64 - 1))?)
        } else {
            ball_region(&h.ii[n - 1])?
        };
        let (p, role) = if n % 2 == 1 {
            (self.witness.pick_a(&region)?, Request::A)
        } else {
            (self.witness.pick_b(&region)?, Request::B)
        };
        let v = ctx.eval.value(&p, role)?;
        let ok = match role {
            Request::A => self.witness.accepts_a(&v),
            _ => self.witness.accepts_b(&v),
        };
        if !ok {
            return Err(Error::Strategy(format!("witness pick {p} has value {v}, outside its dense set")));
        }
        Ok(p)
    }
}

fn first_point(seed: u64, space: Space) -> Point {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match space {
        Space::Line => Point::Line(pick::dyadic(&mut rng, 10).into()),
        Space::Cantor => Point::Cantor(pick::cantor_point(&mut rng)),
    }
}

/// Hold while II's last point is far from `x_{n−1}` for some member, else
/// jump within `2^-n` to a point some member separates from II's last point.
#[derive(Debug, Clone)]
pub struct EquiConstI {
    witness: OscWitness,
}

impl EquiConstI {
    pub fn new(witness: OscWitness) -> Self {
        EquiConstI { witness }
    }
}

impl PlayerI for EquiConstI {
    fn id(&self) -> String {
        "equi-const-i".into()
    }

    fn play(&mut self, ctx: &mut Ctx<'_>, h: &History) -> Result<Point> {
        let n = h.xs.len();
        if n == 0 {
            return Ok(first_point(ctx.config.seed, self.witness.family.space()));
        }
        let prev = &h.xs[n - 1];
        let answer = h.ii[n - 1].as_point().ok_or_else(|| Error::Strategy("expected a point from II".into()))?;
        let third = &self.witness.eps * rat(1, 3);
        if let GapDecision::Yes { .. } = self.witness.family.exceeds(answer, prev, &third)? {
            return Ok(prev.clone());
        }
        let (_, a, _) = self.witness.pick(prev, &pow2_neg(n as i64), answer, &(&self.witness.eps * rat(2, 3)))?;
        Ok(a)
    }
}

/// Inside II's ball, move to a point some member separates from `x_{n−1}` by `eps/3`.
#[derive(Debug, Clone)]
pub struct EquiOpenI {
    witness: OscWitness,
}

impl EquiOpenI {
    pub fn new(witness: OscWitness) -> Self {
        EquiOpenI { witness }
    }
}

impl PlayerI for EquiOpenI {
    fn id(&self) -> String {
        "equi-open-i".into()
    }

    fn play(&mut self, ctx: &mut Ctx<'_>, h: &History) -> Result<Point> {
        let n = h.xs.len();
        if n == 0 {
            return Ok(first_point(ctx.config.seed, self.witness.family.space()));
        }
        let region = ball_region(&h.ii[n - 1])?;
        let (_, a, _) = self.witness.pick_in(&region, &h.xs[n - 1], &(&self.witness.eps * rat(1, 3)))?;
        Ok(a)
    }
}
