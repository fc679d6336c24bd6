//! Brute-force validation of gauge families on deterministic point pairs.

use std::cmp::Ordering;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::family::{FamilySpec, GapDecision, Member};
use super::gauge::GaugeFamily;
use crate::error::Result;
use crate::exactnum::{cmp_dist, pow2_neg, CantorPoint, Point, QuadPoint, Rat, Space};

/// Outcome of a gauge search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GaugeCheck {
    NoViolation(usize),
    Counterexample { x0: Point, x1: Point, member: Member, gap: QuadPoint },
}

impl GaugeCheck {
    pub fn is_clean(&self) -> bool {
        matches!(self, GaugeCheck::NoViolation(_))
    }
}

/// Deterministic pair generator: breakpoint straddles first, then seeded near-pairs.
#[derive(Debug, Clone)]
pub struct PairSampler {
    pub seed: u64,
    pub space: Space,
    pub hotspots: Vec<QuadPoint>,
    /// Finest straddle scale `2^-k`.
    pub straddle_depth: u32,
}

impl PairSampler {
    pub fn new(seed: u64, target: &FamilySpec) -> Self {
        PairSampler { seed, space: target.space(), hotspots: target.hotspots(), straddle_depth: 40 }
    }

    /// Pairs around every hotspot: symmetric `(b−h, b+h)` for all scales, then one-sided.
    pub fn straddles(&self) -> Vec<(Point, Point)> {
        let mut out = Vec::new();
        let zero = QuadPoint::zero();
        let one = QuadPoint::one();
        let ok = |q: &QuadPoint| *q >= zero && *q <= one;
        for b in &self.hotspots {
            for k in 1..=self.straddle_depth {
                let h = QuadPoint::from_rat(pow2_neg(i64::from(k)));
                let (l, r) = (b - &h, b + &h);
                if ok(&l) && ok(&r) {
                    out.push((Point::Line(l), Point::Line(r)));
                }
            }
        }
        for b in &self.hotspots {
            for k in 1..=self.straddle_depth {
                let h = QuadPoint::from_rat(pow2_neg(i64::from(k)));
                for other in [b + &h, b - &h] {
                    if ok(&other) {
                        out.push((Point::Line(b.clone()), Point::Line(other)));
                    }
                }
            }
        }
        out
    }

    /// `count` seeded random near-pairs.
    pub fn random_pairs(&self, count: usize) -> Vec<(Point, Point)> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        (0..count)
            .map(|_| match self.space {
                Space::Line => line_pair(&mut rng),
                Space::Cantor => cantor_pair(&mut rng),
            })
            .collect()
    }
}

fn dyadic(rng: &mut ChaCha8Rng, max_bits: u32) -> Rat {
    let m = rng.gen_range(1..=max_bits);
    let k: u64 = rng.gen_range(0..=(1u64 << m));
    Rat::new(BigInt::from(k), BigInt::from(1u64 << m))
}

fn line_point(rng: &mut ChaCha8Rng) -> QuadPoint {
    match rng.gen_range(0..10) {
        0..=4 => QuadPoint::from_rat(dyadic(rng, 24)),
        5..=6 => {
            let d: i64 = rng.gen_range(1..=1000);
            QuadPoint::from_ratio(rng.gen_range(0..=d), d)
        }
        7..=8 => {
            // a + b√2 with a ∈ [1/4,3/4], |b| < 1/8 stays inside [0,1]
            let a = Rat::new(BigInt::from(rng.gen_range(256..=768)), BigInt::from(1024));
            let b = Rat::new(BigInt::from(rng.gen_range(-127..=127)), BigInt::from(1024));
            QuadPoint::new(a, b)
        }
        _ => QuadPoint::one() - QuadPoint::from_rat(pow2_neg(rng.gen_range(1..=30))),
    }
}

fn line_pair(rng: &mut ChaCha8Rng) -> (Point, Point) {
    let x0 = line_point(rng);
    let s = rng.gen_range(1..=30);
    let j: i64 = rng.gen_range(1..=255);
    let mut h = QuadPoint::from_rat(pow2_neg(s).clone() * Rat::from_integer(BigInt::from(j)) / Rat::from_integer(BigInt::from(256)));
    if rng.gen_bool(0.2) {
        h = h.scale(&Rat::new(1.into(), 2.into())) * QuadPoint::sqrt2();
    }
    let zero = QuadPoint::zero();
    let one = QuadPoint::one();
    let up = &x0 + &h;
    let down = &x0 - &h;
    let x1 = if rng.gen_bool(0.5) && up <= one {
        up
    } else if down >= zero {
        down
    } else {
        up.min(one)
    };
    (Point::Line(x0), Point::Line(x1))
}

fn random_bits(rng: &mut ChaCha8Rng, len: usize) -> Vec<bool> {
    (0..len).map(|_| rng.gen_bool(0.5)).collect()
}

fn cantor_pair(rng: &mut ChaCha8Rng) -> (Point, Point) {
    let pre_len = rng.gen_range(0..=20);
    let per_len = rng.gen_range(1..=4);
    let x0 = CantorPoint::new(random_bits(rng, pre_len), random_bits(rng, per_len)).expect("nonempty period");
    let k = rng.gen_range(0..=24);
    let mut pre = x0.prefix(k);
    pre.push(!x0.bit(k));
    let tail_len = rng.gen_range(0..=6);
    pre.extend(random_bits(rng, tail_len));
    let per_len = rng.gen_range(1..=4);
    let x1 = CantorPoint::new(pre, random_bits(rng, per_len)).expect("nonempty period");
    (Point::Cantor(x0), Point::Cantor(x1))
}

/// Does some pair with `d(x0,x1) < min(δ_ε(x0), δ_ε(x1))` have a value gap `≥ ε`?
pub fn check_gauge(
    target: &FamilySpec,
    gauge: &GaugeFamily,
    eps: &Rat,
    sampler: &PairSampler,
    budget: usize,
) -> Result<GaugeCheck> {
    let budget = budget.max(1);
    let pairs = sampler.straddles().into_iter().chain(sampler.random_pairs(budget));
    for (x0, x1) in pairs {
        if let Some(found) = violation(target, gauge, eps, &x0, &x1)? {
            return Ok(found);
        }
    }
    Ok(GaugeCheck::NoViolation(budget))
}

fn violation(
    target: &FamilySpec,
    gauge: &GaugeFamily,
    eps: &Rat,
    x0: &Point,
    x1: &Point,
) -> Result<Option<GaugeCheck>> {
    let d = gauge.delta(eps, x0)?.min(gauge.delta(eps, x1)?);
    if cmp_dist(x0, x1, &d)? != Ordering::Less {
        return Ok(None);
    }
    Ok(match target.exceeds(x0, x1, eps)? {
        GapDecision::Yes { member, gap } => {
            Some(GaugeCheck::Counterexample { x0: x0.clone(), x1: x1.clone(), member, gap })
        }
        _ => None,
    })
}
