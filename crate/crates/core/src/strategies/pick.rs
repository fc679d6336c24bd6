//! Seeded point pickers shared by the baseline strategies.

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::catalog::Region;
use crate::exactnum::{pow2_neg, rat, CantorPoint, Point, QuadPoint, Rat, Space};
use crate::setalgebra::RepSet;

pub(crate) fn dyadic(rng: &mut ChaCha8Rng, bits: u32) -> Rat {
    let k: u64 = rng.gen_range(0..=(1u64 << bits));
    Rat::new(BigInt::from(k), BigInt::from(1u64 << bits))
}

/// A point of `[0,1]`: mostly dyadic, sometimes in `Q(√2) \ Q`.
pub(crate) fn line_point(rng: &mut ChaCha8Rng) -> QuadPoint {
    if rng.gen_bool(0.8) {
        QuadPoint::from_rat(dyadic(rng, 20))
    } else {
        let a = Rat::new(BigInt::from(rng.gen_range(256..=768)), BigInt::from(1024));
        let b = Rat::new(BigInt::from(rng.gen_range(-127..=127)), BigInt::from(1024));
        QuadPoint::new(a, b)
    }
}

pub(crate) fn bits(rng: &mut ChaCha8Rng, len: usize) -> Vec<bool> {
    (0..len).map(|_| rng.gen_bool(0.5)).collect()
}

pub(crate) fn cantor_point(rng: &mut ChaCha8Rng) -> CantorPoint {
    let pre = rng.gen_range(0..=12);
    let per = rng.gen_range(1..=3);
    CantorPoint::new(bits(rng, pre), bits(rng, per)).expect("nonempty period")
}

pub(crate) fn carrier_point(rng: &mut ChaCha8Rng, space: Space) -> Point {
    match space {
        Space::Line => Point::Line(line_point(rng)),
        Space::Cantor => Point::Cantor(cantor_point(rng)),
    }
}

/// `keep` leading bits of `x`, then a random eventually periodic tail.
pub(crate) fn cantor_near(rng: &mut ChaCha8Rng, x: &CantorPoint, keep: usize) -> CantorPoint {
    let mut pre = x.prefix(keep);
    let extra = rng.gen_range(0..=4);
    pre.extend(bits(rng, extra));
    let per = rng.gen_range(1..=3);
    CantorPoint::new(pre, bits(rng, per)).expect("nonempty period")
}

/// `c + s` for a random `|s| ≤ 2^-k` keeping the result in `[0,1]`.
pub(crate) fn line_jitter(rng: &mut ChaCha8Rng, c: &QuadPoint, k: i64) -> QuadPoint {
    let u = Rat::new(BigInt::from(rng.gen_range(0..=256)), BigInt::from(256));
    let off = QuadPoint::from_rat(u * pow2_neg(k));
    let up = c + &off;
    let down = c - &off;
    let up_ok = up <= QuadPoint::one();
    let down_ok = down >= QuadPoint::zero();
    if up_ok && (!down_ok || rng.gen_bool(0.5)) {
        up
    } else {
        down
    }
}

/// A random interior point of an open region.
pub(crate) fn in_region(rng: &mut ChaCha8Rng, region: &Region) -> Option<Point> {
    match region {
        Region::Span(s) if s.lo < s.hi => {
            let w = &s.hi - &s.lo;
            for _ in 0..64 {
                let t = Rat::new(BigInt::from(rng.gen_range(1..1024)), BigInt::from(1024));
                let p = &s.lo + &w.scale(&t);
                if s.contains(&p) {
                    return Some(Point::Line(p));
                }
            }
            None
        }
        Region::Span(_) => None,
        Region::Cylinder(pre) => {
            let mut p = pre.clone();
            let extra = rng.gen_range(0..=4);
            p.extend(bits(rng, extra));
            let per = rng.gen_range(1..=3);
            Some(Point::Cantor(CantorPoint::new(p, bits(rng, per)).expect("nonempty period")))
        }
    }
}

/// A random point of the interval part of `u`, falling back to the nearest
/// fresh point when the random one is excluded or already used.
pub(crate) fn in_set(rng: &mut ChaCha8Rng, u: &RepSet, avoid: &[QuadPoint]) -> Option<QuadPoint> {
    let spans: Vec<_> = u.intervals().iter().filter(|s| s.lo < s.hi).collect();
    if spans.is_empty() {
        return None;
    }
    let s = spans[rng.gen_range(0..spans.len())];
    let w = &s.hi - &s.lo;
    let t = Rat::new(BigInt::from(rng.gen_range(1..1024)), BigInt::from(1024));
    let p = &s.lo + &w.scale(&t);
    if u.contains(&p) && !u.atom_list().contains(&p) && !avoid.contains(&p) {
        return Some(p);
    }
    u.fresh_point(Some(&p), avoid)
}

/// An irrational member of the interval part of `u` near `p`.
pub(crate) fn irrational_near(u: &RepSet, p: &QuadPoint, avoid: &[QuadPoint]) -> Option<QuadPoint> {
    let shift = QuadPoint::new(rat(0, 1), rat(1, 2));
    for k in 4..60 {
        let h = QuadPoint::from_rat(pow2_neg(k));
        for q in [p + &(&h * &shift), p - &(&h * &shift)] {
            if !q.is_rational() && u.contains(&q) && !u.atom_list().contains(&q) && !avoid.contains(&q) {
                return Some(q);
            }
        }
    }
    None
}
