//! Nested closed refinements avoiding forbidden points.

use num_bigint::BigInt;
use num_traits::Signed;

use super::repset::RepSet;
use crate::error::{Error, Result};
use crate::exactnum::{ceil_to_grid, pow2_floor, QuadPoint, Rat};

/// A closed subinterval of `f` with rational length `< 1/(n+2)` at positive
/// distance from every forbidden point.
///
/// Works in the leftmost gap `(g0, g1)` of `f` cut at the forbidden points:
/// with `w = min(g1 − g0, 1/(n+2))` and grid `h` the largest power of two
/// `≤ w/4`, the result is `[s, t]` where `s = g0` (or the next grid point when
/// `g0` is forbidden or irrational) and `t` is `g0 + w/2` rounded up to the grid.
pub fn refine_closed(f: &RepSet, forbidden: &[QuadPoint], n: usize) -> Result<RepSet> {
    let span = match f.intervals() {
        [s] if s.lo < s.hi && s.lo_closed && s.hi_closed => s.clone(),
        _ => return Err(Error::domain(format!("refine_closed needs one closed interval of positive length, got {f}"))),
    };
    let mut cuts: Vec<QuadPoint> = forbidden.iter().filter(|p| span.contains(p)).cloned().collect();
    cuts.sort();
    cuts.dedup();
    let mut ends = vec![span.lo.clone()];
    ends.extend(cuts.iter().cloned());
    ends.push(span.hi.clone());
    let (g0, g1) = ends
        .windows(2)
        .find(|w| w[0] < w[1])
        .map(|w| (w[0].clone(), w[1].clone()))
        .ok_or_else(|| Error::domain("no room left between forbidden points"))?;
    let cap = Rat::new(BigInt::from(1), BigInt::from(n as u64 + 2));
    let gap = &g1 - &g0;
    let w = gap.rational_lower_bound().min(cap);
    let h = pow2_floor(&(&w / Rat::from_integer(BigInt::from(4))));
    let g0_usable = g0.is_rational() && !cuts.contains(&g0);
    let s = if g0_usable {
        g0.as_rat().cloned().expect("rational")
    } else {
        let c = ceil_to_grid(&g0, &h);
        if QuadPoint::from_rat(c.clone()) == g0 {
            c + &h
        } else {
            c
        }
    };
    let mid = &g0 + &QuadPoint::from_rat(&w / Rat::from_integer(BigInt::from(2)));
    let t = ceil_to_grid(&mid, &h);
    let out = RepSet::closed(QuadPoint::from_rat(s.clone()), QuadPoint::from_rat(t.clone()));
    // every promise is rechecked exactly
    let len = &t - &s;
    let ok = len.is_positive()
        && len < Rat::new(BigInt::from(1), BigInt::from(n as u64 + 2))
        && span.contains(&QuadPoint::from_rat(s.clone()))
        && span.contains(&QuadPoint::from_rat(t.clone()))
        && !forbidden.iter().any(|p| out.contains(p));
    if !ok {
        return Err(Error::domain(format!("refinement of {f} failed its own checks")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn q(s: &str) -> QuadPoint {
        s.parse().unwrap()
    }

    #[test]
    fn leftmost_gap_example() {
        let f = RepSet::closed(q("1/4"), q("3/8"));
        let r = refine_closed(&f, &[q("1/3")], 3).unwrap();
        assert_eq!(r.to_string(), "[1/4,19/64]");
    }

    #[test]
    fn unit_interval() {
        let r = refine_closed(&RepSet::unit(), &[], 0).unwrap();
        assert!(r.measure() < QuadPoint::from_rat(rat(1, 2)));
        assert_eq!(r.intervals()[0].lo, QuadPoint::zero());
    }

    #[test]
    fn nested_refinements_avoid_all_forbidden_points() {
        let mut f = RepSet::unit();
        let mut forbidden = Vec::new();
        for j in 1..=10i64 {
            // forbid the current left end and a point just inside it
            let s = &f.intervals()[0];
            let e = &s.lo + &(&s.hi - &s.lo).scale(&rat(1, 3 + j));
            forbidden.push(s.lo.clone());
            forbidden.push(e);
            f = refine_closed(&f, &forbidden, j as usize).unwrap();
            assert!(!forbidden.iter().any(|p| f.contains(p)));
        }
    }

    #[test]
    fn irrational_endpoints() {
        let f = RepSet::closed(q("1/2*sqrt2"), q("1"));
        let r = refine_closed(&f, &[], 1).unwrap();
        let s = &r.intervals()[0];
        assert!(s.lo.is_rational() && s.hi.is_rational() && s.lo > q("1/2*sqrt2"));
        assert!(refine_closed(&RepSet::closed(q("1/2"), q("1/2")), &[], 1).is_err());
    }
}
