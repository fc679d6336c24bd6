//! Witnesses that a function is not Baire 1 or a family is not equi-Baire 1.

use num_traits::One;

use super::family::{FamilySpec, GapDecision, Member, Region};
use super::func::FuncSpec;
use crate::error::{Error, Result};
use crate::exactnum::{rat, CantorPoint, Point, QuadPoint, Rat, Space, Span};

/// Dense sets `A = {f ≈ y0}` and `B = {f far from y0}` inside the perfect set `P`.
///
/// `P` is always the whole carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensePairWitness {
    pub space: Space,
    pub y0: QuadPoint,
    pub eps: Rat,
}

pub fn dense_pair_witness(f: &FuncSpec) -> Result<DensePairWitness> {
    let space = match f {
        FuncSpec::DirichletQuad | FuncSpec::NonMeasOracle => Space::Line,
        FuncSpec::DirichletCantor => Space::Cantor,
        _ => return Err(Error::Classification(format!("{f} carries no dense-pair witness"))),
    };
    Ok(DensePairWitness { space, y0: QuadPoint::one(), eps: rat(1, 4) })
}

fn open_ends(s: &Span) -> Result<(QuadPoint, QuadPoint)> {
    if s.lo >= s.hi {
        return Err(Error::domain("pick from a degenerate region"));
    }
    Ok((s.lo.clone(), s.hi.clone()))
}

/// `lo + (hi − lo)·√2/2`, or the same recipe between two interior rationals.
fn irrational_inside(lo: &QuadPoint, hi: &QuadPoint) -> QuadPoint {
    let half_sqrt2 = QuadPoint::new(Rat::from_integer(0.into()), rat(1, 2));
    let (a, b) = if lo.is_rational() && hi.is_rational() {
        (lo.clone(), hi.clone())
    } else {
        let r1 = QuadPoint::from_rat(QuadPoint::rational_between(lo, hi));
        let r2 = QuadPoint::from_rat(QuadPoint::rational_between(&r1, hi));
        (r1, r2)
    };
    &a + &(&(&b - &a) * &half_sqrt2)
}

impl DensePairWitness {
    /// A point of the region with value `y0`.
    pub fn pick_a(&self, region: &Region) -> Result<Point> {
        match region {
            Region::Span(s) => {
                let (lo, hi) = open_ends(s)?;
                Ok(Point::Line(QuadPoint::from_rat(QuadPoint::rational_between(&lo, &hi))))
            }
            Region::Cylinder(pre) => Ok(Point::Cantor(CantorPoint::eventually_zero(pre))),
        }
    }

    /// A point of the region with value `0`, at distance `1 > 2·eps` from `y0`.
    pub fn pick_b(&self, region: &Region) -> Result<Point> {
        match region {
            Region::Span(s) => {
                let (lo, hi) = open_ends(s)?;
                Ok(Point::Line(irrational_inside(&lo, &hi)))
            }
            Region::Cylinder(pre) => {
                Ok(Point::Cantor(CantorPoint::new(pre.clone(), vec![false, true]).expect("nonempty period")))
            }
        }
    }

    pub fn accepts_a(&self, value: &QuadPoint) -> bool {
        (value - &self.y0).abs() < QuadPoint::from_rat(self.eps.clone())
    }

    pub fn accepts_b(&self, value: &QuadPoint) -> bool {
        (value - &self.y0).abs() > QuadPoint::from_rat(&self.eps * Rat::from_integer(2.into()))
    }
}

/// Uniform lower bound `eps` on the family's oscillation at every point, with a picker.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OscWitness {
    pub family: FamilySpec,
    pub eps: Rat,
}

pub fn osc_witness(f: &FamilySpec) -> Result<OscWitness> {
    let ok = match f {
        FamilySpec::StepFamily => true,
        FamilySpec::Finite(fs) => {
            fs.iter().any(|g| matches!(g, FuncSpec::DirichletQuad | FuncSpec::DirichletCantor))
        }
        FamilySpec::PowerFamily => false,
    };
    if !ok {
        return Err(Error::Classification(format!("{f} carries no oscillation witness")));
    }
    Ok(OscWitness { family: f.clone(), eps: Rat::one() })
}

fn candidates(region: &Region, x: Option<&Point>) -> Vec<Point> {
    let mut out = Vec::new();
    match region {
        Region::Span(s) => {
            if s.lo >= s.hi {
                return out;
            }
            let half = rat(1, 2);
            if let Some(Point::Line(c)) = x {
                out.push(Point::Line((c + &s.hi).scale(&half)));
                out.push(Point::Line((&s.lo + c).scale(&half)));
            }
            out.push(Point::Line(QuadPoint::from_rat(QuadPoint::rational_between(&s.lo, &s.hi))));
            out.push(Point::Line(irrational_inside(&s.lo, &s.hi)));
            let w = &s.hi - &s.lo;
            for k in 2..=6u32 {
                for j in 1..(1i64 << k) {
                    out.push(Point::Line(&s.lo + &w.scale(&rat(j, 1 << k))));
                }
            }
        }
        Region::Cylinder(pre) => {
            for tail in [&[false][..], &[true], &[false, true], &[true, false]] {
                let mut p = pre.clone();
                p.extend_from_slice(tail);
                out.push(Point::Cantor(CantorPoint::eventually_zero(&p)));
            }
            out.push(Point::Cantor(CantorPoint::new(pre.clone(), vec![false, true]).expect("period")));
            out.push(Point::Cantor(CantorPoint::new(pre.clone(), vec![true]).expect("period")));
        }
    }
    out
}

impl OscWitness {
    /// A point `a` with `d(x,a) < radius` and a member separating `reference` from `a` by `need`.
    pub fn pick(&self, x: &Point, radius: &Rat, reference: &Point, need: &Rat) -> Result<(Member, Point, QuadPoint)> {
        let ball = crate::exactnum::Ball::open(x.clone(), radius.clone())?;
        self.search(&Region::of_ball(&ball), Some(x), reference, need)
    }

    /// As `pick`, but anywhere in a region.
    pub fn pick_in(&self, region: &Region, reference: &Point, need: &Rat) -> Result<(Member, Point, QuadPoint)> {
        self.search(region, None, reference, need)
    }

    fn search(&self, region: &Region, x: Option<&Point>, reference: &Point, need: &Rat) -> Result<(Member, Point, QuadPoint)> {
        for a in candidates(region, x) {
            if !region.contains(&a) || !a.in_carrier() {
                continue;
            }
            if let GapDecision::Yes { member, gap } = self.family.exceeds(reference, &a, need)? {
                return Ok((member, a, gap));
            }
        }
        Err(Error::Strategy(format!("no oscillation witness for {} in the requested region", self.family)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn span(lo: &str, hi: &str) -> Region {
        Region::Span(Span { lo: lo.parse().unwrap(), lo_closed: false, hi: hi.parse().unwrap(), hi_closed: false })
    }

    #[test]
    fn dirichlet_picks() {
        let f = FuncSpec::DirichletQuad;
        let w = dense_pair_witness(&f).unwrap();
        let a = w.pick_a(&span("3/8", "5/8")).unwrap();
        assert_eq!(a, Point::rat(1, 2));
        assert!(w.accepts_a(&f.eval(&a).unwrap()));
        let b = w.pick_b(&span("3/8", "5/8")).unwrap();
        assert_eq!(b, "3/8+1/8*sqrt2".parse::<Point>().unwrap());
        assert!(w.accepts_b(&f.eval(&b).unwrap()));
        assert!(dense_pair_witness(&FuncSpec::step(rat(1, 2)).unwrap()).is_err());
    }

    #[test]
    fn cantor_pick_b_extends_prefix() {
        let f = FuncSpec::DirichletCantor;
        let w = dense_pair_witness(&f).unwrap();
        let b = w.pick_b(&Region::Cylinder(vec![false, true])).unwrap();
        assert_eq!(b, "01:01".parse::<Point>().unwrap());
        assert_eq!(f.eval(&b).unwrap(), QuadPoint::zero());
    }

    #[test]
    fn step_family_osc_pick() {
        let w = osc_witness(&FamilySpec::StepFamily).unwrap();
        let x = Point::rat(1, 3);
        let (m, a, gap) = w.pick(&x, &rat(1, 64), &x, &rat(2, 3)).unwrap();
        assert!(crate::exactnum::cmp_dist(&x, &a, &rat(1, 64)).unwrap().is_lt());
        assert_eq!(gap, QuadPoint::one());
        assert_ne!(FamilySpec::StepFamily.eval(&m, &x).unwrap(), FamilySpec::StepFamily.eval(&m, &a).unwrap());
        assert!(osc_witness(&FamilySpec::PowerFamily).is_err());
    }
}
