//! Points of the two carriers, exact metric comparisons and ball geometry.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::cantor::CantorPoint;
use super::quad::{pow2_neg, QuadPoint, Rat};
use crate::error::{Error, Result};

/// Which Polish space a point lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    /// The unit interval `[0,1]` with points in Q(√2).
    Line,
    /// Cantor space with eventually periodic points.
    Cantor,
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Line => f.write_str("line"),
            Space::Cantor => f.write_str("cantor"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Point {
    Line(QuadPoint),
    Cantor(CantorPoint),
}

impl Point {
    pub fn line(q: QuadPoint) -> Self {
        Point::Line(q)
    }

    pub fn rat(n: i64, d: i64) -> Self {
        Point::Line(QuadPoint::from_ratio(n, d))
    }

    pub fn space(&self) -> Space {
        match self {
            Point::Line(_) => Space::Line,
            Point::Cantor(_) => Space::Cantor,
        }
    }

    pub fn as_line(&self) -> Option<&QuadPoint> {
        match self {
            Point::Line(q) => Some(q),
            Point::Cantor(_) => None,
        }
    }

    pub fn as_cantor(&self) -> Option<&CantorPoint> {
        match self {
            Point::Cantor(c) => Some(c),
            Point::Line(_) => None,
        }
    }

    /// Is the point inside its carrier? Line points must lie in `[0,1]`.
    pub fn in_carrier(&self) -> bool {
        match self {
            Point::Line(q) => !q.is_negative() && *q <= QuadPoint::one(),
            Point::Cantor(_) => true,
        }
    }

    pub fn to_f64(&self) -> Option<f64> {
        self.as_line().map(QuadPoint::to_f64)
    }
}

fn mixed(p: &Point, q: &Point) -> Error {
    Error::domain(format!("mixed-space comparison between {p} and {q}"))
}

/// Exact distance between two points of the same space.
pub fn dist(p: &Point, q: &Point) -> Result<QuadPoint> {
    match (p, q) {
        (Point::Line(x), Point::Line(y)) => Ok((x - y).abs()),
        (Point::Cantor(x), Point::Cantor(y)) => Ok(match x.first_disagreement(y) {
            None => QuadPoint::zero(),
            Some(n) => QuadPoint::from_rat(pow2_neg(n as i64)),
        }),
        _ => Err(mixed(p, q)),
    }
}

/// Exact order of `d(p,q)` versus `r`.
pub fn cmp_dist(p: &Point, q: &Point, r: &Rat) -> Result<Ordering> {
    if r.is_negative() {
        return Err(Error::domain("negative radius"));
    }
    match (p, q) {
        (Point::Line(x), Point::Line(y)) => {
            // |x-y| vs r  <=>  sign of (x-y)^2 - r^2, done by the exact sign test
            Ok((x - y).abs().cmp_rat(r))
        }
        (Point::Cantor(x), Point::Cantor(y)) => Ok(match x.first_disagreement(y) {
            None => Rat::zero().cmp(r),
            Some(n) => pow2_neg(n as i64).cmp(r),
        }),
        _ => Err(mixed(p, q)),
    }
}

/// The G-rule `d(prev, next) <= 2^(-n)`. Mixed spaces never satisfy it.
pub fn step_bound_ok(prev: &Point, next: &Point, n: usize) -> bool {
    matches!(cmp_dist(prev, next, &pow2_neg(n as i64)), Ok(o) if o != Ordering::Greater)
}

/// An open or closed ball, intersected with the carrier.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ball {
    center: Point,
    radius: Rat,
    closed: bool,
}

/// A line interval with endpoint flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Span {
    pub lo: QuadPoint,
    pub lo_closed: bool,
    pub hi: QuadPoint,
    pub hi_closed: bool,
}

impl Span {
    pub fn contains(&self, x: &QuadPoint) -> bool {
        let lo_ok = match x.cmp(&self.lo) {
            Ordering::Greater => true,
            Ordering::Equal => self.lo_closed,
            Ordering::Less => false,
        };
        let hi_ok = match x.cmp(&self.hi) {
            Ordering::Less => true,
            Ordering::Equal => self.hi_closed,
            Ordering::Greater => false,
        };
        lo_ok && hi_ok
    }

    pub fn is_empty(&self) -> bool {
        match self.lo.cmp(&self.hi) {
            Ordering::Less => false,
            Ordering::Equal => !(self.lo_closed && self.hi_closed),
            Ordering::Greater => true,
        }
    }

    /// Inclusion of nonempty spans.
    pub fn subset_of(&self, outer: &Span) -> bool {
        let lo_ok = match outer.lo.cmp(&self.lo) {
            Ordering::Less => true,
            Ordering::Equal => outer.lo_closed || !self.lo_closed,
            Ordering::Greater => false,
        };
        let hi_ok = match self.hi.cmp(&outer.hi) {
            Ordering::Less => true,
            Ordering::Equal => outer.hi_closed || !self.hi_closed,
            Ordering::Greater => false,
        };
        lo_ok && hi_ok
    }
}

impl Ball {
    pub fn new(center: Point, radius: Rat, closed: bool) -> Result<Self> {
        if !radius.is_positive() {
            return Err(Error::domain(format!("ball radius {radius} must be positive")));
        }
        Ok(Ball { center, radius, closed })
    }

    pub fn open(center: Point, radius: Rat) -> Result<Self> {
        Self::new(center, radius, false)
    }

    pub fn closed(center: Point, radius: Rat) -> Result<Self> {
        Self::new(center, radius, true)
    }

    pub fn center(&self) -> &Point {
        &self.center
    }

    pub fn radius(&self) -> &Rat {
        &self.radius
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn space(&self) -> Space {
        self.center.space()
    }

    pub fn contains(&self, p: &Point) -> bool {
        if !p.in_carrier() {
            return false;
        }
        match cmp_dist(&self.center, p, &self.radius) {
            Ok(Ordering::Less) => true,
            Ok(Ordering::Equal) => self.closed,
            _ => false,
        }
    }

    /// The ball as a span clamped to `[0,1]` (line balls only).
    pub fn span(&self) -> Option<Span> {
        let c = self.center.as_line()?;
        let r = QuadPoint::from_rat(self.radius.clone());
        let lo = c - &r;
        let hi = c + &r;
        let zero = QuadPoint::zero();
        let one = QuadPoint::one();
        let (lo, lo_closed) = if lo < zero { (zero, true) } else { (lo, self.closed) };
        let (hi, hi_closed) = if hi > one { (one, true) } else { (hi, self.closed) };
        Some(Span { lo, lo_closed, hi, hi_closed })
    }

    /// Cantor balls are cylinders: the number of leading bits every member shares with the center.
    pub fn cylinder_len(&self) -> Option<usize> {
        if self.center.as_cantor().is_none() {
            return None;
        }
        // least n with 2^-n < r (open) or 2^-n <= r (closed)
        let mut n = 0usize;
        loop {
            let d = pow2_neg(n as i64);
            let inside = if self.closed { d <= self.radius } else { d < self.radius };
            if inside {
                return Some(n);
            }
            n += 1;
        }
    }

    pub fn cylinder_prefix(&self) -> Option<Vec<bool>> {
        let len = self.cylinder_len()?;
        Some(self.center.as_cantor()?.prefix(len))
    }

    /// Exact inclusion `self ⊆ outer` within the carrier.
    pub fn subset_of(&self, outer: &Ball) -> Result<bool> {
        match (&self.center, &outer.center) {
            (Point::Line(_), Point::Line(_)) => {
                let inner = self.span().expect("line");
                Ok(inner.is_empty() || inner.subset_of(&outer.span().expect("line")))
            }
            (Point::Cantor(ci), Point::Cantor(co)) => {
                let li = self.cylinder_len().expect("cantor");
                let lo = outer.cylinder_len().expect("cantor");
                Ok(li >= lo && ci.has_prefix(&co.prefix(lo)))
            }
            _ => Err(mixed(&self.center, &outer.center)),
        }
    }
}

/// Inclusion of a closed ball in an open ball, both intersected with the carrier.
pub fn ball_subset(inner: &Ball, outer: &Ball) -> Result<bool> {
    inner.subset_of(outer)
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Line(q) => write!(f, "{q}"),
            Point::Cantor(c) => write!(f, "{c}"),
        }
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Point {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.contains(':') {
            Ok(Point::Cantor(s.parse()?))
        } else {
            Ok(Point::Line(s.parse()?))
        }
    }
}

/// Ball literal: `B(center,radius)` for open balls, `B[center,radius]` for closed.
impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.closed {
            write!(f, "B[{},{}]", self.center, self.radius)
        } else {
            write!(f, "B({},{})", self.center, self.radius)
        }
    }
}

impl fmt::Debug for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Ball {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::parse(format!("bad ball literal {s:?}"));
        let body = s.strip_prefix('B').ok_or_else(bad)?;
        let (closed, inner) = if let Some(b) = body.strip_prefix('[').and_then(|b| b.strip_suffix(']')) {
            (true, b)
        } else if let Some(b) = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')) {
            (false, b)
        } else {
            return Err(bad());
        };
        let (c, r) = inner.rsplit_once(',').ok_or_else(bad)?;
        Ball::new(c.parse()?, super::quad::parse_rat(r)?, closed)
    }
}

macro_rules! literal_serde {
    ($t:ty) => {
        impl Serialize for $t {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.serialize_str(&self.to_string())
            }
        }

        impl<'de> Deserialize<'de> for $t {
            fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let s = String::deserialize(d)?;
                s.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

literal_serde!(Point);
literal_serde!(Ball);
literal_serde!(QuadPoint);

/// The unit interval as a closed span.
pub fn unit_span() -> Span {
    Span { lo: QuadPoint::zero(), lo_closed: true, hi: QuadPoint::one(), hi_closed: true }
}
