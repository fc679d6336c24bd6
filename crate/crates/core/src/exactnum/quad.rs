//! Elements of the quadratic field Q(√2), written `a + b·√2`.
//!
//! Every comparison is decided exactly. The only irrationality is √2, so the
//! sign of `a + b√2` reduces to a sign test on `a² − 2b²` when `a` and `b`
//! have opposite signs.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// Shorthand for the rational `n/d`. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// `2^(-n)` as an exact rational.
pub fn pow2_neg(n: i64) -> Rat {
    if n >= 0 {
        Rat::new(BigInt::one(), BigInt::one() << (n as usize))
    } else {
        Rat::from_integer(BigInt::one() << ((-n) as usize))
    }
}

/// Parses `p/q` or `p` into a rational, rejecting zero denominators.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::parse(format!("bad rational literal {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(num, den))
}

/// An exact point `a + b√2` with rational coordinates.
///
/// Rationals are kept in lowest terms with a positive denominator by
/// `BigRational`, so structural equality is real-number equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QuadPoint {
    a: Rat,
    b: Rat,
}

impl QuadPoint {
    pub fn new(a: Rat, b: Rat) -> Self {
        QuadPoint { a, b }
    }

    pub fn from_rat(a: Rat) -> Self {
        QuadPoint { a, b: Rat::zero() }
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rat(rat(n, d))
    }

    pub fn zero() -> Self {
        Self::from_rat(Rat::zero())
    }

    pub fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    pub fn sqrt2() -> Self {
        QuadPoint { a: Rat::zero(), b: Rat::one() }
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// The rational value, if the point is rational.
    pub fn as_rat(&self) -> Option<&Rat> {
        self.is_rational().then_some(&self.a)
    }

    /// Exact sign of `a + b√2`.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&Rat::zero());
        let sb = self.b.cmp(&Rat::zero());
        match (sa, sb) {
            (s, Ordering::Equal) => s,
            (Ordering::Equal, s) => s,
            (x, y) if x == y => x,
            _ => {
                // opposite signs: |a| vs |b|√2 decided on squares
                let a2 = &self.a * &self.a;
                let b2 = &self.b * &self.b * Rat::from_integer(BigInt::from(2));
                if a2 > b2 {
                    sa
                } else {
                    sb
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn cmp_rat(&self, r: &Rat) -> Ordering {
        (self - &QuadPoint::from_rat(r.clone())).signum()
    }

    pub fn scale(&self, r: &Rat) -> Self {
        QuadPoint { a: &self.a * r, b: &self.b * r }
    }

    /// The algebraic conjugate `a − b√2`.
    pub fn conj(&self) -> Self {
        QuadPoint { a: self.a.clone(), b: -self.b.clone() }
    }

    /// Field norm `a² − 2b²`.
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - &self.b * &self.b * Rat::from_integer(BigInt::from(2))
    }

    pub fn checked_div(&self, other: &QuadPoint) -> Option<QuadPoint> {
        let n = other.norm();
        if n.is_zero() {
            return None;
        }
        let num = self * &other.conj();
        Some(num.scale(&n.recip()))
    }

    pub fn pow(&self, n: u32) -> QuadPoint {
        let mut acc = QuadPoint::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn min(self, other: QuadPoint) -> QuadPoint {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: QuadPoint) -> QuadPoint {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Rational bounds `lo <= self <= hi` with `hi - lo <= 2^(-bits)`.
    pub fn bounds(&self, bits: u32) -> (Rat, Rat) {
        if self.b.is_zero() {
            return (self.a.clone(), self.a.clone());
        }
        let (lo, hi) = sqrt2_multiple_bounds(&self.b, bits);
        (&self.a + lo, &self.a + hi)
    }

    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.bounds(64);
        let mid = (lo + hi) / Rat::from_integer(BigInt::from(2));
        mid.to_f64().unwrap_or(f64::NAN)
    }

    /// Exact floor.
    pub fn floor(&self) -> BigInt {
        let (lo, _) = self.bounds(8);
        let mut n = lo.floor().to_integer();
        while QuadPoint::from_rat(Rat::from_integer(n.clone())) > *self {
            n -= 1;
        }
        while QuadPoint::from_rat(Rat::from_integer(&n + 1)) <= *self {
            n += 1;
        }
        n
    }

    /// Exact ceiling.
    pub fn ceil(&self) -> BigInt {
        -(-self.clone()).floor()
    }

    /// A positive rational `q <= self`, equal to `self` when `self` is
    /// rational and otherwise within 1/16 relative error. `self` must be positive.
    pub fn rational_lower_bound(&self) -> Rat {
        debug_assert!(self.is_positive());
        if let Some(r) = self.as_rat() {
            return r.clone();
        }
        let mut bits = 16 + bit_len_hint(self);
        loop {
            let (lo, hi) = self.bounds(bits);
            if lo.is_positive() && (&hi - &lo) * Rat::from_integer(BigInt::from(16)) <= lo {
                return lo;
            }
            bits *= 2;
        }
    }

    /// A rational strictly between `lo` and `hi` (requires `lo < hi`). The
    /// midpoint is used when it is rational; otherwise the coarsest dyadic
    /// that fits.
    pub fn rational_between(lo: &QuadPoint, hi: &QuadPoint) -> Rat {
        debug_assert!(lo < hi);
        let mid = (lo + hi).scale(&rat(1, 2));
        if let Some(m) = mid.as_rat() {
            return m.clone();
        }
        let mut k = 0usize;
        loop {
            let scale = Rat::from_integer(BigInt::one() << k);
            let m = lo.scale(&scale).floor() + 1;
            let cand = Rat::new(m, BigInt::one() << k);
            if QuadPoint::from_rat(cand.clone()) < *hi {
                return cand;
            }
            k += 1;
        }
    }
}

fn bit_len_hint(q: &QuadPoint) -> u32 {
    let d = q.a.denom().bits().max(q.b.denom().bits());
    d as u32
}

/// Bounds on `b·√2` of width at most `2^(-bits)`.
fn sqrt2_multiple_bounds(b: &Rat, bits: u32) -> (Rat, Rat) {
    let p = b.numer().abs();
    let q = b.denom().clone();
    let k = bits as usize + 1;
    // floor(sqrt(2 p^2) * 2^k)
    let radicand: BigInt = (&p * &p * 2u32) << (2 * k);
    let s = radicand.sqrt();
    let den = &q << k;
    let lo = Rat::new(s.clone(), den.clone());
    let hi = Rat::new(s + 1, den);
    if b.is_negative() {
        (-hi, -lo)
    } else {
        (lo, hi)
    }
}

impl PartialOrd for QuadPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl<'a> Add<&'a QuadPoint> for &'a QuadPoint {
    type Output = QuadPoint;
    fn add(self, o: &QuadPoint) -> QuadPoint {
        QuadPoint { a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

impl<'a> Sub<&'a QuadPoint> for &'a QuadPoint {
    type Output = QuadPoint;
    fn sub(self, o: &QuadPoint) -> QuadPoint {
        QuadPoint { a: &self.a - &o.a, b: &self.b - &o.b }
    }
}

impl<'a> Mul<&'a QuadPoint> for &'a QuadPoint {
    type Output = QuadPoint;
    fn mul(self, o: &QuadPoint) -> QuadPoint {
        let two = Rat::from_integer(BigInt::from(2));
        QuadPoint {
            a: &self.a * &o.a + &self.b * &o.b * two,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
}

impl Add for QuadPoint {
    type Output = QuadPoint;
    fn add(self, o: QuadPoint) -> QuadPoint {
        &self + &o
    }
}

impl Sub for QuadPoint {
    type Output = QuadPoint;
    fn sub(self, o: QuadPoint) -> QuadPoint {
        &self - &o
    }
}

impl Mul for QuadPoint {
    type Output = QuadPoint;
    fn mul(self, o: QuadPoint) -> QuadPoint {
        &self * &o
    }
}

impl Neg for QuadPoint {
    type Output = QuadPoint;
    fn neg(self) -> QuadPoint {
        QuadPoint { a: -self.a, b: -self.b }
    }
}

impl From<Rat> for QuadPoint {
    fn from(r: Rat) -> Self {
        QuadPoint::from_rat(r)
    }
}

impl fmt::Display for QuadPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}*sqrt2", self.b);
        }
        if self.b.is_negative() {
            write!(f, "{}-{}*sqrt2", self.a, -self.b.clone())
        } else {
            write!(f, "{}+{}*sqrt2", self.a, self.b)
        }
    }
}

impl fmt::Debug for QuadPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for QuadPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::parse("empty point literal"));
        }
        let Some(head) = s.strip_suffix("sqrt2") else {
            return Ok(QuadPoint::from_rat(parse_rat(&s)?));
        };
        let head = head.strip_suffix('*').unwrap_or(head);
        // split "a±b" at the last sign that is not leading
        let split = head
            .char_indices()
            .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i)
            .last();
        let (a_str, b_str) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("0", head),
        };
        let b = match b_str {
            "" | "+" => Rat::one(),
            "-" => -Rat::one(),
            other => parse_rat(other.strip_prefix('+').unwrap_or(other))?,
        };
        Ok(QuadPoint::new(parse_rat(a_str)?, b))
    }
}

pub(crate) fn ceil_to_grid(x: &QuadPoint, step: &Rat) -> Rat {
    let k = x.scale(&step.recip()).ceil();
    Rat::from_integer(k) * step
}

/// Largest power of two not exceeding `x > 0`.
pub(crate) fn pow2_floor(x: &Rat) -> Rat {
    debug_assert!(x.is_positive());
    let two = Rat::from_integer(BigInt::from(2));
    let mut p = Rat::one();
    if &p <= x {
        while &(&p * &two) <= x {
            p *= &two;
        }
    } else {
        while &p > x {
            p /= &two;
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QuadPoint {
        s.parse().unwrap()
    }

    #[test]
    fn sign_of_mixed_terms() {
        assert_eq!(q("3/2-1*sqrt2").signum(), Ordering::Greater); // 9/4 > 2
        assert_eq!(q("7/5-1*sqrt2").signum(), Ordering::Less); // 49/25 < 2
        assert_eq!(q("-3/2+1*sqrt2").signum(), Ordering::Less);
        assert_eq!(QuadPoint::zero().signum(), Ordering::Equal);
    }

    #[test]
    fn literal_round_trip() {
        for s in ["1/2", "0", "-3", "1/2+1/8*sqrt2", "1/2-1/8*sqrt2", "1/2*sqrt2", "-1*sqrt2"] {
            assert_eq!(q(s).to_string(), s);
        }
        assert_eq!(q("sqrt2"), QuadPoint::sqrt2());
        assert_eq!(q("2/4 + 2/16*sqrt2").to_string(), "1/2+1/8*sqrt2");
        assert!("1/0".parse::<QuadPoint>().is_err());
        assert!("abc".parse::<QuadPoint>().is_err());
    }

    #[test]
    fn floor_and_bounds() {
        assert_eq!(QuadPoint::sqrt2().floor(), BigInt::from(1));
        assert_eq!(q("-1*sqrt2").floor(), BigInt::from(-2));
        assert_eq!(q("7/2").floor(), BigInt::from(3));
        let (lo, hi) = QuadPoint::sqrt2().bounds(40);
        assert!(QuadPoint::from_rat(lo.clone()) < QuadPoint::sqrt2());
        assert!(QuadPoint::from_rat(hi.clone()) > QuadPoint::sqrt2());
        assert!(hi - lo <= pow2_neg(40));
    }

    #[test]
    fn rational_between_prefers_midpoint() {
        assert_eq!(QuadPoint::rational_between(&q("3/8"), &q("5/8")), rat(1, 2));
        let lo = q("1/2*sqrt2");
        let hi = q("3/4");
        let r = QuadPoint::rational_between(&lo, &hi);
        assert!(lo < QuadPoint::from_rat(r.clone()) && QuadPoint::from_rat(r) < hi);
    }

    #[test]
    fn division_and_lower_bound() {
        let x = q("1+1*sqrt2");
        let y = x.checked_div(&x).unwrap();
        assert_eq!(y, QuadPoint::one());
        let v = q("-1/2+1/2*sqrt2");
        let lb = v.rational_lower_bound();
        assert!(QuadPoint::from_rat(lb.clone()) <= v);
        assert!(lb.is_positive());
    }
}
