//! Outward-rounded dyadic enclosures for nonnegative reals.
//!
//! Used where exact powers would be too large to form (e.g. `u^n` with `n` in
//! the tens of thousands). Each value is a pair of fixed-point integers at a
//! common precision; every operation rounds the lower end down and the upper
//! end up, so the true value always lies inside.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::quad::{QuadPoint, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosure {
    lo: BigInt,
    hi: BigInt,
    prec: u32,
}

fn floor_div_pow2(x: &BigInt, p: u32) -> BigInt {
    x >> (p as usize)
}

fn ceil_div_pow2(x: &BigInt, p: u32) -> BigInt {
    let q = x >> (p as usize);
    if &(&q << (p as usize)) == x {
        q
    } else {
        q + 1
    }
}

fn rat_floor_fixed(r: &Rat, prec: u32) -> BigInt {
    let scaled = r.numer() << (prec as usize);
    scaled.div_floor(r.denom())
}

fn rat_ceil_fixed(r: &Rat, prec: u32) -> BigInt {
    let scaled = r.numer() << (prec as usize);
    -((-scaled).div_floor(r.denom()))
}

impl Enclosure {
    /// Encloses a nonnegative point at `prec` fractional bits.
    pub fn of(x: &QuadPoint, prec: u32) -> Self {
        debug_assert!(!x.is_negative());
        let (lo, hi) = x.bounds(prec + 2);
        let lo = rat_floor_fixed(&lo, prec).max(BigInt::zero());
        let hi = rat_ceil_fixed(&hi, prec);
        Enclosure { lo, hi, prec }
    }

    pub fn lo(&self) -> Rat {
        Rat::new(self.lo.clone(), BigInt::one() << (self.prec as usize))
    }

    pub fn hi(&self) -> Rat {
        Rat::new(self.hi.clone(), BigInt::one() << (self.prec as usize))
    }

    pub fn mul(&self, o: &Enclosure) -> Enclosure {
        debug_assert_eq!(self.prec, o.prec);
        Enclosure {
            lo: floor_div_pow2(&(&self.lo * &o.lo), self.prec),
            hi: ceil_div_pow2(&(&self.hi * &o.hi), self.prec),
            prec: self.prec,
        }
    }

    pub fn pow(&self, mut n: u64) -> Enclosure {
        let one = BigInt::one() << (self.prec as usize);
        let mut acc = Enclosure { lo: one.clone(), hi: one, prec: self.prec };
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Encloses `self - o`; the result may straddle zero.
    pub fn sub(&self, o: &Enclosure) -> (Rat, Rat) {
        let den = BigInt::one() << (self.prec as usize);
        (
            Rat::new(&self.lo - &o.hi, den.clone()),
            Rat::new(&self.hi - &o.lo, den),
        )
    }

    pub fn width(&self) -> Rat {
        Rat::new(&self.hi - &self.lo, BigInt::one() << (self.prec as usize))
    }

    pub fn is_degenerate_nonneg(&self) -> bool {
        !self.lo.is_negative()
    }
}
