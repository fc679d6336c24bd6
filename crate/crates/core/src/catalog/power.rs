//! Sup oracle for the power family `{x^n : n ≥ 1}` on `[0,1]`.
//!
//! For `0 < u < v < 1` the gap `h(n) = v^n − u^n` is unimodal in `n`: it
//! increases while `u^n (1−u) > v^n (1−v)` and decreases afterwards. The
//! maximiser is found from a float estimate and then confirmed with certified
//! comparisons, exact for small `n` and by outward-rounded enclosures otherwise.

use std::cmp::Ordering;

use num_traits::Zero;

use crate::exactnum::{Enclosure, QuadPoint, Rat};

/// Exponents up to this bound are handled with exact arithmetic.
const EXACT_LIMIT: u32 = 256;
/// Exponents beyond this are not searched; the oracle reports a bracket.
const SEARCH_LIMIT: u32 = 1 << 24;

/// A certified bracket on `sup_n |v^n − u^n|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSup {
    /// Exponent whose gap is at least `lower`.
    pub witness: u32,
    pub lower: QuadPoint,
    pub upper: QuadPoint,
    /// The sup equals `lower` and is the gap of `witness`.
    pub attained: bool,
}

/// Tri-state answer to "is some gap at least ε".
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PowerDecision {
    Yes { n: u32, lower: QuadPoint },
    No,
    Unknown,
}

fn mag_bits(x: &QuadPoint, n: u32) -> u32 {
    let f = x.to_f64();
    if f <= 0.0 {
        return 0;
    }
    let bits = -(f.log2()) * f64::from(n);
    bits.clamp(0.0, 1.0e7) as u32
}

fn iv(x: &QuadPoint, prec: u32) -> (Rat, Rat) {
    x.bounds(prec)
}

fn pow_iv(x: &QuadPoint, n: u32, prec: u32) -> (Rat, Rat) {
    let e = Enclosure::of(x, prec).pow(u64::from(n));
    (e.lo(), e.hi())
}

/// Certified order of `a^n·ka` versus `b^n·kb` for nonnegative inputs.
fn cmp_scaled_powers(a: &QuadPoint, ka: &QuadPoint, b: &QuadPoint, kb: &QuadPoint, n: u32) -> Ordering {
    let exact = || (&a.pow(n) * ka).cmp(&(&b.pow(n) * kb));
    if n <= EXACT_LIMIT {
        return exact();
    }
    let mut prec = 64 + mag_bits(a, n).max(mag_bits(b, n));
    for _ in 0..4 {
        let (al, ah) = pow_iv(a, n, prec);
        let (bl, bh) = pow_iv(b, n, prec);
        let (kal, kah) = iv(ka, prec);
        let (kbl, kbh) = iv(kb, prec);
        let (lhs_lo, lhs_hi) = (al * kal.max(Rat::zero()), ah * kah);
        let (rhs_lo, rhs_hi) = (bl * kbl.max(Rat::zero()), bh * kbh);
        if lhs_hi < rhs_lo {
            return Ordering::Less;
        }
        if lhs_lo > rhs_hi {
            return Ordering::Greater;
        }
        prec *= 2;
    }
    exact()
}

/// Bracket on `v^n − u^n`; exact (equal ends) for small `n`.
fn gap_iv(u: &QuadPoint, v: &QuadPoint, n: u32) -> (QuadPoint, QuadPoint) {
    if n <= EXACT_LIMIT {
        let g = &v.pow(n) - &u.pow(n);
        return (g.clone(), g);
    }
    let prec = 64 + mag_bits(u, n).min(mag_bits(v, n));
    let (ul, uh) = pow_iv(u, n, prec);
    let (vl, vh) = pow_iv(v, n, prec);
    (QuadPoint::from_rat(vl - uh), QuadPoint::from_rat(vh - ul))
}

/// Certified order of `v^n − u^n` versus `eps`.
fn cmp_gap(u: &QuadPoint, v: &QuadPoint, n: u32, eps: &QuadPoint) -> Ordering {
    if n <= EXACT_LIMIT {
        return (&v.pow(n) - &u.pow(n)).cmp(eps);
    }
    let mut prec = 64 + mag_bits(u, n).min(mag_bits(v, n));
    for _ in 0..4 {
        let (ul, uh) = pow_iv(u, n, prec);
        let (vl, vh) = pow_iv(v, n, prec);
        let lo = QuadPoint::from_rat(vl - uh);
        let hi = QuadPoint::from_rat(vh - ul);
        if &hi < eps {
            return Ordering::Less;
        }
        if &lo > eps {
            return Ordering::Greater;
        }
        prec *= 2;
    }
    (&v.pow(n) - &u.pow(n)).cmp(eps)
}

/// Is `h(n+1) ≤ h(n)`, i.e. `u^n (1−u) ≤ v^n (1−v)`?
fn past_peak(u: &QuadPoint, v: &QuadPoint, n: u32) -> bool {
    let one = QuadPoint::one();
    cmp_scaled_powers(u, &(&one - u), v, &(&one - v), n) != Ordering::Greater
}

/// The maximiser of `h` for `0 < u < v < 1`, or `None` beyond the search limit.
fn peak(u: &QuadPoint, v: &QuadPoint) -> Option<u32> {
    let (uf, vf) = (u.to_f64(), v.to_f64());
    let t = ((1.0 - vf) / (1.0 - uf)).ln() / (uf / vf).ln();
    let mut n = if t.is_finite() && t > 1.0 { t.ceil().min(f64::from(SEARCH_LIMIT)) as u32 } else { 1 };
    while n > 1 && past_peak(u, v, n - 1) {
        n -= 1;
    }
    let mut steps = 0u32;
    while !past_peak(u, v, n) {
        n = n.checked_add(1)?;
        steps += 1;
        if n > SEARCH_LIMIT || steps > 4096 {
            return None;
        }
    }
    Some(n)
}

/// Least `n` with `u^n ≤ target` for `0 < u < 1`, `target > 0`.
fn first_below(u: &QuadPoint, target: &QuadPoint) -> Option<u32> {
    let one = QuadPoint::one();
    let below = |n: u32| cmp_scaled_powers(u, &one, &one, target, n) != Ordering::Greater;
    let t = target.to_f64().ln() / u.to_f64().ln();
    let mut n = if t.is_finite() && t > 1.0 { t.ceil().min(f64::from(SEARCH_LIMIT)) as u32 } else { 1 };
    while n > 1 && below(n - 1) {
        n -= 1;
    }
    let mut steps = 0u32;
    while !below(n) {
        n = n.checked_add(1)?;
        steps += 1;
        if n > SEARCH_LIMIT || steps > 4096 {
            return None;
        }
    }
    Some(n)
}

fn ordered(u: &QuadPoint, v: &QuadPoint) -> (QuadPoint, QuadPoint) {
    if u <= v {
        (u.clone(), v.clone())
    } else {
        (v.clone(), u.clone())
    }
}

/// Bracket on `sup_n |v^n − u^n|` for `u, v ∈ [0,1]`.
pub fn power_sup(u: &QuadPoint, v: &QuadPoint) -> PowerSup {
    let (lo, hi) = ordered(u, v);
    let one = QuadPoint::one();
    let exact = |n: u32, g: QuadPoint| PowerSup { witness: n, lower: g.clone(), upper: g, attained: true };
    if lo == hi {
        return exact(1, QuadPoint::zero());
    }
    if lo.is_zero() {
        // h(n) = v^n, largest at n = 1
        return exact(1, hi);
    }
    if hi == one {
        // 1 − u^n increases to 1 without reaching it
        let half = QuadPoint::from_ratio(1, 1 << 20);
        let n = first_below(&lo, &half).unwrap_or(1);
        let (g, _) = gap_iv(&lo, &hi, n);
        return PowerSup { witness: n, lower: g, upper: one, attained: false };
    }
    let cheap = (&hi - &lo).checked_div(&(&one - &hi)).expect("hi < 1");
    match peak(&lo, &hi) {
        Some(n) if n <= EXACT_LIMIT => exact(n, &hi.pow(n) - &lo.pow(n)),
        Some(n) => {
            let (l, h) = gap_iv(&lo, &hi, n);
            PowerSup { witness: n, lower: l, upper: h.min(cheap), attained: false }
        }
        None => PowerSup { witness: 1, lower: &hi - &lo, upper: cheap, attained: false },
    }
}

/// Certified answer to `∃n: |v^n − u^n| ≥ eps`.
pub fn power_exceeds(u: &QuadPoint, v: &QuadPoint, eps: &QuadPoint) -> PowerDecision {
    let (lo, hi) = ordered(u, v);
    let one = QuadPoint::one();
    if !eps.is_positive() {
        return PowerDecision::Yes { n: 1, lower: &hi - &lo };
    }
    if lo == hi {
        return PowerDecision::No;
    }
    if lo.is_zero() {
        return if hi >= *eps { PowerDecision::Yes { n: 1, lower: hi } } else { PowerDecision::No };
    }
    if hi == one {
        if *eps >= one {
            return PowerDecision::No;
        }
        return match first_below(&lo, &(&one - eps)) {
            Some(n) => PowerDecision::Yes { n, lower: gap_iv(&lo, &hi, n).0.max(eps.clone()) },
            None => PowerDecision::Unknown,
        };
    }
    let cheap = (&hi - &lo).checked_div(&(&one - &hi)).expect("hi < 1");
    if cheap < *eps {
        return PowerDecision::No;
    }
    match peak(&lo, &hi) {
        Some(n) => match cmp_gap(&lo, &hi, n, eps) {
            Ordering::Less => PowerDecision::No,
            _ => PowerDecision::Yes { n, lower: gap_iv(&lo, &hi, n).0.max(eps.clone()) },
        },
        None => PowerDecision::Unknown,
    }
}

/// Brute-force float check: `max_{n ≤ limit} (v^n − u^n)`.
#[cfg(test)]
fn float_sup(u: f64, v: f64, limit: u32) -> (u32, f64) {
    let (lo, hi) = if u <= v { (u, v) } else { (v, u) };
    (1..=limit)
        .map(|n| (n, hi.powi(n as i32) - lo.powi(n as i32)))
        .fold((1, f64::MIN), |acc, x| if x.1 > acc.1 { x } else { acc })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QuadPoint {
        s.parse().unwrap()
    }

    #[test]
    fn peak_matches_float_search() {
        for (u, v) in [("1/2", "3/4"), ("9/10", "99/100"), ("1/3", "1/2"), ("7/10", "1/2*sqrt2")] {
            let s = power_sup(&q(u), &q(v));
            let (n, g) = float_sup(q(u).to_f64(), q(v).to_f64(), 5000);
            assert_eq!(s.witness, n, "{u} {v}");
            assert!((s.lower.to_f64() - g).abs() < 1e-12);
            assert!(s.attained);
        }
    }

    #[test]
    fn large_peak_uses_enclosures() {
        // u/v close to 1 pushes the maximiser past the exact limit
        let u = q("9990/10000");
        let v = q("9999/10000");
        let s = power_sup(&u, &v);
        let (n, g) = float_sup(u.to_f64(), v.to_f64(), 20000);
        assert_eq!(s.witness, n);
        assert!(s.lower <= s.upper);
        assert!(s.lower.to_f64() <= g + 1e-12 && g <= s.upper.to_f64() + 1e-12);
    }

    #[test]
    fn endpoint_one_is_unattained() {
        let s = power_sup(&q("1/2"), &q("1"));
        assert!(!s.attained);
        assert_eq!(s.upper, QuadPoint::one());
        assert_eq!(power_exceeds(&q("1/2"), &q("1"), &q("1")), PowerDecision::No);
        match power_exceeds(&q("1/2"), &q("1"), &q("7/8")) {
            PowerDecision::Yes { n, .. } => assert_eq!(n, 3),
            d => panic!("{d:?}"),
        }
        assert_eq!(power_sup(&q("0"), &q("1")).lower, QuadPoint::one());
    }

    #[test]
    fn decision_thresholds_are_exact() {
        // sup over n of (3/4)^n − (1/2)^n is 5/16 at n = 2 (and n = 1 gives 1/4)
        let (u, v) = (q("1/2"), q("3/4"));
        assert_eq!(power_sup(&u, &v).lower, q("5/16"));
        assert!(matches!(power_exceeds(&u, &v, &q("5/16")), PowerDecision::Yes { n: 2, .. }));
        assert_eq!(power_exceeds(&u, &v, &q("5/16").scale(&Rat::new(1001.into(), 1000.into()))), PowerDecision::No);
    }

    #[test]
    fn one_minus_hi_bound_holds() {
        let one = QuadPoint::one();
        for (u, v) in [("1/10", "2/10"), ("1/2", "51/100"), ("8/10", "9/10")] {
            let (u, v) = (q(u), q(v));
            let s = power_sup(&u, &v);
            let cheap = (&v - &u).checked_div(&(&one - &v)).unwrap();
            assert!(s.upper <= cheap);
        }
    }
}
