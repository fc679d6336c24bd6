//! Horizon-truncated equi-convergence and equi-Cauchy conditions.
//!
//! A sequence `⟨x_n⟩` stands for the indexed family `⟨f(x_n) : f ∈ F⟩`.
//! "There is an N" is read as "N = ⌊H/2⌋ works", which is equivalent for a
//! horizon `H` because both conditions only get easier as N grows.

use crate::catalog::{FamilySpec, GapDecision};
use crate::error::Result;
use crate::exactnum::{Point, Rat};

fn certified_below(f: &FamilySpec, u: &Point, v: &Point, eps: &Rat) -> Result<bool> {
    Ok(matches!(f.exceeds(u, v, eps)?, GapDecision::No))
}

/// `∀ n,m ≥ from, ∀ f ∈ F: |f(x_n) − f(x_m)| < ε`, certified by the sup oracle.
pub fn check_equi_cauchy_from(f: &FamilySpec, xs: &[Point], eps: &Rat, from: usize) -> Result<bool> {
    for n in from..xs.len() {
        for m in n + 1..xs.len() {
            if !certified_below(f, &xs[n], &xs[m], eps)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `∀ n ≥ from, ∀ f ∈ F: |f(x_n) − f(x)| < ε`.
pub fn check_equi_conv_from(f: &FamilySpec, xs: &[Point], target: &Point, eps: &Rat, from: usize) -> Result<bool> {
    for x in xs.iter().skip(from) {
        if !certified_below(f, x, target, eps)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn check_equi_cauchy(f: &FamilySpec, xs: &[Point], eps: &Rat) -> Result<bool> {
    check_equi_cauchy_from(f, xs, eps, xs.len() / 2)
}

pub fn check_equi_conv(f: &FamilySpec, xs: &[Point], target: &Point, eps: &Rat) -> Result<bool> {
    check_equi_conv_from(f, xs, target, eps, xs.len() / 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn constant_sequences_pass_both() {
        let xs = vec![Point::rat(1, 3); 10];
        for f in [FamilySpec::StepFamily, FamilySpec::PowerFamily] {
            assert!(check_equi_cauchy(&f, &xs, &rat(1, 8)).unwrap());
            assert!(check_equi_conv(&f, &xs, &Point::rat(1, 3), &rat(1, 8)).unwrap());
        }
    }

    #[test]
    fn step_family_alternation_fails_both() {
        // x_n alternates across 1/2 at shrinking distance
        let xs: Vec<Point> = (0..12)
            .map(|n| {
                let h = crate::exactnum::pow2_neg(n + 2);
                let half = rat(1, 2);
                Point::line(crate::exactnum::QuadPoint::from_rat(if n % 2 == 0 { half - h } else { half + h }))
            })
            .collect();
        let f = FamilySpec::StepFamily;
        assert!(!check_equi_cauchy(&f, &xs, &rat(1, 2)).unwrap());
        assert!(!check_equi_conv(&f, &xs, &Point::rat(1, 2), &rat(1, 2)).unwrap());
        assert!(f.exceeds(&xs[6], &xs[7], &rat(1, 1)).unwrap().is_yes());
    }
}
