//! ε-gauge families: `(ε, x) ↦ δ_ε(x) > 0`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::family::FamilySpec;
use super::func::FuncSpec;
use crate::error::{Error, Result};
use crate::exactnum::{pow2_neg, Point, QuadPoint, Rat};

type GaugeFn = dyn Fn(&Rat, &Point) -> Result<Rat> + Send + Sync;

/// A gauge family with its monotone and shrink flags.
#[derive(Clone)]
pub struct GaugeFamily {
    eval: Arc<GaugeFn>,
    monotone: bool,
    shrink: bool,
    label: String,
}

impl fmt::Debug for GaugeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GaugeFamily({}, monotone={}, shrink={})", self.label, self.monotone, self.shrink)
    }
}

/// `N_ε`: 1 for `ε ≥ 1`, else the `N` with `1/N ≤ ε < 1/(N−1)`.
pub fn n_eps(eps: &Rat) -> Result<u64> {
    if !eps.is_positive() {
        return Err(Error::domain(format!("ε = {eps} must be positive")));
    }
    if eps >= &Rat::one() {
        return Ok(1);
    }
    let n = eps.recip().ceil().to_integer();
    u64::try_from(n).map_err(|_| Error::domain("ε too small"))
}

fn inv(n: u64) -> Rat {
    Rat::new(BigInt::one(), BigInt::from(n))
}

fn lower_rat(q: &QuadPoint) -> Rat {
    q.rational_lower_bound()
}

impl GaugeFamily {
    pub fn new<F>(label: impl Into<String>, monotone: bool, shrink: bool, f: F) -> Self
    where
        F: Fn(&Rat, &Point) -> Result<Rat> + Send + Sync + 'static,
    {
        GaugeFamily { eval: Arc::new(f), monotone, shrink, label: label.into() }
    }

    /// `δ ≡ c`; handy for negative controls.
    pub fn constant(c: Rat) -> Self {
        let label = format!("const@{c}");
        GaugeFamily::new(label, true, false, move |_, _| Ok(c.clone()))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn is_monotone(&self) -> bool {
        self.monotone
    }

    pub fn is_shrink(&self) -> bool {
        self.shrink
    }

    /// `δ_ε(x)`, checked positive.
    pub fn delta(&self, eps: &Rat, x: &Point) -> Result<Rat> {
        if !eps.is_positive() {
            return Err(Error::domain(format!("ε = {eps} must be positive")));
        }
        let d = (self.eval)(eps, x)?;
        if !d.is_positive() {
            return Err(Error::domain(format!("gauge {} returned nonpositive {d} at {x}", self.label)));
        }
        Ok(d)
    }

    /// `δ_{1/n}(x)`.
    pub fn at_index(&self, n: u64, x: &Point) -> Result<Rat> {
        self.delta(&inv(n.max(1)), x)
    }

    /// The catalog's analytic gauge for a Baire-1 function or equi-Baire-1 family.
    pub fn analytic(target: &FamilySpec) -> Result<Self> {
        if !target.is_equi_baire1() {
            return Err(Error::Classification(format!("{target} has no common gauge family")));
        }
        let t = target.clone();
        Ok(GaugeFamily::new(format!("analytic({target})"), true, false, move |eps, x| analytic_delta(&t, eps, x)))
    }
}

fn analytic_delta(target: &FamilySpec, eps: &Rat, x: &Point) -> Result<Rat> {
    match target {
        FamilySpec::PowerFamily => {
            let q = x.as_line().ok_or_else(|| Error::domain("power family lives on [0,1]"))?;
            let e = eps.clone().min(Rat::one());
            let one = QuadPoint::one();
            if *q == one {
                Ok(e)
            } else {
                Ok(lower_rat(&(&one - q).scale(&e)))
            }
        }
        FamilySpec::StepFamily => Err(Error::Classification("step-family has no common gauge family".into())),
        FamilySpec::Finite(fs) => {
            let mut best: Option<Rat> = None;
            for f in fs {
                let d = func_delta(f, eps, x)?;
                best = Some(match best {
                    Some(b) => b.min(d),
                    None => d,
                });
            }
            best.ok_or_else(|| Error::domain("empty family"))
        }
    }
}

/// Analytic gauge of one Baire-1 catalog function.
pub fn func_delta(f: &FuncSpec, eps: &Rat, x: &Point) -> Result<Rat> {
    if !f.is_baire1() {
        return Err(Error::Classification(format!("{f} is not Baire 1")));
    }
    if let FuncSpec::StepIndicator(c) = f {
        let q = x.as_line().ok_or_else(|| Error::domain("step lives on [0,1]"))?;
        let d = (q - &QuadPoint::from_rat(c.clone())).abs();
        return Ok(if d.is_zero() { Rat::one() } else { lower_rat(&d) });
    }
    if let Some(l) = f.lipschitz_constant() {
        return Ok(if l.is_zero() { Rat::one() } else { eps / l });
    }
    let pwa = f.as_pwa().ok_or_else(|| Error::Classification(format!("no analytic gauge for {f}")))?;
    let q = x.as_line().ok_or_else(|| Error::domain("piecewise entries live on [0,1]"))?;
    let mut at_break = false;
    let mut nearest: Option<QuadPoint> = None;
    for b in pwa.breaks() {
        let d = (q - &QuadPoint::from_rat(b.clone())).abs();
        if d.is_zero() {
            at_break = true;
            continue;
        }
        nearest = Some(match nearest {
            Some(n) => n.min(d),
            None => d,
        });
    }
    let near = nearest.map(|d| lower_rat(&d)).unwrap_or_else(Rat::one).min(Rat::one());
    if at_break {
        return Ok(near);
    }
    let l = pwa.max_slope();
    Ok(if l.is_zero() { near } else { near.min(eps / l) })
}

/// `Γ'(ε,x) = min_{n ≤ N_ε} Γ(1/n, x)`; monotone in ε.
pub fn normalize_gauges(g: &GaugeFamily) -> GaugeFamily {
    let inner = g.clone();
    let fast = g.monotone;
    GaugeFamily::new(format!("normalized({})", g.label), true, g.shrink, move |eps, x| {
        let n = n_eps(eps)?;
        if fast {
            return inner.at_index(n, x);
        }
        let mut best = inner.at_index(1, x)?;
        for k in 2..=n {
            best = best.min(inner.at_index(k, x)?);
        }
        Ok(best)
    })
}

/// `Γ''(1/n,x) = min(Γ(1/n,x), 2^(−n−1))`, read through `N_ε` at other ε.
///
/// A family without the monotone flag is normalized first.
pub fn shrink_gauges(g: &GaugeFamily) -> GaugeFamily {
    let inner = if g.monotone { g.clone() } else { normalize_gauges(g) };
    GaugeFamily::new(format!("shrunk({})", g.label), true, true, move |eps, x| {
        let n = n_eps(eps)?;
        let d = inner.at_index(n, x)?;
        Ok(d.min(pow2_neg(n as i64 + 1)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn p(s: &str) -> Point {
        s.parse().unwrap()
    }

    fn step_half() -> FamilySpec {
        FamilySpec::single(FuncSpec::step(rat(1, 2)).unwrap())
    }

    #[test]
    fn analytic_examples() {
        let g = GaugeFamily::analytic(&step_half()).unwrap();
        assert_eq!(g.delta(&rat(1, 4), &p("3/4")).unwrap(), rat(1, 4));
        assert_eq!(g.delta(&rat(7, 3), &p("1/2")).unwrap(), rat(1, 1));
        let pf = GaugeFamily::analytic(&FamilySpec::PowerFamily).unwrap();
        assert_eq!(pf.delta(&rat(1, 2), &p("3/4")).unwrap(), rat(1, 8));
        assert_eq!(pf.delta(&rat(3, 1), &p("1")).unwrap(), rat(1, 1));
        let lip = GaugeFamily::analytic(&FamilySpec::single(FuncSpec::lip(rat(2, 1)).unwrap())).unwrap();
        assert_eq!(lip.delta(&rat(1, 4), &p("1/3")).unwrap(), rat(1, 8));
        assert!(GaugeFamily::analytic(&FamilySpec::StepFamily).is_err());
        assert!(GaugeFamily::analytic(&FamilySpec::single(FuncSpec::DirichletQuad)).is_err());
    }

    #[test]
    fn n_eps_values() {
        assert_eq!(n_eps(&rat(2, 1)).unwrap(), 1);
        assert_eq!(n_eps(&rat(1, 1)).unwrap(), 1);
        assert_eq!(n_eps(&rat(2, 5)).unwrap(), 3);
        assert_eq!(n_eps(&rat(1, 3)).unwrap(), 3);
        assert!(n_eps(&rat(0, 1)).is_err());
    }

    #[test]
    fn normalize_takes_prefix_minimum() {
        // deliberately non-monotone: δ_{1/2} is the smallest
        let g = GaugeFamily::new("bumpy", false, false, |eps, _| {
            Ok(if *eps == rat(1, 2) { rat(1, 100) } else { rat(1, 10) })
        });
        let n = normalize_gauges(&g);
        assert_eq!(n.delta(&rat(2, 1), &p("0")).unwrap(), rat(1, 10));
        assert_eq!(n.delta(&rat(2, 5), &p("0")).unwrap(), rat(1, 100));
        assert!(n.is_monotone());
        assert!(normalize_gauges(&g).delta(&rat(0, 1), &p("0")).is_err());
    }

    #[test]
    fn shrink_examples() {
        let one = GaugeFamily::constant(rat(1, 1));
        assert_eq!(shrink_gauges(&one).delta(&rat(1, 3), &p("0")).unwrap(), rat(1, 16));
        let small = GaugeFamily::constant(rat(1, 100));
        assert_eq!(shrink_gauges(&small).delta(&rat(1, 2), &p("0")).unwrap(), rat(1, 100));
    }
}
