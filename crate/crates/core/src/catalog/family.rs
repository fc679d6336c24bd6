//! Indexed families `F ⊆ Y^X` with exact sup oracles.

use std::fmt;

use num_traits::One;

use super::func::{FuncSpec, Regularity};
use super::power::{power_exceeds, power_sup, PowerDecision};
use crate::error::{Error, Result};
use crate::exactnum::{pow2_neg, Ball, Point, QuadPoint, Rat, Space, Span};

/// A member of a family.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Member {
    Power(u32),
    Step(Rat),
    Index(usize),
}

impl fmt::Display for Member {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Member::Power(n) => write!(f, "pow@{n}"),
            Member::Step(q) => write!(f, "step@{q}"),
            Member::Index(i) => write!(f, "#{i}"),
        }
    }
}

/// Open region of the carrier: a line span or a Cantor cylinder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Region {
    Span(Span),
    Cylinder(Vec<bool>),
}

impl Region {
    pub fn of_ball(b: &Ball) -> Region {
        match b.span() {
            Some(s) => Region::Span(s),
            None => Region::Cylinder(b.cylinder_prefix().expect("cantor ball")),
        }
    }

    pub fn space(&self) -> Space {
        match self {
            Region::Span(_) => Space::Line,
            Region::Cylinder(_) => Space::Cantor,
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        match (self, p) {
            (Region::Span(s), Point::Line(x)) => s.contains(x),
            (Region::Cylinder(pre), Point::Cantor(c)) => c.has_prefix(pre),
            _ => false,
        }
    }

    /// Has the region more than one point?
    pub fn is_open_nonempty(&self) -> bool {
        match self {
            Region::Span(s) => s.lo < s.hi,
            Region::Cylinder(_) => true,
        }
    }
}

/// Certified bracket on an oscillation value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OscBound {
    pub lower: QuadPoint,
    pub upper: QuadPoint,
}

impl OscBound {
    pub fn exact(v: QuadPoint) -> Self {
        OscBound { lower: v.clone(), upper: v }
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }
}

/// Bracket on `sup_{f∈F} |f(u) − f(v)|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapSup {
    pub lower: QuadPoint,
    pub witness: Member,
    pub upper: QuadPoint,
    pub attained: bool,
}

/// Answer to "does some member separate the pair by at least ε".
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GapDecision {
    Yes { member: Member, gap: QuadPoint },
    No,
    Unknown,
}

impl GapDecision {
    pub fn is_yes(&self) -> bool {
        matches!(self, GapDecision::Yes { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    PowerFamily,
    StepFamily,
    Finite(Vec<FuncSpec>),
}

fn line(p: &Point) -> Result<&QuadPoint> {
    p.as_line()
        .filter(|_| p.in_carrier())
        .ok_or_else(|| Error::domain(format!("{p} is not a point of [0,1]")))
}

impl FamilySpec {
    pub fn single(f: FuncSpec) -> Self {
        FamilySpec::Finite(vec![f])
    }

    pub fn space(&self) -> Space {
        match self {
            FamilySpec::Finite(fs) => fs.first().map(|f| f.space()).unwrap_or(Space::Line),
            _ => Space::Line,
        }
    }

    pub fn is_equi_baire1(&self) -> bool {
        match self {
            FamilySpec::PowerFamily => true,
            FamilySpec::StepFamily => false,
            FamilySpec::Finite(fs) => fs.iter().all(|f| f.is_baire1()),
        }
    }

    pub fn is_equicontinuous(&self) -> bool {
        match self {
            FamilySpec::Finite(fs) => fs.iter().all(|f| f.regularity() == Regularity::Continuous),
            _ => false,
        }
    }

    pub fn has_oracle_member(&self) -> bool {
        matches!(self, FamilySpec::Finite(fs) if fs.contains(&FuncSpec::NonMeasOracle))
    }

    pub fn members(&self) -> Option<&[FuncSpec]> {
        match self {
            FamilySpec::Finite(fs) => Some(fs),
            _ => None,
        }
    }

    /// Points where the family misbehaves.
    pub fn hotspots(&self) -> Vec<QuadPoint> {
        match self {
            FamilySpec::PowerFamily => vec![QuadPoint::one()],
            FamilySpec::StepFamily => Vec::new(),
            FamilySpec::Finite(fs) => {
                let mut hs: Vec<QuadPoint> = fs.iter().flat_map(|f| f.hotspots()).collect();
                hs.sort();
                hs.dedup();
                hs
            }
        }
    }

    pub fn eval(&self, m: &Member, p: &Point) -> Result<QuadPoint> {
        match (self, m) {
            (FamilySpec::PowerFamily, Member::Power(n)) => Ok(line(p)?.pow(*n)),
            (FamilySpec::StepFamily, Member::Step(q)) => {
                Ok(if line(p)?.cmp_rat(q).is_lt() { QuadPoint::zero() } else { QuadPoint::one() })
            }
            (FamilySpec::Finite(fs), Member::Index(i)) => fs
                .get(*i)
                .ok_or_else(|| Error::domain(format!("no member {m}")))?
                .eval(p),
            _ => Err(Error::domain(format!("{m} is not a member of {self}"))),
        }
    }

    /// Certified bracket on `sup_f |f(u) − f(v)|`.
    pub fn sup_gap(&self, u: &Point, v: &Point) -> Result<GapSup> {
        match self {
            FamilySpec::PowerFamily => {
                let s = power_sup(line(u)?, line(v)?);
                Ok(GapSup { lower: s.lower, witness: Member::Power(s.witness), upper: s.upper, attained: s.attained })
            }
            FamilySpec::StepFamily => {
                let (x, y) = (line(u)?, line(v)?);
                if x == y {
                    let q = Rat::new(1.into(), 2.into());
                    let z = QuadPoint::zero();
                    return Ok(GapSup { lower: z.clone(), witness: Member::Step(q), upper: z, attained: true });
                }
                let q = step_splitter(x, y);
                let one = QuadPoint::one();
                Ok(GapSup { lower: one.clone(), witness: Member::Step(q), upper: one, attained: true })
            }
            FamilySpec::Finite(fs) => {
                let mut best: Option<(QuadPoint, usize)> = None;
                for (i, f) in fs.iter().enumerate() {
                    let g = (&f.eval(u)? - &f.eval(v)?).abs();
                    if best.as_ref().map(|b| g > b.0).unwrap_or(true) {
                        best = Some((g, i));
                    }
                }
                let (g, i) = best.ok_or_else(|| Error::domain("empty family"))?;
                Ok(GapSup { lower: g.clone(), witness: Member::Index(i), upper: g, attained: true })
            }
        }
    }

    /// Certified answer to `∃f ∈ F: |f(u) − f(v)| ≥ eps`.
    pub fn exceeds(&self, u: &Point, v: &Point, eps: &Rat) -> Result<GapDecision> {
        let e = QuadPoint::from_rat(eps.clone());
        match self {
            FamilySpec::PowerFamily => Ok(match power_exceeds(line(u)?, line(v)?, &e) {
                PowerDecision::Yes { n, lower } => GapDecision::Yes { member: Member::Power(n), gap: lower },
                PowerDecision::No => GapDecision::No,
                PowerDecision::Unknown => GapDecision::Unknown,
            }),
            _ => {
                let s = self.sup_gap(u, v)?;
                Ok(if s.lower >= e {
                    GapDecision::Yes { member: s.witness, gap: s.lower }
                } else {
                    GapDecision::No
                })
            }
        }
    }

    /// `sup{|f(u) − f(v)| : u, v ∈ U, f ∈ F}`.
    pub fn osc_set(&self, region: &Region) -> Result<OscBound> {
        let nonempty = match region {
            Region::Span(s) => !s.is_empty(),
            Region::Cylinder(_) => true,
        };
        if !nonempty {
            return Err(Error::domain("oscillation over an empty region"));
        }
        if region.space() != self.space() {
            return Err(Error::domain(format!("region lies outside the carrier of {self}")));
        }
        match (self, region) {
            (FamilySpec::PowerFamily, Region::Span(s)) => {
                let g = power_sup(&s.lo, &s.hi);
                Ok(OscBound { lower: g.lower, upper: g.upper })
            }
            (FamilySpec::StepFamily, Region::Span(s)) => Ok(OscBound::exact(if s.lo < s.hi {
                QuadPoint::one()
            } else {
                QuadPoint::zero()
            })),
            (FamilySpec::Finite(fs), Region::Span(s)) => {
                let mut best = QuadPoint::zero();
                for f in fs {
                    best = best.max(f.osc_on_span(s)?);
                }
                Ok(OscBound::exact(best))
            }
            (FamilySpec::Finite(fs), Region::Cylinder(_)) => {
                // the only Cantor entry is the Dirichlet indicator, which takes both values on every cylinder
                let v = if fs.iter().any(|f| f.space() == Space::Cantor) { QuadPoint::one() } else { QuadPoint::zero() };
                Ok(OscBound::exact(v))
            }
            _ => Err(Error::domain("region lies outside the carrier")),
        }
    }

    /// `inf_h osc_set(B(x,h))`, exact for catalog entries.
    pub fn osc_point(&self, p: &Point) -> Result<QuadPoint> {
        if !p.in_carrier() || p.space() != self.space() {
            return Err(Error::domain(format!("{p} is outside the carrier of {self}")));
        }
        match self {
            FamilySpec::PowerFamily => Ok(if *line(p)? == QuadPoint::one() { QuadPoint::one() } else { QuadPoint::zero() }),
            FamilySpec::StepFamily => Ok(QuadPoint::one()),
            FamilySpec::Finite(fs) => {
                let mut best = QuadPoint::zero();
                for f in fs {
                    best = best.max(f.jump_at(p)?);
                }
                Ok(best)
            }
        }
    }

    /// Bracket on `osc_point` from shrinking balls `B(x, 2^-k)`, `k ≤ depth`.
    ///
    /// The upper end is the oscillation over the smallest ball, or 0 when a
    /// local Lipschitz bound covers that ball (then `osc ≤ 2Lh` for every
    /// small `h`). The lower end is the largest one-point jump of a member,
    /// which every ball sees.
    pub fn osc_point_estimate(&self, p: &Point, depth: u32) -> Result<OscBound> {
        let h = pow2_neg(i64::from(depth));
        let ball = Ball::open(p.clone(), h.clone())?;
        let mut upper = self.osc_set(&Region::of_ball(&ball))?.upper;
        if matches!(self.local_modulus(p), Some((r, _)) if h <= r) {
            upper = QuadPoint::zero();
        }
        let lower = match self {
            FamilySpec::StepFamily => QuadPoint::one(),
            FamilySpec::PowerFamily => self.osc_point(p)?,
            FamilySpec::Finite(fs) => {
                let mut best = QuadPoint::zero();
                for f in fs {
                    best = best.max(f.jump_at(p)?);
                }
                best
            }
        };
        Ok(OscBound { lower: lower.min(upper.clone()), upper })
    }

    /// Radius and Lipschitz constant valid for every member near `p`.
    pub fn local_modulus(&self, p: &Point) -> Option<(Rat, Rat)> {
        match self {
            FamilySpec::Finite(fs) => {
                let mut acc: Option<(Rat, Rat)> = None;
                for f in fs {
                    let (r, l) = f.local_modulus(p)?;
                    acc = Some(match acc {
                        None => (r, l),
                        Some((r0, l0)) => (r0.min(r), l0.max(l)),
                    });
                }
                acc
            }
            _ => None,
        }
    }

    pub fn id(&self) -> String {
        match self {
            FamilySpec::PowerFamily => "power-family".into(),
            FamilySpec::StepFamily => "step-family".into(),
            FamilySpec::Finite(fs) => {
                let ids: Vec<String> = fs.iter().map(|f| f.id()).collect();
                format!("finite:{}", ids.join("|"))
            }
        }
    }

    pub fn parse_id(id: &str) -> Result<Self> {
        let id = id.trim();
        match id {
            "power-family" => Ok(FamilySpec::PowerFamily),
            "step-family" => Ok(FamilySpec::StepFamily),
            _ => {
                let body = id
                    .strip_prefix("finite:")
                    .ok_or_else(|| Error::Config(format!("unknown catalog family {id:?}")))?;
                let fs = body.split('|').map(FuncSpec::parse_id).collect::<Result<Vec<_>>>()?;
                if fs.is_empty() || fs.iter().any(|f| f.space() != fs[0].space()) {
                    return Err(Error::Config("family members must share one carrier".into()));
                }
                Ok(FamilySpec::Finite(fs))
            }
        }
    }
}

/// A rational `q ∈ (0,1)` with `min(x,y) < q ≤ max(x,y)`, so `χ_[q,1]` separates them.
fn step_splitter(x: &QuadPoint, y: &QuadPoint) -> Rat {
    let (lo, hi) = if x < y { (x, y) } else { (y, x) };
    match hi.as_rat() {
        Some(h) if h < &Rat::one() => h.clone(),
        _ => QuadPoint::rational_between(lo, hi),
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

/// Either a single function or a family; what a match is played on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Func(FuncSpec),
    Family(FamilySpec),
}

impl Target {
    pub fn parse_id(id: &str) -> Result<Self> {
        match FamilySpec::parse_id(id) {
            Ok(f) => Ok(Target::Family(f)),
            Err(_) => FuncSpec::parse_id(id).map(Target::Func),
        }
    }

    pub fn id(&self) -> String {
        match self {
            Target::Func(f) => f.id(),
            Target::Family(f) => f.id(),
        }
    }

    /// The family view: a single function is the singleton family.
    pub fn family(&self) -> FamilySpec {
        match self {
            Target::Func(f) => FamilySpec::single(f.clone()),
            Target::Family(f) => f.clone(),
        }
    }

    pub fn func(&self) -> Option<&FuncSpec> {
        match self {
            Target::Func(f) => Some(f),
            Target::Family(FamilySpec::Finite(fs)) if fs.len() == 1 => fs.first(),
            _ => None,
        }
    }

    pub fn space(&self) -> Space {
        match self {
            Target::Func(f) => f.space(),
            Target::Family(f) => f.space(),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}
