//! Single functions `f: X -> R` with exact evaluation.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{parse_rat, Point, QuadPoint, Rat, Space, Span};

/// Baire-class flag of a catalog entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regularity {
    Continuous,
    Baire1,
    NotBaire1,
}

/// Measurability flag of a catalog entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measurability {
    BaireMeasurable,
    AdversarialOracle,
}

/// The countable set off which a measurable entry is continuous.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Exceptional {
    None,
    AllRationals,
    Listed(Vec<QuadPoint>),
}

/// Affine pieces `m·x + c` on the open gaps between rational breakpoints,
/// with an explicit value at each breakpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseAffine {
    breaks: Vec<Rat>,
    pieces: Vec<(Rat, Rat)>,
    at_break: Vec<Rat>,
}

impl PiecewiseAffine {
    pub fn new(breaks: Vec<Rat>, pieces: Vec<(Rat, Rat)>, at_break: Vec<Rat>) -> Result<Self> {
        if pieces.len() != breaks.len() + 1 || at_break.len() != breaks.len() {
            return Err(Error::domain("piecewise-affine needs one more piece than breakpoints"));
        }
        let in_open_unit = |b: &Rat| b.is_positive() && b < &Rat::one();
        if !breaks.iter().all(in_open_unit) || breaks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::domain("breakpoints must be increasing inside (0,1)"));
        }
        Ok(PiecewiseAffine { breaks, pieces, at_break })
    }

    /// The sample entry used by the acceptance suite: a tent-like function with two jumps.
    pub fn sample() -> Self {
        let r = |s: &str| parse_rat(s).expect("literal");
        PiecewiseAffine::new(
            vec![r("1/3"), r("2/3")],
            vec![(r("2"), r("0")), (r("-1"), r("1")), (r("0"), r("1/4"))],
            vec![r("0"), r("1/2")],
        )
        .expect("valid sample")
    }

    pub fn breaks(&self) -> &[Rat] {
        &self.breaks
    }

    fn piece_value(&self, i: usize, x: &QuadPoint) -> QuadPoint {
        let (m, c) = &self.pieces[i];
        &x.scale(m) + &QuadPoint::from_rat(c.clone())
    }

    pub fn eval(&self, x: &QuadPoint) -> QuadPoint {
        let mut idx = 0;
        for (i, b) in self.breaks.iter().enumerate() {
            match x.cmp_rat(b) {
                Ordering::Equal => return QuadPoint::from_rat(self.at_break[i].clone()),
                Ordering::Greater => idx = i + 1,
                Ordering::Less => break,
            }
        }
        self.piece_value(idx, x)
    }

    pub fn max_slope(&self) -> Rat {
        self.pieces.iter().map(|(m, _)| m.abs()).max().unwrap_or_else(Rat::zero)
    }

    /// Oscillation `sup f − inf f` over a span inside `[0,1]`.
    pub fn osc_on(&self, span: &Span) -> QuadPoint {
        if span.is_empty() {
            return QuadPoint::zero();
        }
        let mut vals: Vec<QuadPoint> = Vec::new();
        // cut the span at breakpoints strictly inside it
        let mut cuts: Vec<(QuadPoint, Option<usize>)> = vec![(span.lo.clone(), None)];
        for (i, b) in self.breaks.iter().enumerate() {
            let bq = QuadPoint::from_rat(b.clone());
            if span.contains(&bq) {
                vals.push(QuadPoint::from_rat(self.at_break[i].clone()));
            }
            if bq > span.lo && bq < span.hi {
                cuts.push((bq, Some(i)));
            }
        }
        cuts.push((span.hi.clone(), None));
        for w in cuts.windows(2) {
            let (a, b) = (&w[0].0, &w[1].0);
            if a >= b {
                continue;
            }
            // the open gap (a,b) lies inside one piece
            let mid = (a + b).scale(&Rat::new(1.into(), 2.into()));
            let piece = self.piece_index(&mid);
            vals.push(self.piece_value(piece, a));
            vals.push(self.piece_value(piece, b));
        }
        if vals.is_empty() {
            // degenerate closed span at a single point
            vals.push(self.eval(&span.lo));
        }
        let max = vals.iter().max().cloned().expect("nonempty");
        let min = vals.iter().min().cloned().expect("nonempty");
        &max - &min
    }

    fn piece_index(&self, x: &QuadPoint) -> usize {
        self.breaks.iter().filter(|b| x.cmp_rat(b) == Ordering::Greater).count()
    }

    /// Oscillation at a point: the jump at a breakpoint, zero elsewhere.
    pub fn jump_at(&self, x: &QuadPoint) -> QuadPoint {
        for (i, b) in self.breaks.iter().enumerate() {
            if x.cmp_rat(b) == Ordering::Equal {
                let left = self.piece_value(i, x);
                let right = self.piece_value(i + 1, x);
                let v = QuadPoint::from_rat(self.at_break[i].clone());
                let hi = v.clone().max(left.clone()).max(right.clone());
                let lo = v.min(left).min(right);
                return &hi - &lo;
            }
        }
        QuadPoint::zero()
    }

    pub fn is_continuous(&self) -> bool {
        self.breaks.iter().all(|b| self.jump_at(&QuadPoint::from_rat(b.clone())).is_zero())
    }

    fn literal(&self) -> String {
        let mut parts = Vec::new();
        for i in 0..self.pieces.len() {
            let (m, c) = &self.pieces[i];
            parts.push(format!("{m},{c}"));
            if i < self.breaks.len() {
                parts.push(format!("@{}={}", self.breaks[i], self.at_break[i]));
            }
        }
        format!("pwa:{}", parts.join(";"))
    }

    fn parse(body: &str) -> Result<Self> {
        let mut breaks = Vec::new();
        let mut pieces = Vec::new();
        let mut at_break = Vec::new();
        for (k, tok) in body.split(';').enumerate() {
            let tok = tok.trim();
            if k % 2 == 0 {
                let (m, c) = tok
                    .split_once(',')
                    .ok_or_else(|| Error::parse(format!("bad affine piece {tok:?}")))?;
                pieces.push((parse_rat(m)?, parse_rat(c)?));
            } else {
                let t = tok
                    .strip_prefix('@')
                    .and_then(|t| t.split_once('='))
                    .ok_or_else(|| Error::parse(format!("bad breakpoint {tok:?}")))?;
                breaks.push(parse_rat(t.0)?);
                at_break.push(parse_rat(t.1)?);
            }
        }
        PiecewiseAffine::new(breaks, pieces, at_break)
    }
}

/// Continuous piecewise-linear interpolation through rational knots on `[0,1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lipschitz {
    knots: Vec<(Rat, Rat)>,
}

impl Lipschitz {
    pub fn new(knots: Vec<(Rat, Rat)>) -> Result<Self> {
        let ok = knots.len() >= 2
            && knots[0].0.is_zero()
            && knots.last().map(|k| k.0.is_one()).unwrap_or(false)
            && knots.windows(2).all(|w| w[0].0 < w[1].0);
        if !ok {
            return Err(Error::domain("knots must start at 0, end at 1 and increase"));
        }
        let l = Lipschitz { knots };
        if !l.constant().is_positive() {
            return Err(Error::domain("Lipschitz slope must be positive"));
        }
        Ok(l)
    }

    /// `x ↦ L·x`.
    pub fn linear(slope: Rat) -> Result<Self> {
        Self::new(vec![(Rat::zero(), Rat::zero()), (Rat::one(), slope)])
    }

    pub fn constant(&self) -> Rat {
        self.knots
            .windows(2)
            .map(|w| ((&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0)).abs())
            .max()
            .unwrap_or_else(Rat::zero)
    }

    pub fn as_pwa(&self) -> PiecewiseAffine {
        let mut breaks = Vec::new();
        let mut pieces = Vec::new();
        let mut at_break = Vec::new();
        for (i, w) in self.knots.windows(2).enumerate() {
            let m = (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0);
            let c = &w[0].1 - &m * &w[0].0;
            pieces.push((m, c));
            if i > 0 {
                breaks.push(w[0].0.clone());
                at_break.push(w[0].1.clone());
            }
        }
        PiecewiseAffine { breaks, pieces, at_break }
    }

    fn literal(&self) -> String {
        if self.knots.len() == 2 && self.knots[0].1.is_zero() {
            return format!("lip@{}", self.knots[1].1);
        }
        let ks: Vec<String> = self.knots.iter().map(|(x, y)| format!("{x}={y}")).collect();
        format!("lip:{}", ks.join(";"))
    }
}

/// A catalog function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FuncSpec {
    Lipschitz(Lipschitz),
    /// Characteristic function of `[c,1]`.
    StepIndicator(Rat),
    /// `x ↦ x^n`.
    PowerMember(u32),
    /// Characteristic function of the rationals (value 1 iff `b = 0`).
    DirichletQuad,
    /// Characteristic function of the eventually-zero sequences.
    DirichletCantor,
    PiecewiseAffine(PiecewiseAffine),
    /// The lazy non-measurable adversary; values come from a per-match oracle.
    NonMeasOracle,
}

impl FuncSpec {
    pub fn step(c: Rat) -> Result<Self> {
        if !(c.is_positive() && c < Rat::one()) {
            return Err(Error::domain(format!("step point {c} must lie in (0,1)")));
        }
        Ok(FuncSpec::StepIndicator(c))
    }

    pub fn lip(slope: Rat) -> Result<Self> {
        Ok(FuncSpec::Lipschitz(Lipschitz::linear(slope)?))
    }

    pub fn power(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("power exponent must be positive"));
        }
        Ok(FuncSpec::PowerMember(n))
    }

    pub fn space(&self) -> Space {
        match self {
            FuncSpec::DirichletCantor => Space::Cantor,
            _ => Space::Line,
        }
    }

    pub fn regularity(&self) -> Regularity {
        match self {
            FuncSpec::Lipschitz(_) | FuncSpec::PowerMember(_) => Regularity::Continuous,
            FuncSpec::StepIndicator(_) => Regularity::Baire1,
            FuncSpec::PiecewiseAffine(p) if p.is_continuous() => Regularity::Continuous,
            FuncSpec::PiecewiseAffine(_) => Regularity::Baire1,
            FuncSpec::DirichletQuad | FuncSpec::DirichletCantor | FuncSpec::NonMeasOracle => {
                Regularity::NotBaire1
            }
        }
    }

    pub fn is_baire1(&self) -> bool {
        self.regularity() != Regularity::NotBaire1
    }

    pub fn measurability(&self) -> Measurability {
        match self {
            FuncSpec::NonMeasOracle => Measurability::AdversarialOracle,
            _ => Measurability::BaireMeasurable,
        }
    }

    pub fn exceptional(&self) -> Exceptional {
        match self {
            FuncSpec::StepIndicator(c) => Exceptional::Listed(vec![QuadPoint::from_rat(c.clone())]),
            FuncSpec::PiecewiseAffine(p) if !p.is_continuous() => {
                Exceptional::Listed(p.breaks.iter().cloned().map(QuadPoint::from_rat).collect())
            }
            FuncSpec::DirichletQuad | FuncSpec::NonMeasOracle => Exceptional::AllRationals,
            _ => Exceptional::None,
        }
    }

    /// Points where the function misbehaves; offered to strategies as candidate witnesses.
    pub fn hotspots(&self) -> Vec<QuadPoint> {
        match self {
            FuncSpec::StepIndicator(c) => vec![QuadPoint::from_rat(c.clone())],
            FuncSpec::PiecewiseAffine(p) => p.breaks.iter().cloned().map(QuadPoint::from_rat).collect(),
            _ => Vec::new(),
        }
    }

    pub(crate) fn as_pwa(&self) -> Option<PiecewiseAffine> {
        match self {
            FuncSpec::Lipschitz(l) => Some(l.as_pwa()),
            FuncSpec::StepIndicator(c) => Some(PiecewiseAffine {
                breaks: vec![c.clone()],
                pieces: vec![(Rat::zero(), Rat::zero()), (Rat::zero(), Rat::one())],
                at_break: vec![Rat::one()],
            }),
            FuncSpec::PiecewiseAffine(p) => Some(p.clone()),
            _ => None,
        }
    }

    /// Exact value at a point of the carrier.
    pub fn eval(&self, p: &Point) -> Result<QuadPoint> {
        if p.space() != self.space() || !p.in_carrier() {
            return Err(Error::domain(format!("{p} is outside the carrier of {self}")));
        }
        let one = QuadPoint::one;
        let zero = QuadPoint::zero;
        match (self, p) {
            (FuncSpec::DirichletCantor, Point::Cantor(c)) => {
                Ok(if c.is_eventually_zero() { one() } else { zero() })
            }
            (FuncSpec::DirichletQuad, Point::Line(x)) => Ok(if x.is_rational() { one() } else { zero() }),
            (FuncSpec::PowerMember(n), Point::Line(x)) => Ok(x.pow(*n)),
            (FuncSpec::NonMeasOracle, _) => Err(Error::Classification(
                "the non-measurable oracle is evaluated through its match oracle".into(),
            )),
            (f, Point::Line(x)) => Ok(f.as_pwa().expect("piecewise entry").eval(x)),
            _ => Err(Error::domain(format!("{p} is outside the carrier of {self}"))),
        }
    }

    /// Global Lipschitz constant, for entries that have one.
    pub fn lipschitz_constant(&self) -> Option<Rat> {
        match self {
            FuncSpec::Lipschitz(l) => Some(l.constant()),
            FuncSpec::PowerMember(n) => Some(Rat::from_integer((*n).into())),
            FuncSpec::PiecewiseAffine(p) if p.is_continuous() => Some(p.max_slope()),
            _ => None,
        }
    }

    /// A radius and a constant `L` such that `f` is `L`-Lipschitz on the ball of that radius.
    pub fn local_modulus(&self, p: &Point) -> Option<(Rat, Rat)> {
        if let Some(l) = self.lipschitz_constant() {
            return Some((Rat::one(), l));
        }
        let x = p.as_line()?;
        let pwa = self.as_pwa()?;
        let mut nearest: Option<QuadPoint> = None;
        for b in &pwa.breaks {
            let d = (x - &QuadPoint::from_rat(b.clone())).abs();
            if d.is_zero() {
                return None;
            }
            nearest = Some(match nearest {
                Some(n) => n.min(d),
                None => d,
            });
        }
        let radius = nearest.map(|d| d.rational_lower_bound()).unwrap_or_else(Rat::one);
        Some((radius, pwa.max_slope()))
    }

    /// `sup f − inf f` over a line span; cylinders for the Cantor entry.
    pub fn osc_on_span(&self, span: &Span) -> Result<QuadPoint> {
        match self {
            FuncSpec::DirichletQuad => Ok(if span.is_empty() || span.lo == span.hi {
                QuadPoint::zero()
            } else {
                QuadPoint::one()
            }),
            FuncSpec::PowerMember(n) => {
                if span.is_empty() {
                    return Ok(QuadPoint::zero());
                }
                Ok(&span.hi.pow(*n) - &span.lo.pow(*n))
            }
            FuncSpec::DirichletCantor | FuncSpec::NonMeasOracle => {
                Err(Error::domain(format!("{self} has no span oscillation")))
            }
            f => Ok(f.as_pwa().expect("piecewise entry").osc_on(span)),
        }
    }

    /// Oscillation at a point (zero exactly at continuity points).
    pub fn jump_at(&self, p: &Point) -> Result<QuadPoint> {
        match (self, p) {
            (FuncSpec::DirichletQuad, Point::Line(_)) | (FuncSpec::DirichletCantor, Point::Cantor(_)) => {
                Ok(QuadPoint::one())
            }
            (FuncSpec::PowerMember(_), Point::Line(_)) => Ok(QuadPoint::zero()),
            (FuncSpec::NonMeasOracle, _) => Ok(QuadPoint::one()),
            (f, Point::Line(x)) => Ok(f.as_pwa().expect("piecewise entry").jump_at(x)),
            _ => Err(Error::domain(format!("{p} is outside the carrier of {self}"))),
        }
    }

    /// Stable catalog identifier.
    pub fn id(&self) -> String {
        match self {
            FuncSpec::Lipschitz(l) => l.literal(),
            FuncSpec::StepIndicator(c) => format!("step@{c}"),
            FuncSpec::PowerMember(n) => format!("pow@{n}"),
            FuncSpec::DirichletQuad => "dirichlet-quad".into(),
            FuncSpec::DirichletCantor => "dirichlet-cantor".into(),
            FuncSpec::PiecewiseAffine(p) if *p == PiecewiseAffine::sample() => "pwa-sample".into(),
            FuncSpec::PiecewiseAffine(p) => p.literal(),
            FuncSpec::NonMeasOracle => "nonmeas-oracle".into(),
        }
    }

    pub fn parse_id(id: &str) -> Result<Self> {
        let id = id.trim();
        match id {
            "dirichlet-quad" => return Ok(FuncSpec::DirichletQuad),
            "dirichlet-cantor" => return Ok(FuncSpec::DirichletCantor),
            "nonmeas-oracle" => return Ok(FuncSpec::NonMeasOracle),
            "pwa-sample" => return Ok(FuncSpec::PiecewiseAffine(PiecewiseAffine::sample())),
            _ => {}
        }
        if let Some(c) = id.strip_prefix("step@") {
            return FuncSpec::step(parse_rat(c)?);
        }
        if let Some(l) = id.strip_prefix("lip@") {
            return FuncSpec::lip(parse_rat(l)?);
        }
        if let Some(n) = id.strip_prefix("pow@") {
            let n: u32 = n.parse().map_err(|_| Error::parse(format!("bad exponent in {id:?}")))?;
            return FuncSpec::power(n);
        }
        if let Some(body) = id.strip_prefix("pwa:") {
            return Ok(FuncSpec::PiecewiseAffine(PiecewiseAffine::parse(body)?));
        }
        if let Some(body) = id.strip_prefix("lip:") {
            let knots = body
                .split(';')
                .map(|k| {
                    let (x, y) = k
                        .split_once('=')
                        .ok_or_else(|| Error::parse(format!("bad knot {k:?}")))?;
                    Ok((parse_rat(x)?, parse_rat(y)?))
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok(FuncSpec::Lipschitz(Lipschitz::new(knots)?));
        }
        Err(Error::Config(format!("unknown catalog function {id:?}")))
    }
}

impl fmt::Display for FuncSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn p(s: &str) -> Point {
        s.parse().unwrap()
    }

    #[test]
    fn eval_examples() {
        let dq = FuncSpec::DirichletQuad;
        assert_eq!(dq.eval(&p("1/2")).unwrap(), QuadPoint::one());
        assert_eq!(dq.eval(&p("1/2*sqrt2")).unwrap(), QuadPoint::zero());
        let s = FuncSpec::step(rat(1, 2)).unwrap();
        assert_eq!(s.eval(&p("1/4")).unwrap(), QuadPoint::zero());
        assert_eq!(s.eval(&p("1/2")).unwrap(), QuadPoint::one());
        let dc = FuncSpec::DirichletCantor;
        assert_eq!(dc.eval(&p("0110:0")).unwrap(), QuadPoint::one());
        assert_eq!(dc.eval(&p("0:01")).unwrap(), QuadPoint::zero());
        assert!(dq.eval(&p(":0")).is_err());
        assert!(s.eval(&p("3/2")).is_err());
    }

    #[test]
    fn sample_pwa_values_and_jumps() {
        let f = FuncSpec::parse_id("pwa-sample").unwrap();
        assert_eq!(f.eval(&p("1/6")).unwrap(), QuadPoint::from_ratio(1, 3));
        assert_eq!(f.eval(&p("1/3")).unwrap(), QuadPoint::zero());
        assert_eq!(f.eval(&p("1/2")).unwrap(), QuadPoint::from_ratio(1, 2));
        assert_eq!(f.eval(&p("1")).unwrap(), QuadPoint::from_ratio(1, 4));
        // at 1/3: left limit 2/3, value 0, right limit 2/3
        assert_eq!(f.jump_at(&p("1/3")).unwrap(), QuadPoint::from_ratio(2, 3));
        assert_eq!(f.regularity(), Regularity::Baire1);
    }

    #[test]
    fn ids_round_trip() {
        for id in ["step@1/2", "lip@2", "pow@5", "dirichlet-quad", "dirichlet-cantor", "pwa-sample", "pwa:1,0;@1/2=1;0,1", "lip:0=0;1/2=1;1=0"] {
            assert_eq!(FuncSpec::parse_id(id).unwrap().id(), id);
        }
        assert!(FuncSpec::parse_id("step@3/2").is_err());
        assert!(FuncSpec::parse_id("nope").is_err());
    }

    #[test]
    fn step_oscillation_on_spans() {
        let s = FuncSpec::step(rat(1, 2)).unwrap();
        let span = |lo: &str, hi: &str| Span {
            lo: lo.parse().unwrap(),
            lo_closed: false,
            hi: hi.parse().unwrap(),
            hi_closed: false,
        };
        assert_eq!(s.osc_on_span(&span("0", "1/4")).unwrap(), QuadPoint::zero());
        assert_eq!(s.osc_on_span(&span("3/8", "5/8")).unwrap(), QuadPoint::one());
        // open at 1/2: the whole span sits on the right piece
        assert_eq!(s.osc_on_span(&span("1/2", "3/4")).unwrap(), QuadPoint::zero());
    }
}
