//! Finite-horizon referee with exactly re-checkable certificates.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::engine::Evaluator;
use super::game::{GameKind, Side, Violation};
use super::transcript::Transcript;
use crate::catalog::{FamilySpec, GapDecision};
use crate::error::Result;
use crate::exactnum::{cmp_dist, dist, rat_serde, Point, QuadPoint, Rat};
use crate::setalgebra::Request;

/// Where the limit used for a residual came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitSource {
    DeclaredByI,
    DeclaredByII,
    Stabilized,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Values at rounds `i < j` of the final window differ by `gap ≥ eps`.
    ValueGap {
        i: usize,
        j: usize,
        member: Option<String>,
        gap: QuadPoint,
        #[serde(with = "rat_serde")]
        eps: Rat,
    },
    /// I-moves at rounds `i < j` of the final window are `dist ≥ eps` apart.
    PointGap {
        i: usize,
        j: usize,
        dist: QuadPoint,
        #[serde(with = "rat_serde")]
        eps: Rat,
    },
    /// Every value of the final window is within `residual < eps` of the value at `limit`.
    Residual {
        limit: Point,
        source: LimitSource,
        window_start: usize,
        residual: QuadPoint,
        #[serde(with = "rat_serde")]
        eps: Rat,
    },
    Forfeit { violation: Violation },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum Verdict {
    IWins { certificate: Certificate },
    IIWins { certificate: Certificate },
    Undecided { round: usize, diagnostics: String },
}

impl Verdict {
    pub fn winner(&self) -> Option<Side> {
        match self {
            Verdict::IWins { .. } => Some(Side::I),
            Verdict::IIWins { .. } => Some(Side::II),
            Verdict::Undecided { .. } => None,
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Verdict::IWins { certificate } | Verdict::IIWins { certificate } => Some(certificate),
            Verdict::Undecided { .. } => None,
        }
    }

    pub fn is_forfeit(&self) -> bool {
        matches!(self.certificate(), Some(Certificate::Forfeit { .. }))
    }

    /// 0 = II wins, 10 = I wins, 20 = undecided, 30 = forfeit.
    pub fn exit_code(&self) -> i32 {
        if self.is_forfeit() {
            return 30;
        }
        match self {
            Verdict::IIWins { .. } => 0,
            Verdict::IWins { .. } => 10,
            Verdict::Undecided { .. } => 20,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::IWins { .. } => "IWins",
            Verdict::IIWins { .. } => "IIWins",
            Verdict::Undecided { .. } => "Undecided",
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::ValueGap { i, j, member: Some(m), gap, .. } => write!(f, "value gap {gap} at ({i},{j}) via {m}"),
            Certificate::ValueGap { i, j, member: None, gap, .. } => write!(f, "value gap {gap} at ({i},{j})"),
            Certificate::PointGap { i, j, dist, .. } => write!(f, "point gap {dist} at ({i},{j})"),
            Certificate::Residual { limit, source, residual, .. } => {
                write!(f, "residual {residual} at limit {limit} ({source:?})")
            }
            Certificate::Forfeit { violation } => write!(f, "forfeit: {violation}"),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::IWins { certificate } | Verdict::IIWins { certificate } => {
                write!(f, "{}: {certificate}", self.label())
            }
            Verdict::Undecided { round, diagnostics } => write!(f, "Undecided at round {round}: {diagnostics}"),
        }
    }
}

/// The sequence the winning condition talks about.
enum Track {
    /// One function: exact values.
    Values(Vec<QuadPoint>),
    /// A family: points, compared through the sup oracle.
    Points(FamilySpec, Vec<Point>),
}

impl Track {
    fn len(&self) -> usize {
        match self {
            Track::Values(v) => v.len(),
            Track::Points(_, p) => p.len(),
        }
    }

    /// `Some((member, gap))` when positions `i`, `j` are certified `≥ eps` apart.
    fn gap(&self, i: usize, j: usize, eps: &Rat) -> Result<Option<(Option<String>, QuadPoint)>> {
        match self {
            Track::Values(v) => {
                let g = (&v[i] - &v[j]).abs();
                Ok((g.cmp_rat(eps).is_ge()).then_some((None, g)))
            }
            Track::Points(fam, p) => Ok(match fam.exceeds(&p[i], &p[j], eps)? {
                GapDecision::Yes { member, gap } => Some((Some(member.to_string()), gap)),
                _ => None,
            }),
        }
    }

    /// Upper bound on the distance of position `n` from the value(s) at the limit.
    fn residual(&self, n: usize, at_limit: &LimitValue) -> Result<QuadPoint> {
        match (self, at_limit) {
            (Track::Values(v), LimitValue::Value(y)) => Ok((&v[n] - y).abs()),
            (Track::Points(fam, p), LimitValue::Point(x)) => Ok(fam.sup_gap(&p[n], x)?.upper),
            _ => unreachable!("track and limit value come from the same game"),
        }
    }
}

enum LimitValue {
    Value(QuadPoint),
    Point(Point),
}

fn track(t: &Transcript, eval: &mut Evaluator) -> Result<Track> {
    let h = &t.history;
    let moved: Vec<Point> = h.ii.iter().filter_map(|m| m.as_point().cloned()).collect();
    let family = || t.game.target.family();
    Ok(match t.game.kind {
        GameKind::G => Track::Values(h.ii.iter().filter_map(|m| m.as_value().cloned()).collect()),
        GameKind::Gp => Track::Values(values(eval, &moved)?),
        GameKind::GpF => Track::Points(family(), moved),
        GameKind::Gpp | GameKind::CGpp | GameKind::MGpp => Track::Values(values(eval, &h.xs)?),
        GameKind::GppF => Track::Points(family(), h.xs.clone()),
    })
}

fn values(eval: &mut Evaluator, ps: &[Point]) -> Result<Vec<QuadPoint>> {
    ps.iter().map(|p| eval.value(p, Request::Plain)).collect()
}

fn limit_value(t: &Transcript, eval: &mut Evaluator, limit: &Point) -> Result<LimitValue> {
    Ok(if t.game.kind.is_family_game() {
        LimitValue::Point(limit.clone())
    } else {
        LimitValue::Value(eval.value(limit, Request::Plain)?)
    })
}

fn evaluator(t: &Transcript) -> Evaluator {
    Evaluator::with_oracle(&t.game.target, t.oracle.clone())
}

/// The limit used for a residual: a declaration, else a constant final window of I-moves.
fn limit_of(t: &Transcript) -> Option<(Point, LimitSource)> {
    if let Some(l) = &t.limit {
        let src = match l.by {
            Side::I => LimitSource::DeclaredByI,
            Side::II => LimitSource::DeclaredByII,
        };
        return Some((l.point.clone(), src));
    }
    let s = t.config.window_start();
    let xs = &t.history.xs;
    let tail = xs.get(s..)?;
    let first = tail.first()?;
    tail.iter().all(|x| x == first).then(|| (first.clone(), LimitSource::Stabilized))
}

/// Decide a transcript.
///
/// A forfeit decides first. Then a Cauchy failure at scale `eps_dec` inside
/// the final window `[R − W, len)` gives I the win (for Gpp-type games also
/// two I-moves that far apart). Otherwise II wins when a declared or
/// stabilized limit puts every window value within `eps_dec` of the value at
/// the limit. Anything else is undecided.
pub fn referee(t: &Transcript) -> Result<Verdict> {
    if let Some(v) = &t.forfeit {
        let certificate = Certificate::Forfeit { violation: v.clone() };
        return Ok(match v.player {
            Side::I => Verdict::IIWins { certificate },
            Side::II => Verdict::IWins { certificate },
        });
    }
    let eps = &t.config.eps_dec;
    let s = t.config.window_start();
    let mut eval = evaluator(t);
    let tr = track(t, &mut eval)?;
    let len = tr.len();
    for i in s..len {
        for j in i + 1..len {
            if let Some((member, gap)) = tr.gap(i, j, eps)? {
                return Ok(Verdict::IWins { certificate: Certificate::ValueGap { i, j, member, gap, eps: eps.clone() } });
            }
        }
    }
    if t.game.kind.is_nested() {
        let xs = &t.history.xs;
        for i in s..xs.len() {
            for j in i + 1..xs.len() {
                if cmp_dist(&xs[i], &xs[j], eps)?.is_ge() {
                    let d = dist(&xs[i], &xs[j])?;
                    return Ok(Verdict::IWins { certificate: Certificate::PointGap { i, j, dist: d, eps: eps.clone() } });
                }
            }
        }
    }
    if len <= s {
        return Ok(Verdict::Undecided { round: len, diagnostics: format!("final window starting at {s} is empty") });
    }
    let Some((limit, source)) = limit_of(t) else {
        return Ok(Verdict::Undecided {
            round: len,
            diagnostics: "no declared limit and the I-moves do not stabilize in the final window".into(),
        });
    };
    let at = limit_value(t, &mut eval, &limit)?;
    let mut residual = QuadPoint::zero();
    for n in s..len {
        residual = residual.max(tr.residual(n, &at)?);
    }
    if residual.cmp_rat(eps).is_lt() {
        Ok(Verdict::IIWins {
            certificate: Certificate::Residual { limit, source, window_start: s, residual, eps: eps.clone() },
        })
    } else {
        Ok(Verdict::Undecided {
            round: len,
            diagnostics: format!("final-window residual {residual} at limit {limit} is not below {eps}"),
        })
    }
}

/// Re-check a certificate against the transcript from scratch.
pub fn verify_certificate(t: &Transcript, v: &Verdict) -> Result<bool> {
    let Some(cert) = v.certificate() else {
        return Ok(true);
    };
    let eps = &t.config.eps_dec;
    let s = t.config.window_start();
    let winner = v.winner();
    let mut eval = evaluator(t);
    Ok(match cert {
        Certificate::Forfeit { violation } => {
            t.forfeit.as_ref() == Some(violation) && winner == Some(violation.player.other())
        }
        Certificate::ValueGap { i, j, member, gap, eps: e } => {
            let tr = track(t, &mut eval)?;
            e == eps
                && winner == Some(Side::I)
                && s <= *i
                && i < j
                && *j < tr.len()
                && tr.gap(*i, *j, eps)? == Some((member.clone(), gap.clone()))
        }
        Certificate::PointGap { i, j, dist: d, eps: e } => {
            let xs = &t.history.xs;
            e == eps
                && winner == Some(Side::I)
                && t.game.kind.is_nested()
                && s <= *i
                && i < j
                && *j < xs.len()
                && dist(&xs[*i], &xs[*j])? == *d
                && d.cmp_rat(eps).is_ge()
        }
        Certificate::Residual { limit, source, window_start, residual, eps: e } => {
            let tr = track(t, &mut eval)?;
            let consistent = match (source, &t.limit) {
                (LimitSource::DeclaredByI, Some(l)) => l.by == Side::I && &l.point == limit,
                (LimitSource::DeclaredByII, Some(l)) => l.by == Side::II && &l.point == limit,
                (LimitSource::Stabilized, _) => t.history.xs.get(s..).is_some_and(|w| !w.is_empty() && w.iter().all(|x| x == limit)),
                _ => false,
            };
            if !(consistent && e == eps && *window_start == s && winner == Some(Side::II) && s < tr.len()) {
                return Ok(false);
            }
            let at = limit_value(t, &mut eval, limit)?;
            let mut r = QuadPoint::zero();
            for n in s..tr.len() {
                r = r.max(tr.residual(n, &at)?);
            }
            r == *residual && r.cmp_rat(eps).is_lt()
        }
    })
}

/// Re-derive the verdict and re-check its certificate.
pub fn replay(t: &Transcript, recorded: &Verdict) -> Result<bool> {
    Ok(referee(t)? == *recorded && verify_certificate(t, recorded)?)
}
