//! `RepSet`: `(I_1 ∪ … ∪ I_k) \ E  ∪  {atoms}`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::catalog::Exceptional;
use crate::error::{Error, Result};
use crate::exactnum::{rat, unit_span, Point, QuadPoint, Rat, Span};

/// A finite union of intervals minus a countable set, plus finitely many atoms.
///
/// Every such set has the Baire property and is Lebesgue measurable.
#[derive(Clone, PartialEq, Eq)]
pub struct RepSet {
    intervals: Vec<Span>,
    atoms: Vec<QuadPoint>,
    except: Exceptional,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Category {
    NonMeagerBP,
    MeagerBP,
}

fn excluded(except: &Exceptional, x: &QuadPoint) -> bool {
    match except {
        Exceptional::None => false,
        Exceptional::AllRationals => x.is_rational(),
        Exceptional::Listed(ps) => ps.contains(x),
    }
}

fn merge_spans(mut spans: Vec<Span>) -> Vec<Span> {
    spans.retain(|s| !s.is_empty());
    spans.sort_by(|a, b| a.lo.cmp(&b.lo).then(b.lo_closed.cmp(&a.lo_closed)));
    let mut out: Vec<Span> = Vec::new();
    for s in spans {
        if let Some(last) = out.last_mut() {
            let joins = match s.lo.cmp(&last.hi) {
                Ordering::Less => true,
                Ordering::Equal => last.hi_closed || s.lo_closed,
                Ordering::Greater => false,
            };
            if joins {
                match s.hi.cmp(&last.hi) {
                    Ordering::Greater => {
                        last.hi = s.hi;
                        last.hi_closed = s.hi_closed;
                    }
                    Ordering::Equal => last.hi_closed |= s.hi_closed,
                    Ordering::Less => {}
                }
                continue;
            }
        }
        out.push(s);
    }
    out
}

impl RepSet {
    pub fn new(intervals: Vec<Span>, atoms: Vec<QuadPoint>, except: Exceptional) -> Self {
        let mut s = RepSet { intervals, atoms, except };
        s.normalize();
        s
    }

    pub fn empty() -> Self {
        RepSet::new(Vec::new(), Vec::new(), Exceptional::None)
    }

    pub fn interval(span: Span) -> Self {
        RepSet::new(vec![span], Vec::new(), Exceptional::None)
    }

    pub fn closed(lo: QuadPoint, hi: QuadPoint) -> Self {
        RepSet::interval(Span { lo, lo_closed: true, hi, hi_closed: true })
    }

    pub fn atoms(points: Vec<QuadPoint>) -> Self {
        RepSet::new(Vec::new(), points, Exceptional::None)
    }

    pub fn unit() -> Self {
        RepSet::interval(unit_span())
    }

    pub fn intervals(&self) -> &[Span] {
        &self.intervals
    }

    pub fn atom_list(&self) -> &[QuadPoint] {
        &self.atoms
    }

    pub fn except(&self) -> &Exceptional {
        &self.except
    }

    /// Sorted disjoint intervals, degenerate intervals turned into atoms,
    /// redundant atoms dropped, exception list restricted to the intervals.
    pub fn normalize(&mut self) {
        let mut atoms = std::mem::take(&mut self.atoms);
        let mut spans = Vec::new();
        for s in std::mem::take(&mut self.intervals) {
            if s.lo == s.hi && s.lo_closed && s.hi_closed {
                if !excluded(&self.except, &s.lo) {
                    atoms.push(s.lo);
                }
            } else {
                spans.push(s);
            }
        }
        self.intervals = merge_spans(spans);
        if let Exceptional::Listed(ps) = &mut self.except {
            let ivs = &self.intervals;
            ps.retain(|p| ivs.iter().any(|s| s.contains(p)));
            ps.sort();
            ps.dedup();
            if ps.is_empty() {
                self.except = Exceptional::None;
            }
        }
        if self.intervals.is_empty() {
            self.except = Exceptional::None;
        }
        atoms.sort();
        atoms.dedup();
        atoms.retain(|a| !self.in_interval_part(a));
        self.atoms = atoms;
    }

    fn in_interval_part(&self, x: &QuadPoint) -> bool {
        self.intervals.iter().any(|s| s.contains(x)) && !excluded(&self.except, x)
    }

    pub fn contains(&self, x: &QuadPoint) -> bool {
        self.atoms.contains(x) || self.in_interval_part(x)
    }

    pub fn contains_point(&self, p: &Point) -> bool {
        p.as_line().map(|x| self.contains(x)).unwrap_or(false)
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty() && self.atoms.is_empty()
    }

    /// Lebesgue measure: the total interval length.
    pub fn measure(&self) -> QuadPoint {
        self.intervals.iter().fold(QuadPoint::zero(), |acc, s| &acc + &(&s.hi - &s.lo))
    }

    pub fn classify_category(&self) -> Category {
        if self.intervals.iter().any(|s| s.lo < s.hi) {
            Category::NonMeagerBP
        } else {
            Category::MeagerBP
        }
    }

    /// Intersection with `[0,1]`.
    pub fn clamp_unit(&self) -> RepSet {
        let u = unit_span();
        let spans = self.intervals.iter().filter_map(|s| intersect(s, &u)).collect();
        let atoms = self.atoms.iter().filter(|a| u.contains(a)).cloned().collect();
        RepSet::new(spans, atoms, self.except.clone())
    }

    /// The same set with one more atom.
    pub fn with_atom(&self, x: QuadPoint) -> RepSet {
        let mut atoms = self.atoms.clone();
        atoms.push(x);
        RepSet::new(self.intervals.clone(), atoms, self.except.clone())
    }

    /// Intersection of the interval part with a span, keeping the exception.
    pub fn restrict(&self, span: &Span) -> RepSet {
        let spans = self.intervals.iter().filter_map(|s| intersect(s, span)).collect();
        let atoms = self.atoms.iter().filter(|a| span.contains(a)).cloned().collect();
        RepSet::new(spans, atoms, self.except.clone())
    }

    /// A member of the interval part avoiding `avoid`, as close to `near` as the search finds.
    ///
    /// Picks are rational unless all rationals are excluded.
    pub fn fresh_point(&self, near: Option<&QuadPoint>, avoid: &[QuadPoint]) -> Option<QuadPoint> {
        let mut spans: Vec<&Span> = self.intervals.iter().filter(|s| s.lo < s.hi).collect();
        if let Some(c) = near {
            spans.sort_by_key(|s| span_distance(s, c));
        }
        for s in spans {
            let (lo, hi) = match near {
                Some(c) if s.contains(c) => (c.clone(), s.hi.clone()),
                _ => (s.lo.clone(), s.hi.clone()),
            };
            let (lo, hi) = if lo < hi { (lo, hi) } else { (s.lo.clone(), s.hi.clone()) };
            let width = &hi - &lo;
            let irrational = matches!(self.except, Exceptional::AllRationals);
            let shift = QuadPoint::new(Rat::from_integer(0.into()), rat(1, 4));
            for k in 1..=48u32 {
                let step = width.scale(&pow2(k));
                for j in (1..(1i64 << k.min(8))).step_by(2) {
                    let mut cand = &lo + &step.scale(&Rat::from_integer(j.into()));
                    if irrational {
                        // √2/4 of a step keeps the candidate inside the same cell
                        cand = &cand + &(&step * &shift);
                    }
                    if s.contains(&cand) && self.in_interval_part(&cand) && !avoid.contains(&cand) {
                        return Some(cand);
                    }
                }
            }
        }
        None
    }
}

fn pow2(k: u32) -> Rat {
    crate::exactnum::pow2_neg(i64::from(k))
}

fn span_distance(s: &Span, c: &QuadPoint) -> QuadPoint {
    if s.contains(c) {
        QuadPoint::zero()
    } else if *c < s.lo {
        &s.lo - c
    } else {
        c - &s.hi
    }
}

/// Intersection of two spans, `None` when empty.
pub fn intersect(a: &Span, b: &Span) -> Option<Span> {
    let (lo, lo_closed) = match a.lo.cmp(&b.lo) {
        Ordering::Greater => (a.lo.clone(), a.lo_closed),
        Ordering::Less => (b.lo.clone(), b.lo_closed),
        Ordering::Equal => (a.lo.clone(), a.lo_closed && b.lo_closed),
    };
    let (hi, hi_closed) = match a.hi.cmp(&b.hi) {
        Ordering::Less => (a.hi.clone(), a.hi_closed),
        Ordering::Greater => (b.hi.clone(), b.hi_closed),
        Ordering::Equal => (a.hi.clone(), a.hi_closed && b.hi_closed),
    };
    let s = Span { lo, lo_closed, hi, hi_closed };
    (!s.is_empty()).then_some(s)
}

fn fmt_span(s: &Span) -> String {
    format!(
        "{}{},{}{}",
        if s.lo_closed { '[' } else { '(' },
        s.lo,
        s.hi,
        if s.hi_closed { ']' } else { ')' }
    )
}

fn fmt_points(ps: &[QuadPoint]) -> String {
    let v: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
    format!("{{{}}}", v.join(","))
}

impl fmt::Display for RepSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        let ivs: Vec<String> = self.intervals.iter().map(fmt_span).collect();
        let ivs = ivs.join("∪");
        let except = match &self.except {
            Exceptional::None => None,
            Exceptional::AllRationals => Some("Q".to_string()),
            Exceptional::Listed(ps) => Some(fmt_points(ps)),
        };
        let body = match except {
            Some(e) if self.atoms.is_empty() => format!("{ivs}\\{e}"),
            Some(e) => format!("({ivs}\\{e})"),
            None => ivs,
        };
        match (self.atoms.is_empty(), self.intervals.is_empty()) {
            (true, _) => f.write_str(&body),
            (false, true) => f.write_str(&fmt_points(&self.atoms)),
            (false, false) => write!(f, "{}∪{}", fmt_points(&self.atoms), body),
        }
    }
}

impl fmt::Debug for RepSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

struct Parser<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.s[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.bump() {
            Some(d) if d == c => Ok(()),
            other => Err(Error::parse(format!("expected {c:?} at {} in {:?}, found {other:?}", self.pos, self.s))),
        }
    }

    fn until(&mut self, stops: &[char]) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if stops.contains(&c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        &self.s[start..self.pos]
    }

    fn points(&mut self) -> Result<Vec<QuadPoint>> {
        self.expect('{')?;
        let body = self.until(&['}']);
        self.expect('}')?;
        if body.is_empty() {
            return Ok(Vec::new());
        }
        body.split(',').map(str::parse).collect()
    }

    fn set(&mut self) -> Result<RepSet> {
        let mut acc = self.term()?;
        while matches!(self.peek(), Some('∪') | Some('U')) {
            self.bump();
            let t = self.term()?;
            acc = union(&acc, &t)?;
        }
        if self.peek() == Some('\\') {
            self.bump();
            let e = if self.peek() == Some('Q') {
                self.bump();
                Exceptional::AllRationals
            } else {
                Exceptional::Listed(self.points()?)
            };
            acc = minus(&acc, e)?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RepSet> {
        match self.peek() {
            Some('{') => Ok(RepSet::atoms(self.points()?)),
            Some('∅') => {
                self.bump();
                Ok(RepSet::empty())
            }
            Some('(') if matches!(self.s[self.pos + 1..].chars().next(), Some('(' | '[' | '{' | '∅')) => {
                self.bump();
                let inner = self.set()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some(c @ ('(' | '[')) => {
                self.bump();
                let lo: QuadPoint = self.until(&[',']).parse()?;
                self.expect(',')?;
                let hi: QuadPoint = self.until(&[')', ']']).parse()?;
                let close = self.bump().expect("stop char");
                if lo > hi {
                    return Err(Error::parse(format!("interval with lo > hi in {:?}", self.s)));
                }
                Ok(RepSet::interval(Span { lo, lo_closed: c == '[', hi, hi_closed: close == ']' }))
            }
            other => Err(Error::parse(format!("unexpected {other:?} in set literal {:?}", self.s))),
        }
    }
}

fn combine_except(a: &Exceptional, b: &Exceptional) -> Result<Exceptional> {
    Ok(match (a, b) {
        (Exceptional::None, e) | (e, Exceptional::None) => e.clone(),
        (Exceptional::AllRationals, Exceptional::AllRationals) => Exceptional::AllRationals,
        (Exceptional::Listed(x), Exceptional::Listed(y)) => Exceptional::Listed(x.iter().chain(y).cloned().collect()),
        (Exceptional::AllRationals, Exceptional::Listed(ps)) | (Exceptional::Listed(ps), Exceptional::AllRationals) => {
            if ps.iter().all(|p| p.is_rational()) {
                Exceptional::AllRationals
            } else {
                return Err(Error::parse("rationals plus irrational exceptions are not representable"));
            }
        }
    })
}

/// Union, when both operands share an exception or one has no intervals.
pub fn union(a: &RepSet, b: &RepSet) -> Result<RepSet> {
    let except = if a.intervals.is_empty() {
        b.except.clone()
    } else if b.intervals.is_empty() || a.except == b.except {
        a.except.clone()
    } else {
        return Err(Error::parse(format!("union of {a} and {b} is not representable")));
    };
    let mut spans = a.intervals.clone();
    spans.extend(b.intervals.iter().cloned());
    let mut atoms = a.atoms.clone();
    atoms.extend(b.atoms.iter().cloned());
    // atoms of one side that the other side's exception would hide stay atoms
    Ok(RepSet::new(spans, atoms, except))
}

/// `S \ E`.
pub fn minus(s: &RepSet, e: Exceptional) -> Result<RepSet> {
    let atoms = s.atoms.iter().filter(|a| !excluded(&e, a)).cloned().collect();
    let except = combine_except(&s.except, &e)?;
    Ok(RepSet::new(s.intervals.clone(), atoms, except))
}

impl FromStr for RepSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = Parser { s: &cleaned, pos: 0 };
        let set = p.set()?;
        if p.pos != cleaned.len() {
            return Err(Error::parse(format!("trailing input in set literal {s:?}")));
        }
        Ok(set)
    }
}

impl serde::Serialize for RepSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for RepSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(lit: &str) -> RepSet {
        lit.parse().unwrap()
    }

    fn q(lit: &str) -> QuadPoint {
        lit.parse().unwrap()
    }

    #[test]
    fn measure_examples() {
        assert_eq!(s("[0,1/4]∪[1/2,3/4] \\ Q").measure(), q("1/2"));
        assert_eq!(s("{1/2,1/3}").measure(), QuadPoint::zero());
        assert_eq!(s("[0,1/2*sqrt2]").measure(), q("1/2*sqrt2"));
    }

    #[test]
    fn category_examples() {
        assert_eq!(s("(0,1)\\Q").classify_category(), Category::NonMeagerBP);
        assert_eq!(s("{1/2,1/2*sqrt2}").classify_category(), Category::MeagerBP);
        let d = s("[1/4,1/4]");
        assert_eq!(d.classify_category(), Category::MeagerBP);
        assert_eq!(d.atom_list(), &[q("1/4")]);
    }

    #[test]
    fn membership_examples() {
        assert!(!s("(0,1)\\Q").contains(&q("1/2")));
        assert!(s("{1/2}∪((0,1)\\Q)").contains(&q("1/2")));
        assert!(s("(0,1)\\Q").contains(&q("1/2*sqrt2")));
        assert!(!s("[0,1]\\{1/3}").contains(&q("1/3")));
    }

    #[test]
    fn literals_round_trip() {
        for lit in ["{1/2}∪((0,1)\\Q)", "[0,1/4]∪(1/2,3/4)\\Q", "∅", "{1/3}", "[0,1]\\{1/3}", "(0,1/2*sqrt2]"] {
            assert_eq!(s(lit).to_string(), lit);
        }
        assert_eq!(s("[0,1/2] ∪ [1/4,1]").to_string(), "[0,1]");
        assert_eq!(s("[0,1/2) U (1/2,1]").to_string(), "[0,1/2)∪(1/2,1]");
        assert!("[1,0]".parse::<RepSet>().is_err());
        assert!("((0,1)\\Q)∪[0,1]".parse::<RepSet>().is_err());
    }

    #[test]
    fn fresh_points_respect_exceptions() {
        let g = s("(0,1)\\Q");
        let p = g.fresh_point(Some(&q("1/3")), &[]).unwrap();
        assert!(!p.is_rational() && g.contains(&p));
        let h = s("[0,1]\\{1/2}");
        let p = h.fresh_point(None, &[q("1/2")]).unwrap();
        assert!(h.contains(&p));
    }
}
