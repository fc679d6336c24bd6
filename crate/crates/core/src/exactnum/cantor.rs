//! Eventually periodic points of Cantor space `2^N`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// The sequence `preamble · period^∞`, stored canonically.
///
/// Canonical form: `period` is primitive and the last bit of `preamble`
/// differs from the last bit of `period` (otherwise the period could be
/// rotated one step left into the preamble). Two canonical points are equal
/// iff they denote the same sequence.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CantorPoint {
    preamble: Vec<bool>,
    period: Vec<bool>,
}

impl CantorPoint {
    pub fn new(preamble: Vec<bool>, period: Vec<bool>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::domain("cantor point needs a nonempty period"));
        }
        let mut p = CantorPoint { preamble, period };
        p.canonicalize();
        Ok(p)
    }

    /// The sequence `prefix · 0^∞`.
    pub fn eventually_zero(prefix: &[bool]) -> Self {
        Self::new(prefix.to_vec(), vec![false]).expect("nonempty period")
    }

    pub fn preamble(&self) -> &[bool] {
        &self.preamble
    }

    pub fn period(&self) -> &[bool] {
        &self.period
    }

    fn canonicalize(&mut self) {
        let n = self.period.len();
        for d in 1..=n {
            if n % d == 0 && (0..n).all(|i| self.period[i] == self.period[i % d]) {
                self.period.truncate(d);
                break;
            }
        }
        while let Some(&last) = self.preamble.last() {
            if last != *self.period.last().expect("nonempty") {
                break;
            }
            self.period.rotate_right(1);
            self.preamble.pop();
        }
    }

    pub fn bit(&self, i: usize) -> bool {
        if i < self.preamble.len() {
            self.preamble[i]
        } else {
            self.period[(i - self.preamble.len()) % self.period.len()]
        }
    }

    pub fn prefix(&self, len: usize) -> Vec<bool> {
        (0..len).map(|i| self.bit(i)).collect()
    }

    pub fn is_eventually_zero(&self) -> bool {
        self.period == [false]
    }

    /// Least index where the two sequences differ, or `None` if equal.
    pub fn first_disagreement(&self, other: &CantorPoint) -> Option<usize> {
        if self == other {
            return None;
        }
        let pre = self.preamble.len().max(other.preamble.len());
        let bound = pre + lcm(self.period.len(), other.period.len());
        (0..bound).find(|&i| self.bit(i) != other.bit(i))
    }

    /// Does the point begin with `prefix`?
    pub fn has_prefix(&self, prefix: &[bool]) -> bool {
        prefix.iter().enumerate().all(|(i, &b)| self.bit(i) == b)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

pub(crate) fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

pub(crate) fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::parse(format!("bad bit {c:?} in {s:?}"))),
        })
        .collect()
}

impl fmt::Display for CantorPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", bits_to_string(&self.preamble), bits_to_string(&self.period))
    }
}

impl fmt::Debug for CantorPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for CantorPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (pre, per) = s
            .split_once(':')
            .ok_or_else(|| Error::parse(format!("cantor literal {s:?} lacks ':'")))?;
        CantorPoint::new(parse_bits(pre)?, parse_bits(per)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> CantorPoint {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(c("01:01").to_string(), ":01");
        assert_eq!(c("0:0").to_string(), ":0");
        assert_eq!(c("1:0101").to_string(), ":10");
        assert_eq!(c("0:0101").to_string(), "0:01");
        assert_eq!(c("110:110").to_string(), ":110");
        assert_eq!(c("001:0").to_string(), "001:0");
        assert_eq!(c("00:10"), c("0:01"));
    }

    #[test]
    fn disagreement_index() {
        assert_eq!(c(":0").first_disagreement(&c("001:0")), Some(2));
        assert_eq!(c(":01").first_disagreement(&c(":0110")), Some(2));
        assert_eq!(c(":01").first_disagreement(&c("0101:01")), None);
    }

    #[test]
    fn rejects_bad_literals() {
        assert!("01".parse::<CantorPoint>().is_err());
        assert!("0:".parse::<CantorPoint>().is_err());
        assert!("2:1".parse::<CantorPoint>().is_err());
    }
}
