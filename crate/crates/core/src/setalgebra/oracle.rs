//! Lazy stand-in for a non-measurable function: values are assigned on
//! demand so that both value classes meet every set anyone asks about.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::exactnum::{rat, QuadPoint, Rat};

/// Why a value is being requested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Request {
    /// A point meant to land in `{f ≈ y}`.
    A,
    /// A point meant to land in `{f far from y}`.
    B,
    Plain,
}

/// Memoized adversary on `W = [0,1]` with `y = 1`, `eps = 1/4`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonMeasOracle {
    memo: BTreeMap<QuadPoint, u8>,
}

impl NonMeasOracle {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_memo(entries: impl IntoIterator<Item = (QuadPoint, u8)>) -> Self {
        NonMeasOracle { memo: entries.into_iter().collect() }
    }

    pub fn y(&self) -> QuadPoint {
        QuadPoint::one()
    }

    pub fn eps(&self) -> Rat {
        rat(1, 4)
    }

    pub fn eval(&mut self, p: &QuadPoint, role: Request) -> QuadPoint {
        let v = *self.memo.entry(p.clone()).or_insert(match role {
            Request::B => 0,
            Request::A | Request::Plain => 1,
        });
        QuadPoint::from_ratio(i64::from(v), 1)
    }

    /// Read-only lookup; `None` for points never assigned.
    pub fn peek(&self, p: &QuadPoint) -> Option<QuadPoint> {
        self.memo.get(p).map(|&v| QuadPoint::from_ratio(i64::from(v), 1))
    }

    pub fn memo(&self) -> impl Iterator<Item = (&QuadPoint, u8)> {
        self.memo.iter().map(|(k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }
}
