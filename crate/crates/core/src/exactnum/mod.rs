//! Exact points of `[0,1]` (in Q(√2)) and of Cantor space, with decidable
//! metric comparisons and ball geometry.

mod cantor;
mod enclosure;
mod point;
mod quad;

pub use cantor::CantorPoint;
pub use enclosure::Enclosure;
pub use point::{ball_subset, cmp_dist, dist, step_bound_ok, unit_span, Ball, Point, Space, Span};
pub use quad::{parse_rat, pow2_neg, rat, QuadPoint, Rat};
pub(crate) use quad::{ceil_to_grid, pow2_floor};

/// Serde adapter writing rationals as `p/q` strings.
pub mod rat_serde {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{parse_rat, Rat};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}
