//! Closed exchange-ratio intervals over the extended non-negative reals.

use serde::ser::{Serialize, SerializeStruct, Serializer};

/// A closed interval `[lower, upper]` with `0 <= lower <= upper <= +inf`,
/// or the empty set. Bounds of an empty interval do not exist.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedInterval {
    Empty,
    Closed { lower: f64, upper: f64 },
}

impl ExtendedInterval {
    /// Builds `[max(lower, 0), upper]`. Emptiness is decided by the strict
    /// comparison `lower > upper`, with no tolerance.
    pub fn new(lower: f64, upper: f64) -> Self {
        let lower = lower.max(0.0);
        if lower.is_nan() || upper.is_nan() || lower > upper || lower == f64::INFINITY {
            ExtendedInterval::Empty
        } else {
            ExtendedInterval::Closed { lower, upper }
        }
    }

    pub fn unbounded_from(lower: f64) -> Self {
        Self::new(lower, f64::INFINITY)
    }

    pub fn point(r: f64) -> Self {
        Self::new(r, r)
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, ExtendedInterval::Empty)
    }

    pub fn bounds(&self) -> Option<(f64, f64)> {
        match *self {
            ExtendedInterval::Empty => None,
            ExtendedInterval::Closed { lower, upper } => Some((lower, upper)),
        }
    }

    pub fn lower(&self) -> Option<f64> {
        self.bounds().map(|b| b.0)
    }

    pub fn upper(&self) -> Option<f64> {
        self.bounds().map(|b| b.1)
    }

    pub fn contains(&self, r: f64) -> bool {
        match *self {
            ExtendedInterval::Empty => false,
            ExtendedInterval::Closed { lower, upper } => lower <= r && r <= upper,
        }
    }

    pub fn intersect(&self, other: &Self) -> Self {
        match (self.bounds(), other.bounds()) {
            (Some((a_lo, a_hi)), Some((b_lo, b_hi))) => Self::new(a_lo.max(b_lo), a_hi.min(b_hi)),
            _ => ExtendedInterval::Empty,
        }
    }

    /// Width of the interval after truncating the upper end at `cap`.
    pub fn clamped_width(&self, cap: f64) -> f64 {
        match *self {
            ExtendedInterval::Empty => 0.0,
            ExtendedInterval::Closed { lower, upper } => (upper.min(cap) - lower).max(0.0),
        }
    }
}

impl Serialize for ExtendedInterval {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match *self {
            ExtendedInterval::Empty => s.serialize_str("empty"),
            ExtendedInterval::Closed { lower, upper } => {
                let mut st = s.serialize_struct("ExtendedInterval", 2)?;
                st.serialize_field("lower", &lower)?;
                if upper.is_finite() {
                    st.serialize_field("upper", &upper)?;
                } else {
                    st.serialize_field("upper", "inf")?;
                }
                st.end()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_clamps_and_detects_empty() {
        assert_eq!(
            ExtendedInterval::new(-0.3, 1.0),
            ExtendedInterval::Closed {
                lower: 0.0,
                upper: 1.0
            }
        );
        assert!(ExtendedInterval::new(1.0, 0.999).is_empty());
        assert!(ExtendedInterval::new(0.5, -0.1).is_empty());
        assert!(ExtendedInterval::new(f64::INFINITY, f64::INFINITY).is_empty());
        assert!(!ExtendedInterval::point(0.3).is_empty());
    }

    #[test]
    fn intersection() {
        let a = ExtendedInterval::new(0.1, 0.6);
        let b = ExtendedInterval::unbounded_from(0.12);
        assert_eq!(a.intersect(&b), ExtendedInterval::new(0.12, 0.6));
        assert!(a.intersect(&ExtendedInterval::Empty).is_empty());
        assert!(a
            .intersect(&ExtendedInterval::unbounded_from(0.7))
            .is_empty());
    }

    #[test]
    fn width_is_truncated() {
        assert_eq!(
            ExtendedInterval::unbounded_from(0.2).clamped_width(2.2),
            2.0
        );
        assert_eq!(ExtendedInterval::new(3.0, 4.0).clamped_width(2.2), 0.0);
        assert_eq!(ExtendedInterval::Empty.clamped_width(2.2), 0.0);
    }

    #[test]
    fn json_form() {
        let s = serde_json::to_string(&ExtendedInterval::unbounded_from(0.5)).unwrap();
        assert_eq!(s, r#"{"lower":0.5,"upper":"inf"}"#);
        assert_eq!(
            serde_json::to_string(&ExtendedInterval::Empty).unwrap(),
            r#""empty""#
        );
    }
}
