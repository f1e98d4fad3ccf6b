//! Values stored by their natural logarithm.
//!
//! Facet-count bounds overflow `f64` already around dimension 100, so they
//! are carried as logarithms and only exponentiated for display.

use serde::{Serialize, Serializer};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LogValue {
    ln: f64,
}

impl LogValue {
    pub fn from_ln(ln: f64) -> Self {
        Self { ln }
    }

    pub fn from_log10(log10: f64) -> Self {
        Self {
            ln: log10 * std::f64::consts::LN_10,
        }
    }

    /// Panics on non-positive input; use `from_ln` for zero.
    pub fn from_value(v: f64) -> Self {
        assert!(v > 0.0, "LogValue::from_value needs a positive value, got {v}");
        Self { ln: v.ln() }
    }

    pub fn ln(self) -> f64 {
        self.ln
    }

    pub fn log10(self) -> f64 {
        self.ln / std::f64::consts::LN_10
    }

    /// The plain value; may be `0` or `inf` when outside the `f64` range.
    pub fn value(self) -> f64 {
        self.ln.exp()
    }

    /// The plain value when it is a finite, normal double.
    pub fn representable(self) -> Option<f64> {
        let v = self.value();
        (v.is_finite() && v.is_normal()).then_some(v)
    }
}

impl fmt::Display for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.representable() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "10^{:.4}", self.log10()),
        }
    }
}

/// Serialized as `{"log10": .., "value": .. | null}`.
impl Serialize for LogValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("LogValue", 2)?;
        st.serialize_field("log10", &self.log10())?;
        st.serialize_field("value", &self.representable())?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn huge_values_stay_finite_in_log_space() {
        let v = LogValue::from_log10(400.0);
        assert!(v.representable().is_none());
        assert!((v.log10() - 400.0).abs() < 1e-12);
        assert_eq!(v.to_string(), "10^400.0000");
    }

    #[test]
    fn round_trip_small_value() {
        let v = LogValue::from_value(1234.5);
        assert!((v.representable().unwrap() - 1234.5).abs() < 1e-9);
    }
}
