use serde::{Deserialize, Serialize};
use std::fmt;

/// A certified interval `[lo, hi] ⊆ [0, +∞]` containing an exact norm value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Enclosure {
    #[serde(with = "extended_real")]
    pub lo: f64,
    #[serde(with = "extended_real")]
    pub hi: f64,
}

impl Enclosure {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(!lo.is_nan() && !hi.is_nan(), "NaN enclosure");
        debug_assert!(lo >= 0.0 && lo <= hi, "bad enclosure [{lo}, {hi}]");
        Self { lo, hi }
    }

    pub fn exact(v: f64) -> Self {
        Self::new(v, v)
    }

    pub fn zero() -> Self {
        Self::exact(0.0)
    }

    pub fn width(&self) -> f64 {
        if self.hi.is_infinite() {
            f64::INFINITY
        } else {
            self.hi - self.lo
        }
    }

    /// Width relative to the upper endpoint; zero for `[0, 0]`.
    pub fn relative_width(&self) -> f64 {
        if self.hi == 0.0 {
            0.0
        } else if self.hi.is_infinite() {
            if self.lo.is_infinite() {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (self.hi - self.lo) / self.hi
        }
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn is_finite(&self) -> bool {
        self.hi.is_finite()
    }

    pub fn scale(&self, c: f64) -> Self {
        Self::new(crate::kernel::ext_mul(self.lo, c), crate::kernel::ext_mul(self.hi, c))
    }

    pub fn midpoint(&self) -> f64 {
        if self.hi.is_infinite() {
            f64::INFINITY
        } else {
            0.5 * (self.lo + self.hi)
        }
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Serde adapter writing non-finite floats as the strings `"inf"`, `"-inf"`
/// and `"nan"`, since JSON has no literal for them.
pub mod extended_real {
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else if v.is_nan() {
            s.serialize_str("nan")
        } else if *v > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(v),
            Repr::Text(t) => match t.as_str() {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                "nan" => Ok(f64::NAN),
                other => Err(de::Error::custom(format!("expected a number or inf, got {other:?}"))),
            },
        }
    }
}
