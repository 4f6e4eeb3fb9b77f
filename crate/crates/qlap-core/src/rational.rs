//! Exact rational values with a JSON form downstream tools can consume.

use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

/// Exact rational with `{num, den, float}` serialization; the float is a
/// convenience echo and is ignored when reading back.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Rational(pub Ratio<i64>);

impl Rational {
    pub fn new(num: i64, den: i64) -> Rational {
        Rational(Ratio::new(num, den))
    }

    pub fn to_f64(self) -> f64 {
        self.0.to_f64().expect("i64 ratio fits in f64")
    }
}

impl From<Ratio<i64>> for Rational {
    fn from(r: Ratio<i64>) -> Rational {
        Rational(r)
    }
}

impl std::fmt::Display for Rational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.denom() == &1 {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Rational", 3)?;
        st.serialize_field("num", self.0.numer())?;
        st.serialize_field("den", self.0.denom())?;
        st.serialize_field("float", &self.to_f64())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            num: i64,
            den: i64,
            #[serde(default)]
            #[allow(dead_code)]
            float: f64,
        }
        let raw = Raw::deserialize(d)?;
        if raw.den == 0 {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(Rational::new(raw.num, raw.den))
    }
}
