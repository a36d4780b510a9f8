//! Exact rationals with a compact string form.

use alloc::format;
use alloc::string::String;
use core::fmt;
use core::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An exact rational, serialized as `"p/q"` (or `"p"` when integral).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exact(pub Ratio<i128>);

impl Exact {
    pub fn integer(n: i128) -> Self {
        Exact(Ratio::from_integer(n))
    }

    pub fn new(numer: i128, denom: i128) -> Self {
        Exact(Ratio::new(numer, denom))
    }

    pub fn is_zero(&self) -> bool {
        *self.0.numer() == 0
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Exact {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| t.trim().parse::<i128>().map_err(|e| format!("bad rational {s:?}: {e}"));
        match s.split_once('/') {
            Some((p, q)) => {
                let q = parse(q)?;
                if q == 0 {
                    return Err(format!("bad rational {s:?}: zero denominator"));
                }
                Ok(Exact::new(parse(p)?, q))
            }
            None => Ok(Exact::integer(parse(s)?)),
        }
    }
}

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
