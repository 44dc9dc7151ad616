//! Exact rational arithmetic helpers shared across the crate.
//!
//! Every quantity in this crate is a `BigRational`; floating point appears
//! only in the optional decimal-approximation column of the CLI. Infinite
//! sums that cannot be closed over a representation are reported as
//! [`DyadicInterval`] enclosures instead of approximate scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::str::FromStr;

pub type Rat = BigRational;

pub fn rat_u64(n: u64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_i64(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for `p/q` with machine-sized parts. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p/q"` or a plain integer string.
pub fn parse_rat(s: &str) -> Result<Rat, RatParseError> {
    Rat::from_str(s.trim()).map_err(|_| RatParseError(s.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse rational from {0:?} (expected \"p/q\" or an integer)")]
pub struct RatParseError(pub String);

/// `base^exp` for a signed integer exponent.
pub fn pow_rat(base: &Rat, exp: i64) -> Rat {
    if exp == 0 {
        return Rat::one();
    }
    let e = exp.unsigned_abs();
    assert!(e <= u32::MAX as u64, "exponent {e} out of range");
    let n = base.numer().pow(e as u32);
    let d = base.denom().pow(e as u32);
    if exp > 0 {
        Rat::new(n, d)
    } else {
        Rat::new(d, n)
    }
}

/// `2^exp` as an exact rational.
pub fn pow2(exp: i64) -> Rat {
    pow_rat(&rat_u64(2), exp)
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Smallest non-negative integer `r` with `r*r >= x`. Requires `x >= 0`.
pub fn ceil_sqrt(x: &Rat) -> u64 {
    assert!(!x.is_negative(), "ceil_sqrt of negative value");
    if x.is_zero() {
        return 0;
    }
    let approx = rat_to_f64(x).sqrt();
    let mut r = if approx.is_finite() {
        approx.floor() as u64
    } else {
        0
    };
    r = r.saturating_sub(2);
    let holds = |r: u64| {
        let rr = Rat::from_integer(BigInt::from(r) * BigInt::from(r));
        rr >= *x
    };
    while !holds(r) {
        r += 1;
    }
    r
}

/// A closed rational interval `[lo, hi]` enclosing an exact quantity.
///
/// A point interval (`lo == hi`) records an exactly computed value; a wider
/// interval encloses an infinite sum that was only partially evaluated, with
/// the certified tail bound absorbed into `hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicInterval {
    lo: Rat,
    hi: Rat,
}

impl DyadicInterval {
    pub fn point(v: Rat) -> Self {
        DyadicInterval {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "interval bounds out of order");
        DyadicInterval { lo, hi }
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// The exact value, when the enclosure is a point.
    pub fn value(&self) -> Option<&Rat> {
        if self.is_exact() {
            Some(&self.lo)
        } else {
            None
        }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / rat_u64(2)
    }

    pub fn contains(&self, v: &Rat) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    /// True when `self` lies inside `outer` (used to check that refining the
    /// evaluation depth never moves an enclosure outside the previous one).
    pub fn within(&self, outer: &DyadicInterval) -> bool {
        outer.lo <= self.lo && self.hi <= outer.hi
    }

    pub fn add(&self, other: &DyadicInterval) -> DyadicInterval {
        DyadicInterval::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn neg(&self) -> DyadicInterval {
        DyadicInterval::new(-self.hi.clone(), -self.lo.clone())
    }

    pub fn hull(a: &DyadicInterval, b: &DyadicInterval) -> DyadicInterval {
        DyadicInterval::new(
            a.lo.clone().min(b.lo.clone()),
            a.hi.clone().max(b.hi.clone()),
        )
    }
}

impl fmt::Display for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{} exact", self.lo)
        } else {
            write!(f, "[{}, {}] width {}", self.lo, self.hi, self.width())
        }
    }
}

/// Serde adapters serializing rationals as `"p/q"` strings.
pub mod rat_serde {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}
