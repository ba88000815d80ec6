use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// Exact nonnegative rational value: a hospital score, a matching score, a
/// ratio of scores or a theoretical bound.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Score(BigRational);

impl Score {
    pub fn new(numer: i64, denom: i64) -> Score {
        Score(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn integer(v: i64) -> Score {
        Score::new(v, 1)
    }

    pub fn zero() -> Score {
        Score(BigRational::zero())
    }

    pub fn one() -> Score {
        Score::integer(1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// `self / other`, taking `0 / 0 = 1` (two empty objectives are equally good).
    pub fn ratio(&self, other: &Score) -> Option<Score> {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => Some(Score::one()),
            (false, true) => None,
            _ => Some(Score(&self.0 / &other.0)),
        }
    }

    /// `p/q (≈d.dddddd)`.
    pub fn with_decimal(&self) -> String {
        format!("{} (≈{:.6})", self, self.to_f64())
    }
}

impl fmt::Display for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Score {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Add for Score {
    type Output = Score;
    fn add(self, rhs: Score) -> Score {
        Score(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a Score> for &'a Score {
    type Output = Score;
    fn add(self, rhs: &Score) -> Score {
        Score(&self.0 + &rhs.0)
    }
}

impl Sub for Score {
    type Output = Score;
    fn sub(self, rhs: Score) -> Score {
        Score(self.0 - rhs.0)
    }
}

impl Mul for Score {
    type Output = Score;
    fn mul(self, rhs: Score) -> Score {
        Score(self.0 * rhs.0)
    }
}

impl Div for Score {
    type Output = Score;
    fn div(self, rhs: Score) -> Score {
        Score(self.0 / rhs.0)
    }
}

impl Sum for Score {
    fn sum<I: Iterator<Item = Score>>(iter: I) -> Score {
        iter.fold(Score::zero(), Add::add)
    }
}

impl From<i64> for Score {
    fn from(v: i64) -> Score {
        Score::integer(v)
    }
}
