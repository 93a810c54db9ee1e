use std::fmt;

use num::{Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::rational::{format_rational, frac, parse_rational, Rational};

/// A point of the circle `R/Z`, stored as its representative in `[0, 1)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CirclePoint(Rational);

impl CirclePoint {
    pub fn zero() -> Self {
        CirclePoint(Rational::zero())
    }

    /// Reduces any rational modulo 1.
    pub fn reduce(x: &Rational) -> Self {
        CirclePoint(frac(x))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::reduce(&crate::rational::ratio(num, den))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn into_value(self) -> Rational {
        self.0
    }

    /// Rotation by `t` (any rational).
    pub fn rotate(&self, t: &Rational) -> Self {
        Self::reduce(&(&self.0 + t))
    }

    /// Counterclockwise distance from `self` to `other`, in `[0, 1)`.
    pub fn ccw_to(&self, other: &CirclePoint) -> Rational {
        frac(&(&other.0 - &self.0))
    }
}

/// `x mod 1`.
pub fn reduce(x: &Rational) -> CirclePoint {
    CirclePoint::reduce(x)
}

/// The quotient metric `min(|x - y|, 1 - |x - y|)`; always in `[0, 1/2]`.
pub fn circle_dist(x: &CirclePoint, y: &CirclePoint) -> Rational {
    let diff = (&x.0 - &y.0).abs();
    let other = Rational::from_integer(1.into()) - &diff;
    if diff <= other {
        diff
    } else {
        other
    }
}

impl fmt::Debug for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CirclePoint({})", format_rational(&self.0))
    }
}

impl fmt::Display for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

impl From<Rational> for CirclePoint {
    fn from(x: Rational) -> Self {
        Self::reduce(&x)
    }
}

impl Serialize for CirclePoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

// Input outside [0, 1) is reduced rather than rejected.
impl<'de> Deserialize<'de> for CirclePoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text)
            .map(|x| CirclePoint::reduce(&x))
            .map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn pt(n: i64, d: i64) -> CirclePoint {
        CirclePoint::from_ratio(n, d)
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce(&ratio(7, 6)), pt(1, 6));
        assert_eq!(reduce(&ratio(-1, 6)), pt(5, 6));
        assert_eq!(reduce(&int(0)), CirclePoint::zero());
        assert_eq!(reduce(&int(1)).value(), &int(0));
    }

    #[test]
    fn dist_examples() {
        assert_eq!(circle_dist(&pt(0, 1), &pt(1, 2)), ratio(1, 2));
        assert_eq!(circle_dist(&pt(1, 10), &pt(9, 10)), ratio(1, 5));
        assert_eq!(circle_dist(&pt(3, 7), &pt(3, 7)), int(0));
    }

    #[test]
    fn ccw_distance_wraps() {
        assert_eq!(pt(5, 6).ccw_to(&pt(1, 6)), ratio(1, 3));
        assert_eq!(pt(1, 6).ccw_to(&pt(5, 6)), ratio(2, 3));
    }
}
