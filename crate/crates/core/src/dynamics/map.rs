use num::{BigInt, One, Zero};
use serde::{Deserialize, Serialize};

use super::MapError;
use crate::circle::CirclePoint;
use crate::rational::Rational;

/// One linear piece of a lift, starting at `t0` where it takes value `v0`
/// and ending with value `v1`.
#[derive(Clone, Debug)]
pub(crate) struct Piece {
    pub t0: Rational,
    pub v0: Rational,
    pub v1: Rational,
    pub slope: Rational,
}

impl Piece {
    fn eval(&self, x: &Rational) -> Rational {
        &self.v0 + &self.slope * (x - &self.t0)
    }
}

/// Continuous circle map with a piecewise-linear rational lift.
///
/// The lift `F` interpolates the breakpoints `(t_i, v_i)` with `t_0 = 0`,
/// `t_k = 1`; `F(1) - F(0)` is the (integer) degree and the circle map is
/// `x -> F(x) mod 1`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "MapSpec", into = "MapSpec")]
pub struct PLCircleMap {
    breakpoints: Vec<(Rational, Rational)>,
    pieces: Vec<Piece>,
    degree: BigInt,
    // Only used to pick the JSON form on output.
    times_p: Option<u64>,
}

impl PartialEq for PLCircleMap {
    fn eq(&self, other: &Self) -> bool {
        self.breakpoints == other.breakpoints
    }
}

impl Eq for PLCircleMap {}

impl PLCircleMap {
    /// The `x -> p x` map.
    pub fn times_p(p: u64) -> Result<Self, MapError> {
        if p == 0 {
            return Err(MapError::ZeroMultiplier);
        }
        let mut map = Self::pl(vec![
            (Rational::zero(), Rational::zero()),
            (Rational::one(), Rational::from_integer(p.into())),
        ])?;
        map.times_p = Some(p);
        Ok(map)
    }

    pub fn identity() -> Self {
        Self::times_p(1).expect("p = 1 is valid")
    }

    /// Validates a lift given by its breakpoints.
    pub fn pl(breakpoints: Vec<(Rational, Rational)>) -> Result<Self, MapError> {
        if breakpoints.len() < 2 {
            return Err(MapError::TooFewBreakpoints(breakpoints.len()));
        }
        let (first_t, first_v) = &breakpoints[0];
        let (last_t, last_v) = &breakpoints[breakpoints.len() - 1];
        if !first_t.is_zero() {
            return Err(MapError::StartNotZero(first_t.clone()));
        }
        if !last_t.is_one() {
            return Err(MapError::EndNotOne(last_t.clone()));
        }
        if let Some(i) = breakpoints.windows(2).position(|w| w[0].0 >= w[1].0) {
            return Err(MapError::NonMonotone(i + 1));
        }
        let degree = last_v - first_v;
        if !degree.is_integer() {
            return Err(MapError::NonIntegerDegree(degree));
        }
        let pieces = breakpoints
            .windows(2)
            .map(|w| {
                let (t0, v0) = &w[0];
                let (t1, v1) = &w[1];
                Piece {
                    t0: t0.clone(),
                    v0: v0.clone(),
                    v1: v1.clone(),
                    slope: (v1 - v0) / (t1 - t0),
                }
            })
            .collect();
        Ok(PLCircleMap {
            breakpoints,
            pieces,
            degree: degree.to_integer(),
            times_p: None,
        })
    }

    pub fn breakpoints(&self) -> &[(Rational, Rational)] {
        &self.breakpoints
    }

    pub(crate) fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn degree(&self) -> &BigInt {
        &self.degree
    }

    /// `Some(p)` when this map is `x -> p x` (up to an integer shift of the
    /// lift), whichever form it was built from.
    pub fn as_times_p(&self) -> Option<u64> {
        let p: u64 = self.degree.clone().try_into().ok()?;
        if p == 0 || !self.breakpoints[0].1.is_integer() {
            return None;
        }
        let slope = Rational::from_integer(p.into());
        self.pieces
            .iter()
            .all(|piece| piece.slope == slope)
            .then_some(p)
    }

    /// Evaluates the lift at `x` in `[0, 1]`.
    pub fn lift(&self, x: &Rational) -> Rational {
        let idx = self.breakpoints.partition_point(|(t, _)| t <= x);
        let piece = idx.saturating_sub(1).min(self.pieces.len() - 1);
        self.pieces[piece].eval(x)
    }

    pub fn apply(&self, x: &CirclePoint) -> CirclePoint {
        match self.times_p {
            Some(p) => CirclePoint::reduce(&(x.value() * Rational::from_integer(p.into()))),
            None => CirclePoint::reduce(&self.lift(x.value())),
        }
    }

    pub fn apply_n(&self, x: &CirclePoint, n: usize) -> CirclePoint {
        let mut y = x.clone();
        for _ in 0..n {
            y = self.apply(&y);
        }
        y
    }

    /// Iterates, returning `x, f(x), ..., f^{n-1}(x)`.
    ///
    /// Panics if `n == 0`.
    pub fn iterate(&self, x: &CirclePoint, n: usize) -> OrbitSegment {
        assert!(n >= 1, "orbit segments have at least one point");
        let mut points = Vec::with_capacity(n);
        points.push(x.clone());
        for i in 1..n {
            let next = self.apply(&points[i - 1]);
            points.push(next);
        }
        OrbitSegment { points }
    }
}

/// Forward orbit `x, f(x), ..., f^{n-1}(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitSegment {
    points: Vec<CirclePoint>,
}

impl OrbitSegment {
    pub fn base(&self) -> &CirclePoint {
        &self.points[0]
    }

    pub fn points(&self) -> &[CirclePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum MapSpec {
    TimesP { p: u64 },
    Pl { lift: Vec<LiftPoint> },
}

#[derive(Serialize, Deserialize)]
struct LiftPoint(
    #[serde(with = "crate::rational::serde_str")] Rational,
    #[serde(with = "crate::rational::serde_str")] Rational,
);

impl TryFrom<MapSpec> for PLCircleMap {
    type Error = MapError;
    fn try_from(spec: MapSpec) -> Result<Self, MapError> {
        match spec {
            MapSpec::TimesP { p } => PLCircleMap::times_p(p),
            MapSpec::Pl { lift } => PLCircleMap::pl(lift.into_iter().map(|l| (l.0, l.1)).collect()),
        }
    }
}

impl From<PLCircleMap> for MapSpec {
    fn from(map: PLCircleMap) -> Self {
        match map.times_p {
            Some(p) => MapSpec::TimesP { p },
            None => MapSpec::Pl {
                lift: map
                    .breakpoints
                    .into_iter()
                    .map(|(t, v)| LiftPoint(t, v))
                    .collect(),
            },
        }
    }
}

#[cfg(test)]
pub(crate) fn apply_via_lift(map: &PLCircleMap, x: &CirclePoint) -> CirclePoint {
    CirclePoint::reduce(&map.lift(x.value()))
}
