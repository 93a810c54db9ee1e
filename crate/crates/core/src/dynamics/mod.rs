//! Piecewise-linear circle maps, exact preimages, the Bowen metric and
//! Bowen balls.

mod bowen;
mod map;

pub use bowen::{bowen_ball, bowen_ball_with_limit, bowen_dist, preimage, preimage_with_limit};
pub use map::{OrbitSegment, PLCircleMap};

use thiserror::Error;

use crate::circle::{CircleError, CirclePoint};
use crate::rational::{DigitLimitExceeded, Exact, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("a lift needs at least two breakpoints, got {0}")]
    TooFewBreakpoints(usize),
    #[error("first breakpoint must sit at t = 0, got {}", Exact(.0))]
    StartNotZero(Rational),
    #[error("last breakpoint must sit at t = 1, got {}", Exact(.0))]
    EndNotOne(Rational),
    #[error("breakpoint {0} does not strictly increase in t")]
    NonMonotone(usize),
    #[error("lift degree F(1) - F(0) = {} is not an integer", Exact(.0))]
    NonIntegerDegree(Rational),
    #[error("multiplier p must be at least 1")]
    ZeroMultiplier,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DynamicsError {
    #[error("number of steps must be at least 1")]
    ZeroSteps,
    #[error("piece {piece} is constant at {value}, which lies inside the target set")]
    UnsupportedDegenerate { piece: usize, value: CirclePoint },
    #[error(transparent)]
    DigitLimit(#[from] DigitLimitExceeded),
    #[error(transparent)]
    Circle(#[from] CircleError),
}
