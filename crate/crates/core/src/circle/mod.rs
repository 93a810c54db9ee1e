//! Exact geometry on the circle `R/Z`: points, the quotient metric, open
//! arcs, finite unions of open arcs and their Lebesgue measure.

mod arcs;
mod point;

pub use arcs::{open_ball, Arc, ArcUnion};
pub use point::{circle_dist, reduce, CirclePoint};

use thiserror::Error;

use crate::rational::{Exact, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircleError {
    #[error("ball radius must be positive, got {}", Exact(.0))]
    NonPositiveRadius(Rational),
    #[error("arc length must lie in (0, 1], got {}", Exact(.0))]
    ArcLength(Rational),
    #[error("full_circle is set but arcs were also listed")]
    FullCircleWithArcs,
}
