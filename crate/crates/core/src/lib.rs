//! Exact Bowen balls, separated sets and dynamical Ramsey colorings on the
//! circle.
//!
//! All arithmetic is over [`Rational`]. Sets on the circle are [`ArcUnion`]s
//! in canonical form, so equality of sets is structural equality.
//!
//! ```
//! use bowen::{bowen_ball, CirclePoint, PLCircleMap};
//! use bowen::rational::ratio;
//!
//! let f = PLCircleMap::times_p(6).unwrap();
//! let ball = bowen_ball(&f, &CirclePoint::zero(), 2, &ratio(1, 6)).unwrap();
//! assert_eq!(ball.measure(), ratio(1, 9));
//! ```
//!
//! The guide under `book/` walks through each module; its snippets run as
//! doc-tests of this crate.

pub mod circle;
pub mod cliques;
pub mod coloring;
pub mod dynamics;
pub mod rational;
pub mod separated;
pub mod verify;

pub use circle::{circle_dist, open_ball, reduce, Arc, ArcUnion, CirclePoint};
pub use dynamics::{bowen_ball, bowen_dist, preimage, OrbitSegment, PLCircleMap};
pub use rational::{format_rational, parse_rational, Rational};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/circle.md")]
    mod circle {}
    #[doc = include_str!("../../../book/src/dynamics.md")]
    mod dynamics {}
    #[doc = include_str!("../../../book/src/separated.md")]
    mod separated {}
    #[doc = include_str!("../../../book/src/colorings.md")]
    mod colorings {}
    #[doc = include_str!("../../../book/src/checks.md")]
    mod checks {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
