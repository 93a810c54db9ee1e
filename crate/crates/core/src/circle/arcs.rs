use num::{One, Zero};
use serde::{Deserialize, Serialize};

use super::point::CirclePoint;
use super::CircleError;
use crate::rational::{half, Rational};

/// Open arc starting at `start` and running counterclockwise for `length`.
///
/// `length` lies in `(0, 1]`. Length one is the circle with `start` removed,
/// the only open set of full measure that is not the whole circle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ArcDoc", into = "ArcDoc")]
pub struct Arc {
    start: CirclePoint,
    length: Rational,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArcDoc {
    start: CirclePoint,
    #[serde(with = "crate::rational::serde_str")]
    length: Rational,
}

impl TryFrom<ArcDoc> for Arc {
    type Error = CircleError;
    fn try_from(doc: ArcDoc) -> Result<Self, CircleError> {
        Arc::new(doc.start, doc.length)
    }
}

impl From<Arc> for ArcDoc {
    fn from(arc: Arc) -> Self {
        ArcDoc {
            start: arc.start,
            length: arc.length,
        }
    }
}

impl Arc {
    pub fn new(start: CirclePoint, length: Rational) -> Result<Self, CircleError> {
        if length <= Rational::zero() || length > Rational::one() {
            return Err(CircleError::ArcLength(length));
        }
        Ok(Arc { start, length })
    }

    /// The open arc `(a, b)` traversed counterclockwise from `a` to `b`.
    /// `a == b` gives the circle minus that point.
    pub fn between(a: &CirclePoint, b: &CirclePoint) -> Self {
        let mut length = a.ccw_to(b);
        if length.is_zero() {
            length = Rational::one();
        }
        Arc {
            start: a.clone(),
            length,
        }
    }

    pub fn start(&self) -> &CirclePoint {
        &self.start
    }

    pub fn length(&self) -> &Rational {
        &self.length
    }

    pub fn end(&self) -> CirclePoint {
        self.start.rotate(&self.length)
    }

    pub fn midpoint(&self) -> CirclePoint {
        self.start.rotate(&(&self.length * half()))
    }

    pub fn contains(&self, x: &CirclePoint) -> bool {
        let offset = self.start.ccw_to(x);
        !offset.is_zero() && offset < self.length
    }
}

/// A finite union of pairwise disjoint open arcs, kept in canonical form.
///
/// Canonical form: either the full circle, or arcs sorted by start whose
/// endpoints are all excluded from the set. Two arcs may share an endpoint
/// (that point is missing from the union) but never overlap. Because the
/// form is unique, `==` is exact set equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ArcUnionDoc", into = "ArcUnionDoc")]
pub struct ArcUnion {
    full_circle: bool,
    arcs: Vec<Arc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArcUnionDoc {
    full_circle: bool,
    arcs: Vec<Arc>,
}

impl TryFrom<ArcUnionDoc> for ArcUnion {
    type Error = CircleError;
    fn try_from(doc: ArcUnionDoc) -> Result<Self, CircleError> {
        if doc.full_circle {
            if !doc.arcs.is_empty() {
                return Err(CircleError::FullCircleWithArcs);
            }
            return Ok(ArcUnion::full());
        }
        Ok(ArcUnion::from_arcs(doc.arcs))
    }
}

impl From<ArcUnion> for ArcUnionDoc {
    fn from(u: ArcUnion) -> Self {
        ArcUnionDoc {
            full_circle: u.full_circle,
            arcs: u.arcs,
        }
    }
}

impl ArcUnion {
    pub fn empty() -> Self {
        ArcUnion {
            full_circle: false,
            arcs: Vec::new(),
        }
    }

    pub fn full() -> Self {
        ArcUnion {
            full_circle: true,
            arcs: Vec::new(),
        }
    }

    pub fn from_arc(arc: Arc) -> Self {
        ArcUnion {
            full_circle: false,
            arcs: vec![arc],
        }
    }

    /// Union of arbitrary (possibly overlapping) open arcs.
    pub fn from_arcs(arcs: Vec<Arc>) -> Self {
        let cuts = arcs
            .iter()
            .flat_map(|a| [a.start.clone(), a.end()])
            .collect();
        Self::from_cuts(cuts, |x| arcs.iter().any(|a| a.contains(x)))
    }

    /// Builds the open set described by a membership predicate that is
    /// constant on each gap between consecutive `cuts`.
    ///
    /// The predicate is sampled at every cut and at the midpoint of every
    /// gap. If the sampled set is not open at some cut, that cut is dropped
    /// from the result (the open interior is returned).
    pub fn from_cuts<F>(mut cuts: Vec<CirclePoint>, is_in: F) -> Self
    where
        F: Fn(&CirclePoint) -> bool,
    {
        cuts.sort();
        cuts.dedup();
        let m = cuts.len();
        if m == 0 {
            return if is_in(&CirclePoint::zero()) {
                Self::full()
            } else {
                Self::empty()
            };
        }
        let gap_in: Vec<bool> = (0..m)
            .map(|i| is_in(&Arc::between(&cuts[i], &cuts[(i + 1) % m]).midpoint()))
            .collect();
        // A cut stays a boundary point of the result exactly when it is
        // excluded and touches at least one included gap.
        let essential: Vec<usize> = (0..m)
            .filter(|&i| {
                let before = gap_in[(i + m - 1) % m];
                let after = gap_in[i];
                let point_in = before && after && is_in(&cuts[i]);
                !point_in && (before || after)
            })
            .collect();
        if essential.is_empty() {
            return if gap_in[0] {
                Self::full()
            } else {
                Self::empty()
            };
        }
        let q = essential.len();
        let arcs = (0..q)
            .filter(|&k| gap_in[essential[k]])
            .map(|k| Arc::between(&cuts[essential[k]], &cuts[essential[(k + 1) % q]]))
            .collect();
        ArcUnion {
            full_circle: false,
            arcs,
        }
    }

    pub fn is_full(&self) -> bool {
        self.full_circle
    }

    pub fn is_empty(&self) -> bool {
        !self.full_circle && self.arcs.is_empty()
    }

    /// Arcs in canonical order; empty for the full circle.
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Connected components: the arcs themselves, since neighbouring arcs
    /// are separated by an excluded endpoint.
    pub fn components(&self) -> &[Arc] {
        &self.arcs
    }

    /// Arc endpoints, in no particular order and possibly repeated.
    pub fn boundary(&self) -> Vec<CirclePoint> {
        self.arcs
            .iter()
            .flat_map(|a| [a.start.clone(), a.end()])
            .collect()
    }

    pub fn contains(&self, x: &CirclePoint) -> bool {
        self.full_circle || self.component_of(x).is_some()
    }

    /// Index into [`components`](Self::components) of the arc holding `x`.
    /// Always `None` for the full circle, which has no arcs.
    pub fn component_of(&self, x: &CirclePoint) -> Option<usize> {
        if self.arcs.is_empty() {
            return None;
        }
        // The only candidate is the last arc starting strictly before x,
        // or the last arc overall when that one wraps past zero.
        let idx = self.arcs.partition_point(|a| a.start < *x);
        let candidate = if idx == 0 {
            self.arcs.len() - 1
        } else {
            idx - 1
        };
        self.arcs[candidate].contains(x).then_some(candidate)
    }

    pub fn measure(&self) -> Rational {
        if self.full_circle {
            return Rational::one();
        }
        self.arcs
            .iter()
            .fold(Rational::zero(), |acc, a| acc + &a.length)
    }

    fn combine(&self, other: &ArcUnion, keep: impl Fn(bool, bool) -> bool) -> ArcUnion {
        let mut cuts = self.boundary();
        cuts.extend(other.boundary());
        Self::from_cuts(cuts, |x| keep(self.contains(x), other.contains(x)))
    }

    pub fn intersect(&self, other: &ArcUnion) -> ArcUnion {
        if self.full_circle {
            return other.clone();
        }
        if other.full_circle {
            return self.clone();
        }
        if self.is_empty() || other.is_empty() {
            return Self::empty();
        }
        self.combine(other, |a, b| a && b)
    }

    pub fn union(&self, other: &ArcUnion) -> ArcUnion {
        self.combine(other, |a, b| a || b)
    }

    /// Interior of the complement. Differs from the set complement by the
    /// finitely many arc endpoints, a set of measure zero.
    pub fn complement(&self) -> ArcUnion {
        // Endpoints test as "in" here but always border an arc, so the
        // interior rule in `from_cuts` drops them.
        Self::from_cuts(self.boundary(), |x| !self.contains(x))
    }

    /// Rotation `{a + t : a in self}`.
    pub fn translate(&self, t: &CirclePoint) -> ArcUnion {
        if self.full_circle || self.arcs.is_empty() {
            return self.clone();
        }
        let mut arcs: Vec<Arc> = self
            .arcs
            .iter()
            .map(|a| Arc {
                start: a.start.rotate(t.value()),
                length: a.length.clone(),
            })
            .collect();
        arcs.sort_by(|a, b| a.start.cmp(&b.start));
        ArcUnion {
            full_circle: false,
            arcs,
        }
    }

    pub fn is_subset_of(&self, other: &ArcUnion) -> bool {
        self.intersect(other) == *self
    }

    /// Largest component (first in canonical order on ties).
    pub fn largest_component(&self) -> Option<&Arc> {
        self.arcs
            .iter()
            .fold(None, |best: Option<&Arc>, a| match best {
                Some(b) if b.length >= a.length => Some(b),
                _ => Some(a),
            })
    }
}

/// `{y : d(c, y) < r}`.
pub fn open_ball(c: &CirclePoint, r: &Rational) -> Result<ArcUnion, CircleError> {
    if *r <= Rational::zero() {
        return Err(CircleError::NonPositiveRadius(r.clone()));
    }
    let h = half();
    if *r > h {
        return Ok(ArcUnion::full());
    }
    let arc = if *r == h {
        Arc::new(c.rotate(&h), Rational::one())?
    } else {
        Arc::new(c.rotate(&-r), r * Rational::from_integer(2.into()))?
    };
    Ok(ArcUnion::from_arc(arc))
}

/// `(a, b) ∪ (c, d)` in canonical order, `∅` when empty, `T` for the
/// whole circle. An arc of length 1 prints as `(a, a)`.
impl std::fmt::Display for ArcUnion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.full_circle {
            return write!(f, "T");
        }
        if self.arcs.is_empty() {
            return write!(f, "∅");
        }
        for (i, a) in self.arcs.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "({}, {})", a.start, a.end())?;
        }
        Ok(())
    }
}
