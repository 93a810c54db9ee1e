use num::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::VerifyError;
use crate::circle::{circle_dist, open_ball, CirclePoint};
use crate::dynamics::{preimage, PLCircleMap};
use crate::rational::{ceil_int, half, ratio, Rational};
use crate::separated::{is_separated, OrbitTable, SeparatedError, SeparatedSetReport};

/// A point whose `×p` orbit stays within `delta` of a target sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShadowResult {
    pub y: CirclePoint,
    pub p: u64,
    #[serde(with = "crate::rational::serde_str")]
    pub delta: Rational,
    /// `d(f_p^i y, targets[i])`.
    #[serde(with = "crate::rational::serde_str_vec")]
    pub deviations: Vec<Rational>,
}

/// Smallest `p` with `2·delta·p >= 1`.
///
/// Then `×p` maps any open arc of length `2·delta` onto the circle, missing
/// at most one point, which is enough to hit any nonempty open set.
pub fn min_expansion_p(delta: &Rational) -> Result<u64, VerifyError> {
    if *delta <= Rational::zero() || *delta >= half() {
        return Err(VerifyError::InvalidParameters(format!(
            "delta = {delta} must lie strictly between 0 and 1/2"
        )));
    }
    let p =
        ceil_int(&(Rational::from_integer(1.into()) / (delta * Rational::from_integer(2.into()))));
    p.to_u64()
        .ok_or_else(|| VerifyError::InvalidParameters(format!("p = {p} does not fit in 64 bits")))
}

/// Finds `y` with `d(f_p^i y, targets[i]) < delta` for every `i`.
///
/// The set of all such `y` is `I_0 ∩ f^-1 I_1 ∩ … ∩ f^-(n-1) I_{n-1}`, with
/// `I_j` the open `delta`-ball around `targets[j]`, computed exactly from the
/// back. The returned `y` is the midpoint of its largest component (the
/// first one on ties).
pub fn shadow_orbit(
    targets: &[CirclePoint],
    delta: &Rational,
    p: u64,
) -> Result<ShadowResult, VerifyError> {
    if targets.is_empty() {
        return Err(VerifyError::InvalidParameters(
            "no targets to shadow".into(),
        ));
    }
    if *delta <= Rational::zero() || *delta >= half() {
        return Err(VerifyError::InvalidParameters(format!(
            "delta = {delta} must lie strictly between 0 and 1/2"
        )));
    }
    let f = PLCircleMap::times_p(p).map_err(|e| VerifyError::InvalidParameters(e.to_string()))?;
    let ball = |c: &CirclePoint| open_ball(c, delta).expect("delta > 0");
    let last = targets.len() - 1;
    let mut set = ball(&targets[last]);
    for t in targets[..last].iter().rev() {
        set = ball(t).intersect(&preimage(&f, &set)?);
        if set.is_empty() {
            return Err(VerifyError::EmptyIntersection { p });
        }
    }
    let y = set
        .largest_component()
        .expect("nonempty and not the full circle")
        .midpoint();
    let orbit = f.iterate(&y, targets.len());
    let deviations: Vec<Rational> = orbit
        .points()
        .iter()
        .zip(targets)
        .map(|(a, b)| circle_dist(a, b))
        .collect();
    debug_assert!(deviations.iter().all(|d| d < delta));
    Ok(ShadowResult {
        y,
        p,
        delta: delta.clone(),
        deviations,
    })
}

/// Shadows each target list independently.
pub fn shadow_many(
    target_lists: &[Vec<CirclePoint>],
    delta: &Rational,
    p: u64,
) -> Vec<Result<ShadowResult, VerifyError>> {
    target_lists
        .par_iter()
        .map(|t| shadow_orbit(t, delta, p))
        .collect()
}

/// Outcome of moving a separated set of `g` to a separated set of `×p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransferResult {
    pub p: u64,
    /// Smallest Bowen distance among the input pairs; `None` with fewer
    /// than two points.
    #[serde(with = "crate::rational::serde_opt_str")]
    pub d_min: Option<Rational>,
    #[serde(with = "crate::rational::serde_str")]
    pub delta: Rational,
    pub shadows: Vec<ShadowResult>,
    /// Independent re-certification of the new points under `×p`.
    pub report: SeparatedSetReport,
}

impl TransferResult {
    pub fn points(&self) -> &[CirclePoint] {
        &self.report.points
    }
}

/// Replaces each orbit segment of an `(n, eps)`-separated set of `g` by a
/// `×p` orbit shadowing it.
///
/// With `d_min` the smallest Bowen distance over pairs, the slack is
/// `delta = (d_min - eps) / 2`. Each orbit is shadowed within `delta / 2`
/// using `p = min_expansion_p(delta / 2)`. By the triangle inequality the new
/// points are then more than `d_min - delta > eps` apart in the Bowen metric
/// of `×p`; this is not trusted, the new set is re-certified before it is
/// returned. With fewer than two points there is no slack to measure and
/// `delta = 1/4` is used.
pub fn transfer_separated(
    g: &PLCircleMap,
    points: &[CirclePoint],
    n: usize,
    eps: &Rational,
) -> Result<TransferResult, VerifyError> {
    if n == 0 {
        return Err(SeparatedError::ZeroSteps.into());
    }
    if *eps < Rational::zero() {
        return Err(VerifyError::InvalidParameters(
            "eps must be non-negative".into(),
        ));
    }
    let table = OrbitTable::new(g, points, n, eps);
    let mut closest: Option<(Rational, usize, usize)> = None;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let d = table.bowen_dist(i, j);
            if closest.as_ref().is_none_or(|c| d < c.0) {
                closest = Some((d, i, j));
            }
        }
    }
    let delta = match &closest {
        None => ratio(1, 4),
        Some((d, i, j)) => {
            if d.is_zero() {
                return Err(SeparatedError::DuplicatePoint(points[*i].clone()).into());
            }
            if d < eps {
                return Err(VerifyError::NotSeparated(*i, *j));
            }
            if d == eps {
                return Err(VerifyError::NoSlack(eps.clone()));
            }
            (d - eps) / Rational::from_integer(2.into())
        }
    };
    let tolerance = &delta / Rational::from_integer(2.into());
    let p = min_expansion_p(&tolerance)?;
    let shadows = (0..points.len())
        .into_par_iter()
        .map(|i| shadow_orbit(table.orbit(i), &tolerance, p))
        .collect::<Result<Vec<_>, _>>()?;
    let moved: Vec<CirclePoint> = shadows.iter().map(|s| s.y.clone()).collect();
    let fp = PLCircleMap::times_p(p).expect("p >= 1");
    let report = match is_separated(&fp, &moved, n, eps) {
        Ok(r) => r,
        Err(SeparatedError::DuplicatePoint(_)) => {
            return Err(VerifyError::TransferNotCertified(None))
        }
        Err(e) => return Err(e.into()),
    };
    if !report.certified {
        let bad = report
            .witnesses
            .iter()
            .find(|w| w.2.is_none())
            .map(|w| (w.0, w.1));
        return Err(VerifyError::TransferNotCertified(bad));
    }
    Ok(TransferResult {
        p,
        d_min: closest.map(|c| c.0),
        delta,
        shadows,
        report,
    })
}
