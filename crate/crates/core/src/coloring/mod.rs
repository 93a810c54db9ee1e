//! Edge colorings of complete graphs built from orbits, monochromatic
//! clique detection, and Ramsey lower-bound certificates.
//!
//! Given an (n, ε)-separated set, every pair of points has a least iterate
//! index at which their orbits are more than ε apart. Using that index as
//! the edge color gives an n-coloring of the complete graph on the set. A
//! monochromatic clique on k + 1 vertices would be k + 1 points pairwise
//! more than ε apart at a single time, which is impossible when the space
//! holds at most k such points. Hence `R(k+1, n) > |set|`.

mod certificate;
mod mono;

pub use certificate::{
    emit_certificate, verify_certificate, CapacityClaim, CertificateError, RamseyCertificate,
};
pub use mono::{find_mono_clique, MonoClique};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::circle::CirclePoint;
use crate::dynamics::PLCircleMap;
use crate::rational::{ratio, Rational};
use crate::separated::{grid, OrbitTable, SeparatedError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("pair ({0}, {1}) is not separated, so it has no color")]
    NotSeparatedPair(usize, usize),
    #[error("monochromatic clique search needs k >= 3, got {0}")]
    CliqueTooSmall(usize),
    #[error("invalid coloring: {0}")]
    Invalid(String),
    #[error(transparent)]
    Separated(#[from] SeparatedError),
}

/// Complete graph on labelled vertices, each edge colored from `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ColoringDoc", into = "ColoringDoc")]
pub struct EdgeColoring {
    vertices: Vec<String>,
    num_colors: usize,
    // upper triangle, row-major
    colors: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ColoringDoc {
    n: usize,
    vertices: Vec<String>,
    edges: Vec<(usize, usize, u32)>,
}

impl TryFrom<ColoringDoc> for EdgeColoring {
    type Error = ColoringError;
    fn try_from(doc: ColoringDoc) -> Result<Self, ColoringError> {
        EdgeColoring::from_edges(doc.vertices, doc.n, &doc.edges)
    }
}

impl From<EdgeColoring> for ColoringDoc {
    fn from(c: EdgeColoring) -> Self {
        let edges = c.edges().collect();
        ColoringDoc {
            n: c.num_colors,
            vertices: c.vertices,
            edges,
        }
    }
}

fn pair_count(m: usize) -> usize {
    m * m.saturating_sub(1) / 2
}

impl EdgeColoring {
    /// Colors every pair `i < j` with `color(i, j)`.
    pub fn from_fn(
        vertices: Vec<String>,
        num_colors: usize,
        color: impl Fn(usize, usize) -> u32,
    ) -> Result<Self, ColoringError> {
        let m = vertices.len();
        let mut colors = Vec::with_capacity(pair_count(m));
        for i in 0..m {
            for j in i + 1..m {
                colors.push(color(i, j));
            }
        }
        Self::checked(vertices, num_colors, colors)
    }

    /// Builds from an explicit edge list; every pair must appear once.
    pub fn from_edges(
        vertices: Vec<String>,
        num_colors: usize,
        edges: &[(usize, usize, u32)],
    ) -> Result<Self, ColoringError> {
        let m = vertices.len();
        if edges.len() != pair_count(m) {
            return Err(ColoringError::Invalid(format!(
                "{} vertices need {} edges, found {}",
                m,
                pair_count(m),
                edges.len()
            )));
        }
        let mut colors = vec![None; pair_count(m)];
        for &(i, j, c) in edges {
            if i >= j || j >= m {
                return Err(ColoringError::Invalid(format!(
                    "edge [{i}, {j}] must satisfy i < j < {m}"
                )));
            }
            let slot = &mut colors[offset(m, i, j)];
            if slot.is_some() {
                return Err(ColoringError::Invalid(format!(
                    "edge [{i}, {j}] listed twice"
                )));
            }
            *slot = Some(c);
        }
        let colors = colors
            .into_iter()
            .map(|c| c.expect("all slots filled"))
            .collect();
        Self::checked(vertices, num_colors, colors)
    }

    fn checked(
        vertices: Vec<String>,
        num_colors: usize,
        colors: Vec<u32>,
    ) -> Result<Self, ColoringError> {
        if let Some(pos) = colors.iter().position(|&c| c as usize >= num_colors) {
            return Err(ColoringError::Invalid(format!(
                "edge #{pos} has color {} outside 0..{num_colors}",
                colors[pos]
            )));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = vertices.iter().find(|v| !seen.insert(*v)) {
            return Err(ColoringError::Invalid(format!(
                "vertex label {dup} repeated"
            )));
        }
        Ok(EdgeColoring {
            vertices,
            num_colors,
            colors,
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    pub fn color(&self, i: usize, j: usize) -> u32 {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.colors[offset(self.vertices.len(), a, b)]
    }

    /// Recolors one edge. Meant for building counterexamples.
    pub fn set_color(&mut self, i: usize, j: usize, color: u32) -> Result<(), ColoringError> {
        if color as usize >= self.num_colors {
            return Err(ColoringError::Invalid(format!(
                "color {color} out of range"
            )));
        }
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        let m = self.vertices.len();
        self.colors[offset(m, a, b)] = color;
        Ok(())
    }

    /// `(i, j, color)` for `i < j`, row-major.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        let m = self.vertices.len();
        (0..m)
            .flat_map(move |i| (i + 1..m).map(move |j| (i, j)))
            .zip(&self.colors)
            .map(|((i, j), &c)| (i, j, c))
    }

    /// Number of distinct colors that actually occur.
    pub fn colors_used(&self) -> usize {
        let mut used = vec![false; self.num_colors];
        for &c in &self.colors {
            used[c as usize] = true;
        }
        used.into_iter().filter(|&u| u).count()
    }

    /// SHA-256 of the canonical JSON form, hex encoded.
    pub fn digest(&self) -> String {
        let json = serde_json::to_vec(self).expect("coloring serialises");
        hex::encode(Sha256::digest(&json))
    }

    /// One color class in DIMACS edge format (1-based vertices), for
    /// external clique solvers.
    pub fn dimacs_color_class(&self, color: u32) -> String {
        let edges: Vec<_> = self.edges().filter(|e| e.2 == color).collect();
        let mut out = format!(
            "c color class {color} of a {}-coloring\np edge {} {}\n",
            self.num_colors,
            self.vertices.len(),
            edges.len()
        );
        for (i, j, _) in edges {
            out.push_str(&format!("e {} {}\n", i + 1, j + 1));
        }
        out
    }
}

fn offset(m: usize, i: usize, j: usize) -> usize {
    i * (2 * m - i - 1) / 2 + (j - i - 1)
}

/// Colors each pair of `points` by its least separating index.
///
/// Separation is recomputed here; any pair without a separating index is an
/// error rather than a missing color.
pub fn color_complete_graph(
    map: &PLCircleMap,
    points: &[CirclePoint],
    n: usize,
    eps: &Rational,
) -> Result<EdgeColoring, ColoringError> {
    if n == 0 {
        return Err(SeparatedError::ZeroSteps.into());
    }
    let mut seen = std::collections::HashSet::new();
    if let Some(dup) = points.iter().find(|p| !seen.insert(*p)) {
        return Err(SeparatedError::DuplicatePoint(dup.clone()).into());
    }
    let table = OrbitTable::new(map, points, n, eps);
    let labels = points.iter().map(|p| p.to_string()).collect();
    let m = points.len();
    let mut colors = Vec::with_capacity(pair_count(m));
    for i in 0..m {
        for j in i + 1..m {
            let c = table
                .least_index(i, j)
                .ok_or(ColoringError::NotSeparatedPair(i, j))?;
            colors.push(c as u32);
        }
    }
    EdgeColoring::checked(labels, n, colors)
}

/// The r-coloring of `K_{2^r}` on `{i / 2^r}` under the doubling map with
/// threshold 1/3.
pub fn doubling_coloring(r: usize) -> Result<EdgeColoring, ColoringError> {
    assert!((1..=24).contains(&r), "r must be in 1..=24");
    let f2 = PLCircleMap::times_p(2).expect("p = 2");
    color_complete_graph(&f2, &grid(1 << r), r, &ratio(1, 3))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(n: i64, d: i64) -> CirclePoint {
        CirclePoint::from_ratio(n, d)
    }

    #[test]
    fn quarter_points_coloring() {
        let c = doubling_coloring(2).unwrap();
        assert_eq!(c.vertex_count(), 4);
        let zero: Vec<_> = c.edges().filter(|e| e.2 == 0).map(|e| (e.0, e.1)).collect();
        assert_eq!(zero, vec![(0, 2), (1, 3)]);
        assert_eq!(c.edges().filter(|e| e.2 == 1).count(), 4);
        let f2 = PLCircleMap::times_p(2).unwrap();
        let direct = color_complete_graph(&f2, &grid(4), 2, &ratio(1, 3)).unwrap();
        assert_eq!(direct, c);
    }

    #[test]
    fn antipodal_pair_and_k8() {
        let id = PLCircleMap::identity();
        let c = color_complete_graph(&id, &[pt(1, 8), pt(5, 8)], 1, &ratio(1, 3)).unwrap();
        assert_eq!(c.edges().collect::<Vec<_>>(), vec![(0, 1, 0)]);
        let k8 = doubling_coloring(3).unwrap();
        assert_eq!(k8.vertex_count(), 8);
        assert_eq!(k8.edges().count(), 28);
        assert_eq!(k8.colors_used(), 3);
        let one = doubling_coloring(1).unwrap();
        assert_eq!(one.edges().collect::<Vec<_>>(), vec![(0, 1, 0)]);
    }

    #[test]
    fn unseparated_pair_is_an_error() {
        let f2 = PLCircleMap::times_p(2).unwrap();
        assert_eq!(
            color_complete_graph(&f2, &[pt(0, 1), pt(1, 8)], 2, &ratio(1, 3)),
            Err(ColoringError::NotSeparatedPair(0, 1))
        );
    }

    #[test]
    fn json_form_and_validation() {
        let c = doubling_coloring(1).unwrap();
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(
            text,
            r#"{"n":1,"vertices":["0/1","1/2"],"edges":[[0,1,0]]}"#
        );
        let back: EdgeColoring = serde_json::from_str(&text).unwrap();
        assert_eq!(back.digest(), c.digest());
        for bad in [
            r#"{"n":1,"vertices":["a","b"],"edges":[]}"#,
            r#"{"n":1,"vertices":["a","b"],"edges":[[0,1,1]]}"#,
            r#"{"n":1,"vertices":["a","b"],"edges":[[1,0,0]]}"#,
            r#"{"n":1,"vertices":["a","a"],"edges":[[0,1,0]]}"#,
            r#"{"n":1,"vertices":["a","b"],"edges":[[0,1,0]],"extra":true}"#,
        ] {
            assert!(serde_json::from_str::<EdgeColoring>(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn digest_tracks_content() {
        let mut c = doubling_coloring(3).unwrap();
        let before = c.digest();
        assert_eq!(before.len(), 64);
        c.set_color(0, 1, 0).unwrap();
        assert_ne!(c.digest(), before);
    }

    #[test]
    fn dimacs_export() {
        let c = doubling_coloring(2).unwrap();
        assert_eq!(
            c.dimacs_color_class(0),
            "c color class 0 of a 2-coloring\np edge 4 2\ne 1 3\ne 2 4\n"
        );
    }
}
