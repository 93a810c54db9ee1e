use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{ColoringError, EdgeColoring};
use crate::cliques::{find_clique, BitGraph};

/// A clique whose edges all share one color.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoClique {
    pub color: u32,
    pub vertices: Vec<usize>,
}

fn color_class(coloring: &EdgeColoring, color: u32) -> BitGraph {
    let mut g = BitGraph::new(coloring.vertex_count());
    for (i, j, c) in coloring.edges() {
        if c == color {
            g.add_edge(i, j);
        }
    }
    g
}

/// Looks for a monochromatic `K_k`, `k >= 3`. Color classes are searched in
/// parallel; the hit in the lowest color is returned.
pub fn find_mono_clique(
    coloring: &EdgeColoring,
    k: usize,
) -> Result<Option<MonoClique>, ColoringError> {
    if k < 3 {
        return Err(ColoringError::CliqueTooSmall(k));
    }
    if coloring.vertex_count() < k {
        return Ok(None);
    }
    let hits: Vec<Option<MonoClique>> = (0..coloring.num_colors() as u32)
        .into_par_iter()
        .map(|color| {
            let g = color_class(coloring, color);
            let vertices = if k == 3 {
                g.find_triangle().map(|t| t.to_vec())
            } else {
                find_clique(&g, k)
            };
            vertices.map(|vertices| MonoClique { color, vertices })
        })
        .collect();
    Ok(hits.into_iter().flatten().next())
}
