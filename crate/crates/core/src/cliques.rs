//! Dense bitset graphs and clique search.
//!
//! Used twice: maximum cliques of the "is separated" relation, and
//! monochromatic cliques inside one color class of an edge coloring.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    words: Vec<u64>,
    len: usize,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::new(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn capacity(&self) -> usize {
        self.len
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn intersection(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
            len: self.len,
        }
    }

    /// Smallest element of `self ∩ other`.
    pub fn first_common(&self, other: &BitSet) -> Option<usize> {
        self.words
            .iter()
            .zip(&other.words)
            .enumerate()
            .find_map(|(k, (a, b))| {
                let w = a & b;
                (w != 0).then(|| k * 64 + w.trailing_zeros() as usize)
            })
    }

    /// Drops every element `<= i`.
    pub fn retain_above(&mut self, i: usize) {
        let word = i / 64;
        for w in &mut self.words[..word] {
            *w = 0;
        }
        let bit = i % 64;
        let mask = if bit == 63 { 0 } else { !0u64 << (bit + 1) };
        self.words[word] &= mask;
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find_map(|(k, &w)| (w != 0).then(|| k * 64 + w.trailing_zeros() as usize))
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + t)
            })
        })
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Undirected simple graph as adjacency bitsets.
#[derive(Clone, Debug)]
pub struct BitGraph {
    rows: Vec<BitSet>,
}

impl BitGraph {
    pub fn new(vertices: usize) -> Self {
        BitGraph {
            rows: vec![BitSet::new(vertices); vertices],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.rows.len()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert_ne!(u, v, "no loops");
        self.rows[u].insert(v);
        self.rows[v].insert(u);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn neighbours(&self, u: usize) -> &BitSet {
        &self.rows[u]
    }

    /// Lexicographically first triangle `u < v < w`, by row intersection.
    pub fn find_triangle(&self) -> Option<[usize; 3]> {
        for u in 0..self.rows.len() {
            let mut later = self.rows[u].clone();
            later.retain_above(u);
            for v in later.iter() {
                let mut third = later.clone();
                third.retain_above(v);
                if let Some(w) = third.first_common(&self.rows[v]) {
                    return Some([u, v, w]);
                }
            }
        }
        None
    }
}

/// Node budget ran out; carries the best clique seen so far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BudgetExhausted {
    pub best: Vec<usize>,
    pub nodes: u64,
}

struct Search<'g> {
    graph: &'g BitGraph,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.nodes <= self.budget
    }

    /// Greedy sequential coloring of `cand`; returns vertices in the order
    /// they should be expanded (last = highest color) and their colors.
    fn color_order(&self, cand: &BitSet) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::with_capacity(cand.count());
        let mut colors = Vec::with_capacity(order.capacity());
        let mut uncolored = cand.clone();
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut q = uncolored.clone();
            while let Some(v) = q.first() {
                q.remove(v);
                uncolored.remove(v);
                q = complement_row(self.graph.neighbours(v), &q);
                order.push(v);
                colors.push(color);
            }
        }
        (order, colors)
    }

    fn expand_max(
        &mut self,
        current: &mut Vec<usize>,
        mut cand: BitSet,
        best: &mut Vec<usize>,
    ) -> bool {
        if !self.tick() {
            return false;
        }
        let (order, colors) = self.color_order(&cand);
        for idx in (0..order.len()).rev() {
            if current.len() + colors[idx] <= best.len() {
                return true;
            }
            let v = order[idx];
            current.push(v);
            let next = cand.intersection(self.graph.neighbours(v));
            if next.is_empty() {
                if current.len() > best.len() {
                    *best = current.clone();
                }
            } else if !self.expand_max(current, next, best) {
                current.pop();
                return false;
            }
            current.pop();
            cand.remove(v);
        }
        true
    }

    /// Some clique of exactly `need` vertices inside `cand`, if one exists.
    fn find_sized(&mut self, mut cand: BitSet, need: usize) -> Result<Option<Vec<usize>>, ()> {
        if need == 0 {
            return Ok(Some(Vec::new()));
        }
        if !self.tick() {
            return Err(());
        }
        let (order, colors) = self.color_order(&cand);
        for idx in (0..order.len()).rev() {
            if colors[idx] < need {
                return Ok(None);
            }
            let v = order[idx];
            let next = cand.intersection(self.graph.neighbours(v));
            if let Some(mut rest) = self.find_sized(next, need - 1)? {
                rest.push(v);
                return Ok(Some(rest));
            }
            cand.remove(v);
        }
        Ok(None)
    }
}

fn complement_row(row: &BitSet, within: &BitSet) -> BitSet {
    BitSet {
        words: row
            .words
            .iter()
            .zip(&within.words)
            .map(|(r, w)| !r & w)
            .collect(),
        len: row.len,
    }
}

/// Maximum clique by branch and bound with greedy-coloring bounds.
///
/// Among all maximum cliques the lexicographically smallest sorted vertex
/// list is returned. `budget` caps the number of search nodes over both the
/// sizing pass and the tie-break pass.
pub fn max_clique(graph: &BitGraph, budget: u64) -> Result<Vec<usize>, BudgetExhausted> {
    let n = graph.vertex_count();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut search = Search {
        graph,
        nodes: 0,
        budget,
    };
    let mut best = vec![0];
    let finished = search.expand_max(&mut Vec::new(), BitSet::full(n), &mut best);
    best.sort_unstable();
    if !finished {
        return Err(BudgetExhausted {
            best,
            nodes: search.nodes,
        });
    }
    let size = best.len();

    // Tie-break: pick the smallest usable vertex at each position.
    let mut chosen = Vec::with_capacity(size);
    let mut cand = BitSet::full(n);
    while chosen.len() < size {
        let need = size - chosen.len() - 1;
        let mut picked = None;
        for v in cand.iter() {
            let mut next = cand.intersection(graph.neighbours(v));
            next.retain_above(v);
            match search.find_sized(next.clone(), need) {
                Ok(Some(_)) => {
                    picked = Some((v, next));
                    break;
                }
                Ok(None) => {}
                Err(()) => {
                    return Err(BudgetExhausted {
                        best,
                        nodes: search.nodes,
                    })
                }
            }
        }
        let (v, next) = picked.expect("a clique of the sizing pass's size exists");
        chosen.push(v);
        cand = next;
    }
    Ok(chosen)
}

/// Some clique on exactly `k` vertices (sorted), or `None`.
pub fn find_clique(graph: &BitGraph, k: usize) -> Option<Vec<usize>> {
    let n = graph.vertex_count();
    if k > n {
        return None;
    }
    let mut search = Search {
        graph,
        nodes: 0,
        budget: u64::MAX,
    };
    let mut found = search
        .find_sized(BitSet::full(n), k)
        .expect("unbounded budget")?;
    found.sort_unstable();
    Some(found)
}
