//! The graph `K_chi` of a character and the graph predicates used by the
//! classifier.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::character::{pair_count, pairs, Character, SwingSet};
use crate::error::{Error, Result};
use crate::rational::Rat;

/// An unordered pair `{i, j}` stored with `i < j`.
pub type Edge = (usize, usize);

pub fn edges_disjoint(e: Edge, f: Edge) -> bool {
    e.0 != f.0 && e.0 != f.1 && e.1 != f.0 && e.1 != f.1
}

/// Support graph of a character: an edge for every surviving standard generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharGraph {
    n: usize,
    labels: BTreeMap<Edge, Rat>,
}

impl CharGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.labels.keys().copied().collect()
    }

    pub fn edge_count(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, e: Edge) -> Option<&Rat> {
        self.labels.get(&e)
    }

    pub fn labels(&self) -> &BTreeMap<Edge, Rat> {
        &self.labels
    }

    pub fn degree(&self, v: usize) -> usize {
        self.labels.keys().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Unique edge at a valence-1 vertex.
    pub fn leaf_edge(&self, v: usize) -> Option<Edge> {
        let mut it = self.labels.keys().filter(|&&(a, b)| a == v || b == v);
        match (it.next(), it.next()) {
            (Some(&e), None) => Some(e),
            _ => None,
        }
    }
}

pub fn build_kchi(chi: &Character) -> CharGraph {
    let labels = chi
        .entries()
        .filter(|(_, _, w)| !w.is_zero())
        .map(|(i, j, w)| ((i, j), w.clone()))
        .collect();
    CharGraph { n: chi.n(), labels }
}

/// Vertices that meet at least one edge.
pub fn support_vertices(g: &CharGraph) -> BTreeSet<usize> {
    endpoints(&g.edges())
}

pub fn endpoints(edges: &[Edge]) -> BTreeSet<usize> {
    edges.iter().flat_map(|&(a, b)| [a, b]).collect()
}

/// Witness `(e; f, g)` where `e` shares no endpoint with `f` or `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DisjointFromTwo {
    pub edge: Edge,
    pub others: (Edge, Edge),
}

pub fn find_edge_disjoint_from_two(g: &CharGraph) -> Option<DisjointFromTwo> {
    disjoint_from_two_in(&g.edges())
}

/// Lexicographically least `(e, f, g)` with `f < g`, over a sorted edge list.
pub fn disjoint_from_two_in(edges: &[Edge]) -> Option<DisjointFromTwo> {
    for &e in edges {
        let mut others = edges.iter().copied().filter(|&f| edges_disjoint(e, f));
        if let (Some(f), Some(g)) = (others.next(), others.next()) {
            return Some(DisjointFromTwo { edge: e, others: (f, g) });
        }
    }
    None
}

/// Lexicographically least pair of disjoint edges.
pub fn find_disjoint_pair(edges: &[Edge]) -> Option<(Edge, Edge)> {
    edges.iter().enumerate().find_map(|(k, &e)| {
        edges[k + 1..].iter().find(|&&f| edges_disjoint(e, f)).map(|&f| (e, f))
    })
}

/// Three pairwise disjoint edges, lexicographically least.
pub fn find_disjoint_triple(edges: &[Edge]) -> Option<[Edge; 3]> {
    for (a, &e) in edges.iter().enumerate() {
        for (b, &f) in edges.iter().enumerate().skip(a + 1) {
            if !edges_disjoint(e, f) {
                continue;
            }
            if let Some(&g) = edges[b + 1..].iter().find(|&&g| edges_disjoint(e, g) && edges_disjoint(f, g)) {
                return Some([e, f, g]);
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShapeClass {
    Empty,
    Star { center: usize, leaves: Vec<usize> },
    SmallK4 { vertices: Vec<usize> },
    HasDisjointFromTwo(DisjointFromTwo),
    Other,
}

pub fn shape_classify(g: &CharGraph) -> ShapeClass {
    shape_of_edges(&g.edges())
}

/// Shape of a sorted, duplicate-free edge list.
pub fn shape_of_edges(edges: &[Edge]) -> ShapeClass {
    if edges.is_empty() {
        return ShapeClass::Empty;
    }
    if let Some(w) = disjoint_from_two_in(edges) {
        return ShapeClass::HasDisjointFromTwo(w);
    }
    let (a, b) = edges[0];
    for center in [a, b] {
        if edges.iter().all(|&(x, y)| x == center || y == center) {
            let leaves = edges.iter().map(|&(x, y)| if x == center { y } else { x }).collect();
            return ShapeClass::Star { center, leaves };
        }
    }
    let vertices = endpoints(edges);
    if vertices.len() <= 4 {
        return ShapeClass::SmallK4 { vertices: vertices.into_iter().collect() };
    }
    ShapeClass::Other
}

/// Matching values `(x, y, z)` of a `P_4` character on `{12|34}`, `{13|24}`
/// and `{14|23}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingValues {
    pub x: Rat,
    pub y: Rat,
    pub z: Rat,
}

impl MatchingValues {
    /// The `P_4` character taking value `x` on both edges of the first
    /// matching, `y` on the second and `z` on the third.
    pub fn to_character(&self) -> Character {
        Character::from_entries(
            4,
            &[
                (1, 2, self.x.clone()),
                (3, 4, self.x.clone()),
                (1, 3, self.y.clone()),
                (2, 4, self.y.clone()),
                (1, 4, self.z.clone()),
                (2, 3, self.z.clone()),
            ],
        )
        .expect("n = 4")
    }
}

/// If all four triangle values of a `P_4` character vanish, the values on
/// opposite edges agree; return them.
pub fn triple_sum_consequences(chi: &Character) -> Result<Option<MatchingValues>> {
    if chi.n() != 4 {
        return Err(Error::WrongStrandCount { expected: 4, found: chi.n() });
    }
    for t in [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]] {
        if !chi.swing_value(&SwingSet::new(t)?)?.is_zero() {
            return Ok(None);
        }
    }
    let mv = MatchingValues {
        x: chi.weight(1, 2).clone(),
        y: chi.weight(1, 3).clone(),
        z: chi.weight(1, 4).clone(),
    };
    debug_assert_eq!(&mv.x, chi.weight(3, 4));
    debug_assert_eq!(&mv.y, chi.weight(2, 4));
    debug_assert_eq!(&mv.z, chi.weight(2, 3));
    Ok(Some(mv))
}

/// Outcome of the exhaustive star-or-small check.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub max_vertices: usize,
    pub graphs_checked: u64,
    /// Edge sets violating "no edge disjoint from two others iff star or at
    /// most four endpoints".
    pub counterexamples: Vec<Vec<Edge>>,
    /// Edge sets on which `shape_of_edges` disagrees with the brute-force
    /// predicates (including any `Other` result).
    pub shape_mismatches: Vec<Vec<Edge>>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty() && self.shape_mismatches.is_empty()
    }

    fn merge(mut self, other: OracleReport) -> OracleReport {
        self.graphs_checked += other.graphs_checked;
        self.counterexamples.extend(other.counterexamples);
        self.shape_mismatches.extend(other.shape_mismatches);
        self
    }
}

pub const ORACLE_MAX_VERTICES: usize = 8;

/// Every edge subset of `K_m` covers every graph on at most `m` vertices.
pub fn oracle_star_or_small(max_vertices: usize) -> Result<OracleReport> {
    let all = oracle_pairs(max_vertices)?;
    let mut report = oracle_chunk(&all, 0, 1u64 << all.len());
    report.max_vertices = max_vertices;
    Ok(report)
}

/// Same enumeration split across the rayon pool; results are merged in mask order.
pub fn oracle_star_or_small_parallel(max_vertices: usize) -> Result<OracleReport> {
    let all = oracle_pairs(max_vertices)?;
    let total = 1u64 << all.len();
    let chunk = (total / 256).max(1);
    let mut report = (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|c| oracle_chunk(&all, c * chunk, ((c + 1) * chunk).min(total)))
        .reduce(OracleReport::default, OracleReport::merge);
    report.max_vertices = max_vertices;
    Ok(report)
}

fn oracle_pairs(max_vertices: usize) -> Result<Vec<Edge>> {
    if max_vertices > ORACLE_MAX_VERTICES {
        return Err(Error::Budget(format!(
            "oracle enumerates 2^C(m,2) graphs; m = {max_vertices} exceeds {ORACLE_MAX_VERTICES}"
        )));
    }
    debug_assert!(pair_count(max_vertices) < 64);
    Ok(pairs(max_vertices).collect())
}

fn oracle_chunk(all: &[Edge], lo: u64, hi: u64) -> OracleReport {
    let mut report = OracleReport::default();
    let vmask = |(a, b): Edge| (1u32 << a) | (1u32 << b);
    let mut edges = Vec::with_capacity(all.len());
    for mask in lo..hi {
        edges.clear();
        edges.extend(all.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e));
        report.graphs_checked += 1;

        // brute force, on vertex bitmasks
        let masks: Vec<u32> = edges.iter().map(|&e| vmask(e)).collect();
        let has_dft = masks.iter().any(|&m| masks.iter().filter(|&&o| o & m == 0).count() >= 2);
        let common = masks.iter().fold(u32::MAX, |acc, &m| acc & m);
        let is_star = !masks.is_empty() && common != 0;
        let used = masks.iter().fold(0u32, |acc, &m| acc | m).count_ones();
        if has_dft == (is_star || used <= 4) {
            report.counterexamples.push(edges.clone());
        }

        let consistent = match shape_of_edges(&edges) {
            ShapeClass::Empty => masks.is_empty(),
            ShapeClass::HasDisjointFromTwo(_) => has_dft,
            ShapeClass::Star { .. } => !has_dft && is_star,
            ShapeClass::SmallK4 { .. } => !has_dft && !is_star && used <= 4,
            ShapeClass::Other => false,
        };
        if !consistent {
            report.shape_mismatches.push(edges.clone());
        }
    }
    report
}
