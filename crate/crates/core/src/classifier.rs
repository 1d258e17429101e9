//! Total decision procedure for `Sigma^1(P_n)` with certificates.
//!
//! The pipeline runs the reduction lemmas in a fixed order, so every
//! verdict cites exactly one of them:
//!
//! 1. `chi(Delta) != 0` gives [`Certificate::ZeroSum`] (this covers all of `P_2`).
//! 2. An edge of `K_chi` disjoint from two others gives
//!    [`Certificate::DisjointTriple`] or [`Certificate::DisjointPair`].
//! 3. Otherwise `K_chi` is a star or lives on at most four vertices. Stars
//!    with at least three edges give [`Certificate::Star`].
//! 4. Support inside three vertices: the character is on a `P_3`-circle.
//! 5. Support of exactly four vertices: [`Certificate::DisjointLeaves`],
//!    then [`Certificate::Triangle`], and otherwise all triangle values
//!    vanish and the character is on a `P_4`-circle.

use serde::{Serialize, Serializer};

use crate::character::{Character, Permutation, SwingSet};
use crate::chi_graph::{
    build_kchi, edges_disjoint, find_disjoint_pair, find_disjoint_triple, find_edge_disjoint_from_two,
    shape_classify, support_vertices, triple_sum_consequences, CharGraph, Edge, ShapeClass,
};
use crate::circles::{on_circle, CircleId, CircleKind};
use crate::error::{Error, Result};
use crate::rational::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    InSigma1,
    InComplement,
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(match self {
            Verdict::InSigma1 => "sigma1",
            Verdict::InComplement => "complement",
        })
    }
}

/// Evidence for a verdict. Lemma certificates carry the relabeling that
/// brings the character into the lemma's normal form, where the witness
/// indices of [`crate::witness`] apply.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Circle {
        id: CircleId,
    },
    ZeroSum {
        delta: Rat,
    },
    /// Normal form: edges `12, 34, 56`.
    DisjointTriple {
        permutation: Permutation,
        edges: [Edge; 3],
    },
    /// `edge` is disjoint from both of `pair`, which share a vertex.
    /// Normal form: edges `12, 34, 45`.
    DisjointPair {
        permutation: Permutation,
        edge: Edge,
        pair: (Edge, Edge),
    },
    /// Normal form: leaves `1, 2, 3` on center `4`.
    Star {
        permutation: Permutation,
        center: usize,
        leaves: Vec<usize>,
    },
    /// Two valence-1 vertices with disjoint edges. Normal form: leaves `1, 3`
    /// with edges `12, 34`.
    DisjointLeaves {
        permutation: Permutation,
        leaves: (usize, usize),
        edges: (Edge, Edge),
    },
    /// Disjoint edges and a triangle on three of their endpoints with nonzero
    /// value. Normal form: edges `12, 34` and `chi(S_123) != 0`.
    Triangle {
        permutation: Permutation,
        edges: (Edge, Edge),
        triangle: SwingSet,
        value: Rat,
    },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Circle { .. } => "circle",
            Certificate::ZeroSum { .. } => "zero_sum",
            Certificate::DisjointTriple { .. } => "disjoint_triple",
            Certificate::DisjointPair { .. } => "disjoint_pair",
            Certificate::Star { .. } => "star",
            Certificate::DisjointLeaves { .. } => "disjoint_leaves",
            Certificate::Triangle { .. } => "triangle",
        }
    }

    pub fn permutation(&self) -> Option<&Permutation> {
        match self {
            Certificate::Circle { .. } | Certificate::ZeroSum { .. } => None,
            Certificate::DisjointTriple { permutation, .. }
            | Certificate::DisjointPair { permutation, .. }
            | Certificate::Star { permutation, .. }
            | Certificate::DisjointLeaves { permutation, .. }
            | Certificate::Triangle { permutation, .. } => Some(permutation),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub certificate: Certificate,
}

impl Classification {
    fn sigma1(certificate: Certificate) -> Self {
        Classification { verdict: Verdict::InSigma1, certificate }
    }

    fn complement(id: CircleId) -> Self {
        Classification { verdict: Verdict::InComplement, certificate: Certificate::Circle { id } }
    }
}

pub fn classify(chi: &Character) -> Result<Classification> {
    if chi.is_zero() {
        return Err(Error::ZeroCharacter);
    }
    let n = chi.n();
    let delta = chi.delta_value();
    if !delta.is_zero() {
        return Ok(Classification::sigma1(Certificate::ZeroSum { delta }));
    }

    let g = build_kchi(chi);
    let edges = g.edges();
    if let Some(w) = find_edge_disjoint_from_two(&g) {
        if let Some(t) = find_disjoint_triple(&edges) {
            let permutation = Permutation::sending_to_front(n, &[t[0].0, t[0].1, t[1].0, t[1].1, t[2].0, t[2].1])?;
            return Ok(Classification::sigma1(Certificate::DisjointTriple { permutation, edges: t }));
        }
        // no three disjoint edges, so the two others share exactly one vertex
        let (f, h) = w.others;
        let shared = if f.0 == h.0 || f.0 == h.1 { f.0 } else { f.1 };
        let other = |e: Edge| if e.0 == shared { e.1 } else { e.0 };
        let permutation = Permutation::sending_to_front(n, &[w.edge.0, w.edge.1, other(f), shared, other(h)])?;
        return Ok(Classification::sigma1(Certificate::DisjointPair { permutation, edge: w.edge, pair: w.others }));
    }

    let shape = shape_classify(&g);
    if let ShapeClass::Star { center, leaves } = &shape {
        if leaves.len() >= 3 {
            let permutation = Permutation::sending_to_front(n, &[leaves[0], leaves[1], leaves[2], *center])?;
            return Ok(Classification::sigma1(Certificate::Star {
                permutation,
                center: *center,
                leaves: leaves.clone(),
            }));
        }
    }
    debug_assert!(!matches!(shape, ShapeClass::Other | ShapeClass::HasDisjointFromTwo(_)));

    let support: Vec<usize> = support_vertices(&g).into_iter().collect();
    if support.len() <= 3 {
        // delta = 0 and nonzero forces exactly three vertices
        let mut members = support.clone();
        members.extend((1..=n).filter(|v| !support.contains(v)).take(3 - support.len()));
        let id = CircleId::new(CircleKind::P3, SwingSet::new(members)?)?;
        return Ok(Classification::complement(id));
    }
    if support.len() != 4 {
        unreachable!("star-or-small: non-star graph without an edge disjoint from two others has <= 4 vertices");
    }

    if let Some(c) = disjoint_leaves(&g, &support, n)? {
        return Ok(Classification::sigma1(c));
    }
    if let Some(c) = nonzero_triangle(chi, &edges, n)? {
        return Ok(Classification::sigma1(c));
    }

    let id = CircleId::new(CircleKind::P4, SwingSet::new(support.clone())?)?;
    if n == 4 {
        debug_assert!(triple_sum_consequences(chi)?.is_some());
    }
    Ok(Classification::complement(id))
}

fn disjoint_leaves(g: &CharGraph, support: &[usize], n: usize) -> Result<Option<Certificate>> {
    let leaves: Vec<(usize, Edge)> = support.iter().filter_map(|&v| g.leaf_edge(v).map(|e| (v, e))).collect();
    for (k, &(u, eu)) in leaves.iter().enumerate() {
        for &(v, ev) in &leaves[k + 1..] {
            if edges_disjoint(eu, ev) {
                let far = |x: usize, e: Edge| if e.0 == x { e.1 } else { e.0 };
                let permutation = Permutation::sending_to_front(n, &[u, far(u, eu), v, far(v, ev)])?;
                return Ok(Some(Certificate::DisjointLeaves { permutation, leaves: (u, v), edges: (eu, ev) }));
            }
        }
    }
    Ok(None)
}

fn nonzero_triangle(chi: &Character, edges: &[Edge], n: usize) -> Result<Option<Certificate>> {
    let Some((e, f)) = find_disjoint_pair(edges) else {
        return Ok(None);
    };
    let mut ends = [e.0, e.1, f.0, f.1];
    ends.sort_unstable();
    for skip in (0..4).rev() {
        let triangle = SwingSet::new(ends.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &v)| v))?;
        let value = chi.swing_value(&triangle)?;
        if value.is_zero() {
            continue;
        }
        // the edge inside the triangle becomes 12, the other edge 34 with its
        // triangle vertex first
        let (inner, outer) = if triangle.contains(e.0) && triangle.contains(e.1) { (e, f) } else { (f, e) };
        let (o_in, o_out) = if triangle.contains(outer.0) { (outer.0, outer.1) } else { (outer.1, outer.0) };
        let permutation = Permutation::sending_to_front(n, &[inner.0, inner.1, o_in, o_out])?;
        return Ok(Some(Certificate::Triangle { permutation, edges: (e, f), triangle, value }));
    }
    Ok(None)
}

/// Recheck every numeric claim of a certificate against `chi`, including that
/// the recorded permutation realizes the lemma's normal form.
pub fn recheck(chi: &Character, cert: &Certificate) -> std::result::Result<(), String> {
    let g = build_kchi(chi);
    let n = chi.n();
    let has = |e: Edge| g.label(e).is_some();
    let delta = chi.delta_value();
    let ensure = |ok: bool, msg: &str| if ok { Ok(()) } else { Err(msg.to_string()) };
    let maps = |perm: &Permutation, pairs: &[(usize, usize)]| {
        perm.n() == n && pairs.iter().all(|&(from, to)| from <= n && perm.apply(from) == to)
    };
    match cert {
        Certificate::Circle { id } => ensure(on_circle(chi, id).map_err(|e| e.to_string())?, "not on the circle"),
        Certificate::ZeroSum { delta: d } => {
            ensure(d == &delta, "recorded delta differs")?;
            ensure(!d.is_zero(), "delta is zero")
        }
        Certificate::DisjointTriple { permutation, edges } => {
            ensure(edges.iter().all(|&e| has(e)), "edge not in K_chi")?;
            ensure(
                edges_disjoint(edges[0], edges[1]) && edges_disjoint(edges[0], edges[2]) && edges_disjoint(edges[1], edges[2]),
                "edges not pairwise disjoint",
            )?;
            let targets = [(edges[0].0, 1), (edges[0].1, 2), (edges[1].0, 3), (edges[1].1, 4), (edges[2].0, 5), (edges[2].1, 6)];
            ensure(maps(permutation, &targets), "permutation does not realize normal form")
        }
        Certificate::DisjointPair { permutation, edge, pair } => {
            let (f, h) = *pair;
            ensure(has(*edge) && has(f) && has(h), "edge not in K_chi")?;
            ensure(f != h && edges_disjoint(*edge, f) && edges_disjoint(*edge, h), "edge not disjoint from pair")?;
            let shared = [f.0, f.1].into_iter().find(|&v| v == h.0 || v == h.1).ok_or("pair shares no vertex")?;
            let other = |e: Edge| if e.0 == shared { e.1 } else { e.0 };
            let targets = [(edge.0, 1), (edge.1, 2), (other(f), 3), (shared, 4), (other(h), 5)];
            ensure(maps(permutation, &targets), "permutation does not realize normal form")
        }
        Certificate::Star { permutation, center, leaves } => {
            ensure(delta.is_zero(), "star lemma used with nonzero delta")?;
            ensure(leaves.len() >= 3 && leaves.len() == g.edge_count(), "star needs >= 3 edges")?;
            ensure(leaves.iter().all(|&l| l != *center && has((l.min(*center), l.max(*center)))), "missing star edge")?;
            let targets = [(leaves[0], 1), (leaves[1], 2), (leaves[2], 3), (*center, 4)];
            ensure(maps(permutation, &targets), "permutation does not realize normal form")
        }
        Certificate::DisjointLeaves { permutation, leaves, edges } => {
            ensure(delta.is_zero(), "disjoint-leaves lemma used with nonzero delta")?;
            let (u, v) = *leaves;
            ensure(g.leaf_edge(u) == Some(edges.0) && g.leaf_edge(v) == Some(edges.1), "not leaves with these edges")?;
            ensure(edges_disjoint(edges.0, edges.1), "leaf edges intersect")?;
            let far = |x: usize, e: Edge| if e.0 == x { e.1 } else { e.0 };
            let targets = [(u, 1), (far(u, edges.0), 2), (v, 3), (far(v, edges.1), 4)];
            ensure(maps(permutation, &targets), "permutation does not realize normal form")
        }
        Certificate::Triangle { permutation, edges, triangle, value } => {
            let (e, f) = *edges;
            ensure(has(e) && has(f) && edges_disjoint(e, f), "need two disjoint edges of K_chi")?;
            ensure(
                triangle.len() == 3 && triangle.members().iter().all(|&v| [e.0, e.1, f.0, f.1].contains(&v)),
                "triangle not on the edge endpoints",
            )?;
            let actual = chi.swing_value(triangle).map_err(|e| e.to_string())?;
            ensure(&actual == value && !value.is_zero(), "triangle value wrong or zero")?;
            let image = triangle.relabel(permutation);
            ensure(image == SwingSet::new([1, 2, 3]).unwrap(), "triangle does not map to 123")?;
            let pe = (permutation.apply(e.0), permutation.apply(e.1));
            let pf = (permutation.apply(f.0), permutation.apply(f.1));
            let norm = |p: (usize, usize)| (p.0.min(p.1), p.0.max(p.1));
            let mut got = [norm(pe), norm(pf)];
            got.sort();
            ensure(got == [(1, 2), (3, 4)], "edges do not map to 12 and 34")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circles::locate_circle;

    fn chi(n: usize, e: &[(usize, usize, i64)]) -> Character {
        Character::from_int_entries(n, e).unwrap()
    }

    fn chi0() -> Character {
        chi(4, &[(1, 2, 3), (1, 3, 2), (1, 4, -4), (2, 3, -5), (2, 4, 0), (3, 4, 1)])
    }

    fn check(c: &Character) -> Classification {
        let out = classify(c).unwrap();
        recheck(c, &out.certificate).unwrap();
        assert_eq!(out.verdict == Verdict::InComplement, locate_circle(c).unwrap().is_some());
        out
    }

    #[test]
    fn figure_character_is_zero_sum() {
        let out = check(&chi0());
        assert_eq!(out.verdict, Verdict::InSigma1);
        assert_eq!(out.certificate, Certificate::ZeroSum { delta: Rat::from_int(-3) });
    }

    #[test]
    fn equator_of_p3() {
        let out = check(&Character::from_ints(3, &[1, 1, -2]).unwrap());
        assert_eq!(out.verdict, Verdict::InComplement);
        assert_eq!(out.certificate, Certificate::Circle { id: CircleId::p3(1, 2, 3).unwrap() });
    }

    #[test]
    fn p2_is_all_sigma1() {
        for w in [-3, 1, 7] {
            let out = check(&Character::from_ints(2, &[w]).unwrap());
            assert_eq!(out.certificate.kind(), "zero_sum");
        }
    }

    #[test]
    fn path_of_length_three_uses_disjoint_leaves() {
        // path 2-1-3-4: leaves 2 and 4 with disjoint edges 12 and 34
        let out = check(&chi(4, &[(1, 2, 1), (3, 4, 1), (1, 3, -2)]));
        assert_eq!(out.verdict, Verdict::InSigma1);
        let Certificate::DisjointLeaves { leaves, edges, .. } = out.certificate else { panic!("{out:?}") };
        assert_eq!(leaves, (2, 4));
        assert_eq!(edges, ((1, 2), (3, 4)));
    }

    #[test]
    fn paw_uses_triangle() {
        // triangle 123 (sum -1) with pendant edge 34
        let out = check(&chi(4, &[(1, 2, 1), (1, 3, 1), (2, 3, -3), (3, 4, 1)]));
        let Certificate::Triangle { edges, triangle, value, .. } = out.certificate else { panic!("{out:?}") };
        assert_eq!(edges, ((1, 2), (3, 4)));
        assert_eq!(triangle, SwingSet::new([1, 2, 3]).unwrap());
        assert_eq!(value, Rat::from_int(-1));
    }

    #[test]
    fn two_disjoint_edges_use_disjoint_leaves() {
        let out = check(&chi(4, &[(1, 2, 1), (3, 4, -1)]));
        assert_eq!(out.certificate.kind(), "disjoint_leaves");
    }

    #[test]
    fn p4_circle_point() {
        let out = check(&chi(4, &[(1, 2, 1), (3, 4, 1), (1, 3, 2), (2, 4, 2), (1, 4, -3), (2, 3, -3)]));
        assert_eq!(out.certificate, Certificate::Circle { id: CircleId::p4(1, 2, 3, 4).unwrap() });
    }

    #[test]
    fn disjoint_triple_and_pair() {
        let out = check(&chi(6, &[(1, 2, 1), (3, 4, 1), (5, 6, -2)]));
        assert_eq!(out.certificate.kind(), "disjoint_triple");

        let out = check(&chi(5, &[(1, 2, 1), (3, 4, 1), (4, 5, -2)]));
        let Certificate::DisjointPair { permutation, .. } = &out.certificate else { panic!("{out:?}") };
        assert!(permutation.is_identity());
    }

    #[test]
    fn star_with_three_edges() {
        let out = check(&chi(5, &[(1, 4, 2), (2, 4, 1), (3, 4, -3)]));
        let Certificate::Star { center, leaves, .. } = out.certificate else { panic!("{out:?}") };
        assert_eq!(center, 4);
        assert_eq!(leaves, vec![1, 2, 3]);
    }

    #[test]
    fn two_edge_star_on_p3_circle() {
        let out = check(&chi(6, &[(2, 5, 3), (5, 6, -3)]));
        assert_eq!(out.certificate, Certificate::Circle { id: CircleId::p3(2, 5, 6).unwrap() });
    }

    #[test]
    fn zero_rejected() {
        assert_eq!(classify(&Character::zero(4).unwrap()), Err(Error::ZeroCharacter));
    }

    #[test]
    fn recheck_rejects_tampering() {
        let c = chi(4, &[(1, 2, 1), (1, 3, 1), (2, 3, -3), (3, 4, 1)]);
        let out = classify(&c).unwrap();
        let Certificate::Triangle { permutation, edges, triangle, .. } = out.certificate else { panic!() };
        let bad = Certificate::Triangle { permutation, edges, triangle, value: Rat::from_int(5) };
        assert!(recheck(&c, &bad).is_err());
        assert!(recheck(&c, &Certificate::ZeroSum { delta: Rat::zero() }).is_err());
        assert!(recheck(&c, &Certificate::Circle { id: CircleId::p4(1, 2, 3, 4).unwrap() }).is_err());
    }

    #[test]
    fn classification_json() {
        let out = classify(&chi0()).unwrap();
        assert_eq!(
            serde_json::to_string(&out).unwrap(),
            r#"{"verdict":"sigma1","certificate":{"kind":"zero_sum","delta":"-3"}}"#
        );
        let out = classify(&chi(4, &[(1, 2, 1), (3, 4, 1), (1, 3, 2), (2, 4, 2), (1, 4, -3), (2, 3, -3)])).unwrap();
        assert_eq!(
            serde_json::to_string(&out).unwrap(),
            r#"{"verdict":"complement","certificate":{"kind":"circle","id":{"kind":"P4","support":[1,2,3,4]}}}"#
        );
    }
}
