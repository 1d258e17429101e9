//! The `P_3`- and `P_4`-circles of the complement.
//!
//! A `P_3`-circle is indexed by a 3-set `{i,j,k}`: characters supported on
//! its triangle with zero total. A `P_4`-circle is indexed by a 4-set
//! `{i<j<k<l}`: characters supported on it, constant on each of the three
//! perfect matchings `(ij|kl)`, `(ik|jl)`, `(il|jk)`, with the three
//! matching values summing to zero.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::character::{Character, SwingSet};
use crate::chi_graph::{build_kchi, support_vertices};
use crate::error::{Error, Result};
use crate::rational::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CircleKind {
    P3,
    P4,
}

impl CircleKind {
    pub fn size(self) -> usize {
        match self {
            CircleKind::P3 => 3,
            CircleKind::P4 => 4,
        }
    }

    fn name(self) -> &'static str {
        match self {
            CircleKind::P3 => "P3",
            CircleKind::P4 => "P4",
        }
    }
}

/// Two disjoint edges covering a 4-set.
pub type Matching = ((usize, usize), (usize, usize));

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawCircleId")]
pub struct CircleId {
    kind: CircleKind,
    support: SwingSet,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCircleId {
    kind: CircleKind,
    support: SwingSet,
}

impl TryFrom<RawCircleId> for CircleId {
    type Error = Error;
    fn try_from(raw: RawCircleId) -> Result<Self> {
        CircleId::new(raw.kind, raw.support)
    }
}

impl CircleId {
    pub fn new(kind: CircleKind, support: SwingSet) -> Result<Self> {
        if support.len() != kind.size() {
            return Err(Error::SizeMismatch { expected: kind.size(), found: support.len() });
        }
        Ok(CircleId { kind, support })
    }

    pub fn p3(i: usize, j: usize, k: usize) -> Result<Self> {
        CircleId::new(CircleKind::P3, SwingSet::new([i, j, k])?)
    }

    pub fn p4(i: usize, j: usize, k: usize, l: usize) -> Result<Self> {
        CircleId::new(CircleKind::P4, SwingSet::new([i, j, k, l])?)
    }

    pub fn kind(&self) -> CircleKind {
        self.kind
    }

    pub fn support(&self) -> &SwingSet {
        &self.support
    }

    /// The three perfect matchings of a `P_4` support, in the fixed order
    /// `(ij|kl)`, `(ik|jl)`, `(il|jk)`.
    pub fn matchings(&self) -> Option<[Matching; 3]> {
        match (self.kind, self.support.members()) {
            (CircleKind::P4, &[i, j, k, l]) => Some([((i, j), (k, l)), ((i, k), (j, l)), ((i, l), (j, k))]),
            _ => None,
        }
    }
}

impl fmt::Debug for CircleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.kind.name(), self.support.members())
    }
}

/// k-subsets of `{1..n}` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            if n - v + 1 < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// All `C(n,3)` P3-circles followed by all `C(n,4)` P4-circles.
pub fn enumerate_circles(n: usize) -> Vec<CircleId> {
    let p3 = subsets(n, 3).into_iter().map(|s| CircleId::new(CircleKind::P3, SwingSet::new(s).unwrap()));
    let p4 = subsets(n, 4).into_iter().map(|s| CircleId::new(CircleKind::P4, SwingSet::new(s).unwrap()));
    p3.chain(p4).map(|c| c.expect("size matches kind")).collect()
}

fn support_within(chi: &Character, id: &CircleId) -> Result<bool> {
    id.support.check_range(chi.n())?;
    Ok(support_vertices(&build_kchi(chi)).iter().all(|&v| id.support.contains(v)))
}

fn expect_kind(id: &CircleId, kind: CircleKind) -> Result<()> {
    if id.kind != kind {
        return Err(Error::WrongCircleKind { expected: kind.name(), found: id.kind.name() });
    }
    Ok(())
}

pub fn on_p3_circle(chi: &Character, id: &CircleId) -> Result<bool> {
    expect_kind(id, CircleKind::P3)?;
    if chi.is_zero() {
        return Err(Error::ZeroCharacter);
    }
    Ok(support_within(chi, id)? && chi.swing_value(&id.support)?.is_zero())
}

pub fn on_p4_circle(chi: &Character, id: &CircleId) -> Result<bool> {
    expect_kind(id, CircleKind::P4)?;
    if chi.is_zero() {
        return Err(Error::ZeroCharacter);
    }
    if !support_within(chi, id)? {
        return Ok(false);
    }
    let mut total = Rat::zero();
    for ((a, b), (c, d)) in id.matchings().expect("P4") {
        let w = chi.weight(a, b);
        if w != chi.weight(c, d) {
            return Ok(false);
        }
        total += w;
    }
    Ok(total.is_zero())
}

pub fn on_circle(chi: &Character, id: &CircleId) -> Result<bool> {
    match id.kind {
        CircleKind::P3 => on_p3_circle(chi, id),
        CircleKind::P4 => on_p4_circle(chi, id),
    }
}

/// Circles whose support contains every vertex of `K_chi`; no other circle
/// can contain `chi`.
pub fn candidate_circles(chi: &Character) -> Vec<CircleId> {
    let support: Vec<usize> = support_vertices(&build_kchi(chi)).into_iter().collect();
    let mut out = Vec::new();
    for kind in [CircleKind::P3, CircleKind::P4] {
        let k = kind.size();
        if support.len() > k {
            continue;
        }
        let rest: Vec<usize> = (1..=chi.n()).filter(|v| !support.contains(v)).collect();
        for extra in subsets(rest.len(), k - support.len()) {
            let members = support.iter().copied().chain(extra.iter().map(|&e| rest[e - 1]));
            if let Ok(s) = SwingSet::new(members) {
                out.push(CircleId { kind, support: s });
            }
        }
    }
    out.sort();
    out
}

/// Every circle containing `chi`, scanning only the candidates.
pub fn containing_circles(chi: &Character) -> Result<Vec<CircleId>> {
    if chi.is_zero() {
        return Err(Error::ZeroCharacter);
    }
    let mut found = Vec::new();
    for id in candidate_circles(chi) {
        if on_circle(chi, &id)? {
            found.push(id);
        }
    }
    Ok(found)
}

/// The circle containing `chi`, if any. Circles are pairwise disjoint, so
/// the answer is unique.
pub fn locate_circle(chi: &Character) -> Result<Option<CircleId>> {
    let found = containing_circles(chi)?;
    debug_assert!(found.len() <= 1, "circles overlap at {chi:?}: {found:?}");
    Ok(found.into_iter().next())
}

/// The point of circle `id` with parameters `t = (t1, t2)`: on a P3-circle the
/// weights `(t1, t2, -t1-t2)` on `ij, ik, jk`; on a P4-circle the matching
/// values `(t1, t2, -t1-t2)`.
pub fn sample_circle(id: &CircleId, t: (&Rat, &Rat), n: usize) -> Result<Character> {
    id.support.check_range(n)?;
    let (t1, t2) = t;
    if t1.is_zero() && t2.is_zero() {
        return Err(Error::ZeroCharacter);
    }
    let t3 = -(t1 + t2);
    let entries = match id.matchings() {
        None => {
            let &[i, j, k] = id.support.members() else { unreachable!("P3 support has 3 members") };
            vec![(i, j, t1.clone()), (i, k, t2.clone()), (j, k, t3)]
        }
        Some([(m1, m2), (m3, m4), (m5, m6)]) => vec![
            (m1.0, m1.1, t1.clone()),
            (m2.0, m2.1, t1.clone()),
            (m3.0, m3.1, t2.clone()),
            (m4.0, m4.1, t2.clone()),
            (m5.0, m5.1, t3.clone()),
            (m6.0, m6.1, t3),
        ],
    };
    Character::from_entries(n, &entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> Rat {
        Rat::from_int(v)
    }

    fn chi0() -> Character {
        Character::from_int_entries(4, &[(1, 2, 3), (1, 3, 2), (1, 4, -4), (2, 3, -5), (2, 4, 0), (3, 4, 1)])
            .unwrap()
    }

    fn p4_example() -> Character {
        Character::from_int_entries(4, &[(1, 2, 1), (3, 4, 1), (1, 3, 2), (2, 4, 2), (1, 4, -3), (2, 3, -3)])
            .unwrap()
    }

    #[test]
    fn circle_counts() {
        assert_eq!(enumerate_circles(4).len(), 5);
        assert_eq!(enumerate_circles(3), vec![CircleId::p3(1, 2, 3).unwrap()]);
        assert_eq!(enumerate_circles(6).len(), 35);
        assert!(enumerate_circles(2).is_empty());
        let c = enumerate_circles(5);
        assert_eq!(c[0], CircleId::p3(1, 2, 3).unwrap());
        assert_eq!(c[10], CircleId::p4(1, 2, 3, 4).unwrap());
    }

    #[test]
    fn p3_membership() {
        let chi = Character::from_ints(3, &[1, 1, -2]).unwrap();
        assert!(on_p3_circle(&chi, &CircleId::p3(1, 2, 3).unwrap()).unwrap());
        assert!(!on_p3_circle(&chi0(), &CircleId::p3(1, 2, 3).unwrap()).unwrap());
        let chi = Character::from_int_entries(5, &[(2, 4, 5), (2, 5, -5)]).unwrap();
        assert!(on_p3_circle(&chi, &CircleId::p3(2, 4, 5).unwrap()).unwrap());
        assert_eq!(
            on_p3_circle(&Character::zero(3).unwrap(), &CircleId::p3(1, 2, 3).unwrap()),
            Err(Error::ZeroCharacter)
        );
        assert!(matches!(
            on_p3_circle(&chi0(), &CircleId::p4(1, 2, 3, 4).unwrap()),
            Err(Error::WrongCircleKind { .. })
        ));
    }

    #[test]
    fn p4_membership() {
        let id = CircleId::p4(1, 2, 3, 4).unwrap();
        assert!(on_p4_circle(&p4_example(), &id).unwrap());
        let mut broken = p4_example();
        broken.set_weight(2, 3, r(-2)).unwrap();
        assert!(!on_p4_circle(&broken, &id).unwrap());
        assert!(!on_p4_circle(&chi0(), &id).unwrap());
    }

    #[test]
    fn locate_examples() {
        let chi = Character::from_ints(3, &[1, 1, -2]).unwrap();
        assert_eq!(locate_circle(&chi).unwrap(), Some(CircleId::p3(1, 2, 3).unwrap()));
        assert_eq!(locate_circle(&p4_example()).unwrap(), Some(CircleId::p4(1, 2, 3, 4).unwrap()));
        assert_eq!(locate_circle(&chi0()).unwrap(), None);
        assert_eq!(locate_circle(&Character::zero(4).unwrap()), Err(Error::ZeroCharacter));
    }

    #[test]
    fn candidates_are_supersets_of_support() {
        let chi = Character::from_int_entries(6, &[(2, 4, 5), (2, 5, -5)]).unwrap();
        let c = candidate_circles(&chi);
        // P3{2,4,5} and P4{2,4,5,x} for x in {1,3,6}
        assert_eq!(c.len(), 4);
        assert!(c.iter().all(|id| [2, 4, 5].iter().all(|&v| id.support().contains(v))));
    }

    #[test]
    fn sample_examples() {
        let s = sample_circle(&CircleId::p3(1, 2, 3).unwrap(), (&r(1), &r(1)), 3).unwrap();
        assert_eq!(s, Character::from_ints(3, &[1, 1, -2]).unwrap());
        let s = sample_circle(&CircleId::p4(1, 2, 3, 4).unwrap(), (&r(1), &r(2)), 4).unwrap();
        assert_eq!(s, p4_example());
        let s = sample_circle(&CircleId::p3(2, 4, 5).unwrap(), (&r(5), &r(0)), 5).unwrap();
        assert_eq!(s, Character::from_int_entries(5, &[(2, 4, 5), (4, 5, -5)]).unwrap());
        assert_eq!(
            sample_circle(&CircleId::p3(1, 2, 3).unwrap(), (&r(0), &r(0)), 3),
            Err(Error::ZeroCharacter)
        );
    }

    #[test]
    fn circle_id_json() {
        let id = CircleId::p3(1, 2, 3).unwrap();
        assert_eq!(serde_json::to_string(&id).unwrap(), r#"{"kind":"P3","support":[1,2,3]}"#);
        let back: CircleId = serde_json::from_str(r#"{"kind":"P4","support":[4,1,2,3]}"#).unwrap();
        assert_eq!(back, CircleId::p4(1, 2, 3, 4).unwrap());
        assert!(serde_json::from_str::<CircleId>(r#"{"kind":"P4","support":[1,2,3]}"#).is_err());
    }
}
