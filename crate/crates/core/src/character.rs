//! Characters of the pure braid group `P_n`.
//!
//! A character is determined freely by its values on the standard generators
//! `S_ij`, so it is stored as one rational weight per unordered pair
//! `{i, j}` of strands. Weights are dense, in lexicographic pair order
//! `(1,2), (1,3), ..., (1,n), (2,3), ...`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::rational::Rat;

/// Position of the pair `{i, j}` (1-based, `i < j`) in the dense weight vector.
pub fn pair_index(i: usize, j: usize, n: usize) -> usize {
    debug_assert!(1 <= i && i < j && j <= n);
    // pairs (a, *) for a < i come first: sum_{a<i} (n - a)
    (i - 1) * n - (i - 1) * i / 2 + (j - i - 1)
}

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// All pairs `(i, j)` with `1 <= i < j <= n`, in storage order.
pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |i| ((i + 1)..=n).map(move |j| (i, j)))
}

fn ordered(i: usize, j: usize) -> (usize, usize) {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

/// A set `A` of at least two strands; names the swing generator `S_A`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct SwingSet(Vec<usize>);

impl SwingSet {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut v: Vec<usize> = members.into_iter().collect();
        v.sort_unstable();
        if v.len() < 2 {
            return Err(Error::InvalidSwingSet(format!("{v:?} has fewer than 2 members")));
        }
        if v[0] == 0 {
            return Err(Error::InvalidSwingSet("indices are 1-based".into()));
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSwingSet(format!("{v:?} has repeated members")));
        }
        Ok(SwingSet(v))
    }

    pub fn pair(i: usize, j: usize) -> Result<Self> {
        SwingSet::new([i, j])
    }

    /// `{1, ..., n}`, whose swing generator is the full twist `Delta`.
    pub fn full(n: usize) -> Result<Self> {
        SwingSet::new(1..=n)
    }

    /// `{1, ..., n} \ {i}`.
    pub fn all_but(n: usize, i: usize) -> Result<Self> {
        SwingSet::new((1..=n).filter(|&k| k != i))
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max(&self) -> usize {
        *self.0.last().expect("nonempty")
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn is_subset(&self, other: &SwingSet) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }

    pub fn is_disjoint(&self, other: &SwingSet) -> bool {
        self.0.iter().all(|&i| !other.contains(i))
    }

    pub fn check_range(&self, n: usize) -> Result<()> {
        match self.0.iter().find(|&&i| i > n) {
            Some(&index) => Err(Error::IndexOutOfRange { index, n }),
            None => Ok(()),
        }
    }

    /// Pairs `{i, j}` contained in the set.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(move |(k, &i)| self.0[k + 1..].iter().map(move |&j| (i, j)))
    }

    /// Image under a relabeling of the strands.
    pub fn relabel(&self, perm: &Permutation) -> SwingSet {
        SwingSet::new(self.0.iter().map(|&i| perm.apply(i))).expect("bijection preserves size")
    }
}

impl TryFrom<Vec<usize>> for SwingSet {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        SwingSet::new(v)
    }
}

impl From<SwingSet> for Vec<usize> {
    fn from(s: SwingSet) -> Self {
        s.0
    }
}

impl fmt::Debug for SwingSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S{{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// A permutation of `{1, ..., n}`, stored as its list of images.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &i in &images {
            if i == 0 || i > n || seen[i] {
                return Err(Error::InvalidPermutation(n));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        let mut v: Vec<usize> = (1..=n).collect();
        for x in [a, b] {
            if x == 0 || x > n {
                return Err(Error::IndexOutOfRange { index: x, n });
            }
        }
        v.swap(a - 1, b - 1);
        Ok(Permutation(v))
    }

    /// The permutation sending `sources[k]` to `k + 1` for each `k`, and the
    /// remaining points, in increasing order, to the remaining positions.
    pub fn sending_to_front(n: usize, sources: &[usize]) -> Result<Self> {
        let mut images = vec![0usize; n];
        let mut next = 1;
        for &s in sources {
            if s == 0 || s > n {
                return Err(Error::IndexOutOfRange { index: s, n });
            }
            if images[s - 1] != 0 {
                return Err(Error::InvalidPermutation(n));
            }
            images[s - 1] = next;
            next += 1;
        }
        for img in images.iter_mut().filter(|x| **x == 0) {
            *img = next;
            next += 1;
        }
        Permutation::new(images)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn after(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.apply(i)).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (k, &i) in self.0.iter().enumerate() {
            inv[i - 1] = k + 1;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(k, &i)| i == k + 1)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.0)
    }
}

/// A character of `P_n`: one rational weight per standard generator `S_ij`.
#[derive(Clone, PartialEq, Eq, Hash, Deserialize)]
#[serde(try_from = "RawCharacter")]
pub struct Character {
    n: usize,
    weights: Vec<Rat>,
}

impl Character {
    pub fn new(n: usize, weights: Vec<Rat>) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewStrands { n, min: 2 });
        }
        if weights.len() != pair_count(n) {
            return Err(Error::SizeMismatch { expected: pair_count(n), found: weights.len() });
        }
        Ok(Character { n, weights })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Character::new(n, vec![Rat::zero(); pair_count(n)])
    }

    /// Integer weights in storage order.
    pub fn from_ints(n: usize, weights: &[i64]) -> Result<Self> {
        Character::new(n, weights.iter().map(|&w| Rat::from_int(w)).collect())
    }

    /// Zero character with the listed `(i, j, value)` entries filled in.
    pub fn from_entries(n: usize, entries: &[(usize, usize, Rat)]) -> Result<Self> {
        let mut chi = Character::zero(n)?;
        for (i, j, w) in entries {
            chi.set_weight(*i, *j, w.clone())?;
        }
        Ok(chi)
    }

    pub fn from_int_entries(n: usize, entries: &[(usize, usize, i64)]) -> Result<Self> {
        let e: Vec<_> = entries.iter().map(|&(i, j, w)| (i, j, Rat::from_int(w))).collect();
        Character::from_entries(n, &e)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<(usize, usize)> {
        for x in [i, j] {
            if x == 0 || x > self.n {
                return Err(Error::IndexOutOfRange { index: x, n: self.n });
            }
        }
        if i == j {
            return Err(Error::InvalidSwingSet(format!("degenerate pair {{{i},{j}}}")));
        }
        Ok(ordered(i, j))
    }

    /// Value on `S_ij`; order of `i` and `j` does not matter.
    pub fn weight(&self, i: usize, j: usize) -> &Rat {
        let (a, b) = ordered(i, j);
        &self.weights[pair_index(a, b, self.n)]
    }

    pub fn try_weight(&self, i: usize, j: usize) -> Result<&Rat> {
        let (a, b) = self.check_pair(i, j)?;
        Ok(&self.weights[pair_index(a, b, self.n)])
    }

    pub fn set_weight(&mut self, i: usize, j: usize, w: Rat) -> Result<()> {
        let (a, b) = self.check_pair(i, j)?;
        let n = self.n;
        self.weights[pair_index(a, b, n)] = w;
        Ok(())
    }

    /// `(i, j, weight)` over every pair, in storage order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rat)> {
        pairs(self.n).zip(self.weights.iter()).map(|((i, j), w)| (i, j, w))
    }

    pub fn is_zero(&self) -> bool {
        self.weights.iter().all(Rat::is_zero)
    }

    /// Value of the swing generator `S_A`: sum of the weights on pairs inside `A`.
    pub fn swing_value(&self, a: &SwingSet) -> Result<Rat> {
        a.check_range(self.n)?;
        Ok(a.pairs().map(|(i, j)| self.weight(i, j)).sum())
    }

    /// Value of the central full twist `Delta = S_{1..n}`.
    pub fn delta_value(&self) -> Rat {
        self.weights.iter().sum()
    }

    pub fn scale(&self, q: &Rat) -> Character {
        Character { n: self.n, weights: self.weights.iter().map(|w| w * q).collect() }
    }

    pub fn add(&self, other: &Character) -> Result<Character> {
        if self.n != other.n {
            return Err(Error::WrongStrandCount { expected: self.n, found: other.n });
        }
        let weights = self.weights.iter().zip(&other.weights).map(|(a, b)| a + b).collect();
        Ok(Character { n: self.n, weights })
    }

    /// Relabel strands: the weight on `{perm(i), perm(j)}` of the result is the
    /// weight on `{i, j}` of `self`.
    pub fn permute(&self, perm: &Permutation) -> Result<Character> {
        if perm.n() != self.n {
            return Err(Error::WrongStrandCount { expected: self.n, found: perm.n() });
        }
        let mut out = vec![Rat::zero(); self.weights.len()];
        for (i, j, w) in self.entries() {
            let (a, b) = ordered(perm.apply(i), perm.apply(j));
            out[pair_index(a, b, self.n)] = w.clone();
        }
        Ok(Character { n: self.n, weights: out })
    }

    /// Canonical representative of the positive-dilation class.
    pub fn normalize(&self) -> Result<ProjectivePoint> {
        ProjectivePoint::new(self)
    }
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Character(n={}; ", self.n)?;
        for (k, (i, j, w)) in self.entries().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}-{j}:{w}")?;
        }
        write!(f, ")")
    }
}

/// Pullback along the strand-forgetting projection `P_n -> P_k` onto the
/// strands in `a`: positions within `a` are matched in increasing order.
pub fn pullback_phi(psi: &Character, a: &SwingSet, n: usize) -> Result<Character> {
    if a.len() != psi.n() {
        return Err(Error::SizeMismatch { expected: psi.n(), found: a.len() });
    }
    a.check_range(n)?;
    let mut chi = Character::zero(n)?;
    let m = a.members();
    for (p, q, w) in psi.entries() {
        chi.set_weight(m[p - 1], m[q - 1], w.clone())?;
    }
    Ok(chi)
}

/// Pullback along `rho: P_4 -> P_3`, which identifies the planar generators
/// on opposite edges of `K_4`. With `a=S12, b=S13, c=S23, d=S34, e=S24,
/// f=S14`, the images are `a,d -> S12`, `b,e -> S13`, `c,f -> S23`.
pub fn pullback_rho(psi: &Character) -> Result<Character> {
    if psi.n() != 3 {
        return Err(Error::WrongStrandCount { expected: 3, found: psi.n() });
    }
    let (x, y, z) = (psi.weight(1, 2), psi.weight(1, 3), psi.weight(2, 3));
    Character::from_entries(
        4,
        &[
            (1, 2, x.clone()),
            (3, 4, x.clone()),
            (1, 3, y.clone()),
            (2, 4, y.clone()),
            (2, 3, z.clone()),
            (1, 4, z.clone()),
        ],
    )
}

/// A point of the character sphere: the integer representative of a
/// positive-dilation class with coprime entries.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ProjectivePoint(Character);

impl ProjectivePoint {
    pub fn new(chi: &Character) -> Result<Self> {
        if chi.is_zero() {
            return Err(Error::ZeroCharacter);
        }
        let lcm = chi.weights.iter().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let ints: Vec<BigInt> =
            chi.weights.iter().map(|w| w.numer() * (&lcm / w.denom())).collect();
        let gcd = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v)).abs();
        let weights = ints.into_iter().map(|v| Rat::from(v / &gcd)).collect();
        Ok(ProjectivePoint(Character { n: chi.n, weights }))
    }

    pub fn character(&self) -> &Character {
        &self.0
    }

    pub fn into_character(self) -> Character {
        self.0
    }
}

// JSON: {"n": 4, "weights": {"1-2": "3", ...}} with keys in pair order.

impl Serialize for Character {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        struct Weights<'a>(&'a Character);
        impl Serialize for Weights<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                use serde::ser::SerializeMap;
                let mut m = s.serialize_map(Some(self.0.weights.len()))?;
                for (i, j, w) in self.0.entries() {
                    m.serialize_entry(&format!("{i}-{j}"), w)?;
                }
                m.end()
            }
        }
        let mut st = s.serialize_struct("Character", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("weights", &Weights(self))?;
        st.end()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCharacter {
    n: usize,
    weights: serde_json::Map<String, Value>,
}

fn parse_key(key: &str, n: usize) -> Result<(usize, usize)> {
    let bad = || Error::Parse(format!("invalid weight key {key:?} (expected \"i-j\" with 1 <= i < j <= {n})"));
    let (a, b) = key.split_once('-').ok_or_else(bad)?;
    let i: usize = a.trim().parse().map_err(|_| bad())?;
    let j: usize = b.trim().parse().map_err(|_| bad())?;
    if i == 0 || i >= j || j > n {
        return Err(bad());
    }
    Ok((i, j))
}

fn parse_weight(key: &str, v: &Value) -> Result<Rat> {
    let bad = || Error::Parse(format!("invalid rational value for key {key:?}: {v}"));
    match v {
        Value::String(s) => s.parse().map_err(|_| bad()),
        Value::Number(num) => num.as_i64().map(Rat::from_int).ok_or_else(bad),
        _ => Err(bad()),
    }
}

impl TryFrom<RawCharacter> for Character {
    type Error = Error;

    fn try_from(raw: RawCharacter) -> Result<Self> {
        let n = raw.n;
        if n < 2 {
            return Err(Error::TooFewStrands { n, min: 2 });
        }
        let mut slots: Vec<Option<Rat>> = vec![None; pair_count(n)];
        for (key, v) in &raw.weights {
            let (i, j) = parse_key(key, n)?;
            let slot = &mut slots[pair_index(i, j, n)];
            if slot.is_some() {
                return Err(Error::Parse(format!("duplicate weight key {key:?}")));
            }
            *slot = Some(parse_weight(key, v)?);
        }
        let weights = pairs(n)
            .zip(slots)
            .map(|((i, j), w)| w.ok_or_else(|| Error::Parse(format!("missing weight key \"{i}-{j}\""))))
            .collect::<Result<Vec<_>>>()?;
        Character::new(n, weights)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn chi0() -> Character {
        Character::from_int_entries(4, &[(1, 2, 3), (1, 3, 2), (1, 4, -4), (2, 3, -5), (2, 4, 0), (3, 4, 1)])
            .unwrap()
    }

    fn set(v: &[usize]) -> SwingSet {
        SwingSet::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn pair_index_is_storage_order() {
        for n in 2..9 {
            for (k, (i, j)) in pairs(n).enumerate() {
                assert_eq!(pair_index(i, j, n), k);
            }
            assert_eq!(pairs(n).count(), pair_count(n));
        }
    }

    #[test]
    fn swing_values_of_figure_character() {
        let chi = chi0();
        assert_eq!(chi.swing_value(&set(&[1, 2, 4])).unwrap(), Rat::from_int(-1));
        assert_eq!(chi.swing_value(&set(&[1, 2, 3])).unwrap(), Rat::zero());
        assert_eq!(chi.swing_value(&set(&[1, 2, 3, 4])).unwrap(), Rat::from_int(-3));
        assert_eq!(chi.delta_value(), Rat::from_int(-3));
    }

    #[test]
    fn swing_value_out_of_range() {
        let err = chi0().swing_value(&set(&[1, 5])).unwrap_err();
        assert_eq!(err, Error::IndexOutOfRange { index: 5, n: 4 });
    }

    #[test]
    fn delta_examples() {
        assert_eq!(Character::zero(5).unwrap().delta_value(), Rat::zero());
        assert_eq!(Character::from_ints(3, &[1, 1, -2]).unwrap().delta_value(), Rat::zero());
    }

    #[test]
    fn swing_set_validation() {
        assert!(SwingSet::new([3]).is_err());
        assert!(SwingSet::new([2, 2]).is_err());
        assert!(SwingSet::new([0, 2]).is_err());
        assert_eq!(set(&[4, 1, 2]).members(), &[1, 2, 4]);
    }

    #[test]
    fn normalize_examples() {
        let chi = Character::new(3, vec![Rat::new(2, 3), Rat::new(4, 3), Rat::zero()]).unwrap();
        assert_eq!(chi.normalize().unwrap().character(), &Character::from_ints(3, &[1, 2, 0]).unwrap());

        let neg = Character::from_ints(2, &[-5]).unwrap();
        assert_eq!(neg.normalize().unwrap().character(), &Character::from_ints(2, &[-1]).unwrap());

        let c = chi0();
        assert_eq!(c.normalize().unwrap(), c.scale(&Rat::from_int(7)).normalize().unwrap());
        assert_eq!(Character::zero(4).unwrap().normalize(), Err(Error::ZeroCharacter));
    }

    #[test]
    fn normalize_keeps_orientation() {
        let c = chi0();
        assert_ne!(c.normalize().unwrap(), c.scale(&Rat::from_int(-1)).normalize().unwrap());
    }

    #[test]
    fn permute_identity_and_transposition() {
        let c = chi0();
        assert_eq!(c.permute(&Permutation::identity(4)).unwrap(), c);
        let t = c.permute(&Permutation::transposition(4, 1, 2).unwrap()).unwrap();
        let expect = Character::from_int_entries(
            4,
            &[(1, 2, 3), (2, 3, 2), (2, 4, -4), (1, 3, -5), (1, 4, 0), (3, 4, 1)],
        )
        .unwrap();
        assert_eq!(t, expect);
    }

    #[test]
    fn pullback_phi_examples() {
        let psi = Character::from_ints(3, &[1, 1, -2]).unwrap();
        let chi = pullback_phi(&psi, &set(&[2, 4, 5]), 5).unwrap();
        let expect = Character::from_int_entries(5, &[(2, 4, 1), (2, 5, 1), (4, 5, -2)]).unwrap();
        assert_eq!(chi, expect);
        assert_eq!(chi.delta_value(), psi.delta_value());

        let zero = pullback_phi(&Character::zero(3).unwrap(), &set(&[1, 2, 3]), 6).unwrap();
        assert!(zero.is_zero());

        assert_eq!(
            pullback_phi(&psi, &set(&[1, 2]), 5),
            Err(Error::SizeMismatch { expected: 3, found: 2 })
        );
    }

    #[test]
    fn pullback_rho_examples() {
        let psi = Character::from_ints(3, &[1, 1, -2]).unwrap();
        let chi = pullback_rho(&psi).unwrap();
        // storage order: 12, 13, 14, 23, 24, 34
        assert_eq!(chi, Character::from_ints(4, &[1, 1, -2, -2, 1, 1]).unwrap());
        assert!(pullback_rho(&Character::zero(3).unwrap()).unwrap().is_zero());

        let psi = Character::from_ints(3, &[2, -7, 4]).unwrap();
        let chi = pullback_rho(&psi).unwrap();
        assert_eq!(chi.delta_value(), psi.delta_value() * Rat::from_int(2));
    }

    #[test]
    fn json_round_trip_and_errors() {
        let text = r#"{"n": 4, "weights": {"1-2": "3", "1-3": "2", "1-4": "-4", "2-3": "-5", "2-4": "0", "3-4": "1"}}"#;
        let c: Character = serde_json::from_str(text).unwrap();
        assert_eq!(c, chi0());
        let back = serde_json::to_string(&c).unwrap();
        assert_eq!(
            back,
            r#"{"n":4,"weights":{"1-2":"3","1-3":"2","1-4":"-4","2-3":"-5","2-4":"0","3-4":"1"}}"#
        );

        let missing = r#"{"n": 3, "weights": {"1-2": "1", "2-3": "1/2"}}"#;
        let err = serde_json::from_str::<Character>(missing).unwrap_err().to_string();
        assert!(err.contains("\"1-3\""), "{err}");

        let bad = r#"{"n": 2, "weights": {"1-2": "x"}}"#;
        let err = serde_json::from_str::<Character>(bad).unwrap_err().to_string();
        assert!(err.contains("\"1-2\""), "{err}");

        let range = r#"{"n": 2, "weights": {"1-2": "1", "1-3": "1"}}"#;
        let err = serde_json::from_str::<Character>(range).unwrap_err().to_string();
        assert!(err.contains("\"1-3\""), "{err}");
    }
}
