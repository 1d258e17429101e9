//! Braid words, the Artin representation, and swing generators.
//!
//! `sigma_i` acts on `F_n` by `x_i -> x_i x_{i+1} x_i^-1`, `x_{i+1} -> x_i`.
//! Braid words compose left to right, matching [`compose`].
//!
//! Swing generators are realized for the base configuration with the `n`
//! points in convex position. Flattening the circle onto a line, every chord
//! bends to the same side of the intermediate points, which is what the
//! positive crossings in [`standard_pure_word`] and [`swing_word`] encode.

use std::fmt;
use std::str::FromStr;

use crate::braid::free::{aut_equal, compose, FreeGroupAut, FreeWord};
use crate::character::{pair_count, pair_index, SwingSet};
use crate::error::{Error, Result};

/// Largest strand count accepted by word-level checks.
pub const WORD_BUDGET_STRANDS: usize = 6;

/// A word in the Artin generators `sigma_1 .. sigma_{n-1}` of `B_n`.
/// Letter `k > 0` is `sigma_k`, `-k` is its inverse.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands < 2 {
            return Err(Error::TooFewStrands { n: strands, min: 2 });
        }
        for &x in &letters {
            let i = x.unsigned_abs() as usize;
            if x == 0 || i >= strands {
                return Err(Error::IndexOutOfRange { index: i, n: strands - 1 });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord { strands, letters: Vec::new() }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: self.letters.iter().rev().map(|&x| -x).collect() }
    }

    pub fn then(&self, other: &BraidWord) -> BraidWord {
        assert_eq!(self.strands, other.strands, "strand count mismatch");
        let mut letters = self.letters.clone();
        letters.extend(&other.letters);
        BraidWord { strands: self.strands, letters }
    }

    pub fn product<'a>(strands: usize, words: impl IntoIterator<Item = &'a BraidWord>) -> BraidWord {
        words.into_iter().fold(BraidWord::identity(strands), |acc, w| acc.then(w))
    }

    /// `w self w^-1`.
    pub fn conjugate_by(&self, w: &BraidWord) -> BraidWord {
        w.then(self).then(&w.inverse())
    }

    /// Cancel adjacent `sigma sigma^-1` pairs.
    pub fn freely_reduced(&self) -> BraidWord {
        let w = FreeWord::new(self.letters.iter().copied());
        BraidWord { strands: self.strands, letters: w.letters().to_vec() }
    }

    /// Strand permutation: `perm[p-1]` is the final position of the strand
    /// starting at position `p`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (1..=self.strands).collect(); // at[pos-1] = strand
        for &x in &self.letters {
            let i = x.unsigned_abs() as usize;
            at.swap(i - 1, i);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &strand) in at.iter().enumerate() {
            perm[strand - 1] = pos + 1;
        }
        perm
    }

    pub fn is_pure(&self) -> bool {
        self.permutation().iter().enumerate().all(|(k, &p)| p == k + 1)
    }

    /// Pairwise linking numbers, the image in the abelianization of `P_n`
    /// indexed like character weights. `None` for non-pure words.
    pub fn linking_numbers(&self) -> Option<Vec<i64>> {
        if !self.is_pure() {
            return None;
        }
        let mut at: Vec<usize> = (1..=self.strands).collect();
        let mut twice = vec![0i64; pair_count(self.strands)];
        for &x in &self.letters {
            let i = x.unsigned_abs() as usize;
            let (a, b) = (at[i - 1].min(at[i]), at[i - 1].max(at[i]));
            twice[pair_index(a, b, self.strands)] += x.signum() as i64;
            at.swap(i - 1, i);
        }
        twice.iter().all(|v| v % 2 == 0).then(|| twice.iter().map(|v| v / 2).collect())
    }

    pub fn to_aut(&self) -> FreeGroupAut {
        let mut f = FreeGroupAut::identity(self.strands);
        for &x in &self.letters {
            let s = artin_sigma(x.unsigned_abs() as usize, self.strands, x < 0).expect("letters validated");
            f = compose(&f, &s).expect("same rank");
        }
        f
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, &x) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            if x > 0 {
                write!(f, "s{x}")?;
            } else {
                write!(f, "S{}", -x)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}[{}]", self.strands, self)
    }
}

/// Parses `s1 S2 s3` (lowercase `s` for `sigma_k`, uppercase for its inverse)
/// against a given strand count.
pub fn parse_braid_word(strands: usize, text: &str) -> Result<BraidWord> {
    let letters = text
        .split_whitespace()
        .map(|tok| {
            let (sign, rest) = match tok.split_at(1) {
                ("s", r) => (1, r),
                ("S", r) => (-1, r),
                _ => return Err(Error::Parse(format!("bad braid letter {tok:?}"))),
            };
            rest.parse::<i32>()
                .ok()
                .filter(|&k| k > 0)
                .map(|k| sign * k)
                .ok_or_else(|| Error::Parse(format!("bad braid letter {tok:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    BraidWord::new(strands, letters)
}

impl FromStr for BraidWord {
    type Err = Error;

    /// Strand count is one more than the largest generator index.
    fn from_str(s: &str) -> Result<Self> {
        let w = parse_braid_word(usize::MAX, s)?;
        let strands = w.letters.iter().map(|x| x.unsigned_abs() as usize).max().unwrap_or(1) + 1;
        BraidWord::new(strands, w.letters)
    }
}

/// The automorphism of `F_n` induced by `sigma_i` (or its inverse).
pub fn artin_sigma(i: usize, n: usize, inverse: bool) -> Result<FreeGroupAut> {
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange { index: i, n: n.saturating_sub(1) });
    }
    let mut fwd: Vec<FreeWord> = (1..=n).map(FreeWord::generator).collect();
    let mut bwd = fwd.clone();
    let (a, b) = (i as i32, i as i32 + 1);
    // sigma_i: x_i -> x_i x_{i+1} x_i^-1, x_{i+1} -> x_i
    fwd[i - 1] = FreeWord::new([a, b, -a]);
    fwd[i] = FreeWord::generator(i);
    // inverse: x_i -> x_{i+1}, x_{i+1} -> x_{i+1}^-1 x_i x_{i+1}
    bwd[i - 1] = FreeWord::generator(i + 1);
    bwd[i] = FreeWord::new([-b, a, b]);
    Ok(if inverse {
        FreeGroupAut::new_unchecked(bwd, fwd)
    } else {
        FreeGroupAut::new_unchecked(fwd, bwd)
    })
}

/// The convex-position pure generator `A_ij = (sigma_{j-1} .. sigma_{i+1})
/// sigma_i^2 (sigma_{i+1}^-1 .. sigma_{j-1}^-1)`.
pub fn standard_pure_word(i: usize, j: usize, n: usize) -> Result<BraidWord> {
    if i == 0 || i >= j || j > n {
        return Err(Error::IndexOutOfRange { index: if i == 0 { 0 } else { j }, n });
    }
    let prefix: Vec<i32> = ((i + 1)..j).rev().map(|k| k as i32).collect();
    let mut letters = prefix.clone();
    letters.extend([i as i32, i as i32]);
    letters.extend(prefix.iter().rev().map(|&k| -k));
    BraidWord::new(n, letters)
}

/// Swing generator `S_A` for an arbitrary set: slide the members of `A`
/// together (each crossing the non-members the same way as in `A_ij`), do a
/// full twist of the gathered block, and slide back.
pub fn swing_word(a: &SwingSet, n: usize) -> Result<BraidWord> {
    a.check_range(n)?;
    let m = a.members();
    let first = m[0];
    let mut gather = Vec::new();
    for (k, &p) in m.iter().enumerate().skip(1) {
        gather.extend(((first + k)..p).rev().map(|q| q as i32));
    }
    let k = m.len();
    let mut twist = Vec::new();
    for _ in 0..k {
        twist.extend((first..first + k - 1).map(|q| q as i32));
    }
    let gather = BraidWord::new(n, gather)?;
    Ok(gather.then(&BraidWord::new(n, twist)?).then(&gather.inverse()))
}

/// Sufficient condition for `S_A` and `S_B` to commute: nested sets, or
/// disjoint sets whose convex hulls (points in convex position, clockwise
/// order `1..n`) do not meet, i.e. that do not interleave around the circle.
pub fn commutes_predicate(a: &SwingSet, b: &SwingSet) -> bool {
    if a.is_subset(b) || b.is_subset(a) {
        return true;
    }
    if !a.is_disjoint(b) {
        return false;
    }
    let mut marks: Vec<(usize, bool)> = a
        .members()
        .iter()
        .map(|&i| (i, true))
        .chain(b.members().iter().map(|&i| (i, false)))
        .collect();
    marks.sort_unstable();
    let changes = (0..marks.len()).filter(|&k| marks[k].1 != marks[(k + 1) % marks.len()].1).count();
    changes <= 2
}

/// `uv = vu` in the Artin representation.
pub fn commute_wordlevel(u: &BraidWord, v: &BraidWord) -> Result<bool> {
    if u.strands != v.strands {
        return Err(Error::WrongStrandCount { expected: u.strands, found: v.strands });
    }
    if u.strands > WORD_BUDGET_STRANDS {
        return Err(Error::Budget(format!(
            "word-level check limited to {WORD_BUDGET_STRANDS} strands, got {}",
            u.strands
        )));
    }
    let (fu, fv) = (u.to_aut(), v.to_aut());
    Ok(aut_equal(&compose(&fu, &fv)?, &compose(&fv, &fu)?))
}

/// Does `S_target` equal the product of the listed swing generators (left to
/// right) in `P_n`? Checked in the Artin representation.
pub fn factorization_holds(target: &SwingSet, factors: &[SwingSet], n: usize) -> Result<bool> {
    if n > WORD_BUDGET_STRANDS {
        return Err(Error::Budget(format!("word-level check limited to {WORD_BUDGET_STRANDS} strands")));
    }
    let lhs = swing_word(target, n)?.to_aut();
    let words = factors.iter().map(|f| swing_word(f, n)).collect::<Result<Vec<_>>>()?;
    let rhs = BraidWord::product(n, &words).to_aut();
    Ok(aut_equal(&lhs, &rhs))
}
