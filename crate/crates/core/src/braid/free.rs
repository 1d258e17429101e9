//! Free groups and their automorphisms.

use std::fmt;

use crate::error::{Error, Result};

/// A freely reduced word over `x_1, ..., x_m`. Letter `k > 0` is `x_k`,
/// letter `-k` is its inverse.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord(Vec<i32>);

fn reduce_into(buf: &mut Vec<i32>, letters: impl IntoIterator<Item = i32>) {
    for x in letters {
        if buf.last() == Some(&-x) {
            buf.pop();
        } else {
            debug_assert!(x != 0);
            buf.push(x);
        }
    }
}

impl FreeWord {
    pub fn new(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut buf = Vec::new();
        reduce_into(&mut buf, letters.into_iter().filter(|&x| x != 0));
        FreeWord(buf)
    }

    pub fn identity() -> Self {
        FreeWord(Vec::new())
    }

    pub fn generator(k: usize) -> Self {
        FreeWord(vec![k as i32])
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != -w[1])
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(|&x| -x).collect())
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let mut buf = self.0.clone();
        reduce_into(&mut buf, other.0.iter().copied());
        FreeWord(buf)
    }

    /// Exponent sum of each generator `x_1..x_rank`.
    pub fn abelianize(&self, rank: usize) -> Vec<i64> {
        let mut v = vec![0; rank];
        for &x in &self.0 {
            v[x.unsigned_abs() as usize - 1] += x.signum() as i64;
        }
        v
    }

    pub fn max_generator(&self) -> usize {
        self.0.iter().map(|x| x.unsigned_abs() as usize).max().unwrap_or(0)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, &x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            if x > 0 {
                write!(f, "x{x}")?;
            } else {
                write!(f, "X{}", -x)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// An automorphism of the free group of rank `m`, given by the images of
/// the basis letters together with the images under its inverse.
///
/// Composition reads left to right: `compose(f, g)` applies `f` first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FreeGroupAut {
    rank: usize,
    images: Vec<FreeWord>,
    inverse_images: Vec<FreeWord>,
}

impl FreeGroupAut {
    /// Checks that the two image lists are mutually inverse.
    pub fn new(images: Vec<FreeWord>, inverse_images: Vec<FreeWord>) -> Result<Self> {
        let rank = images.len();
        if inverse_images.len() != rank {
            return Err(Error::RankMismatch(rank, inverse_images.len()));
        }
        let f = FreeGroupAut { rank, images, inverse_images };
        for w in f.images.iter().chain(&f.inverse_images) {
            if w.max_generator() > rank {
                return Err(Error::RankMismatch(rank, w.max_generator()));
            }
        }
        let inv = f.inverse();
        for k in 1..=rank {
            let x = FreeWord::generator(k);
            if inv.apply(&f.apply(&x)) != x || f.apply(&inv.apply(&x)) != x {
                return Err(Error::Parse(format!("image lists are not inverse at x{k}")));
            }
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(images: Vec<FreeWord>, inverse_images: Vec<FreeWord>) -> Self {
        FreeGroupAut { rank: images.len(), images, inverse_images }
    }

    pub fn identity(rank: usize) -> Self {
        let ids: Vec<FreeWord> = (1..=rank).map(FreeWord::generator).collect();
        FreeGroupAut { rank, images: ids.clone(), inverse_images: ids }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[FreeWord] {
        &self.images
    }

    pub fn image(&self, k: usize) -> &FreeWord {
        &self.images[k - 1]
    }

    pub fn inverse(&self) -> FreeGroupAut {
        FreeGroupAut {
            rank: self.rank,
            images: self.inverse_images.clone(),
            inverse_images: self.images.clone(),
        }
    }

    /// Image of an arbitrary word: substitute the image of each letter.
    pub fn apply(&self, w: &FreeWord) -> FreeWord {
        let mut buf = Vec::new();
        for &x in w.letters() {
            let img = &self.images[x.unsigned_abs() as usize - 1];
            if x > 0 {
                reduce_into(&mut buf, img.letters().iter().copied());
            } else {
                reduce_into(&mut buf, img.letters().iter().rev().map(|&y| -y));
            }
        }
        FreeWord(buf)
    }

    /// Basis letter `x_k` maps to a conjugate of `x_{p(k)}`; returns `p` if
    /// every image abelianizes to a single basis vector.
    pub fn induced_permutation(&self) -> Option<Vec<usize>> {
        self.images
            .iter()
            .map(|w| {
                let ab = w.abelianize(self.rank);
                let mut hits = ab.iter().enumerate().filter(|(_, &v)| v != 0);
                match (hits.next(), hits.next()) {
                    (Some((k, 1)), None) => Some(k + 1),
                    _ => None,
                }
            })
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, w)| w.letters() == [k as i32 + 1])
    }

    /// Total letters across all images.
    pub fn size(&self) -> usize {
        self.images.iter().map(FreeWord::len).sum()
    }
}

/// `f` followed by `g`.
pub fn compose(f: &FreeGroupAut, g: &FreeGroupAut) -> Result<FreeGroupAut> {
    if f.rank != g.rank {
        return Err(Error::RankMismatch(f.rank, g.rank));
    }
    let f_inv = f.inverse();
    Ok(FreeGroupAut {
        rank: f.rank,
        images: f.images.iter().map(|w| g.apply(w)).collect(),
        inverse_images: g.inverse_images.iter().map(|w| f_inv.apply(w)).collect(),
    })
}

/// Automorphisms are equal iff their reduced basis images coincide.
pub fn aut_equal(f: &FreeGroupAut, g: &FreeGroupAut) -> bool {
    f.rank == g.rank && f.images == g.images
}

impl fmt::Debug for FreeGroupAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Aut(")?;
        for (k, w) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "x{} -> {}", k + 1, w)?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(v: &[i32]) -> FreeWord {
        FreeWord::new(v.iter().copied())
    }

    #[test]
    fn reduction() {
        assert_eq!(w(&[1, 2, -2, -1, 3]).letters(), &[3]);
        assert_eq!(w(&[1, -1]), FreeWord::identity());
        assert_eq!(w(&[1, 2]).mul(&w(&[-2, 3])).letters(), &[1, 3]);
        assert_eq!(w(&[1, 2, -3]).inverse().letters(), &[3, -2, -1]);
    }

    #[test]
    fn aut_validation() {
        // x1 -> x1 x2, x2 -> x2 ; inverse x1 -> x1 X2
        let f = FreeGroupAut::new(vec![w(&[1, 2]), w(&[2])], vec![w(&[1, -2]), w(&[2])]).unwrap();
        assert!(compose(&f, &f.inverse()).unwrap().is_identity());
        assert!(FreeGroupAut::new(vec![w(&[1, 2]), w(&[2])], vec![w(&[1]), w(&[2])]).is_err());
        assert!(matches!(
            FreeGroupAut::new(vec![w(&[1])], vec![w(&[1]), w(&[2])]),
            Err(Error::RankMismatch(1, 2))
        ));
    }

    #[test]
    fn composition_order_is_left_to_right() {
        // f: x1 -> x1 x2 ; g: x2 -> x2 x1. f then g sends x1 to x1 (x2 x1).
        let f = FreeGroupAut::new(vec![w(&[1, 2]), w(&[2])], vec![w(&[1, -2]), w(&[2])]).unwrap();
        let g = FreeGroupAut::new(vec![w(&[1]), w(&[2, 1])], vec![w(&[1]), w(&[2, -1])]).unwrap();
        let fg = compose(&f, &g).unwrap();
        assert_eq!(fg.image(1).letters(), &[1, 2, 1]);
        let gf = compose(&g, &f).unwrap();
        assert_eq!(gf.image(1).letters(), &[1, 2]);
        assert_eq!(gf.image(2).letters(), &[2, 1, 2]);
        assert!(!aut_equal(&fg, &gf));
        assert!(compose(&fg, &fg.inverse()).unwrap().is_identity());
        assert!(aut_equal(&compose(&f, &FreeGroupAut::identity(2)).unwrap(), &f));
    }

    fn word_strategy() -> impl Strategy<Value = Vec<i32>> {
        prop::collection::vec(prop_oneof![1..=3i32, -3..=-1i32], 0..24)
    }

    proptest! {
        #[test]
        fn reduction_is_confluent(u in word_strategy(), v in word_strategy()) {
            let mut joined = u.clone();
            joined.extend(&v);
            let direct = FreeWord::new(joined);
            prop_assert!(direct.is_reduced());
            prop_assert_eq!(direct, w(&u).mul(&w(&v)));
        }

        #[test]
        fn inverse_cancels(u in word_strategy()) {
            prop_assert!(w(&u).mul(&w(&u).inverse()).is_empty());
        }
    }
}
