//! Seeded random characters for property suites.
//!
//! Uniform weights almost never have `chi(Delta) = 0`, so the generator
//! mixes several families that exercise every branch of the classifier:
//! dense weights, sparse supports forced to zero total, circle points, and
//! circle points with one weight perturbed.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::character::{pairs, Character};
use crate::circles::{enumerate_circles, sample_circle};
use crate::rational::Rat;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small rational with numerator in `-3..=3` and denominator in `1..=3`.
pub fn small_rat<R: Rng>(rng: &mut R) -> Rat {
    Rat::new(rng.random_range(-3..=3), rng.random_range(1..=3))
}

fn nonzero_rat<R: Rng>(rng: &mut R) -> Rat {
    loop {
        let q = small_rat(rng);
        if !q.is_zero() {
            return q;
        }
    }
}

/// A nonzero character on `n >= 3` strands drawn from the mixed families.
pub fn random_character<R: Rng>(rng: &mut R, n: usize) -> Character {
    loop {
        let chi = match rng.random_range(0..5) {
            0 => dense(rng, n),
            1 | 2 => sparse_zero_sum(rng, n),
            3 => circle_point(rng, n),
            _ => {
                let mut chi = circle_point(rng, n);
                let all: Vec<(usize, usize)> = pairs(n).collect();
                let &(i, j) = all.choose(rng).expect("n >= 2");
                let w = chi.weight(i, j) + &nonzero_rat(rng);
                chi.set_weight(i, j, w).expect("pair in range");
                chi
            }
        };
        if !chi.is_zero() {
            return chi;
        }
    }
}

fn dense<R: Rng>(rng: &mut R, n: usize) -> Character {
    let weights = pairs(n).map(|_| small_rat(rng)).collect();
    Character::new(n, weights).expect("length matches")
}

/// Between one and six edges with random weights; the last edge absorbs the
/// total so that `chi(Delta) = 0`.
fn sparse_zero_sum<R: Rng>(rng: &mut R, n: usize) -> Character {
    let all: Vec<(usize, usize)> = pairs(n).collect();
    let k = rng.random_range(2..=6.min(all.len()));
    let chosen: Vec<(usize, usize)> = all.choose_multiple(rng, k).copied().collect();
    let mut entries: Vec<(usize, usize, Rat)> = chosen[..k - 1].iter().map(|&(i, j)| (i, j, nonzero_rat(rng))).collect();
    let total: Rat = entries.iter().map(|e| &e.2).sum();
    let (i, j) = chosen[k - 1];
    entries.push((i, j, -total));
    Character::from_entries(n, &entries).expect("pairs in range")
}

fn circle_point<R: Rng>(rng: &mut R, n: usize) -> Character {
    let circles = enumerate_circles(n);
    let id = circles.choose(rng).expect("n >= 3");
    loop {
        let (t1, t2) = (small_rat(rng), small_rat(rng));
        if let Ok(chi) = sample_circle(id, (&t1, &t2), n) {
            return chi;
        }
    }
}

/// Positive rational with numerator and denominator in `1..=5`.
pub fn positive_rat<R: Rng>(rng: &mut R) -> Rat {
    Rat::new(rng.random_range(1..=5), rng.random_range(1..=5))
}
