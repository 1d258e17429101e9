//! Presentation identities checked in the Artin representation.
//!
//! Each check is reported as a [`Check`] row so the CLI can print the whole
//! suite as a table.

use std::fmt;

use serde::Serialize;

use crate::braid::artin::{
    commute_wordlevel, commutes_predicate, factorization_holds, parse_braid_word, standard_pure_word,
    swing_word, BraidWord, WORD_BUDGET_STRANDS,
};
use crate::braid::free::{aut_equal, compose, FreeGroupAut};
use crate::character::{pair_count, pair_index, SwingSet};
use crate::circles::subsets;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into() }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{mark}  {:<44} {}", self.name, self.detail)
    }
}

/// The nine relations of the planar presentation of `P_4`, as pairs of
/// words over the generators `a..f`.
pub const PLANAR_RELATIONS: [(&str, &str); 9] = [
    ("abc", "bca"),
    ("bca", "cab"),
    ("ad", "da"),
    ("cde", "dec"),
    ("dec", "ecd"),
    ("be", "eb"),
    ("bfd", "fdb"),
    ("fdb", "dbf"),
    ("cf", "fc"),
];

/// Images of the planar generators under `rho: P_4 -> P_3`, as indices into
/// `[S12, S13, S23]`: `a,d -> S12`, `b,e -> S13`, `c,f -> S23`.
pub const RHO_IMAGES: [usize; 6] = [0, 1, 2, 0, 1, 2];

/// Edge of the planar `K_4` carrying each generator `a..f`.
pub const PLANAR_EDGES: [(usize, usize); 6] = [(1, 2), (1, 3), (2, 3), (3, 4), (2, 4), (1, 4)];

/// Committed Artin words for the planar generators.
pub const PLANAR_WORDS_DATA: &str = include_str!("../../data/planar_p4.txt");

fn product(gens: &[FreeGroupAut], rank: usize, word: &str) -> FreeGroupAut {
    word.bytes()
        .fold(FreeGroupAut::identity(rank), |acc, c| compose(&acc, &gens[(c - b'a') as usize]).expect("same rank"))
}

/// Words for the six planar generators `a..f` of `P_4` inside `B_4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarWords(pub [BraidWord; 6]);

impl PlanarWords {
    /// Lines of the form `a = s1 s1`; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut slots: [Option<BraidWord>; 6] = Default::default();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (name, word) =
                line.split_once('=').ok_or_else(|| Error::Parse(format!("expected `name = word`: {line:?}")))?;
            let name = name.trim();
            let idx = match name {
                "a" | "b" | "c" | "d" | "e" | "f" => (name.as_bytes()[0] - b'a') as usize,
                _ => return Err(Error::Parse(format!("unknown planar generator {name:?}"))),
            };
            if slots[idx].is_some() {
                return Err(Error::Parse(format!("planar generator {name} listed twice")));
            }
            slots[idx] = Some(parse_braid_word(4, word)?);
        }
        let words = slots
            .into_iter()
            .enumerate()
            .map(|(k, w)| w.ok_or_else(|| Error::Parse(format!("missing planar generator {}", (b'a' + k as u8) as char))))
            .collect::<Result<Vec<_>>>()?;
        Ok(PlanarWords(words.try_into().expect("six words")))
    }

    pub fn committed() -> Self {
        PlanarWords::parse(PLANAR_WORDS_DATA).expect("committed planar word list parses")
    }

    /// Convex-position words `A12, A13, A23, A34, A24, A14`.
    pub fn convex() -> Self {
        PlanarWords(PLANAR_EDGES.map(|(i, j)| standard_pure_word(i, j, 4).expect("in range")))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, w) in self.0.iter().enumerate() {
            out.push_str(&format!("{} = {}\n", (b'a' + k as u8) as char, w));
        }
        out
    }
}

/// Checks all nine planar relations, plus that each generator is a pure
/// braid whose abelian class is the edge it labels.
pub fn verify_planar_presentation(words: &PlanarWords) -> Vec<Check> {
    let gens: Vec<FreeGroupAut> = words.0.iter().map(BraidWord::to_aut).collect();
    let mut out: Vec<Check> = PLANAR_RELATIONS
        .iter()
        .map(|&(l, r)| {
            let ok = aut_equal(&product(&gens, 4, l), &product(&gens, 4, r));
            Check::new(format!("planar P4: {l} = {r}"), ok, "")
        })
        .collect();
    for (k, (w, &(i, j))) in words.0.iter().zip(&PLANAR_EDGES).enumerate() {
        let mut unit = vec![0; pair_count(4)];
        unit[pair_index(i, j, 4)] = 1;
        let ok = w.linking_numbers().as_ref() == Some(&unit);
        let name = (b'a' + k as u8) as char;
        out.push(Check::new(format!("planar P4: {name} is pure with class S{i}{j}"), ok, w.to_string()));
    }
    out
}

fn planar_relations_hold(gens: &[FreeGroupAut]) -> bool {
    PLANAR_RELATIONS.iter().all(|&(l, r)| aut_equal(&product(gens, 4, l), &product(gens, 4, r)))
}

/// Freely reduced braid words of the given length, in the letter order
/// `s1 S1 s2 S2 ...`.
fn reduced_words(strands: usize, len: usize) -> Vec<Vec<i32>> {
    let alphabet: Vec<i32> = (1..strands as i32).flat_map(|k| [k, -k]).collect();
    let mut level: Vec<Vec<i32>> = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &level {
            for &x in &alphabet {
                if w.last() != Some(&-x) {
                    let mut v = w.clone();
                    v.push(x);
                    next.push(v);
                }
            }
        }
        level = next;
    }
    level
}

/// Bounded search for planar generator words: keep the convex-position words
/// for `a, b, c, d, f` and try `e = w A24 w^-1` over freely reduced
/// conjugators `w` in increasing length (at most `max_len`). Among the
/// conjugators of the first length that satisfies all nine relations, the
/// shortest reduced `e` wins, ties going to the earliest in the letter order
/// `s1 S1 s2 S2 s3 S3`.
pub fn search_planar_words(max_len: usize) -> Option<PlanarWords> {
    let convex = PlanarWords::convex();
    let mut gens: Vec<FreeGroupAut> = convex.0.iter().map(BraidWord::to_aut).collect();
    let a24 = standard_pure_word(2, 4, 4).expect("in range");
    for len in 0..=max_len {
        let mut best: Option<BraidWord> = None;
        for letters in reduced_words(4, len) {
            let w = BraidWord::new(4, letters).expect("valid letters");
            let e = a24.conjugate_by(&w).freely_reduced();
            if best.as_ref().is_some_and(|b| b.len() <= e.len()) {
                continue;
            }
            gens[4] = e.to_aut();
            if planar_relations_hold(&gens) {
                best = Some(e);
            }
        }
        if let Some(e) = best {
            let mut words = convex.0.clone();
            words[4] = e;
            return Some(PlanarWords(words));
        }
    }
    None
}

/// Pure braid group on three strands: with `a = A12, b = A13, c = A23`,
/// `abc = bca = cab` and `abc` commutes with each generator.
pub fn verify_p3_relation() -> Vec<Check> {
    let gens: Vec<FreeGroupAut> =
        [(1, 2), (1, 3), (2, 3)].iter().map(|&(i, j)| standard_pure_word(i, j, 3).unwrap().to_aut()).collect();
    let p = |w: &str| product(&gens, 3, w);
    let mut out = vec![
        Check::new("P3: abc = bca", aut_equal(&p("abc"), &p("bca")), ""),
        Check::new("P3: abc = cab", aut_equal(&p("abc"), &p("cab")), ""),
    ];
    for g in ["a", "b", "c"] {
        let ok = aut_equal(&p(&format!("abc{g}")), &p(&format!("{g}abc")));
        out.push(Check::new(format!("P3: abc central, commutes with {g}"), ok, ""));
    }
    let full = swing_word(&SwingSet::full(3).unwrap(), 3).unwrap().to_aut();
    out.push(Check::new("P3: abc = S123 (full twist)", aut_equal(&p("abc"), &full), ""));
    out
}

/// `S_ijk = S_ij S_ik S_jk = S_ik S_jk S_ij = S_jk S_ij S_ik` for every
/// triple with `n <= max_n`, and for larger sets `S_A` equals the product of
/// its pair generators taken column by column.
pub fn verify_swing_factorizations(max_n: usize) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let p = |i, j| SwingSet::pair(i, j).unwrap();
    for n in 3..=max_n {
        let (mut total, mut ok) = (0, 0);
        for s in subsets(n, 3) {
            let (i, j, k) = (s[0], s[1], s[2]);
            let target = SwingSet::new(s)?;
            for order in [[p(i, j), p(i, k), p(j, k)], [p(i, k), p(j, k), p(i, j)], [p(j, k), p(i, j), p(i, k)]] {
                total += 1;
                ok += factorization_holds(&target, &order, n)? as usize;
            }
        }
        out.push(Check::new(format!("S_ijk triple factorizations, n={n}"), ok == total, format!("{ok}/{total}")));

        let (mut total, mut ok) = (0, 0);
        for k in 4..=n {
            for s in subsets(n, k) {
                let factors: Vec<SwingSet> =
                    (1..s.len()).flat_map(|m| (0..m).map(move |l| (l, m))).map(|(l, m)| p(s[l], s[m])).collect();
                total += 1;
                ok += factorization_holds(&SwingSet::new(s)?, &factors, n)? as usize;
            }
        }
        if total > 0 {
            out.push(Check::new(format!("S_A column factorization |A|>=4, n={n}"), ok == total, format!("{ok}/{total}")));
        }
    }
    Ok(out)
}

/// Images of the nine planar relations under `rho`, checked in `P_3`.
pub fn verify_rho() -> Vec<Check> {
    let p3: Vec<FreeGroupAut> =
        [(1, 2), (1, 3), (2, 3)].iter().map(|&(i, j)| standard_pure_word(i, j, 3).unwrap().to_aut()).collect();
    let images: Vec<FreeGroupAut> = RHO_IMAGES.iter().map(|&k| p3[k].clone()).collect();
    let name = |w: &str| -> String { w.bytes().map(|c| (b'a' + RHO_IMAGES[(c - b'a') as usize] as u8) as char).collect() };
    PLANAR_RELATIONS
        .iter()
        .map(|&(l, r)| {
            let ok = aut_equal(&product(&images, 3, l), &product(&images, 3, r));
            Check::new(format!("rho: {l} = {r} -> {} = {}", name(l), name(r)), ok, "")
        })
        .collect()
}

/// Artin relations for every applicable index pair, `n <= max_n`.
pub fn verify_artin_relations(max_n: usize) -> Vec<Check> {
    let mut out = Vec::new();
    for n in 3..=max_n {
        let s = |i: usize| BraidWord::new(n, vec![i as i32]).unwrap();
        let (mut total, mut ok) = (0, 0);
        for i in 1..n {
            for j in i + 1..n {
                total += 1;
                let good = if j == i + 1 {
                    aut_equal(&s(i).then(&s(j)).then(&s(i)).to_aut(), &s(j).then(&s(i)).then(&s(j)).to_aut())
                } else {
                    aut_equal(&s(i).then(&s(j)).to_aut(), &s(j).then(&s(i)).to_aut())
                };
                ok += good as usize;
            }
        }
        out.push(Check::new(format!("Artin relations, n={n}"), ok == total, format!("{ok}/{total}")));
    }
    out
}

/// `A_ij` and `A_kl` commute in the Artin representation exactly when the
/// chord predicate says so; every pair of pairs, `n <= max_n`.
pub fn verify_pair_commutation(max_n: usize) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in 2..=max_n.min(WORD_BUDGET_STRANDS) {
        let pairs: Vec<SwingSet> = subsets(n, 2).into_iter().map(SwingSet::new).collect::<Result<_>>()?;
        let words = pairs.iter().map(|s| swing_word(s, n)).collect::<Result<Vec<_>>>()?;
        let (mut total, mut ok) = (0, 0);
        for a in 0..pairs.len() {
            for b in a..pairs.len() {
                total += 1;
                ok += (commute_wordlevel(&words[a], &words[b])? == commutes_predicate(&pairs[a], &pairs[b])) as usize;
            }
        }
        out.push(Check::new(format!("A_ij commutation <=> chord predicate, n={n}"), ok == total, format!("{ok}/{total}")));
    }
    Ok(out)
}

/// Same comparison over all pairs of swing sets of any size.
pub fn verify_set_commutation(max_n: usize) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in 3..=max_n.min(WORD_BUDGET_STRANDS) {
        let sets: Vec<SwingSet> =
            (2..=n).flat_map(|k| subsets(n, k)).map(SwingSet::new).collect::<Result<_>>()?;
        let auts: Vec<FreeGroupAut> =
            sets.iter().map(|s| swing_word(s, n).map(|w| w.to_aut())).collect::<Result<_>>()?;
        let (mut total, mut ok) = (0, 0);
        for a in 0..sets.len() {
            for b in a + 1..sets.len() {
                total += 1;
                let word = aut_equal(&compose(&auts[a], &auts[b])?, &compose(&auts[b], &auts[a])?);
                ok += (word == commutes_predicate(&sets[a], &sets[b])) as usize;
            }
        }
        out.push(Check::new(format!("S_A commutation <=> chord predicate, n={n}"), ok == total, format!("{ok}/{total}")));
    }
    Ok(out)
}

/// Standard words induce the identity permutation on the free basis.
pub fn verify_standard_words_pure(max_n: usize) -> Vec<Check> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        let (mut total, mut ok) = (0, 0);
        for s in subsets(n, 2) {
            total += 1;
            let perm = standard_pure_word(s[0], s[1], n).unwrap().to_aut().induced_permutation();
            ok += perm.is_some_and(|p| p.iter().enumerate().all(|(k, &v)| v == k + 1)) as usize;
        }
        out.push(Check::new(format!("A_ij induce trivial permutation, n={n}"), ok == total, format!("{ok}/{total}")));
    }
    out
}

/// Conjugator length bound used when reproducing the committed planar words.
pub const PLANAR_SEARCH_MAX_LEN: usize = 8;

/// The full identity suite run by the `verify` subcommand.
pub fn identity_suite() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    out.extend(verify_artin_relations(WORD_BUDGET_STRANDS));
    out.extend(verify_standard_words_pure(WORD_BUDGET_STRANDS));
    out.extend(verify_pair_commutation(WORD_BUDGET_STRANDS)?);
    out.extend(verify_set_commutation(5)?);
    out.extend(verify_swing_factorizations(5)?);
    out.extend(verify_p3_relation());

    let committed = PlanarWords::committed();
    out.extend(verify_planar_presentation(&committed));
    let found = search_planar_words(PLANAR_SEARCH_MAX_LEN);
    out.push(Check::new(
        "planar P4: search reproduces committed words",
        found.as_ref() == Some(&committed),
        format!("conjugator length <= {PLANAR_SEARCH_MAX_LEN}"),
    ));
    let mut wrong = PlanarWords::convex();
    wrong.0[4] = standard_pure_word(1, 4, 4)?;
    let failing = verify_planar_presentation(&wrong).iter().take(PLANAR_RELATIONS.len()).filter(|c| !c.passed).count();
    out.push(Check::new(
        "planar P4: negative control e = A14 rejected",
        failing > 0,
        format!("{failing} relations fail"),
    ));

    out.extend(verify_rho());
    Ok(out)
}
