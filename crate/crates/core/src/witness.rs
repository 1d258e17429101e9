//! Witness packages `(J, I)` for `Sigma^1` certificates.
//!
//! A package is sound when every element of `J` survives under the
//! character, the commuting graph `C(J)` is connected, `J` dominates `I`,
//! and `I` generates `P_n`. Generation is checked through the abelianized
//! rank and explicit recovery identities, which are also verified in the
//! Artin representation for small `n`.

use std::collections::{HashMap, VecDeque};
use std::sync::{Mutex, OnceLock};

use serde::Serialize;

use crate::braid::{commutes_predicate, factorization_holds};
use crate::character::{pair_count, pair_index, pairs, Character, Permutation, SwingSet};
use crate::classifier::{recheck, Certificate};
use crate::error::{Error, Result};
use crate::rational::Rat;

/// Largest `n` for which recovery identities are checked on words.
pub const WORD_CHECK_MAX_N: usize = 5;

/// `S_target = prod(factors)`, used to recover `removed` from `I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub removed: SwingSet,
    pub target: SwingSet,
    pub factors: Vec<SwingSet>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessPackage {
    pub lemma: &'static str,
    pub n: usize,
    /// Relabeling from the input character to the lemma's normal form.
    pub permutation: Permutation,
    #[serde(rename = "J")]
    pub j: Vec<SwingSet>,
    #[serde(rename = "I")]
    pub i: Vec<SwingSet>,
    pub factorizations: Vec<Factorization>,
    /// Values of `J` under the relabeled character.
    pub survival: Vec<Rat>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub survives: bool,
    pub connected: bool,
    pub dominates: bool,
    pub generates: bool,
    pub failures: Vec<String>,
}

impl WitnessReport {
    pub fn passed(&self) -> bool {
        self.survives && self.connected && self.dominates && self.generates
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutingGraph {
    pub vertices: Vec<SwingSet>,
    pub edges: Vec<(usize, usize)>,
}

impl CommutingGraph {
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    /// The empty graph counts as disconnected.
    pub fn is_connected(&self) -> bool {
        let m = self.vertices.len();
        if m == 0 {
            return false;
        }
        let mut seen = vec![false; m];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for &(a, b) in &self.edges {
                let w = if a == v { b } else if b == v { a } else { continue };
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

pub fn commuting_graph(j: &[SwingSet], n: usize) -> CommutingGraph {
    debug_assert!(j.iter().all(|s| s.check_range(n).is_ok()));
    let mut edges = Vec::new();
    for a in 0..j.len() {
        for b in a + 1..j.len() {
            if commutes_predicate(&j[a], &j[b]) {
                edges.push((a, b));
            }
        }
    }
    CommutingGraph { vertices: j.to_vec(), edges }
}

/// Whether every element of `i` commutes with some element of `j`, together
/// with the elements that do not.
pub fn dominates(j: &[SwingSet], i: &[SwingSet], n: usize) -> (bool, Vec<SwingSet>) {
    debug_assert!(j.iter().chain(i).all(|s| s.check_range(n).is_ok()));
    let uncovered: Vec<SwingSet> = i.iter().filter(|x| !j.iter().any(|y| commutes_predicate(x, y))).cloned().collect();
    (uncovered.is_empty(), uncovered)
}

pub fn standard_generators(n: usize) -> Vec<SwingSet> {
    pairs(n).map(|(a, b)| SwingSet::pair(a, b).expect("a < b")).collect()
}

fn set(members: &[usize]) -> SwingSet {
    SwingSet::new(members.iter().copied()).expect("valid witness set")
}

fn all_but(n: usize, k: usize) -> SwingSet {
    SwingSet::all_but(n, k).expect("n >= 4")
}

/// Standard generators with `removed` replaced by the targets of the
/// triple factorizations `S_{a b c} = S_ab S_ac S_bc`.
fn modified(n: usize, triples: &[[usize; 3]; 2], removed: [(usize, usize); 2]) -> (Vec<SwingSet>, Vec<Factorization>) {
    let mut i: Vec<SwingSet> =
        standard_generators(n).into_iter().filter(|s| !removed.iter().any(|&(a, b)| s == &set(&[a, b]))).collect();
    let mut facts = Vec::new();
    for (t, r) in triples.iter().zip(removed) {
        let [a, b, c] = *t;
        let target = set(t);
        i.push(target.clone());
        facts.push(Factorization {
            removed: set(&[r.0, r.1]),
            target,
            factors: vec![set(&[a, b]), set(&[a, c]), set(&[b, c])],
        });
    }
    (i, facts)
}

/// Instantiate the witness of a `Sigma^1` certificate for `chi`.
pub fn build_witness(cert: &Certificate, chi: &Character) -> Result<WitnessPackage> {
    recheck(chi, cert).map_err(Error::CertificateMismatch)?;
    let n = chi.n();
    let (j, i, factorizations) = match cert {
        Certificate::Circle { .. } => {
            return Err(Error::CertificateMismatch("circle certificates have no witness".into()));
        }
        Certificate::ZeroSum { .. } => (vec![SwingSet::full(n)?], standard_generators(n), vec![]),
        Certificate::DisjointTriple { .. } => {
            (vec![set(&[1, 2]), set(&[3, 4]), set(&[5, 6])], standard_generators(n), vec![])
        }
        Certificate::DisjointPair { .. } => {
            let (i, f) = modified(n, &[[1, 4, 5], [2, 4, 5]], [(1, 4), (2, 4)]);
            (vec![set(&[1, 2]), set(&[3, 4]), set(&[4, 5])], i, f)
        }
        Certificate::Star { .. } => {
            let j = vec![set(&[1, 4]), set(&[2, 4]), set(&[3, 4]), all_but(n, 1), all_but(n, 2), all_but(n, 3)];
            (j, standard_generators(n), vec![])
        }
        Certificate::DisjointLeaves { .. } => {
            let j = vec![set(&[1, 2]), set(&[3, 4]), set(&[1, 2, 3]), all_but(n, 1), all_but(n, 3)];
            (j, standard_generators(n), vec![])
        }
        Certificate::Triangle { .. } => {
            let (i, f) = modified(n, &[[1, 3, 4], [2, 3, 4]], [(1, 4), (2, 4)]);
            (vec![set(&[1, 2]), set(&[1, 2, 3]), set(&[3, 4])], i, f)
        }
    };
    let permutation = cert.permutation().cloned().unwrap_or_else(|| Permutation::identity(n));
    let normal = chi.permute(&permutation)?;
    let survival = j.iter().map(|s| normal.swing_value(s)).collect::<Result<Vec<_>>>()?;
    Ok(WitnessPackage { lemma: cert.kind(), n, permutation, j, i, factorizations, survival })
}

fn indicator(s: &SwingSet, n: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); pair_count(n)];
    for (a, b) in s.pairs() {
        v[pair_index(a, b, n)] = Rat::one();
    }
    v
}

/// Rank over `Q` by Gaussian elimination.
fn rank(mut rows: Vec<Vec<Rat>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k == r || row[c].is_zero() {
                continue;
            }
            let factor = &row[c] / &pivot_row[c];
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x = &*x - &(&factor * p);
            }
        }
        r += 1;
    }
    r
}

type WordKey = (SwingSet, Vec<SwingSet>, usize);

fn word_identity_holds(f: &Factorization, n: usize) -> Result<bool> {
    static CACHE: OnceLock<Mutex<HashMap<WordKey, bool>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (f.target.clone(), f.factors.clone(), n);
    if let Some(&v) = cache.lock().expect("cache lock").get(&key) {
        return Ok(v);
    }
    let v = factorization_holds(&f.target, &f.factors, n)?;
    cache.lock().expect("cache lock").insert(key, v);
    Ok(v)
}

/// Check the four conditions of the package against `chi`. Failures are
/// collected in the report rather than returned as errors.
pub fn verify_witness(pkg: &WitnessPackage, chi: &Character) -> WitnessReport {
    let mut report = WitnessReport::default();
    let n = chi.n();
    if pkg.n != n {
        report.failures.push(format!("package is for n={}, character has n={n}", pkg.n));
        return report;
    }
    if let Some(bad) = pkg.j.iter().chain(&pkg.i).find(|s| s.check_range(n).is_err()) {
        report.failures.push(format!("set {bad:?} out of range"));
        return report;
    }
    let normal = match chi.permute(&pkg.permutation) {
        Ok(c) => c,
        Err(e) => {
            report.failures.push(format!("permutation: {e}"));
            return report;
        }
    };

    let dead: Vec<&SwingSet> = pkg.j.iter().filter(|s| normal.swing_value(s).map_or(true, |v| v.is_zero())).collect();
    report.survives = !pkg.j.is_empty() && dead.is_empty();
    if !report.survives {
        report.failures.push(format!("J does not survive: {dead:?}"));
    }

    report.connected = commuting_graph(&pkg.j, n).is_connected();
    if !report.connected {
        report.failures.push("C(J) is not connected".into());
    }

    let (dom, uncovered) = dominates(&pkg.j, &pkg.i, n);
    report.dominates = dom;
    if !dom {
        report.failures.push(format!("J does not dominate I; uncovered {uncovered:?}"));
    }

    report.generates = check_generation(pkg, n, &mut report.failures);
    report
}

fn check_generation(pkg: &WitnessPackage, n: usize, failures: &mut Vec<String>) -> bool {
    let mut ok = true;
    let r = rank(pkg.i.iter().map(|s| indicator(s, n)).collect());
    if r != pair_count(n) {
        failures.push(format!("abelianized I has rank {r}, need {}", pair_count(n)));
        ok = false;
    }
    for g in standard_generators(n) {
        if pkg.i.contains(&g) {
            continue;
        }
        let recovered = pkg.factorizations.iter().any(|f| {
            f.removed == g
                && pkg.i.contains(&f.target)
                && f.factors.iter().filter(|x| **x == g).count() == 1
                && f.factors.iter().all(|x| *x == g || pkg.i.contains(x))
        });
        if !recovered {
            failures.push(format!("standard generator {g:?} is neither in I nor recovered"));
            ok = false;
        }
    }
    for f in &pkg.factorizations {
        let mut sum = vec![Rat::zero(); pair_count(n)];
        for x in &f.factors {
            for (acc, v) in sum.iter_mut().zip(indicator(x, n)) {
                *acc += &v;
            }
        }
        if sum != indicator(&f.target, n) {
            failures.push(format!("{:?} = {:?} fails in the abelianization", f.target, f.factors));
            ok = false;
            continue;
        }
        if n <= WORD_CHECK_MAX_N {
            match word_identity_holds(f, n) {
                Ok(true) => {}
                Ok(false) => {
                    failures.push(format!("{:?} = {:?} fails in P_{n}", f.target, f.factors));
                    ok = false;
                }
                Err(e) => {
                    failures.push(format!("word check: {e}"));
                    ok = false;
                }
            }
        }
    }
    ok
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::classify;

    fn s(v: &[usize]) -> SwingSet {
        set(v)
    }

    fn chi(n: usize, e: &[(usize, usize, i64)]) -> Character {
        Character::from_int_entries(n, e).unwrap()
    }

    fn package_for(c: &Character) -> WitnessPackage {
        let out = classify(c).unwrap();
        let pkg = build_witness(&out.certificate, c).unwrap();
        let report = verify_witness(&pkg, c);
        assert!(report.passed(), "{report:?}");
        pkg
    }

    #[test]
    fn commuting_graph_examples() {
        let g = commuting_graph(&[s(&[1, 2]), s(&[3, 4]), s(&[5, 6])], 6);
        assert_eq!(g.edges, vec![(0, 1), (0, 2), (1, 2)]);

        let g = commuting_graph(&[s(&[1, 2]), s(&[3, 4]), s(&[4, 5])], 5);
        assert_eq!(g.edges, vec![(0, 1), (0, 2)]);

        let j = [s(&[1, 4]), s(&[2, 4]), s(&[3, 4]), all_but(5, 1), all_but(5, 2), all_but(5, 3)];
        let g = commuting_graph(&j, 5);
        // hexagon S14 - S_A2 - S34 - S_A1 - S24 - S_A3 - S14
        for (a, b) in [(0, 4), (4, 2), (2, 3), (3, 1), (1, 5), (5, 0)] {
            assert!(g.has_edge(a, b), "{a}-{b}");
        }
        assert!(g.is_connected());

        assert!(!commuting_graph(&[s(&[1, 2]), s(&[2, 3])], 3).is_connected());
        assert!(!commuting_graph(&[], 3).is_connected());
    }

    #[test]
    fn domination_examples() {
        let j = [s(&[1, 2]), s(&[3, 4]), s(&[5, 6])];
        assert!(dominates(&j, &standard_generators(6), 6).0);

        let (i, _) = modified(5, &[[1, 4, 5], [2, 4, 5]], [(1, 4), (2, 4)]);
        assert!(dominates(&[s(&[1, 2]), s(&[3, 4]), s(&[4, 5])], &i, 5).0);

        assert_eq!(dominates(&[s(&[1, 2])], &[s(&[1, 3])], 3), (false, vec![s(&[1, 3])]));
    }

    #[test]
    fn zero_sum_package() {
        let c = chi(4, &[(1, 2, 3), (1, 3, 2), (1, 4, -4), (2, 3, -5), (2, 4, 0), (3, 4, 1)]);
        let pkg = package_for(&c);
        assert_eq!(pkg.lemma, "zero_sum");
        assert_eq!(pkg.j, vec![s(&[1, 2, 3, 4])]);
        assert_eq!(pkg.i, standard_generators(4));
        assert!(pkg.factorizations.is_empty());
    }

    #[test]
    fn disjoint_leaves_values() {
        let pkg = package_for(&chi(4, &[(1, 2, 1), (3, 4, -1)]));
        assert_eq!(pkg.j, vec![s(&[1, 2]), s(&[3, 4]), s(&[1, 2, 3]), s(&[2, 3, 4]), s(&[1, 2, 4])]);
        let expect: Vec<Rat> = [1, -1, 1, -1, 1].into_iter().map(Rat::from_int).collect();
        assert_eq!(pkg.survival, expect);
    }

    #[test]
    fn triangle_package() {
        let c = chi(4, &[(1, 2, 1), (1, 3, 1), (2, 3, -3), (3, 4, 1)]);
        let pkg = package_for(&c);
        assert_eq!(pkg.j, vec![s(&[1, 2]), s(&[1, 2, 3]), s(&[3, 4])]);
        assert!(pkg.i.contains(&s(&[1, 3, 4])) && pkg.i.contains(&s(&[2, 3, 4])));
        assert!(!pkg.i.contains(&s(&[1, 4])) && !pkg.i.contains(&s(&[2, 4])));
        assert_eq!(pkg.factorizations[0].factors, vec![s(&[1, 3]), s(&[1, 4]), s(&[3, 4])]);
    }

    #[test]
    fn star_values_are_negated_spokes() {
        for n in [4, 5, 6] {
            let c = chi(n, &[(1, 4, 2), (2, 4, 1), (3, 4, -3)]);
            let pkg = package_for(&c);
            assert_eq!(pkg.lemma, "star");
            for k in 0..3 {
                assert_eq!(pkg.survival[k + 3], -pkg.survival[k].clone());
            }
        }
    }

    #[test]
    fn relabeled_lemmas_verify() {
        package_for(&chi(6, &[(2, 5, 1), (1, 6, 1), (3, 4, -2)]));
        package_for(&chi(5, &[(2, 5, 1), (1, 3, 1), (3, 4, -2)]));
        package_for(&chi(6, &[(2, 6, 1), (3, 6, 1), (5, 6, -2)]));
        // path 3-1-2-4 relabeled into disjoint leaves
        package_for(&chi(5, &[(1, 3, 1), (1, 2, -2), (2, 4, 1)]));
        // paw on {2,3,4,5}: triangle 345 plus pendant 23
        package_for(&chi(5, &[(3, 4, 1), (3, 5, 1), (4, 5, -3), (2, 3, 1)]));
    }

    #[test]
    fn survival_failure_reported() {
        let c = chi(3, &[(1, 2, 1), (2, 3, 1)]);
        let pkg = WitnessPackage {
            lemma: "zero_sum",
            n: 3,
            permutation: Permutation::identity(3),
            j: vec![s(&[1, 3])],
            i: standard_generators(3),
            factorizations: vec![],
            survival: vec![],
        };
        let report = verify_witness(&pkg, &c);
        assert!(!report.survives && !report.passed());
    }

    #[test]
    fn disconnected_j_reported() {
        let c = chi(3, &[(1, 2, 1), (2, 3, 1)]);
        let pkg = WitnessPackage {
            lemma: "zero_sum",
            n: 3,
            permutation: Permutation::identity(3),
            j: vec![s(&[1, 2]), s(&[2, 3])],
            i: vec![s(&[1, 2]), s(&[2, 3])],
            factorizations: vec![],
            survival: vec![],
        };
        let report = verify_witness(&pkg, &c);
        assert!(report.survives && !report.connected);
        // I misses S13, so generation fails as well
        assert!(!report.generates);
    }

    #[test]
    fn bad_factorization_reported() {
        let c = chi(5, &[(1, 2, 1), (3, 4, 1), (4, 5, -2)]);
        let mut pkg = package_for(&c);
        pkg.factorizations[0].factors.swap(0, 2);
        let report = verify_witness(&pkg, &c);
        // abelianization cannot see the order; the word check does
        assert!(!report.generates, "{report:?}");
    }

    #[test]
    fn circle_certificates_rejected() {
        let c = Character::from_ints(3, &[1, 1, -2]).unwrap();
        let out = classify(&c).unwrap();
        assert!(matches!(build_witness(&out.certificate, &c), Err(Error::CertificateMismatch(_))));
    }

    #[test]
    fn domination_is_monotone() {
        let i = standard_generators(5);
        let base = [s(&[1, 2])];
        let (_, before) = dominates(&base, &i, 5);
        let (_, after) = dominates(&[s(&[1, 2]), s(&[1, 3])], &i, 5);
        assert!(after.iter().all(|x| before.contains(x)));
        assert!(after.len() < before.len());
    }
}
