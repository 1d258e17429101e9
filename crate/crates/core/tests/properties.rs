use proptest::prelude::*;

use pbsigma::character::pair_count;
use pbsigma::circles::{containing_circles, enumerate_circles, locate_circle, on_p4_circle, sample_circle, CircleId};
use pbsigma::classifier::{classify, recheck, Certificate, Verdict};
use pbsigma::sample::{random_character, rng};
use pbsigma::witness::{build_witness, verify_witness};
use pbsigma::{pullback_phi, pullback_rho, Character, Permutation, Rat, SwingSet};

fn rat() -> impl Strategy<Value = Rat> {
    (-4i64..=4, 1i64..=4).prop_map(|(p, q)| Rat::new(p, q))
}

fn character(n: usize) -> impl Strategy<Value = Character> {
    prop::collection::vec(rat(), pair_count(n)).prop_map(move |w| Character::new(n, w).unwrap())
}

/// Mixed-family characters, mostly with zero total.
fn mixed() -> impl Strategy<Value = Character> {
    (3usize..=6, any::<u64>()).prop_map(|(n, seed)| random_character(&mut rng(seed), n))
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Permutation::new(v).unwrap())
}

fn subset(n: usize) -> impl Strategy<Value = SwingSet> {
    prop::sample::subsequence((1..=n).collect::<Vec<_>>(), 2..=n).prop_map(|v| SwingSet::new(v).unwrap())
}

fn positive() -> impl Strategy<Value = Rat> {
    (1i64..=9, 1i64..=9).prop_map(|(p, q)| Rat::new(p, q))
}

proptest! {
    #[test]
    fn swing_value_is_additive((a, b, s) in (character(5), character(5), subset(5))) {
        let sum = a.add(&b).unwrap();
        prop_assert_eq!(sum.swing_value(&s).unwrap(), a.swing_value(&s).unwrap() + b.swing_value(&s).unwrap());
    }

    #[test]
    fn normalize_is_idempotent_and_dilation_blind((chi, q) in (character(4), positive())) {
        prop_assume!(!chi.is_zero());
        let p = chi.normalize().unwrap();
        prop_assert_eq!(p.character().normalize().unwrap(), p.clone());
        prop_assert_eq!(chi.scale(&q).normalize().unwrap(), p.clone());
        prop_assert_ne!(chi.scale(&Rat::from_int(-1)).normalize().unwrap(), p);
    }

    #[test]
    fn permute_is_a_group_action((chi, s, t) in (character(5), permutation(5), permutation(5))) {
        let twice = chi.permute(&s).unwrap().permute(&t).unwrap();
        prop_assert_eq!(twice, chi.permute(&t.after(&s)).unwrap());
        prop_assert_eq!(chi.permute(&s).unwrap().permute(&s.inverse()).unwrap(), chi);
    }

    #[test]
    fn permute_moves_swing_values((chi, p, s) in (character(5), permutation(5), subset(5))) {
        prop_assert_eq!(chi.permute(&p).unwrap().swing_value(&s.relabel(&p)).unwrap(), chi.swing_value(&s).unwrap());
    }

    #[test]
    fn phi_transports_weights((psi, a) in (character(3), prop::sample::subsequence(vec![1usize, 2, 3, 4, 5, 6], 3))) {
        let a = SwingSet::new(a).unwrap();
        let chi = pullback_phi(&psi, &a, 6).unwrap();
        let m = a.members();
        for (i, j, w) in psi.entries() {
            prop_assert_eq!(chi.weight(m[i - 1], m[j - 1]), w);
        }
        prop_assert_eq!(chi.delta_value(), psi.delta_value());
    }

    #[test]
    fn rho_lands_on_p4_circle((a, b) in (rat(), rat())) {
        prop_assume!(!(a.is_zero() && b.is_zero()));
        let c = -(&a + &b);
        let psi = Character::new(3, vec![a, b, c]).unwrap();
        let chi = pullback_rho(&psi).unwrap();
        prop_assert!(on_p4_circle(&chi, &CircleId::p4(1, 2, 3, 4).unwrap()).unwrap());
    }

    #[test]
    fn circle_samples_lie_on_exactly_one_circle((n, k, t1, t2) in (3usize..=6, any::<prop::sample::Index>(), rat(), rat())) {
        prop_assume!(!(t1.is_zero() && t2.is_zero()));
        let circles = enumerate_circles(n);
        let id = k.get(&circles).clone();
        let chi = sample_circle(&id, (&t1, &t2), n).unwrap();
        prop_assert_eq!(containing_circles(&chi).unwrap(), vec![id.clone()]);
        let c = classify(&chi).unwrap();
        prop_assert_eq!(c.certificate, Certificate::Circle { id });
    }

    #[test]
    fn verdicts_are_equivariant((chi, q, seed) in (mixed(), positive(), any::<u64>())) {
        use rand::seq::SliceRandom;
        let n = chi.n();
        let mut images: Vec<usize> = (1..=n).collect();
        images.shuffle(&mut rng(seed));
        let p = Permutation::new(images).unwrap();
        let (a, b) = (classify(&chi).unwrap(), classify(&chi.permute(&p).unwrap().scale(&q)).unwrap());
        prop_assert_eq!(a.verdict, b.verdict);
        prop_assert_eq!(a.certificate.kind(), b.certificate.kind());
        if let (Certificate::Circle { id: x }, Certificate::Circle { id: y }) = (&a.certificate, &b.certificate) {
            prop_assert_eq!(&x.support().relabel(&p), y.support());
        }
    }

    #[test]
    fn classification_is_sound(chi in mixed()) {
        let c = classify(&chi).unwrap();
        prop_assert!(recheck(&chi, &c.certificate).is_ok());
        prop_assert_eq!(c.verdict == Verdict::InComplement, locate_circle(&chi).unwrap().is_some());
        if c.verdict == Verdict::InSigma1 {
            let pkg = build_witness(&c.certificate, &chi).unwrap();
            let report = verify_witness(&pkg, &chi);
            prop_assert!(report.passed(), "{:?}", report);
        }
    }

    #[test]
    fn character_json_round_trips(chi in character(5)) {
        let text = serde_json::to_string(&chi).unwrap();
        let back: Character = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, chi);
    }
}
