//! Algebraic invariants on random inputs.  The seed-level properties draw a
//! u64 from proptest and expand it with ChaCha, so a failure report names
//! the exact instance.

mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use clusterkit::io::{seed_from_json, seed_to_json};
use clusterkit::pointed::{freeze_element, to_pointed, DegreeSolver};
use clusterkit::quantize::{solve_lambda, CompatibilityProblem, LambdaSolution};
use clusterkit::word::{build_ddot_seed, CartanData, SignedWord};
use clusterkit::{ExpVec, PointedElement, SkewForm, TorusElement, VLaurent};

use common::*;

fn laurent() -> impl Strategy<Value = VLaurent> {
    prop::collection::vec((-4i64..=4, -9i64..=9), 0..5)
        .prop_map(|ts| ts.into_iter().fold(VLaurent::zero(), |a, (k, c)| &a + &VLaurent::term(c.into(), k)))
}

fn expvec(rank: i64) -> impl Strategy<Value = ExpVec> {
    prop::collection::vec(-2i64..=2, rank as usize)
        .prop_map(|xs| ExpVec::from_pairs(xs.into_iter().enumerate().map(|(i, x)| (i as i64 + 1, x))))
}

fn torus(rank: i64) -> impl Strategy<Value = TorusElement> {
    prop::collection::vec((expvec(rank), laurent()), 0..=6).prop_map(TorusElement::from_terms)
}

fn form(rank: i64) -> impl Strategy<Value = SkewForm> {
    prop::collection::vec(-3i64..=3, (rank * (rank - 1) / 2) as usize).prop_map(move |xs| {
        let mut f = SkewForm::new();
        let mut it = xs.into_iter();
        for i in 1..=rank {
            for j in i + 1..=rank {
                f.set(i, j, it.next().unwrap());
            }
        }
        f
    })
}

fn signed(letters: &[(i64, bool)]) -> Vec<i64> {
    letters.iter().map(|&(a, s)| if s { a } else { -a }).collect()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &VLaurent::one(), a);
    }

    #[test]
    fn bar_is_a_ring_involution(a in laurent(), b in laurent()) {
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
        prop_assert_eq!(a.bar().bar(), a);
    }

    #[test]
    fn kl_split_solves_its_equation(seed in any::<u64>()) {
        let d = random_antisymmetric(&mut rng(seed));
        prop_assert!(check_kl_split(&d).is_ok(), "{:?}", check_kl_split(&d));
    }

    #[test]
    fn kl_split_rejects_non_antisymmetric(a in laurent()) {
        prop_assume!(!a.is_bar_antisymmetric());
        prop_assert!(VLaurent::kl_split(&a).is_err());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn twisted_product_is_associative(f in form(4), a in torus(4), b in torus(4), c in torus(4)) {
        let f = Some(&f);
        prop_assert_eq!(a.mul(&b, f).mul(&c, f), a.mul(&b.mul(&c, f), f));
        prop_assert_eq!(a.mul(&(&b + &c), f), &a.mul(&b, f) + &a.mul(&c, f));
    }

    #[test]
    fn monomials_quasi_commute(f in form(5), m in expvec(5), n in expvec(5)) {
        let (xm, xn) = (TorusElement::monomial(m.clone()), TorusElement::monomial(n.clone()));
        let twist = 2 * f.pair(&m, &n);
        prop_assert_eq!(xm.mul(&xn, Some(&f)), xn.mul(&xm, Some(&f)).shift_v(twist));
    }

    #[test]
    fn exact_division_inverts_multiplication(f in form(3), a in torus(3), d in torus(3)) {
        prop_assume!(!d.is_zero());
        let prod = a.mul(&d, Some(&f));
        prop_assert_eq!(prod.exact_divide(&d, Some(&f)).unwrap(), a);
    }

    #[test]
    fn bar_reverses_twisted_products(f in form(3), m in expvec(3), n in expvec(3)) {
        let (xm, xn) = (TorusElement::monomial(m), TorusElement::monomial(n));
        let f = Some(&f);
        prop_assert_eq!(xm.mul(&xn, f).bar(), xn.bar().mul(&xm.bar(), f));
    }

    #[test]
    fn normalize_is_idempotent(f in form(4), m in expvec(4), n in expvec(4)) {
        // x^m * x^n is a v-power times x^{m+n}; normalizing strips it
        let z = TorusElement::monomial(m.clone()).mul(&TorusElement::monomial(n.clone()), Some(&f));
        let lead = &m + &n;
        let once = z.normalize(&lead).unwrap();
        prop_assert_eq!(&once, &TorusElement::monomial(lead.clone()));
        prop_assert_eq!(once.normalize(&lead).unwrap(), once.clone());
        prop_assert_eq!(once.bar().normalize(&lead).unwrap(), once.normalize(&lead).unwrap().bar());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn mutation_is_an_involution(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rank = rand::Rng::gen_range(&mut r, 1..=6);
        let frozen = rand::Rng::gen_range(&mut r, 0..=2);
        let s = random_seed(&mut r, rank, frozen, 2, 3);
        let k = rand::Rng::gen_range(&mut r, 1..=rank);
        let res = check_involution(&s, k, &mut r, rank <= 3);
        prop_assert!(res.is_ok(), "{:?}", res);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn mutation_preserves_compatibility(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rank = rand::Rng::gen_range(&mut r, 1..=4);
        let s = random_quantum(&mut r, rank, 2, 2);
        let seq = random_sequence(&mut r, rank, 3);
        let mut cur = s;
        for k in seq {
            let res = check_compatibility_preserved(&cur, k);
            prop_assert!(res.is_ok(), "{:?}", res);
            cur = cur.mutate(k).unwrap();
        }
        prop_assert!(check_involution(&cur, 1, &mut r, false).is_ok());
    }

    #[test]
    fn solved_quantizations_are_compatible(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random_principal(&mut r, 3, 2, 2);
        let deltas: std::collections::BTreeMap<i64, i64> = s.unfrozen().into_iter().map(|k| (k, 2 * s.d(k))).collect();
        match solve_lambda(&CompatibilityProblem::new(&s, deltas.clone())).unwrap() {
            LambdaSolution::Unique(q) => prop_assert_eq!(q.check_compatible().unwrap(), deltas),
            LambdaSolution::NotUnique(f) => {
                let c = f.denominator();
                let q = s.with_lambda(f.scaled_form(c)).unwrap();
                let scaled: std::collections::BTreeMap<i64, i64> = deltas.iter().map(|(&k, &x)| (k, c * x)).collect();
                prop_assert_eq!(q.check_compatible().unwrap(), scaled);
            }
            LambdaSolution::NoSolution(why) => prop_assert!(false, "principal seeds are quantizable: {}", why),
        }
    }

    #[test]
    fn seed_json_round_trips(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random_quantum(&mut r, 3, 2, 3);
        prop_assert_eq!(seed_from_json(&seed_to_json(&s)).unwrap(), s);
    }

    #[test]
    fn word_seeds_are_skew_symmetrizable(
        letters in prop::collection::vec((1i64..=4, prop::bool::ANY), 1..=12)
    ) {
        // Seed::new validates d_i b_ij = −d_j b_ji, so building is the check
        let word = SignedWord::new(1, signed(&letters)).unwrap();
        prop_assert!(build_ddot_seed(&word, &CartanData::type_a(4), &[1, 2, 3, 4]).is_ok());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn word_seeds_admit_a_compatible_lambda(
        letters in prop::collection::vec((1i64..=3, prop::bool::ANY), 1..=8)
    ) {
        let word = SignedWord::new(1, signed(&letters)).unwrap();
        let s = build_ddot_seed(&word, &CartanData::type_a(3), &[1, 2, 3]).unwrap();
        let deltas = s.unfrozen().into_iter().map(|k| (k, s.d(k))).collect();
        prop_assert!(clusterkit::quantize::solve_rational(&CompatibilityProblem::new(&s, deltas)).unwrap().is_some());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn laurent_phenomenon_positivity_and_degrees(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random_finite_type(&mut r);
        let len = rand::Rng::gen_range(&mut r, 1..=8);
        let seq = random_sequence(&mut r, 4, len);
        let res = check_laurent_chain(&s, &seq);
        prop_assert!(res.is_ok(), "{:?}", res);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn quantum_cluster_variables_are_pointed_at_their_degrees(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random_quantum(&mut r, 3, 1, 1);
        let seq = random_sequence(&mut r, 3, 5);
        let res = check_laurent_chain(&s, &seq);
        prop_assert!(res.is_ok(), "{:?}", res);
    }

    #[test]
    fn pointed_round_trip_and_multiplicative_freezing(
        a in prop::collection::vec((0i64..=2, 0i64..=2, -3i64..=3), 0..4),
        b in prop::collection::vec((0i64..=2, 0i64..=2, -3i64..=3), 0..4),
        ma in expvec(4),
        mb in expvec(4),
    ) {
        let s = rank_two(1);
        let solver = DegreeSolver::new(&s).unwrap();
        let build = |m: &ExpVec, terms: &[(i64, i64, i64)]| {
            let fpoly = terms
                .iter()
                .filter(|&&(p, q, _)| p + q > 0)
                .map(|&(p, q, c)| (ExpVec::from_pairs([(1, p), (2, q)]), VLaurent::v_pow(c)))
                .chain([(ExpVec::zero(), VLaurent::one())])
                .collect();
            PointedElement::new(m.clone(), fpoly).unwrap()
        };
        let (za, zb) = (build(&ma, &a), build(&mb, &b));
        prop_assert_eq!(&to_pointed(&za.expand(&s), &solver).unwrap(), &za);
        let frozen = BTreeSet::from([2]);
        let lhs = freeze_element(&za, &frozen).mul(&freeze_element(&zb, &frozen), &solver).unwrap();
        let rhs = freeze_element(&za.mul(&zb, &solver).unwrap(), &frozen);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn triangular_elements_are_stable_under_truncation(c in 0i64..=3, m in expvec(4)) {
        let s = rank_two(c);
        let fam = rank_two_family(&s);
        let res = check_truncation_stability(&fam, &m, 3);
        prop_assert!(res.is_ok(), "{:?}", res);
    }
}
