//! Finite-type rank-2 ground truth: every cluster monomial is a triangular
//! basis element, and cluster monomials come straight from mutation.

mod common;

use std::collections::BTreeMap;

use clusterkit::pointed::{to_pointed, DegreeSolver};
use clusterkit::triangular::{check_triangularity, kl_correct};
use clusterkit::{Cluster, ExpVec, PointedElement, Seed, VLaurent};
use common::{rank_two, rank_two_family};

/// All cluster monomials of total unfrozen degree at most `max`, keyed by degree.
fn cluster_monomials(seed: &Seed, max: i64) -> BTreeMap<ExpVec, PointedElement> {
    let solver = DegreeSolver::new(seed).unwrap();
    let mut out = BTreeMap::new();
    let mut cluster = Cluster::initial(seed);
    for t in 0..10 {
        for p in 0..=max {
            for q in 0..=(max - p) {
                let z = cluster.monomial(&ExpVec::from_pairs([(1, p), (2, q)])).unwrap();
                let pointed = to_pointed(&z, &solver).unwrap();
                out.insert(pointed.degree().clone(), pointed);
            }
        }
        cluster = cluster.mutate(if t % 2 == 0 { 1 } else { 2 }).unwrap();
    }
    out
}

fn oracle(c: i64, expected_clusters: usize) {
    let seed = rank_two(c);
    let fam = rank_two_family(&seed);
    let monomials = cluster_monomials(&seed, 3);
    // per cluster: three mixed monomials, and three powers of each of the
    // variables, each variable shared by two clusters
    assert_eq!(monomials.len(), 1 + 6 * expected_clusters, "c = {c}");
    for (m, z) in &monomials {
        let l = kl_correct(m, &fam, 20).unwrap();
        assert_eq!(&l, z, "c = {c}, degree {m}");
    }
}

#[test]
fn a1_times_a1() {
    oracle(0, 4);
}

#[test]
fn a2() {
    oracle(1, 5);
}

#[test]
fn b2() {
    oracle(2, 6);
}

#[test]
fn g2() {
    oracle(3, 8);
}

#[test]
fn triangularity_on_a2() {
    let seed = rank_two(1);
    let fam = rank_two_family(&seed);
    let pairs: Vec<(i64, ExpVec)> =
        cluster_monomials(&seed, 2).into_keys().flat_map(|m| (1..=4).map(move |i| (i, m.clone()))).collect();
    let report = check_triangularity(|m| kl_correct(m, &fam, 12), &seed, &pairs, 12).unwrap();
    assert!(report.passed(), "{report:?}");
    assert_eq!(report.checked, pairs.len());
}

#[test]
fn triangularity_of_one() {
    let seed = rank_two(1);
    let fam = rank_two_family(&seed);
    let report = check_triangularity(|m| kl_correct(m, &fam, 6), &seed, &[(3, ExpVec::zero())], 6).unwrap();
    assert!(report.passed());
}

#[test]
fn perturbed_family_is_caught() {
    let seed = rank_two(1);
    let fam = rank_two_family(&seed);
    let bad = ExpVec::unit(1);
    let below = &bad + &seed.p_star(&ExpVec::unit(2));
    let perturbed = |m: &ExpVec| {
        let l = kl_correct(m, &fam, 8)?;
        if *m != bad {
            return Ok(l);
        }
        // L_{f_1} + 1 · L_{f_1 + B̃e_2}
        let extra = kl_correct(&below, &fam, 8)?;
        let mut f = l.fpoly().clone();
        for (n, c) in extra.fpoly() {
            *f.entry(n + &ExpVec::unit(2)).or_insert_with(VLaurent::zero) += c;
        }
        PointedElement::new(m.clone(), f)
    };
    let report = check_triangularity(perturbed, &seed, &[(1, ExpVec::zero()), (2, ExpVec::zero())], 8).unwrap();
    let failure = report.failure.expect("perturbation detected");
    assert_eq!((failure.vertex, failure.degree), (1, ExpVec::zero()));
}
