//! Random instances and checks shared by the property tests and the
//! acceptance harness.  Every check returns a description of the first
//! violation instead of panicking so the harness can count failures.
#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::Rng;

use clusterkit::pointed::{to_pointed, DegreeSolver};
use clusterkit::quantize::quantize_word_seed;
use clusterkit::seed::bi;
use clusterkit::triangular::{kl_correct, InitialFamily};
use clusterkit::word::variable_degree;
use clusterkit::{Cluster, ExpVec, Seed, VLaurent};

/// Unfrozen vertices `1..=rank`, frozen `rank+1..=rank+frozen`, symmetrizers
/// in `1..=dmax` (all 1 when `dmax = 1`).  `b_ij = s_ij d_j` for a random
/// skew-symmetric `s` with entries in `[−bound, bound]`, which is
/// skew-symmetrizable by construction.
pub fn random_seed(rng: &mut impl Rng, rank: i64, frozen: i64, bound: i64, dmax: i64) -> Seed {
    let n = rank + frozen;
    let d: BTreeMap<i64, i64> = (1..=n).map(|i| (i, rng.gen_range(1..=dmax))).collect();
    let mut entries = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if i > rank && j > rank {
                continue;
            }
            let s = rng.gen_range(-bound..=bound);
            entries.push(((i, j), bi(s * d[&j])));
            entries.push(((j, i), bi(-s * d[&i])));
        }
    }
    Seed::new(1..=n, rank + 1..=n, d, entries).unwrap()
}

/// A random exchange matrix on `1..=rank` with principal frozen vertices
/// `rank+1..=2 rank` (`b_{k+rank, k} = 1`), so `p*` is injective.
pub fn random_principal(rng: &mut impl Rng, rank: i64, bound: i64, dmax: i64) -> Seed {
    let core = random_seed(rng, rank, 0, bound, dmax);
    let mut d = core.symmetrizers().clone();
    let mut entries: Vec<_> = core.b_entries().collect();
    for k in 1..=rank {
        d.insert(k + rank, d[&k]);
        entries.push(((k + rank, k), bi(1)));
        entries.push(((k, k + rank), bi(-1)));
    }
    Seed::new(1..=2 * rank, rank + 1..=2 * rank, d, entries).unwrap()
}

/// A random rank-four seed of finite mutation type: a random orientation of
/// the A₄ path or the D₄ star with principal coefficients, moved around its
/// mutation class by a few random mutations.  Wild quivers are avoided on
/// purpose, their cluster variables outgrow any time budget within eight
/// mutations.
pub fn random_finite_type(rng: &mut impl Rng) -> Seed {
    let edges: [(i64, i64); 3] = if rng.gen_bool(0.5) { [(1, 2), (2, 3), (3, 4)] } else { [(1, 2), (1, 3), (1, 4)] };
    let mut entries = Vec::new();
    for (i, j) in edges {
        let s = if rng.gen_bool(0.5) { 1 } else { -1 };
        entries.push(((i, j), bi(s)));
        entries.push(((j, i), bi(-s)));
    }
    for k in 1..=4 {
        entries.push(((k + 4, k), bi(1)));
        entries.push(((k, k + 4), bi(-1)));
    }
    let s = Seed::new(1..=8, 5..=8, (1..=8).map(|i| (i, 1)).collect(), entries).unwrap();
    let len = rng.gen_range(0..=4);
    s.mutate_seq(&random_sequence(rng, 4, len)).unwrap()
}

pub fn random_quantum(rng: &mut impl Rng, rank: i64, bound: i64, dmax: i64) -> Seed {
    quantize_word_seed(&random_principal(rng, rank, bound, dmax)).unwrap().0
}

/// A mutation sequence on `1..=rank` with no immediate repetition (except
/// in rank one, where there is no other choice).
pub fn random_sequence(rng: &mut impl Rng, rank: i64, len: usize) -> Vec<i64> {
    let mut seq: Vec<i64> = Vec::with_capacity(len);
    while seq.len() < len {
        let k = rng.gen_range(1..=rank);
        if rank == 1 || seq.last() != Some(&k) {
            seq.push(k);
        }
    }
    seq
}

/// A random bar-antisymmetric Laurent polynomial.
pub fn random_antisymmetric(rng: &mut impl Rng) -> VLaurent {
    let mut d = VLaurent::zero();
    for _ in 0..rng.gen_range(0..=5) {
        let k = rng.gen_range(1..=8);
        let c = rng.gen_range(-20..=20);
        d = &d + &(&VLaurent::term(c.into(), k) - &VLaurent::term(c.into(), -k));
    }
    d
}

/// `μ_k μ_k` is the identity on the exchange matrix, Λ, random tropical
/// points and (when `with_variables`) the cluster variables.
pub fn check_involution(seed: &Seed, k: i64, rng: &mut impl Rng, with_variables: bool) -> Result<(), String> {
    let once = seed.mutate(k).map_err(|e| e.to_string())?;
    let twice = once.mutate(k).map_err(|e| e.to_string())?;
    if &twice != seed {
        return Err(format!("μ_{k}μ_{k} changed the seed"));
    }
    for _ in 0..3 {
        let m = ExpVec::from_pairs(seed.vertices().iter().map(|&i| (i, rng.gen_range(-4..=4))));
        let back = once.tropical_mutate(&seed.tropical_mutate(&m, k).unwrap(), k).unwrap();
        if back != m {
            return Err(format!("tropical μ_{k}μ_{k} sends {m} to {back}"));
        }
    }
    if with_variables {
        let c = Cluster::initial(seed);
        let c2 = c.mutate(k).and_then(|c| c.mutate(k)).map_err(|e| e.to_string())?;
        if c2.vars != c.vars {
            return Err(format!("μ_{k}μ_{k} changed the cluster variables"));
        }
    }
    Ok(())
}

/// `check_compatible` gives the same δ map before and after `μ_k`.
pub fn check_compatibility_preserved(seed: &Seed, k: i64) -> Result<(), String> {
    let before = seed.check_compatible().map_err(|e| e.to_string())?;
    let after = seed.mutate(k).and_then(|s| s.check_compatible()).map_err(|e| format!("after μ_{k}: {e}"))?;
    if before != after {
        return Err(format!("δ changed under μ_{k}: {before:?} → {after:?}"));
    }
    Ok(())
}

/// Along `seq`, every new cluster variable written in the initial chart is
/// a Laurent polynomial (the exact division succeeds), has nonnegative
/// coefficients in classical mode, and is pointed at the tropically
/// transported degree.
pub fn check_laurent_chain(seed: &Seed, seq: &[i64]) -> Result<(), String> {
    let solver = DegreeSolver::new(seed).map_err(|e| e.to_string())?;
    let mut cluster = Cluster::initial(seed);
    for (t, &k) in seq.iter().enumerate() {
        cluster = cluster.mutate(k).map_err(|e| format!("step {t}: {e}"))?;
        let z = &cluster.vars[&k];
        if !seed.is_quantum() && !z.has_nonnegative_coefficients() {
            return Err(format!("negative coefficient in x_{k} after {:?}", &seq[..=t]));
        }
        let pointed = to_pointed(z, &solver).map_err(|e| format!("x_{k} after {:?}: {e}", &seq[..=t]))?;
        let expected = variable_degree(seed, &seq[..=t], k).map_err(|e| e.to_string())?;
        if pointed.degree() != &expected {
            return Err(format!(
                "x_{k} after {:?}: degree {} but transport gives {expected}",
                &seq[..=t],
                pointed.degree()
            ));
        }
    }
    Ok(())
}

/// `kl_split(d)` lies in `v⁻¹Z[v⁻¹]` and solves `bar(e) − e = d`.
pub fn check_kl_split(d: &VLaurent) -> Result<(), String> {
    let e = VLaurent::kl_split(d).map_err(|e| e.to_string())?;
    if !e.in_negative_part() {
        return Err(format!("kl_split({d}) = {e} has a nonnegative power"));
    }
    if &(&e.bar() - &e) != d {
        return Err(format!("bar(e) − e ≠ d for d = {d}, e = {e}"));
    }
    Ok(())
}

/// The correction at order `n + 2`, cut back to order `n`, is the
/// correction at order `n`.
pub fn check_truncation_stability(family: &InitialFamily, m: &ExpVec, n: i64) -> Result<(), String> {
    let low = kl_correct(m, family, n).map_err(|e| e.to_string())?;
    let high = kl_correct(m, family, n + 2).map_err(|e| e.to_string())?;
    if high.truncate(n) != low {
        return Err(format!(
            "degree {m}: order {n} gives {low}, order {} cut to {n} gives {}",
            n + 2,
            high.truncate(n)
        ));
    }
    if !high.is_bar_invariant() {
        return Err(format!("degree {m}: not bar-invariant at order {}", n + 2));
    }
    Ok(())
}

/// Principal coefficients over `b_12 = 1, b_21 = −c` (zero for `c = 0`), quantized.
pub fn rank_two(c: i64) -> Seed {
    let b12 = if c == 0 { 0 } else { 1 };
    let d1 = c.max(1);
    let entries =
        [((1, 2), bi(b12)), ((2, 1), bi(-c)), ((3, 1), bi(1)), ((1, 3), bi(-1)), ((4, 2), bi(1)), ((2, 4), bi(-1))];
    let s = Seed::new([1, 2, 3, 4], [3, 4], BTreeMap::from([(1, d1), (2, 1), (3, d1), (4, 1)]), entries).unwrap();
    quantize_word_seed(&s).unwrap().0
}

/// The shortest alternating green-to-red sequence of a rank-two seed.
pub fn rank_two_family(seed: &Seed) -> InitialFamily {
    (1..=8)
        .flat_map(|len| {
            [1, 2].map(|first| (0..len).map(|t| if t % 2 == 0 { first } else { 3 - first }).collect::<Vec<i64>>())
        })
        .find_map(|seq| InitialFamily::from_sequence(seed, &seq).ok())
        .expect("a green-to-red alternating sequence")
}
