//! Generalized minors of `SL_{n+1}` as a classical oracle for word seeds.
//!
//! Weights live in the simple-root basis with rational coordinates; the
//! symmetric form is `(α_a, α_b) = D_a C_ab`.  In type A a minor
//! `Δ_{uϖ_i, wϖ_i}` is the determinant of the submatrix with rows `u[1,i]`
//! and columns `w[1,i]`, `s_a` acting as the transposition `(a, a+1)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, Error, Result};
use crate::laurent::VLaurent;
use crate::linalg::{bareiss_det, q, QMatrix, Q};
use crate::seed::Seed;
use crate::torus::{ExpVec, SkewForm, TorusElement};
use crate::word::{build_ddot_seed, CartanData, FlipRelation, SignedWord};

/// A weight `Σ c_a α_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weight(pub BTreeMap<i64, Q>);

impl Weight {
    pub fn fundamental(cartan: &CartanData, a: i64) -> Result<Weight> {
        let n = cartan.rank();
        let rows: Vec<Vec<Q>> = cartan.rows().iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        let inv = QMatrix::from_rows(&rows)
            .inverse()
            .ok_or_else(|| Error::Domain("Cartan matrix is singular (not of finite type)".into()))?;
        let col = cartan.index().iter().position(|&b| b == a).ok_or_else(|| Error::Domain(format!("no letter {a}")))?;
        Ok(Weight((0..n).map(|r| (cartan.index()[r], inv[(r, col)].clone())).collect()))
    }

    /// `⟨α_a^∨, β⟩ = Σ_c C_ac β_c`.
    pub fn coroot_pairing(&self, cartan: &CartanData, a: i64) -> Q {
        self.0.iter().fold(Q::zero(), |acc, (&c, x)| acc + q(cartan.c(a, c)) * x)
    }

    /// `s_a β = β − ⟨α_a^∨, β⟩ α_a`.
    pub fn reflect(&self, cartan: &CartanData, a: i64) -> Weight {
        let t = self.coroot_pairing(cartan, a);
        let mut out = self.0.clone();
        *out.entry(a).or_insert_with(Q::zero) -= t;
        Weight(out)
    }

    pub fn pairing(&self, other: &Weight, cartan: &CartanData) -> Q {
        let mut total = Q::zero();
        for (&a, x) in &self.0 {
            for (&b, y) in &other.0 {
                total += x * y * q(cartan.d(a) * cartan.c(a, b));
            }
        }
        total
    }

    /// `s_{a_1} ⋯ s_{a_r} β` for `letters = [a_1, …, a_r]`.
    pub fn act(&self, cartan: &CartanData, letters: &[i64]) -> Weight {
        letters.iter().rev().fold(self.clone(), |w, &a| w.reflect(cartan, a))
    }
}

/// The Weyl group elements of the theorem attached to vertex `k`:
/// `(u_{≤k}, w^{-1} w_{≤k})` as letter sequences, identity prefixes for the
/// Coxeter vertices before the word.
fn prefixes(word: &SignedWord, k: i64) -> (Vec<i64>, Vec<i64>) {
    let upto: Vec<i64> = if k < word.start() { Vec::new() } else { (word.start()..=k).collect() };
    let u: Vec<i64> = upto.iter().filter(|&&j| word.sign(j) < 0).map(|&j| word.letter(j)).collect();
    // w^{-1} w_{≤k} = (w_{>k})^{-1}: the positive letters after k, reversed
    let after = if k < word.start() { word.start() } else { k + 1 };
    let mut rest: Vec<i64> = (after..=word.end()).filter(|&j| word.sign(j) > 0).map(|j| word.letter(j)).collect();
    rest.reverse();
    (u, rest)
}

fn vertex_letter(word: &SignedWord, coxeter: &[i64], k: i64) -> i64 {
    if k < word.start() {
        coxeter[(k - word.start() + coxeter.len() as i64) as usize]
    } else {
        word.letter(k)
    }
}

/// `(γ_k, δ_k)` for every vertex of `s̈(i)`.
pub fn minor_weights(
    word: &SignedWord,
    cartan: &CartanData,
    coxeter: &[i64],
) -> Result<BTreeMap<i64, (Weight, Weight)>> {
    let mut out = BTreeMap::new();
    for k in word.start() - coxeter.len() as i64..=word.end() {
        let a = vertex_letter(word, coxeter, k);
        let fw = Weight::fundamental(cartan, a)?;
        let (u, w) = prefixes(word, k);
        out.insert(k, (fw.act(cartan, &u), fw.act(cartan, &w)));
    }
    Ok(out)
}

/// `s̈(i)^op` with `Λ_kj = (γ_k, γ_j) − (δ_k, δ_j)` for `k > j`.
pub fn lambda_from_weights(word: &SignedWord, cartan: &CartanData) -> Result<Seed> {
    let coxeter = cartan.index().to_vec();
    let seed = build_ddot_seed(word, cartan, &coxeter)?.opposite();
    let weights = minor_weights(word, cartan, &coxeter)?;
    let mut l = SkewForm::new();
    for (&k, (gk, dk)) in &weights {
        for (&j, (gj, dj)) in weights.range(..k) {
            let x = gk.pairing(gj, cartan) - dk.pairing(dj, cartan);
            if !x.is_integer() {
                return domain(format!("Λ_({k},{j}) = {x} is not an integer"));
            }
            l.set(k, j, x.to_integer().to_i64().unwrap());
        }
    }
    seed.with_lambda(l)
}

/// `Δ_{rows, cols}` with 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MinorLabel {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl fmt::Display for MinorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cat = |v: &[usize]| v.iter().map(usize::to_string).collect::<String>();
        write!(f, "Δ_{{{},{}}}", cat(&self.rows), cat(&self.cols))
    }
}

fn permute(letters: &[i64], set: BTreeSet<usize>) -> Vec<usize> {
    // apply the rightmost transposition first
    let mut cur = set;
    for &a in letters.iter().rev() {
        let a = a as usize;
        cur = cur
            .into_iter()
            .map(|x| {
                if x == a {
                    a + 1
                } else if x == a + 1 {
                    a
                } else {
                    x
                }
            })
            .collect();
    }
    cur.into_iter().collect()
}

fn require_type_a(cartan: &CartanData) -> Result<usize> {
    let n = cartan.rank();
    if *cartan != CartanData::type_a(n) {
        return domain("minor labels are only implemented in type A");
    }
    Ok(n)
}

/// The label of `x_k` for every vertex of `s̈(i)` (Coxeter word `1, …, n`).
pub fn minor_labels(word: &SignedWord, cartan: &CartanData) -> Result<BTreeMap<i64, MinorLabel>> {
    let n = require_type_a(cartan)?;
    word.check_letters(cartan)?;
    let coxeter = cartan.index().to_vec();
    let mut out = BTreeMap::new();
    for k in word.start() - n as i64..=word.end() {
        let i = vertex_letter(word, &coxeter, k) as usize;
        let (u, w) = prefixes(word, k);
        let base: BTreeSet<usize> = (1..=i).collect();
        out.insert(k, MinorLabel { rows: permute(&u, base.clone()), cols: permute(&w, base) });
    }
    Ok(out)
}

pub fn minor_label(word: &SignedWord, cartan: &CartanData, k: i64) -> Result<MinorLabel> {
    minor_labels(word, cartan)?.remove(&k).ok_or_else(|| Error::Domain(format!("{k} is not a vertex")))
}

pub fn evaluate_minor(label: &MinorLabel, g: &[Vec<BigInt>]) -> BigInt {
    let sub: Vec<Vec<BigInt>> =
        label.rows.iter().map(|&r| label.cols.iter().map(|&c| g[r - 1][c - 1].clone()).collect()).collect();
    bareiss_det(&sub)
}

/// Variable index of the matrix entry `g_rc` in symbolic minors.
pub fn entry_var(r: usize, c: usize) -> i64 {
    (r * 64 + c) as i64
}

/// The minor as a polynomial in the entries `g_rc` (Leibniz expansion).
pub fn symbolic_minor(label: &MinorLabel) -> TorusElement {
    let n = label.rows.len();
    let mut out = TorusElement::zero();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let inversions =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
        let m = ExpVec::from_pairs((0..n).map(|i| (entry_var(label.rows[i], label.cols[perm[i]]), 1)));
        out.add_term(m, VLaurent::from_i64(if inversions % 2 == 0 { 1 } else { -1 }));
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

pub fn identity(size: usize) -> Vec<Vec<BigInt>> {
    (0..size).map(|i| (0..size).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

/// A random determinant-one integer matrix: a product of elementary
/// unipotent matrices with off-diagonal entries in `[-3, 3]`.
pub fn random_sl(size: usize, rng: &mut impl Rng) -> Vec<Vec<BigInt>> {
    let mut g = identity(size);
    if size < 2 {
        return g;
    }
    for _ in 0..2 * size * size {
        let i = rng.gen_range(0..size);
        let j = (i + rng.gen_range(1..size)) % size;
        let t = BigInt::from(rng.gen_range(-3i64..=3));
        // row_i += t * row_j
        let row_j = g[j].clone();
        for (x, y) in g[i].iter_mut().zip(row_j) {
            *x += &t * y;
        }
    }
    g
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Outcome of the exchange-relation check at one vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeReport {
    pub vertex: i64,
    pub samples: usize,
    /// `P + Q` is divisible by `x_k` as a polynomial in the entries.
    pub divisible: bool,
    /// The flipped word supplied a label for `x'_k` and it matched.
    pub flip_checked: bool,
    pub counterexample: Option<String>,
}

impl ExchangeReport {
    pub fn passed(&self) -> bool {
        self.divisible && self.counterexample.is_none()
    }
}

/// `P + Q` lifted to `GL`: the two monomials in the minors can differ in
/// degree by a multiple of the matrix size, and the lighter one is padded with
/// powers of the full determinant (which is 1 on `SL`).
fn binomial(seed: &Seed, k: i64, labels: &BTreeMap<i64, MinorLabel>, size: usize) -> Option<TorusElement> {
    let mut p = TorusElement::one();
    let mut n = TorusElement::one();
    let (mut dp, mut dn) = (0usize, 0usize);
    for &i in seed.vertices() {
        let b = seed.b_int(i, k);
        let z = symbolic_minor(&labels[&i]);
        if b > 0 {
            p = p.mul(&z.pow(b as u32, None), None);
            dp += b as usize * labels[&i].rows.len();
        } else if b < 0 {
            n = n.mul(&z.pow((-b) as u32, None), None);
            dn += (-b) as usize * labels[&i].rows.len();
        }
    }
    let gap = dp.abs_diff(dn);
    if gap % size != 0 {
        return None;
    }
    let full: Vec<usize> = (1..=size).collect();
    let det = symbolic_minor(&MinorLabel { rows: full.clone(), cols: full }).pow((gap / size) as u32, None);
    if dp < dn {
        p = p.mul(&det, None);
    } else {
        n = n.mul(&det, None);
    }
    Some(&p + &n)
}

/// Checks `x_k · x'_k = P + Q` for the classical seed whose vertices carry
/// the given minor labels: symbolic divisibility of `P + Q` by `Δ_k`, then
/// exact evaluation of `Δ_k · quotient = P + Q` on random matrices, and,
/// where a flip of the word mutates at `k`, equality of the quotient with
/// the flipped word's minor.
pub fn verify_exchange(
    seed: &Seed,
    labels: &BTreeMap<i64, MinorLabel>,
    k: i64,
    flipped: Option<&MinorLabel>,
    samples: usize,
    rng: &mut impl Rng,
) -> Result<ExchangeReport> {
    if seed.is_frozen(k) || !seed.contains(k) {
        return domain(format!("{k} is not an unfrozen vertex"));
    }
    let size = labels.values().flat_map(|l| l.rows.iter().chain(&l.cols)).copied().max().unwrap_or(1);
    let mut report = ExchangeReport { vertex: k, samples, divisible: false, flip_checked: false, counterexample: None };
    let Some(rhs) = binomial(seed, k, labels, size) else { return Ok(report) };
    let quotient = match rhs.exact_divide(&symbolic_minor(&labels[&k]), None) {
        Ok(qt) if qt.terms().all(|(m, _)| m.is_nonnegative()) => qt,
        _ => return Ok(report),
    };
    report.divisible = true;
    let at = |z: &TorusElement, g: &[Vec<BigInt>]| -> BigInt {
        z.evaluate(|v| g[(v / 64) as usize - 1][(v % 64) as usize - 1].clone()).unwrap().to_integer()
    };
    for s in 0..samples {
        // the identity first, then random samples
        let g = if s == 0 { identity(size) } else { random_sl(size, rng) };
        let xk = evaluate_minor(&labels[&k], &g);
        let values: BTreeMap<i64, BigInt> = labels.iter().map(|(&i, l)| (i, evaluate_minor(l, &g))).collect();
        let lhs = &xk * at(&quotient, &g);
        let mut p = BigInt::one();
        let mut n = BigInt::one();
        for &i in seed.vertices() {
            let b = seed.b_int(i, k);
            if b > 0 {
                p *= num_traits::pow(values[&i].clone(), b as usize);
            } else if b < 0 {
                n *= num_traits::pow(values[&i].clone(), (-b) as usize);
            }
        }
        if lhs != &p + &n {
            report.counterexample = Some(format!("sample {s}: {lhs} != {}", p + n));
            return Ok(report);
        }
        if let Some(fl) = flipped {
            if evaluate_minor(fl, &g) * &xk != &p + &n {
                report.counterexample = Some(format!("sample {s}: flipped label {fl} does not give x'_{k}"));
                return Ok(report);
            }
        }
    }
    report.flip_checked = flipped.is_some();
    Ok(report)
}

/// The minor label of `x'_k` read off the flip at `k`, when that flip is a
/// mutation.
pub fn flipped_label(word: &SignedWord, cartan: &CartanData, k: i64) -> Option<MinorLabel> {
    match word.flip(k) {
        Ok((w2, FlipRelation::Mutation(_))) => minor_label(&w2, cartan, k).ok(),
        _ => None,
    }
}

/// Runs [`verify_exchange`] on every unfrozen vertex of `s̈(i)^op`, spread
/// over `jobs` threads.  Each vertex gets its own generator seeded from
/// `rng_seed` and the vertex, so results do not depend on `jobs`.
pub fn verify_word(
    word: &SignedWord,
    cartan: &CartanData,
    samples: usize,
    rng_seed: u64,
    jobs: usize,
) -> Result<Vec<ExchangeReport>> {
    let coxeter = cartan.index().to_vec();
    let seed = build_ddot_seed(word, cartan, &coxeter)?.opposite();
    let labels = minor_labels(word, cartan)?;
    verify_seed(&seed, &labels, |k| flipped_label(word, cartan, k), samples, rng_seed, jobs)
}

pub fn verify_seed(
    seed: &Seed,
    labels: &BTreeMap<i64, MinorLabel>,
    flipped: impl Fn(i64) -> Option<MinorLabel> + Sync,
    samples: usize,
    rng_seed: u64,
    jobs: usize,
) -> Result<Vec<ExchangeReport>> {
    let uf = seed.unfrozen();
    let jobs = jobs.max(1).min(uf.len().max(1));
    let chunks: Vec<Vec<i64>> = (0..jobs).map(|t| uf.iter().copied().skip(t).step_by(jobs).collect()).collect();
    let results: Vec<Result<Vec<ExchangeReport>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .iter()
            .map(|chunk| {
                let flipped = &flipped;
                scope.spawn(move || {
                    chunk
                        .iter()
                        .map(|&k| {
                            let mut rng = seeded_rng(rng_seed ^ (k as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
                            verify_exchange(seed, labels, k, flipped(k).as_ref(), samples, &mut rng)
                        })
                        .collect()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("verification thread panicked")).collect()
    });
    let mut all = Vec::new();
    for r in results {
        all.extend(r?);
    }
    all.sort_by_key(|r| r.vertex);
    Ok(all)
}

/// Sign convention helper for tests: `true` when every minor of the identity
/// with equal row and column sets is 1.
pub fn principal_minors_are_one(n: usize) -> bool {
    let id = identity(n);
    (1..=n).all(|i| evaluate_minor(&MinorLabel { rows: (1..=i).collect(), cols: (1..=i).collect() }, &id).is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn labels(start: i64, w: &str, n: usize) -> Vec<String> {
        let word = SignedWord::parse_at(w, start).unwrap();
        minor_labels(&word, &CartanData::type_a(n)).unwrap().values().map(|l| l.to_string()).collect()
    }

    #[test]
    fn fundamental_weights_of_a2() {
        let c = CartanData::type_a(2);
        let w1 = Weight::fundamental(&c, 1).unwrap();
        assert_eq!(w1.0[&1], Q::new(2.into(), 3.into()));
        assert_eq!(w1.0[&2], Q::new(1.into(), 3.into()));
        assert_eq!(w1.coroot_pairing(&c, 1), q(1));
        assert_eq!(w1.coroot_pairing(&c, 2), q(0));
        // s_1 ϖ_1 = ϖ_1 − α_1
        assert_eq!(w1.reflect(&c, 1).0[&1], Q::new((-1).into(), 3.into()));
    }

    #[test]
    fn sl2_labels() {
        assert_eq!(labels(0, "1,-1", 1), ["Δ_{1,2}", "Δ_{1,1}", "Δ_{2,1}"]);
    }

    #[test]
    fn minors_of_small_matrices() {
        let g = vec![vec![BigInt::from(2), BigInt::from(5)], vec![BigInt::from(3), BigInt::from(8)]];
        assert_eq!(evaluate_minor(&MinorLabel { rows: vec![1], cols: vec![2] }, &g), BigInt::from(5));
        assert_eq!(evaluate_minor(&MinorLabel { rows: vec![1, 2], cols: vec![1, 2] }, &g), BigInt::one());
        assert!(principal_minors_are_one(4));
    }

    #[test]
    fn symbolic_minor_matches_evaluation() {
        let l = MinorLabel { rows: vec![1, 3], cols: vec![2, 3] };
        let mut rng = seeded_rng(3);
        let g = random_sl(3, &mut rng);
        let z = symbolic_minor(&l);
        assert_eq!(z.len(), 2);
        let v = z.evaluate(|x| g[(x / 64) as usize - 1][(x % 64) as usize - 1].clone()).unwrap();
        assert_eq!(v.to_integer(), evaluate_minor(&l, &g));
    }

    #[test]
    fn random_matrices_have_determinant_one() {
        let mut rng = seeded_rng(11);
        for n in 1..5 {
            let g = random_sl(n, &mut rng);
            assert!(bareiss_det(&g).is_one());
        }
        assert!(random_sl(3, &mut rng).iter().flatten().any(|x| x.abs() > BigInt::one()));
    }

    #[test]
    fn sl2_lambda_from_weights() {
        let s = lambda_from_weights(&SignedWord::parse_at("1,-1", 1).unwrap(), &CartanData::type_a(1)).unwrap();
        let l = s.lambda().unwrap();
        assert_eq!((l.get(0, 1), l.get(0, 2), l.get(1, 2)), (-1, 0, 1));
        assert_eq!(s.check_compatible().unwrap(), BTreeMap::from([(1, 2)]));
    }
}
