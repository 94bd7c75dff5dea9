//! Seeds from signed words over a generalized Cartan matrix.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};
use crate::pointed::{to_pointed_at, DegreeSolver, PointedElement};
use crate::seed::{Cluster, Seed};
use crate::torus::{ExpVec, TorusElement};

/// A generalized Cartan matrix `C` on an index set `J ⊂ N_{>0}` together
/// with symmetrizers `D_a` (`D_a C_ab = D_b C_ba`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanData {
    index: Vec<i64>,
    c: BTreeMap<(i64, i64), i64>,
    d: BTreeMap<i64, i64>,
}

impl CartanData {
    pub fn new(index: Vec<i64>, rows: &[Vec<i64>], d: BTreeMap<i64, i64>) -> Result<Self> {
        if index.iter().any(|&a| a <= 0) {
            return domain("Cartan labels must be positive integers");
        }
        if rows.len() != index.len() || rows.iter().any(|r| r.len() != index.len()) {
            return domain("Cartan matrix shape does not match the index set");
        }
        let mut c = BTreeMap::new();
        for (x, &a) in index.iter().enumerate() {
            for (y, &b) in index.iter().enumerate() {
                c.insert((a, b), rows[x][y]);
            }
        }
        let data = CartanData { index, c, d };
        data.validate()?;
        Ok(data)
    }

    fn validate(&self) -> Result<()> {
        for &a in &self.index {
            if self.d.get(&a).is_none_or(|&x| x <= 0) {
                return domain(format!("missing or non-positive symmetrizer D_{a}"));
            }
            for &b in &self.index {
                let cab = self.c[&(a, b)];
                if a == b && cab != 2 {
                    return domain(format!("C_{a}{a} must be 2"));
                }
                if a != b && cab > 0 {
                    return domain(format!("C_{a}{b} must be non-positive"));
                }
                if self.d[&a] * cab != self.d[&b] * self.c[&(b, a)] {
                    return domain(format!("D does not symmetrize C at ({a},{b})"));
                }
            }
        }
        Ok(())
    }

    /// Type `A_n` with labels `1..=n`.
    pub fn type_a(n: usize) -> Self {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match i.abs_diff(j) {
                        0 => 2,
                        1 => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        let index: Vec<i64> = (1..=n as i64).collect();
        let d = index.iter().map(|&a| (a, 1)).collect();
        Self::new(index, &rows, d).expect("type A data is valid")
    }

    /// Named presets: `a1`..`a9`, `b2`, `g2`.
    pub fn preset(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "b2" => Self::new(vec![1, 2], &[vec![2, -1], vec![-2, 2]], BTreeMap::from([(1, 2), (2, 1)])),
            "g2" => Self::new(vec![1, 2], &[vec![2, -1], vec![-3, 2]], BTreeMap::from([(1, 3), (2, 1)])),
            other => match other.strip_prefix('a').and_then(|n| n.parse::<usize>().ok()) {
                Some(n) if (1..10).contains(&n) => Ok(Self::type_a(n)),
                _ => Err(Error::Parse(format!("unknown Cartan preset {name:?}"))),
            },
        }
    }

    pub fn index(&self) -> &[i64] {
        &self.index
    }

    pub fn rank(&self) -> usize {
        self.index.len()
    }

    pub fn c(&self, a: i64, b: i64) -> i64 {
        self.c[&(a, b)]
    }

    pub fn d(&self, a: i64) -> i64 {
        self.d[&a]
    }

    pub fn symmetrizers(&self) -> &BTreeMap<i64, i64> {
        &self.d
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.index.iter().map(|&a| self.index.iter().map(|&b| self.c(a, b)).collect()).collect()
    }

    pub fn contains(&self, a: i64) -> bool {
        self.d.contains_key(&a)
    }
}

/// A position, or one of the two infinities the shift map can reach.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Pos {
    MinusInf,
    At(i64),
    PlusInf,
}

impl Pos {
    pub fn finite(self) -> Option<i64> {
        match self {
            Pos::At(k) => Some(k),
            _ => None,
        }
    }
}

/// `(i_k ε_k)_{k ∈ [r, s]}`, stored as signed letters from position `start`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedWord {
    start: i64,
    letters: Vec<i64>,
}

/// How the seeds of a word and of its flip are related.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlipRelation {
    /// Letters differ: the seeds differ by relabeling `k ↔ k+1`.
    Transposition(i64, i64),
    /// Letters agree: the seeds differ by `μ_k`.
    Mutation(i64),
}

impl SignedWord {
    pub fn new(start: i64, letters: Vec<i64>) -> Result<Self> {
        if letters.contains(&0) {
            return domain("0 is not a signed letter");
        }
        Ok(SignedWord { start, letters })
    }

    /// An unsigned word `η` read as all-positive letters.
    pub fn unsigned(start: i64, letters: &[i64]) -> Result<Self> {
        Self::new(start, letters.iter().map(|a| a.abs()).collect())
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    /// Last position `s`; `start - 1` for the empty word.
    pub fn end(&self) -> i64 {
        self.start + self.letters.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn positions(&self) -> impl Iterator<Item = i64> + '_ {
        self.start..=self.end()
    }

    pub fn contains(&self, k: i64) -> bool {
        (self.start..=self.end()).contains(&k)
    }

    pub fn signed(&self, k: i64) -> i64 {
        self.letters[(k - self.start) as usize]
    }

    /// `i_k`.
    pub fn letter(&self, k: i64) -> i64 {
        self.signed(k).abs()
    }

    /// `ε_k`.
    pub fn sign(&self, k: i64) -> i64 {
        self.signed(k).signum()
    }

    pub fn signed_letters(&self) -> &[i64] {
        &self.letters
    }

    pub fn is_unsigned(&self) -> bool {
        self.letters.iter().all(|&a| a > 0)
    }

    pub fn check_letters(&self, cartan: &CartanData) -> Result<()> {
        match self.letters.iter().find(|a| !cartan.contains(a.abs())) {
            Some(a) => domain(format!("letter {a} is not in the Cartan index set")),
            None => Ok(()),
        }
    }

    fn step(&self, k: i64, up: bool) -> Pos {
        let a = self.letter(k);
        let found = if up {
            (k + 1..=self.end()).find(|&j| self.letter(j) == a)
        } else {
            (self.start..k).rev().find(|&j| self.letter(j) == a)
        };
        match (found, up) {
            (Some(j), _) => Pos::At(j),
            (None, true) => Pos::PlusInf,
            (None, false) => Pos::MinusInf,
        }
    }

    /// `k[d]`: walk `|d|` times to the next (or previous) position with the same letter.
    pub fn shift(&self, k: i64, d: i64) -> Pos {
        let mut cur = k;
        for _ in 0..d.unsigned_abs() {
            match self.step(cur, d > 0) {
                Pos::At(j) => cur = j,
                inf => return inf,
            }
        }
        Pos::At(cur)
    }

    /// `o₊(k)`: later positions with the same letter.
    pub fn o_plus(&self, k: i64) -> i64 {
        (k + 1..=self.end()).filter(|&j| self.letter(j) == self.letter(k)).count() as i64
    }

    /// `o₋(k)`: earlier positions with the same letter.
    pub fn o_minus(&self, k: i64) -> i64 {
        (self.start..k).filter(|&j| self.letter(j) == self.letter(k)).count() as i64
    }

    pub fn k_max(&self, k: i64) -> i64 {
        self.shift(k, self.o_plus(k)).finite().unwrap()
    }

    pub fn k_min(&self, k: i64) -> i64 {
        self.shift(k, -self.o_minus(k)).finite().unwrap()
    }

    /// `(−i_r, i_{[r+1,s]})`.
    pub fn left_reflect(&self) -> Result<Self> {
        let mut letters = self.letters.clone();
        let first = letters.first_mut().ok_or_else(|| Error::Domain("empty word".into()))?;
        *first = -*first;
        Ok(SignedWord { start: self.start, letters })
    }

    /// Swap positions `k` and `k+1`, allowed when their signs differ.
    pub fn flip(&self, k: i64) -> Result<(Self, FlipRelation)> {
        if !self.contains(k) || !self.contains(k + 1) {
            return domain(format!("flip at {k} leaves the word"));
        }
        if self.sign(k) != -self.sign(k + 1) {
            return domain(format!("flip at {k} needs opposite signs"));
        }
        let mut letters = self.letters.clone();
        let at = (k - self.start) as usize;
        letters.swap(at, at + 1);
        let rel = if self.letter(k) == self.letter(k + 1) {
            FlipRelation::Mutation(k)
        } else {
            FlipRelation::Transposition(k, k + 1)
        };
        Ok((SignedWord { start: self.start, letters }, rel))
    }

    /// `i^op`, reversed on the same interval.
    pub fn opposite(&self) -> Self {
        let mut letters = self.letters.clone();
        letters.reverse();
        SignedWord { start: self.start, letters }
    }

    /// Parses `1,-1,2` starting at position `start`.
    pub fn parse_at(s: &str, start: i64) -> Result<Self> {
        let letters: Vec<i64> = if s.trim().is_empty() {
            Vec::new()
        } else {
            s.split(',')
                .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad letter {t:?}"))))
                .collect::<Result<_>>()?
        };
        Self::new(start, letters)
    }
}

impl FromStr for SignedWord {
    type Err = Error;
    /// Comma list of signed letters; positions start at 1.
    fn from_str(s: &str) -> Result<Self> {
        Self::parse_at(s, 1)
    }
}

impl fmt::Display for SignedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(i64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Letters and signs on `[r−|J|, s]`: the Coxeter letters first (their signs
/// never enter the formula), then the word.
struct Extended<'a> {
    word: &'a SignedWord,
    added: Vec<i64>,
}

impl Extended<'_> {
    fn first(&self) -> i64 {
        self.word.start - self.added.len() as i64
    }

    fn letter(&self, k: i64) -> i64 {
        if k < self.word.start {
            self.added[(k - self.first()) as usize]
        } else {
            self.word.letter(k)
        }
    }

    fn next(&self, k: i64) -> Pos {
        let a = self.letter(k);
        (k + 1..=self.word.end()).find(|&j| self.letter(j) == a).map_or(Pos::PlusInf, Pos::At)
    }
}

fn eps(word: &SignedWord, p: Pos) -> Option<i64> {
    p.finite().filter(|&k| word.contains(k)).map(|k| word.sign(k))
}

/// The seven-case entry `b_jk` for unfrozen `k`; at most one case applies.
fn b_entry(ext: &Extended<'_>, cartan: &CartanData, j: i64, k: i64) -> i64 {
    let w = ext.word;
    let (jn, kn) = (ext.next(j), ext.next(k));
    let (pj, pk) = (Pos::At(j), Pos::At(k));
    let c = cartan.c(ext.letter(j), ext.letter(k));
    let ek = w.sign(k);
    let ej = eps(w, pj);
    let mut fired = Vec::new();
    if pk == jn {
        fired.push(ek);
    }
    if pj == kn {
        fired.push(-ej.expect("k[1] is a word position"));
    }
    if eps(w, jn) == Some(ek) && pj < pk && pk < jn && jn < kn {
        fired.push(ek * c);
    }
    if eps(w, kn) == Some(-ek) && pj < pk && pk < kn && kn < jn {
        fired.push(ek * c);
    }
    if let Some(e) = ej {
        if eps(w, kn) == Some(e) && pk < pj && pj < kn && kn < jn {
            fired.push(-e * c);
        }
        if eps(w, jn) == Some(-e) && pk < pj && pj < jn && jn < kn {
            fired.push(-e * c);
        }
    }
    assert!(fired.len() <= 1, "overlapping cases for b_({j},{k})");
    fired.first().copied().unwrap_or(0)
}

/// `s̈(i)` on `[r−|J|, s]`; frozen-frozen entries are zero.
pub fn build_ddot_seed(word: &SignedWord, cartan: &CartanData, coxeter: &[i64]) -> Result<Seed> {
    word.check_letters(cartan)?;
    let mut sorted = coxeter.to_vec();
    sorted.sort_unstable();
    if sorted != cartan.index() {
        return domain("Coxeter word must use every Cartan label exactly once");
    }
    let ext = Extended { word, added: coxeter.to_vec() };
    let vertices: Vec<i64> = (ext.first()..=word.end()).collect();
    let unfrozen: Vec<i64> = word.positions().filter(|&k| matches!(ext.next(k), Pos::At(_))).collect();
    let frozen: Vec<i64> = vertices.iter().copied().filter(|v| !unfrozen.contains(v)).collect();
    let d: BTreeMap<i64, i64> = vertices.iter().map(|&k| (k, cartan.d(ext.letter(k)))).collect();
    let mut columns = BTreeMap::new();
    for &k in &unfrozen {
        let col = ExpVec::from_pairs(vertices.iter().map(|&j| (j, b_entry(&ext, cartan, j, k))));
        columns.insert(k, col);
    }
    Seed::from_columns(vertices, frozen, d, &columns)
}

/// `ṡ(i)`: the restriction of `s̈(i)` to `[r, s]`.
pub fn build_dot_seed(word: &SignedWord, cartan: &CartanData) -> Result<Seed> {
    let full = build_ddot_seed(word, cartan, cartan.index())?;
    let keep: BTreeSet<i64> = word.positions().collect();
    let frozen: BTreeSet<i64> = word.positions().filter(|&k| word.shift(k, 1) == Pos::PlusInf).collect();
    full.restrict(&keep, &frozen)
}

/// The green-to-red sequence `Σ` of an unsigned word and its permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaData {
    /// `Σ_r, Σ_{r+1}, …, Σ_s` in application order.
    pub groups: Vec<Vec<i64>>,
    /// The flattened sequence, applied left to right.
    pub sequence: Vec<i64>,
    /// `σ(k)`: the vertex of `Σṡ` whose variable has degree `−f_k + f_{k^max}`.
    pub sigma: BTreeMap<i64, i64>,
}

/// Degree in the initial chart of `x_i(μ_seq s)`, by tropical transport back.
pub fn variable_degree(seed: &Seed, seq: &[i64], i: i64) -> Result<ExpVec> {
    let mut seeds = vec![seed.clone()];
    for &k in seq {
        let next = seeds.last().unwrap().mutate_bmatrix(k)?;
        seeds.push(next);
    }
    let mut m = ExpVec::unit(i);
    for t in (0..seq.len()).rev() {
        m = seeds[t + 1].tropical_mutate(&m, seq[t])?;
    }
    Ok(m)
}

pub fn sigma_sequence(word: &SignedWord, cartan: &CartanData) -> Result<SigmaData> {
    if !word.is_unsigned() {
        return domain("Σ is defined for unsigned words");
    }
    let mut groups = Vec::new();
    for k in word.positions() {
        let mut chain = Vec::new();
        let mut cur = word.k_min(k);
        for _ in 0..word.o_plus(k) {
            chain.push(cur);
            cur = word.shift(cur, 1).finite().unwrap_or(cur);
        }
        groups.push(chain);
    }
    let sequence: Vec<i64> = groups.iter().flatten().copied().collect();
    let seed = build_dot_seed(word, cartan)?;
    let mut by_degree = BTreeMap::new();
    for &i in seed.vertices() {
        by_degree.insert(variable_degree(&seed, &sequence, i)?, i);
    }
    let mut sigma = BTreeMap::new();
    for k in seed.unfrozen() {
        let target = &ExpVec::unit(word.k_max(k)) - &ExpVec::unit(k);
        let i =
            by_degree.get(&target).ok_or_else(|| Error::Domain(format!("no variable of degree {target} after Σ")))?;
        sigma.insert(k, *i);
    }
    Ok(SigmaData { groups, sequence, sigma })
}

/// Every cluster variable produced along `Σ`, keyed by its degree, plus the
/// initial variables.  Interval variables are looked up here.
pub fn sigma_variables(word: &SignedWord, cartan: &CartanData, seed: &Seed) -> Result<BTreeMap<ExpVec, TorusElement>> {
    let data = sigma_sequence(word, cartan)?;
    let mut out: BTreeMap<ExpVec, TorusElement> = BTreeMap::new();
    let mut cluster = Cluster::initial(seed);
    for &i in seed.vertices() {
        out.insert(ExpVec::unit(i), cluster.vars[&i].clone());
    }
    for (t, &k) in data.sequence.iter().enumerate() {
        cluster = cluster.mutate(k)?;
        let deg = variable_degree(seed, &data.sequence[..=t], k)?;
        out.insert(deg, cluster.vars[&k].clone());
    }
    Ok(out)
}

/// `f_k − f_{j[−1]}` with `f_{−∞} = 0`.
pub fn interval_degree(word: &SignedWord, j: i64, k: i64) -> Result<ExpVec> {
    if word.letter(j) != word.letter(k) || j > k {
        return domain(format!("[{j},{k}] is not an interval of one letter"));
    }
    let mut m = ExpVec::unit(k);
    if let Pos::At(p) = word.shift(j, -1) {
        m.add_at(p, -1);
    }
    Ok(m)
}

/// The interval variable `W_[j,k]` in the initial chart of `seed` (the dot
/// seed of `word`, possibly quantized).
pub fn interval_variable(
    word: &SignedWord,
    cartan: &CartanData,
    j: i64,
    k: i64,
    seed: &Seed,
) -> Result<PointedElement> {
    let deg = interval_degree(word, j, k)?;
    let vars = sigma_variables(word, cartan, seed)?;
    let z = vars.get(&deg).ok_or_else(|| Error::Domain(format!("W_[{j},{k}] does not appear along Σ")))?;
    to_pointed_at(z, &deg, &DegreeSolver::new(seed)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::bi;

    fn w(s: &str) -> SignedWord {
        s.parse().unwrap()
    }

    #[test]
    fn shift_examples() {
        let word = w("1,2,1,3,2,1");
        assert_eq!(word.shift(1, 1), Pos::At(3));
        assert_eq!(word.shift(3, 1), Pos::At(6));
        assert_eq!(word.shift(2, 1), Pos::At(5));
        assert_eq!(word.shift(4, 1), Pos::PlusInf);
        assert_eq!(word.shift(1, -1), Pos::MinusInf);
        assert_eq!(word.shift(6, -2), Pos::At(1));
        assert_eq!(word.k_max(1), 6);
        assert_eq!(word.o_plus(1), 2);
        assert_eq!(word.shift(4, 0), Pos::At(4));
        assert_eq!(word.k_min(6), 1);
    }

    #[test]
    fn cartan_presets_validate() {
        for name in ["a1", "a2", "a3", "a4", "b2", "g2"] {
            CartanData::preset(name).unwrap();
        }
        assert!(CartanData::new(vec![1, 2], &[vec![2, -1], vec![-2, 2]], BTreeMap::from([(1, 1), (2, 1)])).is_err());
        assert!(CartanData::preset("e8").is_err());
    }

    #[test]
    fn empty_word_has_only_added_vertices() {
        let a2 = CartanData::type_a(2);
        let s = build_ddot_seed(&SignedWord::new(1, vec![]).unwrap(), &a2, &[1, 2]).unwrap();
        assert_eq!(s.vertices(), &[-1, 0]);
        assert!(s.unfrozen().is_empty());
    }

    #[test]
    fn single_letter_dot_seed() {
        let s = build_dot_seed(&w("2"), &CartanData::type_a(2)).unwrap();
        assert_eq!(s.vertices(), &[1]);
        assert!(s.is_frozen(1));
    }

    #[test]
    fn sl2_figure_seed() {
        let s = build_ddot_seed(&SignedWord::parse_at("1,-1", 0).unwrap(), &CartanData::type_a(1), &[1]).unwrap();
        assert_eq!(s.vertices(), &[-1, 0, 1]);
        assert_eq!(s.unfrozen(), vec![0]);
        assert_eq!(s.b(-1, 0), bi(1));
        assert_eq!(s.b(1, 0), bi(1));
    }

    #[test]
    fn reflection_and_flip_basics() {
        assert_eq!(w("1,2").left_reflect().unwrap(), w("-1,2"));
        assert_eq!(w("1,2").left_reflect().unwrap().left_reflect().unwrap(), w("1,2"));
        let (f, rel) = w("1,-1").flip(1).unwrap();
        assert_eq!(f, w("-1,1"));
        assert_eq!(rel, FlipRelation::Mutation(1));
        let (g, rel) = w("1,-2").flip(1).unwrap();
        assert_eq!(g, w("-2,1"));
        assert_eq!(rel, FlipRelation::Transposition(1, 2));
        assert_eq!(g.flip(1).unwrap().0, w("1,-2"));
        assert!(w("1,2").flip(1).is_err());
    }

    #[test]
    fn left_reflection_keeps_dot_seed() {
        let a2 = CartanData::type_a(2);
        let word = w("1,2,1");
        assert_eq!(build_dot_seed(&word, &a2).unwrap(), build_dot_seed(&word.left_reflect().unwrap(), &a2).unwrap());
    }

    #[test]
    fn distinct_letters_have_empty_sigma() {
        let data = sigma_sequence(&w("1,2,3"), &CartanData::type_a(3)).unwrap();
        assert!(data.sequence.is_empty());
        assert!(data.sigma.is_empty());
    }

    #[test]
    fn single_letter_fundamental_variable() {
        let a1 = CartanData::type_a(1);
        let word = w("1");
        let s = build_dot_seed(&word, &a1).unwrap();
        let w1 = interval_variable(&word, &a1, 1, 1, &s).unwrap();
        assert_eq!(w1, PointedElement::monomial(ExpVec::unit(1)));
    }
}
