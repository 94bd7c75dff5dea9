//! Chains of good subseeds and computations on finite windows of their colimit.
//!
//! Vertex ids are shared across stages, so every embedding is the inclusion
//! of vertex sets and nothing is relabelled.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};
use crate::pointed::PointedElement;
use crate::quantize::{extend_lambda, good_subseed_violation, solve_rational, CompatibilityProblem};
use crate::seed::Seed;
use crate::torus::ExpVec;
use crate::triangular::{kl_correct, InitialFamily};
use crate::word::{build_dot_seed, interval_variable, CartanData, SignedWord};

/// Outcome of [`check_good_subseed`]: `diagnostic` names the first clause that fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubseedCheck {
    pub good: bool,
    pub diagnostic: Option<String>,
}

/// `sub` is a good subseed of `sup`: vertices and unfrozen vertices included,
/// symmetrizers and `B̃` columns of `sub` unchanged, no new vertex coupled
/// to an old unfrozen one, and (when both are quantum) `Λ` restricts.
pub fn check_good_subseed(sub: &Seed, sup: &Seed) -> SubseedCheck {
    let diagnostic = good_subseed_violation(sub, sup)
        .or_else(|| (sub.is_quantum() != sup.is_quantum()).then(|| "only one of the seeds is quantum".to_string()));
    SubseedCheck { good: diagnostic.is_none(), diagnostic }
}

/// Generators of interval towers.
#[derive(Clone, Debug)]
pub enum TowerRule {
    /// The infinite `A₁` seed with `col_i = e_{i−1} − e_{i+1}` for `i ≠ 0, 1`,
    /// `col_0 = e_{−1} + e_1`, `col_1 = −e_0 − e_2`; stage `r` lives on
    /// `[−1−r, 1+r]` with the two ends frozen.
    GhlA1,
    /// The one-sided infinite word `letters^∞`; stage `r` is the dot seed of
    /// `r + 1` copies.
    Periodic { letters: Vec<i64>, cartan: CartanData },
}

impl FromStr for TowerRule {
    type Err = Error;

    /// `ghl-a1`, or `periodic:<cartan>:<letters>` such as `periodic:a3:1,2,3`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "ghl-a1" {
            return Ok(TowerRule::GhlA1);
        }
        let parts: Vec<&str> = s.splitn(3, ':').collect();
        match parts[..] {
            ["periodic", cartan, letters] => {
                let cartan = CartanData::preset(cartan)?;
                let word: SignedWord = letters.parse()?;
                word.check_letters(&cartan)?;
                if !word.is_unsigned() || word.is_empty() {
                    return Err(Error::Parse("periodic towers need a nonempty unsigned word".into()));
                }
                Ok(TowerRule::Periodic { letters: word.signed_letters().to_vec(), cartan })
            }
            _ => Err(Error::Parse(format!("unknown tower rule {s:?} (expected ghl-a1 or periodic:<cartan>:<word>)"))),
        }
    }
}

/// The `r`-th truncation of the GHL `A₁` seed.
pub fn ghl_a1_stage(r: i64) -> Result<Seed> {
    if r < 0 {
        return domain("radius must be nonnegative");
    }
    let window = -1 - r..=1 + r;
    let cols = (-r..=r)
        .map(|i| {
            let col = match i {
                0 => ExpVec::from_pairs([(-1, 1), (1, 1)]),
                1 => ExpVec::from_pairs([(0, -1), (2, -1)]),
                _ => ExpVec::from_pairs([(i - 1, 1), (i + 1, -1)]),
            };
            (i, col.restrict(|j| window.contains(&j)))
        })
        .collect();
    let vs: Vec<i64> = window.clone().collect();
    Seed::from_columns(vs.clone(), [-1 - r, 1 + r], vs.iter().map(|&v| (v, 1)).collect(), &cols)
}

/// A validated chain of good subseeds.
#[derive(Clone, Debug)]
pub struct SeedTower {
    stages: Vec<Seed>,
    /// The word of every stage, for towers built from words.
    words: Option<(Vec<SignedWord>, CartanData)>,
}

impl SeedTower {
    /// Checks every consecutive pair.
    pub fn new(stages: Vec<Seed>) -> Result<Self> {
        if stages.is_empty() {
            return domain("a tower needs at least one stage");
        }
        for (r, pair) in stages.windows(2).enumerate() {
            if let Some(why) = check_good_subseed(&pair[0], &pair[1]).diagnostic {
                return Err(Error::Hypothesis(format!("stage {r} is not a good subseed of stage {}: {why}", r + 1)));
            }
        }
        Ok(SeedTower { stages, words: None })
    }

    pub fn stages(&self) -> &[Seed] {
        &self.stages
    }

    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }

    pub fn words(&self) -> Option<(&[SignedWord], &CartanData)> {
        self.words.as_ref().map(|(w, c)| (w.as_slice(), c))
    }

    /// Quantizes stage 0 with `δ_k = d_k` (minimal-norm solution, scaled to
    /// be integral) and extends stage by stage with the same scale.
    pub fn quantize(&self) -> Result<Vec<Seed>> {
        let base = &self.stages[0];
        let deltas = |s: &Seed| -> BTreeMap<i64, i64> { s.unfrozen().into_iter().map(|k| (k, s.d(k))).collect() };
        let family = solve_rational(&CompatibilityProblem::new(base, deltas(base)))?
            .ok_or_else(|| Error::Domain("stage 0 admits no compatible Λ".into()))?;
        let c = family.denominator();
        let mut out = vec![base.classical().with_lambda(family.scaled_form(c))?];
        for s in &self.stages[1..] {
            let scaled = deltas(s).into_iter().map(|(k, d)| (k, c * d)).collect();
            let next = extend_lambda(out.last().unwrap(), s, &scaled)?;
            out.push(next);
        }
        Ok(out)
    }
}

/// Stages `0..=radius` of the rule, validated.
pub fn build_interval_tower(rule: &TowerRule, radius: usize) -> Result<SeedTower> {
    match rule {
        TowerRule::GhlA1 => SeedTower::new((0..=radius as i64).map(ghl_a1_stage).collect::<Result<_>>()?),
        TowerRule::Periodic { letters, cartan } => {
            let words: Vec<SignedWord> = (1..=radius + 1)
                .map(|copies| SignedWord::unsigned(1, &letters.repeat(copies)))
                .collect::<Result<_>>()?;
            let stages = words.iter().map(|w| build_dot_seed(w, cartan)).collect::<Result<_>>()?;
            let mut tower = SeedTower::new(stages)?;
            tower.words = Some((words, cartan.clone()));
            Ok(tower)
        }
    }
}

/// Computations that make sense on a window of the colimit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Query {
    /// Entries `Λ_ij` for `lo ≤ i < j ≤ hi`.
    Lambda { lo: i64, hi: i64 },
    /// The truncated triangular-basis element at a fixed degree (word towers).
    Triangular { degree: ExpVec, order: i64 },
    /// The fundamental variable `W_k` (word towers).
    Fundamental { position: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QueryValue {
    Lambda(BTreeMap<(i64, i64), i64>),
    Element(PointedElement),
}

impl fmt::Display for QueryValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QueryValue::Lambda(entries) => {
                let parts: Vec<String> = entries.iter().map(|((i, j), x)| format!("({i},{j}):{x}")).collect();
                write!(f, "{}", parts.join(" "))
            }
            QueryValue::Element(z) => write!(f, "{z}"),
        }
    }
}

/// A query value together with where it stopped changing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stable {
    pub value: QueryValue,
    /// First stage whose value equals the stable one.
    pub first_stage: usize,
    /// The later stage that confirmed it (the two agree on the window).
    pub confirmed_at: usize,
    /// `(stage, value)` for every stage that could answer the query.
    pub history: Vec<(usize, QueryValue)>,
}

fn evaluate(tower: &SeedTower, quantized: &[Seed], r: usize, query: &Query) -> Result<Option<QueryValue>> {
    let seed = &quantized[r];
    match query {
        Query::Lambda { lo, hi } => {
            if !(*lo..=*hi).all(|i| seed.contains(i)) {
                return Ok(None);
            }
            let l = seed.lambda().expect("quantized stage");
            let mut entries = BTreeMap::new();
            for i in *lo..=*hi {
                for j in i + 1..=*hi {
                    entries.insert((i, j), l.get(i, j));
                }
            }
            Ok(Some(QueryValue::Lambda(entries)))
        }
        Query::Triangular { degree, order } => {
            let (words, cartan) = tower.words().ok_or_else(|| {
                Error::Domain(
                    "triangular queries need a word tower (no green-to-red sequence is known otherwise)".into(),
                )
            })?;
            if degree.support().any(|i| !seed.contains(i)) {
                return Ok(None);
            }
            let fam = InitialFamily::for_word(&words[r], cartan, seed)?;
            Ok(Some(QueryValue::Element(kl_correct(degree, &fam, *order)?)))
        }
        Query::Fundamental { position } => {
            let (words, cartan) =
                tower.words().ok_or_else(|| Error::Domain("fundamental-variable queries need a word tower".into()))?;
            if !words[r].contains(*position) {
                return Ok(None);
            }
            Ok(Some(QueryValue::Element(interval_variable(&words[r], cartan, *position, *position, seed)?)))
        }
    }
}

/// Runs `query` on consecutive stages until two of them agree.
pub fn stable_compute(tower: &SeedTower, query: &Query) -> Result<Stable> {
    let quantized = tower.quantize()?;
    stable_on(tower, &quantized, query)
}

fn stable_on(tower: &SeedTower, quantized: &[Seed], query: &Query) -> Result<Stable> {
    let mut history: Vec<(usize, QueryValue)> = Vec::new();
    for r in 0..tower.len() {
        let Some(value) = evaluate(tower, quantized, r, query)? else { continue };
        if let Some((prev, last)) = history.last() {
            if *last == value {
                let first_stage =
                    history.iter().rev().take_while(|(_, v)| *v == value).last().map_or(*prev, |(s, _)| *s);
                history.push((r, value.clone()));
                return Ok(Stable { value, first_stage, confirmed_at: r, history });
            }
        }
        history.push((r, value));
    }
    domain(format!("query did not stabilize within {} stages", tower.len()))
}

/// The query on every stage that can answer it, for checking monotonicity.
pub fn evaluate_all(tower: &SeedTower, query: &Query) -> Result<Vec<(usize, QueryValue)>> {
    let quantized = tower.quantize()?;
    let mut out = Vec::new();
    for r in 0..tower.len() {
        if let Some(v) = evaluate(tower, &quantized, r, query)? {
            out.push((r, v));
        }
    }
    Ok(out)
}

/// Independent queries on one tower, evaluated in parallel.
pub fn stable_compute_all(tower: &SeedTower, queries: &[Query]) -> Result<Vec<Stable>> {
    let quantized = tower.quantize()?;
    std::thread::scope(|scope| {
        let handles: Vec<_> = queries.iter().map(|q| scope.spawn(|| stable_on(tower, &quantized, q))).collect();
        handles.into_iter().map(|h| h.join().expect("query thread panicked")).collect()
    })
}
