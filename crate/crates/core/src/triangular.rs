//! Triangular bases.
//!
//! [`InitialFamily`] produces the pointed set `I^s` from the variables of
//! `s[1]`, and [`kl_correct`] runs the bar-invariant correction on a
//! truncated window of the dominance cone.  For signed-word seeds,
//! [`StandardBasis`] builds the ordered products of fundamental variables
//! and runs the KL algorithm on them directly, which needs no truncation.
//!
//! The correction is coefficientwise: in the basis of normalized monomials
//! `x^m` the bar involution only acts on coefficients, so an element is
//! bar-invariant iff every coefficient is.  Adding `c · I_{m'}` changes the
//! coefficient of `x^{m'}` by `c` and otherwise only touches degrees below
//! `m'`, so walking the window by increasing `|n|` fixes each coefficient
//! once and for all.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use crate::error::{domain, Error, Result};
use crate::laurent::VLaurent;
use crate::pointed::{to_pointed_at, DegreeSolver, PointedElement};
use crate::seed::{Cluster, Seed};
use crate::torus::{ExpVec, TorusElement};
use crate::word::{sigma_sequence, sigma_variables, variable_degree, CartanData, Pos, SignedWord};

/// Source of the pointed set `I^s`: the initial cluster together with the
/// cluster of `s[1]` written in the chart of `s`.
#[derive(Clone, Debug)]
pub struct InitialFamily {
    solver: DegreeSolver,
    /// Unfrozen `j ↦ (degree, variable)` where the degree has unfrozen part `−f_j`.
    shifted: BTreeMap<i64, (ExpVec, TorusElement)>,
}

impl InitialFamily {
    /// Uses `μ_seq s` as `s[1]`.  The sequence must be green-to-red: the
    /// unfrozen variables at the end must have degrees `−f_j + (frozen)`
    /// for a permutation of the unfrozen vertices.
    pub fn from_sequence(seed: &Seed, seq: &[i64]) -> Result<Self> {
        let solver = DegreeSolver::new(seed)?;
        if seed.is_quantum() {
            seed.check_compatible()?;
        }
        let cluster = Cluster::initial(seed).mutate_seq(seq)?;
        let mut shifted = BTreeMap::new();
        for i in seed.unfrozen() {
            let deg = variable_degree(seed, seq, i)?;
            let uf = deg.restrict(|v| !seed.is_frozen(v));
            let j = match uf.iter().collect::<Vec<_>>()[..] {
                [(j, -1)] => j,
                _ => return domain(format!("x_{i} after {seq:?} has degree {deg}, not −f_j up to frozen terms")),
            };
            if shifted.insert(j, (deg, cluster.vars[&i].clone())).is_some() {
                return domain(format!("two variables of μ_{seq:?} have unfrozen degree −f_{j}"));
            }
        }
        Ok(InitialFamily { solver, shifted })
    }

    /// The word-seed case, with `s[1]` reached by the sequence `Σ`.
    pub fn for_word(word: &SignedWord, cartan: &CartanData, seed: &Seed) -> Result<Self> {
        let data = sigma_sequence(word, cartan)?;
        Self::from_sequence(seed, &data.sequence)
    }

    pub fn seed(&self) -> &Seed {
        self.solver.seed()
    }

    pub fn solver(&self) -> &DegreeSolver {
        &self.solver
    }

    /// The variable of `s[1]` whose degree has unfrozen part `−f_j`.
    pub fn shifted_variable(&self, j: i64) -> Option<(&ExpVec, &TorusElement)> {
        self.shifted.get(&j).map(|(d, z)| (d, z))
    }

    /// `m = p + g₊ + Σ (g₋)_j deg x_j(s[1])` with `p` frozen; returns `(p, g₊, g₋)`.
    pub fn split(&self, m: &ExpVec) -> Result<(ExpVec, ExpVec, ExpVec)> {
        let seed = self.seed();
        if let Some(i) = m.support().find(|&i| !seed.contains(i)) {
            return domain(format!("vertex {i} is not in the seed"));
        }
        let mut gp = ExpVec::zero();
        let mut gm = ExpVec::zero();
        let mut rest = m.clone();
        for k in seed.unfrozen() {
            let e = m.get(k);
            if e > 0 {
                gp.set(k, e);
                rest.add_at(k, -e);
            } else if e < 0 {
                gm.set(k, -e);
                rest = &rest - &self.shifted[&k].0.scale(-e);
            }
        }
        debug_assert!(rest.support().all(|i| seed.is_frozen(i)));
        Ok((rest, gp, gm))
    }

    /// `I^s_m = [x^p * x(s)^{g₊} * x(s[1])^{g₋}]`, checked to be `m`-pointed.
    pub fn element(&self, m: &ExpVec) -> Result<PointedElement> {
        let form = self.seed().lambda();
        let (p, gp, gm) = self.split(m)?;
        let mut z = TorusElement::monomial(&p + &gp);
        for (j, e) in gm.iter() {
            z = z.mul(&self.shifted[&j].1.pow(e as u32, form), form);
        }
        to_pointed_at(&z, m, &self.solver)
    }
}

/// Sort key of the window: total degree first, then the vector itself.
fn window_key(n: &ExpVec) -> (i64, ExpVec) {
    (n.total(), n.clone())
}

/// The unique `c ∈ v⁻¹Z[v⁻¹]` making `a + c` bar-invariant.
fn bar_correction(a: &VLaurent) -> VLaurent {
    let pos = VLaurent::from_terms(a.terms().filter(|(k, _)| *k > 0).map(|(k, c)| (k, c.clone())));
    let neg = VLaurent::from_terms(a.terms().filter(|(k, _)| *k < 0).map(|(k, c)| (k, c.clone())));
    &pos.bar() - &neg
}

/// Adds `c · z` to the window `acc`, where `z` sits at offset `base`.
fn add_shifted(
    acc: &mut BTreeMap<(i64, ExpVec), VLaurent>,
    base: &ExpVec,
    c: &VLaurent,
    z: &PointedElement,
    order: i64,
) {
    for (n, x) in z.fpoly() {
        let key = base + n;
        if key.total() > order {
            continue;
        }
        let entry = acc.entry(window_key(&key)).or_default();
        *entry += &(c * x);
        if entry.is_zero() {
            acc.remove(&window_key(&key));
        }
    }
}

/// The triangular-basis element `L_m`, truncated to `|n| ≤ order`.
pub fn kl_correct(m: &ExpVec, family: &InitialFamily, order: i64) -> Result<PointedElement> {
    if order < 0 {
        return domain("truncation order must be nonnegative");
    }
    let seed = family.seed();
    let mut acc: BTreeMap<(i64, ExpVec), VLaurent> = BTreeMap::new();
    add_shifted(&mut acc, &ExpVec::zero(), &VLaurent::one(), &family.element(m)?, order);
    let mut cursor = window_key(&ExpVec::zero());
    while let Some((key, a)) = acc.range((std::ops::Bound::Excluded(cursor.clone()), std::ops::Bound::Unbounded)).next()
    {
        let (key, a) = (key.clone(), a.clone());
        cursor = key.clone();
        let c = bar_correction(&a);
        if c.is_zero() {
            continue;
        }
        let n = &key.1;
        let lower = family.element(&(m + &seed.p_star(n)))?;
        add_shifted(&mut acc, n, &c, &lower, order);
    }
    PointedElement::new(m.clone(), acc.into_iter().map(|((_, n), c)| (n, c)).collect())
}

/// Where a triangularity check broke.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangularityFailure {
    pub vertex: i64,
    pub degree: ExpVec,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TriangularityReport {
    pub checked: usize,
    pub failure: Option<TriangularityFailure>,
}

impl TriangularityReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// For each `(i, m)`, expands `[x_i * L_m]` in the family `L` and checks it
/// is `L_{m+f_i}` plus terms with coefficients in `v⁻¹Z[v⁻¹]`, within the
/// window `|n| ≤ order`.  Every `L_m` touched must be bar-invariant.
pub fn check_triangularity<F>(
    family: F,
    seed: &Seed,
    pairs: &[(i64, ExpVec)],
    order: i64,
) -> Result<TriangularityReport>
where
    F: Fn(&ExpVec) -> Result<PointedElement>,
{
    let solver = DegreeSolver::new(seed)?;
    let mut report = TriangularityReport::default();
    for (i, m) in pairs {
        let fail = |reason: String| TriangularityFailure { vertex: *i, degree: m.clone(), reason };
        let lm = family(m)?;
        if !lm.is_bar_invariant() {
            report.failure = Some(fail(format!("L_{m} is not bar-invariant")));
            return Ok(report);
        }
        let top = m + &ExpVec::unit(*i);
        let z = TorusElement::monomial(ExpVec::unit(*i)).mul(&lm.expand(seed), seed.lambda());
        let z = to_pointed_at(&z, &top, &solver)?;
        let mut acc = BTreeMap::new();
        add_shifted(&mut acc, &ExpVec::zero(), &VLaurent::one(), &z, order);
        while let Some(((_, n), a)) = acc.iter().next().map(|(k, a)| (k.clone(), a.clone())) {
            let ok = if n.is_zero() { a == VLaurent::one() } else { a.in_negative_part() };
            if !ok {
                report.failure = Some(fail(format!("coefficient {a} at L_{{{}}}", &top + &seed.p_star(&n))));
                return Ok(report);
            }
            let l = family(&(&top + &seed.p_star(&n)))?;
            add_shifted(&mut acc, &n, &-&a, &l, order);
            if acc.contains_key(&window_key(&n)) {
                return Err(Error::NotPointed(format!("family element at offset {n} has lead coefficient ≠ 1")));
            }
        }
        report.checked += 1;
    }
    Ok(report)
}

/// Total orders on multiplicity vectors used by the KL algorithm.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    /// Compare at the first position where the vectors differ.
    Lex,
    /// Compare at the last position where they differ.
    RevLex,
}

impl std::str::FromStr for Order {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lex" => Ok(Order::Lex),
            "revlex" => Ok(Order::RevLex),
            _ => Err(Error::Parse(format!("unknown order {s:?} (expected lex or revlex)"))),
        }
    }
}

/// Expansion in the standard basis: multiplicity vector `w ↦` coefficient.
pub type Expansion = BTreeMap<ExpVec, VLaurent>;

/// Result of one straightening check.
#[derive(Clone, Debug)]
pub struct Straightening {
    pub j: i64,
    pub k: i64,
    pub expansion: Expansion,
    /// Whether every `w` in the expansion is supported in `[j+1, k−1]`.
    pub supported_inside: bool,
}

/// The standard basis `M(w) = [W_1^{w_1} * ⋯ * W_l^{w_l}]` of an unsigned
/// word seed, built from the fundamental variables `W_k = W_[k,k]`.
#[derive(Clone, Debug)]
pub struct StandardBasis {
    word: SignedWord,
    solver: DegreeSolver,
    fundamentals: BTreeMap<i64, TorusElement>,
}

impl StandardBasis {
    /// `seed` is the (quantized) dot seed of `word`.
    pub fn new(word: &SignedWord, cartan: &CartanData, seed: &Seed) -> Result<Self> {
        if !word.is_unsigned() {
            return domain("the standard basis needs an unsigned word");
        }
        let vars = sigma_variables(word, cartan, seed)?;
        let mut basis =
            StandardBasis { word: word.clone(), solver: DegreeSolver::new(seed)?, fundamentals: BTreeMap::new() };
        for k in word.positions() {
            let deg = basis.theta_inv(&ExpVec::unit(k));
            let z = vars.get(&deg).ok_or_else(|| Error::Domain(format!("W_{k} does not appear along Σ")))?;
            basis.fundamentals.insert(k, z.clone());
        }
        Ok(basis)
    }

    pub fn seed(&self) -> &Seed {
        self.solver.seed()
    }

    pub fn word(&self) -> &SignedWord {
        &self.word
    }

    /// `W_k` in the initial chart.
    pub fn fundamental(&self, k: i64) -> Result<&TorusElement> {
        self.fundamentals.get(&k).ok_or_else(|| Error::Domain(format!("no position {k} in the word")))
    }

    /// `θ⁻¹(w) = Σ w_k (f_k − f_{k[−1]})`.
    pub fn theta_inv(&self, w: &ExpVec) -> ExpVec {
        let mut m = ExpVec::zero();
        for (k, e) in w.iter() {
            m.add_at(k, e);
            if let Pos::At(p) = self.word.shift(k, -1) {
                m.add_at(p, -e);
            }
        }
        m
    }

    /// Inverse of [`Self::theta_inv`]: `w_k = m_k + w_{k[1]}`, right to left.
    pub fn theta(&self, m: &ExpVec) -> ExpVec {
        let mut w = ExpVec::zero();
        for k in self.word.positions().collect::<Vec<_>>().into_iter().rev() {
            let next = match self.word.shift(k, 1) {
                Pos::At(p) => w.get(p),
                _ => 0,
            };
            w.set(k, m.get(k) + next);
        }
        w
    }

    /// The unnormalized ordered product `W_1^{w_1} * ⋯ * W_l^{w_l}`.
    fn ordered_product(&self, w: &ExpVec) -> TorusElement {
        let form = self.seed().lambda();
        w.iter().fold(TorusElement::one(), |z, (k, e)| z.mul(&self.fundamentals[&k].pow(e as u32, form), form))
    }

    /// `M(w)`, pointed at `θ⁻¹(w)`.
    pub fn standard_monomial(&self, w: &ExpVec) -> Result<PointedElement> {
        if !w.is_nonnegative() || w.support().any(|k| !self.word.contains(k)) {
            return domain(format!("{w} is not a multiplicity vector over the word"));
        }
        to_pointed_at(&self.ordered_product(w), &self.theta_inv(w), &self.solver)
    }

    /// Writes `z` in the standard basis by peeling off maximal degrees.
    pub fn decompose(&self, z: &TorusElement) -> Result<Expansion> {
        let seed = self.seed().clone();
        let mut rest = z.clone();
        let mut out = Expansion::new();
        let mut guard = 0usize;
        while let Some(top) = self.solver.maximal_degree(&rest) {
            guard += 1;
            if guard > 100_000 {
                return domain("standard-basis decomposition did not terminate");
            }
            let w = self.theta(&top);
            if !w.is_nonnegative() {
                return domain(format!("degree {top} is not θ⁻¹ of a multiplicity vector"));
            }
            let a = rest.coeff(&top);
            let m = self.standard_monomial(&w)?;
            rest = &rest - &m.expand(&seed).scale(&a);
            out.insert(w, a);
        }
        Ok(out)
    }

    /// Expands `W_k * W_j − v^{2λ(deg W_k, deg W_j)} W_j * W_k` and checks the
    /// support condition.  The factor is the quasi-commutation factor of the
    /// two leading monomials under `x^a * x^b = v^{λ(a,b)} x^{a+b}`.
    pub fn straightening_check(&self, j: i64, k: i64) -> Result<Straightening> {
        if j > k {
            return domain(format!("straightening needs j ≤ k, got ({j}, {k})"));
        }
        let seed = self.seed();
        let form = seed.lambda();
        let (wj, wk) = (self.fundamental(j)?, self.fundamental(k)?);
        let twist =
            form.map_or(0, |l| 2 * l.pair(&self.theta_inv(&ExpVec::unit(k)), &self.theta_inv(&ExpVec::unit(j))));
        let z = &wk.mul(wj, form) - &wj.mul(wk, form).shift_v(twist);
        let expansion = self.decompose(&z)?;
        let supported_inside = expansion.keys().all(|w| w.support().all(|p| j < p && p < k));
        Ok(Straightening { j, k, expansion, supported_inside })
    }

    fn cmp(&self, order: Order, a: &ExpVec, b: &ExpVec) -> Ordering {
        let mut positions: Vec<i64> = self.word.positions().collect();
        if order == Order::RevLex {
            positions.reverse();
        }
        positions.iter().map(|&p| a.get(p).cmp(&b.get(p))).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
    }

    /// The KL element `L(w)`: bar-invariant, `M(w)` plus corrections in
    /// `v⁻¹Z[v⁻¹]` at standard monomials below `w`.  Returns the element and
    /// its expansion in the standard basis.
    pub fn kl_from_standard(&self, w: &ExpVec, order: Order) -> Result<(PointedElement, Expansion)> {
        let seed = self.seed().clone();
        let mut z = self.standard_monomial(w)?.expand(&seed);
        let mut coeffs = Expansion::from([(w.clone(), VLaurent::one())]);
        loop {
            let defect = self.decompose(&(&z.bar() - &z))?;
            let Some((top, d)) = defect.iter().max_by(|a, b| self.cmp(order, a.0, b.0)) else { break };
            if self.cmp(order, top, w) != Ordering::Less {
                return domain(format!("bar(M({w})) is not triangular: M({top}) appears with {d}"));
            }
            let c = -VLaurent::kl_split(d)?;
            z = &z + &self.standard_monomial(top)?.expand(&seed).scale(&c);
            *coeffs.entry(top.clone()).or_default() += &c;
        }
        Ok((to_pointed_at(&z, &self.theta_inv(w), &self.solver)?, coeffs))
    }

    /// Every multiplicity vector of total degree at most `max`.
    pub fn vectors_up_to(&self, max: i64) -> Vec<ExpVec> {
        let positions: Vec<i64> = self.word.positions().collect();
        let mut out = vec![ExpVec::zero()];
        for &p in &positions {
            let mut next = Vec::new();
            for w in &out {
                for e in 0..=(max - w.total()) {
                    let mut w = w.clone();
                    w.set(p, e);
                    next.push(w);
                }
            }
            out = next;
        }
        out
    }
}

/// Degrees `m` with every unfrozen coordinate in `[-bound, bound]` and
/// frozen part zero, sorted.
pub fn unfrozen_box(seed: &Seed, bound: i64) -> BTreeSet<ExpVec> {
    let mut out = BTreeSet::from([ExpVec::zero()]);
    for k in seed.unfrozen() {
        out = out
            .into_iter()
            .flat_map(|m| {
                (-bound..=bound).map(move |e| {
                    let mut m = m.clone();
                    m.set(k, e);
                    m
                })
            })
            .collect();
    }
    out
}
