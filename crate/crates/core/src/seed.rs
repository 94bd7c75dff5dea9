//! Seeds and everything that mutates them.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Error, Result};
use crate::linalg::{q, QMatrix, Q};
use crate::torus::{ExpVec, SkewForm, TorusElement};

/// Exchange-matrix entry.  Integers except between frozen vertices, where
/// half-integers appear in word seeds.
pub type BEntry = Ratio<i64>;

fn pos(x: BEntry) -> BEntry {
    if x.is_positive() {
        x
    } else {
        BEntry::zero()
    }
}

/// A (classical or quantum) seed with a full square exchange matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    vertices: Vec<i64>,
    frozen: BTreeSet<i64>,
    d: BTreeMap<i64, i64>,
    b: BTreeMap<(i64, i64), BEntry>,
    lambda: Option<SkewForm>,
}

impl Seed {
    /// Builds a seed from explicit `b_ij` entries, checking every invariant.
    pub fn new(
        vertices: impl IntoIterator<Item = i64>,
        frozen: impl IntoIterator<Item = i64>,
        d: BTreeMap<i64, i64>,
        entries: impl IntoIterator<Item = ((i64, i64), BEntry)>,
    ) -> Result<Self> {
        let vertices: BTreeSet<i64> = vertices.into_iter().collect();
        let frozen: BTreeSet<i64> = frozen.into_iter().collect();
        let mut b = BTreeMap::new();
        for (ij, x) in entries {
            if !x.is_zero() {
                b.insert(ij, x);
            }
        }
        let seed = Seed { vertices: vertices.into_iter().collect(), frozen, d, b, lambda: None };
        seed.validate()?;
        Ok(seed)
    }

    /// Builds a seed from the columns `b_{·k}` of the unfrozen vertices; the
    /// rows of unfrozen vertices at frozen columns follow from
    /// skew-symmetrizability and the frozen block is zero.
    pub fn from_columns(
        vertices: impl IntoIterator<Item = i64>,
        frozen: impl IntoIterator<Item = i64>,
        d: BTreeMap<i64, i64>,
        columns: &BTreeMap<i64, ExpVec>,
    ) -> Result<Self> {
        let frozen: BTreeSet<i64> = frozen.into_iter().collect();
        let mut entries = BTreeMap::new();
        for (&k, col) in columns {
            if frozen.contains(&k) {
                return domain(format!("column {k} given for a frozen vertex"));
            }
            for (i, x) in col.iter() {
                entries.insert((i, k), BEntry::from_integer(x));
                if frozen.contains(&i) {
                    let (di, dk) = (d.get(&i).copied().unwrap_or(1), d.get(&k).copied().unwrap_or(1));
                    entries.insert((k, i), -BEntry::new(di * x, dk));
                }
            }
        }
        Self::new(vertices, frozen, d, entries)
    }

    fn validate(&self) -> Result<()> {
        let vs: BTreeSet<i64> = self.vertices.iter().copied().collect();
        if !self.frozen.is_subset(&vs) {
            return domain("frozen set is not contained in the vertex set");
        }
        if self.d.keys().copied().collect::<BTreeSet<_>>() != vs {
            return domain("symmetrizers must be given for exactly the vertices");
        }
        if let Some((i, _)) = self.d.iter().find(|(_, &x)| x <= 0) {
            return domain(format!("symmetrizer of {i} is not positive"));
        }
        for (&(i, j), x) in &self.b {
            if !vs.contains(&i) || !vs.contains(&j) {
                return domain(format!("entry ({i},{j}) outside the vertex set"));
            }
            if i == j {
                return domain(format!("diagonal entry b_{i}{i} is nonzero"));
            }
            if !self.frozen.contains(&j) && !x.is_integer() {
                return domain(format!("b_({i},{j}) = {x} is not an integer in an unfrozen column"));
            }
            if *x.denom() > 2 {
                return domain(format!("b_({i},{j}) = {x} has a denominator beyond 2"));
            }
        }
        for &i in &self.vertices {
            for &j in &self.vertices {
                if i < j && self.b(i, j) * self.d[&i] != -(self.b(j, i) * self.d[&j]) {
                    return domain(format!("d_i b_ij = -d_j b_ji fails at ({i},{j})"));
                }
            }
        }
        if let Some(l) = &self.lambda {
            for (i, j, _) in l.upper_entries() {
                if !vs.contains(&i) || !vs.contains(&j) {
                    return domain(format!("Lambda entry ({i},{j}) outside the vertex set"));
                }
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[i64] {
        &self.vertices
    }

    pub fn contains(&self, i: i64) -> bool {
        self.vertices.binary_search(&i).is_ok()
    }

    pub fn frozen(&self) -> &BTreeSet<i64> {
        &self.frozen
    }

    pub fn is_frozen(&self, i: i64) -> bool {
        self.frozen.contains(&i)
    }

    pub fn unfrozen(&self) -> Vec<i64> {
        self.vertices.iter().copied().filter(|i| !self.frozen.contains(i)).collect()
    }

    pub fn d(&self, i: i64) -> i64 {
        self.d[&i]
    }

    pub fn symmetrizers(&self) -> &BTreeMap<i64, i64> {
        &self.d
    }

    pub fn b(&self, i: i64, j: i64) -> BEntry {
        self.b.get(&(i, j)).copied().unwrap_or_else(BEntry::zero)
    }

    /// Nonzero entries in `(i, j)` order.
    pub fn b_entries(&self) -> impl Iterator<Item = ((i64, i64), BEntry)> + '_ {
        self.b.iter().map(|(k, v)| (*k, *v))
    }

    /// Integer entry of an unfrozen column.
    pub fn b_int(&self, i: i64, k: i64) -> i64 {
        let x = self.b(i, k);
        debug_assert!(x.is_integer());
        x.to_integer()
    }

    pub fn lambda(&self) -> Option<&SkewForm> {
        self.lambda.as_ref()
    }

    pub fn is_quantum(&self) -> bool {
        self.lambda.is_some()
    }

    pub fn with_lambda(&self, lambda: SkewForm) -> Result<Self> {
        let mut s = self.clone();
        s.lambda = Some(lambda);
        s.validate()?;
        Ok(s)
    }

    pub fn classical(&self) -> Self {
        Seed { lambda: None, ..self.clone() }
    }

    /// Overwrites `b_ij` and the skew-symmetrizable partner `b_ji`.
    pub fn set_b(&mut self, i: i64, j: i64, x: BEntry) -> Result<()> {
        let y = -x * BEntry::new(self.d(i), self.d(j));
        for (key, val) in [((i, j), x), ((j, i), y)] {
            if val.is_zero() {
                self.b.remove(&key);
            } else {
                self.b.insert(key, val);
            }
        }
        self.validate()
    }

    /// `p*(e_k) = Σ_i b_ik f_i` for unfrozen `k`.
    pub fn col(&self, k: i64) -> ExpVec {
        ExpVec::from_pairs(self.vertices.iter().map(|&i| (i, self.b_int(i, k))))
    }

    /// `p*(n) = Σ_k n_k p*(e_k)`.
    pub fn p_star(&self, n: &ExpVec) -> ExpVec {
        let mut out = ExpVec::zero();
        for (k, c) in n.iter() {
            out = &out + &self.col(k).scale(c);
        }
        out
    }

    /// `B̃` as a rational matrix, rows = vertices, columns = unfrozen vertices.
    pub fn b_tilde(&self) -> QMatrix {
        let uf = self.unfrozen();
        let rows: Vec<Vec<Q>> =
            self.vertices.iter().map(|&i| uf.iter().map(|&k| q(self.b_int(i, k))).collect()).collect();
        if uf.is_empty() {
            return QMatrix::zeros(self.vertices.len(), 0);
        }
        QMatrix::from_rows(&rows)
    }

    /// The injectivity assumption: `B̃` has full column rank.
    pub fn is_injective(&self) -> bool {
        let uf = self.unfrozen();
        uf.is_empty() || self.b_tilde().rank() == uf.len()
    }

    /// Verifies `Λ · col_k B̃ = −δ_k e_k` and returns the `δ_k`.
    pub fn check_compatible(&self) -> Result<BTreeMap<i64, i64>> {
        let l = self.lambda.as_ref().ok_or_else(|| Error::Domain("seed has no Lambda".into()))?;
        let mut deltas = BTreeMap::new();
        for k in self.unfrozen() {
            let w = l.apply(&self.col(k));
            for &i in &self.vertices {
                let x = w.get(i);
                let ok = if i == k { x < 0 } else { x == 0 };
                if !ok {
                    return Err(Error::Incompatible { row: i, col: k });
                }
            }
            deltas.insert(k, -w.get(k));
        }
        Ok(deltas)
    }

    fn require_unfrozen(&self, k: i64) -> Result<()> {
        if !self.contains(k) {
            return domain(format!("{k} is not a vertex"));
        }
        if self.is_frozen(k) {
            return domain(format!("cannot mutate at frozen vertex {k}"));
        }
        Ok(())
    }

    /// `μ_k` on the exchange matrix only.
    pub fn mutate_bmatrix(&self, k: i64) -> Result<Self> {
        self.require_unfrozen(k)?;
        let mut b = self.b.clone();
        let col: Vec<(i64, BEntry)> =
            self.vertices.iter().map(|&i| (i, self.b(i, k))).filter(|(_, x)| !x.is_zero()).collect();
        let row: Vec<(i64, BEntry)> =
            self.vertices.iter().map(|&j| (j, self.b(k, j))).filter(|(_, x)| !x.is_zero()).collect();
        for &(i, bik) in &col {
            for &(j, bkj) in &row {
                if i == k || j == k || i == j {
                    continue;
                }
                let delta = pos(bik) * pos(bkj) - pos(-bik) * pos(-bkj);
                if delta.is_zero() {
                    continue;
                }
                let e = b.entry((i, j)).or_insert_with(BEntry::zero);
                *e += delta;
                if e.is_zero() {
                    b.remove(&(i, j));
                }
            }
        }
        for (i, _) in &col {
            b.insert((*i, k), -self.b(*i, k));
        }
        for (j, _) in &row {
            b.insert((k, *j), -self.b(k, *j));
        }
        Ok(Seed { b, ..self.clone() })
    }

    /// `ψ^M(f_k) = −f_k + Σ_j [−b_jk]₊ f_j`.
    fn psi_fk(&self, k: i64) -> ExpVec {
        let mut v = ExpVec::unit(k).scale(-1);
        for &j in &self.vertices {
            v.add_at(j, (-self.b_int(j, k)).max(0));
        }
        v
    }

    /// `μ_k` on `Λ`: `Λ'(m, m') = λ(ψ m, ψ m')`.
    pub fn mutate_lambda(&self, k: i64) -> Result<Self> {
        self.require_unfrozen(k)?;
        let l = self.lambda.as_ref().ok_or_else(|| Error::Domain("seed has no Lambda".into()))?;
        let psi = self.psi_fk(k);
        let mut out = l.clone();
        for &i in &self.vertices {
            if i != k {
                out.set(i, k, l.pair(&ExpVec::unit(i), &psi));
            }
        }
        Ok(Seed { lambda: Some(out), ..self.clone() })
    }

    /// Full seed mutation (exchange matrix and, if present, `Λ`).
    pub fn mutate(&self, k: i64) -> Result<Self> {
        let s = if self.lambda.is_some() { self.mutate_lambda(k)? } else { self.clone() };
        let mut out = s.mutate_bmatrix(k)?;
        out.lambda = s.lambda;
        Ok(out)
    }

    pub fn mutate_seq(&self, seq: &[i64]) -> Result<Self> {
        seq.iter().try_fold(self.clone(), |s, &k| s.mutate(k))
    }

    /// The tropical mutation `φ` from this seed to `μ_k` of it.
    pub fn tropical_mutate(&self, m: &ExpVec, k: i64) -> Result<ExpVec> {
        self.require_unfrozen(k)?;
        let mk = m.get(k);
        let mut out = m.clone();
        out.set(k, -mk);
        for &i in &self.vertices {
            if i == k {
                continue;
            }
            let b = self.b_int(i, k);
            out.add_at(i, b.max(0) * mk.max(0) - (-b).max(0) * (-mk).max(0));
        }
        Ok(out)
    }

    /// Tropical transport along a mutation sequence (applied left to right).
    pub fn tropical_transport(&self, m: &ExpVec, seq: &[i64]) -> Result<ExpVec> {
        let mut s = self.clone();
        let mut m = m.clone();
        for &k in seq {
            m = s.tropical_mutate(&m, k)?;
            s = s.mutate_bmatrix(k)?;
        }
        Ok(m)
    }

    /// `s^op`: `B ↦ −B`, `Λ ↦ −Λ`.
    pub fn opposite(&self) -> Self {
        Seed {
            b: self.b.iter().map(|(k, x)| (*k, -x)).collect(),
            lambda: self.lambda.as_ref().map(SkewForm::negated),
            ..self.clone()
        }
    }

    /// Restriction to a vertex subset; `frozen` becomes the frozen set of the result.
    pub fn restrict(&self, keep: &BTreeSet<i64>, frozen: &BTreeSet<i64>) -> Result<Self> {
        let mut s = Seed {
            vertices: self.vertices.iter().copied().filter(|v| keep.contains(v)).collect(),
            frozen: frozen.intersection(keep).copied().collect(),
            d: self.d.iter().filter(|(v, _)| keep.contains(v)).map(|(a, b)| (*a, *b)).collect(),
            b: self
                .b
                .iter()
                .filter(|((i, j), _)| keep.contains(i) && keep.contains(j))
                .map(|(a, b)| (*a, *b))
                .collect(),
            lambda: self.lambda.as_ref().map(|l| l.restrict(|i| keep.contains(&i))),
        };
        if s.lambda.as_ref().is_some_and(SkewForm::is_zero) && keep.is_empty() {
            s.lambda = None;
        }
        s.validate()?;
        Ok(s)
    }

    /// Freezes `f` (matrices unchanged).
    pub fn freeze(&self, f: &BTreeSet<i64>) -> Result<Self> {
        if let Some(k) = f.iter().find(|k| !self.contains(**k) || self.is_frozen(**k)) {
            return domain(format!("{k} is not an unfrozen vertex"));
        }
        let mut s = self.clone();
        s.frozen.extend(f.iter().copied());
        Ok(s)
    }

    /// The permutation action `(σs)`: vertex `i` is renamed `σ(i)`.
    pub fn relabel(&self, sigma: impl Fn(i64) -> i64) -> Result<Self> {
        let mut lambda = None;
        if let Some(l) = &self.lambda {
            let mut out = SkewForm::new();
            for (i, j, x) in l.upper_entries() {
                out.set(sigma(i), sigma(j), x);
            }
            lambda = Some(out);
        }
        let s = Seed {
            vertices: {
                let mut v: Vec<i64> = self.vertices.iter().map(|&i| sigma(i)).collect();
                v.sort_unstable();
                v
            },
            frozen: self.frozen.iter().map(|&i| sigma(i)).collect(),
            d: self.d.iter().map(|(i, x)| (sigma(*i), *x)).collect(),
            b: self.b.iter().map(|((i, j), x)| ((sigma(*i), sigma(*j)), *x)).collect(),
            lambda,
        };
        if s.vertices.windows(2).any(|w| w[0] == w[1]) {
            return domain("relabeling is not injective");
        }
        s.validate()?;
        Ok(s)
    }

    /// Equality of the rows × unfrozen-columns block and of the unfrozen set.
    pub fn same_b_tilde(&self, other: &Seed) -> bool {
        self.vertices == other.vertices
            && self.frozen == other.frozen
            && self.unfrozen().iter().all(|&k| self.vertices.iter().all(|&i| self.b(i, k) == other.b(i, k)))
    }

    /// The seed of principal coefficients together with the frozen copies
    /// `k ↦ k'` and the map `var` on degrees.
    pub fn principal_seed(&self) -> Result<Principal> {
        let uf = self.unfrozen();
        let top = self.vertices.iter().copied().max().unwrap_or(0);
        let primes: BTreeMap<i64, i64> = uf.iter().enumerate().map(|(n, &k)| (k, top + 1 + n as i64)).collect();
        let mut entries = BTreeMap::new();
        let mut d = BTreeMap::new();
        for &k in &uf {
            d.insert(k, self.d(k));
            d.insert(primes[&k], self.d(k));
            for &j in &uf {
                entries.insert((k, j), self.b(k, j));
            }
            entries.insert((primes[&k], k), BEntry::one());
            entries.insert((k, primes[&k]), -BEntry::one());
        }
        let mut seed =
            Seed::new(uf.iter().copied().chain(primes.values().copied()), primes.values().copied(), d, entries)?;
        let var: BTreeMap<i64, ExpVec> = uf
            .iter()
            .map(|&k| (k, ExpVec::unit(k)))
            .chain(uf.iter().map(|&k| {
                let img = ExpVec::from_pairs(self.frozen.iter().map(|&j| (j, self.b_int(j, k))));
                (primes[&k], img)
            }))
            .collect();
        if let Some(l) = &self.lambda {
            let mut form = SkewForm::new();
            let vs = seed.vertices.clone();
            for (a, &i) in vs.iter().enumerate() {
                for &j in &vs[a + 1..] {
                    form.set(i, j, l.pair(&var[&i], &var[&j]));
                }
            }
            seed = seed.with_lambda(form)?;
        }
        Ok(Principal { seed, primes, var })
    }
}

/// Output of [`Seed::principal_seed`].
#[derive(Clone, Debug)]
pub struct Principal {
    pub seed: Seed,
    /// `k ↦ k'`.
    pub primes: BTreeMap<i64, i64>,
    /// `var(f_i)` for every vertex `i` of the principal seed.
    pub var: BTreeMap<i64, ExpVec>,
}

impl Principal {
    pub fn var(&self, m: &ExpVec) -> ExpVec {
        m.iter().fold(ExpVec::zero(), |acc, (i, c)| &acc + &self.var[&i].scale(c))
    }
}

/// `x^a` of `seed`, evaluated through `vars` and multiplied in `chart`.
///
/// `x^a = v^{-Σ_{i<j} a_i a_j λ_ij} x_{i_1}^{a_1} * x_{i_2}^{a_2} * ⋯` with
/// the factors in increasing vertex order; powers of a single variable are
/// untwisted.  Negative exponents are only allowed for monomial images.
fn eval_monomial(
    seed: &Seed,
    a: &ExpVec,
    vars: &BTreeMap<i64, TorusElement>,
    chart: Option<&SkewForm>,
) -> Result<TorusElement> {
    let mut out = TorusElement::one();
    for (i, e) in a.iter() {
        let x = &vars[&i];
        let factor = if e >= 0 {
            x.pow(e as u32, chart)
        } else {
            let (m, c) = match x.terms().next() {
                Some((m, c)) if x.len() == 1 && c.as_v_power() == Some(0) => (m.clone(), c),
                _ => return domain(format!("negative power of the non-monomial variable {i}")),
            };
            debug_assert!(c.as_v_power() == Some(0));
            TorusElement::monomial(m.scale(e))
        };
        out = out.mul(&factor, chart);
    }
    let twist = match seed.lambda() {
        Some(l) => {
            let pairs: Vec<(i64, i64)> = a.iter().collect();
            let mut t = 0;
            for (n, &(i, ai)) in pairs.iter().enumerate() {
                for &(j, aj) in &pairs[n + 1..] {
                    t += ai * aj * l.get(i, j);
                }
            }
            t
        }
        None => 0,
    };
    Ok(out.shift_v(-twist))
}

/// The two exchange monomials' positive parts for `μ_k`:
/// `(Σ[−b_jk]₊ f_j, Σ[b_ik]₊ f_i)`.
pub fn exchange_parts(seed: &Seed, k: i64) -> (ExpVec, ExpVec) {
    let col = seed.col(k);
    (col.negative_part(), col.positive_part())
}

/// Replaces `vars[k]` by the new cluster variable of `μ_k seed`.
///
/// `vars` gives the cluster variables of `seed` in a reference chart whose
/// form is `chart`; the exchange relation is evaluated there and divided
/// on the right by `vars[k]`.
pub fn mutate_variables(
    seed: &Seed,
    k: i64,
    vars: &BTreeMap<i64, TorusElement>,
    chart: Option<&SkewForm>,
) -> Result<BTreeMap<i64, TorusElement>> {
    seed.require_unfrozen(k)?;
    let (neg, posi) = exchange_parts(seed, k);
    let fk = ExpVec::unit(k);
    let lam = |a: &ExpVec| seed.lambda().map_or(0, |l| l.pair(a, &fk));
    let num = &eval_monomial(seed, &neg, vars, chart)?.shift_v(lam(&neg))
        + &eval_monomial(seed, &posi, vars, chart)?.shift_v(lam(&posi));
    let new = num
        .exact_divide(&vars[&k], chart)
        .map_err(|_| Error::NotLaurent(format!("exchange numerator at {k} is not divisible by x_{k}")))?;
    let mut out = vars.clone();
    out.insert(k, new);
    Ok(out)
}

/// A seed together with its cluster variables written in a fixed reference chart.
#[derive(Clone, Debug)]
pub struct Cluster {
    pub seed: Seed,
    pub vars: BTreeMap<i64, TorusElement>,
    reference: Option<SkewForm>,
}

impl Cluster {
    /// The initial cluster: every variable is its own monomial.
    pub fn initial(seed: &Seed) -> Self {
        let vars = seed.vertices().iter().map(|&i| (i, TorusElement::monomial(ExpVec::unit(i)))).collect();
        Cluster { seed: seed.clone(), vars, reference: seed.lambda().cloned() }
    }

    pub fn reference_form(&self) -> Option<&SkewForm> {
        self.reference.as_ref()
    }

    pub fn mutate(&self, k: i64) -> Result<Self> {
        let vars = mutate_variables(&self.seed, k, &self.vars, self.reference.as_ref())?;
        Ok(Cluster { seed: self.seed.mutate(k)?, vars, reference: self.reference.clone() })
    }

    pub fn mutate_seq(&self, seq: &[i64]) -> Result<Self> {
        seq.iter().try_fold(self.clone(), |c, &k| c.mutate(k))
    }

    /// The cluster monomial `x^a` of the current seed in the reference chart.
    pub fn monomial(&self, a: &ExpVec) -> Result<TorusElement> {
        if a.iter().any(|(i, e)| e < 0 && !self.seed.is_frozen(i)) {
            return domain("cluster monomials have nonnegative unfrozen exponents");
        }
        eval_monomial(&self.seed, a, &self.vars, self.reference.as_ref())
    }
}

/// Rewrites `z` (an element of chart `s`) in chart `μ_path(s)`.
pub fn change_chart(z: &TorusElement, path: &[i64], s: &Seed) -> Result<TorusElement> {
    let mut z = z.clone();
    let mut seed = s.clone();
    for &k in path {
        let next = seed.mutate(k)?;
        z = change_chart_step(&z, k, &seed, &next)?;
        seed = next;
    }
    Ok(z)
}

fn change_chart_step(z: &TorusElement, k: i64, s: &Seed, next: &Seed) -> Result<TorusElement> {
    let form = next.lambda();
    // Images of the old variables in the new chart: x_i ↦ x'_i for i ≠ k, and
    // x_k is recovered from the exchange relation of μ_k applied to `next`.
    let identity: BTreeMap<i64, TorusElement> =
        next.vertices().iter().map(|&i| (i, TorusElement::monomial(ExpVec::unit(i)))).collect();
    let back = mutate_variables(next, k, &identity, form)?;
    let xk = back[&k].clone();
    // Clear negative powers of x_k by right-multiplying with x_k^e.
    let e = (-z.min_exponent(k).unwrap_or(0)).max(0);
    let shifted = z.mul(&TorusElement::monomial(ExpVec::unit(k).scale(e)), s.lambda());
    let mut image = TorusElement::zero();
    for (m, c) in shifted.terms() {
        let mono = eval_monomial(s, m, &back, form)?;
        image = &image + &mono.scale(c);
    }
    let den = xk.pow(e as u32, form);
    image.exact_divide(&den, form).map_err(|_| Error::NotLaurent(format!("{z} after mutation at {k}")))
}

/// Integer `b` entry, for building seeds by hand.
pub fn bi(x: i64) -> BEntry {
    BEntry::from_integer(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds(vs: &[i64]) -> BTreeMap<i64, i64> {
        vs.iter().map(|&v| (v, 1)).collect()
    }

    /// SL2 appendix seed: vertices 0,1,2, unfrozen 1, Λ = B̃ rows (0,-1,0),(1,0,1),(0,-1,0).
    fn sl2() -> Seed {
        let cols = BTreeMap::from([(1, ExpVec::from_pairs([(0, -1), (2, -1)]))]);
        let s = Seed::from_columns([0, 1, 2], [0, 2], ds(&[0, 1, 2]), &cols).unwrap();
        let mut l = SkewForm::new();
        l.set(0, 1, -1);
        l.set(1, 2, 1);
        s.with_lambda(l).unwrap()
    }

    #[test]
    fn sl2_compatibility() {
        let s = sl2();
        assert_eq!(s.check_compatible().unwrap(), BTreeMap::from([(1, 2)]));
        let m = s.mutate(1).unwrap();
        assert_eq!(m.check_compatible().unwrap(), BTreeMap::from([(1, 2)]));
        assert_eq!(m.mutate(1).unwrap(), s);
    }

    #[test]
    fn zero_lambda_is_incompatible() {
        let s = sl2().classical().with_lambda(SkewForm::new()).unwrap();
        assert!(matches!(s.check_compatible(), Err(Error::Incompatible { .. })));
    }

    #[test]
    fn rank_two_sign_flip() {
        let s = Seed::new([1, 2], [], ds(&[1, 2]), [((1, 2), bi(1)), ((2, 1), bi(-1))]).unwrap();
        let m = s.mutate_bmatrix(1).unwrap();
        assert_eq!(m.b(1, 2), bi(-1));
        assert_eq!(m.b(2, 1), bi(1));
        assert!(s.mutate_bmatrix(3).is_err());
    }

    #[test]
    fn frozen_mutation_rejected() {
        assert!(sl2().mutate(0).is_err());
    }

    #[test]
    fn zero_frozen_row_of_lambda_stays_zero() {
        // vertex 3 is frozen, uncoupled, with a zero Λ row.
        let cols = BTreeMap::from([(1, ExpVec::from_pairs([(0, -1), (2, -1)]))]);
        let s = Seed::from_columns([0, 1, 2, 3], [0, 2, 3], ds(&[0, 1, 2, 3]), &cols).unwrap();
        let mut l = SkewForm::new();
        l.set(0, 1, -1);
        l.set(1, 2, 1);
        let s = s.with_lambda(l).unwrap();
        let m = s.mutate_lambda(1).unwrap();
        assert!((0..3).all(|j| m.lambda().unwrap().get(3, j) == 0));
    }

    #[test]
    fn sl2_variable_mutation() {
        let c = Cluster::initial(&sl2().classical());
        let x1 = &c.mutate(1).unwrap().vars[&1];
        assert_eq!(*x1, "x[0]*x[1]^-1*x[2] + x[1]^-1".parse().unwrap());
        let q = Cluster::initial(&sl2());
        let qx1 = &q.mutate(1).unwrap().vars[&1];
        assert!(qx1.is_bar_invariant());
        assert_eq!(qx1.classical(), *x1);
        assert_eq!(q.mutate_seq(&[1, 1]).unwrap().vars, q.vars);
    }

    #[test]
    fn rank_one_zero_column() {
        let s = Seed::new([1], [], ds(&[1]), []).unwrap();
        let c = Cluster::initial(&s).mutate(1).unwrap();
        assert_eq!(c.vars[&1], "2*x[1]^-1".parse().unwrap());
    }

    #[test]
    fn chart_change_examples() {
        let s = sl2();
        let x1 = TorusElement::monomial(ExpVec::unit(1));
        let img = change_chart(&x1, &[1], &s).unwrap();
        // x_1 = (x'^{f0+f2} + 1) x'_1^{-1}, up to the twist of each summand.
        assert_eq!(img.classical(), "x[0]*x[1]^-1*x[2] + x[1]^-1".parse().unwrap());
        assert_eq!(change_chart(&x1, &[1, 1], &s).unwrap(), x1);
        let inv = TorusElement::monomial(ExpVec::unit(1).scale(-1));
        assert!(matches!(change_chart(&inv, &[1], &s), Err(Error::NotLaurent(_))));
    }

    #[test]
    fn tropical_examples() {
        let s = sl2();
        let m = s.tropical_mutate(&ExpVec::unit(1), 1).unwrap();
        // −f_1 + Σ[b_i1]₊ f_i; column is (−1, 0, −1) so nothing is added.
        assert_eq!(m, ExpVec::unit(1).scale(-1));
        let m0 = ExpVec::unit(0);
        assert_eq!(s.tropical_mutate(&m0, 1).unwrap(), m0);
        let back = s.mutate(1).unwrap().tropical_mutate(&m, 1).unwrap();
        assert_eq!(back, ExpVec::unit(1));
    }

    #[test]
    fn opposite_is_involutive() {
        let s = sl2();
        assert_eq!(s.opposite().opposite(), s);
        assert_eq!(s.opposite().check_compatible().unwrap(), s.check_compatible().unwrap());
    }

    #[test]
    fn principal_examples() {
        let s = Seed::new([1], [], ds(&[1]), []).unwrap();
        let p = s.principal_seed().unwrap();
        assert_eq!(p.seed.col(1), ExpVec::unit(p.primes[&1]));
        let p2 = sl2().principal_seed().unwrap();
        assert_eq!(p2.var[&1], ExpVec::unit(1));
        assert_eq!(p2.seed.check_compatible().unwrap(), BTreeMap::from([(1, 2)]));
    }

    #[test]
    fn half_integers_only_between_frozen() {
        let bad = Seed::new([1, 2], [2], ds(&[1, 2]), [((2, 1), BEntry::new(1, 2)), ((1, 2), BEntry::new(-1, 2))]);
        assert!(bad.is_err());
        let ok = Seed::new([1, 2], [1, 2], ds(&[1, 2]), [((2, 1), BEntry::new(1, 2)), ((1, 2), BEntry::new(-1, 2))]);
        assert!(ok.is_ok());
    }
}
