//! Pointed elements: degrees, F-polynomials, dominance, freezing and
//! similarity transport.
//!
//! A pointed element is stored as its degree `m` together with the
//! coefficients `c_n` of `x^{m + B̃n}` (normalized monomials), so
//! `z = Σ_n c_n x^{m + p*(n)}` with `c_0 = 1`.  With this convention a
//! bar-invariant element has bar-invariant coefficients, and the paper's
//! `x^m(1 + y_2 + y_1y_2 + …)` has every `c_n = 1`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use crate::error::{domain, Error, Result};
use crate::laurent::VLaurent;
use crate::linalg::{q, QMatrix, Q};
use crate::seed::Seed;
use crate::torus::{ExpVec, TorusElement};

/// Solves `B̃ n = d` for the unique `n` (injectivity assumed and checked).
#[derive(Clone, Debug)]
pub struct DegreeSolver {
    vertices: Vec<i64>,
    uf: Vec<i64>,
    left_inv: QMatrix,
    seed: Seed,
}

impl DegreeSolver {
    pub fn new(seed: &Seed) -> Result<Self> {
        let uf = seed.unfrozen();
        let left_inv = if uf.is_empty() {
            QMatrix::zeros(0, seed.vertices().len())
        } else {
            seed.b_tilde()
                .left_inverse()
                .ok_or_else(|| Error::Domain("p* is not injective: B̃ lacks full column rank".into()))?
        };
        Ok(DegreeSolver { vertices: seed.vertices().to_vec(), uf, left_inv, seed: seed.clone() })
    }

    pub fn seed(&self) -> &Seed {
        &self.seed
    }

    /// Rational coordinates `L d` for the left inverse `L` of `B̃`.
    fn coords(&self, d: &ExpVec) -> Vec<Q> {
        let dv: Vec<Q> = self.vertices.iter().map(|&i| q(d.get(i))).collect();
        if self.uf.is_empty() {
            return Vec::new();
        }
        self.left_inv.mul_vec(&dv)
    }

    /// The integral `n` with `B̃ n = d`, if any.
    pub fn solve(&self, d: &ExpVec) -> Option<ExpVec> {
        if d.support().any(|i| !self.seed.contains(i)) {
            return None;
        }
        let c = self.coords(d);
        if c.iter().any(|x| !x.is_integer()) {
            return None;
        }
        let n = ExpVec::from_pairs(self.uf.iter().zip(&c).map(|(&k, x)| (k, x.to_integer().try_into().unwrap())));
        (self.seed.p_star(&n) == *d).then_some(n)
    }

    /// The witness `n ≥ 0` with `m1 = m2 + B̃ n`, i.e. `m1 ≼ m2`.
    pub fn dominance_leq(&self, m1: &ExpVec, m2: &ExpVec) -> Option<ExpVec> {
        self.solve(&(m1 - m2)).filter(ExpVec::is_nonnegative)
    }

    /// A `≺`-maximal degree among the terms of `z`.
    pub fn maximal_degree(&self, z: &TorusElement) -> Option<ExpVec> {
        // The maximal degrees minimize the coordinate sum of the left inverse.
        z.terms().map(|(m, _)| m).min_by(|a, b| self.height(a).cmp(&self.height(b)).then(a.cmp(b))).cloned()
    }

    /// Sum of the rational coordinates; strictly monotone along `≺`.
    fn height(&self, m: &ExpVec) -> Q {
        self.coords(m).into_iter().fold(Q::zero(), |a, b| a + b)
    }
}

/// `x^m · (1 + Σ c_n y^n)`, see the module docs for the convention.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointedElement {
    degree: ExpVec,
    fpoly: BTreeMap<ExpVec, VLaurent>,
}

impl PointedElement {
    pub fn new(degree: ExpVec, fpoly: BTreeMap<ExpVec, VLaurent>) -> Result<Self> {
        if fpoly.get(&ExpVec::zero()).is_none_or(|c| *c != VLaurent::one()) {
            return domain("F-polynomial must have constant term 1");
        }
        if let Some(n) = fpoly.keys().find(|n| !n.is_nonnegative()) {
            return domain(format!("F-polynomial key {n} is not in N^⊕"));
        }
        let fpoly = fpoly.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(PointedElement { degree, fpoly })
    }

    /// `x^m` alone.
    pub fn monomial(degree: ExpVec) -> Self {
        PointedElement { degree, fpoly: BTreeMap::from([(ExpVec::zero(), VLaurent::one())]) }
    }

    pub fn degree(&self) -> &ExpVec {
        &self.degree
    }

    pub fn fpoly(&self) -> &BTreeMap<ExpVec, VLaurent> {
        &self.fpoly
    }

    pub fn coeff(&self, n: &ExpVec) -> VLaurent {
        self.fpoly.get(n).cloned().unwrap_or_default()
    }

    /// The F-polynomial keys, i.e. the support `{n : c_n ≠ 0}`.
    pub fn support(&self) -> BTreeSet<ExpVec> {
        self.fpoly.keys().cloned().collect()
    }

    /// Drop every term of total `|n|` above `order`.
    pub fn truncate(&self, order: i64) -> Self {
        PointedElement {
            degree: self.degree.clone(),
            fpoly: self.fpoly.iter().filter(|(n, _)| n.total() <= order).map(|(n, c)| (n.clone(), c.clone())).collect(),
        }
    }

    /// The Laurent expansion in the chart of `seed`.
    pub fn expand(&self, seed: &Seed) -> TorusElement {
        TorusElement::from_terms(self.fpoly.iter().map(|(n, c)| (&self.degree + &seed.p_star(n), c.clone())))
    }

    pub fn is_bar_invariant(&self) -> bool {
        self.fpoly.values().all(VLaurent::is_bar_invariant)
    }

    /// Product through the Laurent expansion, renormalized at the sum of degrees.
    pub fn mul(&self, other: &Self, solver: &DegreeSolver) -> Result<Self> {
        let seed = solver.seed();
        let z = self.expand(seed).mul(&other.expand(seed), seed.lambda());
        to_pointed_at(&z, &(&self.degree + &other.degree), solver)
    }
}

/// Writes `z` as `c · x^m(1 + …)` around the given lead degree `m`; `c`
/// must be a power of `v`, which is divided out.
pub fn to_pointed_at(z: &TorusElement, m: &ExpVec, solver: &DegreeSolver) -> Result<PointedElement> {
    let z = z.normalize(m).map_err(|e| Error::NotPointed(e.to_string()))?;
    let mut fpoly = BTreeMap::new();
    for (e, c) in z.terms() {
        let n = solver
            .dominance_leq(e, m)
            .ok_or_else(|| Error::NotPointed(format!("term x^{e} is not dominated by x^{m}")))?;
        fpoly.insert(n, c.clone());
    }
    PointedElement::new(m.clone(), fpoly)
}

/// Finds the unique `≺`-maximal degree of `z` and returns the pointed form.
pub fn to_pointed(z: &TorusElement, solver: &DegreeSolver) -> Result<PointedElement> {
    if z.is_zero() {
        return Err(Error::NotPointed("zero has no degree".into()));
    }
    let lead = solver.maximal_degree(z).unwrap();
    to_pointed_at(z, &lead, solver)
}

/// `m1 ≼_s m2`, with witness `n`.
pub fn dominance_leq(m1: &ExpVec, m2: &ExpVec, seed: &Seed) -> Result<Option<ExpVec>> {
    Ok(DegreeSolver::new(seed)?.dominance_leq(m1, m2))
}

/// The freezing operator: drop every `n` whose support meets `frozen`.
pub fn freeze_element(z: &PointedElement, frozen: &BTreeSet<i64>) -> PointedElement {
    PointedElement {
        degree: z.degree.clone(),
        fpoly: z
            .fpoly
            .iter()
            .filter(|(n, _)| n.support().all(|k| !frozen.contains(&k)))
            .map(|(n, c)| (n.clone(), c.clone()))
            .collect(),
    }
}

/// Checks that `src` and `dst` are similar with the identity permutation
/// and `ρ = 1`: same unfrozen set, same unfrozen block and symmetrizers.
pub fn check_similar(src: &Seed, dst: &Seed) -> Result<()> {
    let uf = src.unfrozen();
    if uf != dst.unfrozen() {
        return domain("seeds have different unfrozen sets");
    }
    for &i in &uf {
        if src.d(i) != dst.d(i) {
            return domain(format!("symmetrizers differ at {i}"));
        }
        for &j in &uf {
            if src.b(i, j) != dst.b(i, j) {
                return domain(format!("b_({i},{j}) differs"));
            }
        }
    }
    Ok(())
}

/// Carries the F-polynomial of `z` (pointed in `src`) to degree `m_new` in
/// the similar seed `dst`.
pub fn transport_similar(z: &PointedElement, src: &Seed, dst: &Seed, m_new: &ExpVec) -> Result<PointedElement> {
    check_similar(src, dst)?;
    let uf: BTreeSet<i64> = src.unfrozen().into_iter().collect();
    let proj = |m: &ExpVec| m.restrict(|i| uf.contains(&i));
    if proj(m_new) != proj(&z.degree) {
        return domain(format!("unfrozen projections differ: {} vs {}", proj(m_new), proj(&z.degree)));
    }
    if let Some(i) = m_new.support().find(|&i| !dst.contains(i)) {
        return domain(format!("degree uses vertex {i} outside the target seed"));
    }
    Ok(PointedElement { degree: m_new.clone(), fpoly: z.fpoly.clone() })
}

/// `b_jk ≥ 0` for every unfrozen `k`.
pub fn is_optimized(seed: &Seed, j: i64) -> Result<bool> {
    if !seed.is_frozen(j) {
        return domain(format!("{j} is not frozen"));
    }
    Ok(seed.unfrozen().iter().all(|&k| !seed.b(j, k).is_negative()))
}

/// Checks `(φ_{s_j,s}(m))_j ≥ 0` for every listed frozen `j`, where each
/// sequence must lead to a seed in which `j` is optimized.
pub fn dominant_representative_test(m: &ExpVec, seed: &Seed, optimizers: &BTreeMap<i64, Vec<i64>>) -> Result<bool> {
    for (&j, seq) in optimizers {
        let target = seed.mutate_seq(seq)?;
        if !is_optimized(&target, j)? {
            return domain(format!("sequence {seq:?} does not optimize {j}"));
        }
        if seed.tropical_transport(m, seq)?.get(j) < 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

fn write_y(f: &mut fmt::Formatter<'_>, n: &ExpVec) -> fmt::Result {
    let parts: Vec<String> =
        n.iter().map(|(k, e)| if e == 1 { format!("y[{k}]") } else { format!("y[{k}]^{e}") }).collect();
    write!(f, "{}", parts.join("*"))
}

impl fmt::Display for PointedElement {
    /// `deg: {2:-1, 6:1}; F: 1 + y[2] + y[1]*y[2]`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "deg: {}; F: ", self.degree)?;
        let mut keys: Vec<&ExpVec> = self.fpoly.keys().collect();
        keys.sort_by(|a, b| a.total().cmp(&b.total()).then(a.cmp(b)));
        for (idx, n) in keys.into_iter().enumerate() {
            let c = &self.fpoly[n];
            let single = c.len() == 1;
            let (neg, body) = if single {
                let (k, coef) = c.terms().next().unwrap();
                let mag = VLaurent::term(coef.abs(), k);
                (coef.is_negative(), mag.to_string())
            } else {
                (false, format!("({c})"))
            };
            if idx > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            if n.is_zero() {
                write!(f, "{body}")?;
            } else {
                if body != "1" {
                    write!(f, "{body}*")?;
                }
                write_y(f, n)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PointedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PointedElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("bad pointed element {s:?}: {why}"));
        let rest = s.trim().strip_prefix("deg:").ok_or_else(|| bad("missing deg:"))?;
        let (deg, fpart) = rest.split_once(';').ok_or_else(|| bad("missing ;"))?;
        let degree: ExpVec = deg.parse()?;
        let fpart = fpart.trim().strip_prefix("F:").ok_or_else(|| bad("missing F:"))?;
        // Split on top-level signs (outside parentheses and exponents).
        let compact: String = fpart.chars().filter(|c| !c.is_whitespace()).collect();
        let mut summands: Vec<(bool, String)> = Vec::new();
        let (mut cur, mut neg, mut depth, mut prev) = (String::new(), false, 0i32, '\0');
        for ch in compact.chars() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            if (ch == '+' || ch == '-') && depth == 0 && prev != '^' {
                if !cur.is_empty() {
                    summands.push((neg, std::mem::take(&mut cur)));
                }
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
            prev = ch;
        }
        if cur.is_empty() {
            return Err(bad("empty F-polynomial"));
        }
        summands.push((neg, cur));
        let mut fpoly: BTreeMap<ExpVec, VLaurent> = BTreeMap::new();
        for (neg, summand) in summands {
            let (coef_part, ys) = match summand.find("y[") {
                Some(0) => ("1", summand.as_str()),
                Some(p) => {
                    let (c, y) = summand.split_at(p);
                    (c.strip_suffix('*').ok_or_else(|| bad("expected * before y"))?, y)
                }
                None => (summand.as_str(), ""),
            };
            let coef_text = coef_part.trim_start_matches('(').trim_end_matches(')');
            let mut c: VLaurent = coef_text.parse()?;
            if neg {
                c = -c;
            }
            let mut n = ExpVec::zero();
            for y in ys.split('*').filter(|t| !t.is_empty()) {
                let inner = y.strip_prefix("y[").ok_or_else(|| bad("expected y[k]"))?;
                let (k, tail) = inner.split_once(']').ok_or_else(|| bad("unclosed y["))?;
                let k: i64 = k.parse().map_err(|_| bad("index"))?;
                let e: i64 = match tail {
                    "" => 1,
                    t => t.strip_prefix('^').and_then(|e| e.parse().ok()).ok_or_else(|| bad("exponent"))?,
                };
                n.add_at(k, e);
            }
            let slot = fpoly.entry(n).or_default();
            *slot += &c;
        }
        PointedElement::new(degree, fpoly)
    }
}
