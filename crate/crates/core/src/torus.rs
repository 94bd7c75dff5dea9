//! The quantum torus: `Z[v^±]`-combinations of Laurent monomials `x^m`
//! multiplied with the twist `x^m * x^n = v^{λ(m,n)} x^{m+n}`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::laurent::VLaurent;

/// A sparse integer vector indexed by vertex ids.  Used both for degrees
/// `m = Σ m_i f_i` and for `n = Σ n_k e_k`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExpVec(BTreeMap<i64, i64>);

impl ExpVec {
    pub fn zero() -> Self {
        ExpVec(BTreeMap::new())
    }

    /// The basis vector at `i` (`f_i` or `e_i` depending on context).
    pub fn unit(i: i64) -> Self {
        Self::from_pairs([(i, 1)])
    }

    pub fn from_pairs<I: IntoIterator<Item = (i64, i64)>>(pairs: I) -> Self {
        let mut v = Self::zero();
        for (i, x) in pairs {
            v.add_at(i, x);
        }
        v
    }

    pub fn get(&self, i: i64) -> i64 {
        self.0.get(&i).copied().unwrap_or(0)
    }

    pub fn set(&mut self, i: i64, x: i64) {
        if x == 0 {
            self.0.remove(&i);
        } else {
            self.0.insert(i, x);
        }
    }

    pub fn add_at(&mut self, i: i64, x: i64) {
        let y = self.get(i) + x;
        self.set(i, y);
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.0.iter().map(|(i, x)| (*i, *x))
    }

    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.keys().copied()
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::from_pairs(self.iter().map(|(i, x)| (i, c * x)))
    }

    pub fn total(&self) -> i64 {
        self.0.values().sum()
    }

    pub fn abs_total(&self) -> i64 {
        self.0.values().map(|x| x.abs()).sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.values().all(|&x| x >= 0)
    }

    pub fn positive_part(&self) -> Self {
        Self::from_pairs(self.iter().map(|(i, x)| (i, x.max(0))))
    }

    pub fn negative_part(&self) -> Self {
        Self::from_pairs(self.iter().map(|(i, x)| (i, (-x).max(0))))
    }

    /// Keep only coordinates satisfying `keep`.
    pub fn restrict(&self, keep: impl Fn(i64) -> bool) -> Self {
        ExpVec(self.0.iter().filter(|(i, _)| keep(**i)).map(|(i, x)| (*i, *x)).collect())
    }

    /// Relabel coordinates: `(σm)_{σ(i)} = m_i`.
    pub fn relabel(&self, sigma: impl Fn(i64) -> i64) -> Self {
        Self::from_pairs(self.iter().map(|(i, x)| (sigma(i), x)))
    }

    /// The degree-lexicographic order used for division: total degree
    /// first, then the first differing coordinate in increasing vertex id.
    /// It is a group order, so it is compatible with adding exponents.
    pub fn deglex_cmp(&self, other: &Self) -> Ordering {
        self.total().cmp(&other.total()).then_with(|| {
            let keys: BTreeSet<i64> = self.support().chain(other.support()).collect();
            keys.into_iter().map(|i| self.get(i).cmp(&other.get(i))).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
        })
    }
}

impl Add for &ExpVec {
    type Output = ExpVec;
    fn add(self, rhs: &ExpVec) -> ExpVec {
        let mut out = self.clone();
        for (i, x) in rhs.iter() {
            out.add_at(i, x);
        }
        out
    }
}

impl Sub for &ExpVec {
    type Output = ExpVec;
    fn sub(self, rhs: &ExpVec) -> ExpVec {
        let mut out = self.clone();
        for (i, x) in rhs.iter() {
            out.add_at(i, -x);
        }
        out
    }
}

impl Neg for &ExpVec {
    type Output = ExpVec;
    fn neg(self) -> ExpVec {
        self.scale(-1)
    }
}

impl fmt::Display for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(i, x)| format!("{i}:{x}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl fmt::Debug for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExpVec {
    type Err = Error;

    /// Parses `{2:-1, 6:1}` (braces optional, `{}` is zero).
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('{').trim_end_matches('}').trim();
        let mut v = ExpVec::zero();
        if inner.is_empty() {
            return Ok(v);
        }
        for part in inner.split(',') {
            let (i, x) = part.split_once(':').ok_or_else(|| Error::Parse(format!("expected i:x in {part:?}")))?;
            let i = i.trim().parse().map_err(|_| Error::Parse(format!("bad index {i:?}")))?;
            let x = x.trim().parse().map_err(|_| Error::Parse(format!("bad entry {x:?}")))?;
            v.add_at(i, x);
        }
        Ok(v)
    }
}

/// A skew-symmetric integer form `λ(m, n) = mᵀΛn`, stored by rows.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct SkewForm {
    rows: BTreeMap<i64, BTreeMap<i64, i64>>,
}

impl SkewForm {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets `Λ_ij = x` and `Λ_ji = −x`.
    pub fn set(&mut self, i: i64, j: i64, x: i64) {
        assert!(i != j || x == 0, "diagonal of a skew form must vanish");
        self.put(i, j, x);
        self.put(j, i, -x);
    }

    fn put(&mut self, i: i64, j: i64, x: i64) {
        let row = self.rows.entry(i).or_default();
        if x == 0 {
            row.remove(&j);
            if row.is_empty() {
                self.rows.remove(&i);
            }
        } else {
            row.insert(j, x);
        }
    }

    pub fn get(&self, i: i64, j: i64) -> i64 {
        self.rows.get(&i).and_then(|r| r.get(&j)).copied().unwrap_or(0)
    }

    /// Entries `(i, j, Λ_ij)` with `i < j`.
    pub fn upper_entries(&self) -> impl Iterator<Item = (i64, i64, i64)> + '_ {
        self.rows.iter().flat_map(|(i, r)| r.iter().filter(move |(j, _)| *j > i).map(move |(j, x)| (*i, *j, *x)))
    }

    pub fn pair(&self, m: &ExpVec, n: &ExpVec) -> i64 {
        let mut acc = 0;
        for (i, mi) in m.iter() {
            if let Some(row) = self.rows.get(&i) {
                for (j, nj) in n.iter() {
                    if let Some(l) = row.get(&j) {
                        acc += mi * l * nj;
                    }
                }
            }
        }
        acc
    }

    /// `Λ · m` as a vector.
    pub fn apply(&self, m: &ExpVec) -> ExpVec {
        let mut out = ExpVec::zero();
        for (i, row) in &self.rows {
            let s: i64 = row.iter().map(|(j, l)| l * m.get(*j)).sum();
            out.add_at(*i, s);
        }
        out
    }

    pub fn negated(&self) -> Self {
        let mut out = self.clone();
        for row in out.rows.values_mut() {
            for x in row.values_mut() {
                *x = -*x;
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn restrict(&self, keep: impl Fn(i64) -> bool) -> Self {
        let mut out = Self::new();
        for (i, j, x) in self.upper_entries() {
            if keep(i) && keep(j) {
                out.set(i, j, x);
            }
        }
        out
    }
}

/// A finite `Z[v^±]`-combination of Laurent monomials.
///
/// Elements do not remember which chart they live in; the seed whose form
/// is passed to [`TorusElement::mul`] is the chart.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct TorusElement {
    terms: BTreeMap<ExpVec, VLaurent>,
}

impl TorusElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(ExpVec::zero())
    }

    /// `x^m`.
    pub fn monomial(m: ExpVec) -> Self {
        Self::term(m, VLaurent::one())
    }

    pub fn term(m: ExpVec, c: VLaurent) -> Self {
        let mut t = Self::zero();
        t.add_term(m, c);
        t
    }

    pub fn from_terms<I: IntoIterator<Item = (ExpVec, VLaurent)>>(iter: I) -> Self {
        let mut t = Self::zero();
        for (m, c) in iter {
            t.add_term(m, c);
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &VLaurent)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &ExpVec) -> VLaurent {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: ExpVec, c: VLaurent) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                *old += &c;
                if old.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &VLaurent) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, x)| (m.clone(), x * c)))
    }

    /// Twisted product; `form = None` is the commutative (classical) product.
    pub fn mul(&self, rhs: &Self, form: Option<&SkewForm>) -> Self {
        let mut out = Self::zero();
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                let twist = form.map_or(0, |f| f.pair(m, n));
                out.add_term(m + n, (a * b).shift(twist));
            }
        }
        out
    }

    pub fn pow(&self, k: u32, form: Option<&SkewForm>) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = out.mul(self, form);
        }
        out
    }

    /// Coefficients barred, monomials fixed.
    pub fn bar(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), c.bar())))
    }

    pub fn is_bar_invariant(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_bar_invariant())
    }

    /// Rescale by a power of `v` so that the coefficient of `x^lead` is 1.
    pub fn normalize(&self, lead: &ExpVec) -> Result<Self> {
        let c = self.terms.get(lead).ok_or_else(|| Error::Domain(format!("monomial x^{lead} is absent")))?;
        let alpha =
            c.as_v_power().ok_or_else(|| Error::Domain(format!("coefficient {c} of x^{lead} is not a power of v")))?;
        Ok(self.shift_v(-alpha))
    }

    /// Multiply every coefficient by `v^k`.
    pub fn shift_v(&self, k: i64) -> Self {
        TorusElement { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.shift(k))).collect() }
    }

    /// The deglex-leading monomial.
    pub fn leading(&self) -> Option<(&ExpVec, &VLaurent)> {
        self.terms.iter().max_by(|a, b| a.0.deglex_cmp(b.0))
    }

    /// Coordinatewise minimum exponent over all terms (absent = 0).
    pub fn min_exponent(&self, i: i64) -> Option<i64> {
        self.terms.keys().map(|m| m.get(i)).min()
    }

    pub fn max_exponent(&self, i: i64) -> Option<i64> {
        self.terms.keys().map(|m| m.get(i)).max()
    }

    fn variables(&self) -> BTreeSet<i64> {
        self.terms.keys().flat_map(|m| m.support()).collect()
    }

    /// The `q` with `q * den = self`, or [`Error::NotDivisible`].
    ///
    /// Leading terms are cancelled in deglex order.  A quotient monomial must
    /// sit inside the box cut out by the per-variable minimum and maximum
    /// exponents (lowest and highest homogeneous parts multiply without
    /// cancellation, the torus being a domain), which bounds the search.
    pub fn exact_divide(&self, den: &Self, form: Option<&SkewForm>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("division by zero".into()));
        }
        let not_div = || Error::NotDivisible(self.to_string());
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let vars: BTreeSet<i64> = self.variables().union(&den.variables()).copied().collect();
        let mut bounds = BTreeMap::new();
        for &i in &vars {
            let lo = self.min_exponent(i).unwrap() - den.min_exponent(i).unwrap();
            let hi = self.max_exponent(i).unwrap() - den.max_exponent(i).unwrap();
            if lo > hi {
                return Err(not_div());
            }
            bounds.insert(i, (lo, hi));
        }
        let (dm, dc) = den.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((rm, rc)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = &rm - &dm;
            let inside = vars.iter().all(|i| {
                let (lo, hi) = bounds[i];
                (lo..=hi).contains(&qm.get(*i))
            }) && qm.support().all(|i| vars.contains(&i));
            if !inside {
                return Err(not_div());
            }
            let twist = form.map_or(0, |f| f.pair(&qm, &dm));
            let c = rc.div_exact(&dc.shift(twist)).ok_or_else(not_div)?;
            let t = Self::term(qm, c);
            rem = &rem - &t.mul(den, form);
            quot = &quot + &t;
        }
        Ok(quot)
    }

    /// `ν_j`: the minimum exponent of `x_j` over the terms.
    pub fn frozen_valuation(&self, j: i64) -> Result<i64> {
        self.min_exponent(j).ok_or_else(|| Error::Domain("valuation of zero".into()))
    }

    /// Specialize `v = 1`, merging coefficients.
    pub fn classical(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), VLaurent::term(c.at_one(), 0))))
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(VLaurent::has_nonnegative_coefficients)
    }

    /// Evaluate the classical specialization at integer values of the
    /// variables, exactly.  Fails on negative powers of a zero value.
    pub fn evaluate(&self, value: impl Fn(i64) -> BigInt) -> Option<num_rational::BigRational> {
        use num_rational::BigRational;
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = BigRational::from_integer(c.at_one());
            for (i, e) in m.iter() {
                let x = value(i);
                if x.is_zero() && e < 0 {
                    return None;
                }
                let base = BigRational::from_integer(x);
                let p = num_traits::pow(base.clone(), e.unsigned_abs() as usize);
                t *= if e < 0 { p.recip() } else { p };
            }
            total += t;
        }
        Some(total)
    }
}

impl Add for &TorusElement {
    type Output = TorusElement;
    fn add(self, rhs: &TorusElement) -> TorusElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &TorusElement {
    type Output = TorusElement;
    fn sub(self, rhs: &TorusElement) -> TorusElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &TorusElement {
    type Output = TorusElement;
    fn neg(self) -> TorusElement {
        TorusElement::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), -c)))
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &ExpVec) -> fmt::Result {
    let mut first = true;
    for (i, e) in m.iter() {
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "x[{i}]")?;
        } else {
            write!(f, "x[{i}]^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for TorusElement {
    /// Fully expanded: one summand per `(monomial, power of v)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            for (k, coef) in c.terms().rev() {
                let neg = coef.is_negative();
                match (first, neg) {
                    (true, true) => write!(f, "-")?,
                    (true, false) => {}
                    (false, true) => write!(f, " - ")?,
                    (false, false) => write!(f, " + ")?,
                }
                first = false;
                let mag = coef.abs();
                let mut parts: Vec<String> = Vec::new();
                if !mag.is_one() {
                    parts.push(mag.to_string());
                }
                match k {
                    0 => {}
                    1 => parts.push("v".into()),
                    k => parts.push(format!("v^{k}")),
                }
                write!(f, "{}", parts.join("*"))?;
                if !m.is_zero() {
                    if !parts.is_empty() {
                        write!(f, "*")?;
                    }
                    write_monomial(f, m)?;
                } else if parts.is_empty() {
                    write!(f, "1")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TorusElement({self})")
    }
}

impl FromStr for TorusElement {
    type Err = Error;

    /// Parses fully expanded sums such as `v^-1*x[0]*x[1] - 2*x[2]^-1 + 3`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("bad torus element {s:?}: {why}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty"));
        }
        if compact == "0" {
            return Ok(Self::zero());
        }
        let mut summands: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        let mut prev = '\0';
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && prev != '^' && prev != '[' {
                if cur.is_empty() && prev != '\0' {
                    return Err(bad("dangling sign"));
                }
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
            return Err(bad("trailing sign"));
        }
        summands.push((neg, cur));

        let mut out = Self::zero();
        for (neg, summand) in summands {
            let mut coef = BigInt::one();
            let mut vexp = 0i64;
            let mut m = ExpVec::zero();
            for factor in summand.split('*') {
                if let Some(rest) = factor.strip_prefix("x[") {
                    let (idx, tail) = rest.split_once(']').ok_or_else(|| bad("unclosed x["))?;
                    let i: i64 = idx.parse().map_err(|_| bad("vertex id"))?;
                    let e: i64 = match tail {
                        "" => 1,
                        t => t.strip_prefix('^').and_then(|e| e.parse().ok()).ok_or_else(|| bad("exponent"))?,
                    };
                    m.add_at(i, e);
                } else if factor == "v" {
                    vexp += 1;
                } else if let Some(e) = factor.strip_prefix("v^") {
                    vexp += e.parse::<i64>().map_err(|_| bad("v exponent"))?;
                } else {
                    coef *= factor.parse::<BigInt>().map_err(|_| bad("factor"))?;
                }
            }
            if neg {
                coef = -coef;
            }
            out.add_term(m, VLaurent::term(coef, vexp));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(pairs: &[(i64, i64)]) -> ExpVec {
        ExpVec::from_pairs(pairs.iter().copied())
    }

    fn t(s: &str) -> TorusElement {
        s.parse().unwrap()
    }

    fn sl2_form() -> SkewForm {
        // rows (0,-1,0),(1,0,1),(0,-1,0) on vertices 0,1,2
        let mut f = SkewForm::new();
        f.set(0, 1, -1);
        f.set(1, 2, 1);
        f
    }

    #[test]
    fn twist_of_unit_vectors() {
        let mut f = SkewForm::new();
        f.set(1, 2, 1);
        let p = TorusElement::monomial(ExpVec::unit(1)).mul(&TorusElement::monomial(ExpVec::unit(2)), Some(&f));
        assert_eq!(p, t("v*x[1]*x[2]"));
        let m = e(&[(1, 2), (2, -1)]);
        let inv = TorusElement::monomial(m.clone()).mul(&TorusElement::monomial(-&m), Some(&f));
        assert_eq!(inv, TorusElement::one());
    }

    #[test]
    fn sl2_product_example() {
        let f = sl2_form();
        let lhs = t("x[0] + x[2]").mul(&t("x[1]"), Some(&f));
        assert_eq!(lhs, t("v^-1*x[0]*x[1] + v^-1*x[1]*x[2]"));
    }

    #[test]
    fn bar_is_an_anti_involution_on_monomials() {
        let f = sl2_form();
        let a = TorusElement::monomial(e(&[(0, 1), (1, 2)]));
        let b = TorusElement::monomial(e(&[(1, -1), (2, 3)]));
        assert_eq!(a.mul(&b, Some(&f)).bar(), b.bar().mul(&a.bar(), Some(&f)));
        let x = t("v*x[1] + 2*v^-3*x[2]");
        assert_eq!(x.bar().bar(), x);
        assert_eq!(t("v*x[1]").bar(), t("v^-1*x[1]"));
    }

    #[test]
    fn normalize_examples() {
        let z = t("v^3*x[1] + v^2*x[2]");
        assert_eq!(z.normalize(&ExpVec::unit(1)).unwrap(), t("x[1] + v^-1*x[2]"));
        let f = sl2_form();
        let prod = t("x[0]").mul(&t("x[1]"), Some(&f));
        assert_eq!(prod.normalize(&e(&[(0, 1), (1, 1)])).unwrap(), t("x[0]*x[1]"));
        assert!(t("2*x[1]").normalize(&ExpVec::unit(1)).is_err());
        assert!(t("x[1]").normalize(&ExpVec::unit(2)).is_err());
    }

    #[test]
    fn division_examples() {
        let f = sl2_form();
        let a = t("x[0]*x[2] + 1");
        assert_eq!(a.exact_divide(&a, Some(&f)).unwrap(), TorusElement::one());
        let num = t("x[1]^2 - 1");
        assert_eq!(num.exact_divide(&t("x[1] - 1"), Some(&f)).unwrap(), t("x[1] + 1"));
        assert!(matches!(t("x[1]").exact_divide(&t("x[1] + 1"), Some(&f)), Err(Error::NotDivisible(_))));
    }

    #[test]
    fn valuations() {
        assert_eq!(t("x[3]^-3").frozen_valuation(3).unwrap(), -3);
        assert_eq!(t("x[1] + x[1]*x[3]").frozen_valuation(3).unwrap(), 0);
        assert!(TorusElement::zero().frozen_valuation(1).is_err());
    }

    #[test]
    fn text_round_trip() {
        let z = t("v^-1*x[0]*x[1] - 3*x[2]^-2 + v^2 + 1");
        assert_eq!(t(&z.to_string()), z);
        assert_eq!(TorusElement::zero().to_string(), "0");
        assert!("x[1".parse::<TorusElement>().is_err());
        assert_eq!("{2:-1, 6:1}".parse::<ExpVec>().unwrap(), e(&[(2, -1), (6, 1)]));
    }
}
