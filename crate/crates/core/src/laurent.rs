//! Laurent polynomials in the quantum parameter `v`.
//!
//! [`Laurent`] is generic over its coefficient ring; everything quantum in
//! this crate uses [`VLaurent`], i.e. integer coefficients of unbounded size.
//! Terms live in a `BTreeMap` keyed by exponent, so the representation is
//! canonical and iteration order is deterministic.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A finite sum `Σ c_k v^k` with no stored zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Laurent<R> {
    terms: BTreeMap<i64, R>,
}

/// The scalar ring `Z[v, v⁻¹]`.
pub type VLaurent = Laurent<BigInt>;

impl<R: Clone + Zero + PartialEq> Laurent<R> {
    pub fn zero() -> Self {
        Laurent { terms: BTreeMap::new() }
    }

    /// `c · v^k`.
    pub fn term(c: R, k: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        Laurent { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, R)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &R)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, k: i64) -> R {
        self.terms.get(&k).cloned().unwrap_or_else(R::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, k: i64, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(old) => {
                let sum = old.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&k);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    /// The involution `v ↦ v⁻¹`.
    pub fn bar(&self) -> Self {
        Laurent { terms: self.terms.iter().map(|(k, c)| (-k, c.clone())).collect() }
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        Laurent { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn is_bar_invariant(&self) -> bool {
        self.terms.iter().all(|(k, c)| self.terms.get(&-k) == Some(c))
    }

    /// True when every exponent is strictly negative, i.e. the value lies in `v⁻¹Z[v⁻¹]`.
    pub fn in_negative_part(&self) -> bool {
        self.max_exponent().is_none_or(|k| k < 0)
    }
}

impl<R: Clone + Zero + One + PartialEq> Laurent<R> {
    pub fn one() -> Self {
        Self::term(R::one(), 0)
    }

    /// `v^k`.
    pub fn v_pow(k: i64) -> Self {
        Self::term(R::one(), k)
    }

    /// If the value is exactly `v^α`, returns `α`.
    pub fn as_v_power(&self) -> Option<i64> {
        if self.terms.len() != 1 {
            return None;
        }
        let (k, c) = self.terms.iter().next()?;
        c.is_one().then_some(*k)
    }
}

impl<R> Laurent<R>
where
    R: Clone + Zero + PartialEq + Neg<Output = R>,
{
    pub fn is_bar_antisymmetric(&self) -> bool {
        self.terms.iter().all(|(k, c)| self.terms.get(&-k).cloned().unwrap_or_else(R::zero) == -c.clone())
    }

    /// The unique `e ∈ v⁻¹R[v⁻¹]` with `bar(e) − e = d`, for bar-antisymmetric `d`.
    ///
    /// Antisymmetry forces the constant term to vanish and pairs `v^k` with
    /// `v^{-k}`, so `e` just collects the negative half of `d` with its sign
    /// flipped.
    pub fn kl_split(d: &Self) -> Result<Self> {
        if !d.is_bar_antisymmetric() {
            return Err(Error::Domain("kl_split needs a bar-antisymmetric input".into()));
        }
        Ok(Laurent { terms: d.terms.range(..0).map(|(k, c)| (*k, -c.clone())).collect() })
    }
}

impl VLaurent {
    pub fn from_i64(c: i64) -> Self {
        Self::term(BigInt::from(c), 0)
    }

    /// Evaluate at `v = 1`.
    pub fn at_one(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |acc, c| acc + c)
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Exact division in `Z[v^±]`; `None` when `den` does not divide `self`.
    pub fn div_exact(&self, den: &Self) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (dk, dc) = den.terms.iter().next_back().map(|(k, c)| (*k, c.clone()))?;
        let lowest_allowed = self.min_exponent()? - den.min_exponent()?;
        let mut rem = self.clone();
        let mut q = Self::zero();
        while let Some(rk) = rem.max_exponent() {
            let k = rk - dk;
            if k < lowest_allowed {
                return None;
            }
            let (c, r) = rem.coeff(rk).div_rem(&dc);
            if !r.is_zero() {
                return None;
            }
            let t = Self::term(c, k);
            rem -= &(den * &t);
            q += &t;
        }
        Some(q)
    }
}

impl<R: Clone + Zero + PartialEq> Default for Laurent<R> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<R: Clone + Zero + PartialEq> AddAssign<&Laurent<R>> for Laurent<R> {
    fn add_assign(&mut self, rhs: &Laurent<R>) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, c.clone());
        }
    }
}

impl<R: Clone + Zero + PartialEq + Neg<Output = R>> SubAssign<&Laurent<R>> for Laurent<R> {
    fn sub_assign(&mut self, rhs: &Laurent<R>) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, -c.clone());
        }
    }
}

impl<R: Clone + Zero + PartialEq> Add for &Laurent<R> {
    type Output = Laurent<R>;
    fn add(self, rhs: &Laurent<R>) -> Laurent<R> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<R: Clone + Zero + PartialEq> Add for Laurent<R> {
    type Output = Laurent<R>;
    fn add(mut self, rhs: Laurent<R>) -> Laurent<R> {
        self += &rhs;
        self
    }
}

impl<R: Clone + Zero + PartialEq + Neg<Output = R>> Sub for &Laurent<R> {
    type Output = Laurent<R>;
    fn sub(self, rhs: &Laurent<R>) -> Laurent<R> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<R: Clone + Zero + PartialEq + Neg<Output = R>> Sub for Laurent<R> {
    type Output = Laurent<R>;
    fn sub(mut self, rhs: Laurent<R>) -> Laurent<R> {
        self -= &rhs;
        self
    }
}

impl<R: Clone + Zero + PartialEq + Neg<Output = R>> Neg for Laurent<R> {
    type Output = Laurent<R>;
    fn neg(self) -> Laurent<R> {
        Laurent { terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect() }
    }
}

impl<R: Clone + Zero + PartialEq + Neg<Output = R>> Neg for &Laurent<R> {
    type Output = Laurent<R>;
    fn neg(self) -> Laurent<R> {
        -self.clone()
    }
}

impl<R: Clone + Zero + PartialEq + Mul<Output = R>> Mul for &Laurent<R> {
    type Output = Laurent<R>;
    fn mul(self, rhs: &Laurent<R>) -> Laurent<R> {
        let mut out = Laurent::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a + b, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<R: Clone + Zero + PartialEq + Mul<Output = R>> Mul for Laurent<R> {
    type Output = Laurent<R>;
    fn mul(self, rhs: Laurent<R>) -> Laurent<R> {
        &self * &rhs
    }
}

// Printing uses descending exponents: `v^2 + 1 - 3*v^-1`.
impl<R> fmt::Display for Laurent<R>
where
    R: Clone + Zero + One + PartialEq + Signed + fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = match *k {
                0 => String::new(),
                1 => "v".to_string(),
                k => format!("v^{k}"),
            };
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl<R> fmt::Debug for Laurent<R>
where
    R: Clone + Zero + One + PartialEq + Signed + fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

impl FromStr for VLaurent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("bad Laurent polynomial {s:?}: {why}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty"));
        }
        // Split into signed chunks, keeping the sign that follows a `^`.
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        let mut prev = '\0';
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && prev != '^' {
                if !cur.is_empty() {
                    chunks.push((neg, std::mem::take(&mut cur)));
                } else if prev != '\0' {
                    return Err(bad("dangling sign"));
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
        chunks.push((neg, cur));

        let mut out = VLaurent::zero();
        for (neg, chunk) in chunks {
            let (coef, mono) = match chunk.split_once('*') {
                Some((c, m)) => (c.parse::<BigInt>().map_err(|_| bad("coefficient"))?, Some(m)),
                None if chunk.starts_with('v') => (BigInt::one(), Some(chunk.as_str())),
                None => (chunk.parse::<BigInt>().map_err(|_| bad("coefficient"))?, None),
            };
            let exp = match mono {
                None => 0,
                Some("v") => 1,
                Some(m) => m.strip_prefix("v^").and_then(|e| e.parse::<i64>().ok()).ok_or_else(|| bad("monomial"))?,
            };
            out.add_term(exp, if neg { -coef } else { coef });
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> VLaurent {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(p("v + 1") + p("v^-1 - 1"), p("v + v^-1"));
        assert_eq!(VLaurent::zero() + p("3*v^2 - v"), p("3*v^2 - v"));
        assert_eq!(p("2*v") + p("3*v"), p("5*v"));
        assert_eq!(p("v - v^-1") * p("v + v^-1"), p("v^2 - v^-2"));
        assert_eq!(VLaurent::one() * p("v^4 - 7"), p("v^4 - 7"));
        assert_eq!(VLaurent::v_pow(3) * VLaurent::v_pow(-5), VLaurent::v_pow(-2));
    }

    #[test]
    fn bar_examples() {
        assert_eq!(p("v^2 + 3").bar(), p("v^-2 + 3"));
        assert_eq!(p("v - v^-1").bar(), p("v^-1 - v"));
        let q = p("4*v^3 - v + 2*v^-7");
        assert_eq!(q.bar().bar(), q);
    }

    #[test]
    fn kl_split_examples() {
        let split = |s: &str| VLaurent::kl_split(&p(s)).unwrap();
        assert_eq!(split("v - v^-1"), p("v^-1"));
        assert_eq!(split("0"), VLaurent::zero());
        assert_eq!(split("2*v^3 - 2*v^-3"), p("2*v^-3"));
        assert!(VLaurent::kl_split(&p("v")).is_err());
        assert!(VLaurent::kl_split(&p("1")).is_err());
    }

    #[test]
    fn print_and_parse() {
        let q = p("v^2 - 3*v^-1 + 1");
        assert_eq!(q.to_string(), "v^2 + 1 - 3*v^-1");
        assert_eq!(p(&q.to_string()), q);
        assert_eq!(p("-v").to_string(), "-v");
        assert_eq!(VLaurent::zero().to_string(), "0");
        assert!("v^".parse::<VLaurent>().is_err());
        assert!("1 +".parse::<VLaurent>().is_err());
        assert!("x".parse::<VLaurent>().is_err());
    }

    #[test]
    fn exact_division() {
        let a = p("v^2 - v^-2");
        let b = p("v - v^-1");
        assert_eq!(a.div_exact(&b), Some(p("v + v^-1")));
        assert_eq!(p("v + 1").div_exact(&p("2")), None);
        assert_eq!(p("6*v^3").div_exact(&p("3*v")), Some(p("2*v^2")));
        assert_eq!(p("v^2 + 1").div_exact(&p("v + 1")), None);
    }

    #[test]
    fn generic_over_i64() {
        let a: Laurent<i64> = Laurent::from_terms([(1, 2), (-1, -2)]);
        assert!(a.is_bar_antisymmetric());
        assert_eq!(Laurent::kl_split(&a).unwrap(), Laurent::term(2, -1));
        assert_eq!((&a * &a).coeff(0), -8);
    }
}
