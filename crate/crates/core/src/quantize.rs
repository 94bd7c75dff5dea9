//! Compatible Poisson structures: solving `Λ·B̃ = −(δ_k e_k)` for `Λ`.
//!
//! The unknowns are the upper-triangle entries `Λ_ij`, `i < j`, not fixed by
//! a pin.  Everything is solved exactly over `Q`; integrality is checked on
//! the way out.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};
use crate::linalg::{common_denominator, q, QMatrix, Q};
use crate::seed::Seed;
use crate::torus::SkewForm;

pub use crate::lie::lambda_from_weights;

#[derive(Clone, Debug)]
pub struct CompatibilityProblem {
    pub seed: Seed,
    pub deltas: BTreeMap<i64, i64>,
    pub pinned: BTreeMap<(i64, i64), i64>,
}

impl CompatibilityProblem {
    pub fn new(seed: &Seed, deltas: BTreeMap<i64, i64>) -> Self {
        CompatibilityProblem { seed: seed.classical(), deltas, pinned: BTreeMap::new() }
    }

    /// `δ_k = c` for every unfrozen `k`.
    pub fn uniform(seed: &Seed, c: i64) -> Self {
        Self::new(seed, seed.unfrozen().into_iter().map(|k| (k, c)).collect())
    }

    pub fn pin(mut self, i: i64, j: i64, x: i64) -> Self {
        if i < j {
            self.pinned.insert((i, j), x);
        } else {
            self.pinned.insert((j, i), -x);
        }
        self
    }

    fn validate(&self) -> Result<()> {
        let uf: BTreeSet<i64> = self.seed.unfrozen().into_iter().collect();
        if self.deltas.keys().copied().collect::<BTreeSet<_>>() != uf {
            return domain("δ must be given for exactly the unfrozen vertices");
        }
        if let Some((k, _)) = self.deltas.iter().find(|(_, &x)| x <= 0) {
            return domain(format!("δ_{k} must be positive"));
        }
        for &(i, j) in self.pinned.keys() {
            if i == j || !self.seed.contains(i) || !self.seed.contains(j) {
                return domain(format!("bad pinned entry ({i},{j})"));
            }
        }
        Ok(())
    }
}

/// The rational solution set `particular + span(free)`, in upper-triangle
/// coordinates (pins included in `particular`, zero in every `free` vector).
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaFamily {
    pub particular: BTreeMap<(i64, i64), Q>,
    pub free: Vec<BTreeMap<(i64, i64), Q>>,
}

impl LambdaFamily {
    pub fn is_unique(&self) -> bool {
        self.free.is_empty()
    }

    /// The particular solution as an integer form, if it is integral.
    pub fn integral_form(&self) -> Option<SkewForm> {
        let mut l = SkewForm::new();
        for (&(i, j), x) in &self.particular {
            if !x.is_integer() {
                return None;
            }
            l.set(i, j, x.to_integer().to_i64()?);
        }
        Some(l)
    }

    /// The least positive integer making the particular solution integral.
    pub fn denominator(&self) -> i64 {
        let xs: Vec<Q> = self.particular.values().cloned().collect();
        common_denominator(&xs).to_i64().expect("denominator fits in i64")
    }

    /// `c` times the particular solution; `c` must clear its denominators.
    pub fn scaled_form(&self, c: i64) -> SkewForm {
        let mut l = SkewForm::new();
        for (&(i, j), x) in &self.particular {
            let y = x * q(c);
            debug_assert!(y.is_integer());
            l.set(i, j, y.to_integer().to_i64().expect("Λ entry fits in i64"));
        }
        l
    }
}

#[derive(Clone, Debug)]
pub enum LambdaSolution {
    Unique(Seed),
    /// More than one solution; `family.particular` is the minimal-norm one.
    NotUnique(LambdaFamily),
    NoSolution(String),
}

/// All rational solutions, with the particular solution of minimal norm,
/// or `None` when the system is inconsistent.
pub fn solve_rational(p: &CompatibilityProblem) -> Result<Option<LambdaFamily>> {
    p.validate()?;
    let s = &p.seed;
    let vs = s.vertices();
    let unknowns: Vec<(i64, i64)> = vs
        .iter()
        .flat_map(|&i| vs.iter().filter(move |&&j| i < j).map(move |&j| (i, j)))
        .filter(|ij| !p.pinned.contains_key(ij))
        .collect();
    let col_of: BTreeMap<(i64, i64), usize> = unknowns.iter().enumerate().map(|(n, &ij)| (ij, n)).collect();
    let uf = s.unfrozen();
    let mut a = QMatrix::zeros(vs.len() * uf.len(), unknowns.len());
    let mut rhs = vec![Q::zero(); a.nrows()];
    let mut row = 0;
    for &k in &uf {
        let col = s.col(k);
        for &i in vs {
            // Σ_j Λ_ij b_jk + δ_k [i = k] = 0
            let mut constant = if i == k { q(p.deltas[&k]) } else { Q::zero() };
            for (j, b) in col.iter() {
                if i == j {
                    continue;
                }
                let (key, sign) = if i < j { ((i, j), 1) } else { ((j, i), -1) };
                match p.pinned.get(&key) {
                    Some(&x) => constant += q(sign * x * b),
                    None => a[(row, col_of[&key])] += q(sign * b),
                }
            }
            rhs[row] = -constant;
            row += 1;
        }
    }
    let Some(sol) = a.solve(&rhs) else { return Ok(None) };
    let best = sol.min_norm();
    let mut particular: BTreeMap<(i64, i64), Q> = p.pinned.iter().map(|(&ij, &x)| (ij, q(x))).collect();
    for (ij, x) in unknowns.iter().zip(best) {
        particular.insert(*ij, x);
    }
    particular.retain(|_, x| !x.is_zero());
    let free = sol
        .kernel
        .iter()
        .map(|v| {
            let mut m: BTreeMap<(i64, i64), Q> = unknowns.iter().copied().zip(v.iter().cloned()).collect();
            m.retain(|_, x| !x.is_zero());
            m
        })
        .collect();
    Ok(Some(LambdaFamily { particular, free }))
}

pub fn solve_lambda(p: &CompatibilityProblem) -> Result<LambdaSolution> {
    let Some(family) = solve_rational(p)? else {
        return Ok(LambdaSolution::NoSolution("Λ·B̃ = −δ has no solution".into()));
    };
    if !family.is_unique() {
        return Ok(LambdaSolution::NotUnique(family));
    }
    match family.integral_form() {
        Some(l) => Ok(LambdaSolution::Unique(p.seed.with_lambda(l)?)),
        None => Ok(LambdaSolution::NoSolution(format!(
            "the unique solution is not integral; scaling δ by {} makes it so",
            family.denominator()
        ))),
    }
}

/// Quantizes a word seed with `δ_k = d_k`: the minimal-norm solution,
/// scaled by the least integer making it integral.  Returns the seed and the
/// scale `c` (so the actual `δ_k` are `c·d_k`).
pub fn quantize_word_seed(seed: &Seed) -> Result<(Seed, i64)> {
    let deltas = seed.unfrozen().into_iter().map(|k| (k, seed.d(k))).collect();
    let family = solve_rational(&CompatibilityProblem::new(seed, deltas))?
        .ok_or_else(|| Error::Domain("no compatible Λ exists for this seed".into()))?;
    let c = family.denominator();
    Ok((seed.classical().with_lambda(family.scaled_form(c))?, c))
}

/// The first way `sub` fails to be a good subseed of `sup`, if any.
pub fn good_subseed_violation(sub: &Seed, sup: &Seed) -> Option<String> {
    if let Some(i) = sub.vertices().iter().find(|&&i| !sup.contains(i)) {
        return Some(format!("vertex {i} is missing from the larger seed"));
    }
    let sub_uf = sub.unfrozen();
    if let Some(k) = sub_uf.iter().find(|&&k| sup.is_frozen(k)) {
        return Some(format!("unfrozen vertex {k} is frozen in the larger seed"));
    }
    if let Some(i) = sub.vertices().iter().find(|&&i| sub.d(i) != sup.d(i)) {
        return Some(format!("symmetrizer of {i} differs"));
    }
    for &k in &sub_uf {
        for &j in sup.vertices() {
            let expected = if sub.contains(j) { sub.b(j, k) } else { Zero::zero() };
            if sup.b(j, k) != expected {
                return Some(format!("b_({j},{k}) differs: {} vs {}", sup.b(j, k), expected));
            }
        }
    }
    if let (Some(l), Some(l2)) = (sub.lambda(), sup.lambda()) {
        for &i in sub.vertices() {
            for &j in sub.vertices() {
                if l.get(i, j) != l2.get(i, j) {
                    return Some(format!("Λ_({i},{j}) differs"));
                }
            }
        }
    }
    None
}

fn connected(seed: &Seed, set: &[i64]) -> bool {
    let Some(&start) = set.first() else { return true };
    let members: BTreeSet<i64> = set.iter().copied().collect();
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(i) = stack.pop() {
        for &j in &members {
            if !seen.contains(&j) && (!seed.b(i, j).is_zero() || !seed.b(j, i).is_zero()) {
                seen.insert(j);
                stack.push(j);
            }
        }
    }
    seen.len() == members.len()
}

/// Checks the hypotheses of the extension lemma: `sup` unfreezes exactly the
/// vertices of `sub`, both unfrozen parts are connected, and `B̃'_{I₃,I₂}`
/// (new frozen rows, old frozen columns) has full rank.
pub fn check_extension_hypotheses(sub: &Seed, sup: &Seed) -> Result<()> {
    if let Some(why) = good_subseed_violation(&sub.classical(), &sup.classical()) {
        return Err(Error::Hypothesis(format!("not a good subseed: {why}")));
    }
    if sup.unfrozen() != sub.vertices() {
        return Err(Error::Hypothesis(
            "partition: the larger seed must unfreeze exactly the smaller seed's vertices".into(),
        ));
    }
    if !connected(sup, &sup.unfrozen()) {
        return Err(Error::Hypothesis("connectivity: B̃' on unfrozen vertices is not connected".into()));
    }
    if !connected(sub, &sub.unfrozen()) {
        return Err(Error::Hypothesis("connectivity: B̃ on unfrozen vertices is not connected".into()));
    }
    let i2: Vec<i64> = sub.frozen().iter().copied().collect();
    let i3: Vec<i64> = sup.frozen().iter().copied().collect();
    let m = QMatrix::from_rows(
        &i3.iter()
            .map(|&r| {
                i2.iter().map(|&c| sup.b(r, c)).map(|x| Q::new((*x.numer()).into(), (*x.denom()).into())).collect()
            })
            .collect::<Vec<_>>(),
    );
    if m.rank() < i2.len().min(i3.len()) {
        return Err(Error::Hypothesis("full rank: B̃'_{I3,I2} is rank deficient".into()));
    }
    Ok(())
}

/// Extends the compatible `Λ` of `sub` to `sup` with the given `δ` on the
/// unfrozen vertices of `sup`.  The result restricts to `Λ` on `sub`.
pub fn extend_lambda(sub: &Seed, sup: &Seed, deltas: &BTreeMap<i64, i64>) -> Result<Seed> {
    let l = sub.lambda().ok_or_else(|| Error::Domain("the smaller seed has no Λ".into()))?;
    if sub.vertices() == sup.vertices() && sub.same_b_tilde(sup) {
        return sup.with_lambda(l.clone());
    }
    check_extension_hypotheses(sub, sup)?;
    let mut p = CompatibilityProblem::new(sup, deltas.clone());
    let vs = sub.vertices();
    for (a, &i) in vs.iter().enumerate() {
        for &j in &vs[a + 1..] {
            p.pinned.insert((i, j), l.get(i, j));
        }
    }
    match solve_lambda(&p)? {
        LambdaSolution::Unique(s) => Ok(s),
        LambdaSolution::NotUnique(f) => domain(format!("extension is not unique ({} free directions)", f.free.len())),
        LambdaSolution::NoSolution(why) => domain(format!("no extension: {why}")),
    }
}

/// `δ_k` scaled to be coprime, handy for comparing quantizations up to a factor.
pub fn primitive_deltas(deltas: &BTreeMap<i64, i64>) -> BTreeMap<i64, i64> {
    let g = deltas.values().fold(0i64, |acc, &x| acc.gcd(&x)).max(1);
    deltas.iter().map(|(&k, &x)| (k, x / g)).collect()
}

/// Integer multiple check used when comparing two quantizations.
pub fn proportional(a: &SkewForm, b: &SkewForm) -> bool {
    let ea: BTreeMap<(i64, i64), i64> = a.upper_entries().map(|(i, j, x)| ((i, j), x)).collect();
    let eb: BTreeMap<(i64, i64), i64> = b.upper_entries().map(|(i, j, x)| ((i, j), x)).collect();
    if ea.keys().ne(eb.keys()) {
        return false;
    }
    let Some((key, &x0)) = ea.iter().next() else { return true };
    let ratio = Q::new(eb[key].into(), x0.into());
    ratio.is_positive() && ea.iter().all(|(k, &x)| Q::new(eb[k].into(), x.into()) == ratio)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::ExpVec;

    fn ghl(r: i64) -> Seed {
        let vs: Vec<i64> = (-1 - r..=1 + r).collect();
        let cols = (-r..=r)
            .map(|i| {
                let col = match i {
                    0 => ExpVec::from_pairs([(-1, 1), (1, 1)]),
                    1 => ExpVec::from_pairs([(0, -1), (2, -1)]),
                    _ => ExpVec::from_pairs([(i - 1, 1), (i + 1, -1)]),
                };
                (i, col.restrict(|j| (-1 - r..=1 + r).contains(&j)))
            })
            .collect();
        Seed::from_columns(vs.clone(), [-1 - r, 1 + r], vs.iter().map(|&v| (v, 1)).collect(), &cols).unwrap()
    }

    #[test]
    fn ghl_base_block_is_min_norm_member() {
        let p = CompatibilityProblem::uniform(&ghl(0), 2);
        let LambdaSolution::NotUnique(f) = solve_lambda(&p).unwrap() else { panic!("expected a family") };
        assert_eq!(f.free.len(), 1);
        let l = f.integral_form().unwrap();
        assert_eq!((l.get(-1, 0), l.get(-1, 1), l.get(0, 1)), (1, 0, -1));
    }

    #[test]
    fn zero_column_has_no_solution() {
        let s = Seed::new([1, 2], [2], BTreeMap::from([(1, 1), (2, 1)]), []).unwrap();
        assert!(matches!(solve_lambda(&CompatibilityProblem::uniform(&s, 1)).unwrap(), LambdaSolution::NoSolution(_)));
    }

    #[test]
    fn pins_are_honored() {
        let s = ghl(0);
        let p = CompatibilityProblem::uniform(&s, 2).pin(0, -1, -3);
        let LambdaSolution::Unique(q) = solve_lambda(&p).unwrap() else {
            panic!("pinning the free entry makes it unique")
        };
        assert_eq!(q.lambda().unwrap().get(-1, 0), 3);
        assert_eq!(q.check_compatible().unwrap().values().copied().collect::<Vec<_>>(), vec![2]);
    }

    #[test]
    fn extension_is_unique_and_restricts() {
        let LambdaSolution::NotUnique(f) = solve_lambda(&CompatibilityProblem::uniform(&ghl(0), 2)).unwrap() else {
            unreachable!()
        };
        let base = ghl(0).with_lambda(f.integral_form().unwrap()).unwrap();
        let big = ghl(1);
        let deltas = big.unfrozen().into_iter().map(|k| (k, 2)).collect();
        let ext = extend_lambda(&base, &big, &deltas).unwrap();
        for i in -1..=1 {
            for j in -1..=1 {
                assert_eq!(ext.lambda().unwrap().get(i, j), base.lambda().unwrap().get(i, j));
            }
        }
        assert!(ext.check_compatible().unwrap().values().all(|&d| d == 2));
        // the same seed twice is the identity
        assert_eq!(extend_lambda(&base, &base, &BTreeMap::from([(0, 2)])).unwrap(), base);
    }

    #[test]
    fn rank_deficiency_is_named() {
        let base = {
            let LambdaSolution::NotUnique(f) = solve_lambda(&CompatibilityProblem::uniform(&ghl(0), 2)).unwrap() else {
                unreachable!()
            };
            ghl(0).with_lambda(f.integral_form().unwrap()).unwrap()
        };
        // the larger seed with the outer frozen vertices cut loose from I2
        let big = ghl(1);
        let mut cut = big.clone();
        cut.set_b(-2, -1, Zero::zero()).unwrap();
        cut.set_b(2, 1, Zero::zero()).unwrap();
        let err = check_extension_hypotheses(&base, &cut).unwrap_err();
        assert!(err.to_string().contains("full rank"), "{err}");
    }

    #[test]
    fn word_seed_quantization_scales_to_integers() {
        let s = ghl(1);
        let (q, c) = quantize_word_seed(&s).unwrap();
        let deltas = q.check_compatible().unwrap();
        assert!(deltas.iter().all(|(k, &d)| d == c * s.d(*k)));
    }

    #[test]
    fn proportional_forms() {
        let mut a = SkewForm::new();
        a.set(1, 2, 1);
        let mut b = SkewForm::new();
        b.set(1, 2, 3);
        assert!(proportional(&a, &b));
        assert!(!proportional(&a, &b.negated()));
        assert_eq!(primitive_deltas(&BTreeMap::from([(1, 4), (2, 6)])), BTreeMap::from([(1, 2), (2, 3)]));
    }
}
