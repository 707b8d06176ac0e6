//! Polynomial rings F[x₁..xₙ] over a finite semifield.
//!
//! A polynomial is an element of the coproduct of monomial lines, so the
//! absorbing zero propagates: if any shared monomial cancels, the whole sum
//! is 0. `(1 + x) + (−x)` is 0, not 1.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalars::{Scalar, Semifield};

/// Exponent vector, ordered graded-lexicographically with x₁ first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize, power: u32) -> Self {
        let mut e = vec![0; nvars];
        e[i] = power;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Finite map from monomials to nonzero scalars; the empty map is 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn term(coeff: Scalar, mono: Monomial) -> Self {
        let nvars = mono.0.len();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mono, coeff);
        }
        Polynomial { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).copied().unwrap_or(Scalar::Zero)
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }
}

/// Images supplied to [`PolyRing::substitute`] live in a target that can add,
/// multiply and receive base scalars.
pub trait EvalTarget {
    type Value: Clone + PartialEq;
    fn zero(&self) -> Self::Value;
    fn one(&self) -> Self::Value;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    /// Image of a scalar of `base` in the target.
    fn embed(&self, base: &Semifield, c: &Scalar) -> Result<Self::Value>;
}

impl EvalTarget for Semifield {
    type Value = Scalar;

    fn zero(&self) -> Scalar {
        Scalar::Zero
    }

    fn one(&self) -> Scalar {
        Semifield::one(self)
    }

    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        Semifield::add(self, a, b)
    }

    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        Semifield::mul(self, a, b)
    }

    fn embed(&self, base: &Semifield, c: &Scalar) -> Result<Scalar> {
        if c.is_zero() {
            return Ok(Scalar::Zero);
        }
        if base.spec() == self.spec() || (self.is_lexmax() && base.orders() == self.orders()) {
            return match c {
                Scalar::Unit { g, .. } => Ok(Scalar::unit(*g)),
                Scalar::Zero => unreachable!(),
            };
        }
        embed_sign(base, c, Semifield::one(self), self.minus_one())
    }
}

/// Embeds ±1 of an F∞-like base; other scalars need matching bases.
pub(crate) fn embed_sign<V>(base: &Semifield, c: &Scalar, one: V, minus_one: V) -> Result<V> {
    if base.group_order() == 2 {
        if *c == base.one() {
            return Ok(one);
        }
        if *c == base.minus_one() {
            return Ok(minus_one);
        }
    }
    Err(Error::MixedSemifields(format!("cannot embed {} into target", base.display(c))))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRing {
    base: Semifield,
    vars: Vec<String>,
}

impl PolyRing {
    pub fn new(base: Semifield, vars: Vec<String>) -> Result<Self> {
        if !base.is_finite() {
            return Err(Error::InvalidArgument("polynomial coefficients must lie in a finite semifield".into()));
        }
        Ok(PolyRing { base, vars })
    }

    pub fn finfty(vars: &[&str]) -> Self {
        PolyRing::new(Semifield::finfty(), vars.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    pub fn base(&self) -> &Semifield {
        &self.base
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.nvars())
    }

    pub fn one(&self) -> Polynomial {
        self.constant(self.base.one())
    }

    pub fn constant(&self, c: Scalar) -> Polynomial {
        Polynomial::term(c, Monomial::one(self.nvars()))
    }

    pub fn var(&self, i: usize) -> Polynomial {
        self.monomial(self.base.one(), i, 1)
    }

    /// c · xᵢ^power.
    pub fn monomial(&self, c: Scalar, i: usize, power: u32) -> Polynomial {
        Polynomial::term(c, Monomial::var(self.nvars(), i, power))
    }

    pub fn neg(&self, p: &Polynomial) -> Polynomial {
        self.scale(&self.base.minus_one(), p)
    }

    fn check(&self, p: &Polynomial) -> Result<()> {
        if p.nvars != self.nvars() {
            return Err(Error::RingMismatch(format!(
                "polynomial in {} variables used in a ring of {}",
                p.nvars,
                self.nvars()
            )));
        }
        Ok(())
    }

    /// Idempotent merge; one cancelling monomial zeroes the whole sum.
    pub fn add(&self, p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.add_unchecked(p, q))
    }

    fn add_unchecked(&self, p: &Polynomial, q: &Polynomial) -> Polynomial {
        if p.is_zero() || q.is_zero() {
            return self.zero();
        }
        let mut terms = p.terms.clone();
        for (m, c) in &q.terms {
            if let Some(existing) = terms.get_mut(m) {
                let s = self.base.add(existing, c);
                if s.is_zero() {
                    return self.zero();
                }
                *existing = s;
            } else {
                terms.insert(m.clone(), *c);
            }
        }
        Polynomial { nvars: p.nvars, terms }
    }

    /// Folds a family of terms with the absorbing sum. An empty family is 0.
    fn fold_terms(&self, items: impl IntoIterator<Item = (Monomial, Scalar)>) -> Polynomial {
        let mut terms: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        let mut any = false;
        for (m, c) in items {
            any = true;
            if c.is_zero() {
                return self.zero();
            }
            match terms.get_mut(&m) {
                Some(existing) => {
                    let s = self.base.add(existing, &c);
                    if s.is_zero() {
                        return self.zero();
                    }
                    *existing = s;
                }
                None => {
                    terms.insert(m, c);
                }
            }
        }
        if !any {
            return self.zero();
        }
        Polynomial { nvars: self.nvars(), terms }
    }

    pub fn mul(&self, p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.mul_unchecked(p, q))
    }

    fn mul_unchecked(&self, p: &Polynomial, q: &Polynomial) -> Polynomial {
        let products = p
            .terms
            .iter()
            .flat_map(|(m1, c1)| q.terms.iter().map(move |(m2, c2)| (m1.mul(m2), (*c1, *c2))))
            .map(|(m, (c1, c2))| (m, self.base.mul(&c1, &c2)));
        self.fold_terms(products)
    }

    pub fn scale(&self, c: &Scalar, p: &Polynomial) -> Polynomial {
        if c.is_zero() {
            return self.zero();
        }
        let terms = p.terms.iter().map(|(m, d)| (m.clone(), self.base.mul(c, d))).collect();
        Polynomial { nvars: p.nvars, terms }
    }

    pub fn pow(&self, p: &Polynomial, n: u32) -> Polynomial {
        (0..n).fold(self.one(), |acc, _| self.mul_unchecked(&acc, p))
    }

    /// Evaluates `p` with xᵢ ↦ `images[i]`: monomials map multiplicatively,
    /// then fold with the target's addition.
    pub fn substitute<T: EvalTarget>(&self, p: &Polynomial, target: &T, images: &[T::Value]) -> Result<T::Value> {
        self.check(p)?;
        if images.len() < self.nvars() {
            return Err(Error::MissingImage(self.vars[images.len()].clone()));
        }
        let mut acc: Option<T::Value> = None;
        for (m, c) in &p.terms {
            let mut v = target.embed(&self.base, c)?;
            for (i, e) in m.0.iter().enumerate() {
                for _ in 0..*e {
                    v = target.mul(&v, &images[i]);
                }
            }
            acc = Some(match acc {
                None => v,
                Some(a) => target.add(&a, &v),
            });
        }
        Ok(acc.unwrap_or_else(|| target.zero()))
    }

    /// Every signed monomial of total degree ≤ `max_degree`.
    pub fn signed_monomials(&self, max_degree: u32) -> Vec<Polynomial> {
        let mut out = Vec::new();
        for m in monomials_up_to(self.nvars(), max_degree) {
            for u in self.base.units() {
                out.push(Polynomial::term(u, m.clone()));
            }
        }
        out
    }

    /// Canonical text: terms in ascending graded order, `1 + x - z*x^2`.
    pub fn display(&self, p: &Polynomial) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (m, c) in p.terms() {
            let factors: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { self.vars[i].clone() } else { format!("{}^{e}", self.vars[i]) })
                .collect();
            let coeff = self.base.display(c);
            let term = if factors.is_empty() {
                coeff
            } else {
                let mono = factors.join("*");
                match coeff.as_str() {
                    "1" => mono,
                    "-1" => format!("-{mono}"),
                    _ => format!("{coeff}*{mono}"),
                }
            };
            match (out.is_empty(), term.strip_prefix('-')) {
                (true, _) => out.push_str(&term),
                (false, Some(rest)) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                (false, None) => {
                    out.push_str(" + ");
                    out.push_str(&term);
                }
            }
        }
        out
    }
}

/// Monomials of total degree ≤ `max_degree` in graded order.
pub fn monomials_up_to(nvars: usize, max_degree: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() == nvars {
            out.push(Monomial(prefix.clone()));
            return;
        }
        for e in 0..=left {
            prefix.push(e);
            rec(nvars, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(nvars, max_degree, &mut Vec::new(), &mut out);
    out.sort();
    out
}

impl EvalTarget for PolyRing {
    type Value = Polynomial;

    fn zero(&self) -> Polynomial {
        PolyRing::zero(self)
    }

    fn one(&self) -> Polynomial {
        PolyRing::one(self)
    }

    fn add(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.add_unchecked(a, b)
    }

    fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.mul_unchecked(a, b)
    }

    fn embed(&self, base: &Semifield, c: &Scalar) -> Result<Polynomial> {
        if c.is_zero() {
            return Ok(PolyRing::zero(self));
        }
        if base.spec() == self.base.spec() {
            return Ok(self.constant(*c));
        }
        embed_sign(base, c, PolyRing::one(self), self.constant(self.base.minus_one()))
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ring() -> PolyRing {
        PolyRing::finfty(&["x"])
    }

    fn p(r: &PolyRing, terms: &[(i8, u32)]) -> Polynomial {
        terms.iter().fold(r.zero(), |acc, &(s, e)| {
            let c = if s > 0 { r.base().one() } else { r.base().minus_one() };
            let t = r.monomial(c, 0, e);
            if acc.is_zero() {
                t
            } else {
                r.add(&acc, &t).unwrap()
            }
        })
    }

    #[test]
    fn add_examples() {
        let r = ring();
        let one_x = p(&r, &[(1, 0), (1, 1)]);
        assert_eq!(r.add(&one_x, &p(&r, &[(1, 1)])).unwrap(), one_x);
        assert!(r.add(&one_x, &p(&r, &[(-1, 1)])).unwrap().is_zero());
        assert!(r.add(&one_x, &r.zero()).unwrap().is_zero());
    }

    #[test]
    fn mul_examples() {
        let r = ring();
        let one_x = p(&r, &[(1, 0), (1, 1)]);
        assert_eq!(r.mul(&one_x, &one_x).unwrap(), p(&r, &[(1, 0), (1, 1), (1, 2)]));
        let a = p(&r, &[(1, 0), (1, 2)]);
        let b = p(&r, &[(1, 0), (1, 3)]);
        assert_eq!(r.mul(&a, &b).unwrap(), p(&r, &[(1, 0), (1, 2), (1, 3), (1, 5)]));
        let one_minus_x = p(&r, &[(1, 0), (-1, 1)]);
        assert!(r.mul(&one_x, &one_minus_x).unwrap().is_zero());
    }

    #[test]
    fn scale_examples() {
        let r = ring();
        let one_x = p(&r, &[(1, 0), (1, 1)]);
        assert_eq!(r.scale(&r.base().minus_one(), &one_x), p(&r, &[(-1, 0), (-1, 1)]));
        assert!(r.scale(&Scalar::Zero, &one_x).is_zero());
        let f2 = Semifield::cyclotomic(2).unwrap();
        let r2 = PolyRing::new(f2.clone(), vec!["x".into()]).unwrap();
        let z = f2.generator();
        let q = r2.add(&r2.one(), &r2.var(0)).unwrap();
        let scaled = r2.scale(&z, &q);
        let expected = r2.add(&r2.constant(z), &r2.monomial(z, 0, 1)).unwrap();
        assert_eq!(scaled, expected);
    }

    #[test]
    fn substitute_examples() {
        let r = ring();
        let f = Semifield::finfty();
        let one_x = p(&r, &[(1, 0), (1, 1)]);
        assert_eq!(r.substitute(&one_x, &f, &[f.minus_one()]).unwrap(), Scalar::Zero);
        let x2 = p(&r, &[(1, 2)]);
        assert_eq!(r.substitute(&one_x, &r, &[x2]).unwrap(), p(&r, &[(1, 0), (1, 2)]));
        let f2 = Semifield::cyclotomic(2).unwrap();
        assert_eq!(r.substitute(&one_x, &f2, &[f2.generator()]).unwrap(), Scalar::Zero);
        assert!(matches!(r.substitute(&one_x, &f, &[]), Err(Error::MissingImage(v)) if v == "x"));
    }

    #[test]
    fn ring_mismatch() {
        let r1 = ring();
        let r2 = PolyRing::finfty(&["x", "y"]);
        assert!(matches!(r1.add(&r1.one(), &r2.one()), Err(Error::RingMismatch(_))));
    }

    /// Formal coproduct oracle: concatenate all terms, group per monomial,
    /// reduce each group in the base, then apply 0 + x = 0.
    fn coproduct_oracle(r: &PolyRing, a: &Polynomial, b: &Polynomial) -> Polynomial {
        if a.is_zero() || b.is_zero() {
            return r.zero();
        }
        let mut groups: BTreeMap<Monomial, Vec<Scalar>> = BTreeMap::new();
        for (m, c) in a.terms().chain(b.terms()) {
            groups.entry(m.clone()).or_default().push(*c);
        }
        let mut out = BTreeMap::new();
        for (m, cs) in groups {
            let s = r.base().sum(cs.iter());
            if s.is_zero() {
                return r.zero();
            }
            out.insert(m, s);
        }
        Polynomial { nvars: r.nvars(), terms: out }
    }

    pub(crate) fn random_poly(r: &PolyRing, rng: &mut impl Rng, max_deg: u32, max_terms: usize) -> Polynomial {
        if rng.gen_ratio(1, 12) {
            return r.zero();
        }
        let n = rng.gen_range(1..=max_terms);
        let units = r.base().units();
        let mut terms = BTreeMap::new();
        for _ in 0..n {
            let m = Monomial((0..r.nvars()).map(|_| rng.gen_range(0..=max_deg)).collect());
            terms.insert(m, units[rng.gen_range(0..units.len())]);
        }
        Polynomial { nvars: r.nvars(), terms }
    }

    #[test]
    fn ring_axioms_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for r in [PolyRing::finfty(&["x"]), PolyRing::finfty(&["x", "y"])] {
            for _ in 0..500 {
                let a = random_poly(&r, &mut rng, 6, 4);
                let b = random_poly(&r, &mut rng, 6, 4);
                let c = random_poly(&r, &mut rng, 6, 4);
                let add = |x: &Polynomial, y: &Polynomial| r.add(x, y).unwrap();
                let mul = |x: &Polynomial, y: &Polynomial| r.mul(x, y).unwrap();
                assert_eq!(add(&add(&a, &b), &c), add(&a, &add(&b, &c)));
                assert_eq!(add(&a, &b), add(&b, &a));
                assert_eq!(mul(&mul(&a, &b), &c), mul(&a, &mul(&b, &c)));
                assert_eq!(mul(&a, &b), mul(&b, &a));
                assert_eq!(mul(&a, &add(&b, &c)), add(&mul(&a, &b), &mul(&a, &c)));
                assert_eq!(add(&a, &a), a);
                assert!(add(&a, &r.neg(&a)).is_zero());
                assert!(add(&a, &r.zero()).is_zero());
                assert!(mul(&a, &r.zero()).is_zero());
                assert_eq!(add(&a, &b), coproduct_oracle(&r, &a, &b));
            }
        }
    }

    #[test]
    fn substitution_is_functorial() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let r = ring();
        let f = Semifield::cyclotomic(3).unwrap();
        for _ in 0..200 {
            let pp = random_poly(&r, &mut rng, 4, 3);
            let q = random_poly(&r, &mut rng, 3, 3);
            for point in f.elements().unwrap() {
                let composite = r.substitute(&pp, &r, std::slice::from_ref(&q)).unwrap();
                let lhs = r.substitute(&composite, &f, &[point]).unwrap();
                let qv = r.substitute(&q, &f, &[point]).unwrap();
                let rhs = r.substitute(&pp, &f, &[qv]).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn graded_order() {
        let ms = monomials_up_to(2, 2);
        let shown: Vec<Vec<u32>> = ms.iter().map(|m| m.0.clone()).collect();
        assert_eq!(shown, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]);
    }
}
