//! Explicit finite modules and algebras given by operation tables.

mod build;
mod dual;
mod hom;
mod iso;
mod order;

pub use build::{build_structure, Completion, RawStructure, StructureKind};
pub use dual::{duality_pair, dual_module, hom_dual, hom_dual_by_sums, is_filter, natural_embedding, DualModule, DualValue};
pub use hom::{enumerate_homs, enumerate_homs_bruteforce, hom_extend, hom_module, is_homomorphism, ExtendOutcome, Homomorphism};
pub use iso::{find_isomorphism, isomorphic};
pub use order::{generators, join, module_dimension, natural_order, polygon_module, Closed, NaturalOrder};

use crate::error::{Error, Result, Witness};
use crate::poly::EvalTarget;
use crate::scalars::{Scalar, Semifield};

pub type Elem = usize;

/// A finite module (or algebra, when `mul` is present) over a finite
/// semifield. Elements are indices into `names`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteStructure {
    base: Semifield,
    names: Vec<String>,
    zero: Elem,
    one: Option<Elem>,
    add: Vec<Elem>,
    neg: Vec<Elem>,
    /// `scalar[u * n + a]` is the action of the u-th unit of `base` on `a`.
    scalar: Vec<Elem>,
    mul: Option<Vec<Elem>>,
}

impl FiniteStructure {
    /// Assembles a structure from complete tables and runs the axiom suite.
    #[allow(clippy::too_many_arguments)]
    pub fn from_tables(
        base: Semifield,
        names: Vec<String>,
        zero: Elem,
        one: Option<Elem>,
        add: Vec<Elem>,
        neg: Vec<Elem>,
        scalar: Vec<Elem>,
        mul: Option<Vec<Elem>>,
    ) -> Result<Self> {
        let s = Self::from_tables_unchecked(base, names, zero, one, add, neg, scalar, mul)?;
        s.check_axioms().map_err(Error::Axiom)?;
        Ok(s)
    }

    /// Shape checks only. Callers that derive tables from already-valid
    /// structures use this and assert the axioms in tests.
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn from_tables_unchecked(
        base: Semifield,
        names: Vec<String>,
        zero: Elem,
        one: Option<Elem>,
        add: Vec<Elem>,
        neg: Vec<Elem>,
        scalar: Vec<Elem>,
        mul: Option<Vec<Elem>>,
    ) -> Result<Self> {
        if !base.is_finite() {
            return Err(Error::InvalidArgument("structures need a finite base semifield".into()));
        }
        let n = names.len();
        let units = base.group_order() as usize;
        let ok = n > 0
            && zero < n
            && one.is_none_or(|o| o < n)
            && add.len() == n * n
            && neg.len() == n
            && scalar.len() == units * n
            && mul.as_ref().is_none_or(|m| m.len() == n * n)
            && add.iter().chain(&neg).chain(&scalar).all(|&e| e < n)
            && mul.as_ref().is_none_or(|m| m.iter().all(|&e| e < n));
        if !ok {
            return Err(Error::Format("operation tables have the wrong shape".into()));
        }
        Ok(FiniteStructure { base, names, zero, one, add, neg, scalar, mul })
    }

    /// Tabulates operations given as functions on indices; the result is
    /// checked against the axiom suite.
    #[allow(clippy::too_many_arguments)]
    pub fn tabulate(
        base: &Semifield,
        names: Vec<String>,
        zero: Elem,
        one: Option<Elem>,
        add: impl Fn(Elem, Elem) -> Elem,
        neg: impl Fn(Elem) -> Elem,
        scalar: impl Fn(usize, Elem) -> Elem,
        mul: Option<&dyn Fn(Elem, Elem) -> Elem>,
    ) -> Result<Self> {
        let n = names.len();
        let units = base.group_order() as usize;
        let add_t = (0..n * n).map(|i| add(i / n, i % n)).collect();
        let neg_t = (0..n).map(&neg).collect();
        let sc_t = (0..units * n).map(|i| scalar(i / n, i % n)).collect();
        let mul_t = mul.map(|m| (0..n * n).map(|i| m(i / n, i % n)).collect());
        Self::from_tables(base.clone(), names, zero, one, add_t, neg_t, sc_t, mul_t)
    }

    pub fn base(&self) -> &Semifield {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.len()
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> + '_ {
        self.elements().filter(move |&a| a != self.zero)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Result<Elem> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn one(&self) -> Option<Elem> {
        self.one
    }

    pub fn is_algebra(&self) -> bool {
        self.mul.is_some()
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a * self.len() + b]
    }

    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a]
    }

    pub fn unit_count(&self) -> usize {
        self.base.group_order() as usize
    }

    /// Action of the u-th unit of the base.
    pub fn scale_unit(&self, u: usize, a: Elem) -> Elem {
        self.scalar[u * self.len() + a]
    }

    pub fn scale(&self, c: &Scalar, a: Elem) -> Elem {
        match self.base.unit_index(c) {
            Some(u) => self.scale_unit(u, a),
            None => self.zero,
        }
    }

    /// Panics on a module; check `is_algebra` first.
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul.as_ref().expect("structure has no multiplication")[a * self.len() + b]
    }

    pub fn sum(&self, items: impl IntoIterator<Item = Elem>) -> Option<Elem> {
        items.into_iter().reduce(|x, y| self.add(x, y))
    }

    pub fn pow(&self, a: Elem, n: u32) -> Elem {
        let one = self.one.expect("unital algebra");
        (0..n).fold(one, |acc, _| self.mul(acc, a))
    }

    pub fn is_commutative(&self) -> bool {
        match &self.mul {
            None => true,
            Some(_) => self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a))),
        }
    }

    /// Every nonzero element has a multiplicative inverse.
    pub fn is_field(&self) -> bool {
        let Some(one) = self.one else { return false };
        self.is_algebra() && self.nonzero().all(|a| self.elements().any(|b| self.mul(a, b) == one))
    }

    fn w(&self, property: &str, els: &[Elem]) -> Witness {
        Witness::new(property, els.iter().map(|&e| self.names[e].clone()).collect())
    }

    /// The full module (and algebra) axiom suite, exhaustively. Returns the
    /// first violation in canonical element order.
    pub fn check_axioms(&self) -> std::result::Result<(), Witness> {
        let els: Vec<Elem> = self.elements().collect();
        let z = self.zero;
        for &a in &els {
            if self.add(a, a) != a {
                return Err(self.w("idempotence a+a=a", &[a]));
            }
            if self.add(a, self.neg(a)) != z {
                return Err(self.w("a+(-a)=0", &[a]));
            }
            if self.neg(self.neg(a)) != a {
                return Err(self.w("-(-a)=a", &[a]));
            }
            if self.add(z, a) != z {
                return Err(self.w("0+a=0", &[a]));
            }
            for &b in &els {
                if self.add(a, b) != self.add(b, a) {
                    return Err(self.w("commutativity a+b=b+a", &[a, b]));
                }
                if self.neg(self.add(a, b)) != self.add(self.neg(a), self.neg(b)) {
                    return Err(self.w("-(a+b)=(-a)+(-b)", &[a, b]));
                }
                for &c in &els {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(self.w("associativity (a+b)+c=a+(b+c)", &[a, b, c]));
                    }
                }
            }
        }
        self.check_scalar_axioms()?;
        if self.mul.is_some() {
            self.check_algebra_axioms()?;
        }
        Ok(())
    }

    fn check_scalar_axioms(&self) -> std::result::Result<(), Witness> {
        let units = self.base.units();
        let minus = self.base.unit_index(&self.base.minus_one()).unwrap();
        for a in self.elements() {
            if self.scale_unit(0, a) != a {
                return Err(self.w("1·a=a", &[a]));
            }
            if self.scale_unit(minus, a) != self.neg(a) {
                return Err(self.w("(-1)·a=-a", &[a]));
            }
        }
        for (u, lu) in units.iter().enumerate() {
            if self.scale_unit(u, self.zero) != self.zero {
                return Err(self.w(&format!("{}·0=0", self.base.display(lu)), &[self.zero]));
            }
            for a in self.elements() {
                for (v, lv) in units.iter().enumerate() {
                    let prod = self.base.unit_index(&self.base.mul(lu, lv)).unwrap();
                    if self.scale_unit(u, self.scale_unit(v, a)) != self.scale_unit(prod, a) {
                        return Err(self.w(&format!("λ(μa)=(λμ)a for λ={}, μ={}", self.base.display(lu), self.base.display(lv)), &[a]));
                    }
                    let sum = self.base.add(lu, lv);
                    let expected = self.scale(&sum, a);
                    if self.add(self.scale_unit(u, a), self.scale_unit(v, a)) != expected {
                        return Err(self.w(&format!("(λ+μ)a=λa+μa for λ={}, μ={}", self.base.display(lu), self.base.display(lv)), &[a]));
                    }
                }
                for b in self.elements() {
                    if self.scale_unit(u, self.add(a, b)) != self.add(self.scale_unit(u, a), self.scale_unit(u, b)) {
                        return Err(self.w(&format!("λ(a+b)=λa+λb for λ={}", self.base.display(lu)), &[a, b]));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_algebra_axioms(&self) -> std::result::Result<(), Witness> {
        let els: Vec<Elem> = self.elements().collect();
        let z = self.zero;
        for &a in &els {
            if self.mul(a, z) != z || self.mul(z, a) != z {
                return Err(self.w("a·0=0·a=0", &[a]));
            }
            if let Some(one) = self.one {
                if self.mul(a, one) != a || self.mul(one, a) != a {
                    return Err(self.w("a·1=1·a=a", &[a]));
                }
            }
            for &b in &els {
                let ab = self.mul(a, b);
                if self.mul(self.neg(a), b) != self.neg(ab) || self.mul(a, self.neg(b)) != self.neg(ab) {
                    return Err(self.w("(-a)b=a(-b)=-(ab)", &[a, b]));
                }
                for u in 0..self.unit_count() {
                    let l = self.scale_unit(u, ab);
                    if self.mul(self.scale_unit(u, a), b) != l || self.mul(a, self.scale_unit(u, b)) != l {
                        return Err(self.w("λ(ab)=(λa)b=a(λb)", &[a, b]));
                    }
                }
                for &c in &els {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(self.w("associativity (ab)c=a(bc)", &[a, b, c]));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(ab, self.mul(a, c)) {
                        return Err(self.w("distributivity a(b+c)=ab+ac", &[a, b, c]));
                    }
                    if self.mul(self.add(a, b), c) != self.add(self.mul(a, c), self.mul(b, c)) {
                        return Err(self.w("distributivity (a+b)c=ac+bc", &[a, b, c]));
                    }
                }
            }
        }
        Ok(())
    }

    /// Replaces element names; used by constructions that rename carriers.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.len() {
            return Err(Error::InvalidArgument("name list length differs from carrier".into()));
        }
        self.names = names;
        Ok(self)
    }

    /// The base semifield as a one-dimensional module over itself.
    pub fn base_line(base: &Semifield) -> Result<Self> {
        let s = Self::field(base)?;
        Ok(FiniteStructure { mul: None, one: None, ..s })
    }

    /// A finite semifield as an algebra over itself.
    pub fn field(base: &Semifield) -> Result<Self> {
        let els = base
            .elements()
            .ok_or_else(|| Error::InvalidArgument("semifield must be finite".into()))?;
        let n = els.len();
        let idx = |s: &Scalar| els.iter().position(|e| e == s).unwrap();
        let names = els.iter().map(|e| base.display(e)).collect();
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for (i, a) in els.iter().enumerate() {
            for (j, b) in els.iter().enumerate() {
                add[i * n + j] = idx(&base.add(a, b));
                mul[i * n + j] = idx(&base.mul(a, b));
            }
        }
        let neg = els.iter().map(|a| idx(&base.neg(a))).collect();
        let mut scalar = Vec::with_capacity(base.units().len() * n);
        for u in base.units() {
            scalar.extend(els.iter().map(|a| idx(&base.mul(&u, a))));
        }
        Self::from_tables_unchecked(base.clone(), names, 0, Some(idx(&base.one())), add, neg, scalar, Some(mul))
    }

    /// Quotient by a partition given as a representative per element (the
    /// least element of each block).
    pub fn quotient(&self, rep: &[Elem]) -> Result<(FiniteStructure, Vec<Elem>)> {
        let reps: Vec<Elem> = self.elements().filter(|&a| rep[a] == a).collect();
        let class_of: Vec<Elem> = self.elements().map(|a| reps.binary_search(&rep[a]).unwrap()).collect();
        let n = reps.len();
        let names = reps.iter().map(|&r| self.names[r].clone()).collect();
        let mut add = vec![0; n * n];
        let mut mul = self.mul.as_ref().map(|_| vec![0; n * n]);
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                add[i * n + j] = class_of[self.add(a, b)];
                if let Some(m) = mul.as_mut() {
                    m[i * n + j] = class_of[self.mul(a, b)];
                }
            }
        }
        let neg = reps.iter().map(|&a| class_of[self.neg(a)]).collect();
        let mut scalar = Vec::with_capacity(self.unit_count() * n);
        for u in 0..self.unit_count() {
            scalar.extend(reps.iter().map(|&a| class_of[self.scale_unit(u, a)]));
        }
        let q = Self::from_tables_unchecked(
            self.base.clone(),
            names,
            class_of[self.zero],
            self.one.map(|o| class_of[o]),
            add,
            neg,
            scalar,
            mul,
        )?;
        Ok((q, class_of))
    }

    /// Drops the multiplication.
    pub fn underlying_module(&self) -> FiniteStructure {
        FiniteStructure { mul: None, one: None, ..self.clone() }
    }

    pub fn add_table(&self) -> &[Elem] {
        &self.add
    }
}

/// Finite algebras are substitution targets for polynomials.
impl EvalTarget for FiniteStructure {
    type Value = Elem;

    fn zero(&self) -> Elem {
        self.zero
    }

    fn one(&self) -> Elem {
        self.one.expect("unital algebra")
    }

    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        FiniteStructure::add(self, *a, *b)
    }

    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        FiniteStructure::mul(self, *a, *b)
    }

    fn embed(&self, base: &Semifield, c: &Scalar) -> Result<Elem> {
        let one = self.one.ok_or_else(|| Error::InvalidArgument("target algebra has no unit".into()))?;
        if c.is_zero() {
            return Ok(self.zero);
        }
        if base.spec() == self.base.spec() {
            return Ok(self.scale(c, one));
        }
        crate::poly::embed_sign(base, c, one, self.neg(one))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fields_pass_axioms() {
        for k in 1..=6 {
            let f = FiniteStructure::field(&Semifield::cyclotomic(k).unwrap()).unwrap();
            f.check_axioms().unwrap();
            assert!(f.is_field());
        }
    }

    #[test]
    fn nil2_passes_axioms() {
        let a = fixtures::nil2();
        a.check_axioms().unwrap();
        assert!(!a.is_field());
    }

    #[test]
    fn broken_table_gives_witness() {
        let f = FiniteStructure::field(&Semifield::finfty()).unwrap();
        let mut add = f.add.clone();
        add[3 + 2] = 1; // 1 + (-1) = 1
        let err = FiniteStructure::from_tables(
            f.base.clone(),
            f.names.clone(),
            0,
            f.one,
            add,
            f.neg.clone(),
            f.scalar.clone(),
            f.mul.clone(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Axiom(_)));
    }

    #[test]
    fn polynomial_into_finite_algebra() {
        use crate::poly::PolyRing;
        let r = PolyRing::finfty(&["x"]);
        let a = fixtures::nil2();
        let x = a.index_of("x").unwrap();
        let p = r.add(&r.one(), &r.var(0)).unwrap();
        assert_eq!(r.substitute(&p, &a, &[x]).unwrap(), a.zero());
        let sq = r.mul(&r.var(0), &r.var(0)).unwrap();
        assert_eq!(r.substitute(&sq, &a, &[x]).unwrap(), a.zero());
    }
}
