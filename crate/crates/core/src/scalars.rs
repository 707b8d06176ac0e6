//! Exact arithmetic in F∞, its cyclotomic extensions, general group
//! semifields and the ordered `LexMax` semifield of signed powers of x.
//!
//! Every unit is a group element, encoded in mixed radix over the cyclic
//! presentation. Addition follows the semifield rule: equal units add to
//! themselves, anything else cancels to zero. `LexMax` elements additionally
//! carry an integer exponent; two units over the same base element compare by
//! exponent and the higher one absorbs the lower.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SemifieldSpec {
    FInfinity,
    /// F∞ adjoined ζ with ζ^k = −1.
    Cyclotomic(u32),
    /// G ∪ {0} for G = Z/o₁ × … × Z/oₙ, negation given by `minus_one`.
    GroupSemifield { orders: Vec<u32>, minus_one: Vec<u32> },
    LexMax(Box<SemifieldSpec>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Scalar {
    Zero,
    /// `g` is the mixed-radix code of a group element; `exp` is always 0
    /// outside `LexMax`.
    Unit { g: u32, exp: i64 },
}

impl Scalar {
    pub fn unit(g: u32) -> Self {
        Scalar::Unit { g, exp: 0 }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Zero)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Semifield {
    spec: SemifieldSpec,
    orders: Vec<u32>,
    minus_one: u32,
    lexmax: bool,
    group_mul: Vec<u32>,
    group_inv: Vec<u32>,
}

fn encode(orders: &[u32], coords: &[u32]) -> u32 {
    let mut code = 0;
    for (o, c) in orders.iter().zip(coords) {
        code = code * o + c;
    }
    code
}

fn decode(orders: &[u32], mut code: u32) -> Vec<u32> {
    let mut coords = vec![0; orders.len()];
    for i in (0..orders.len()).rev() {
        coords[i] = code % orders[i];
        code /= orders[i];
    }
    coords
}

impl Semifield {
    pub fn new(spec: SemifieldSpec) -> Result<Self> {
        let (orders, minus_one, lexmax) = match &spec {
            SemifieldSpec::FInfinity => (vec![2], vec![1], false),
            SemifieldSpec::Cyclotomic(k) => {
                if *k == 0 {
                    return Err(Error::InvalidSemifield("cyclotomic degree must be positive".into()));
                }
                (vec![2 * k], vec![*k], false)
            }
            SemifieldSpec::GroupSemifield { orders, minus_one } => {
                (orders.clone(), minus_one.clone(), false)
            }
            SemifieldSpec::LexMax(base) => match base.as_ref() {
                SemifieldSpec::LexMax(_) => {
                    return Err(Error::InvalidSemifield("LexMax over LexMax is not supported".into()))
                }
                inner => {
                    let b = Semifield::new(inner.clone())?;
                    (b.orders.clone(), decode(&b.orders, b.minus_one), true)
                }
            },
        };
        if orders.is_empty() || orders.contains(&0) {
            return Err(Error::InvalidSemifield("cyclic orders must be positive".into()));
        }
        if minus_one.len() != orders.len() || minus_one.iter().zip(&orders).any(|(m, o)| m >= o) {
            return Err(Error::InvalidSemifield("minusOne is not an element of the group".into()));
        }
        let size: u32 = orders.iter().product();
        let mut group_mul = vec![0; (size * size) as usize];
        let mut group_inv = vec![0; size as usize];
        for a in 0..size {
            let ca = decode(&orders, a);
            for b in 0..size {
                let cb = decode(&orders, b);
                let cc: Vec<u32> = ca.iter().zip(&cb).zip(&orders).map(|((x, y), o)| (x + y) % o).collect();
                let c = encode(&orders, &cc);
                group_mul[(a * size + b) as usize] = c;
                if c == 0 {
                    group_inv[a as usize] = b;
                }
            }
        }
        let m = encode(&orders, &minus_one);
        if group_mul[(m * size + m) as usize] != 0 {
            return Err(Error::InvalidSemifield("minusOne has order greater than 2".into()));
        }
        if m == 0 {
            // a + (−a) = 0 cannot hold when −1 = 1
            return Err(Error::InvalidSemifield("minusOne must differ from the identity".into()));
        }
        Ok(Semifield {
            spec,
            orders,
            minus_one: m,
            lexmax,
            group_mul,
            group_inv,
        })
    }

    pub fn finfty() -> Self {
        Semifield::new(SemifieldSpec::FInfinity).expect("F∞ is valid")
    }

    pub fn cyclotomic(k: u32) -> Result<Self> {
        Semifield::new(SemifieldSpec::Cyclotomic(k))
    }

    pub fn lexmax_finfty() -> Self {
        Semifield::new(SemifieldSpec::LexMax(Box::new(SemifieldSpec::FInfinity))).expect("valid")
    }

    pub fn spec(&self) -> &SemifieldSpec {
        &self.spec
    }

    pub fn is_finite(&self) -> bool {
        !self.lexmax
    }

    pub fn is_lexmax(&self) -> bool {
        self.lexmax
    }

    pub fn group_order(&self) -> u32 {
        self.orders.iter().product()
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn zero(&self) -> Scalar {
        Scalar::Zero
    }

    pub fn one(&self) -> Scalar {
        Scalar::unit(0)
    }

    pub fn minus_one(&self) -> Scalar {
        Scalar::unit(self.minus_one)
    }

    /// ζ for cyclotomic fields, the first cyclic generator otherwise.
    pub fn generator(&self) -> Scalar {
        let mut coords = vec![0; self.orders.len()];
        *coords.last_mut().unwrap() = 1 % self.orders.last().unwrap();
        Scalar::unit(encode(&self.orders, &coords))
    }

    /// x¹ in `LexMax`.
    pub fn x(&self) -> Scalar {
        Scalar::Unit { g: 0, exp: 1 }
    }

    pub fn from_coords(&self, coords: &[u32]) -> Scalar {
        Scalar::unit(encode(&self.orders, coords))
    }

    pub fn coords(&self, s: &Scalar) -> Option<Vec<u32>> {
        match s {
            Scalar::Zero => None,
            Scalar::Unit { g, .. } => Some(decode(&self.orders, *g)),
        }
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        match s {
            Scalar::Zero => true,
            Scalar::Unit { g, exp } => *g < self.group_order() && (self.lexmax || *exp == 0),
        }
    }

    pub fn check(&self, s: &Scalar) -> Result<()> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(Error::MixedSemifields(format!("{s:?}")))
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Zero, _) | (_, Scalar::Zero) => Scalar::Zero,
            _ if a == b => *a,
            (Scalar::Unit { g: ga, exp: ea }, Scalar::Unit { g: gb, exp: eb }) => {
                if self.lexmax && ga == gb {
                    if ea > eb {
                        *a
                    } else {
                        *b
                    }
                } else {
                    Scalar::Zero
                }
            }
        }
    }

    pub fn try_add(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add(a, b))
    }

    /// Sum of a finite family; the empty sum is 0.
    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a Scalar>) -> Scalar {
        let mut it = items.into_iter();
        let Some(first) = it.next() else {
            return Scalar::Zero;
        };
        it.fold(*first, |acc, s| self.add(&acc, s))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Zero, _) | (_, Scalar::Zero) => Scalar::Zero,
            (Scalar::Unit { g: ga, exp: ea }, Scalar::Unit { g: gb, exp: eb }) => Scalar::Unit {
                g: self.group_mul[(ga * self.group_order() + gb) as usize],
                exp: ea + eb,
            },
        }
    }

    pub fn try_mul(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.mul(&self.minus_one(), a)
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        match a {
            Scalar::Zero => None,
            Scalar::Unit { g, exp } => Some(Scalar::Unit {
                g: self.group_inv[*g as usize],
                exp: -exp,
            }),
        }
    }

    pub fn pow(&self, a: &Scalar, n: u32) -> Scalar {
        (0..n).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// a ≤ b in the natural order, i.e. a + b = a.
    pub fn leq(&self, a: &Scalar, b: &Scalar) -> bool {
        self.add(a, b) == *a
    }

    /// Units in canonical order (code 0 = 1 first). Empty for `LexMax`.
    pub fn units(&self) -> Vec<Scalar> {
        if self.lexmax {
            return Vec::new();
        }
        (0..self.group_order()).map(Scalar::unit).collect()
    }

    /// 0 followed by the units; `None` for `LexMax`.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        if self.lexmax {
            return None;
        }
        let mut v = vec![Scalar::Zero];
        v.extend(self.units());
        Some(v)
    }

    /// Elements of `LexMax` with exponents in [−bound, bound], finite kinds
    /// ignore the bound.
    pub fn elements_within(&self, bound: i64) -> Vec<Scalar> {
        if !self.lexmax {
            return self.elements().unwrap();
        }
        let mut v = vec![Scalar::Zero];
        for g in 0..self.group_order() {
            for exp in -bound..=bound {
                v.push(Scalar::Unit { g, exp });
            }
        }
        v
    }

    /// Index of a unit within `units()`.
    pub fn unit_index(&self, s: &Scalar) -> Option<usize> {
        match s {
            Scalar::Unit { g, exp: 0 } if !self.lexmax => Some(*g as usize),
            _ => None,
        }
    }

    /// Human-readable form: `1`, `-1`, `z^2`, `-z`, `x^-3`, `g(1,0)`.
    pub fn display(&self, s: &Scalar) -> String {
        let Scalar::Unit { g, exp } = s else {
            return "0".to_string();
        };
        let base = match &self.spec {
            SemifieldSpec::LexMax(inner) => {
                let b = Semifield::new((**inner).clone()).expect("validated");
                b.display_unit(*g)
            }
            _ => self.display_unit(*g),
        };
        if !self.lexmax || *exp == 0 {
            return base;
        }
        let xpart = if *exp == 1 { "x".to_string() } else { format!("x^{exp}") };
        match base.as_str() {
            "1" => xpart,
            "-1" => format!("-{xpart}"),
            _ => format!("{base}*{xpart}"),
        }
    }

    fn display_unit(&self, g: u32) -> String {
        match &self.spec {
            SemifieldSpec::FInfinity => if g == 0 { "1" } else { "-1" }.to_string(),
            SemifieldSpec::Cyclotomic(k) => {
                let (sign, j) = if g >= *k { ("-", g - k) } else { ("", g) };
                match j {
                    0 => format!("{sign}1"),
                    1 => format!("{sign}z"),
                    _ => format!("{sign}z^{j}"),
                }
            }
            _ => {
                let c = decode(&self.orders, g);
                let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                format!("g({})", parts.join(","))
            }
        }
    }
}

impl fmt::Display for Semifield {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.spec {
            SemifieldSpec::FInfinity => write!(f, "Finf"),
            SemifieldSpec::Cyclotomic(k) => write!(f, "Finf^{k}"),
            SemifieldSpec::GroupSemifield { orders, minus_one } => {
                write!(f, "Group{orders:?}/{minus_one:?}")
            }
            SemifieldSpec::LexMax(b) => write!(f, "LexMax({})", Semifield::new((**b).clone()).map_err(|_| fmt::Error)?),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lexmax() -> Semifield {
        Semifield::lexmax_finfty()
    }

    fn xp(s: &Semifield, sign: bool, exp: i64) -> Scalar {
        let u = Scalar::Unit { g: 0, exp };
        if sign {
            u
        } else {
            s.neg(&u)
        }
    }

    #[test]
    fn finfty_carrier() {
        let f = Semifield::finfty();
        let els: Vec<String> = f.elements().unwrap().iter().map(|s| f.display(s)).collect();
        assert_eq!(els, vec!["0", "1", "-1"]);
        assert_eq!(f.add(&f.one(), &f.one()), f.one());
        assert_eq!(f.add(&f.one(), &f.minus_one()), Scalar::Zero);
    }

    #[test]
    fn cyclotomic_three() {
        let f = Semifield::cyclotomic(3).unwrap();
        assert_eq!(f.elements().unwrap().len(), 7);
        let z = f.generator();
        let z2 = f.pow(&z, 2);
        let z5 = f.pow(&z, 5);
        assert_eq!(z5, f.neg(&z2));
        assert_eq!(f.add(&z2, &z5), Scalar::Zero);
        assert_eq!(f.mul(&z2, &f.pow(&z, 4)), f.one());
        assert_eq!(f.pow(&z, 3), f.minus_one());
    }

    #[test]
    fn group_semifield_on_z2_is_finfty() {
        let g = Semifield::new(SemifieldSpec::GroupSemifield { orders: vec![2], minus_one: vec![1] }).unwrap();
        let f = Semifield::finfty();
        let ge = g.elements().unwrap();
        let fe = f.elements().unwrap();
        for (a, fa) in ge.iter().zip(&fe) {
            for (b, fb) in ge.iter().zip(&fe) {
                assert_eq!(g.add(a, b), f.add(fa, fb));
                assert_eq!(g.mul(a, b), f.mul(fa, fb));
            }
        }
    }

    #[test]
    fn invalid_specs_rejected() {
        let bad = SemifieldSpec::GroupSemifield { orders: vec![4], minus_one: vec![1] };
        assert!(Semifield::new(bad).is_err());
        let trivial = SemifieldSpec::GroupSemifield { orders: vec![3], minus_one: vec![0] };
        assert!(Semifield::new(trivial).is_err());
        let nested = SemifieldSpec::LexMax(Box::new(SemifieldSpec::LexMax(Box::new(SemifieldSpec::FInfinity))));
        assert!(Semifield::new(nested).is_err());
        assert!(Semifield::cyclotomic(0).is_err());
    }

    #[test]
    fn lexmax_examples() {
        let l = lexmax();
        let x = xp(&l, true, 1);
        let mx2 = xp(&l, false, 2);
        assert_eq!(l.add(&x, &mx2), Scalar::Zero);
        assert_eq!(l.mul(&xp(&l, true, 2), &xp(&l, true, -1)), x);
        assert_eq!(l.add(&x, &l.one()), x);
        // x ≤ 1 ≤ x^{-1}
        assert!(l.leq(&x, &l.one()));
        assert!(l.leq(&l.one(), &xp(&l, true, -1)));
        assert_eq!(l.display(&mx2), "-x^2");
    }

    #[test]
    fn zero_annihilates() {
        let f = Semifield::cyclotomic(2).unwrap();
        for a in f.elements().unwrap() {
            assert_eq!(f.mul(&a, &Scalar::Zero), Scalar::Zero);
            assert_eq!(f.add(&a, &Scalar::Zero), Scalar::Zero);
        }
    }

    #[test]
    fn mixed_semifield_rejected() {
        let f = Semifield::finfty();
        let l = lexmax();
        assert!(f.try_add(&l.x(), &f.one()).is_err());
        assert!(Semifield::cyclotomic(3).unwrap().try_mul(&Scalar::unit(7), &Scalar::unit(0)).is_err());
    }

    fn sign_blind_add(a: (i8, i64), b: (i8, i64)) -> Option<(i8, i64)> {
        // (sign, exp); None = 0. Larger exponent wins regardless of sign.
        if a == b {
            return Some(a);
        }
        if a.1 == b.1 {
            return None;
        }
        Some(if a.1 > b.1 { a } else { b })
    }

    #[test]
    fn lexmax_associative_sign_blind_not() {
        let l = lexmax();
        let els = l.elements_within(8);
        for a in &els {
            for b in &els {
                for c in &els {
                    assert_eq!(l.add(&l.add(a, b), c), l.add(a, &l.add(b, c)));
                }
            }
        }
        let mut failure = None;
        let signed: Vec<(i8, i64)> = (-8..=8).flat_map(|e| [(1, e), (-1, e)]).collect();
        let lift = |v: Option<(i8, i64)>, w: (i8, i64)| v.and_then(|v| sign_blind_add(v, w));
        'outer: for &a in &signed {
            for &b in &signed {
                for &c in &signed {
                    let left = lift(sign_blind_add(a, b), c);
                    let right = sign_blind_add(b, c).and_then(|bc| sign_blind_add(a, bc));
                    if left != right {
                        failure = Some((a, b, c));
                        break 'outer;
                    }
                }
            }
        }
        assert!(failure.is_some());
    }

    #[test]
    fn units_pairwise_incomparable() {
        for k in 1..=6 {
            let f = Semifield::cyclotomic(k).unwrap();
            let us = f.units();
            for a in &us {
                for b in &us {
                    if a != b {
                        assert!(!f.leq(a, b));
                        assert_eq!(f.add(a, b), Scalar::Zero);
                    }
                }
            }
        }
    }
}
