use std::collections::BTreeSet;

use super::{check_congruence, cong_closure, Congruence};
use crate::error::{Error, Result, Witness};
use crate::scalars::{Scalar, Semifield};
use crate::structures::{Elem, FiniteStructure};

fn require_field(f: &FiniteStructure) -> Result<Elem> {
    match f.one() {
        Some(one) if f.is_field() => Ok(one),
        _ => Err(Error::NotField("structure is not a division algebra".into())),
    }
}

/// {(a, b) : a, b ≠ 0, a + b ≠ 0} ∪ {(0, 0)}.
pub fn field_max_congruence(f: &FiniteStructure) -> Result<Congruence> {
    require_field(f)?;
    let z = f.zero();
    let rel = |a: Elem, b: Elem| (a == z && b == z) || (a != z && b != z && f.add(a, b) != z);
    check_congruence(f, rel).map_err(Error::NotCongruence)?;
    let labels: Vec<usize> = f.elements().map(|a| f.elements().find(|&b| rel(a, b)).unwrap()).collect();
    Ok(Congruence::from_labels(&labels))
}

/// Membership in the maximal congruence of a semifield given by formula,
/// usable on `LexMax`.
pub fn lexmax_max_congruence_contains(sf: &Semifield, a: &Scalar, b: &Scalar) -> bool {
    (a.is_zero() && b.is_zero()) || (!a.is_zero() && !b.is_zero() && !sf.add(a, b).is_zero())
}

fn inverse(f: &FiniteStructure, one: Elem, b: Elem) -> Elem {
    f.elements().find(|&y| f.mul(b, y) == one).expect("field element has an inverse")
}

/// Class of 1 in the congruence generated by (x, 1), by closure.
pub fn unit_class_by_closure(f: &FiniteStructure, x: Elem) -> Result<Vec<Elem>> {
    let one = require_field(f)?;
    let c = cong_closure(f, &[(x, one)]);
    Ok(f.elements().filter(|&a| c.related(a, one)).collect())
}

/// Class of 1 by the quotient formula
/// {Σλ_i x^i / Σμ_j x^j : Σλ_i = Σμ_j = 1}.
pub fn unit_class_by_formula(f: &FiniteStructure, x: Elem) -> Result<Vec<Elem>> {
    let one = require_field(f)?;
    if x == f.zero() {
        return Err(Error::InvalidArgument("x must be nonzero".into()));
    }
    let period = (1..=f.len()).find(|&p| f.pow(x, p as u32) == one).unwrap();
    let lambdas: Vec<Elem> = f.nonzero().collect();
    // reachable (Σλ, Σλx^i) over nonempty choices of terms
    let mut states: BTreeSet<(Elem, Elem)> = BTreeSet::new();
    let mut quiet = 0;
    let mut i = 1u32;
    while quiet < period {
        let xi = f.pow(x, i);
        let mut next = states.clone();
        for &l in &lambdas {
            let term = f.mul(l, xi);
            next.insert((l, term));
            for &(s, t) in &states {
                next.insert((f.add(s, l), f.add(t, term)));
            }
        }
        if next == states {
            quiet += 1;
        } else {
            quiet = 0;
        }
        states = next;
        i += 1;
    }
    let numerators: Vec<Elem> = states.iter().filter(|(s, _)| *s == one).map(|&(_, t)| t).collect();
    let mut out = BTreeSet::new();
    for &a in &numerators {
        for &b in numerators.iter().filter(|&&b| b != f.zero()) {
            out.insert(f.mul(a, inverse(f, one, b)));
        }
    }
    // 0 in the class of 1 makes the congruence improper
    if out.contains(&f.zero()) {
        return Ok(f.elements().collect());
    }
    Ok(out.into_iter().collect())
}

/// The S-set closure axioms: xy⁻¹, xy and λx + μy (λ + μ = 1) stay in S.
fn check_s_set(f: &FiniteStructure, one: Elem, s: &[Elem]) -> std::result::Result<(), Witness> {
    let name = |xs: &[Elem]| xs.iter().map(|&x| f.name(x).to_string()).collect();
    for &x in s {
        for &y in s {
            if !s.contains(&f.mul(x, inverse(f, one, y))) || !s.contains(&f.mul(x, y)) {
                return Err(Witness::new("xy^-1, xy ∈ S", name(&[x, y])));
            }
            for l in f.elements() {
                for m in f.elements() {
                    if f.add(l, m) == one && !s.contains(&f.add(f.mul(l, x), f.mul(m, y))) {
                        return Err(Witness::new("λx+μy ∈ S", name(&[x, y, l, m])));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Class of 1 in gen{(x, 1)}; the closure and formula computations must
/// agree, and a proper class must satisfy the S-set axioms.
pub fn unit_class_generated(f: &FiniteStructure, x: Elem) -> Result<Vec<Elem>> {
    let one = require_field(f)?;
    if x == f.zero() {
        return Err(Error::InvalidArgument("x must be nonzero".into()));
    }
    let a = unit_class_by_closure(f, x)?;
    let b = unit_class_by_formula(f, x)?;
    if a != b {
        return Err(Error::Verification("closure and formula give different classes".into()));
    }
    if !a.contains(&f.zero()) {
        check_s_set(f, one, &a).map_err(|w| Error::Verification(w.to_string()))?;
    }
    Ok(a)
}

fn within(s: &Scalar, bound: i64) -> bool {
    match s {
        Scalar::Zero => true,
        Scalar::Unit { exp, .. } => exp.abs() <= bound,
    }
}

/// `LexMax` version on the exponent window [−bound, bound]. Returns the
/// class computed by closing {1, x} under the S-set operations inside the
/// window, and by the quotient formula with λ from the window and powers
/// up to 2·bound + 1, intersected with the window.
pub fn unit_class_lexmax(sf: &Semifield, x: &Scalar, bound: i64) -> Result<(Vec<Scalar>, Vec<Scalar>)> {
    if !sf.is_lexmax() {
        return Err(Error::InvalidArgument("expected a LexMax semifield".into()));
    }
    if x.is_zero() {
        return Err(Error::InvalidArgument("x must be nonzero".into()));
    }
    let window: Vec<Scalar> = sf.elements_within(bound).into_iter().filter(|s| !s.is_zero()).collect();
    let one = sf.one();
    let pairs: Vec<(Scalar, Scalar)> = window
        .iter()
        .flat_map(|l| window.iter().map(move |m| (*l, *m)))
        .filter(|(l, m)| sf.add(l, m) == one)
        .collect();

    let mut s: BTreeSet<Scalar> = [one].into_iter().chain(within(x, bound).then_some(*x)).collect();
    let mut improper = false;
    loop {
        let cur: Vec<Scalar> = s.iter().cloned().collect();
        let mut next = s.clone();
        for a in &cur {
            for b in &cur {
                let mut cands = vec![sf.mul(a, &sf.inv(b).unwrap()), sf.mul(a, b)];
                cands.extend(pairs.iter().map(|(l, m)| sf.add(&sf.mul(l, a), &sf.mul(m, b))));
                for c in cands {
                    if c.is_zero() {
                        improper = true;
                    } else if within(&c, bound) {
                        next.insert(c);
                    }
                }
            }
        }
        if improper || next == s {
            break;
        }
        s = next;
    }
    let closure: Vec<Scalar> = if improper {
        sf.elements_within(bound)
    } else {
        s.into_iter().collect()
    };

    let mut states: BTreeSet<(Scalar, Scalar)> = BTreeSet::new();
    for i in 1..=(2 * bound as u32 + 1) {
        let xi = sf.pow(x, i);
        let mut next = states.clone();
        for l in &window {
            let term = sf.mul(l, &xi);
            next.insert((*l, term));
            for (a, t) in &states {
                next.insert((sf.add(a, l), sf.add(t, &term)));
            }
        }
        states = next;
    }
    let nums: Vec<Scalar> = states.iter().filter(|(a, _)| *a == one).map(|(_, t)| *t).collect();
    let mut formula = BTreeSet::new();
    for a in &nums {
        for b in nums.iter().filter(|b| !b.is_zero()) {
            let q = sf.mul(a, &sf.inv(b).unwrap());
            if within(&q, bound) {
                formula.insert(q);
            }
        }
    }
    let formula: Vec<Scalar> = if formula.contains(&Scalar::Zero) {
        sf.elements_within(bound)
    } else {
        formula.into_iter().collect()
    };
    let (mut closure, mut formula) = (closure, formula);
    closure.sort();
    formula.sort();
    Ok((closure, formula))
}
