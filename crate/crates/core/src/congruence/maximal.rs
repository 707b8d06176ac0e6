use std::collections::BTreeSet;

use super::{check_congruence, check_ideal, Congruence};
use crate::error::{Error, Result};
use crate::structures::{natural_order, Elem, FiniteStructure};

/// Inclusion-maximal filters disjoint from the ideal. Filters of a finite
/// module are ∅ or principal, and F_a misses a down-closed I exactly when
/// a ∉ I, so these are the F_a for the minimal elements a outside I.
pub fn maximal_filters(m: &FiniteStructure, ideal: &[Elem]) -> Vec<Vec<Elem>> {
    let ord = natural_order(m);
    let outside: Vec<Elem> = m.elements().filter(|a| !ideal.contains(a)).collect();
    outside
        .iter()
        .copied()
        .filter(|&a| outside.iter().all(|&b| !ord.lt(b, a)))
        .map(|a| ord.up_set(a))
        .collect()
}

/// Distinct sets F:a = {x : ax ∈ F} over maximal filters F and all a.
pub fn quasimaximal_filters(m: &FiniteStructure, ideal: &[Elem]) -> Vec<Vec<Elem>> {
    let mut out = BTreeSet::new();
    for f in maximal_filters(m, ideal) {
        for a in m.elements() {
            let set: Vec<Elem> = m.elements().filter(|&x| f.contains(&m.mul(a, x))).collect();
            if !set.is_empty() {
                out.insert(set);
            }
        }
    }
    out.into_iter().collect()
}

/// Elements with the same family of containing sets.
fn same_membership(m: &FiniteStructure, sets: &[Vec<Elem>]) -> Congruence {
    let sig: Vec<Vec<usize>> = m
        .elements()
        .map(|a| (0..sets.len()).filter(|&i| sets[i].contains(&a)).collect())
        .collect();
    let labels: Vec<usize> = m.elements().map(|a| sig.iter().position(|s| *s == sig[a]).unwrap()).collect();
    Congruence::from_labels(&labels)
}

fn separated_by(m: &FiniteStructure, sets: &[Vec<Elem>]) -> bool {
    m.elements()
        .all(|a| m.elements().all(|b| a == b || sets.iter().any(|f| f.contains(&a) != f.contains(&b))))
}

/// Every pair of distinct elements is separated by a maximal filter.
pub fn is_separable(m: &FiniteStructure) -> bool {
    separated_by(m, &maximal_filters(m, &[m.zero()]))
}

/// Every pair of distinct elements is separated by a quasimaximal filter.
pub fn is_quasiseparable(m: &FiniteStructure) -> bool {
    separated_by(m, &quasimaximal_filters(m, &[m.zero()]))
}

/// The largest congruence with kernel I: a ~ b iff a and b lie in the same
/// maximal filters with respect to I.
pub fn max_congruence_module(m: &FiniteStructure, ideal: &[Elem]) -> Result<Congruence> {
    let module = m.underlying_module();
    check_ideal(&module, ideal).map_err(Error::NotIdeal)?;
    let c = same_membership(m, &maximal_filters(m, ideal));
    check_congruence(&module, |a, b| c.related(a, b)).map_err(Error::NotCongruence)?;
    Ok(c)
}

/// Algebra version, using quasimaximal filters F:a.
pub fn max_congruence_algebra(m: &FiniteStructure, ideal: &[Elem]) -> Result<Congruence> {
    if !m.is_algebra() {
        return Err(Error::InvalidArgument("expected an algebra".into()));
    }
    check_ideal(m, ideal).map_err(Error::NotIdeal)?;
    let c = same_membership(m, &quasimaximal_filters(m, ideal));
    check_congruence(m, |a, b| c.related(a, b)).map_err(Error::NotCongruence)?;
    Ok(c)
}
