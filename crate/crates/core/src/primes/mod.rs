//! Prime, radical and cancellative congruences, congruence lattices,
//! Spec posets, the prime congruences of F∞[x] and prime decomposition.

mod catalog;
mod krull;
mod lemmas;

pub use catalog::{catalog_entry, polyprime_catalog, verify_catalog_entry, CatalogEntry, CatalogReport, Model, MonomialsOnly};
pub use krull::{krull_via_catalog, two_variable_chain, ChainReport, KrullReport, LexMonomials};
pub use lemmas::{
    annihilation_replay, is_prime_first_definition, roots_replay, technical_lemma_replay, trichotomy_replay,
    zero_divisor_replay,
};

use std::collections::BTreeSet;

use serde::Serialize;

use crate::congruence::{check_congruence, cong_closure, Congruence};
use crate::error::{Error, Result, Witness};
use crate::structures::{Elem, FiniteStructure};

/// Largest carrier for which all congruences are enumerated.
pub const ENUMERATION_GUARD: usize = 12;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub is_congruence: bool,
    pub is_proper: bool,
    pub is_prime: bool,
    pub is_radical: bool,
    pub is_cancellative: bool,
}

/// Flags with a counterexample for each failed one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceClass {
    pub flags: Flags,
    pub witness: Vec<Witness>,
}

fn names(a: &FiniteStructure, xs: &[Elem]) -> Vec<String> {
    xs.iter().map(|&x| a.name(x).to_string()).collect()
}

/// (a, b)(c, d) = (ac + bd, ad + bc).
pub fn pair_product(a: &FiniteStructure, (x, y): (Elem, Elem), (u, v): (Elem, Elem)) -> (Elem, Elem) {
    (a.add(a.mul(x, u), a.mul(y, v)), a.add(a.mul(x, v), a.mul(y, u)))
}

/// Condition on quadruples: (a,b)(c,d) ∈ C forces (a,b), (c,d),
/// (ac+bd, 0) or (ad+bc, 0) into C.
pub fn prime_condition_one(a: &FiniteStructure, c: &Congruence) -> std::result::Result<(), Witness> {
    let z = a.zero();
    for p in a.elements() {
        for q in a.elements() {
            for r in a.elements() {
                for s in a.elements() {
                    let (u, v) = pair_product(a, (p, q), (r, s));
                    if c.related(u, v) && !c.related(p, q) && !c.related(r, s) && !c.related(u, z) && !c.related(v, z) {
                        return Err(Witness::new("prime condition (a,b)(c,d)", names(a, &[p, q, r, s])));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Condition on triples: (ac, bc) ∈ C forces (a, b) or (c, 0) into C.
pub fn prime_condition_two(a: &FiniteStructure, c: &Congruence) -> std::result::Result<(), Witness> {
    for p in a.elements() {
        for q in a.elements() {
            for r in a.elements() {
                if c.related(a.mul(p, r), a.mul(q, r)) && !c.related(p, q) && !c.related(r, a.zero()) {
                    return Err(Witness::new("prime condition (ac,bc)", names(a, &[p, q, r])));
                }
            }
        }
    }
    Ok(())
}

pub fn radical_check(a: &FiniteStructure, c: &Congruence) -> std::result::Result<(), Witness> {
    let z = a.zero();
    for p in a.elements() {
        for q in a.elements() {
            let (u, v) = pair_product(a, (p, q), (p, q));
            let ab = a.mul(p, q);
            if c.related(u, v) && !c.related(p, q) && !c.related(u, z) && !c.related(ab, z) {
                return Err(Witness::new("radical", names(a, &[p, q])));
            }
        }
    }
    Ok(())
}

pub fn cancellative_check(a: &FiniteStructure, c: &Congruence) -> std::result::Result<(), Witness> {
    for p in a.elements() {
        for q in a.elements() {
            for r in a.elements() {
                if c.related(a.mul(p, q), a.mul(p, r)) && !c.related(p, a.zero()) && !c.related(q, r) {
                    return Err(Witness::new("cancellative", names(a, &[p, q, r])));
                }
            }
        }
    }
    Ok(())
}

pub fn is_prime(a: &FiniteStructure, c: &Congruence) -> bool {
    !c.is_full() && prime_condition_two(a, c).is_ok() && prime_condition_one(a, c).is_ok()
}

pub fn classify_congruence(a: &FiniteStructure, c: &Congruence) -> Result<CongruenceClass> {
    if !a.is_algebra() {
        return Err(Error::InvalidArgument("classification needs an algebra".into()));
    }
    if c.len() != a.len() {
        return Err(Error::InvalidArgument("congruence and structure sizes differ".into()));
    }
    let mut flags = Flags::default();
    let mut witness = Vec::new();
    if let Err(w) = check_congruence(a, |x, y| c.related(x, y)) {
        witness.push(w);
        return Ok(CongruenceClass { flags, witness });
    }
    flags.is_congruence = true;
    flags.is_proper = !c.is_full();
    if !flags.is_proper {
        witness.push(Witness::new("proper", names(a, &[a.zero(), a.one().unwrap()])));
    }
    let prime = prime_condition_two(a, c).and_then(|_| prime_condition_one(a, c));
    flags.is_prime = flags.is_proper && prime.is_ok();
    if let Err(w) = prime {
        witness.push(w);
    }
    match radical_check(a, c) {
        Ok(()) => flags.is_radical = true,
        Err(w) => witness.push(w),
    }
    match cancellative_check(a, c) {
        Ok(()) => flags.is_cancellative = true,
        Err(w) => witness.push(w),
    }
    Ok(CongruenceClass { flags, witness })
}

fn guard(a: &FiniteStructure) -> Result<()> {
    if a.len() > ENUMERATION_GUARD {
        return Err(Error::SizeGuard(format!(
            "congruence enumeration limited to {ENUMERATION_GUARD} elements, got {}",
            a.len()
        )));
    }
    Ok(())
}

/// All congruences, as the join-closure of the principal ones, sorted.
pub fn enumerate_congruences(a: &FiniteStructure) -> Result<Vec<Congruence>> {
    guard(a)?;
    let mut principal = BTreeSet::new();
    for x in a.elements() {
        for y in 0..x {
            principal.insert(cong_closure(a, &[(x, y)]));
        }
    }
    let principal: Vec<Congruence> = principal.into_iter().collect();
    let mut seen: BTreeSet<Congruence> = BTreeSet::new();
    let mut stack = vec![Congruence::diagonal(a)];
    seen.insert(Congruence::diagonal(a));
    while let Some(c) = stack.pop() {
        for p in &principal {
            let j = c.join(p, a);
            if seen.insert(j.clone()) {
                stack.push(j);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Oracle: every set partition, kept when it is compatible.
pub fn enumerate_congruences_by_partitions(a: &FiniteStructure) -> Result<Vec<Congruence>> {
    if a.len() > 8 {
        return Err(Error::SizeGuard("partition enumeration limited to 8 elements".into()));
    }
    let n = a.len();
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    fn rec(i: usize, max: usize, labels: &mut Vec<usize>, a: &FiniteStructure, out: &mut Vec<Congruence>) {
        if i == labels.len() {
            let c = Congruence::from_labels(labels);
            if check_congruence(a, |x, y| c.related(x, y)).is_ok() {
                out.push(c);
            }
            return;
        }
        for l in 0..=max + 1 {
            labels[i] = l;
            rec(i + 1, max.max(l), labels, a, out);
        }
    }
    if n > 0 {
        rec(1, 0, &mut labels, a, &mut out);
    }
    out.sort();
    Ok(out)
}

/// Prime congruences ordered by inclusion.
#[derive(Debug, Clone, Serialize)]
pub struct SpecPoset {
    #[serde(skip)]
    pub primes: Vec<Congruence>,
    pub labels: Vec<String>,
    /// Hasse edges (i, j): primes[i] ⊂ primes[j] with nothing between.
    pub edges: Vec<(usize, usize)>,
    pub chain: Vec<usize>,
    pub krull_dimension: Option<usize>,
}

impl SpecPoset {
    pub fn from_primes(primes: Vec<Congruence>, labels: Vec<String>) -> SpecPoset {
        let n = primes.len();
        let lt = |i: usize, j: usize| i != j && primes[i].is_subset(&primes[j]) && primes[i] != primes[j];
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if lt(i, j) && !(0..n).any(|k| lt(i, k) && lt(k, j)) {
                    edges.push((i, j));
                }
            }
        }
        let chain = longest_chain(n, &lt);
        let krull_dimension = chain.len().checked_sub(1);
        SpecPoset { primes, labels, edges, chain, krull_dimension }
    }

    /// Graphviz rendering of the Hasse diagram.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph spec {\n  rankdir=BT;\n");
        for (i, l) in self.labels.iter().enumerate() {
            s.push_str(&format!("  p{i} [label=\"{}\"];\n", l.replace('"', "\\\"")));
        }
        for (i, j) in &self.edges {
            s.push_str(&format!("  p{i} -> p{j};\n"));
        }
        s.push_str("}\n");
        s
    }
}

/// Longest strictly increasing chain under `lt`, as indices.
pub(crate) fn longest_chain(n: usize, lt: &dyn Fn(usize, usize) -> bool) -> Vec<usize> {
    let mut best: Vec<Option<Vec<usize>>> = vec![None; n];
    fn go(i: usize, n: usize, lt: &dyn Fn(usize, usize) -> bool, best: &mut Vec<Option<Vec<usize>>>) -> Vec<usize> {
        if let Some(c) = &best[i] {
            return c.clone();
        }
        let mut top = vec![i];
        for j in 0..n {
            if lt(i, j) {
                let mut c = vec![i];
                c.extend(go(j, n, lt, best));
                if c.len() > top.len() {
                    top = c;
                }
            }
        }
        best[i] = Some(top.clone());
        top
    }
    let mut out = Vec::new();
    for i in 0..n {
        let c = go(i, n, lt, &mut best);
        if c.len() > out.len() {
            out = c;
        }
    }
    out
}

pub fn describe(a: &FiniteStructure, c: &Congruence) -> String {
    let blocks: Vec<String> = c
        .blocks()
        .into_iter()
        .map(|b| format!("{{{}}}", names(a, &b).join(" ")))
        .collect();
    blocks.join(" ")
}

pub fn spec_poset(a: &FiniteStructure) -> Result<SpecPoset> {
    if !a.is_algebra() {
        return Err(Error::InvalidArgument("Spec needs an algebra".into()));
    }
    let primes: Vec<Congruence> = enumerate_congruences(a)?.into_iter().filter(|c| is_prime(a, c)).collect();
    let labels = primes.iter().map(|c| describe(a, c)).collect();
    Ok(SpecPoset::from_primes(primes, labels))
}

/// Pairwise intersection of a family; the full relation when it is empty.
pub fn intersect_all(a: &FiniteStructure, cs: &[Congruence]) -> Congruence {
    cs.iter().fold(Congruence::full(a), |acc, c| acc.intersect(c))
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionReport {
    pub primes_above: usize,
    pub cancellative: bool,
    /// Whether C equals the intersection of the primes above it.
    pub equal: bool,
    /// Pairs in the intersection but not in C.
    pub gap: Vec<(String, String)>,
    /// False only when C is cancellative and the equality fails.
    pub verified: bool,
}

pub fn prime_decomposition_check(a: &FiniteStructure, c: &Congruence) -> Result<DecompositionReport> {
    let class = classify_congruence(a, c)?;
    if !class.flags.is_congruence {
        return Err(Error::NotCongruence(class.witness[0].clone()));
    }
    let above: Vec<Congruence> = enumerate_congruences(a)?
        .into_iter()
        .filter(|p| c.is_subset(p) && is_prime(a, p))
        .collect();
    let meet = intersect_all(a, &above);
    let gap: Vec<(String, String)> = meet
        .pairs()
        .into_iter()
        .filter(|&(x, y)| x < y && !c.related(x, y))
        .map(|(x, y)| (a.name(x).to_string(), a.name(y).to_string()))
        .collect();
    let equal = gap.is_empty();
    let cancellative = class.flags.is_cancellative;
    Ok(DecompositionReport { primes_above: above.len(), cancellative, equal, gap, verified: equal || !cancellative })
}

/// Fractions a/b with b ≠ 0 modulo ad = bc, and the embedding a ↦ a/1.
pub fn fraction_field(a: &FiniteStructure) -> Result<(FiniteStructure, Vec<Elem>)> {
    let one = a.one().ok_or_else(|| Error::InvalidArgument("fraction field needs an algebra".into()))?;
    if !a.is_commutative() {
        return Err(Error::InvalidArgument("fraction field needs a commutative algebra".into()));
    }
    cancellative_check(a, &Congruence::diagonal(a)).map_err(Error::NotCancellative)?;
    let z = a.zero();
    let fracs: Vec<(Elem, Elem)> = a.elements().flat_map(|x| a.nonzero().map(move |y| (x, y))).collect();
    let same = |(x, y): (Elem, Elem), (u, v): (Elem, Elem)| a.mul(x, v) == a.mul(y, u);
    // class representative: the first fraction equivalent to it
    let rep_of = |f: (Elem, Elem)| -> usize { fracs.iter().position(|&g| same(f, g)).unwrap() };
    let reps: Vec<usize> = (0..fracs.len()).filter(|&i| rep_of(fracs[i]) == i).collect();
    let class = |f: (Elem, Elem)| reps.iter().position(|&r| r == rep_of(f)).unwrap();
    let add = |f: (Elem, Elem), g: (Elem, Elem)| (a.add(a.mul(f.0, g.1), a.mul(g.0, f.1)), a.mul(f.1, g.1));
    let mul = |f: (Elem, Elem), g: (Elem, Elem)| (a.mul(f.0, g.0), a.mul(f.1, g.1));
    for &f in &fracs {
        for &g in &fracs {
            let (s, p) = (class(add(f, g)), class(mul(f, g)));
            let (f0, g0) = (fracs[reps[class(f)]], fracs[reps[class(g)]]);
            if s != class(add(f0, g0)) || p != class(mul(f0, g0)) {
                return Err(Error::Verification("fraction operations are not well defined".into()));
            }
        }
    }
    let names: Vec<String> = reps
        .iter()
        .map(|&r| {
            let (x, y) = fracs[r];
            match fracs.iter().find(|&&g| same(g, (x, y)) && g.1 == one) {
                Some(&(x1, _)) => a.name(x1).to_string(),
                None => format!("{}/{}", a.name(x), a.name(y)),
            }
        })
        .collect();
    let pick = |i: Elem| fracs[reps[i]];
    let field = FiniteStructure::tabulate(
        a.base(),
        names,
        class((z, one)),
        Some(class((one, one))),
        |i, j| class(add(pick(i), pick(j))),
        |i| {
            let (x, y) = pick(i);
            class((a.neg(x), y))
        },
        |u, i| {
            let (x, y) = pick(i);
            class((a.scale_unit(u, x), y))
        },
        Some(&|i, j| class(mul(pick(i), pick(j)))),
    )?;
    if !field.is_field() {
        return Err(Error::Verification("fractions do not form a field".into()));
    }
    let embed = a.elements().map(|x| class((x, one))).collect();
    Ok((field, embed))
}

/// A maximal radical congruence avoiding (x, 1); it is checked to be prime.
pub fn max_radical_avoiding(f: &FiniteStructure, x: Elem) -> Result<Congruence> {
    let one = f.one().filter(|_| f.is_field()).ok_or_else(|| Error::NotField("expected a field".into()))?;
    if x == one {
        return Err(Error::InvalidArgument("x must differ from 1".into()));
    }
    let radical: Vec<Congruence> = enumerate_congruences(f)?
        .into_iter()
        .filter(|c| !c.related(x, one) && radical_check(f, c).is_ok())
        .collect();
    let top = radical
        .iter()
        .find(|c| !radical.iter().any(|d| d != *c && c.is_subset(d)))
        .cloned()
        .expect("the diagonal is radical and avoids (x, 1)");
    if !is_prime(f, &top) {
        return Err(Error::Verification(format!("maximal radical congruence avoiding {} is not prime", f.name(x))));
    }
    Ok(top)
}
