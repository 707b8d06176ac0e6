//! Congruences on finite structures and degree-bounded congruences on
//! polynomial rings.

mod bounded;
mod field;
mod maximal;

pub use bounded::{BoundedCongruence, Evaluation, Membership, Refuter};
pub use field::{field_max_congruence, lexmax_max_congruence_contains, unit_class_by_closure, unit_class_by_formula, unit_class_generated, unit_class_lexmax};
pub use maximal::{is_quasiseparable, is_separable, max_congruence_algebra, max_congruence_module, maximal_filters, quasimaximal_filters};

use std::collections::VecDeque;

use crate::error::{Error, Result, Witness};
use crate::structures::{Elem, FiniteStructure};

/// A congruence on a finite carrier, stored as the least element of each
/// element's block.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    rep: Vec<Elem>,
}

impl Congruence {
    /// From any block labelling; labels are normalised to least members.
    pub fn from_labels(labels: &[usize]) -> Congruence {
        let mut first = std::collections::HashMap::new();
        let rep = labels.iter().enumerate().map(|(i, l)| *first.entry(*l).or_insert(i)).collect();
        Congruence { rep }
    }

    pub fn diagonal(m: &FiniteStructure) -> Congruence {
        Congruence { rep: m.elements().collect() }
    }

    pub fn full(m: &FiniteStructure) -> Congruence {
        Congruence { rep: vec![0; m.len()] }
    }

    pub fn len(&self) -> usize {
        self.rep.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rep.is_empty()
    }

    pub fn rep(&self, a: Elem) -> Elem {
        self.rep[a]
    }

    pub fn reps(&self) -> &[Elem] {
        &self.rep
    }

    pub fn related(&self, a: Elem, b: Elem) -> bool {
        self.rep[a] == self.rep[b]
    }

    pub fn block_count(&self) -> usize {
        self.rep.iter().enumerate().filter(|(i, r)| *i == **r).count()
    }

    pub fn blocks(&self) -> Vec<Vec<Elem>> {
        let mut out: Vec<Vec<Elem>> = Vec::new();
        let mut index = vec![usize::MAX; self.rep.len()];
        for (a, &r) in self.rep.iter().enumerate() {
            if index[r] == usize::MAX {
                index[r] = out.len();
                out.push(Vec::new());
            }
            out[index[r]].push(a);
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        self.rep.iter().enumerate().all(|(i, &r)| i == r)
    }

    pub fn is_full(&self) -> bool {
        self.rep.iter().all(|&r| r == self.rep[0])
    }

    /// self ⊆ other as pair sets.
    pub fn is_subset(&self, other: &Congruence) -> bool {
        (0..self.rep.len()).all(|a| other.related(a, self.rep[a]))
    }

    pub fn intersect(&self, other: &Congruence) -> Congruence {
        let labels: Vec<usize> = (0..self.rep.len()).map(|a| self.rep[a] * self.rep.len() + other.rep[a]).collect();
        Congruence::from_labels(&labels)
    }

    /// All related pairs (a, b) with a < b.
    pub fn pairs(&self) -> Vec<(Elem, Elem)> {
        let n = self.rep.len();
        (0..n).flat_map(|a| (a + 1..n).filter(move |&b| self.related(a, b)).map(move |b| (a, b))).collect()
    }

    /// Block of 0.
    pub fn kernel(&self, m: &FiniteStructure) -> Vec<Elem> {
        m.elements().filter(|&a| self.related(a, m.zero())).collect()
    }

    pub fn quotient(&self, m: &FiniteStructure) -> Result<(FiniteStructure, Vec<Elem>)> {
        m.quotient(&self.rep)
    }

    /// Congruence of the pairs generated by both.
    pub fn join(&self, other: &Congruence, m: &FiniteStructure) -> Congruence {
        let mut pairs: Vec<(Elem, Elem)> = self.rep.iter().enumerate().map(|(a, &r)| (a, r)).collect();
        pairs.extend(other.rep.iter().enumerate().map(|(a, &r)| (a, r)));
        cong_closure(m, &pairs)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    /// Keeps the smaller root so representatives stay canonical.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        true
    }
}

/// Smallest congruence containing `pairs`, by union-find and a worklist of
/// the compatibility consequences of each merge.
pub fn cong_closure(m: &FiniteStructure, pairs: &[(Elem, Elem)]) -> Congruence {
    let n = m.len();
    let mut uf = UnionFind::new(n);
    let mut queue: VecDeque<(Elem, Elem)> = pairs.iter().copied().collect();
    while let Some((a, b)) = queue.pop_front() {
        if !uf.union(a, b) {
            continue;
        }
        for c in m.elements() {
            queue.push_back((m.add(a, c), m.add(b, c)));
            if m.is_algebra() {
                queue.push_back((m.mul(a, c), m.mul(b, c)));
                queue.push_back((m.mul(c, a), m.mul(c, b)));
            }
        }
        for u in 0..m.unit_count() {
            queue.push_back((m.scale_unit(u, a), m.scale_unit(u, b)));
        }
    }
    Congruence { rep: (0..n).map(|a| uf.find(a)).collect() }
}

/// Resolves element names and closes.
pub fn cong_closure_named(m: &FiniteStructure, pairs: &[(&str, &str)]) -> Result<Congruence> {
    let idx = pairs
        .iter()
        .map(|(a, b)| Ok((m.index_of(a)?, m.index_of(b)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(cong_closure(m, &idx))
}

/// Relational fixpoint: start from the pairs plus the diagonal and apply
/// symmetry, transitivity and compatibility until nothing changes.
pub fn cong_closure_naive(m: &FiniteStructure, pairs: &[(Elem, Elem)]) -> Congruence {
    let n = m.len();
    let mut r = vec![false; n * n];
    for a in 0..n {
        r[a * n + a] = true;
    }
    for &(a, b) in pairs {
        r[a * n + b] = true;
    }
    loop {
        let mut next = r.clone();
        for a in 0..n {
            for b in 0..n {
                if !r[a * n + b] {
                    continue;
                }
                next[b * n + a] = true;
                for c in 0..n {
                    if r[b * n + c] {
                        next[a * n + c] = true;
                    }
                    next[m.add(a, c) * n + m.add(b, c)] = true;
                    if m.is_algebra() {
                        next[m.mul(a, c) * n + m.mul(b, c)] = true;
                        next[m.mul(c, a) * n + m.mul(c, b)] = true;
                    }
                }
                for u in 0..m.unit_count() {
                    next[m.scale_unit(u, a) * n + m.scale_unit(u, b)] = true;
                }
            }
        }
        if next == r {
            break;
        }
        r = next;
    }
    let labels: Vec<usize> = (0..n).map(|a| (0..n).find(|&b| r[a * n + b]).unwrap()).collect();
    Congruence::from_labels(&labels)
}

/// Checks that a relation given by a predicate is a congruence of `m`;
/// returns the first violated rule.
pub fn check_congruence(m: &FiniteStructure, rel: impl Fn(Elem, Elem) -> bool) -> std::result::Result<(), Witness> {
    let name = |xs: &[Elem]| xs.iter().map(|&x| m.name(x).to_string()).collect();
    for a in m.elements() {
        if !rel(a, a) {
            return Err(Witness::new("reflexivity", name(&[a])));
        }
        for b in m.elements() {
            if !rel(a, b) {
                continue;
            }
            if !rel(b, a) {
                return Err(Witness::new("symmetry", name(&[a, b])));
            }
            for u in 0..m.unit_count() {
                if !rel(m.scale_unit(u, a), m.scale_unit(u, b)) {
                    return Err(Witness::new("compatibility with scalars", name(&[a, b])));
                }
            }
            for c in m.elements() {
                if rel(b, c) && !rel(a, c) {
                    return Err(Witness::new("transitivity", name(&[a, b, c])));
                }
                if !rel(m.add(a, c), m.add(b, c)) {
                    return Err(Witness::new("(a+c,b+c)", name(&[a, b, c])));
                }
                if m.is_algebra() && !rel(m.mul(a, c), m.mul(b, c)) {
                    return Err(Witness::new("(ac,bc)", name(&[a, b, c])));
                }
            }
        }
    }
    Ok(())
}

/// Module ideal: contains 0, closed under adding anything and under
/// scalars; for algebras also under multiplication by anything.
pub fn check_ideal(m: &FiniteStructure, ideal: &[Elem]) -> std::result::Result<(), Witness> {
    let mut member = vec![false; m.len()];
    ideal.iter().for_each(|&i| member[i] = true);
    if !member[m.zero()] {
        return Err(Witness::new("0 ∈ I", vec![]));
    }
    for &i in ideal {
        for x in m.elements() {
            if !member[m.add(i, x)] {
                return Err(Witness::new("I + M ⊆ I", vec![m.name(i).into(), m.name(x).into()]));
            }
            if m.is_algebra() && !member[m.mul(x, i)] {
                return Err(Witness::new("A·I ⊆ I", vec![m.name(x).into(), m.name(i).into()]));
            }
        }
        for u in 0..m.unit_count() {
            if !member[m.scale_unit(u, i)] {
                return Err(Witness::new("F·I ⊆ I", vec![m.name(i).into()]));
            }
        }
    }
    Ok(())
}

/// All ideals, as sorted element lists.
pub fn all_ideals(m: &FiniteStructure) -> Result<Vec<Vec<Elem>>> {
    if m.len() > 20 {
        return Err(Error::SizeGuard(format!("ideal enumeration over {} elements", m.len())));
    }
    let others: Vec<Elem> = m.nonzero().collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << others.len()) {
        let mut ideal: Vec<Elem> = vec![m.zero()];
        ideal.extend(others.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e));
        ideal.sort_unstable();
        if check_ideal(m, &ideal).is_ok() {
            out.push(ideal);
        }
    }
    out.sort();
    Ok(out)
}

/// a ~ b iff a = b or both lie in I.
pub fn minimal_ideal_congruence(m: &FiniteStructure, ideal: &[Elem]) -> Congruence {
    let labels: Vec<usize> = m
        .elements()
        .map(|a| if ideal.contains(&a) { m.zero() } else { a })
        .collect();
    Congruence::from_labels(&labels)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelReport {
    pub ideal: Vec<Elem>,
    pub is_trivial: bool,
}

pub fn kernel(m: &FiniteStructure, c: &Congruence) -> Result<KernelReport> {
    let ideal = c.kernel(m);
    check_ideal(m, &ideal).map_err(Error::NotIdeal)?;
    Ok(KernelReport { is_trivial: ideal.len() == 1, ideal })
}

/// Ann_C(a) = {(b, c) : (ab, ac) ∈ C}.
pub fn ann_congruence(m: &FiniteStructure, c: &Congruence, a: Elem) -> Result<Congruence> {
    if !m.is_algebra() {
        return Err(Error::InvalidArgument("annihilators need an algebra".into()));
    }
    let labels: Vec<usize> = m.elements().map(|b| c.rep(m.mul(a, b))).collect();
    let ann = Congruence::from_labels(&labels);
    check_congruence(m, |x, y| ann.related(x, y)).map_err(Error::NotCongruence)?;
    Ok(ann)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn closure_examples() {
        let f = fixtures::finfty_field();
        assert!(cong_closure(&f, &[(1, 2)]).is_full());
        assert!(cong_closure(&f, &[]).is_diagonal());
        let p = fixtures::polygon(2);
        let c = cong_closure_named(&p, &[("v0", "v1")]).unwrap();
        let (v0, e0) = (p.index_of("v0").unwrap(), p.index_of("e0").unwrap());
        assert!(c.related(v0, e0));
        assert_eq!(c, cong_closure_naive(&p, &[(v0, p.index_of("v1").unwrap())]));
        assert!(cong_closure_named(&p, &[("v0", "nope")]).is_err());
    }

    #[test]
    fn kernels() {
        let a = fixtures::nil2();
        let d = Congruence::diagonal(&a);
        assert_eq!(kernel(&a, &d).unwrap().ideal, vec![0]);
        assert_eq!(kernel(&a, &Congruence::full(&a)).unwrap().ideal.len(), 5);
        let c = cong_closure_named(&a, &[("x", "0")]).unwrap();
        let names: Vec<&str> = kernel(&a, &c).unwrap().ideal.iter().map(|&e| a.name(e)).collect();
        assert_eq!(names, vec!["0", "x", "-x"]);
    }

    #[test]
    fn annihilators() {
        let f = fixtures::finfty_field();
        let d = Congruence::diagonal(&f);
        assert!(ann_congruence(&f, &d, 1).unwrap().is_diagonal());
        assert!(ann_congruence(&f, &d, 0).unwrap().is_full());
        let sq = fixtures::finfty_square_algebra();
        let ann = ann_congruence(&sq, &Congruence::diagonal(&sq), sq.index_of("(1,0)").unwrap()).unwrap();
        for a in sq.elements() {
            for b in sq.elements() {
                let first = |x: Elem| sq.name(x)[1..].split(',').next().unwrap().to_string();
                assert_eq!(ann.related(a, b), first(a) == first(b));
            }
        }
    }

    #[test]
    fn closure_matches_naive_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let pool: Vec<FiniteStructure> = fixtures::modules()
            .into_iter()
            .chain(fixtures::algebras())
            .chain(fixtures::fields())
            .filter(|m| m.len() <= 12)
            .collect();
        for _ in 0..200 {
            let m = &pool[rng.gen_range(0..pool.len())];
            let k = rng.gen_range(0..3);
            let pairs: Vec<(Elem, Elem)> = (0..k).map(|_| (rng.gen_range(0..m.len()), rng.gen_range(0..m.len()))).collect();
            let c = cong_closure(m, &pairs);
            assert_eq!(c, cong_closure_naive(m, &pairs));
            check_congruence(m, |a, b| c.related(a, b)).unwrap();
            c.quotient(m).unwrap().0.check_axioms().unwrap();
        }
    }
}
