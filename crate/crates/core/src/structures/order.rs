use super::{Elem, FiniteStructure};
use crate::error::{Error, Result};
use crate::scalars::Semifield;

/// The natural order a ≤ b ⇔ a + b = a, tabulated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaturalOrder {
    n: usize,
    leq: Vec<bool>,
    /// Nonzero elements whose only strict lower bound is 0.
    pub minimal: Vec<Elem>,
    /// Elements with no strict upper bound.
    pub maximal: Vec<Elem>,
}

impl NaturalOrder {
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a * self.n + b]
    }

    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: Elem, b: Elem) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    pub fn up_set(&self, a: Elem) -> Vec<Elem> {
        (0..self.n).filter(|&b| self.leq(a, b)).collect()
    }

    fn is_partial_order(&self) -> bool {
        let n = self.n;
        (0..n).all(|a| self.leq(a, a))
            && (0..n).all(|a| (0..n).all(|b| a == b || !(self.leq(a, b) && self.leq(b, a))))
            && (0..n).all(|a| (0..n).all(|b| !self.leq(a, b) || (0..n).all(|c| !self.leq(b, c) || self.leq(a, c))))
    }
}

pub fn natural_order(m: &FiniteStructure) -> NaturalOrder {
    let n = m.len();
    let leq = (0..n * n).map(|i| m.add(i / n, i % n) == i / n).collect();
    let mut ord = NaturalOrder { n, leq, minimal: Vec::new(), maximal: Vec::new() };
    debug_assert!(ord.is_partial_order());
    ord.minimal = m.nonzero().filter(|&a| m.nonzero().all(|b| !ord.lt(b, a))).collect();
    ord.maximal = m.elements().filter(|&a| m.elements().all(|b| !ord.lt(a, b))).collect();
    ord
}

/// Maximum number of nonzero elements in a strictly decreasing chain.
pub fn module_dimension(m: &FiniteStructure) -> usize {
    let ord = natural_order(m);
    let mut depth: Vec<Option<usize>> = vec![None; m.len()];
    fn longest(m: &FiniteStructure, ord: &NaturalOrder, a: Elem, depth: &mut Vec<Option<usize>>) -> usize {
        if let Some(d) = depth[a] {
            return d;
        }
        let d = 1 + m
            .nonzero()
            .filter(|&b| ord.lt(b, a))
            .map(|b| longest(m, ord, b, depth))
            .max()
            .unwrap_or(0);
        depth[a] = Some(d);
        d
    }
    m.nonzero().map(|a| longest(m, &ord, a, &mut depth)).max().unwrap_or(0)
}

/// An element of the order closure M ∪ {⊤}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Closed {
    Elem(Elem),
    Top,
}

/// Nonzero elements that are not the sum of the elements strictly above
/// them. Every element is a sum of these.
pub fn generators(m: &FiniteStructure) -> Vec<Elem> {
    let ord = natural_order(m);
    m.nonzero()
        .filter(|&a| m.sum(m.elements().filter(|&x| ord.lt(a, x))) != Some(a))
        .collect()
}

/// Least upper bound in the order closure: the sum of the generators above
/// both arguments, or ⊤ when there are none.
pub fn join(m: &FiniteStructure, a: Elem, b: Elem) -> Closed {
    let ord = natural_order(m);
    join_with(m, &ord, &generators(m), a, b)
}

pub(crate) fn join_with(m: &FiniteStructure, ord: &NaturalOrder, gens: &[Elem], a: Elem, b: Elem) -> Closed {
    if ord.leq(a, b) {
        return Closed::Elem(b);
    }
    if ord.leq(b, a) {
        return Closed::Elem(a);
    }
    match m.sum(gens.iter().copied().filter(|&x| ord.leq(a, x) && ord.leq(b, x))) {
        Some(s) => Closed::Elem(s),
        None => Closed::Top,
    }
}

/// The face module of a regular 2n-gon: 0 is the polygon, v_i the vertices,
/// e_i the edge from v_i to v_{i+1}.
pub fn polygon_module(n: usize) -> Result<FiniteStructure> {
    if n < 2 {
        return Err(Error::InvalidArgument("polygon needs n >= 2".into()));
    }
    let m = 2 * n;
    let v = |i: usize| 1 + i % m;
    let e = |i: usize| 1 + m + i % m;
    let mut names = vec!["0".to_string()];
    names.extend((0..m).map(|i| format!("v{i}")));
    names.extend((0..m).map(|i| format!("e{i}")));
    // (is_edge, index)
    let kind = |a: Elem| if a <= m { (false, a - 1) } else { (true, a - 1 - m) };
    let add = |a: Elem, b: Elem| -> Elem {
        if a == b {
            return a;
        }
        if a == 0 || b == 0 {
            return 0;
        }
        match (kind(a), kind(b)) {
            ((false, i), (false, j)) if (i + 1) % m == j => e(i),
            ((false, i), (false, j)) if (j + 1) % m == i => e(j),
            ((false, i), (true, j)) | ((true, j), (false, i)) if i == j || i == (j + 1) % m => e(j),
            _ => 0,
        }
    };
    let neg = |a: Elem| match a {
        0 => 0,
        _ => match kind(a) {
            (false, i) => v(i + n),
            (true, i) => e(i + n),
        },
    };
    let base = Semifield::finfty();
    FiniteStructure::tabulate(&base, names, 0, None, add, neg, |u, a| if u == 0 { a } else { neg(a) }, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn lub_bruteforce(m: &FiniteStructure, ord: &NaturalOrder, a: Elem, b: Elem) -> Closed {
        let ub: Vec<Elem> = m.elements().filter(|&x| ord.leq(a, x) && ord.leq(b, x)).collect();
        ub.iter()
            .copied()
            .find(|&x| ub.iter().all(|&y| ord.leq(x, y)))
            .map_or(Closed::Top, Closed::Elem)
    }

    #[test]
    fn polygon_examples() {
        let p2 = polygon_module(2).unwrap();
        let id = |s: &FiniteStructure, x: &str| s.index_of(x).unwrap();
        assert_eq!(p2.add(id(&p2, "v0"), id(&p2, "v1")), id(&p2, "e0"));
        assert_eq!(p2.add(id(&p2, "v0"), id(&p2, "v2")), 0);
        let p3 = polygon_module(3).unwrap();
        assert_eq!(p3.add(id(&p3, "v0"), id(&p3, "e1")), 0);
        assert!(polygon_module(1).is_err());
        for n in 2..=4 {
            let p = polygon_module(n).unwrap();
            assert_eq!(p.len(), 1 + 4 * n);
            assert_eq!(module_dimension(&p), 2);
        }
    }

    #[test]
    fn orders_and_dimensions() {
        let f = fixtures::finfty_module();
        let o = natural_order(&f);
        assert!(o.leq(0, 1) && o.leq(0, 2) && !o.comparable(1, 2));
        assert_eq!(module_dimension(&f), 1);

        let p = polygon_module(2).unwrap();
        let o = natural_order(&p);
        assert!(o.leq(p.index_of("e0").unwrap(), p.index_of("v0").unwrap()));
        assert_eq!(o.maximal.len(), 4);

        let sq = fixtures::finfty_square_module();
        let o = natural_order(&sq);
        assert!(o.leq(sq.index_of("(1,0)").unwrap(), sq.index_of("(1,1)").unwrap()));
        assert_eq!(module_dimension(&sq), 2);
    }

    #[test]
    fn join_examples() {
        let f = fixtures::finfty_module();
        assert_eq!(join(&f, 1, 2), Closed::Top);
        assert_eq!(join(&f, 1, 1), Closed::Elem(1));
        let p = polygon_module(2).unwrap();
        let (e0, e1, v1) = (p.index_of("e0").unwrap(), p.index_of("e1").unwrap(), p.index_of("v1").unwrap());
        assert_eq!(join(&p, e0, e1), Closed::Elem(v1));
    }

    #[test]
    fn join_is_least_upper_bound_on_fixtures() {
        for m in fixtures::modules() {
            let ord = natural_order(&m);
            let gens = generators(&m);
            for a in m.elements() {
                for b in m.elements() {
                    assert_eq!(join_with(&m, &ord, &gens, a, b), lub_bruteforce(&m, &ord, a, b));
                }
            }
        }
    }

    #[test]
    fn order_compatible_with_operations() {
        for m in fixtures::modules().into_iter().chain(fixtures::algebras()) {
            if m.len() > 30 {
                continue;
            }
            let ord = natural_order(&m);
            for a in m.elements() {
                for b in m.elements().filter(|&b| ord.leq(a, b)) {
                    for c in m.elements() {
                        assert!(ord.leq(m.add(a, c), m.add(b, c)));
                        if m.is_algebra() {
                            assert!(ord.leq(m.mul(a, c), m.mul(b, c)));
                        }
                    }
                }
            }
        }
    }
}
