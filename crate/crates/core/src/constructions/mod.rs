//! Coproducts, products, free modules, tensor and symmetric powers,
//! projective closures and graded components of function rings.

mod projective;
mod tensor;

pub use projective::{
    function_ring_component, graded_function_ring, projective_closure, projectivize, verify_function_ring, FunctionRingReport,
    ProjectiveClosure,
};
pub use tensor::{
    bilinear_maps, sym_power, sym_presentation, tensor, tensor_power, tensor_presentation, Presentation, SymPower, Tensor,
    FREE_GUARD, QUOTIENT_GUARD, TENSOR_GUARD,
};

use crate::error::{Error, Result};
use crate::scalars::Semifield;
use crate::structures::{Elem, FiniteStructure};

fn same_base(m1: &FiniteStructure, m2: &FiniteStructure) -> Result<()> {
    if m1.base().spec() != m2.base().spec() {
        return Err(Error::BaseMismatch);
    }
    Ok(())
}

/// Coproduct M1 + M2. An element is a pair whose components are either
/// absent (stored as the factor's 0) or nonzero; a sum in which some factor
/// cancels to 0 is 0.
pub fn coproduct(m1: &FiniteStructure, m2: &FiniteStructure) -> Result<FiniteStructure> {
    same_base(m1, m2)?;
    let (n1, n2) = (m1.len(), m2.len());
    let (z1, z2) = (m1.zero(), m2.zero());
    // index 0 is the zero; the rest are the nonzero pairs in order
    let mut pairs = vec![(z1, z2)];
    for a in m1.elements() {
        for b in m2.elements() {
            if (a, b) != (z1, z2) {
                pairs.push((a, b));
            }
        }
    }
    let mut idx = vec![0; n1 * n2];
    for (i, &(a, b)) in pairs.iter().enumerate() {
        idx[a * n2 + b] = i;
    }
    let names = pairs
        .iter()
        .map(|&(a, b)| match (a == z1, b == z2) {
            (true, true) => "0".to_string(),
            (false, true) => format!("<{}|_>", m1.name(a)),
            (true, false) => format!("<_|{}>", m2.name(b)),
            (false, false) => format!("<{}|{}>", m1.name(a), m2.name(b)),
        })
        .collect();
    let merge = |m: &FiniteStructure, x: Elem, y: Elem| -> Option<Elem> {
        let z = m.zero();
        match (x == z, y == z) {
            (true, _) => Some(y),
            (_, true) => Some(x),
            _ => {
                let s = m.add(x, y);
                (s != z).then_some(s)
            }
        }
    };
    let add = |i: Elem, j: Elem| -> Elem {
        let ((a, b), (c, d)) = (pairs[i], pairs[j]);
        if i == 0 || j == 0 {
            return 0;
        }
        match (merge(m1, a, c), merge(m2, b, d)) {
            (Some(x), Some(y)) => idx[x * n2 + y],
            _ => 0,
        }
    };
    let neg = |i: Elem| {
        let (a, b) = pairs[i];
        idx[m1.neg(a) * n2 + m2.neg(b)]
    };
    let scalar = |u: usize, i: Elem| {
        let (a, b) = pairs[i];
        idx[m1.scale_unit(u, a) * n2 + m2.scale_unit(u, b)]
    };
    FiniteStructure::tabulate(m1.base(), names, 0, None, add, neg, scalar, None)
}

/// Cartesian product with componentwise operations; an algebra when both
/// factors are.
pub fn product(m1: &FiniteStructure, m2: &FiniteStructure) -> Result<FiniteStructure> {
    same_base(m1, m2)?;
    let n2 = m2.len();
    let pair = |i: Elem| (i / n2, i % n2);
    let names = (0..m1.len() * n2)
        .map(|i| format!("({},{})", m1.name(i / n2), m2.name(i % n2)))
        .collect();
    let add = |i: Elem, j: Elem| {
        let ((a, b), (c, d)) = (pair(i), pair(j));
        m1.add(a, c) * n2 + m2.add(b, d)
    };
    let neg = |i: Elem| m1.neg(i / n2) * n2 + m2.neg(i % n2);
    let scalar = |u: usize, i: Elem| m1.scale_unit(u, i / n2) * n2 + m2.scale_unit(u, i % n2);
    let mul = |i: Elem, j: Elem| {
        let ((a, b), (c, d)) = (pair(i), pair(j));
        m1.mul(a, c) * n2 + m2.mul(b, d)
    };
    let algebra = m1.is_algebra() && m2.is_algebra();
    let one = match (m1.one(), m2.one()) {
        (Some(a), Some(b)) if algebra => Some(a * n2 + b),
        _ => None,
    };
    let zero = m1.zero() * n2 + m2.zero();
    FiniteStructure::tabulate(m1.base(), names, zero, one, add, neg, scalar, algebra.then_some(&mul as &dyn Fn(Elem, Elem) -> Elem))
}

/// Free module on the named generators: formal sums Σ λ_i x_i with at most
/// one unit coefficient per generator.
pub fn free_module(base: &Semifield, generators: &[&str]) -> Result<FiniteStructure> {
    if generators.is_empty() {
        return Err(Error::InvalidArgument("free module needs at least one generator".into()));
    }
    let units = base.units();
    let k = units.len();
    let g = generators.len();
    // digit 0 = absent, digit u+1 = units[u]
    let size = (k + 1).pow(g as u32);
    let digits = |mut i: usize| -> Vec<usize> {
        let mut d = vec![0; g];
        for slot in d.iter_mut() {
            *slot = i % (k + 1);
            i /= k + 1;
        }
        d
    };
    let encode = |d: &[usize]| d.iter().rev().fold(0, |acc, &x| acc * (k + 1) + x);
    let minus = base.unit_index(&base.minus_one()).unwrap();
    let prod: Vec<Vec<usize>> = units
        .iter()
        .map(|x| units.iter().map(|y| base.unit_index(&base.mul(x, y)).unwrap()).collect())
        .collect();
    // order elements by support size then code, keeping 0 first
    let mut order: Vec<usize> = (0..size).collect();
    order.sort_by_key(|&i| (digits(i).iter().filter(|&&x| x != 0).count(), i));
    let mut pos = vec![0; size];
    for (p, &i) in order.iter().enumerate() {
        pos[i] = p;
    }
    let names = order
        .iter()
        .map(|&i| {
            let d = digits(i);
            if d.iter().all(|&x| x == 0) {
                return "0".to_string();
            }
            let mut s = String::new();
            for (j, &x) in d.iter().enumerate().filter(|(_, &x)| x != 0) {
                let c = base.display(&units[x - 1]);
                let term = match c.as_str() {
                    "1" => generators[j].to_string(),
                    "-1" => format!("-{}", generators[j]),
                    _ => format!("{c}*{}", generators[j]),
                };
                if !s.is_empty() && !term.starts_with('-') {
                    s.push('+');
                }
                s.push_str(&term);
            }
            s
        })
        .collect();
    let add = |p: Elem, q: Elem| -> Elem {
        let (a, b) = (digits(order[p]), digits(order[q]));
        if p == 0 || q == 0 {
            return 0;
        }
        let mut d = vec![0; g];
        for j in 0..g {
            d[j] = match (a[j], b[j]) {
                (0, y) => y,
                (x, 0) => x,
                (x, y) if x == y => x,
                _ => return 0,
            };
        }
        pos[encode(&d)]
    };
    let scalar = |u: usize, p: Elem| -> Elem {
        let d: Vec<usize> = digits(order[p]).iter().map(|&x| if x == 0 { 0 } else { prod[u][x - 1] + 1 }).collect();
        pos[encode(&d)]
    };
    FiniteStructure::tabulate(base, names, 0, None, add, |p| scalar(minus, p), scalar, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::structures::{enumerate_homs, enumerate_homs_bruteforce, isomorphic};

    #[test]
    fn coproduct_examples() {
        let f = fixtures::finfty_module();
        let c = coproduct(&f, &f).unwrap();
        assert_eq!(c.len(), 9);
        let x1 = c.index_of("<1|_>").unwrap();
        let y = c.index_of("<-1|1>").unwrap();
        assert_eq!(c.add(x1, y), c.zero());
        assert_eq!(enumerate_homs_bruteforce(&c, &f).len(), 9);
        assert!(isomorphic(&c, &free_module(f.base(), &["x1", "x2"]).unwrap()));
    }

    #[test]
    fn product_examples() {
        let f = fixtures::finfty_module();
        let p = product(&f, &f).unwrap();
        assert_eq!(p.len(), 9);
        let id = |s: &str| p.index_of(s).unwrap();
        assert_eq!(p.add(id("(1,1)"), id("(-1,1)")), id("(0,1)"));
        assert_eq!(p.add(id("(1,0)"), id("(0,1)")), id("(0,0)"));
    }

    #[test]
    fn free_module_sizes() {
        let b = Semifield::finfty();
        assert!(isomorphic(&free_module(&b, &["x"]).unwrap(), &fixtures::finfty_module()));
        assert_eq!(free_module(&b, &["x1", "x2"]).unwrap().len(), 9);
        let f3 = free_module(&b, &["x1", "x2", "x3"]).unwrap();
        assert_eq!(f3.len(), 27);
        assert!(f3.names().iter().any(|n| n == "-x1+x2"));
        let c2 = Semifield::cyclotomic(2).unwrap();
        assert_eq!(free_module(&c2, &["x", "y"]).unwrap().len(), 25);
    }

    #[test]
    fn universal_properties_by_counting() {
        let ms: Vec<FiniteStructure> = fixtures::modules().into_iter().filter(|m| m.len() <= 9).collect();
        for a in &ms {
            for b in &ms {
                let cop = coproduct(a, b).unwrap();
                let prod = product(a, b).unwrap();
                for n in &ms {
                    if cop.len() * n.len() > 400 {
                        continue;
                    }
                    let ha = enumerate_homs(a, n).len();
                    let hb = enumerate_homs(b, n).len();
                    assert_eq!(enumerate_homs(&cop, n).len(), ha * hb);
                    let na = enumerate_homs(n, a).len();
                    let nb = enumerate_homs(n, b).len();
                    assert_eq!(enumerate_homs(n, &prod).len(), na * nb);
                }
            }
        }
    }
}
