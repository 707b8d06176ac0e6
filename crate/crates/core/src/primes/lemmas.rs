//! Replays of the structural lemmas about prime and cancellative
//! congruences on finite algebras. Each returns the first failing tuple.

use super::{names, pair_product};
use crate::congruence::{cong_closure, Congruence};
use crate::error::Witness;
use crate::structures::{Elem, FiniteStructure};

type Check = std::result::Result<(), Witness>;

/// Original two-condition definition, where the scaled premise is only
/// required for tuples whose product is nonzero modulo C.
pub fn is_prime_first_definition(a: &FiniteStructure, c: &Congruence) -> bool {
    if c.is_full() {
        return false;
    }
    let z = a.zero();
    let nz = |x: Elem| !c.related(x, z);
    for p in a.elements() {
        for q in a.elements() {
            for r in a.elements() {
                let abc = a.mul(a.mul(p, q), r);
                if nz(abc) {
                    let (u, v) = (a.mul(p, r), a.mul(q, r));
                    if c.related(a.mul(abc, u), a.mul(abc, v)) && !c.related(p, q) && nz(u) && nz(v) {
                        return false;
                    }
                }
                for s in a.elements() {
                    let abcd = a.mul(abc, s);
                    if !nz(abcd) {
                        continue;
                    }
                    let (u, v) = pair_product(a, (p, q), (r, s));
                    if c.related(a.mul(abcd, u), a.mul(abcd, v))
                        && !c.related(p, q)
                        && !c.related(r, s)
                        && nz(u)
                        && nz(v)
                    {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// In A/C: a ≥ b, a ≤ b or a + b = 0.
pub fn trichotomy_replay(a: &FiniteStructure, c: &Congruence) -> Check {
    for x in a.elements() {
        for y in a.elements() {
            let s = a.add(x, y);
            if !c.related(s, x) && !c.related(s, y) && !c.related(s, a.zero()) {
                return Err(Witness::new("trichotomy", names(a, &[x, y])));
            }
        }
    }
    Ok(())
}

/// (ab, 0) ∈ C implies (a, 0) or (b, 0) ∈ C.
pub fn zero_divisor_replay(a: &FiniteStructure, c: &Congruence) -> Check {
    let z = a.zero();
    for x in a.elements() {
        for y in a.elements() {
            if c.related(a.mul(x, y), z) && !c.related(x, z) && !c.related(y, z) {
                return Err(Witness::new("zero divisor", names(a, &[x, y])));
            }
        }
    }
    Ok(())
}

/// (aⁿ, bⁿ) ∈ C with (a, b) ∉ C implies (a + b, 0) ∈ C, for n ≤ `n_max`.
pub fn roots_replay(a: &FiniteStructure, c: &Congruence, n_max: u32) -> Check {
    for n in 1..=n_max {
        for x in a.elements() {
            for y in a.elements() {
                if c.related(a.pow(x, n), a.pow(y, n)) && !c.related(x, y) && !c.related(a.add(x, y), a.zero()) {
                    let mut w = names(a, &[x, y]);
                    w.push(n.to_string());
                    return Err(Witness::new("roots", w));
                }
            }
        }
    }
    Ok(())
}

/// For cancellative C: (a,b)(c,d) ∈ C, (a+b, 0) ∉ C and (c+d, 0) ∉ C imply
/// (aⁿ, bⁿ)(c, d) ∈ C for n ≤ `n_max`.
pub fn technical_lemma_replay(a: &FiniteStructure, c: &Congruence, n_max: u32) -> Check {
    let z = a.zero();
    for p in a.elements() {
        for q in a.elements() {
            if c.related(a.add(p, q), z) {
                continue;
            }
            for r in a.elements() {
                for s in a.elements() {
                    if c.related(a.add(r, s), z) {
                        continue;
                    }
                    let (u, v) = pair_product(a, (p, q), (r, s));
                    if !c.related(u, v) {
                        continue;
                    }
                    for n in 2..=n_max {
                        let (u, v) = pair_product(a, (a.pow(p, n), a.pow(q, n)), (r, s));
                        if !c.related(u, v) {
                            let mut w = names(a, &[p, q, r, s]);
                            w.push(n.to_string());
                            return Err(Witness::new("technical lemma", w));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// In a field: if (a,b)(c,d) = 0 in the diagonal sense with a + b ≠ 0 and
/// c + d ≠ 0, every pair of gen{(a, b)} is annihilated by (c, d).
pub fn annihilation_replay(f: &FiniteStructure) -> Check {
    let z = f.zero();
    for p in f.elements() {
        for q in f.elements() {
            if f.add(p, q) == z {
                continue;
            }
            let g = cong_closure(f, &[(p, q)]);
            let pairs = g.pairs();
            for r in f.elements() {
                for s in f.elements() {
                    if f.add(r, s) == z {
                        continue;
                    }
                    let (u, v) = pair_product(f, (p, q), (r, s));
                    if u != v {
                        continue;
                    }
                    for &(x, y) in &pairs {
                        let (u, v) = pair_product(f, (x, y), (r, s));
                        if u != v {
                            return Err(Witness::new("annihilation", names(f, &[p, q, r, s, x, y])));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}
