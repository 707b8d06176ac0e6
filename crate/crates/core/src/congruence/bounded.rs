use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::poly::{monomials_up_to, EvalTarget, Monomial, PolyRing, Polynomial};

const CARRIER_GUARD: usize = 4_000_000;

/// Answer of a bounded membership query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    /// Derived inside the degree window.
    In,
    /// Separated by the named homomorphism, which collapses every generator.
    NotIn(String),
    Unknown,
}

/// A homomorphism out of the polynomial ring, used to certify non-membership.
pub trait Refuter {
    fn name(&self) -> String;
    /// Whether p and q have the same image; `None` when the map does not
    /// apply to them.
    fn collapses(&self, p: &Polynomial, q: &Polynomial) -> Option<bool>;
}

/// Substitution of the variables into an algebra.
pub struct Evaluation<T: EvalTarget> {
    pub label: String,
    pub ring: PolyRing,
    pub target: T,
    pub images: Vec<T::Value>,
}

impl<T: EvalTarget> Refuter for Evaluation<T> {
    fn name(&self) -> String {
        self.label.clone()
    }

    fn collapses(&self, p: &Polynomial, q: &Polynomial) -> Option<bool> {
        let a = self.ring.substitute(p, &self.target, &self.images).ok()?;
        let b = self.ring.substitute(q, &self.target, &self.images).ok()?;
        Some(a == b)
    }
}

/// The part of a polynomial congruence visible among polynomials of degree
/// at most `bound`. Pairs are derived by adding signed monomials and
/// multiplying by signed monomials while staying in the window, so every
/// derived pair belongs to the true congruence.
pub struct BoundedCongruence {
    ring: PolyRing,
    bound: u32,
    generators: Vec<(Polynomial, Polynomial)>,
    monos: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    units: usize,
    unit_mul: Vec<Vec<usize>>,
    parent: Vec<u32>,
}

impl BoundedCongruence {
    pub fn new(ring: &PolyRing, generators: &[(Polynomial, Polynomial)], bound: u32) -> Result<Self> {
        for (p, q) in generators {
            if p.degree().max(q.degree()) > bound {
                return Err(Error::BoundExceeded {
                    bound,
                    pair: format!("{} ~ {}", ring.display(p), ring.display(q)),
                });
            }
        }
        let monos = monomials_up_to(ring.nvars(), bound);
        let index = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let units = ring.base().units();
        let size = (units.len() + 1)
            .checked_pow(monos.len() as u32)
            .filter(|&s| s <= CARRIER_GUARD)
            .ok_or_else(|| Error::SizeGuard(format!("degree window {bound} in {} variables is too large", ring.nvars())))?;
        let unit_mul = units
            .iter()
            .map(|a| units.iter().map(|b| ring.base().unit_index(&ring.base().mul(a, b)).unwrap()).collect())
            .collect();
        let mut c = BoundedCongruence {
            ring: ring.clone(),
            bound,
            generators: generators.to_vec(),
            monos,
            index,
            units: units.len(),
            unit_mul,
            parent: (0..size as u32).collect(),
        };
        c.close();
        Ok(c)
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn generators(&self) -> &[(Polynomial, Polynomial)] {
        &self.generators
    }

    /// Number of polynomials in the window, including 0.
    pub fn carrier_size(&self) -> usize {
        self.parent.len()
    }

    fn digits(&self, mut code: usize) -> Vec<usize> {
        let mut d = vec![0; self.monos.len()];
        for slot in d.iter_mut() {
            *slot = code % (self.units + 1);
            code /= self.units + 1;
        }
        d
    }

    fn pack(&self, d: &[usize]) -> usize {
        d.iter().rev().fold(0, |acc, &x| acc * (self.units + 1) + x)
    }

    pub fn encode(&self, p: &Polynomial) -> Option<usize> {
        if p.degree() > self.bound {
            return None;
        }
        let units = self.ring.base().units();
        let mut d = vec![0; self.monos.len()];
        for (m, c) in p.terms() {
            d[self.index[m]] = units.iter().position(|u| u == c)? + 1;
        }
        Some(self.pack(&d))
    }

    pub fn decode(&self, code: usize) -> Polynomial {
        let units = self.ring.base().units();
        let terms = self
            .digits(code)
            .into_iter()
            .enumerate()
            .filter(|&(_, x)| x != 0)
            .map(|(j, x)| Polynomial::term(units[x - 1], self.monos[j].clone()));
        terms.fold(None, |acc: Option<Polynomial>, t| {
            Some(match acc {
                None => t,
                Some(a) => self.ring.add(&a, &t).unwrap(),
            })
        })
        .unwrap_or_else(|| self.ring.zero())
    }

    fn add_term(&self, code: usize, j: usize, u: usize) -> usize {
        if code == 0 {
            return 0;
        }
        let mut d = self.digits(code);
        d[j] = match d[j] {
            0 => u + 1,
            x if x == u + 1 => x,
            _ => return 0,
        };
        self.pack(&d)
    }

    fn mul_term(&self, code: usize, j: usize, u: usize) -> Option<usize> {
        let d = self.digits(code);
        let mut out = vec![0; self.monos.len()];
        for (i, &x) in d.iter().enumerate().filter(|(_, &x)| x != 0) {
            let m = self.monos[i].mul(&self.monos[j]);
            let &k = self.index.get(&m)?;
            out[k] = self.unit_mul[u][x - 1] + 1;
        }
        Some(self.pack(&out))
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] as usize != a {
            let p = self.parent[a] as usize;
            self.parent[a] = self.parent[p];
            a = p;
        }
        a
    }

    fn find_ro(&self, mut a: usize) -> usize {
        while self.parent[a] as usize != a {
            a = self.parent[a] as usize;
        }
        a
    }

    fn close(&mut self) {
        let mut queue: VecDeque<(usize, usize)> = self
            .generators
            .iter()
            .map(|(p, q)| (self.encode(p).unwrap(), self.encode(q).unwrap()))
            .collect();
        while let Some((a, b)) = queue.pop_front() {
            let (ra, rb) = (self.find(a), self.find(b));
            if ra == rb {
                continue;
            }
            self.parent[ra.max(rb)] = ra.min(rb) as u32;
            for j in 0..self.monos.len() {
                for u in 0..self.units {
                    queue.push_back((self.add_term(a, j, u), self.add_term(b, j, u)));
                    if let (Some(x), Some(y)) = (self.mul_term(a, j, u), self.mul_term(b, j, u)) {
                        queue.push_back((x, y));
                    }
                }
            }
        }
    }

    /// Whether the pair was derived. Polynomials outside the window are
    /// reported as an error.
    pub fn related(&self, p: &Polynomial, q: &Polynomial) -> Result<bool> {
        match (self.encode(p), self.encode(q)) {
            (Some(a), Some(b)) => Ok(self.find_ro(a) == self.find_ro(b)),
            _ => Err(Error::BoundExceeded {
                bound: self.bound,
                pair: format!("{} ~ {}", self.ring.display(p), self.ring.display(q)),
            }),
        }
    }

    pub fn membership(&self, p: &Polynomial, q: &Polynomial, refuters: &[&dyn Refuter]) -> Membership {
        if let Ok(true) = self.related(p, q) {
            return Membership::In;
        }
        for r in refuters {
            let kills_generators = self.generators.iter().all(|(a, b)| r.collapses(a, b) == Some(true));
            if kills_generators && r.collapses(p, q) == Some(false) {
                return Membership::NotIn(r.name());
            }
        }
        Membership::Unknown
    }

    /// Window members of the class of p.
    pub fn class_of(&self, p: &Polynomial) -> Result<Vec<Polynomial>> {
        let a = self.encode(p).ok_or_else(|| Error::BoundExceeded { bound: self.bound, pair: self.ring.display(p) })?;
        let r = self.find_ro(a);
        Ok((0..self.carrier_size()).filter(|&c| self.find_ro(c) == r).map(|c| self.decode(c)).collect())
    }

    /// Window members of the class of 0.
    pub fn kernel(&self) -> Vec<Polynomial> {
        self.class_of(&self.ring.zero()).unwrap()
    }

    pub fn block_count(&self) -> usize {
        (0..self.carrier_size()).filter(|&c| self.find_ro(c) == c).count()
    }

    /// Class labels (smallest code) for every window element in code order.
    pub fn labels(&self) -> Vec<usize> {
        (0..self.carrier_size()).map(|c| self.find_ro(c)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::tests::random_poly;
    use crate::scalars::Semifield;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn at_one(r: &PolyRing) -> Evaluation<Semifield> {
        let f = Semifield::finfty();
        Evaluation { label: "x -> 1".into(), ring: r.clone(), target: f.clone(), images: vec![f.one()] }
    }

    #[test]
    fn x_equals_one() {
        let r = PolyRing::finfty(&["x"]);
        let (x, one) = (r.var(0), r.one());
        let c = BoundedCongruence::new(&r, &[(x.clone(), one.clone())], 3).unwrap();
        let refs: [&dyn Refuter; 1] = [&at_one(&r)];
        let one_plus_x = r.add(&one, &x).unwrap();
        assert_eq!(c.membership(&one_plus_x, &one, &refs), Membership::In);
        assert_eq!(c.membership(&r.pow(&x, 2), &one, &refs), Membership::In);
        assert_eq!(c.membership(&x, &r.neg(&one), &refs), Membership::NotIn("x -> 1".into()));
        assert_eq!(c.membership(&x, &r.neg(&one), &[]), Membership::Unknown);
    }

    #[test]
    fn x_equals_one_matches_evaluation() {
        let r = PolyRing::finfty(&["x"]);
        let c = BoundedCongruence::new(&r, &[(r.var(0), r.one())], 3).unwrap();
        let ev = at_one(&r);
        let codes: Vec<usize> = (0..c.carrier_size()).collect();
        for &a in &codes {
            for &b in &codes {
                let (p, q) = (c.decode(a), c.decode(b));
                assert_eq!(c.related(&p, &q).unwrap(), ev.collapses(&p, &q).unwrap());
            }
        }
        assert_eq!(c.block_count(), 3);
    }

    #[test]
    fn generator_above_bound_rejected() {
        let r = PolyRing::finfty(&["x"]);
        let x3 = r.pow(&r.var(0), 3);
        assert!(matches!(BoundedCongruence::new(&r, &[(x3, r.one())], 2), Err(Error::BoundExceeded { bound: 2, .. })));
    }

    #[test]
    fn encode_decode_roundtrip() {
        let r = PolyRing::finfty(&["x", "y"]);
        let c = BoundedCongruence::new(&r, &[], 2).unwrap();
        assert_eq!(c.carrier_size(), 729);
        for code in 0..c.carrier_size() {
            assert_eq!(c.encode(&c.decode(code)), Some(code));
        }
        assert_eq!(c.block_count(), 729);
    }

    #[test]
    fn in_pairs_persist_when_the_bound_grows() {
        let r = PolyRing::finfty(&["x"]);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let gens = vec![(random_poly(&r, &mut rng, 2, 2), random_poly(&r, &mut rng, 2, 2))];
            let small = BoundedCongruence::new(&r, &gens, 2).unwrap();
            let big = BoundedCongruence::new(&r, &gens, 3).unwrap();
            for a in 0..small.carrier_size() {
                for b in 0..a {
                    let (p, q) = (small.decode(a), small.decode(b));
                    if small.related(&p, &q).unwrap() {
                        assert!(big.related(&p, &q).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn refutations_are_genuine() {
        let r = PolyRing::finfty(&["x"]);
        let f = Semifield::finfty();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let evals: Vec<Evaluation<Semifield>> = [f.one(), f.minus_one()]
            .into_iter()
            .map(|v| Evaluation { label: f.display(&v), ring: r.clone(), target: f.clone(), images: vec![v] })
            .collect();
        let refs: Vec<&dyn Refuter> = evals.iter().map(|e| e as &dyn Refuter).collect();
        for _ in 0..20 {
            let gens = vec![(random_poly(&r, &mut rng, 2, 2), random_poly(&r, &mut rng, 2, 2))];
            let c = BoundedCongruence::new(&r, &gens, 2).unwrap();
            for a in 0..c.carrier_size() {
                let (p, q) = (c.decode(a), c.decode(a / 3));
                if let Membership::NotIn(_) = c.membership(&p, &q, &refs) {
                    assert!(!c.related(&p, &q).unwrap());
                }
            }
        }
    }
}
