//! Tensor and symmetric powers, computed from generator presentations.
//!
//! A finite module M is the quotient of the free module on its generators
//! (one per unit orbit) by the kernel of the evaluation map. Tensoring free
//! modules multiplies generators, so M1 ⊗ M2 is the free module on generator
//! pairs modulo the tensored kernel relations, and Sym^n M is the free module
//! on degree-n monomials modulo the kernel relations times monomials.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::scalars::Semifield;
use crate::structures::{generators, Elem, FiniteStructure};

/// Most free generators a presentation may have.
pub const TENSOR_GUARD: usize = 10;
/// Largest free carrier a presentation may close over.
pub const FREE_GUARD: usize = 60_000;
/// Largest quotient that is tabulated.
pub const QUOTIENT_GUARD: usize = 2_048;

/// Free module on `k` generators, coded in radix units+1 (digit 0 = absent,
/// digit u+1 = unit u). Code 0 is the zero.
#[derive(Debug, Clone)]
pub(crate) struct FreeSpace {
    k: usize,
    radix: usize,
    place: Vec<usize>,
    prod: Vec<Vec<usize>>,
    size: usize,
}

impl FreeSpace {
    fn new(base: &Semifield, k: usize) -> Result<Self> {
        let units = base.units();
        let radix = units.len() + 1;
        let size = (0..k).try_fold(1usize, |acc, _| acc.checked_mul(radix)).filter(|&s| s <= FREE_GUARD);
        let Some(size) = size else {
            return Err(Error::SizeGuard(format!(
                "free module on {k} generators has {radix}^{k} elements (limit {FREE_GUARD})"
            )));
        };
        let place = (0..k).map(|i| radix.pow(i as u32)).collect();
        let prod = units
            .iter()
            .map(|x| units.iter().map(|y| base.unit_index(&base.mul(x, y)).unwrap()).collect())
            .collect();
        Ok(FreeSpace { k, radix, place, prod, size })
    }

    fn digit(&self, x: usize, i: usize) -> usize {
        x / self.place[i] % self.radix
    }

    pub(crate) fn digits(&self, x: usize) -> Vec<usize> {
        (0..self.k).map(|i| self.digit(x, i)).collect()
    }

    fn encode(&self, d: &[usize]) -> usize {
        d.iter().zip(&self.place).map(|(x, p)| x * p).sum()
    }

    fn basis(&self, i: usize, u: usize) -> usize {
        (u + 1) * self.place[i]
    }

    fn add(&self, x: usize, y: usize) -> usize {
        if x == 0 || y == 0 {
            return 0;
        }
        let mut out = 0;
        for i in 0..self.k {
            let d = match (self.digit(x, i), self.digit(y, i)) {
                (0, b) => b,
                (a, 0) => a,
                (a, b) if a == b => a,
                _ => return 0,
            };
            out += d * self.place[i];
        }
        out
    }

    fn mul_digit(&self, a: usize, b: usize) -> usize {
        if a == 0 || b == 0 {
            0
        } else {
            self.prod[a - 1][b - 1] + 1
        }
    }

    fn scale(&self, u: usize, x: usize) -> usize {
        (0..self.k).map(|i| self.mul_digit(u + 1, self.digit(x, i)) * self.place[i]).sum()
    }

    /// Σ over index tuples of the product of the factors' digits, placed at
    /// `key(tuple)`. A clash of two different coefficients absorbs to 0.
    fn multiply(&self, factors: &[(&FreeSpace, usize)], key: impl Fn(&[usize]) -> usize) -> usize {
        if factors.iter().any(|&(_, x)| x == 0) {
            return 0;
        }
        let supports: Vec<Vec<(usize, usize)>> = factors
            .iter()
            .map(|&(s, x)| (0..s.k).map(|i| (i, s.digit(x, i))).filter(|&(_, d)| d != 0).collect())
            .collect();
        let mut out = vec![0usize; self.k];
        let mut idx = vec![0usize; factors.len()];
        let mut tuple = vec![0usize; factors.len()];
        loop {
            let mut c = 1;
            for (j, s) in supports.iter().enumerate() {
                let (i, d) = s[idx[j]];
                tuple[j] = i;
                c = self.mul_digit(c, d);
            }
            let slot = key(&tuple);
            match out[slot] {
                0 => out[slot] = c,
                prev if prev != c => return 0,
                _ => {}
            }
            let mut j = factors.len();
            loop {
                if j == 0 {
                    return self.encode(&out);
                }
                j -= 1;
                idx[j] += 1;
                if idx[j] < supports[j].len() {
                    break;
                }
                idx[j] = 0;
            }
        }
    }
}

/// A module written as generators of M (one per unit orbit) plus the
/// kernel of Free(gens) → M.
#[derive(Debug, Clone)]
pub(crate) struct Lift {
    pub(crate) gens: Vec<Elem>,
    pub(crate) space: FreeSpace,
    /// A free preimage of every element.
    pub(crate) preimage: Vec<usize>,
    /// Pairs (w, preimage[π w]) for every w that is not its own preimage.
    pub(crate) relations: Vec<(usize, usize)>,
}

pub(crate) fn lift(m: &FiniteStructure) -> Result<Lift> {
    let mut gens = Vec::new();
    let mut covered = vec![false; m.len()];
    for g in generators(m) {
        if covered[g] {
            continue;
        }
        for u in 0..m.unit_count() {
            covered[m.scale_unit(u, g)] = true;
        }
        gens.push(g);
    }
    if gens.len() > TENSOR_GUARD {
        return Err(Error::SizeGuard(format!("{} generators (limit {TENSOR_GUARD})", gens.len())));
    }
    let space = FreeSpace::new(m.base(), gens.len())?;
    let eval = |w: usize| -> Elem {
        m.sum(
            space
                .digits(w)
                .iter()
                .zip(&gens)
                .filter(|(&d, _)| d != 0)
                .map(|(&d, &g)| m.scale_unit(d - 1, g)),
        )
        .unwrap_or(m.zero())
    };
    let mut preimage = vec![usize::MAX; m.len()];
    let mut relations = Vec::new();
    for w in 0..space.size {
        let a = eval(w);
        if preimage[a] == usize::MAX {
            preimage[a] = w;
        } else {
            relations.push((w, preimage[a]));
        }
    }
    if let Some(a) = m.elements().find(|&a| preimage[a] == usize::MAX) {
        return Err(Error::Verification(format!("{} is not a sum of generators", m.name(a))));
    }
    Ok(Lift { gens, space, preimage, relations })
}

/// A quotient of a free module by a congruence, computed without
/// tabulating the free module: compatibility with translations by signed
/// generators and with the unit action generates the full congruence.
#[derive(Debug, Clone)]
pub struct Presentation {
    base: Semifield,
    labels: Vec<String>,
    space: FreeSpace,
    root: Vec<u32>,
}

impl Presentation {
    fn close(base: &Semifield, labels: Vec<String>, space: FreeSpace, pairs: &[(usize, usize)]) -> Self {
        let mut parent: Vec<u32> = (0..space.size as u32).collect();
        fn find(p: &mut [u32], mut a: u32) -> u32 {
            while p[a as usize] != a {
                p[a as usize] = p[p[a as usize] as usize];
                a = p[a as usize];
            }
            a
        }
        let units = base.units().len();
        let mut queue: VecDeque<(usize, usize)> = pairs.iter().copied().collect();
        while let Some((a, b)) = queue.pop_front() {
            let (ra, rb) = (find(&mut parent, a as u32), find(&mut parent, b as u32));
            if ra == rb {
                continue;
            }
            parent[ra.max(rb) as usize] = ra.min(rb);
            for i in 0..space.k {
                for u in 0..units {
                    let e = space.basis(i, u);
                    queue.push_back((space.add(a, e), space.add(b, e)));
                }
            }
            for u in 0..units {
                queue.push_back((space.scale(u, a), space.scale(u, b)));
            }
        }
        let root = (0..space.size as u32).map(|a| find(&mut parent, a)).collect();
        Presentation { base: base.clone(), labels, space, root }
    }

    /// Number of free generators.
    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn class_count(&self) -> usize {
        self.root.iter().enumerate().filter(|&(i, &r)| r as usize == i).count()
    }

    /// No two free elements were identified.
    pub fn is_free(&self) -> bool {
        self.root.iter().enumerate().all(|(i, &r)| r as usize == i)
    }

    fn display(&self, w: usize) -> String {
        if w == 0 {
            return "0".to_string();
        }
        let units = self.base.units();
        let mut s = String::new();
        for (i, d) in self.space.digits(w).into_iter().enumerate().filter(|&(_, d)| d != 0) {
            let c = self.base.display(&units[d - 1]);
            let term = match c.as_str() {
                "1" => self.labels[i].clone(),
                "-1" => format!("-{}", self.labels[i]),
                _ => format!("{c}*{}", self.labels[i]),
            };
            if !s.is_empty() && !term.starts_with('-') {
                s.push('+');
            }
            s.push_str(&term);
        }
        s
    }

    /// Tabulates the quotient. Returns the structure and, for each free
    /// code, the element it represents.
    pub fn materialize(&self) -> Result<(FiniteStructure, Vec<Elem>)> {
        let reps: Vec<usize> = (0..self.space.size).filter(|&i| self.root[i] as usize == i).collect();
        let n = reps.len();
        if n > QUOTIENT_GUARD {
            return Err(Error::SizeGuard(format!("quotient has {n} elements (limit {QUOTIENT_GUARD})")));
        }
        let pos: HashMap<usize, Elem> = reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let elem_of: Vec<Elem> = self.root.iter().map(|&r| pos[&(r as usize)]).collect();
        let names = reps.iter().map(|&r| self.display(r)).collect();
        let add = (0..n * n).map(|k| elem_of[self.space.add(reps[k / n], reps[k % n])]).collect();
        let units = self.base.units().len();
        let minus = self.base.unit_index(&self.base.minus_one()).unwrap();
        let neg = reps.iter().map(|&r| elem_of[self.space.scale(minus, r)]).collect();
        let scalar = (0..units * n).map(|k| elem_of[self.space.scale(k / n, reps[k % n])]).collect();
        let m = FiniteStructure::from_tables_unchecked(self.base.clone(), names, elem_of[0], None, add, neg, scalar, None)?;
        Ok((m, elem_of))
    }
}

/// M1 ⊗ M2 with the bilinear map (a, b) ↦ a⊗b.
#[derive(Debug, Clone)]
pub struct Tensor {
    pub module: FiniteStructure,
    pub presentation: Presentation,
    right: usize,
    /// `pure[a * |M2| + b]` is a⊗b.
    pure: Vec<Elem>,
}

impl Tensor {
    pub fn pure(&self, a: Elem, b: Elem) -> Elem {
        self.pure[a * self.right + b]
    }
}

fn check_bases(ms: &[&FiniteStructure]) -> Result<()> {
    if ms.windows(2).any(|w| w[0].base().spec() != w[1].base().spec()) {
        return Err(Error::BaseMismatch);
    }
    Ok(())
}

/// Mixed-radix index of a tuple.
fn tuple_index(t: &[usize], k: usize) -> usize {
    t.iter().fold(0, |acc, &i| acc * k + i)
}

pub fn tensor_presentation(m1: &FiniteStructure, m2: &FiniteStructure) -> Result<Presentation> {
    check_bases(&[m1, m2])?;
    let (l1, l2) = (lift(m1)?, lift(m2)?);
    tensor_from_lifts(m1, m2, &l1, &l2)
}

fn tensor_from_lifts(m1: &FiniteStructure, m2: &FiniteStructure, l1: &Lift, l2: &Lift) -> Result<Presentation> {
    let (k1, k2) = (l1.gens.len(), l2.gens.len());
    guard_rank(k1 * k2)?;
    let space = FreeSpace::new(m1.base(), k1 * k2)?;
    let key = |t: &[usize]| t[0] * k2 + t[1];
    let mut pairs = Vec::new();
    for &(w, v) in &l1.relations {
        for j in 0..k2 {
            let e = l2.space.basis(j, 0);
            pairs.push((
                space.multiply(&[(&l1.space, w), (&l2.space, e)], key),
                space.multiply(&[(&l1.space, v), (&l2.space, e)], key),
            ));
        }
    }
    for &(w, v) in &l2.relations {
        for i in 0..k1 {
            let e = l1.space.basis(i, 0);
            pairs.push((
                space.multiply(&[(&l1.space, e), (&l2.space, w)], key),
                space.multiply(&[(&l1.space, e), (&l2.space, v)], key),
            ));
        }
    }
    let labels = l1
        .gens
        .iter()
        .flat_map(|&g| l2.gens.iter().map(move |&h| format!("{}⊗{}", m1.name(g), m2.name(h))))
        .collect();
    Ok(Presentation::close(m1.base(), labels, space, &pairs))
}

fn guard_rank(k: usize) -> Result<()> {
    if k > TENSOR_GUARD {
        return Err(Error::SizeGuard(format!("{k} pure tensors of generators (limit {TENSOR_GUARD})")));
    }
    Ok(())
}

pub fn tensor(m1: &FiniteStructure, m2: &FiniteStructure) -> Result<Tensor> {
    check_bases(&[m1, m2])?;
    let (l1, l2) = (lift(m1)?, lift(m2)?);
    let presentation = tensor_from_lifts(m1, m2, &l1, &l2)?;
    let (module, elem_of) = presentation.materialize()?;
    let k2 = l2.gens.len();
    let key = |t: &[usize]| t[0] * k2 + t[1];
    let mut pure = Vec::with_capacity(m1.len() * m2.len());
    for a in m1.elements() {
        for b in m2.elements() {
            let w = presentation.space.multiply(&[(&l1.space, l1.preimage[a]), (&l2.space, l2.preimage[b])], key);
            pure.push(elem_of[w]);
        }
    }
    Ok(Tensor { module, presentation, right: m2.len(), pure })
}

/// M^{⊗n}, n ≥ 1.
pub fn tensor_power(m: &FiniteStructure, n: usize) -> Result<FiniteStructure> {
    if n == 0 {
        return Err(Error::InvalidArgument("tensor power needs n ≥ 1".into()));
    }
    let l = lift(m)?;
    let k = l.gens.len();
    guard_rank(k.pow(n as u32))?;
    let space = FreeSpace::new(m.base(), k.pow(n as u32))?;
    let key = |t: &[usize]| tuple_index(t, k);
    let mut pairs = Vec::new();
    for pos in 0..n {
        for others in 0..k.pow(n as u32 - 1) {
            let mut rest = others;
            let mut slots: Vec<usize> = (0..n - 1).map(|_| { let i = rest % k; rest /= k; l.space.basis(i, 0) }).collect();
            slots.insert(pos, 0);
            for &(w, v) in &l.relations {
                let mut side = |x: usize| {
                    slots[pos] = x;
                    let f: Vec<(&FreeSpace, usize)> = slots.iter().map(|&s| (&l.space, s)).collect();
                    space.multiply(&f, key)
                };
                let (a, b) = (side(w), side(v));
                pairs.push((a, b));
            }
        }
    }
    let labels = (0..k.pow(n as u32))
        .map(|mut t| {
            let mut parts = vec![String::new(); n];
            for slot in parts.iter_mut().rev() {
                *slot = m.name(l.gens[t % k]).to_string();
                t /= k;
            }
            parts.join("⊗")
        })
        .collect();
    Ok(Presentation::close(m.base(), labels, space, &pairs).materialize()?.0)
}

/// Multisets of size `n` from `0..k`, as sorted tuples in lexicographic order.
fn monomials(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(k: usize, n: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            cur.push(i);
            rec(k, n, i, cur, out);
            cur.pop();
        }
    }
    rec(k, n, 0, &mut cur, &mut out);
    out
}

fn monomial_label(m: &FiniteStructure, gens: &[Elem], mono: &[usize]) -> String {
    if mono.is_empty() {
        return "1".to_string();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < mono.len() {
        let j = mono[i..].iter().take_while(|&&x| x == mono[i]).count();
        let name = m.name(gens[mono[i]]);
        parts.push(if j == 1 { name.to_string() } else { format!("{name}^{j}") });
        i += j;
    }
    parts.join("*")
}

/// Sym^n M: the n-fold tensor power modulo transpositions of factors.
#[derive(Debug, Clone)]
pub struct SymPower {
    pub n: usize,
    pub module: FiniteStructure,
    pub presentation: Presentation,
    lift: Lift,
    monomials: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    elem_of: Vec<Elem>,
    reps: Vec<usize>,
}

pub fn sym_presentation(m: &FiniteStructure, n: usize) -> Result<Presentation> {
    sym_parts(m, n).map(|(p, ..)| p)
}

type SymParts = (Presentation, Lift, Vec<Vec<usize>>, HashMap<Vec<usize>, usize>);

fn sym_parts(m: &FiniteStructure, n: usize) -> Result<SymParts> {
    let l = lift(m)?;
    let k = l.gens.len();
    let monos = monomials(k, n);
    guard_rank(monos.len())?;
    let index: HashMap<Vec<usize>, usize> = monos.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
    let space = FreeSpace::new(m.base(), monos.len())?;
    let key = |t: &[usize]| {
        let mut s = t.to_vec();
        s.sort_unstable();
        index[&s]
    };
    let mut pairs = Vec::new();
    if n > 0 {
        for rest in monomials(k, n - 1) {
            let mut f: Vec<(&FreeSpace, usize)> = rest.iter().map(|&i| (&l.space, l.space.basis(i, 0))).collect();
            f.push((&l.space, 0));
            for &(w, v) in &l.relations {
                let last = f.len() - 1;
                f[last].1 = w;
                let a = space.multiply(&f, key);
                f[last].1 = v;
                let b = space.multiply(&f, key);
                pairs.push((a, b));
            }
        }
    }
    let labels = monos.iter().map(|t| monomial_label(m, &l.gens, t)).collect();
    let p = Presentation::close(m.base(), labels, space, &pairs);
    Ok((p, l, monos, index))
}

pub fn sym_power(m: &FiniteStructure, n: usize) -> Result<SymPower> {
    let (presentation, lift, monomials, index) = sym_parts(m, n)?;
    let (module, elem_of) = presentation.materialize()?;
    let mut reps = vec![usize::MAX; module.len()];
    for (w, &e) in elem_of.iter().enumerate() {
        if reps[e] == usize::MAX {
            reps[e] = w;
        }
    }
    Ok(SymPower { n, module, presentation, lift, monomials, index, elem_of, reps })
}

impl SymPower {
    /// The class of a1·…·an.
    pub fn symmetrize(&self, factors: &[Elem]) -> Result<Elem> {
        if factors.len() != self.n {
            return Err(Error::InvalidArgument(format!("expected {} factors", self.n)));
        }
        if self.n == 0 {
            return Ok(self.elem_of[self.presentation.space.basis(0, 0)]);
        }
        let f: Vec<(&FreeSpace, usize)> = factors.iter().map(|&a| (&self.lift.space, self.lift.preimage[a])).collect();
        let w = self.presentation.space.multiply(&f, |t| {
            let mut s = t.to_vec();
            s.sort_unstable();
            self.index[&s]
        });
        Ok(self.elem_of[w])
    }

    /// Graded multiplication Sym^{n1} × Sym^{n2} → Sym^{n1+n2}. All three
    /// powers must come from the same module.
    pub fn graded_mul(&self, other: &SymPower, target: &SymPower, a: Elem, b: Elem) -> Result<Elem> {
        if target.n != self.n + other.n || [&other.lift.gens, &target.lift.gens].iter().any(|g| **g != self.lift.gens) {
            return Err(Error::InvalidArgument("graded multiplication needs matching powers of one module".into()));
        }
        let (sa, sb) = (&self.presentation.space, &other.presentation.space);
        let (wa, wb) = (self.reps[a], other.reps[b]);
        let w = target.presentation.space.multiply(&[(sa, wa), (sb, wb)], |t| {
            let mut s = self.monomials[t[0]].clone();
            s.extend(&other.monomials[t[1]]);
            s.sort_unstable();
            target.index[&s]
        });
        Ok(target.elem_of[w])
    }
}

/// All bilinear maps M1 × M2 → N as tables indexed `a * |M2| + b`. A map is
/// fixed by its values on pairs of generators; every assignment is extended
/// and kept when it is bilinear on the whole carrier.
pub fn bilinear_maps(m1: &FiniteStructure, m2: &FiniteStructure, n: &FiniteStructure) -> Result<Vec<Vec<Elem>>> {
    check_bases(&[m1, m2, n])?;
    let (l1, l2) = (lift(m1)?, lift(m2)?);
    let (k1, k2) = (l1.gens.len(), l2.gens.len());
    let cells = k1 * k2;
    let candidates = (0..cells).try_fold(1usize, |acc, _| acc.checked_mul(n.len())).filter(|&c| c <= 2_000_000);
    let Some(candidates) = candidates else {
        return Err(Error::SizeGuard(format!("{}^{cells} candidate bilinear maps", n.len())));
    };
    let d1: Vec<Vec<usize>> = l1.preimage.iter().map(|&w| l1.space.digits(w)).collect();
    let d2: Vec<Vec<usize>> = l2.preimage.iter().map(|&w| l2.space.digits(w)).collect();
    let prod = &FreeSpace::new(m1.base(), 1)?.prod;
    let mut out = Vec::new();
    let (n1, n2) = (m1.len(), m2.len());
    let mut vals = vec![0; cells];
    for mut code in 0..candidates {
        for v in vals.iter_mut() {
            *v = code % n.len();
            code /= n.len();
        }
        let beta: Vec<Elem> = (0..n1 * n2)
            .map(|ab| {
                let (a, b) = (ab / n2, ab % n2);
                let terms = (0..k1).flat_map(|i| (0..k2).map(move |j| (i, j))).filter_map(|(i, j)| {
                    let (x, y) = (d1[a][i], d2[b][j]);
                    (x != 0 && y != 0).then(|| n.scale_unit(prod[x - 1][y - 1], vals[i * k2 + j]))
                });
                n.sum(terms).unwrap_or(n.zero())
            })
            .collect();
        let at = |a: Elem, b: Elem| beta[a * n2 + b];
        let left = m1.elements().all(|a| {
            m1.elements().all(|a2| m2.elements().all(|b| at(m1.add(a, a2), b) == n.add(at(a, b), at(a2, b))))
        });
        let right = left
            && m2.elements().all(|b| {
                m2.elements().all(|b2| m1.elements().all(|a| at(a, m2.add(b, b2)) == n.add(at(a, b), at(a, b2))))
            });
        let scalar = right
            && (0..n.unit_count()).all(|u| {
                m1.elements().all(|a| {
                    m2.elements().all(|b| {
                        let s = n.scale_unit(u, at(a, b));
                        at(m1.scale_unit(u, a), b) == s && at(a, m2.scale_unit(u, b)) == s
                    })
                })
            });
        if scalar {
            out.push(beta);
        }
    }
    Ok(out)
}
