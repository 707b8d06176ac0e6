use super::order::{natural_order, NaturalOrder};
use super::{Elem, FiniteStructure};
use crate::error::{Error, Result};

/// A structure map given by the image of every source element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Homomorphism {
    pub map: Vec<Elem>,
}

impl Homomorphism {
    pub fn apply(&self, a: Elem) -> Elem {
        self.map[a]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Homomorphism) -> Homomorphism {
        Homomorphism { map: self.map.iter().map(|&b| other.map[b]).collect() }
    }

    pub fn identity(m: &FiniteStructure) -> Homomorphism {
        Homomorphism { map: m.elements().collect() }
    }

    pub fn zero(m1: &FiniteStructure, m2: &FiniteStructure) -> Homomorphism {
        Homomorphism { map: vec![m2.zero(); m1.len()] }
    }
}

/// Module homomorphism check: preserves +, negation and the scalar action
/// (0 is then preserved as a + (−a)).
pub fn is_homomorphism(m1: &FiniteStructure, m2: &FiniteStructure, map: &[Elem]) -> bool {
    if map.len() != m1.len() || m1.unit_count() != m2.unit_count() {
        return false;
    }
    m1.elements().all(|a| {
        map[m1.neg(a)] == m2.neg(map[a])
            && (0..m1.unit_count()).all(|u| map[m1.scale_unit(u, a)] == m2.scale_unit(u, map[a]))
            && m1.elements().all(|b| map[m1.add(a, b)] == m2.add(map[a], map[b]))
    })
}

/// All homomorphisms by backtracking over the whole carrier, checking
/// every relation among assigned elements as soon as it is determined.
pub fn enumerate_homs_bruteforce(m1: &FiniteStructure, m2: &FiniteStructure) -> Vec<Homomorphism> {
    let n = m1.len();
    let mut out = Vec::new();
    let mut map: Vec<Option<Elem>> = vec![None; n];
    fn consistent(m1: &FiniteStructure, m2: &FiniteStructure, map: &[Option<Elem>], a: Elem) -> bool {
        let fa = map[a].unwrap();
        let check = |x: Elem, want: Elem| map[x].is_none_or(|v| v == want);
        if !check(m1.neg(a), m2.neg(fa)) {
            return false;
        }
        if let Some(v) = map[m1.neg(a)] {
            if m2.neg(v) != fa {
                return false;
            }
        }
        for u in 0..m1.unit_count() {
            if !check(m1.scale_unit(u, a), m2.scale_unit(u, fa)) {
                return false;
            }
        }
        for b in m1.elements() {
            if let Some(fb) = map[b] {
                if !check(m1.add(a, b), m2.add(fa, fb)) {
                    return false;
                }
            }
        }
        // relations in which `a` is the result
        for b in m1.elements() {
            for c in m1.elements() {
                if m1.add(b, c) == a {
                    if let (Some(fb), Some(fc)) = (map[b], map[c]) {
                        if m2.add(fb, fc) != fa {
                            return false;
                        }
                    }
                }
            }
            if m1.neg(b) == a {
                if let Some(fb) = map[b] {
                    if m2.neg(fb) != fa {
                        return false;
                    }
                }
            }
            for u in 0..m1.unit_count() {
                if m1.scale_unit(u, b) == a {
                    if let Some(fb) = map[b] {
                        if m2.scale_unit(u, fb) != fa {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
    fn go(
        m1: &FiniteStructure,
        m2: &FiniteStructure,
        map: &mut Vec<Option<Elem>>,
        i: usize,
        out: &mut Vec<Homomorphism>,
    ) {
        if i == map.len() {
            out.push(Homomorphism { map: map.iter().map(|v| v.unwrap()).collect() });
            return;
        }
        for v in m2.elements() {
            map[i] = Some(v);
            if consistent(m1, m2, map, i) {
                go(m1, m2, map, i + 1, out);
            }
        }
        map[i] = None;
    }
    go(m1, m2, &mut map, 0, &mut out);
    out
}

/// Generators of `m` closed under the scalar action (the sum-irreducible
/// elements already are).
fn generating_set(m: &FiniteStructure) -> Vec<Elem> {
    super::order::generators(m)
}

/// The only possible extension of a map on generators: m ↦ Σ f(g) over the
/// generators g ≥ m.
fn candidate_extension(
    m1: &FiniteStructure,
    m2: &FiniteStructure,
    ord: &NaturalOrder,
    gens: &[Elem],
    f: &[Option<Elem>],
) -> Vec<Elem> {
    m1.elements()
        .map(|m| {
            m2.sum(gens.iter().filter(|&&g| ord.leq(m, g)).map(|&g| f[g].unwrap()))
                .unwrap_or(m2.zero())
        })
        .collect()
}

/// All homomorphisms, by assigning images to one generator per scalar
/// orbit and extending.
pub fn enumerate_homs(m1: &FiniteStructure, m2: &FiniteStructure) -> Vec<Homomorphism> {
    let ord = natural_order(m1);
    let gens = generating_set(m1);
    let mut reps: Vec<Elem> = Vec::new();
    for &g in &gens {
        if !reps.iter().any(|&r| (0..m1.unit_count()).any(|u| m1.scale_unit(u, r) == g)) {
            reps.push(g);
        }
    }
    let mut out = Vec::new();
    let mut f: Vec<Option<Elem>> = vec![None; m1.len()];
    let mut idx = vec![0usize; reps.len()];
    loop {
        let mut ok = true;
        f.iter_mut().for_each(|v| *v = None);
        'assign: for (k, &r) in reps.iter().enumerate() {
            for u in 0..m1.unit_count() {
                let g = m1.scale_unit(u, r);
                let v = m2.scale_unit(u, idx[k]);
                match f[g] {
                    Some(w) if w != v => {
                        ok = false;
                        break 'assign;
                    }
                    _ => f[g] = Some(v),
                }
            }
        }
        if ok {
            let cand = candidate_extension(m1, m2, &ord, &gens, &f);
            if gens.iter().all(|&g| cand[g] == f[g].unwrap()) && is_homomorphism(m1, m2, &cand) {
                out.push(Homomorphism { map: cand });
            }
        }
        // odometer over rep images
        let mut k = 0;
        loop {
            if k == reps.len() {
                out.sort();
                out.dedup();
                return out;
            }
            idx[k] += 1;
            if idx[k] < m2.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Result of trying to extend a map defined on generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtendOutcome {
    Extends(Homomorphism),
    /// For the principal dual generator of `gamma`, the generators in
    /// `subset` map above `gamma`, `g` dominates their sum, yet f(g) does not.
    Refused { gamma: Elem, subset: Vec<Elem>, g: Elem },
}

/// Decides whether `gen_map` (pairs generator ↦ image) extends to a
/// homomorphism using the filter criterion on the principal generators of
/// the target's dual, and builds the extension when it does.
pub fn hom_extend(m1: &FiniteStructure, m2: &FiniteStructure, gen_map: &[(Elem, Elem)]) -> Result<ExtendOutcome> {
    if m1.base().spec() != m2.base().spec() {
        return Err(Error::BaseMismatch);
    }
    let mut f: Vec<Option<Elem>> = vec![None; m1.len()];
    for &(g, v) in gen_map {
        if g >= m1.len() || v >= m2.len() {
            return Err(Error::InvalidArgument("generator map references elements outside the carriers".into()));
        }
        if f[g].is_some_and(|w| w != v) {
            return Err(Error::InvalidArgument(format!("generator {} mapped twice", m1.name(g))));
        }
        f[g] = Some(v);
    }
    let gens: Vec<Elem> = m1.elements().filter(|&g| f[g].is_some()).collect();
    for &g in &gens {
        for u in 0..m1.unit_count() {
            let h = m1.scale_unit(u, g);
            if f[h] != Some(m2.scale_unit(u, f[g].unwrap())) {
                return Err(Error::InvalidArgument(format!(
                    "generator map is not scalar-equivariant at {}",
                    m1.name(g)
                )));
            }
        }
    }
    let ord1 = natural_order(m1);
    let ord2 = natural_order(m2);
    for m in m1.nonzero() {
        if m1.sum(gens.iter().copied().filter(|&g| ord1.leq(m, g))) != Some(m) {
            return Err(Error::InvalidArgument(format!("{} is not a sum of the given generators", m1.name(m))));
        }
    }
    for gamma in m2.nonzero() {
        let fg: Vec<Elem> = gens.iter().copied().filter(|&g| ord2.leq(gamma, f[g].unwrap())).collect();
        let Some(s) = m1.sum(fg.iter().copied()) else { continue };
        if let Some(&g) = gens.iter().find(|&&g| ord1.leq(s, g) && !fg.contains(&g)) {
            return Ok(ExtendOutcome::Refused { gamma, subset: fg, g });
        }
    }
    let cand = candidate_extension(m1, m2, &ord1, &gens, &f);
    if !is_homomorphism(m1, m2, &cand) || gens.iter().any(|&g| cand[g] != f[g].unwrap()) {
        return Err(Error::Verification("filter criterion accepted a map that does not extend".into()));
    }
    Ok(ExtendOutcome::Extends(Homomorphism { map: cand }))
}

/// Hom(M1, M2) with pointwise operations. Element 0 is the zero map; the
/// others are named h1, h2, ... in lexicographic order of their images.
pub fn hom_module(m1: &FiniteStructure, m2: &FiniteStructure) -> Result<(FiniteStructure, Vec<Homomorphism>)> {
    let mut homs = enumerate_homs(m1, m2);
    let z = Homomorphism::zero(m1, m2);
    homs.retain(|h| *h != z);
    homs.insert(0, z);
    let index = |map: Vec<Elem>| homs.iter().position(|h| h.map == map).expect("pointwise operations stay in Hom");
    let names = (0..homs.len()).map(|i| if i == 0 { "0".to_string() } else { format!("h{i}") }).collect();
    let pointwise2 = |i: usize, j: usize| {
        index(m1.elements().map(|a| m2.add(homs[i].map[a], homs[j].map[a])).collect())
    };
    let neg = |i: usize| index(m1.elements().map(|a| m2.neg(homs[i].map[a])).collect());
    let scalar = |u: usize, i: usize| index(m1.elements().map(|a| m2.scale_unit(u, homs[i].map[a])).collect());
    let h = FiniteStructure::tabulate(m2.base(), names, 0, None, pointwise2, neg, scalar, None)?;
    Ok((h, homs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn enumerators_agree_on_fixtures() {
        let ms = fixtures::modules();
        for a in &ms {
            for b in &ms {
                if a.len() * b.len() > 200 {
                    continue;
                }
                let mut brute = enumerate_homs_bruteforce(a, b);
                brute.sort();
                assert_eq!(enumerate_homs(a, b), brute, "{:?} -> {:?}", a.names(), b.names());
            }
        }
    }

    #[test]
    fn hom_module_into_base_matches_dual_size() {
        let f = fixtures::finfty_module();
        for m in fixtures::modules() {
            if m.len() > 20 {
                continue;
            }
            let (h, _) = hom_module(&m, &f).unwrap();
            assert_eq!(h.len(), m.len());
        }
    }

    #[test]
    fn polygon_vertex_map_extends() {
        let p = fixtures::polygon(2);
        let f = fixtures::finfty_module();
        let v: Vec<Elem> = (0..4).map(|i| p.index_of(&format!("v{i}")).unwrap()).collect();
        let map = vec![(v[0], 1), (v[1], 1), (v[2], 2), (v[3], 2)];
        let ExtendOutcome::Extends(h) = hom_extend(&p, &f, &map).unwrap() else { panic!("refused") };
        assert_eq!(h.apply(p.index_of("e1").unwrap()), 0);
        assert_eq!(h.apply(p.index_of("e0").unwrap()), 1);
    }

    #[test]
    fn refusal_is_certified() {
        let p = fixtures::polygon(2);
        let f = fixtures::finfty_module();
        let v: Vec<Elem> = (0..4).map(|i| p.index_of(&format!("v{i}")).unwrap()).collect();
        let e: Vec<Elem> = (0..4).map(|i| p.index_of(&format!("e{i}")).unwrap()).collect();
        // edges sent against their vertices
        let mut map = vec![(v[0], 1), (v[1], 1), (v[2], 2), (v[3], 2)];
        map.extend([(e[0], 2), (e[2], 1), (e[1], 0), (e[3], 0)]);
        match hom_extend(&p, &f, &map).unwrap() {
            ExtendOutcome::Refused { gamma, subset, g } => {
                let s = p.sum(subset.iter().copied()).unwrap();
                assert_eq!(p.add(s, g), s);
                assert!(!subset.contains(&g));
                assert!(gamma != f.zero());
            }
            ExtendOutcome::Extends(_) => panic!("should be refused"),
        }
    }
}
