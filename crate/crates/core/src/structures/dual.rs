use super::hom::Homomorphism;
use super::order::{natural_order, NaturalOrder};
use super::{Elem, FiniteStructure};
use crate::error::{Error, Result};
use crate::scalars::Scalar;

/// Value of the natural duality, which may be ⊤ on the closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DualValue {
    Scalar(Scalar),
    Top,
}

/// (a, b) = ε when b ≥ εa, 0 when no unit works, ⊤ when b = 0.
pub fn duality_pair(m: &FiniteStructure, a: Elem, b: Elem) -> Result<DualValue> {
    if a == m.zero() {
        return Err(Error::InvalidArgument("the first argument of the duality must be nonzero".into()));
    }
    if b == m.zero() {
        return Ok(DualValue::Top);
    }
    let ord = natural_order(m);
    Ok(DualValue::Scalar(pair_with(m, &ord, a, b)))
}

fn pair_with(m: &FiniteStructure, ord: &NaturalOrder, a: Elem, b: Elem) -> Scalar {
    let units = m.base().units();
    let hits: Vec<usize> = (0..units.len()).filter(|&u| ord.leq(m.scale_unit(u, a), b)).collect();
    match hits.as_slice() {
        [] => Scalar::Zero,
        [u] => units[*u],
        _ => panic!("two units below a nonzero element"),
    }
}

/// The dual module M* of filters, with the order-reversing bijection.
#[derive(Debug, Clone)]
pub struct DualModule {
    /// Carrier: index 0 is ∅, the rest are principal filters.
    pub module: FiniteStructure,
    /// Sorted members of each filter.
    pub filters: Vec<Vec<Elem>>,
    /// For each nonzero a, the index of F_a in `module`; `to_dual[0]` is the
    /// image of the zero element's partner ⊤, i.e. ∅.
    pub to_dual: Vec<Elem>,
}

impl DualModule {
    /// Index of the filter with exactly these members.
    pub fn find(&self, members: &[Elem]) -> Option<Elem> {
        self.filters.iter().position(|f| f == members)
    }

    /// The principal generator of each nonzero filter.
    pub fn generator_of(&self, m: &FiniteStructure, f: Elem) -> Option<Elem> {
        (f != 0).then(|| m.sum(self.filters[f].iter().copied()).unwrap())
    }
}

/// Biconditional filter test: 0 ∉ F and a + b ∈ F ⇔ a ∈ F and b ∈ F.
pub fn is_filter(m: &FiniteStructure, members: &[bool]) -> bool {
    !members[m.zero()]
        && m.elements().all(|a| m.elements().all(|b| members[m.add(a, b)] == (members[a] && members[b])))
}

pub fn dual_module(m: &FiniteStructure) -> Result<DualModule> {
    let ord = natural_order(m);
    let mut filters: Vec<Vec<Elem>> = vec![Vec::new()];
    let mut to_dual = vec![0; m.len()];
    for a in m.nonzero() {
        let f = ord.up_set(a);
        let mut mask = vec![false; m.len()];
        f.iter().for_each(|&x| mask[x] = true);
        if !is_filter(m, &mask) {
            return Err(Error::Verification(format!("up-set of {} is not a filter", m.name(a))));
        }
        to_dual[a] = filters.len();
        filters.push(f);
    }
    let n = filters.len();
    let find = |members: &[Elem]| -> Elem {
        filters.iter().position(|f| f == members).expect("filters closed under the operations")
    };
    let inter = |i: usize, j: usize| -> Elem {
        let v: Vec<Elem> = filters[i].iter().copied().filter(|x| filters[j].contains(x)).collect();
        find(&v)
    };
    let units = m.base().units();
    let inv_idx: Vec<usize> = units
        .iter()
        .map(|u| m.base().unit_index(&m.base().inv(u).unwrap()).unwrap())
        .collect();
    let act = |u: usize, i: usize| -> Elem {
        let mut v: Vec<Elem> = filters[i].iter().map(|&x| m.scale_unit(inv_idx[u], x)).collect();
        v.sort_unstable();
        find(&v)
    };
    let minus = m.base().unit_index(&m.base().minus_one()).unwrap();
    let names = (0..n)
        .map(|i| if i == 0 { "0".to_string() } else { format!("F[{}]", m.name(m.sum(filters[i].iter().copied()).unwrap())) })
        .collect();
    let add_t: Vec<Elem> = (0..n * n).map(|k| inter(k / n, k % n)).collect();
    let neg_t: Vec<Elem> = (0..n).map(|i| act(minus, i)).collect();
    let sc_t: Vec<Elem> = (0..units.len() * n).map(|k| act(k / n, k % n)).collect();
    let module = FiniteStructure::from_tables(m.base().clone(), names, 0, None, add_t, neg_t, sc_t, None)?;
    Ok(DualModule { module, filters, to_dual })
}

/// The natural map a ↦ â = {F ∈ M* : a ∈ F} into (M*)*.
pub fn natural_embedding(m: &FiniteStructure, d: &DualModule, dd: &DualModule) -> Vec<Elem> {
    m.elements()
        .map(|a| {
            let hat: Vec<Elem> = (0..d.filters.len()).filter(|&f| d.filters[f].contains(&a)).collect();
            dd.find(&hat).expect("â is a filter of the dual")
        })
        .collect()
}

/// φ*: M2* → M1*, F ↦ φ⁻¹(F).
pub fn hom_dual(
    m1: &FiniteStructure,
    phi: &Homomorphism,
    d1: &DualModule,
    d2: &DualModule,
) -> Result<Homomorphism> {
    let map = d2
        .filters
        .iter()
        .map(|f| {
            let pre: Vec<Elem> = m1.elements().filter(|&a| f.contains(&phi.apply(a))).collect();
            d1.find(&pre).ok_or_else(|| Error::Verification("preimage of a filter is not principal".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Homomorphism { map })
}

/// φ*(μ) computed as (Σ{m : φ(m) ≥ μ*})*, for comparison with the pullback.
pub fn hom_dual_by_sums(
    m1: &FiniteStructure,
    m2: &FiniteStructure,
    phi: &Homomorphism,
    d1: &DualModule,
    d2: &DualModule,
) -> Homomorphism {
    let ord2 = natural_order(m2);
    let map = (0..d2.filters.len())
        .map(|f| match d2.generator_of(m2, f) {
            None => 0,
            Some(mu) => match m1.sum(m1.elements().filter(|&a| ord2.leq(mu, phi.apply(a)))) {
                Some(s) if s != m1.zero() => d1.to_dual[s],
                _ => 0,
            },
        })
        .collect();
    Homomorphism { map }
}
