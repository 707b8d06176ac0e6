use super::order::natural_order;
use super::{Elem, FiniteStructure};

fn signature(m: &FiniteStructure) -> Vec<(usize, usize, usize, bool)> {
    let ord = natural_order(m);
    m.elements()
        .map(|a| {
            let up = m.elements().filter(|&b| ord.leq(a, b)).count();
            let down = m.elements().filter(|&b| ord.leq(b, a)).count();
            let orbit = (0..m.unit_count()).filter(|&u| m.scale_unit(u, a) == a).count();
            (up, down, orbit, Some(a) == m.one())
        })
        .collect()
}

/// An isomorphism `a → b` preserving every operation present in both, found
/// by backtracking with order-invariant pruning.
pub fn find_isomorphism(a: &FiniteStructure, b: &FiniteStructure) -> Option<Vec<Elem>> {
    if a.len() != b.len()
        || a.base().spec() != b.base().spec()
        || a.is_algebra() != b.is_algebra()
        || a.one().is_some() != b.one().is_some()
    {
        return None;
    }
    let (sa, sb) = (signature(a), signature(b));
    let mut ka = sa.clone();
    let mut kb = sb.clone();
    ka.sort();
    kb.sort();
    if ka != kb {
        return None;
    }
    let n = a.len();
    let mut map: Vec<Option<Elem>> = vec![None; n];
    let mut used = vec![false; n];
    map[a.zero()] = Some(b.zero());
    used[b.zero()] = true;
    // assign the most constrained elements first
    let mut order: Vec<Elem> = a.elements().filter(|&x| x != a.zero()).collect();
    order.sort_by_key(|&x| std::cmp::Reverse(sa[x].0 + sa[x].1));

    fn ok(a: &FiniteStructure, b: &FiniteStructure, map: &[Option<Elem>], x: Elem) -> bool {
        let fx = map[x].unwrap();
        for y in a.elements() {
            let Some(fy) = map[y] else { continue };
            if let Some(fs) = map[a.add(x, y)] {
                if fs != b.add(fx, fy) {
                    return false;
                }
            }
            if a.is_algebra() {
                for (p, q) in [(x, y), (y, x)] {
                    if let Some(fs) = map[a.mul(p, q)] {
                        if fs != b.mul(map[p].unwrap(), map[q].unwrap()) {
                            return false;
                        }
                    }
                }
            }
            // x as a result
            for z in a.elements() {
                let Some(fz) = map[z] else { continue };
                if a.add(y, z) == x && b.add(fy, fz) != fx {
                    return false;
                }
                if a.is_algebra() && a.mul(y, z) == x && b.mul(fy, fz) != fx {
                    return false;
                }
            }
        }
        for u in 0..a.unit_count() {
            if let Some(fs) = map[a.scale_unit(u, x)] {
                if fs != b.scale_unit(u, fx) {
                    return false;
                }
            }
            for y in a.elements() {
                if a.scale_unit(u, y) == x {
                    if let Some(fy) = map[y] {
                        if b.scale_unit(u, fy) != fx {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    #[allow(clippy::too_many_arguments)]
    fn go(
        a: &FiniteStructure,
        b: &FiniteStructure,
        sa: &[(usize, usize, usize, bool)],
        sb: &[(usize, usize, usize, bool)],
        order: &[Elem],
        k: usize,
        map: &mut Vec<Option<Elem>>,
        used: &mut Vec<bool>,
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let x = order[k];
        for y in b.elements() {
            if used[y] || sa[x] != sb[y] {
                continue;
            }
            map[x] = Some(y);
            used[y] = true;
            if ok(a, b, map, x) && go(a, b, sa, sb, order, k + 1, map, used) {
                return true;
            }
            map[x] = None;
            used[y] = false;
        }
        false
    }

    if go(a, b, &sa, &sb, &order, 0, &mut map, &mut used) {
        Some(map.into_iter().map(|v| v.unwrap()).collect())
    } else {
        None
    }
}

pub fn isomorphic(a: &FiniteStructure, b: &FiniteStructure) -> bool {
    find_isomorphism(a, b).is_some()
}
