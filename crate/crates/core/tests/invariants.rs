use finfty::congruence::{check_congruence, cong_closure};
use finfty::fixtures;
use finfty::structures::{natural_order, FiniteStructure};
use finfty::textio::{parse_structure, write_finalg};
use proptest::prelude::*;

fn pool() -> Vec<FiniteStructure> {
    fixtures::modules()
        .into_iter()
        .chain(fixtures::algebras())
        .chain(fixtures::fields())
        .filter(|m| m.len() <= 27)
        .collect()
}

fn instance() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    let n = pool().len();
    (0..n, prop::collection::vec((0usize..64, 0usize..64), 0..4))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_is_a_congruence_and_idempotent((i, raw) in instance()) {
        let m = &pool()[i];
        let pairs: Vec<(usize, usize)> = raw.iter().map(|&(a, b)| (a % m.len(), b % m.len())).collect();
        let c = cong_closure(m, &pairs);
        prop_assert!(check_congruence(m, |a, b| c.related(a, b)).is_ok());
        prop_assert!(pairs.iter().all(|&(a, b)| c.related(a, b)));
        prop_assert_eq!(cong_closure(m, &c.pairs()), c.clone());
        let smaller = cong_closure(m, &pairs[..pairs.len().saturating_sub(1)]);
        prop_assert!(smaller.is_subset(&c));
    }

    #[test]
    fn quotients_round_trip_through_finalg((i, raw) in instance()) {
        let m = &pool()[i];
        let pairs: Vec<(usize, usize)> = raw.iter().map(|&(a, b)| (a % m.len(), b % m.len())).collect();
        let (q, proj) = cong_closure(m, &pairs).quotient(m).unwrap();
        prop_assert!(q.check_axioms().is_ok());
        for a in m.elements() {
            for b in m.elements() {
                prop_assert_eq!(proj[m.add(a, b)], q.add(proj[a], proj[b]));
            }
        }
        let doc = write_finalg(&q).unwrap();
        prop_assert_eq!(parse_structure(&doc).unwrap(), q);
    }
}

#[test]
fn natural_order_is_compatible_with_addition() {
    for m in pool() {
        let ord = natural_order(&m);
        for a in m.elements() {
            check_order_at(&m, &ord, a);
        }
    }
}

fn check_order_at(m: &FiniteStructure, ord: &finfty::structures::NaturalOrder, a: usize) {
    assert!(ord.leq(m.zero(), a));
    for b in m.elements() {
        let s = m.add(a, b);
        assert!(ord.leq(s, a) && ord.leq(s, b), "{} + {}", m.name(a), m.name(b));
        if ord.leq(a, b) {
            for c in m.elements() {
                assert!(ord.leq(m.add(a, c), m.add(b, c)));
            }
        }
    }
}
