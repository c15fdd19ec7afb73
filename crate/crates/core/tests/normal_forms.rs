mod common;

use std::collections::HashMap;

use common::*;
use garside::{system, GroupElement, LatticeOp, Order};
use proptest::prelude::*;

/// Positive words are equal iff the relation closure connects them; the
/// normal form must agree exactly.
#[test]
fn normal_form_matches_relation_closure() {
    for name in ["A2", "A3", "I2(5)"] {
        let sys = system(name).unwrap();
        for len in 0..=5 {
            let wc = word_classes(&sys, len);
            let mut rep_of: HashMap<GroupElement, usize> = HashMap::new();
            let mut class_of: HashMap<usize, GroupElement> = HashMap::new();
            for (w, &c) in wc.words.iter().zip(&wc.class) {
                let g = GroupElement::from_word(&sys, &to_letters(w)).unwrap();
                if let Some(prev) = class_of.get(&c) {
                    assert_eq!(*prev, g, "{name}: {w:?} split from its class");
                } else {
                    class_of.insert(c, g.clone());
                }
                let c2 = *rep_of.entry(g).or_insert(c);
                assert_eq!(c2, c, "{name}: two classes merged at {w:?}");
            }
        }
    }
}

#[test]
fn word_of_normal_form_round_trips() {
    let mut r = rng(11);
    for name in ["A4", "B3", "D4", "F4", "H3", "I2(7)"] {
        let sys = system(name).unwrap();
        for _ in 0..100 {
            let g = random_element(&mut r, &sys, 14);
            assert_eq!(GroupElement::from_word(&sys, &g.to_word()).unwrap(), g);
            assert_eq!(GroupElement::from_spelling(&sys, g.inf(), &g.spelling()).unwrap(), g);
        }
    }
}

#[test]
fn delta_is_central_squared_and_lcm_of_atoms() {
    for name in ["A3", "B4", "D5", "E6", "H4", "I2(8)"] {
        let sys = system(name).unwrap();
        let d = GroupElement::delta_power(&sys, 1);
        let mut lcm = GroupElement::identity(&sys);
        for a in 0..sys.rank() {
            let s = GroupElement::atom(&sys, a, false);
            assert!(s.divides(&d, Order::Prefix).unwrap() && s.divides(&d, Order::Suffix).unwrap());
            assert_eq!(s.conjugate(&GroupElement::delta_power(&sys, 2)), s);
            let j = sys.simple_lattice(&lcm.as_simple().unwrap(), &s.as_simple().unwrap(), LatticeOp::Join, Order::Prefix);
            lcm = GroupElement::from_simple(&sys, j);
        }
        assert_eq!(lcm, d);
    }
}

#[test]
fn lattice_matches_divisor_search() {
    // independent oracle: meet as the longest common prefix among all simples
    let sys = system("A3").unwrap();
    let simples = sys.enumerate(sys.all_atoms(), 100).unwrap();
    let mut r = rng(3);
    use rand::Rng;
    for _ in 0..200 {
        let a = &simples[r.gen_range(0..simples.len())];
        let b = &simples[r.gen_range(0..simples.len())];
        for order in [Order::Prefix, Order::Suffix] {
            let meet = sys.simple_lattice(a, b, LatticeOp::Meet, order);
            let best = simples
                .iter()
                .filter(|c| sys.simple_divides(c, a, order) && sys.simple_divides(c, b, order))
                .max_by_key(|c| c.length())
                .unwrap();
            assert_eq!(meet.length(), best.length());
            assert!(sys.simple_divides(&meet, a, order) && sys.simple_divides(&meet, b, order));
            let join = sys.simple_lattice(a, b, LatticeOp::Join, order);
            let least = simples
                .iter()
                .filter(|c| sys.simple_divides(a, c, order) && sys.simple_divides(b, c, order))
                .min_by_key(|c| c.length())
                .unwrap();
            assert_eq!(join, *least);
        }
    }
}

fn arb_system() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["A3", "A4", "B3", "D4", "F4", "H3", "I2(5)", "I2(7)"])
}

fn arb_word(max: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec((1i64..=4, any::<bool>()), 0..max)
        .prop_map(|v| v.into_iter().map(|(a, neg)| if neg { -a } else { a }).collect())
}

fn clamp(word: &[i64], rank: usize) -> Vec<i64> {
    word.iter().map(|&l| (l.abs() - 1) % rank as i64 + 1).zip(word).map(|(a, &l)| if l < 0 { -a } else { a }).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_laws(name in arb_system(), u in arb_word(12), v in arb_word(12), w in arb_word(12)) {
        let sys = system(name).unwrap();
        let g = |x: &[i64]| GroupElement::from_word(&sys, &clamp(x, sys.rank())).unwrap();
        let (a, b, c) = (g(&u), g(&v), g(&w));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a * &a.inverse()).is_identity());
        prop_assert_eq!((&a * &b).inverse(), &b.inverse() * &a.inverse());
        let cat: Vec<i64> = clamp(&u, sys.rank()).into_iter().chain(clamp(&v, sys.rank())).collect();
        prop_assert_eq!(GroupElement::from_word(&sys, &cat).unwrap(), &a * &b);
    }

    #[test]
    fn normal_form_invariants(name in arb_system(), u in arb_word(16)) {
        let sys = system(name).unwrap();
        let g = GroupElement::from_word(&sys, &clamp(&u, sys.rank())).unwrap();
        let w0 = sys.longest_element();
        for f in g.factors() {
            prop_assert!(!f.is_identity() && f != w0);
        }
        for p in g.factors().windows(2) {
            prop_assert!(sys.is_left_weighted(&p[0], &p[1]));
        }
        prop_assert_eq!(g.tau(2), g.clone());
        prop_assert_eq!(g.reverse().reverse(), g.clone());
        prop_assert_eq!(g.inverse().inf(), -g.sup());
        prop_assert_eq!(g.inverse().sup(), -g.inf());
    }

    #[test]
    fn reverse_is_an_anti_automorphism(name in arb_system(), u in arb_word(10), v in arb_word(10)) {
        let sys = system(name).unwrap();
        let g = |x: &[i64]| GroupElement::from_word(&sys, &clamp(x, sys.rank())).unwrap();
        let (a, b) = (g(&u), g(&v));
        prop_assert_eq!((&a * &b).reverse(), &b.reverse() * &a.reverse());
        let rev: Vec<i64> = clamp(&u, sys.rank()).into_iter().rev().collect();
        prop_assert_eq!(GroupElement::from_word(&sys, &rev).unwrap(), a.reverse());
    }
}
