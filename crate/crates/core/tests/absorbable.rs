mod common;

use common::*;
use garside::absorbable::*;
use garside::parabolic::{member, sub_delta_power};
use garside::{system, AtomSet, GroupElement};
use rand::Rng;

const SYSTEMS: [&str; 5] = ["A3", "A4", "B3", "D4", "H3"];

/// Recomputes the absorption conditions from words only.
fn independently_absorbs(y: &GroupElement, x: &GroupElement) -> bool {
    let sys = y.system();
    let y = GroupElement::from_word(sys, &y.to_word()).unwrap();
    let x = GroupElement::from_word(sys, &x.to_word()).unwrap();
    let mut w = x.to_word();
    w.extend(y.to_word());
    let xy = GroupElement::from_word(sys, &w).unwrap();
    (y.inf() == 0 || y.sup() == 0) && xy.inf() == x.inf() && xy.sup() == x.sup()
}

fn check(d: &AbsorbableDecomposition, bound: usize) {
    assert!(d.len() <= bound, "{} factors for {}", d.len(), d.target);
    d.check().unwrap();
    for c in &d.certificates {
        assert!(independently_absorbs(&c.absorbed, &c.absorber), "{} by {}", c.absorbed, c.absorber);
    }
    assert!(d.inverse().verify());
}

#[test]
fn delta_powers() {
    for name in SYSTEMS {
        let sys = system(name).unwrap();
        for k in -6..=6 {
            let d = decompose_delta_power(&sys, k).unwrap();
            assert_eq!(d.target, GroupElement::delta_power(&sys, k));
            check(&d, 3);
        }
    }
}

#[test]
fn sub_delta_powers() {
    for name in SYSTEMS {
        let sys = system(name).unwrap();
        for x in proper_subsets(&sys) {
            for k in -4..=4 {
                let d = decompose_sub_delta_power(&sys, x, k).unwrap();
                assert_eq!(d.target, sub_delta_power(&sys, x, k).unwrap());
                check(&d, 2);
            }
        }
    }
}

#[test]
fn random_parabolic_elements() {
    let mut r = rng(21);
    for name in SYSTEMS {
        let sys = system(name).unwrap();
        for x in proper_subsets(&sys) {
            for _ in 0..15 {
                let g = random_in_parabolic(&mut r, &sys, x, 12);
                check(&decompose_parabolic(&g, x).unwrap(), 3);
            }
        }
    }
}

#[test]
fn random_positive_conjugators() {
    let mut r = rng(22);
    for name in SYSTEMS {
        let sys = system(name).unwrap();
        for x in proper_subsets(&sys) {
            let u = &sub_delta_power(&sys, x, 1).unwrap() * &random_word_positive(&mut r, &sys, x);
            for _ in 0..8 {
                let c = random_positive_conjugator(&mut r, &u, x, 4);
                assert!(u.conjugate(&c).is_positive());
                check(&decompose_positive_conjugator(&u, &c).unwrap(), 9);
            }
        }
    }
}

fn random_word_positive(r: &mut Rng8, sys: &std::sync::Arc<garside::ArtinSystem>, x: AtomSet) -> GroupElement {
    let len = r.gen_range(0..4);
    GroupElement::from_word(sys, &random_word_in(r, x, len, true)).unwrap()
}

#[test]
fn random_normalizers() {
    let mut r = rng(23);
    for name in SYSTEMS {
        let sys = system(name).unwrap();
        for x in proper_subsets(&sys) {
            for _ in 0..8 {
                let alpha = random_normalizer(&mut r, &sys, x);
                let d = decompose_normalizer(&alpha, x).unwrap();
                check(&d, 9);
                // normalizers map the parabolic onto itself
                for a in x.iter() {
                    assert!(member(&GroupElement::atom(&sys, a, false).conjugate(&alpha), x));
                }
            }
        }
    }
}

#[test]
fn preconditions() {
    let a2 = system("A2").unwrap();
    assert!(decompose_delta_power(&a2, 1).is_err());
    let a3 = system("A3").unwrap();
    let all = a3.all_atoms();
    assert!(decompose_parabolic(&GroupElement::atom(&a3, 0, false), all).is_err());
    assert!(decompose_parabolic(&GroupElement::atom(&a3, 0, false), AtomSet::from_labels(&[2])).is_err());
    let u = GroupElement::atom(&a3, 0, false);
    assert!(decompose_positive_conjugator(&u, &GroupElement::atom(&a3, 1, false)).is_err());
    assert!(decompose_normalizer(&GroupElement::atom(&a3, 1, false), AtomSet::from_labels(&[1])).is_err());
    let d = GroupElement::delta_power(&a3, 1);
    assert!(bounded_search(&(&d * &u), 1, 1 << 20).is_err());
}

#[test]
fn dihedral_classifier_is_sound() {
    for name in ["A2", "I2(4)", "I2(5)", "I2(6)"] {
        let sys = system(name).unwrap();
        let aut = garside::growth::NormalFormAutomaton::build(&sys, 1 << 20).unwrap();
        for r in 0..=2 {
            for p in aut.paths(r, 1 << 20).unwrap() {
                let y = aut.element(&p);
                for z in [y.clone(), y.inverse()] {
                    let found = bounded_search(&z, 3, 1 << 20).unwrap();
                    if !classify_absorbable_small(&z).unwrap() {
                        assert!(found.is_none(), "{name}: {z} certified by {:?}", found.map(|c| c.absorber));
                    } else if !z.is_identity() {
                        assert!(found.is_some_and(|c| c.verify()), "{name}: {z}");
                    }
                }
            }
        }
    }
}

#[test]
fn a2_absorbables_are_the_atoms() {
    let sys = system("A2").unwrap();
    let aut = garside::growth::NormalFormAutomaton::build(&sys, 1 << 20).unwrap();
    let mut found = Vec::new();
    for r in 1..=3 {
        for p in aut.paths(r, 1 << 20).unwrap() {
            let y = aut.element(&p);
            for z in [y.clone(), y.inverse()] {
                if classify_absorbable_small(&z).unwrap() {
                    found.push(z);
                }
            }
        }
    }
    let expected: Vec<GroupElement> = ["1", "2", "-1", "-2"].iter().map(|w| GroupElement::parse(&sys, w).unwrap()).collect();
    assert_eq!(found.len(), 4);
    assert!(expected.iter().all(|e| found.contains(e)));
}
