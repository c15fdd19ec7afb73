mod common;

use common::*;
use garside::parabolic::*;
use garside::{system, AtomSet, GroupElement, Side};
use rand::Rng;

fn atom(sys: &std::sync::Arc<garside::ArtinSystem>, a: usize) -> GroupElement {
    GroupElement::atom(sys, a, false)
}

#[test]
fn ribbon_identities_hold_for_every_pair() {
    for name in ["A3", "A4", "B3", "D4", "H3", "I2(5)"] {
        let sys = system(name).unwrap();
        for x in sys.all_atoms().subsets().filter(|x| *x != sys.all_atoms()) {
            for t in sys.all_atoms().difference(x).iter() {
                let right = ribbon(&sys, x, t, Side::Right).unwrap();
                let left = ribbon(&sys, x, t, Side::Left).unwrap();
                assert_eq!(right.value.reverse(), left.value, "{name} {x} {t}");
                let dx = sub_delta(&sys, x).unwrap();
                let dxt = sub_delta(&sys, x.with(t)).unwrap();
                assert_eq!(&right.value * &dx, dxt);
                assert_eq!(&dx * &left.value, dxt);
                // X is carried onto the target by each ribbon
                for a in x.iter() {
                    let r = atom(&sys, a).conjugate(&right.value.inverse());
                    let l = atom(&sys, a).conjugate(&left.value);
                    let img = |g: &GroupElement| g.as_simple().and_then(|s| sys.as_generator(&s));
                    assert!(img(&r).is_some_and(|b| right.target.contains(b)));
                    assert!(img(&l).is_some_and(|b| left.target.contains(b)));
                }
                assert_eq!(right.target.len(), x.len());
                // unique atomic suffix / prefix
                let (rs, ls) = (right.value.as_simple().unwrap(), left.value.as_simple().unwrap());
                assert_eq!(rs.right_descents(), AtomSet::EMPTY.with(t));
                assert_eq!(ls.left_descents(), AtomSet::EMPTY.with(t));
                assert!(sys.is_left_weighted(&rs, &ls) && sys.is_right_weighted(&rs, &ls));
                assert!(sys.is_left_weighted(&ls, &rs) && sys.is_right_weighted(&ls, &rs));
            }
        }
    }
}

#[test]
fn parabolic_normal_form_agrees_with_membership() {
    let mut r = rng(5);
    for name in ["A4", "B4", "D4", "H3"] {
        let sys = system(name).unwrap();
        for x in proper_subsets(&sys) {
            for _ in 0..10 {
                let g = random_in_parabolic(&mut r, &sys, x, 10);
                assert!(member(&g, x));
                let (k, simples) = parabolic_normal_form(&g, x).unwrap();
                let rebuilt = garside::garside::product(
                    &sys,
                    std::iter::once(&sub_delta_power(&sys, x, k).unwrap())
                        .chain(simples.iter().map(|s| GroupElement::from_simple(&sys, s.clone())).collect::<Vec<_>>().iter()),
                );
                assert_eq!(rebuilt, g);
                // τ_X is an involution of A_X
                assert_eq!(tau_sub(&tau_sub(&g, x, 1).unwrap(), x, 1).unwrap(), g);
            }
            let out = sys.all_atoms().difference(x).iter().next().unwrap();
            let g = &random_in_parabolic(&mut r, &sys, x, 6) * &atom(&sys, out);
            assert!(!member(&g, x));
        }
    }
}

/// Builds `x = α·r₁⋯r_m` from random left ribbons; any such `x` conjugates an
/// element with support `X` positively.
fn random_conjugator(r: &mut Rng8, sys: &std::sync::Arc<garside::ArtinSystem>, x: AtomSet, m: usize) -> (GroupElement, AtomSet) {
    let mut g = random_in_parabolic(r, sys, x, 4);
    g = GroupElement::from_word(sys, &g.to_word().into_iter().map(|l| l.abs()).collect::<Vec<_>>()).unwrap();
    let mut cur = x;
    for _ in 0..m {
        let outside: Vec<usize> = sys.all_atoms().difference(cur).iter().collect();
        let t = outside[r.gen_range(0..outside.len())];
        let rb = ribbon(sys, cur, t, Side::Left).unwrap();
        g = &g * &rb.value;
        cur = rb.target;
    }
    (g, cur)
}

#[test]
fn factor_conjugator_recomposes_random_conjugators() {
    let mut r = rng(8);
    for name in ["A3", "A4", "B3", "D4"] {
        let sys = system(name).unwrap();
        for x in proper_subsets(&sys) {
            // Δ_X² is central in A_X, so every positive α conjugates it positively
            let u = sub_delta_power(&sys, x, 2).unwrap();
            for m in 0..4 {
                let (c, y) = random_conjugator(&mut r, &sys, x, m);
                let (alpha, chain) = factor_conjugator(&u, &c).unwrap();
                assert!(member(&alpha, x));
                assert!(alpha.is_positive());
                chain.validate(&sys).unwrap();
                assert_eq!(&alpha * &chain.value(&sys), c);
                assert_eq!(*chain.sets.last().unwrap(), y);
                assert_eq!(support(&u.conjugate(&c)).unwrap(), y);
            }
        }
    }
}

#[test]
fn minimal_conjugators_are_minimal() {
    let mut r = rng(9);
    let sys = system("A4").unwrap();
    let mut checked = 0;
    while checked < 200 {
        let a = r.gen_range(0..4);
        let u = atom(&sys, a);
        let x = random_positive(&mut r, &sys, 6);
        if x.is_identity() || !u.conjugate(&x).is_positive() {
            continue;
        }
        checked += 1;
        let (c, kind) = minimal_conjugator(&u, &x).unwrap();
        assert!(c.divides(&x, garside::Order::Prefix).unwrap());
        assert!(u.conjugate(&c).is_positive());
        // no proper nontrivial prefix of c works
        let s = c.as_simple().unwrap();
        for p in sys.enumerate(sys.all_atoms(), 1000).unwrap() {
            if !p.is_identity() && p != s && sys.simple_divides(&p, &s, garside::Order::Prefix) {
                assert!(!u.conjugate(&GroupElement::from_simple(&sys, p)).is_positive());
            }
        }
        match kind {
            ConjugatorKind::InParabolic => assert!(member(&c, AtomSet::EMPTY.with(a))),
            ConjugatorKind::Ribbon { atom: t } => {
                assert_eq!(c, ribbon(&sys, AtomSet::EMPTY.with(a), t, Side::Left).unwrap().value)
            }
        }
    }
}

#[test]
fn invalid_inputs_are_reported() {
    let sys = system("A3").unwrap();
    let x = AtomSet::from_labels(&[1]);
    assert!(ribbon(&sys, x, 0, Side::Left).is_err());
    assert!(ribbon(&sys, x, 7, Side::Left).is_err());
    let u = atom(&sys, 0);
    assert!(factor_conjugator(&u, &u.inverse()).is_err());
    assert!(minimal_conjugator(&u, &atom(&sys, 1)).is_err());
}
