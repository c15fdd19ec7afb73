mod common;

use std::collections::HashSet;

use common::*;
use garside::absorbable::{certify, decompose_normalizer, decompose_parabolic};
use garside::cal::*;
use garside::{system, GroupElement};

fn proper_simples(sys: &std::sync::Arc<garside::ArtinSystem>) -> Vec<GroupElement> {
    sys.enumerate(sys.all_atoms(), 1 << 20)
        .unwrap()
        .into_iter()
        .filter(|w| !w.is_identity() && w != sys.longest_element())
        .map(|w| GroupElement::from_simple(sys, w))
        .collect()
}

/// Counts cosets `g⟨Δ⟩` among `elements`, comparing pairs directly.
fn count_cosets(elements: &[GroupElement]) -> usize {
    let mut reps: Vec<&GroupElement> = Vec::new();
    for g in elements {
        if !reps.iter().any(|h| (&h.inverse() * g).is_delta_power()) {
            reps.push(g);
        }
    }
    reps.len()
}

#[test]
fn ball_sizes_match_coset_enumeration() {
    for name in ["A2", "A3", "B3", "I2(5)"] {
        let sys = system(name).unwrap();
        let simples = proper_simples(&sys);
        let center = CalVertex::trivial(&sys);
        let b1 = ball(&center, 1, &AbsorbablePool::empty(), 1 << 20);
        assert_eq!(b1.vertices.len(), simples.len() + 1, "{name}");
        let mut words: Vec<GroupElement> = vec![GroupElement::identity(&sys)];
        words.extend(simples.iter().cloned());
        for a in &simples {
            for b in &simples {
                words.push(a * b);
            }
        }
        let b2 = ball(&center, 2, &AbsorbablePool::empty(), 1 << 20);
        assert_eq!(b2.vertices.len(), count_cosets(&words), "{name}");
        assert!(!b2.truncated && b2.verify());
    }
}

#[test]
fn action_is_equivariant() {
    let mut r = rng(31);
    let sys = system("A4").unwrap();
    for _ in 0..100 {
        let g = random_element(&mut r, &sys, 10);
        let h = random_element(&mut r, &sys, 10);
        assert_eq!(act(&g, &vertex_of(&h)), vertex_of(&(&g * &h)));
        assert_eq!(vertex_of(&(&h * &GroupElement::delta_power(&sys, 3))), vertex_of(&h));
        assert_eq!(vertex_of(&h).rep().inf(), 0);
    }
}

#[test]
fn neighbor_sets_are_translates() {
    let sys = system("A3").unwrap();
    let pool = AbsorbablePool::new(vec![certify(&GroupElement::parse(&sys, "1 1").unwrap(), &GroupElement::parse(&sys, "3 3").unwrap()).unwrap()]).unwrap();
    let base: HashSet<_> = neighbors(&CalVertex::trivial(&sys), &pool).into_iter().map(|e| e.to).collect();
    let g = GroupElement::parse(&sys, "2 -1 3").unwrap();
    let moved: HashSet<_> = neighbors(&vertex_of(&g), &pool).into_iter().map(|e| e.to).collect();
    let translated: HashSet<_> = base.iter().map(|v| act(&g, v)).collect();
    assert_eq!(moved, translated);
    for e in neighbors(&vertex_of(&g), &pool) {
        assert!(e.verify());
    }
}

#[test]
fn json_round_trip_and_dot() {
    let sys = system("A3").unwrap();
    let pool = AbsorbablePool::new(vec![certify(&GroupElement::parse(&sys, "1 1").unwrap(), &GroupElement::parse(&sys, "3 3").unwrap()).unwrap()]).unwrap();
    let b = ball(&CalVertex::trivial(&sys), 2, &pool, 1 << 20);
    let text = b.to_json();
    let back = CalBall::from_json(&text).unwrap();
    assert_eq!(back.vertices, b.vertices);
    assert_eq!(back.edges, b.edges);
    assert_eq!(back.to_json(), text);
    let dot = b.to_dot();
    assert!(dot.starts_with("graph cal {"));
    assert_eq!(dot.matches(" -- ").count(), b.edges.len());
    // tampering with a label must be caught
    let bad = text.replacen("\"absorbable\"", "\"simple\"", 1);
    if bad != text {
        assert!(CalBall::from_json(&bad).is_err());
    }
}

#[test]
fn budget_truncates() {
    let sys = system("A4").unwrap();
    let b = ball(&CalVertex::trivial(&sys), 3, &AbsorbablePool::empty(), 50);
    assert!(b.truncated);
    assert!(b.vertices.len() <= 50 + 120);
}

#[test]
fn parabolic_orbits_stay_close() {
    let mut r = rng(32);
    for name in ["A3", "A4", "B3"] {
        let sys = system(name).unwrap();
        let base = CalVertex::trivial(&sys);
        for x in proper_subsets(&sys) {
            for _ in 0..10 {
                let g = random_in_parabolic(&mut r, &sys, x, 12);
                let d = decompose_parabolic(&g, x).unwrap();
                let chain = certified_chain(&base, Via::Decomposition(&d)).unwrap();
                assert!(chain.len() <= 3);
                assert!(chain.iter().all(|e| e.verify()));
                assert_eq!(distance_upper_bound(&base, &vertex_of(&g), Via::Decomposition(&d)).unwrap(), chain.len());
                let alpha = random_normalizer(&mut r, &sys, x);
                let d = decompose_normalizer(&alpha, x).unwrap();
                assert!(distance_upper_bound(&base, &vertex_of(&alpha), Via::Decomposition(&d)).unwrap() <= 9);
            }
        }
    }
}
