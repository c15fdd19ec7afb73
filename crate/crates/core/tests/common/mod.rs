#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use garside::parabolic::ribbon;
use garside::{ArtinSystem, AtomSet, GroupElement, Side};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random signed word over the atoms of `x` (1-based letters).
pub fn random_word_in(rng: &mut Rng8, x: AtomSet, len: usize, positive: bool) -> Vec<i64> {
    let atoms: Vec<usize> = x.iter().collect();
    (0..len)
        .map(|_| {
            let a = atoms[rng.gen_range(0..atoms.len())] as i64 + 1;
            if positive || rng.gen_bool(0.5) {
                a
            } else {
                -a
            }
        })
        .collect()
}

pub fn random_element(rng: &mut Rng8, sys: &Arc<ArtinSystem>, max_len: usize) -> GroupElement {
    let len = rng.gen_range(0..=max_len);
    GroupElement::from_word(sys, &random_word_in(rng, sys.all_atoms(), len, false)).unwrap()
}

pub fn random_positive(rng: &mut Rng8, sys: &Arc<ArtinSystem>, max_len: usize) -> GroupElement {
    let len = rng.gen_range(0..=max_len);
    GroupElement::from_word(sys, &random_word_in(rng, sys.all_atoms(), len, true)).unwrap()
}

pub fn random_in_parabolic(rng: &mut Rng8, sys: &Arc<ArtinSystem>, x: AtomSet, max_len: usize) -> GroupElement {
    if x.is_empty() {
        return GroupElement::identity(sys);
    }
    let len = rng.gen_range(0..=max_len);
    GroupElement::from_word(sys, &random_word_in(rng, x, len, false)).unwrap()
}

/// Proper nonempty subsets of the atoms.
pub fn proper_subsets(sys: &ArtinSystem) -> Vec<AtomSet> {
    sys.all_atoms().subsets().filter(|x| !x.is_empty() && *x != sys.all_atoms()).collect()
}

/// Equivalence classes of positive words of a fixed length under the braid
/// relations, found by closing each word under all relation applications.
/// Positive words represent equal monoid elements iff they are connected.
pub struct WordClasses {
    pub words: Vec<Vec<usize>>,
    pub class: Vec<usize>,
}

fn braid_side(i: usize, j: usize, m: usize) -> Vec<usize> {
    (0..m).map(|k| if k % 2 == 0 { i } else { j }).collect()
}

pub fn word_classes(sys: &ArtinSystem, len: usize) -> WordClasses {
    let n = sys.rank();
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..len {
        words = words
            .iter()
            .flat_map(|w| {
                (0..n).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    let index: HashMap<Vec<usize>, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let mut parent: Vec<usize> = (0..words.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let m = sys.matrix();
    for (wi, w) in words.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let mij = m.get(i, j) as usize;
                if mij > len {
                    continue;
                }
                let lhs = braid_side(i, j, mij);
                let rhs = braid_side(j, i, mij);
                for pos in 0..=len - mij {
                    if w[pos..pos + mij] == lhs[..] {
                        let mut v = w.clone();
                        v[pos..pos + mij].copy_from_slice(&rhs);
                        let vi = index[&v];
                        let (a, b) = (find(&mut parent, wi), find(&mut parent, vi));
                        parent[a] = b;
                    }
                }
            }
        }
    }
    let class = (0..words.len()).map(|i| find(&mut parent, i)).collect();
    WordClasses { words, class }
}

pub fn to_letters(w: &[usize]) -> Vec<i64> {
    w.iter().map(|&a| a as i64 + 1).collect()
}

/// Image of an atom set under `τ^k`.
pub fn tau_set(sys: &Arc<ArtinSystem>, x: AtomSet, k: i64) -> AtomSet {
    AtomSet::from_indices(x.iter().map(|a| {
        let g = GroupElement::atom(sys, a, false).tau(k);
        sys.as_generator(&g.as_simple().unwrap()).unwrap()
    }))
}

/// A random product of left ribbons starting at `x`, with its final set.
pub fn random_ribbon_walk(rng: &mut Rng8, sys: &Arc<ArtinSystem>, x: AtomSet, steps: usize) -> (GroupElement, AtomSet) {
    let mut g = GroupElement::identity(sys);
    let mut cur = x;
    for _ in 0..steps {
        let outside: Vec<usize> = sys.all_atoms().difference(cur).iter().collect();
        let t = outside[rng.gen_range(0..outside.len())];
        let r = ribbon(sys, cur, t, Side::Left).unwrap();
        g = &g * &r.value;
        cur = r.target;
    }
    (g, cur)
}

/// Shortest left-ribbon path from `from` to `to`, by breadth-first search
/// over atom sets.
pub fn ribbon_path(sys: &Arc<ArtinSystem>, from: AtomSet, to: AtomSet) -> Option<GroupElement> {
    let mut prev: HashMap<AtomSet, (AtomSet, GroupElement)> = HashMap::new();
    let mut queue = std::collections::VecDeque::from([from]);
    let mut seen = std::collections::HashSet::from([from]);
    while let Some(cur) = queue.pop_front() {
        if cur == to {
            let mut g = GroupElement::identity(sys);
            let mut s = cur;
            while s != from {
                let (p, r) = &prev[&s];
                g = r * &g;
                s = *p;
            }
            return Some(g);
        }
        for t in sys.all_atoms().difference(cur).iter() {
            let r = ribbon(sys, cur, t, Side::Left).unwrap();
            if seen.insert(r.target) {
                prev.insert(r.target, (cur, r.value));
                queue.push_back(r.target);
            }
        }
    }
    None
}

fn positive_in(rng: &mut Rng8, sys: &Arc<ArtinSystem>, x: AtomSet, max_len: usize) -> GroupElement {
    if x.is_empty() {
        return GroupElement::identity(sys);
    }
    let len = rng.gen_range(0..=max_len);
    GroupElement::from_word(sys, &random_word_in(rng, x, len, true)).unwrap()
}

/// A random `x = Δᵏ α β` conjugating `u` (support `x`) to a positive element:
/// `α` is drawn until it conjugates `τᵏ(u)` positively, `β` is a ribbon walk.
pub fn random_positive_conjugator(rng: &mut Rng8, u: &GroupElement, x: AtomSet, max_ribbons: usize) -> GroupElement {
    let sys = u.system();
    let k = rng.gen_range(-3..=3);
    let x1 = tau_set(sys, x, k);
    let uk = u.tau(k);
    let alpha = (0..20)
        .map(|_| positive_in(rng, sys, x1, 5))
        .find(|a| uk.conjugate(a).is_positive())
        .unwrap_or_else(|| GroupElement::identity(sys));
    let steps = rng.gen_range(0..=max_ribbons);
    let (beta, _) = random_ribbon_walk(rng, sys, tau_set(sys, x, k), steps);
    &GroupElement::delta_power(sys, k) * &(&alpha * &beta)
}

/// A random `a·Δᵏ·ℓ` commuting with `Δ_X`: `a ∈ A_X`, `k` even unless `τ`
/// fixes `X`, and `ℓ` a ribbon loop from `X` back to `X`.
pub fn random_normalizer(rng: &mut Rng8, sys: &Arc<ArtinSystem>, x: AtomSet) -> GroupElement {
    let a = random_in_parabolic(rng, sys, x, 6);
    let k = if tau_set(sys, x, 1) == x { rng.gen_range(-3..=3) } else { 2 * rng.gen_range(-1..=1) };
    let steps = rng.gen_range(0..=4);
    let (walk, y) = random_ribbon_walk(rng, sys, x, steps);
    let back = ribbon_path(sys, y, x).unwrap();
    &(&a * &GroupElement::delta_power(sys, k)) * &(&walk * &back)
}

/// CLI invocations exercised by the CLI and determinism tests: arguments,
/// expected exit code, and the schema of the JSON output (if any).
pub const CLI_CORPUS: &[(&[&str], i32, Option<&str>)] = &[
    (&["--format", "json", "nf", "A3", "1 2 1 -3 2"], 0, Some("normal_form")),
    (&["nf", "B4", "1 2 1 2 -4 3"], 0, None),
    (&["--format", "json", "nf", "I2(5)", "1 2 1 2 1 1"], 0, Some("normal_form")),
    (&["--format", "json", "lattice", "A3", "1 2", "2 3", "--op", "join"], 0, Some("normal_form")),
    (&["lattice", "A3", "1 2", "2 1", "--op", "meet", "--side", "suffix"], 0, None),
    (&["--format", "json", "ribbon", "A3", "--x", "1", "--t", "2"], 0, Some("ribbon")),
    (&["--format", "json", "ribbon", "D4", "--x", "1,2", "--t", "3", "--side", "left"], 0, Some("ribbon")),
    (&["--format", "json", "factor-conj", "A3", "--u", "1", "--x", "2 1"], 0, Some("factor_conj")),
    (&["--format", "json", "absorb", "A3", "--decompose", "delta", "--k", "-2"], 0, Some("decomposition")),
    (&["--format", "json", "absorb", "B3", "--decompose", "sub-delta", "--x", "1,2", "--k", "3"], 0, Some("decomposition")),
    (&["--format", "json", "absorb", "A3", "--decompose", "parabolic", "--x", "1,2", "--g", "1 1 2"], 0, Some("decomposition")),
    (&["--format", "json", "absorb", "A3", "--decompose", "conjugator", "--u", "1", "--g", "2 1"], 0, Some("decomposition")),
    (&["--format", "json", "absorb", "A4", "--decompose", "normalizer", "--x", "1", "--g", "1 3 4"], 0, Some("decomposition")),
    (&["absorb", "A3", "--decompose", "delta", "--k", "3"], 0, None),
    (&["--format", "json", "absorb", "I2(5)", "--search", "1 2"], 0, Some("absorb_search")),
    (&["--format", "json", "absorb", "A3", "--search", "1 1", "--radius", "1"], 0, Some("absorb_search")),
    (&["--format", "json", "cal-ball", "A3", "--radius", "1", "--pool", "1 1"], 0, Some("cal_ball")),
    (&["--format", "dot", "cal-ball", "A2", "--radius", "2"], 0, None),
    (&["cal-ball", "B3", "--radius", "1", "--center", "1 2 -3"], 0, None),
    (&["--format", "json", "growth", "A3", "--horizon", "8", "--mode", "monoid"], 0, Some("growth")),
    (&["growth", "F4", "--horizon", "5"], 0, None),
    (&["--format", "json", "freeprod", "A3", "--x", "1,2", "--g", "2 2 1 3 2"], 0, Some("freeprod")),
    (&["--format", "json", "freeprod", "A3", "--x", "1,2", "--g", "1 2 3 1 2 1"], 0, Some("freeprod")),
    (&["--format", "json", "constants"], 0, Some("constants")),
    (&["constants"], 0, None),
    (&["--format", "json", "nf", "A3", "1 5"], 1, Some("error")),
    (&["--format", "json", "nf", "Z7", "1"], 1, Some("error")),
    (&["--format", "json", "absorb", "A2", "--decompose", "delta"], 1, Some("error")),
    (&["--format", "json", "ribbon", "A3", "--x", "1", "--t", "1"], 1, Some("error")),
    (&["--format", "dot", "nf", "A3", "1"], 1, None),
    (&["nf", "A3", "1 x"], 1, None),
    (&["nf"], 2, None),
    (&["frobnicate"], 2, None),
];

/// A validator for one of the bundled schemas, with the others registered
/// so relative references resolve.
pub fn schema_validator(name: &str) -> jsonschema::Validator {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas");
    let load = |file: &str| -> serde_json::Value {
        serde_json::from_str(&std::fs::read_to_string(dir.join(file)).unwrap()).unwrap()
    };
    let mut opts = jsonschema::options();
    for entry in std::fs::read_dir(&dir).unwrap() {
        let file = entry.unwrap().file_name().into_string().unwrap();
        opts.with_resource(format!("json-schema:///{file}"), jsonschema::Resource::from_contents(load(&file)).unwrap());
    }
    opts.build(&load(&format!("{name}.json"))).unwrap()
}
