//! Bounded certification that `⟨A_X, g⟩` splits as `A_X ∗ ⟨g⟩`, the search for
//! such a `g`, and small utilities around the hyperbolicity argument.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::absorbable::decompose_normalizer;
use crate::atoms::AtomSet;
use crate::cal::{distance_upper_bound, vertex_of, CalVertex, Via};
use crate::coxeter::ArtinSystem;
use crate::error::{precondition, GarsideError, Result};
use crate::garside::GroupElement;
use crate::growth::NormalFormAutomaton;
use crate::parabolic::{member, support};

/// Constants of the hyperbolicity and free-product arguments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremConstants {
    pub delta: u32,
    pub g_len_bound: u32,
    pub orbit_bound_parabolic: u32,
    pub orbit_bound_normalizer: u32,
}

pub const CONSTANTS: TheoremConstants =
    TheoremConstants { delta: 60, g_len_bound: 12, orbit_bound_parabolic: 3, orbit_bound_normalizer: 9 };

impl TheoremConstants {
    /// `N(κ) = 4κ + 319`.
    pub fn n(&self, kappa: u64) -> u64 {
        4 * kappa + 319
    }

    /// `F(κ) = 8κ + 638`.
    pub fn f(&self, kappa: u64) -> u64 {
        8 * kappa + 638
    }

    pub fn render(&self) -> String {
        format!(
            "δ = {}\ngarside length of g ≤ {}\nN(κ) = 4κ + 319\nF(κ) = 8κ + 638\nparabolic orbit diameter ≤ {}\nnormalizer orbit diameter ≤ {}\n",
            self.delta, self.g_len_bound, self.orbit_bound_parabolic, self.orbit_bound_normalizer
        )
    }
}

/// Search depth of a bounded free-product check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FreeProductParams {
    /// Maximum number of blocks in a word.
    #[serde(rename = "L")]
    pub blocks: usize,
    /// Garside-length bound (in `A_X`) of the parabolic blocks.
    #[serde(rename = "R")]
    pub radius: usize,
    /// Bound on `|k|` in a block `g^k`.
    #[serde(rename = "E")]
    pub exponent: i64,
}

impl Default for FreeProductParams {
    fn default() -> Self {
        FreeProductParams { blocks: 4, radius: 2, exponent: 3 }
    }
}

/// One block of an alternating word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Block {
    /// A nontrivial element of `A_X`.
    T(GroupElement),
    /// A power `g^k`, `k ≠ 0`.
    G(i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreeProductCertificate {
    pub system: String,
    pub atoms: AtomSet,
    pub g: GroupElement,
    pub params: FreeProductParams,
    pub verified: bool,
    pub parabolic_elements: usize,
    pub words_checked: u64,
    /// A word evaluating to the identity, when one was found.
    pub witness: Option<Vec<Block>>,
}

impl FreeProductCertificate {
    /// Re-evaluates the witness from scratch; true when there is none.
    pub fn witness_is_trivial(&self) -> bool {
        match &self.witness {
            None => true,
            Some(w) => evaluate(&self.g, w).is_identity(),
        }
    }
}

/// Product of the blocks, computed letter by letter.
pub fn evaluate(g: &GroupElement, word: &[Block]) -> GroupElement {
    let sys = g.system();
    let mut out = GroupElement::identity(sys);
    for b in word {
        let f = match b {
            Block::T(t) => t.clone(),
            Block::G(k) => g.pow(*k),
        };
        out = GroupElement::from_word(sys, &[&out.to_word()[..], &f.to_word()[..]].concat()).expect("valid letters");
    }
    out
}

/// Nontrivial elements of `A_X` of Garside length `≤ r` in `A_X`, sorted by
/// length then normal form.
pub fn parabolic_ball(sys: &Arc<ArtinSystem>, x: AtomSet, r: usize, budget: usize) -> Result<Vec<GroupElement>> {
    let mut gens: Vec<GroupElement> = sys
        .enumerate(x, budget)?
        .into_iter()
        .filter(|w| !w.is_identity())
        .map(|w| GroupElement::from_parts(sys, 0, vec![w]))
        .collect();
    let inv: Vec<GroupElement> = gens.iter().map(|g| g.inverse()).collect();
    gens.extend(inv);
    let id = GroupElement::identity(sys);
    let mut seen: HashMap<GroupElement, usize> = HashMap::from([(id.clone(), 0)]);
    let mut frontier = vec![id];
    for d in 1..=r {
        let mut next = Vec::new();
        for h in &frontier {
            for s in &gens {
                let e = h * s;
                if !seen.contains_key(&e) {
                    if seen.len() >= budget {
                        return Err(GarsideError::BudgetExceeded(budget));
                    }
                    seen.insert(e.clone(), d);
                    next.push(e);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<(usize, GroupElement)> = seen.into_iter().filter(|(e, _)| !e.is_identity()).map(|(e, d)| (d, e)).collect();
    out.sort();
    Ok(out.into_iter().map(|(_, e)| e).collect())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Edge {
    T,
    Plus,
    Minus,
}

/// Block indices: `0..n_t` are parabolic elements, then `g^1, g^-1, g^2, …`.
struct Alphabet {
    values: Vec<GroupElement>,
    n_t: usize,
}

impl Alphabet {
    fn class(&self, i: usize) -> Edge {
        if i < self.n_t {
            Edge::T
        } else if (i - self.n_t) % 2 == 0 {
            Edge::Plus
        } else {
            Edge::Minus
        }
    }

    fn exponent(&self, i: usize) -> i64 {
        let j = (i - self.n_t) as i64;
        if j % 2 == 0 {
            j / 2 + 1
        } else {
            -(j / 2 + 1)
        }
    }

    fn may_follow(&self, a: usize, b: usize) -> bool {
        match (self.class(a), self.class(b)) {
            (Edge::T, Edge::T) => false,
            (Edge::T, _) | (_, Edge::T) => true,
            (p, q) => p == q,
        }
    }

    fn block(&self, i: usize) -> Block {
        if i < self.n_t {
            Block::T(self.values[i].clone())
        } else {
            Block::G(self.exponent(i))
        }
    }
}

/// All valid block sequences of length `m`, in lexicographic order, with values.
fn half_words(alpha: &Alphabet, m: usize, budget: usize) -> Result<Vec<(Vec<usize>, GroupElement)>> {
    let sys = alpha.values[0].system();
    let mut layer: Vec<(Vec<usize>, GroupElement)> = vec![(vec![], GroupElement::identity(sys))];
    for _ in 0..m {
        let mut next = Vec::new();
        for (seq, v) in &layer {
            for i in 0..alpha.values.len() {
                if seq.last().is_none_or(|&l| alpha.may_follow(l, i)) {
                    if next.len() >= budget {
                        return Err(GarsideError::BudgetExceeded(budget));
                    }
                    let mut s = seq.clone();
                    s.push(i);
                    next.push((s, v * &alpha.values[i]));
                }
            }
        }
        layer = next;
    }
    Ok(layer)
}

/// Checks every alternating word with at most `L` blocks for triviality.
///
/// Blocks are nontrivial `t ∈ A_X` with `|t| ≤ R` and powers `g^k` with
/// `0 < |k| ≤ E`; two `t` blocks are never adjacent, and two `g` blocks are
/// adjacent only with exponents of the same sign (an interior `t = 1`).
/// A word is split into two halves and trivial words are found by matching
/// one half against the inverse of the other; the reported witness is the
/// lexicographically smallest shortest one.
pub fn verify_free_product(
    g: &GroupElement,
    x: AtomSet,
    params: FreeProductParams,
    budget: usize,
) -> Result<FreeProductCertificate> {
    let sys = g.system().clone();
    if !x.is_subset(sys.all_atoms()) || x == sys.all_atoms() {
        return precondition(format!("{x} is not a proper subset of the atoms"));
    }
    if member(g, x) {
        return precondition(format!("{g} lies in the parabolic subgroup on {x}"));
    }
    if params.blocks == 0 || params.exponent <= 0 {
        return precondition("L and E must be positive");
    }
    let ts = parabolic_ball(&sys, x, params.radius, budget)?;
    verify_with_ball(g, x, ts, params, budget)
}

fn verify_with_ball(
    g: &GroupElement,
    x: AtomSet,
    ts: Vec<GroupElement>,
    params: FreeProductParams,
    budget: usize,
) -> Result<FreeProductCertificate> {
    let sys = g.system().clone();
    let n_t = ts.len();
    let mut values = ts;
    for e in 1..=params.exponent {
        values.push(g.pow(e));
        values.push(g.pow(-e));
    }
    let alpha = Alphabet { values, n_t };

    let max_half = params.blocks.div_ceil(2);
    let halves: Vec<Vec<(Vec<usize>, GroupElement)>> =
        (0..=max_half).map(|m| half_words(&alpha, m, budget)).collect::<Result<_>>()?;

    let mut words_checked: u64 = 0;
    let mut witness = None;
    for len in 1..=params.blocks {
        let (h, s) = (len.div_ceil(2), len / 2);
        let prefixes = &halves[h];
        let suffixes = &halves[s];
        words_checked += count_joins(&alpha, prefixes, suffixes);
        let mut by_inverse: HashMap<GroupElement, Vec<usize>> = HashMap::new();
        for (j, (_, v)) in suffixes.iter().enumerate() {
            by_inverse.entry(v.inverse()).or_default().push(j);
        }
        let found = prefixes.par_iter().find_map_first(|(pseq, pv)| {
            let candidates = by_inverse.get(pv)?;
            candidates
                .iter()
                .find(|&&j| suffixes[j].0.first().is_none_or(|&f| alpha.may_follow(*pseq.last().unwrap(), f)))
                .map(|&j| [&pseq[..], &suffixes[j].0[..]].concat())
        });
        if let Some(seq) = found {
            witness = Some(seq.iter().map(|&i| alpha.block(i)).collect::<Vec<_>>());
            break;
        }
    }
    let cert = FreeProductCertificate {
        system: sys.name(),
        atoms: x,
        g: g.clone(),
        params,
        verified: witness.is_none(),
        parabolic_elements: n_t,
        words_checked,
        witness,
    };
    if !cert.witness_is_trivial() {
        return Err(GarsideError::CertificateFailed("witness does not evaluate to the identity".into()));
    }
    Ok(cert)
}

fn count_joins(alpha: &Alphabet, prefixes: &[(Vec<usize>, GroupElement)], suffixes: &[(Vec<usize>, GroupElement)]) -> u64 {
    let tally = |it: &mut dyn Iterator<Item = Option<usize>>| {
        let mut c = [0u64; 4];
        for i in it {
            let k = match i.map(|i| alpha.class(i)) {
                None => 3,
                Some(Edge::T) => 0,
                Some(Edge::Plus) => 1,
                Some(Edge::Minus) => 2,
            };
            c[k] += 1;
        }
        c
    };
    let p = tally(&mut prefixes.iter().map(|(s, _)| s.last().copied()));
    let s = tally(&mut suffixes.iter().map(|(s, _)| s.first().copied()));
    // the empty suffix joins anything
    let ok = [[false, true, true], [true, true, false], [true, false, true]];
    let mut n = 0;
    for a in 0..3 {
        n += p[a] * s[3];
        for b in 0..3 {
            if ok[a][b] {
                n += p[a] * s[b];
            }
        }
    }
    n
}

/// The maximal proper standard parabolics `Σ ∖ {a}`.
pub fn maximal_parabolics(sys: &ArtinSystem) -> Vec<AtomSet> {
    (0..sys.rank()).map(|a| sys.all_atoms().without(a)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateReport {
    pub g: GroupElement,
    pub examined: usize,
    pub certificates: Vec<FreeProductCertificate>,
}

/// Scans positive elements by increasing Garside length, rigid ones first,
/// for a full-support `g` that passes the bounded check against every
/// maximal proper standard parabolic.
pub fn search_candidate(
    sys: &Arc<ArtinSystem>,
    len_bound: usize,
    params: FreeProductParams,
    budget: usize,
) -> Result<Option<CandidateReport>> {
    if sys.rank() == 1 {
        return Ok(None);
    }
    if sys.rank() < 3 {
        return precondition(format!("{} has rank below 3", sys.name()));
    }
    let aut = NormalFormAutomaton::build(sys, budget)?;
    let full = sys.all_atoms();
    let mut examined = 0;
    let mut order: Vec<usize> = (0..sys.rank()).collect();
    let balls = maximal_parabolics(sys)
        .into_iter()
        .map(|x| Ok((x, parabolic_ball(sys, x, params.radius, budget)?)))
        .collect::<Result<Vec<_>>>()?;
    for r in 1..=len_bound {
        let paths = aut.paths(r, budget)?;
        let mut cands: Vec<(bool, &Vec<usize>)> = paths
            .iter()
            .filter(|p| p.iter().fold(AtomSet::EMPTY, |acc, &i| acc.union(sys.simple_support(&aut.states()[i]))) == full)
            .map(|p| (!aut.is_transition(*p.last().unwrap(), p[0]), p))
            .collect();
        cands.sort_by_key(|&(nonrigid, _)| nonrigid);
        for (_, p) in cands {
            examined += 1;
            if examined > budget {
                return Err(GarsideError::BudgetExceeded(budget));
            }
            let g = aut.element(p);
            let mut certificates = Vec::new();
            // the parabolic that last rejected a candidate is tried first
            for pos in 0..order.len() {
                let (x, ts) = &balls[order[pos]];
                if member(&g, *x) {
                    break;
                }
                let c = verify_with_ball(&g, *x, ts.clone(), params, budget)?;
                if !c.verified {
                    let i = order.remove(pos);
                    order.insert(0, i);
                    break;
                }
                certificates.push((order[pos], c));
            }
            if certificates.len() == sys.rank() {
                debug_assert_eq!(support(&g)?, full);
                certificates.sort_by_key(|(i, _)| *i);
                let certificates = certificates.into_iter().map(|(_, c)| c).collect();
                return Ok(Some(CandidateReport { g, examined, certificates }));
            }
        }
    }
    Ok(None)
}

/// Evaluates the hypothesis `d(x_{n+2}, x_n) ≥ max(d(x_{n+2}, x_{n+1}), d(x_{n+1}, x_n)) + 2δ + a`
/// and the conclusion `d(x_n, x_m) ≥ a|m − n|` on a finite sequence.
pub fn delzant_check(d: &[Vec<f64>], a: f64, delta: f64) -> Result<(bool, bool)> {
    let n = d.len();
    for (i, row) in d.iter().enumerate() {
        if row.len() != n {
            return Err(GarsideError::MalformedMatrix("distance matrix is not square".into()));
        }
        if row[i] != 0.0 {
            return Err(GarsideError::MalformedMatrix("nonzero diagonal".into()));
        }
        for (j, &v) in row.iter().enumerate() {
            if !(v >= 0.0) || v != d[j][i] {
                return Err(GarsideError::MalformedMatrix("distances must be symmetric and nonnegative".into()));
            }
        }
    }
    let hypothesis = (0..n.saturating_sub(2)).all(|i| d[i + 2][i] >= d[i + 2][i + 1].max(d[i + 1][i]) + 2.0 * delta + a);
    let conclusion = (0..n).all(|i| (0..n).all(|j| d[i][j] >= a * (i as f64 - j as f64).abs()));
    Ok((hypothesis, conclusion))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitBound {
    pub power: i64,
    pub bound: usize,
}

/// Certified upper bounds on `d(v, hⁱv)` for `i = 1..=n`, `v` the trivial vertex.
pub fn elliptic_orbit_report(h: &GroupElement, x: AtomSet, n: usize) -> Result<Vec<OrbitBound>> {
    if n == 0 {
        return precondition("n must be positive");
    }
    let sys = h.system();
    let base = CalVertex::trivial(sys);
    // the normalization test runs once on h; powers inherit it
    decompose_normalizer(h, x)?;
    let mut out = Vec::new();
    for i in 1..=n as i64 {
        let g = h.pow(i);
        let v = vertex_of(&g);
        let bound = if v == base {
            0
        } else {
            let d = decompose_normalizer(&g, x)?;
            distance_upper_bound(&base, &v, Via::Decomposition(&d))?
        };
        out.push(OrbitBound { power: i, bound });
    }
    Ok(out)
}
