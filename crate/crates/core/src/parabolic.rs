//! Standard parabolic subgroups `A_X`, their Garside elements `Δ_X`, ribbons,
//! and the factorization of positive conjugators into a parabolic part and a
//! chain of left ribbons.

use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;

use crate::atoms::AtomSet;
use crate::coxeter::{ArtinSystem, CoxeterElement, Side};
use crate::error::{precondition, GarsideError, Result};
use crate::garside::{product, GroupElement, Order};

fn check_atoms(sys: &ArtinSystem, x: AtomSet) -> Result<()> {
    if !x.is_subset(sys.all_atoms()) {
        let bad = x.difference(sys.all_atoms()).first().unwrap_or(0);
        return Err(GarsideError::InvalidAtom(bad as i64 + 1));
    }
    Ok(())
}

/// Letters of any positive word representing `x`.
pub fn support(x: &GroupElement) -> Result<AtomSet> {
    if !x.is_positive() {
        return precondition(format!("support needs a positive element, got inf {}", x.inf()));
    }
    let sys = x.system();
    if x.inf() > 0 {
        return Ok(sys.all_atoms());
    }
    Ok(x.factors().iter().fold(AtomSet::EMPTY, |acc, f| acc.union(sys.simple_support(f))))
}

/// `Δ_X` as a simple of the ambient system.
pub fn sub_delta_simple(sys: &ArtinSystem, x: AtomSet) -> CoxeterElement {
    sys.parabolic_longest(x)
}

/// `Δ_X`, the lcm of the atoms in `X` (identity for `X = ∅`).
pub fn sub_delta(sys: &Arc<ArtinSystem>, x: AtomSet) -> Result<GroupElement> {
    check_atoms(sys, x)?;
    Ok(GroupElement::from_parts(sys, 0, vec![sub_delta_simple(sys, x)]))
}

/// `Δ_X^k` for any integer `k`.
pub fn sub_delta_power(sys: &Arc<ArtinSystem>, x: AtomSet, k: i64) -> Result<GroupElement> {
    Ok(sub_delta(sys, x)?.pow(k))
}

/// The atom permutation induced by `τ_Z` on `Z` (identity outside `Z`).
pub fn tau_sub_atoms(sys: &ArtinSystem, z: AtomSet) -> Vec<usize> {
    let w0 = sys.parabolic_longest(z);
    (0..sys.rank())
        .map(|a| {
            if z.contains(a) {
                let c = sys.mul(&sys.mul(&w0, sys.generator(a)), &w0);
                sys.as_generator(&c).expect("τ_Z permutes the atoms of Z")
            } else {
                a
            }
        })
        .collect()
}

fn map_set(perm: &[usize], x: AtomSet) -> AtomSet {
    AtomSet::from_indices(x.iter().map(|a| perm[a]))
}

/// The normal form of `g` inside `A_X`, as `(k, factors)` for `Δ_X^k s₁⋯s_l`,
/// or `None` when `g ∉ A_X`.
///
/// If `g ∈ A_X` then `Δ_X^m g` is positive for `m = |g|` (the Garside length
/// of `g` is the same in `A_X` and in `A`), and a positive element lies in
/// `A_X` exactly when its support does.
pub fn parabolic_normal_form(g: &GroupElement, x: AtomSet) -> Option<(i64, Vec<CoxeterElement>)> {
    let sys = g.system();
    if x == sys.all_atoms() {
        return Some((g.inf(), g.factors().to_vec()));
    }
    if x.is_empty() {
        return g.is_identity().then(|| (0, Vec::new()));
    }
    let m = g.geodesic_length() as usize;
    let dx = sub_delta_simple(sys, x);
    let shifted = &GroupElement::from_parts(sys, 0, vec![dx.clone(); m]) * g;
    if !shifted.is_positive() || !support(&shifted).ok()?.is_subset(x) {
        return None;
    }
    // Δ_X factors of a positive element of A_X can only form a prefix block
    let lead = shifted.factors().iter().take_while(|f| **f == dx).count();
    Some((lead as i64 - m as i64, shifted.factors()[lead..].to_vec()))
}

/// Membership in the standard parabolic subgroup `A_X`.
pub fn member(g: &GroupElement, x: AtomSet) -> bool {
    parabolic_normal_form(g, x).is_some()
}

/// `Δ_X^{-power} g Δ_X^{power}`.
pub fn tau_sub(g: &GroupElement, x: AtomSet, power: i64) -> Result<GroupElement> {
    let d = sub_delta_power(g.system(), x, power)?;
    Ok(g.conjugate(&d))
}

/// A right ribbon `r_{X,t} = Δ_{X∪t}Δ_X⁻¹` or a left ribbon `r_{t,X} = Δ_X⁻¹Δ_{X∪t}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RibbonFactor {
    pub source: AtomSet,
    /// 0-based index of `t`.
    #[serde(serialize_with = "serialize_label")]
    pub atom: usize,
    pub side: Side,
    pub target: AtomSet,
    pub value: GroupElement,
}

fn serialize_label<S: serde::Serializer>(a: &usize, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u64(*a as u64 + 1)
}

/// Builds the ribbon for `(X, t)`; the target is `τ_{X∪t}∘τ_X(X)`.
pub fn ribbon(sys: &Arc<ArtinSystem>, x: AtomSet, t: usize, side: Side) -> Result<RibbonFactor> {
    check_atoms(sys, x)?;
    if t >= sys.rank() {
        return Err(GarsideError::InvalidAtom(t as i64 + 1));
    }
    if x.contains(t) {
        return precondition(format!("atom {} already lies in {x}", t + 1));
    }
    let xt = x.with(t);
    let dx = sub_delta_simple(sys, x);
    let dxt = sub_delta_simple(sys, xt);
    let carrier = match side {
        Side::Right => sys.mul(&dxt, &dx),
        Side::Left => sys.mul(&dx, &dxt),
    };
    debug_assert_eq!(carrier.length() + dx.length(), dxt.length());
    let target = map_set(&tau_sub_atoms(sys, xt), map_set(&tau_sub_atoms(sys, x), x));
    Ok(RibbonFactor {
        source: x,
        atom: t,
        side,
        target,
        value: GroupElement::from_parts(sys, 0, vec![carrier]),
    })
}

/// A product of left ribbons `r₁⋯r_m` with matching sets `X₁, …, X_{m+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RibbonChain {
    pub factors: Vec<RibbonFactor>,
    pub sets: Vec<AtomSet>,
}

impl RibbonChain {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn value(&self, sys: &Arc<ArtinSystem>) -> GroupElement {
        product(sys, self.factors.iter().map(|r| &r.value))
    }

    /// Checks adjacency of sets and the conjugation identity `X_i r_i = r_i X_{i+1}`.
    pub fn validate(&self, sys: &Arc<ArtinSystem>) -> Result<()> {
        if self.sets.len() != self.factors.len() + 1 {
            return Err(GarsideError::CertificateFailed("chain set count mismatch".into()));
        }
        for (i, r) in self.factors.iter().enumerate() {
            if r.side != Side::Left || r.source != self.sets[i] || r.target != self.sets[i + 1] {
                return Err(GarsideError::CertificateFailed(format!("ribbon {i} does not chain")));
            }
            for a in r.source.iter() {
                let img = GroupElement::atom(sys, a, false).conjugate(&r.value);
                let ok = img.as_simple().and_then(|s| sys.as_generator(&s)).is_some_and(|b| r.target.contains(b));
                if !ok {
                    return Err(GarsideError::CertificateFailed(format!(
                        "ribbon {i} does not conjugate {} into {}",
                        r.source, r.target
                    )));
                }
            }
        }
        Ok(())
    }
}

/// How a minimal positive conjugator relates to `X = supp(u)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConjugatorKind {
    InParabolic,
    /// The left ribbon `r_{t,X}`; `atom` is 0-based.
    Ribbon { atom: usize },
}

fn conjugates_positively(u: &GroupElement, c: &GroupElement) -> bool {
    u.conjugate(c).is_positive()
}

/// A minimal nontrivial prefix `c ≼ x` with `c⁻¹uc` positive, and its type.
///
/// The positive conjugators of `u` are closed under `∧` and contain `Δ`, so
/// every minimal one is a simple prefix of `x ∧ Δ`. For each atom `t ≼ x` the
/// conjugators with prefix `t` have a least element; the shortest of these
/// (smallest atom on ties) is returned.
pub fn minimal_conjugator(u: &GroupElement, x: &GroupElement) -> Result<(GroupElement, ConjugatorKind)> {
    let sys = x.system();
    if !u.same_system(x) {
        return Err(GarsideError::MixedSystems);
    }
    let xset = support(u)?;
    if !x.is_positive() {
        return precondition("the conjugator must be positive");
    }
    if x.is_identity() {
        return precondition("the conjugator must be nontrivial");
    }
    if !conjugates_positively(u, x) {
        return precondition("x does not conjugate u to a positive element");
    }
    let head = if x.inf() > 0 { sys.longest_element().clone() } else { x.factors()[0].clone() };

    let mut best: Option<CoxeterElement> = None;
    for t in head.left_descents().iter() {
        let found = least_conjugator_above(sys, u, sys.generator(t), &head);
        if let Some(c) = found {
            if best.as_ref().is_none_or(|b| c.length() < b.length()) {
                best = Some(c);
            }
        }
    }
    let c = best.expect("x ∧ Δ always conjugates u positively");
    let kind = if sys.simple_support(&c).is_subset(xset) {
        ConjugatorKind::InParabolic
    } else {
        let dx = sub_delta_simple(sys, xset);
        let hit = sys
            .all_atoms()
            .difference(xset)
            .iter()
            .find(|&t| sys.mul(&dx, &sub_delta_simple(sys, xset.with(t))) == c);
        match hit {
            Some(t) => ConjugatorKind::Ribbon { atom: t },
            None => {
                return Err(GarsideError::CertificateFailed(
                    "minimal conjugator is neither parabolic nor a ribbon".into(),
                ))
            }
        }
    };
    Ok((GroupElement::from_parts(sys, 0, vec![c]), kind))
}

/// Smallest simple `c` with `start ≼ c ≼ head` conjugating `u` positively, by
/// breadth-first search over the interval.
fn least_conjugator_above(
    sys: &Arc<ArtinSystem>,
    u: &GroupElement,
    start: &CoxeterElement,
    head: &CoxeterElement,
) -> Option<CoxeterElement> {
    let mut layer = vec![start.clone()];
    let mut seen: HashSet<CoxeterElement> = layer.iter().cloned().collect();
    while !layer.is_empty() {
        layer.sort();
        if let Some(c) = layer
            .iter()
            .find(|c| conjugates_positively(u, &GroupElement::from_parts(sys, 0, vec![(*c).clone()])))
        {
            return Some(c.clone());
        }
        let mut next = Vec::new();
        for c in &layer {
            for a in sys.all_atoms().difference(c.right_descents()).iter() {
                let d = sys.mul(c, sys.generator(a));
                if sys.simple_divides(&d, head, Order::Prefix) && seen.insert(d.clone()) {
                    next.push(d);
                }
            }
        }
        layer = next;
    }
    None
}

/// Factors a positive conjugator `x` of `u` as `α·β` with `α ∈ A_X` and `β` an
/// `X`-ribbon-`Y` chain, `X = supp(u)` and `Y = supp(x⁻¹ux)`.
pub fn factor_conjugator(u: &GroupElement, x: &GroupElement) -> Result<(GroupElement, RibbonChain)> {
    let sys = x.system().clone();
    let xset = support(u)?;
    if !x.is_positive() {
        return precondition("the conjugator must be positive");
    }
    if !conjugates_positively(u, x) {
        return precondition("x does not conjugate u to a positive element");
    }

    // Extract minimal conjugators; type-1 pieces are transported to the left
    // through the ribbons seen so far (c_i c_{i+1} = c'_{i+1} c_i).
    let mut alpha = GroupElement::identity(&sys);
    let mut ribbons: Vec<RibbonFactor> = Vec::new();
    let mut ribbon_prefix = GroupElement::identity(&sys);
    let mut v = u.clone();
    let mut rest = x.clone();
    while !rest.is_identity() {
        let (c, kind) = minimal_conjugator(&v, &rest)?;
        match kind {
            ConjugatorKind::InParabolic => {
                let moved = &(&ribbon_prefix * &c) * &ribbon_prefix.inverse();
                alpha = &alpha * &moved;
            }
            ConjugatorKind::Ribbon { atom } => {
                let r = ribbon(&sys, support(&v)?, atom, Side::Left)?;
                debug_assert_eq!(r.value, c);
                ribbon_prefix = &ribbon_prefix * &c;
                ribbons.push(r);
            }
        }
        v = v.conjugate(&c);
        rest = &c.inverse() * &rest;
    }

    if !member(&alpha, xset) {
        return Err(GarsideError::CertificateFailed("parabolic part left A_X".into()));
    }
    let mut sets = vec![support(&u.conjugate(&alpha))?];
    for r in &ribbons {
        sets.push(r.target);
    }
    let chain = RibbonChain { factors: ribbons, sets };
    chain.validate(&sys)?;
    if &alpha * &chain.value(&sys) != *x {
        return Err(GarsideError::CertificateFailed("α·β does not recompose x".into()));
    }
    Ok((alpha, chain))
}
