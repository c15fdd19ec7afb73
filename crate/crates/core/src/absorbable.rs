//! Absorbable elements: certificates, the constructive decompositions of
//! `Δ^k`, of parabolic elements and of positive conjugators, and exact
//! classifiers for the dihedral types.
//!
//! `y` is absorbable when `inf(y) = 0` or `sup(y) = 0` and some `x` has
//! `inf(xy) = inf(x)` and `sup(xy) = sup(x)`; the pair is a certificate.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::atoms::AtomSet;
use crate::coxeter::{ArtinSystem, Family, Side};
use crate::error::{precondition, GarsideError, Result};
use crate::garside::{product, GroupElement};
use crate::growth::NormalFormAutomaton;
use crate::parabolic::{factor_conjugator, parabolic_normal_form, ribbon, sub_delta_power, support, tau_sub_atoms};

/// A witness `x` that `y` is absorbable, with the four recorded bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbsorptionCertificate {
    pub absorbed: GroupElement,
    pub absorber: GroupElement,
    /// `(inf(x), sup(x), inf(xy), sup(xy))`.
    pub recorded: [i64; 4],
}

impl AbsorptionCertificate {
    /// Records the bounds for `(y, x)` without judging them.
    pub fn new(y: &GroupElement, x: &GroupElement) -> Result<Self> {
        let xy = x.multiply(y)?;
        Ok(AbsorptionCertificate {
            absorbed: y.clone(),
            absorber: x.clone(),
            recorded: [x.inf(), x.sup(), xy.inf(), xy.sup()],
        })
    }

    /// Recomputes everything from normal forms; the recorded bounds must match.
    pub fn verify(&self) -> bool {
        verify_certificate(&self.absorbed, &self.absorber).unwrap_or(false)
            && AbsorptionCertificate::new(&self.absorbed, &self.absorber).is_ok_and(|c| c.recorded == self.recorded)
    }

    /// The certificate for `y⁻¹`: if `x` absorbs `y` then `xy` absorbs `y⁻¹`.
    pub fn inverse(&self) -> Self {
        let x = &self.absorber * &self.absorbed;
        AbsorptionCertificate::new(&self.absorbed.inverse(), &x).expect("same system")
    }
}

/// The defining check, from canonical forms only.
pub fn verify_certificate(y: &GroupElement, x: &GroupElement) -> Result<bool> {
    let xy = x.multiply(y)?;
    Ok((y.inf() == 0 || y.sup() == 0) && xy.inf() == x.inf() && xy.sup() == x.sup())
}

/// Builds a certificate and insists that it verifies.
pub fn certify(y: &GroupElement, x: &GroupElement) -> Result<AbsorptionCertificate> {
    let c = AbsorptionCertificate::new(y, x)?;
    if !verify_certificate(y, x)? {
        return Err(GarsideError::CertificateFailed(format!("{x} does not absorb {y}")));
    }
    Ok(c)
}

/// `target = factors[0] ⋯ factors[n-1]` with one certificate per factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbsorbableDecomposition {
    pub target: GroupElement,
    pub factors: Vec<GroupElement>,
    pub certificates: Vec<AbsorptionCertificate>,
    pub budget: usize,
}

#[derive(Serialize)]
struct DecompositionJson<'a> {
    target: &'a GroupElement,
    factors: &'a [GroupElement],
    absorbers: Vec<&'a GroupElement>,
    budget: usize,
}

impl Serialize for AbsorbableDecomposition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DecompositionJson {
            target: &self.target,
            factors: &self.factors,
            absorbers: self.certificates.iter().map(|c| &c.absorber).collect(),
            budget: self.budget,
        }
        .serialize(s)
    }
}

impl AbsorbableDecomposition {
    fn empty(sys: &Arc<ArtinSystem>, budget: usize) -> Self {
        AbsorbableDecomposition { target: GroupElement::identity(sys), factors: vec![], certificates: vec![], budget }
    }

    fn from_certificates(target: GroupElement, certificates: Vec<AbsorptionCertificate>, budget: usize) -> Result<Self> {
        let d = AbsorbableDecomposition {
            target,
            factors: certificates.iter().map(|c| c.absorbed.clone()).collect(),
            certificates,
            budget,
        };
        d.check()?;
        Ok(d)
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Product, budget and every certificate.
    pub fn check(&self) -> Result<()> {
        if self.factors.len() > self.budget {
            return Err(GarsideError::CertificateFailed(format!(
                "{} factors exceed the budget {}",
                self.factors.len(),
                self.budget
            )));
        }
        if self.certificates.len() != self.factors.len() {
            return Err(GarsideError::CertificateFailed("one certificate per factor required".into()));
        }
        for (f, c) in self.factors.iter().zip(&self.certificates) {
            if c.absorbed != *f || !c.verify() {
                return Err(GarsideError::CertificateFailed(format!("factor {f} is not certified")));
            }
        }
        if product(self.target.system(), &self.factors) != self.target {
            return Err(GarsideError::CertificateFailed("factors do not multiply to the target".into()));
        }
        Ok(())
    }

    pub fn verify(&self) -> bool {
        self.check().is_ok()
    }

    /// The decomposition of the inverse: factors inverted and reversed.
    pub fn inverse(&self) -> Self {
        AbsorbableDecomposition {
            target: self.target.inverse(),
            factors: self.factors.iter().rev().map(|f| f.inverse()).collect(),
            certificates: self.certificates.iter().rev().map(|c| c.inverse()).collect(),
            budget: self.budget,
        }
    }
}

fn require_commuting_pair(sys: &ArtinSystem) -> Result<()> {
    if sys.family().is_small() {
        return precondition(format!("{} has no pair of commuting atoms", sys.name()));
    }
    Ok(())
}

fn require_proper(sys: &ArtinSystem, x: AtomSet) -> Result<()> {
    if !x.is_subset(sys.all_atoms()) {
        return Err(GarsideError::InvalidAtom(x.labels().last().copied().unwrap_or(0) as i64));
    }
    if x == sys.all_atoms() {
        return precondition(format!("{x} is not a proper subset of the atoms"));
    }
    Ok(())
}

fn atom_power(sys: &Arc<ArtinSystem>, a: usize, k: i64) -> GroupElement {
    GroupElement::atom(sys, a, false).pow(k)
}

/// Lexicographically first commuting pair `i < j`.
fn first_commuting_pair(sys: &ArtinSystem) -> Option<(usize, usize)> {
    let n = sys.rank();
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| sys.matrix().commute(i, j))
}

/// `Δ^k` as at most three absorbable factors `σᵢᵏ · σⱼᵏ · σⱼ⁻ᵏσᵢ⁻ᵏΔᵏ`.
pub fn decompose_delta_power(sys: &Arc<ArtinSystem>, k: i64) -> Result<AbsorbableDecomposition> {
    require_commuting_pair(sys)?;
    if k == 0 {
        return Ok(AbsorbableDecomposition::empty(sys, 3));
    }
    if k < 0 {
        return Ok(decompose_delta_power(sys, -k)?.inverse());
    }
    let (i, j) = first_commuting_pair(sys).expect("non-dihedral types have commuting atoms");
    let a = atom_power(sys, i, k);
    let b = atom_power(sys, j, k);
    let c = &(&b.inverse() * &a.inverse()) * &GroupElement::delta_power(sys, k);
    let certs = vec![certify(&a, &b)?, certify(&b, &a)?, certify(&c, &b)?];
    AbsorbableDecomposition::from_certificates(GroupElement::delta_power(sys, k), certs, 3)
}

/// `τ_{X∪t}^{l-1}(r_{X,t}) ⋯ τ_{X∪t}(r_{X,t}) · r_{X,t}`, which absorbs positive
/// elements of `A_X` of canonical length `l`.
pub fn ribbon_absorber(sys: &Arc<ArtinSystem>, x: AtomSet, t: usize, l: usize) -> Result<GroupElement> {
    let r = ribbon(sys, x, t, Side::Right)?.value;
    let xt = x.with(t);
    let mut y = GroupElement::identity(sys);
    for i in (0..l).rev() {
        let d = sub_delta_power(sys, xt, i as i64)?;
        y = &y * &r.conjugate(&d);
    }
    Ok(y)
}

/// Atoms outside `X` adjacent to `X`, in increasing order.
fn adjacent_atoms(sys: &ArtinSystem, x: AtomSet) -> Vec<usize> {
    (0..sys.rank()).filter(|&t| !x.contains(t) && x.iter().any(|a| !sys.matrix().commute(a, t))).collect()
}

/// An atom outside `X` commuting with every atom of `X`.
fn commuting_outside(sys: &ArtinSystem, x: AtomSet) -> Option<usize> {
    (0..sys.rank()).find(|&j| !x.contains(j) && x.iter().all(|a| sys.matrix().commute(a, j)))
}

/// Certifies a positive `p ∈ A_X` of canonical length `l` with `σⱼˡ` for a
/// commuting `σⱼ`, or with a ribbon absorber for the first adjacent atom that works.
fn certify_positive_parabolic(p: &GroupElement, x: AtomSet) -> Result<AbsorptionCertificate> {
    let sys = p.system();
    let l = p.canonical_length();
    if let Some(j) = commuting_outside(sys, x) {
        return certify(p, &atom_power(sys, j, l as i64));
    }
    for t in adjacent_atoms(sys, x) {
        let y = ribbon_absorber(sys, x, t, l)?;
        if verify_certificate(p, &y)? {
            return AbsorptionCertificate::new(p, &y);
        }
    }
    Err(GarsideError::CertificateFailed(format!("no ribbon absorber for {p} in {x}")))
}

/// `Δ_X^k` as at most two absorbable factors.
pub fn decompose_sub_delta_power(sys: &Arc<ArtinSystem>, x: AtomSet, k: i64) -> Result<AbsorbableDecomposition> {
    require_commuting_pair(sys)?;
    require_proper(sys, x)?;
    if k == 0 || x.is_empty() {
        return Ok(AbsorbableDecomposition::empty(sys, 2));
    }
    if k < 0 {
        return Ok(decompose_sub_delta_power(sys, x, -k)?.inverse());
    }
    let target = sub_delta_power(sys, x, k)?;
    let m = sys.matrix();
    let certs = if let Some(j) = commuting_outside(sys, x) {
        vec![certify(&target, &atom_power(sys, j, k))?]
    } else if let Some((i, j)) = x
        .iter()
        .flat_map(|i| (0..sys.rank()).map(move |j| (i, j)))
        .find(|&(i, j)| i != j && m.commute(i, j) && !x.contains(j))
        .or_else(|| x.iter().flat_map(|i| x.iter().map(move |j| (i, j))).find(|&(i, j)| i != j && m.commute(i, j)))
    {
        let a = atom_power(sys, i, k);
        let rest = &a.inverse() * &target;
        vec![certify(&a, &atom_power(sys, j, k))?, certify(&rest, &a)?]
    } else {
        // X is a chain with no commuting pair inside and every outside atom
        // is adjacent to it; fall back on the ribbon absorber of Δ_Xᵏ itself
        vec![certify_positive_parabolic(&target, x)?]
    };
    AbsorbableDecomposition::from_certificates(target, certs, 2)
}

/// An element of a proper standard parabolic as at most three absorbable factors.
pub fn decompose_parabolic(g: &GroupElement, x: AtomSet) -> Result<AbsorbableDecomposition> {
    let sys = g.system();
    require_commuting_pair(sys)?;
    require_proper(sys, x)?;
    let Some((k, simples)) = parabolic_normal_form(g, x) else {
        return precondition(format!("{g} is not in the parabolic subgroup on {x}"));
    };
    let mut certs = decompose_sub_delta_power(sys, x, k)?.certificates;
    if !simples.is_empty() {
        let p = GroupElement::from_parts(sys, 0, simples);
        certs.push(certify_positive_parabolic(&p, x)?);
    }
    AbsorbableDecomposition::from_certificates(g.clone(), certs, 3)
}

fn map_set(perm: &[usize], x: AtomSet) -> AtomSet {
    AtomSet::from_indices(x.iter().map(|a| perm[a]))
}

/// A conjugator `x` of a positive `u` with `x⁻¹ux` positive, as at most nine
/// absorbable factors.
///
/// Writes `x = Δᵏ α β` with `α ∈ A_X` and `β` a ribbon chain of length `m`,
/// `β = Δ_X^{-m} β'` with `β' = ∏ Δ_{Xᵢ∪tᵢ} = Δ^q γ`, and regroups as
/// `Δ^{k+q} · τ^q(α) · Δ_{Y}^{-q} · Δ_{Y}^{q-m}γ` with `Y = τ^q(X)`.
pub fn decompose_positive_conjugator(u: &GroupElement, x: &GroupElement) -> Result<AbsorbableDecomposition> {
    let sys = x.system().clone();
    if !u.same_system(x) {
        return Err(GarsideError::MixedSystems);
    }
    require_commuting_pair(&sys)?;
    let xset = support(u)?;
    require_proper(&sys, xset)?;
    if xset.is_empty() {
        return precondition("u must be nontrivial");
    }
    if !u.conjugate(x).is_positive() {
        return precondition("x does not conjugate u to a positive element");
    }
    let k = x.inf();
    let p = GroupElement::from_parts(&sys, 0, x.factors().to_vec());
    let u1 = u.tau(k);
    let (alpha, chain) = factor_conjugator(&u1, &p)?;
    let x1 = chain.sets[0];
    let m = chain.len() as i64;
    let beta1 = product(&sys, &chain.factors.iter().map(|r| sub_delta_power(&sys, r.source.with(r.atom), 1)).collect::<Result<Vec<_>>>()?);
    let q = beta1.inf();
    let gamma = GroupElement::from_parts(&sys, 0, beta1.factors().to_vec());
    let y = if q.rem_euclid(2) == 0 { x1 } else { map_set(&tau_sub_atoms(&sys, sys.all_atoms()), x1) };

    let mut certs = decompose_delta_power(&sys, k + q)?.certificates;
    certs.extend(decompose_parabolic(&alpha.tau(q), y)?.certificates);
    certs.extend(decompose_sub_delta_power(&sys, y, -q)?.certificates);
    let last = &sub_delta_power(&sys, y, q - m)? * &gamma;
    if !last.is_identity() {
        certs.push(certify(&last, &sub_delta_power(&sys, y, m - q)?)?);
    }
    AbsorbableDecomposition::from_certificates(x.clone(), certs, 9)
}

/// Smallest `e ∈ {1, 2}` with `Δ_X^e` central in `A_X`.
pub fn central_exponent(sys: &ArtinSystem, x: AtomSet) -> i64 {
    let perm = tau_sub_atoms(sys, x);
    if x.iter().all(|a| perm[a] == a) {
        1
    } else {
        2
    }
}

/// An element normalizing `A_X` as at most nine absorbable factors.
pub fn decompose_normalizer(alpha: &GroupElement, x: AtomSet) -> Result<AbsorbableDecomposition> {
    let sys = alpha.system();
    require_commuting_pair(sys)?;
    require_proper(sys, x)?;
    if x.is_empty() {
        return precondition("the parabolic subgroup must be nontrivial");
    }
    let u = sub_delta_power(sys, x, central_exponent(sys, x))?;
    if u.conjugate(alpha) != u {
        return precondition(format!("{alpha} does not normalize the parabolic subgroup on {x}"));
    }
    decompose_positive_conjugator(&u, alpha)
}

/// Exact absorbability in `A1`, `A2` and `I2(m)`: the alternating positive
/// words of length `p ≤ m − 2`, their inverses, and the identity.
pub fn classify_absorbable_small(y: &GroupElement) -> Result<bool> {
    let sys = y.system();
    let m = match sys.family() {
        Family::A(1) => 2,
        Family::A(2) => 3,
        Family::I2(m) => m as usize,
        _ => return precondition(format!("{} is not a dihedral or rank-one type; use bounded search", sys.name())),
    };
    if y.is_identity() {
        return Ok(true);
    }
    let z = if y.inf() == 0 { y.clone() } else { y.inverse() };
    // every proper simple of a dihedral group is an alternating word
    Ok(z.inf() == 0 && z.canonical_length() == 1 && z.factors()[0].length() + 2 <= m)
}

/// Searches absorbers of canonical length `≤ radius` in canonical order.
/// Returns `Ok(None)` when none is found.
pub fn bounded_search(y: &GroupElement, radius: usize, budget: usize) -> Result<Option<AbsorptionCertificate>> {
    if y.inf() != 0 && y.sup() != 0 {
        return precondition(format!("{y} has neither inf 0 nor sup 0"));
    }
    let sys = y.system();
    let aut = NormalFormAutomaton::build(sys, budget)?;
    for r in 0..=radius {
        let paths = aut.paths(r, budget)?;
        let found = paths.par_iter().find_map_first(|path| {
            let x = aut.element(path);
            let xy = &x * y;
            (xy.inf() == 0 && xy.sup() == r as i64).then_some(x)
        });
        if let Some(x) = found {
            return certify(y, &x).map(Some);
        }
    }
    Ok(None)
}
