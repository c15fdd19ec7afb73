//! The Garside structure of a spherical Artin–Tits group.
//!
//! Simple elements are carried by elements of the finite Coxeter group.
//! A group element is stored in left normal form `Δ^k s₁⋯s_r`, which makes
//! equality a plain structural comparison.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Mul;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::atoms::AtomSet;
use crate::coxeter::{ArtinSystem, CoxeterElement};
use crate::error::{GarsideError, Result};

/// Prefix (left) or suffix (right) divisibility.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Order {
    Prefix,
    Suffix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeOp {
    Meet,
    Join,
}

/// Parses whitespace-separated nonzero integers; `-i` denotes the inverse of atom `i`.
pub fn parse_word(text: &str) -> Result<Vec<i64>> {
    text.split_whitespace()
        .map(|tok| {
            let v: i64 = tok
                .parse()
                .map_err(|_| GarsideError::MalformedWord(format!("`{tok}` is not an integer")))?;
            if v == 0 {
                return Err(GarsideError::InvalidAtom(0));
            }
            Ok(v)
        })
        .collect()
}

/// Operations on simple elements (carriers in `W`).
impl ArtinSystem {
    /// `a·b` is left-weighted iff every atomic prefix of `b` is an atomic suffix of `a`.
    pub fn is_left_weighted(&self, a: &CoxeterElement, b: &CoxeterElement) -> bool {
        b.left_descents().is_subset(a.right_descents())
    }

    /// `a·b` is right-weighted iff every atomic suffix of `a` is an atomic prefix of `b`.
    pub fn is_right_weighted(&self, a: &CoxeterElement, b: &CoxeterElement) -> bool {
        a.right_descents().is_subset(b.left_descents())
    }

    /// Left normal form of the product of two simples: returns `(a', b')`
    /// with `a'b' = ab`, `a' = ab ∧ Δ`.
    pub fn normalize_pair(&self, a: &CoxeterElement, b: &CoxeterElement) -> (CoxeterElement, CoxeterElement) {
        let mut a = a.clone();
        let mut b = b.clone();
        while let Some(t) = b.left_descents().difference(a.right_descents()).first() {
            a = self.mul(&a, self.generator(t));
            b = self.mul(self.generator(t), &b);
        }
        (a, b)
    }

    /// `τ(s) = Δ⁻¹sΔ`, carried by `w₀ s w₀`.
    pub fn tau_simple(&self, s: &CoxeterElement) -> CoxeterElement {
        let w0 = self.longest_element();
        self.mul(&self.mul(w0, s), w0)
    }

    /// Right complement `∂(s) = s⁻¹Δ`.
    pub fn right_complement(&self, s: &CoxeterElement) -> CoxeterElement {
        self.mul(&self.inv(s), self.longest_element())
    }

    /// Left complement `Δs⁻¹`.
    pub fn left_complement(&self, s: &CoxeterElement) -> CoxeterElement {
        self.mul(self.longest_element(), &self.inv(s))
    }

    /// Whether `a ≼ b` (prefix) or `b ≽ a` (suffix) among simples.
    pub fn simple_divides(&self, a: &CoxeterElement, b: &CoxeterElement, order: Order) -> bool {
        match order {
            Order::Prefix => self.mul(&self.inv(a), b).length() + a.length() == b.length(),
            Order::Suffix => self.mul(b, &self.inv(a)).length() + a.length() == b.length(),
        }
    }

    /// Greedy gcd of two simples in the chosen order.
    fn simple_meet(&self, a: &CoxeterElement, b: &CoxeterElement, order: Order) -> CoxeterElement {
        let mut c = self.identity();
        let (mut ra, mut rb) = (a.clone(), b.clone());
        loop {
            let (da, db) = match order {
                Order::Prefix => (ra.left_descents(), rb.left_descents()),
                Order::Suffix => (ra.right_descents(), rb.right_descents()),
            };
            let Some(t) = da.intersection(db).first() else {
                return c;
            };
            let g = self.generator(t);
            match order {
                Order::Prefix => {
                    c = self.mul(&c, g);
                    ra = self.mul(g, &ra);
                    rb = self.mul(g, &rb);
                }
                Order::Suffix => {
                    c = self.mul(g, &c);
                    ra = self.mul(&ra, g);
                    rb = self.mul(&rb, g);
                }
            }
        }
    }

    /// Meet or join of two simples; joins are computed through complement duality.
    pub fn simple_lattice(&self, a: &CoxeterElement, b: &CoxeterElement, op: LatticeOp, order: Order) -> CoxeterElement {
        match (op, order) {
            (LatticeOp::Meet, o) => self.simple_meet(a, b, o),
            (LatticeOp::Join, Order::Prefix) => {
                // a ≼ c iff ∂(c) is a suffix of ∂(a)
                let m = self.simple_meet(&self.right_complement(a), &self.right_complement(b), Order::Suffix);
                self.left_complement(&m)
            }
            (LatticeOp::Join, Order::Suffix) => {
                let m = self.simple_meet(&self.left_complement(a), &self.left_complement(b), Order::Prefix);
                self.right_complement(&m)
            }
        }
    }

    /// Canonical spelling of a simple as 1-based atoms.
    pub fn spell(&self, s: &CoxeterElement) -> Vec<usize> {
        self.reduced_word(s).into_iter().map(|a| a + 1).collect()
    }

    /// Letters occurring in any reduced word of `s`.
    pub fn simple_support(&self, s: &CoxeterElement) -> AtomSet {
        AtomSet::from_indices(self.reduced_word(s))
    }
}

/// An element `Δ^inf · s₁⋯s_r` in left normal form (no factor equals 1 or Δ).
#[derive(Clone)]
pub struct GroupElement {
    sys: Arc<ArtinSystem>,
    inf: i64,
    factors: Vec<CoxeterElement>,
}

impl GroupElement {
    pub fn identity(sys: &Arc<ArtinSystem>) -> Self {
        GroupElement { sys: sys.clone(), inf: 0, factors: Vec::new() }
    }

    pub fn delta_power(sys: &Arc<ArtinSystem>, k: i64) -> Self {
        GroupElement { sys: sys.clone(), inf: k, factors: Vec::new() }
    }

    /// The atom with 0-based index `a`, or its inverse.
    pub fn atom(sys: &Arc<ArtinSystem>, a: usize, inverse: bool) -> Self {
        let g = Self::from_simple(sys, sys.generator(a).clone());
        if inverse {
            g.inverse()
        } else {
            g
        }
    }

    pub fn from_simple(sys: &Arc<ArtinSystem>, s: CoxeterElement) -> Self {
        Self::from_parts(sys, 0, vec![s])
    }

    /// Normalizes `Δ^k` times an arbitrary sequence of simples.
    pub fn from_parts(sys: &Arc<ArtinSystem>, k: i64, simples: Vec<CoxeterElement>) -> Self {
        let mut g = Self::delta_power(sys, k);
        for s in simples {
            g.push_simple(s);
        }
        g
    }

    /// Element represented by a signed atom word (1-based letters).
    pub fn from_word(sys: &Arc<ArtinSystem>, word: &[i64]) -> Result<Self> {
        let rank = sys.rank() as i64;
        let mut g = Self::identity(sys);
        for &l in word {
            if l == 0 || l.abs() > rank {
                return Err(GarsideError::InvalidAtom(l));
            }
            let a = (l.unsigned_abs() - 1) as usize;
            if l > 0 {
                g.push_simple(sys.generator(a).clone());
            } else {
                // σ⁻¹ = Δ⁻¹ · (Δσ⁻¹)
                g = g.mul_delta_power(-1);
                g.push_simple(sys.left_complement(sys.generator(a)));
            }
        }
        Ok(g)
    }

    pub fn parse(sys: &Arc<ArtinSystem>, text: &str) -> Result<Self> {
        Self::from_word(sys, &parse_word(text)?)
    }

    /// Rebuilds an element from `inf` and 1-based spellings of its factors.
    pub fn from_spelling(sys: &Arc<ArtinSystem>, inf: i64, factors: &[Vec<usize>]) -> Result<Self> {
        let mut simples = Vec::with_capacity(factors.len());
        for f in factors {
            let mut w = sys.identity();
            for &l in f {
                if l == 0 || l > sys.rank() {
                    return Err(GarsideError::InvalidAtom(l as i64));
                }
                w = sys.mul(&w, sys.generator(l - 1));
            }
            if w.length() != f.len() {
                return Err(GarsideError::MalformedWord(format!("{f:?} is not a simple element")));
            }
            simples.push(w);
        }
        Ok(Self::from_parts(sys, inf, simples))
    }

    pub fn system(&self) -> &Arc<ArtinSystem> {
        &self.sys
    }

    pub fn inf(&self) -> i64 {
        self.inf
    }

    pub fn sup(&self) -> i64 {
        self.inf + self.factors.len() as i64
    }

    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    /// Word length over the Garside generators and their inverses.
    pub fn geodesic_length(&self) -> u64 {
        (self.sup().max(0) - self.inf.min(0)) as u64
    }

    pub fn factors(&self) -> &[CoxeterElement] {
        &self.factors
    }

    pub fn is_identity(&self) -> bool {
        self.inf == 0 && self.factors.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.inf >= 0
    }

    pub fn is_delta_power(&self) -> bool {
        self.factors.is_empty()
    }

    /// The carrier if this element is a simple (including 1 and Δ).
    pub fn as_simple(&self) -> Option<CoxeterElement> {
        match (self.inf, self.factors.len()) {
            (0, 0) => Some(self.sys.identity()),
            (0, 1) => Some(self.factors[0].clone()),
            (1, 0) => Some(self.sys.longest_element().clone()),
            _ => None,
        }
    }

    pub fn same_system(&self, other: &GroupElement) -> bool {
        Arc::ptr_eq(&self.sys, &other.sys) || self.sys.matrix() == other.sys.matrix()
    }

    fn check(&self, other: &GroupElement) -> Result<()> {
        if self.same_system(other) {
            Ok(())
        } else {
            Err(GarsideError::MixedSystems)
        }
    }

    /// Right multiplication by a simple, re-establishing left normal form
    /// with one right-to-left sweep.
    fn push_simple(&mut self, s: CoxeterElement) {
        let sys = self.sys.clone();
        let mut carry = s;
        for i in (0..self.factors.len()).rev() {
            let (a, b) = sys.normalize_pair(&self.factors[i], &carry);
            self.factors[i] = b;
            carry = a;
        }
        self.factors.insert(0, carry);
        self.tidy();
    }

    /// Moves leading Δ factors into the exponent and drops trailing identities.
    fn tidy(&mut self) {
        let n = self.sys.n_positive_roots();
        let lead = self.factors.iter().take_while(|f| f.length() == n).count();
        if lead > 0 {
            self.factors.drain(..lead);
            // Δ s = τ(s) Δ, but the Δ's were already leftmost
            self.inf += lead as i64;
        }
        while self.factors.last().is_some_and(|f| f.is_identity()) {
            self.factors.pop();
        }
        debug_assert!(self.factors.iter().all(|f| !f.is_identity()));
    }

    fn tau_factors(&self, power: i64) -> Vec<CoxeterElement> {
        if power.rem_euclid(2) == 0 {
            self.factors.clone()
        } else {
            self.factors.iter().map(|f| self.sys.tau_simple(f)).collect()
        }
    }

    /// `self · Δ^p`.
    pub fn mul_delta_power(&self, p: i64) -> Self {
        GroupElement { sys: self.sys.clone(), inf: self.inf + p, factors: self.tau_factors(p) }
    }

    pub fn multiply(&self, other: &GroupElement) -> Result<Self> {
        self.check(other)?;
        // Δ^a A · Δ^b B = Δ^{a+b} τ^b(A) B
        let mut g = GroupElement { sys: self.sys.clone(), inf: self.inf + other.inf, factors: self.tau_factors(other.inf) };
        for f in &other.factors {
            g.push_simple(f.clone());
        }
        Ok(g)
    }

    pub fn inverse(&self) -> Self {
        // (Δ^k s₁⋯s_r)⁻¹ = s_r⁻¹⋯s₁⁻¹Δ^{-k}, with s⁻¹ = Δ⁻¹·(Δs⁻¹)
        let sys = &self.sys;
        let mut g = Self::identity(sys);
        for s in self.factors.iter().rev() {
            g = g.mul_delta_power(-1);
            g.push_simple(sys.left_complement(s));
        }
        g.mul_delta_power(-self.inf)
    }

    /// `Δ^{-power} g Δ^{power}`.
    pub fn tau(&self, power: i64) -> Self {
        GroupElement { sys: self.sys.clone(), inf: self.inf, factors: self.tau_factors(power) }
    }

    /// Image under the letter-reversing anti-automorphism.
    pub fn reverse(&self) -> Self {
        // rev(Δ^k s₁⋯s_r) = rev(s_r)⋯rev(s₁) Δ^k = Δ^k τ^k(rev(s_r))⋯τ^k(rev(s₁))
        let sys = &self.sys;
        let rev: Vec<CoxeterElement> = self.factors.iter().rev().map(|s| sys.inv(s)).collect();
        let rev = if self.inf.rem_euclid(2) == 0 { rev } else { rev.iter().map(|s| sys.tau_simple(s)).collect() };
        Self::from_parts(sys, self.inf, rev)
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Self::identity(&self.sys);
        for _ in 0..n.unsigned_abs() {
            out = &out * &base;
        }
        out
    }

    /// `x⁻¹ self x`.
    pub fn conjugate(&self, x: &GroupElement) -> Self {
        &(&x.inverse() * self) * x
    }

    /// Decides `self ≼ other` (prefix) or `other ≽ self` (suffix) in the group.
    pub fn divides(&self, other: &GroupElement, order: Order) -> Result<bool> {
        self.check(other)?;
        let q = match order {
            Order::Prefix => &self.inverse() * other,
            Order::Suffix => other * &self.inverse(),
        };
        Ok(q.is_positive())
    }

    /// A representative signed word (1-based letters).
    pub fn to_word(&self) -> Vec<i64> {
        let sys = &self.sys;
        let delta: Vec<usize> = sys.spell(sys.longest_element());
        let mut w = Vec::new();
        if self.inf >= 0 {
            for _ in 0..self.inf {
                w.extend(delta.iter().map(|&a| a as i64));
            }
        } else {
            for _ in 0..-self.inf {
                w.extend(delta.iter().rev().map(|&a| -(a as i64)));
            }
        }
        for f in &self.factors {
            w.extend(sys.spell(f).into_iter().map(|a| a as i64));
        }
        w
    }

    /// 1-based spellings of the normal-form factors.
    pub fn spelling(&self) -> Vec<Vec<usize>> {
        self.factors.iter().map(|f| self.sys.spell(f)).collect()
    }

    pub fn to_json(&self) -> NormalFormJson {
        NormalFormJson { inf: self.inf, factors: self.spelling() }
    }

    /// Left normal form as text, e.g. `Δ^0 · (1)(1 2)`.
    pub fn render(&self) -> String {
        let mut s = format!("Δ^{}", self.inf);
        if !self.factors.is_empty() {
            s.push_str(" · ");
            for f in self.spelling() {
                let letters: Vec<String> = f.iter().map(|a| a.to_string()).collect();
                s.push_str(&format!("({})", letters.join(" ")));
            }
        }
        s
    }
}

/// JSON shape of a normal form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalFormJson {
    pub inf: i64,
    pub factors: Vec<Vec<usize>>,
}

impl Serialize for GroupElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.inf == other.inf && self.factors == other.factors && self.same_system(other)
    }
}

impl Eq for GroupElement {}

impl Hash for GroupElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.inf.hash(state);
        self.factors.hash(state);
    }
}

/// Canonical order: by `inf`, then canonical length, then factors.
impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.inf
            .cmp(&other.inf)
            .then_with(|| self.factors.len().cmp(&other.factors.len()))
            .then_with(|| self.factors.cmp(&other.factors))
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Product of two elements of the same system.
///
/// # Panics
/// If the operands belong to different systems; use [`GroupElement::multiply`] to get an error instead.
impl Mul for &GroupElement {
    type Output = GroupElement;

    fn mul(self, rhs: &GroupElement) -> GroupElement {
        self.multiply(rhs).expect("elements belong to different systems")
    }
}

/// Product of a list of elements (identity for an empty list).
pub fn product<'a, I: IntoIterator<Item = &'a GroupElement>>(sys: &Arc<ArtinSystem>, it: I) -> GroupElement {
    it.into_iter().fold(GroupElement::identity(sys), |acc, g| &acc * g)
}

/// The Garside element as a simple.
pub fn delta(sys: &ArtinSystem) -> CoxeterElement {
    sys.longest_element().clone()
}
