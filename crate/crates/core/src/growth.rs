//! Growth with respect to the Garside generators.
//!
//! Normal forms of inf-0 positive elements are the paths of the
//! left-weighted automaton on proper simples, so ball sizes follow from path
//! counts and the growth rate is the automaton's spectral radius.

use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigUint;
use serde::Serialize;

use crate::atoms::AtomSet;
use crate::coxeter::{ArtinSystem, CoxeterElement};
use crate::error::{precondition, GarsideError, Result};
use crate::garside::GroupElement;

/// The left-weighted automaton on the proper simples of `A_X`.
///
/// State `t` may follow state `s` iff `s·t` is left-weighted, that is iff the
/// left descents of `t` are right descents of `s`.
pub struct NormalFormAutomaton {
    sys: Arc<ArtinSystem>,
    atoms: AtomSet,
    states: Vec<CoxeterElement>,
}

/// Spectral-radius estimate with Collatz–Wielandt bracketing.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpectralEstimate {
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
    pub iterations: usize,
}

const POWER_TOL: f64 = 1e-12;
const POWER_CAP: usize = 100_000;

impl NormalFormAutomaton {
    pub fn build(sys: &Arc<ArtinSystem>, budget: usize) -> Result<Self> {
        Self::build_parabolic(sys, sys.all_atoms(), budget)
    }

    /// Automaton of the standard parabolic `A_X`, inside the ambient system.
    pub fn build_parabolic(sys: &Arc<ArtinSystem>, atoms: AtomSet, budget: usize) -> Result<Self> {
        let w0 = sys.parabolic_longest(atoms);
        let states = sys
            .enumerate(atoms, budget)?
            .into_iter()
            .filter(|w| !w.is_identity() && *w != w0)
            .collect();
        Ok(NormalFormAutomaton { sys: sys.clone(), atoms, states })
    }

    pub fn system(&self) -> &Arc<ArtinSystem> {
        &self.sys
    }

    pub fn atoms(&self) -> AtomSet {
        self.atoms
    }

    pub fn n_states(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[CoxeterElement] {
        &self.states
    }

    pub fn is_transition(&self, from: usize, to: usize) -> bool {
        self.sys.is_left_weighted(&self.states[from], &self.states[to])
    }

    pub fn successors(&self, from: usize) -> Vec<usize> {
        (0..self.states.len()).filter(|&to| self.is_transition(from, to)).collect()
    }

    /// Applies `v ↦ vM`: entry `t` becomes the sum of `v(s)` over `s → t`.
    fn step<T: Clone + std::ops::AddAssign + Default>(&self, v: &[T]) -> Vec<T>
    where
        for<'a> T: std::ops::AddAssign<&'a T>,
    {
        // group the sum by right-descent set, then read it off by left-descent set
        let mut by_right: Vec<(AtomSet, T)> = Vec::new();
        for (s, x) in self.states.iter().zip(v) {
            let r = s.right_descents();
            match by_right.iter_mut().find(|(m, _)| *m == r) {
                Some((_, acc)) => *acc += x,
                None => by_right.push((r, x.clone())),
            }
        }
        let mut cache: Vec<(AtomSet, T)> = Vec::new();
        self.states
            .iter()
            .map(|t| {
                let l = t.left_descents();
                if let Some((_, v)) = cache.iter().find(|(m, _)| *m == l) {
                    return v.clone();
                }
                let mut acc = T::default();
                for (r, x) in &by_right {
                    if l.is_subset(*r) {
                        acc += x;
                    }
                }
                cache.push((l, acc.clone()));
                acc
            })
            .collect()
    }

    /// `c_0, …, c_n`: the number of left-weighted state sequences of each length.
    pub fn sequence_counts(&self, n: usize) -> Vec<BigUint> {
        let mut out = vec![BigUint::from(1u32)];
        if n == 0 {
            return out;
        }
        let mut v: Vec<BigUint> = vec![BigUint::from(1u32); self.states.len()];
        out.push(BigUint::from(self.states.len()));
        for _ in 2..=n {
            v = self.step(&v);
            out.push(v.iter().sum());
        }
        out
    }

    /// Spectral radius of the transition matrix by power iteration on `M + I`
    /// from the all-ones vector.
    pub fn spectral_radius(&self) -> SpectralEstimate {
        if self.states.is_empty() {
            return SpectralEstimate { value: 1.0, lower: 1.0, upper: 1.0, iterations: 0 };
        }
        let mut v = vec![1.0f64; self.states.len()];
        let (mut lo, mut hi) = (0.0, f64::INFINITY);
        let mut iterations = 0;
        while iterations < POWER_CAP {
            iterations += 1;
            let mut w = self.step(&v);
            for (wi, vi) in w.iter_mut().zip(&v) {
                *wi += vi;
            }
            lo = f64::INFINITY;
            hi = 0.0;
            for (wi, vi) in w.iter().zip(&v) {
                let r = wi / vi;
                lo = f64::min(lo, r);
                hi = f64::max(hi, r);
            }
            let norm: f64 = w.iter().sum();
            v = w.into_iter().map(|x| x / norm).collect();
            if hi - lo <= POWER_TOL * lo {
                break;
            }
        }
        // ρ(M + I) = ρ(M) + 1 for a nonnegative matrix
        SpectralEstimate { value: (lo + hi) / 2.0 - 1.0, lower: lo - 1.0, upper: hi - 1.0, iterations }
    }

    /// All state sequences of length `r`, in lexicographic order. Fails past `budget`.
    pub fn paths(&self, r: usize, budget: usize) -> Result<Vec<Vec<usize>>> {
        let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
        for depth in 0..r {
            let mut next = Vec::new();
            for p in &layer {
                let succ: Box<dyn Iterator<Item = usize>> = if depth == 0 {
                    Box::new(0..self.states.len())
                } else {
                    Box::new(self.successors(*p.last().unwrap()).into_iter())
                };
                for t in succ {
                    if next.len() >= budget {
                        return Err(GarsideError::BudgetExceeded(budget));
                    }
                    let mut q = p.clone();
                    q.push(t);
                    next.push(q);
                }
            }
            layer = next;
        }
        Ok(layer)
    }

    /// The inf-0 element whose normal form is the given path.
    pub fn element(&self, path: &[usize]) -> GroupElement {
        GroupElement::from_parts(&self.sys, 0, path.iter().map(|&i| self.states[i].clone()).collect())
    }
}

/// Positive elements of Garside length `≤ n`: `Σ_r c_r (n − r + 1)`.
pub fn monoid_ball(counts: &[BigUint], n: usize) -> BigUint {
    (0..=n.min(counts.len() - 1)).map(|r| &counts[r] * BigUint::from(n - r + 1)).sum()
}

/// Group elements of Garside length `≤ n`.
///
/// `Δ^k s₁⋯s_r` has length `max(k+r,0) − min(k,0)`; for fixed `r ≤ n` exactly
/// `2n − r + 1` values of `k` satisfy the bound.
pub fn group_ball(counts: &[BigUint], n: usize) -> BigUint {
    (0..=n.min(counts.len() - 1)).map(|r| &counts[r] * BigUint::from(2 * n - r + 1)).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GrowthMode {
    Monoid,
    Group,
}

/// Ball counts and the spectral growth rate of a system.
#[derive(Clone, Debug, Serialize)]
pub struct GrowthReport {
    pub system: String,
    pub horizon: usize,
    pub states: usize,
    #[serde(serialize_with = "serialize_big")]
    pub monoid_ball: Vec<BigUint>,
    #[serde(serialize_with = "serialize_big")]
    pub group_ball: Vec<BigUint>,
    pub rate: SpectralEstimate,
    /// `β(n+1)/β(n)` for the selected mode, as a convergence diagnostic.
    pub ratios: Vec<f64>,
    pub mode: GrowthMode,
}

fn serialize_big<S: serde::Serializer>(v: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

fn big_ratio(a: &BigUint, b: &BigUint) -> f64 {
    // ratio of big integers without overflow: compare leading digits
    let (sa, sb) = (a.to_string(), b.to_string());
    let shift = sa.len().max(sb.len()).saturating_sub(15);
    let fa: f64 = sa[..sa.len().saturating_sub(shift).max(1)].parse().unwrap_or(0.0);
    let fb: f64 = sb[..sb.len().saturating_sub(shift).max(1)].parse().unwrap_or(1.0);
    fa / fb
}

impl GrowthReport {
    pub fn compute(sys: &Arc<ArtinSystem>, horizon: usize, mode: GrowthMode, budget: usize) -> Result<Self> {
        let aut = NormalFormAutomaton::build(sys, budget)?;
        let counts = aut.sequence_counts(horizon);
        let monoid: Vec<BigUint> = (0..=horizon).map(|n| monoid_ball(&counts, n)).collect();
        let group: Vec<BigUint> = (0..=horizon).map(|n| group_ball(&counts, n)).collect();
        let series = match mode {
            GrowthMode::Monoid => &monoid,
            GrowthMode::Group => &group,
        };
        let ratios = series.windows(2).map(|w| big_ratio(&w[1], &w[0])).collect();
        Ok(GrowthReport {
            system: sys.name(),
            horizon,
            states: aut.n_states(),
            monoid_ball: monoid,
            group_ball: group,
            rate: aut.spectral_radius(),
            ratios,
            mode,
        })
    }

    /// Aligned text table with columns `n`, `β⁺`, `β`, ratio.
    pub fn to_table(&self) -> String {
        let rows: Vec<[String; 4]> = (0..=self.horizon)
            .map(|n| {
                [
                    n.to_string(),
                    self.monoid_ball[n].to_string(),
                    self.group_ball[n].to_string(),
                    if n == 0 { "-".into() } else { format!("{:.6}", self.ratios[n - 1]) },
                ]
            })
            .collect();
        let header = ["n".to_string(), "β⁺".to_string(), "β".to_string(), "ratio".to_string()];
        let width = |i: usize| {
            rows.iter().chain(std::iter::once(&header)).map(|r| r[i].chars().count()).max().unwrap_or(1)
        };
        let widths: Vec<usize> = (0..4).map(width).collect();
        let fmt_row = |r: &[String; 4]| {
            r.iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{}{c}", " ".repeat(w - c.chars().count())))
                .collect::<Vec<_>>()
                .join("  ")
        };
        let mut out = format!("# {} growth, rate {:.12}\n", self.system, self.rate.value);
        out.push_str(&fmt_row(&header));
        out.push('\n');
        for r in &rows {
            out.push_str(&fmt_row(r));
            out.push('\n');
        }
        out
    }
}

/// Spectral growth rate; the monoid and group rates coincide.
pub fn growth_rate(sys: &Arc<ArtinSystem>, budget: usize) -> Result<f64> {
    Ok(NormalFormAutomaton::build(sys, budget)?.spectral_radius().value)
}

/// Rate of `A_X` against the rate of `A`.
#[derive(Clone, Debug, Serialize)]
pub struct ParabolicComparison {
    pub atoms: AtomSet,
    pub rate_parabolic: f64,
    pub rate_ambient: f64,
    pub strict: bool,
}

pub const STRICT_MARGIN: f64 = 1e-9;

pub fn compare_parabolic(sys: &Arc<ArtinSystem>, x: AtomSet, budget: usize) -> Result<ParabolicComparison> {
    if x == sys.all_atoms() || !x.is_subset(sys.all_atoms()) {
        return precondition(format!("{x} is not a proper subset of the atoms"));
    }
    let rate_parabolic = NormalFormAutomaton::build_parabolic(sys, x, budget)?.spectral_radius().value;
    let rate_ambient = NormalFormAutomaton::build(sys, budget)?.spectral_radius().value;
    Ok(ParabolicComparison { atoms: x, rate_parabolic, rate_ambient, strict: rate_parabolic < rate_ambient - STRICT_MARGIN })
}

/// `γ`, the positive root of `1 − αx − x^k`, with the bound `1/γ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FreeProductBound {
    pub alpha: f64,
    pub k: u32,
    pub gamma: f64,
    pub bound: f64,
    pub residual: f64,
}

fn root_poly(alpha: f64, k: u32, x: f64) -> f64 {
    1.0 - alpha * x - x.powi(k as i32)
}

pub fn free_product_bound(alpha: f64, k: u32) -> Result<FreeProductBound> {
    if !(alpha >= 1.0) || k == 0 {
        return precondition("need alpha ≥ 1 and k ≥ 1");
    }
    let (gamma, bound) = if k == 1 {
        // linear case: γ = 1/(α+1) exactly
        (1.0 / (alpha + 1.0), alpha + 1.0)
    } else {
        // f is decreasing on (0, 1/α], f(0) = 1 > 0 > f(1/α)
        let (mut lo, mut hi) = (0.0f64, 1.0 / alpha);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if root_poly(alpha, k, mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-15 {
                break;
            }
        }
        let g = 0.5 * (lo + hi);
        (g, 1.0 / g)
    };
    Ok(FreeProductBound { alpha, k, gamma, bound, residual: root_poly(alpha, k, gamma).abs() })
}

/// `α₁ = 1`, `α_{i+1} = 1/γ_i` with `γ_i` the root of `1 − α_i x − x^k`.
pub fn diverging_sequence(k: u32, steps: usize) -> Result<Vec<f64>> {
    if steps == 0 {
        return precondition("steps must be positive");
    }
    let mut out = vec![1.0];
    while out.len() < steps {
        let next = free_product_bound(*out.last().unwrap(), k)?.bound;
        out.push(next);
    }
    Ok(out)
}

/// Generating set for the breadth-first oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Generators {
    Atoms,
    Garside,
}

/// Ball sizes `0..=n` by breadth-first search over normal forms.
pub fn bfs_oracle(
    sys: &Arc<ArtinSystem>,
    generators: Generators,
    mode: GrowthMode,
    n: usize,
    budget: usize,
) -> Result<Vec<u64>> {
    let mut gens: Vec<GroupElement> = match generators {
        Generators::Atoms => (0..sys.rank()).map(|a| GroupElement::atom(sys, a, false)).collect(),
        Generators::Garside => sys
            .enumerate(sys.all_atoms(), budget)?
            .into_iter()
            .filter(|w| !w.is_identity())
            .map(|w| GroupElement::from_parts(sys, 0, vec![w]))
            .collect(),
    };
    if mode == GrowthMode::Group {
        let inv: Vec<GroupElement> = gens.iter().map(|g| g.inverse()).collect();
        gens.extend(inv);
    }
    let id = GroupElement::identity(sys);
    let mut seen: HashSet<GroupElement> = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    let mut out = vec![1u64];
    for _ in 0..n {
        let mut next = Vec::new();
        for g in &frontier {
            for s in &gens {
                let h = g * s;
                if !seen.contains(&h) {
                    seen.insert(h.clone());
                    if seen.len() > budget {
                        return Err(GarsideError::BudgetExceeded(budget));
                    }
                    next.push(h);
                }
            }
        }
        out.push(seen.len() as u64);
        frontier = next;
    }
    Ok(out)
}
