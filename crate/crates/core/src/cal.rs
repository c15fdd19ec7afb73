//! The additional length graph: vertices are the cosets `g⟨Δ⟩`, joined when
//! they differ by a proper simple or by an absorbable element.
//!
//! Absorbability is only semi-decidable in rank ≥ 3, so absorbable edges come
//! from an explicit pool of certified elements; balls built here are subgraphs
//! and their distances are upper bounds.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::absorbable::{AbsorbableDecomposition, AbsorptionCertificate};
use crate::coxeter::{system, ArtinSystem};
use crate::error::{precondition, GarsideError, Result};
use crate::garside::{GroupElement, NormalFormJson};

/// A coset `g⟨Δ⟩`, stored as its representative with inf 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CalVertex {
    rep: GroupElement,
}

impl CalVertex {
    pub fn rep(&self) -> &GroupElement {
        &self.rep
    }

    pub fn trivial(sys: &Arc<ArtinSystem>) -> Self {
        CalVertex { rep: GroupElement::identity(sys) }
    }
}

/// `g·Δ^{-inf(g)}`.
pub fn vertex_of(g: &GroupElement) -> CalVertex {
    CalVertex { rep: g.mul_delta_power(-g.inf()) }
}

/// Left action of the group on vertices.
pub fn act(g: &GroupElement, v: &CalVertex) -> CalVertex {
    vertex_of(&(g * &v.rep))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Simple,
    Absorbable,
}

/// `rep(from) · label ∈ to`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CalEdge {
    pub from: CalVertex,
    pub to: CalVertex,
    pub kind: EdgeKind,
    pub label: GroupElement,
    /// Present exactly for absorbable edges.
    pub certificate: Option<AbsorptionCertificate>,
}

impl CalEdge {
    /// Endpoint relation and, for absorbable edges, the certificate.
    pub fn verify(&self) -> bool {
        if vertex_of(&(&self.from.rep * &self.label)) != self.to {
            return false;
        }
        match (self.kind, &self.certificate) {
            (EdgeKind::Simple, None) => is_proper_simple(&self.label),
            (EdgeKind::Absorbable, Some(c)) => c.absorbed == self.label && c.verify(),
            _ => false,
        }
    }
}

fn is_proper_simple(g: &GroupElement) -> bool {
    g.inf() == 0 && g.canonical_length() == 1
}

/// Certified absorbable elements used as extra edge labels.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AbsorbablePool {
    certificates: Vec<AbsorptionCertificate>,
}

impl AbsorbablePool {
    pub fn new(certificates: Vec<AbsorptionCertificate>) -> Result<Self> {
        for c in &certificates {
            if !c.verify() {
                return Err(GarsideError::CertificateFailed(format!("pool element {} is not certified", c.absorbed)));
            }
        }
        Ok(AbsorbablePool { certificates })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Pool elements closed under inversion and `τ`, deduplicated, in
    /// canonical order. The `τ`-closure makes the neighbors of `gΔ^ℤ`
    /// independent of the representative: `gΔᵏ·y = g·τ^{-k}(y)·Δᵏ`.
    pub(crate) fn closed(&self) -> Vec<AbsorptionCertificate> {
        let mut all: BTreeMap<GroupElement, AbsorptionCertificate> = BTreeMap::new();
        for c in &self.certificates {
            for d in [c.clone(), c.inverse()] {
                let shifted = AbsorptionCertificate::new(&d.absorbed.tau(1), &d.absorber.tau(1))
                    .expect("τ preserves inf and sup");
                all.entry(shifted.absorbed.clone()).or_insert(shifted);
                all.entry(d.absorbed.clone()).or_insert(d);
            }
        }
        all.into_values().collect()
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        self.certificates.iter().map(|c| c.absorbed.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.certificates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.certificates.is_empty()
    }
}

fn proper_simples(sys: &Arc<ArtinSystem>) -> Vec<GroupElement> {
    let w0 = sys.longest_element().clone();
    sys.enumerate(sys.all_atoms(), usize::MAX)
        .expect("unbounded enumeration")
        .into_iter()
        .filter(|w| !w.is_identity() && *w != w0)
        .map(|w| GroupElement::from_parts(sys, 0, vec![w]))
        .collect()
}

fn neighbors_with(v: &CalVertex, simples: &[GroupElement], pool: &[AbsorptionCertificate]) -> Vec<CalEdge> {
    let mut seen: HashSet<CalVertex> = HashSet::from([v.clone()]);
    let mut out = Vec::new();
    for m in simples {
        let to = vertex_of(&(&v.rep * m));
        if seen.insert(to.clone()) {
            out.push(CalEdge { from: v.clone(), to, kind: EdgeKind::Simple, label: m.clone(), certificate: None });
        }
    }
    for c in pool {
        let to = vertex_of(&(&v.rep * &c.absorbed));
        if seen.insert(to.clone()) {
            out.push(CalEdge {
                from: v.clone(),
                to,
                kind: EdgeKind::Absorbable,
                label: c.absorbed.clone(),
                certificate: Some(c.clone()),
            });
        }
    }
    out
}

/// Edges to all distinct neighbors of `v`: right multiplication by every
/// proper simple, then by pool elements, their inverses and `τ`-images. Simple edges win
/// when both reach the same vertex.
pub fn neighbors(v: &CalVertex, pool: &AbsorbablePool) -> Vec<CalEdge> {
    neighbors_with(v, &proper_simples(v.rep.system()), &pool.closed())
}

/// A ball around a vertex, with edges indexed into `vertices`.
#[derive(Clone, Debug)]
pub struct CalBall {
    pub system: Arc<ArtinSystem>,
    pub center: CalVertex,
    pub radius: usize,
    /// Sorted by `(distance, rep)`; the center comes first.
    pub vertices: Vec<CalVertex>,
    pub distances: Vec<usize>,
    pub edges: Vec<BallEdge>,
    pub pool: Vec<GroupElement>,
    /// Set when the vertex budget stopped the search early.
    pub truncated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallEdge {
    pub from: usize,
    pub to: usize,
    pub kind: EdgeKind,
    pub label: GroupElement,
    pub certificate: Option<AbsorptionCertificate>,
}

/// Breadth-first ball of the given radius. Edges are those explored from
/// vertices at distance `< radius`, one per unordered pair.
pub fn ball(center: &CalVertex, radius: usize, pool: &AbsorbablePool, budget: usize) -> CalBall {
    let sys = center.rep.system().clone();
    let simples = proper_simples(&sys);
    let closed = pool.closed();

    let mut dist: HashMap<CalVertex, usize> = HashMap::from([(center.clone(), 0)]);
    let mut layers: Vec<Vec<CalVertex>> = vec![vec![center.clone()]];
    let mut raw_edges: Vec<CalEdge> = Vec::new();
    let mut truncated = false;
    'outer: for d in 0..radius {
        let mut next = Vec::new();
        for v in &layers[d] {
            for e in neighbors_with(v, &simples, &closed) {
                if !dist.contains_key(&e.to) {
                    if dist.len() >= budget {
                        truncated = true;
                        break 'outer;
                    }
                    dist.insert(e.to.clone(), d + 1);
                    next.push(e.to.clone());
                }
                raw_edges.push(e);
            }
        }
        next.sort();
        layers.push(next);
    }

    let mut vertices: Vec<CalVertex> = dist.keys().cloned().collect();
    vertices.sort_by(|a, b| (dist[a], a).cmp(&(dist[b], b)));
    let index: HashMap<&CalVertex, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut pairs: HashSet<(usize, usize)> = HashSet::new();
    let mut edges = Vec::new();
    for e in raw_edges {
        let (Some(&i), Some(&j)) = (index.get(&e.from), index.get(&e.to)) else { continue };
        if pairs.insert((i.min(j), i.max(j))) {
            edges.push(BallEdge { from: i, to: j, kind: e.kind, label: e.label, certificate: e.certificate });
        }
    }
    edges.sort_by(|a, b| (a.from, a.to, a.kind).cmp(&(b.from, b.to, b.kind)));
    let distances = vertices.iter().map(|v| dist[v]).collect();
    CalBall {
        system: sys,
        center: center.clone(),
        radius,
        vertices,
        distances,
        edges,
        pool: pool.elements(),
        truncated,
    }
}

#[derive(Serialize, Deserialize)]
struct BallJson {
    system: String,
    center: NormalFormJson,
    radius: usize,
    truncated: bool,
    pool: Vec<NormalFormJson>,
    vertices: Vec<VertexJson>,
    edges: Vec<EdgeJson>,
}

#[derive(Serialize, Deserialize)]
struct VertexJson {
    rep: NormalFormJson,
    distance: usize,
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    from: usize,
    to: usize,
    kind: EdgeKind,
    label: NormalFormJson,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    absorber: Option<NormalFormJson>,
}

fn element(sys: &Arc<ArtinSystem>, j: &NormalFormJson) -> Result<GroupElement> {
    GroupElement::from_spelling(sys, j.inf, &j.factors)
}

impl CalBall {
    pub fn to_json_value(&self) -> serde_json::Value {
        let j = BallJson {
            system: self.system.name(),
            center: self.center.rep.to_json(),
            radius: self.radius,
            truncated: self.truncated,
            pool: self.pool.iter().map(|g| g.to_json()).collect(),
            vertices: self
                .vertices
                .iter()
                .zip(&self.distances)
                .map(|(v, &distance)| VertexJson { rep: v.rep.to_json(), distance })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeJson {
                    from: e.from,
                    to: e.to,
                    kind: e.kind,
                    label: e.label.to_json(),
                    absorber: e.certificate.as_ref().map(|c| c.absorber.to_json()),
                })
                .collect(),
        };
        serde_json::to_value(j).expect("ball serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("ball serializes")
    }

    /// Parses an exported ball, re-verifying every edge.
    pub fn from_json(text: &str) -> Result<Self> {
        let j: BallJson = serde_json::from_str(text).map_err(|e| GarsideError::MalformedWord(e.to_string()))?;
        let sys = system(&j.system)?;
        let vertices = j
            .vertices
            .iter()
            .map(|v| element(&sys, &v.rep).map(|g| vertex_of(&g)))
            .collect::<Result<Vec<_>>>()?;
        let mut edges = Vec::new();
        for e in &j.edges {
            if e.from >= vertices.len() || e.to >= vertices.len() {
                return precondition("edge endpoint out of range");
            }
            let label = element(&sys, &e.label)?;
            let certificate = match &e.absorber {
                Some(a) => Some(AbsorptionCertificate::new(&label, &element(&sys, a)?)?),
                None => None,
            };
            let edge = BallEdge { from: e.from, to: e.to, kind: e.kind, label, certificate };
            let ball_edge = CalEdge {
                from: vertices[edge.from].clone(),
                to: vertices[edge.to].clone(),
                kind: edge.kind,
                label: edge.label.clone(),
                certificate: edge.certificate.clone(),
            };
            if !ball_edge.verify() {
                return Err(GarsideError::CertificateFailed(format!("edge {} -> {} does not verify", e.from, e.to)));
            }
            edges.push(edge);
        }
        Ok(CalBall {
            center: vertex_of(&element(&sys, &j.center)?),
            radius: j.radius,
            distances: j.vertices.iter().map(|v| v.distance).collect(),
            vertices,
            edges,
            pool: j.pool.iter().map(|p| element(&sys, p)).collect::<Result<_>>()?,
            truncated: j.truncated,
            system: sys,
        })
    }

    /// Undirected DOT graph; absorbable edges are dashed.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph cal {\n");
        let _ = writeln!(out, "  label=\"{} ball of radius {}\";", self.system.name(), self.radius);
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", v.rep.render());
        }
        for e in &self.edges {
            let style = match e.kind {
                EdgeKind::Simple => "solid",
                EdgeKind::Absorbable => "dashed",
            };
            let kind = serde_json::to_value(e.kind).expect("kind serializes");
            let _ = writeln!(
                out,
                "  n{} -- n{} [label=\"{}\", kind={}, style={style}];",
                e.from,
                e.to,
                e.label.render(),
                kind.as_str().unwrap_or_default()
            );
        }
        out.push_str("}\n");
        out
    }

    /// Every edge's endpoint relation and certificate.
    pub fn verify(&self) -> bool {
        self.edges.iter().all(|e| {
            CalEdge {
                from: self.vertices[e.from].clone(),
                to: self.vertices[e.to].clone(),
                kind: e.kind,
                label: e.label.clone(),
                certificate: e.certificate.clone(),
            }
            .verify()
        })
    }

    pub fn count_kind(&self, kind: EdgeKind) -> usize {
        self.edges.iter().filter(|e| e.kind == kind).count()
    }
}

/// A path description whose factors are multiplied on the right.
pub enum Via<'a> {
    Decomposition(&'a AbsorbableDecomposition),
    /// Each factor must be a proper simple.
    Simples(&'a [GroupElement]),
}

/// Turns `via` into certified edges starting at `u`.
///
/// After a prefix `w = rep(u)·f₁⋯f_{i-1} = rep·Δ^p`, the next factor `f` acts on
/// the representative as `Δ^p f Δ^{-p}`, which is again a proper simple or a
/// certified absorbable element.
pub fn certified_chain(u: &CalVertex, via: Via<'_>) -> Result<Vec<CalEdge>> {
    let steps: Vec<(GroupElement, Option<AbsorptionCertificate>)> = match via {
        Via::Decomposition(d) => {
            d.check()?;
            d.factors.iter().cloned().zip(d.certificates.iter().cloned().map(Some)).collect()
        }
        Via::Simples(s) => {
            if let Some(bad) = s.iter().find(|m| !is_proper_simple(m)) {
                return precondition(format!("{bad} is not a proper simple"));
            }
            s.iter().cloned().map(|m| (m, None)).collect()
        }
    };
    let mut w = u.rep.clone();
    let mut edges = Vec::new();
    for (f, cert) in steps {
        let p = w.inf();
        let from = vertex_of(&w);
        let label = f.tau(-p);
        let certificate = match cert {
            Some(c) => Some(AbsorptionCertificate::new(&c.absorbed.tau(-p), &c.absorber.tau(-p))?),
            None => None,
        };
        w = &w * &f;
        let to = vertex_of(&w);
        if to == from {
            continue;
        }
        let kind = if certificate.is_some() { EdgeKind::Absorbable } else { EdgeKind::Simple };
        let edge = CalEdge { from, to, kind, label, certificate };
        if !edge.verify() {
            return Err(GarsideError::CertificateFailed(format!("edge via {} does not verify", edge.label)));
        }
        edges.push(edge);
    }
    Ok(edges)
}

/// Number of edges of a certified chain from `u` to `v`; an upper bound on their distance.
pub fn distance_upper_bound(u: &CalVertex, v: &CalVertex, via: Via<'_>) -> Result<usize> {
    let chain = certified_chain(u, via)?;
    let end = chain.last().map(|e| &e.to).unwrap_or(u);
    if end != v {
        return precondition("the path does not connect the two vertices");
    }
    Ok(chain.len())
}
