//! Spherical-type Coxeter systems: the classification catalog, exact root
//! systems, and the finite Coxeter group acting on its roots.
//!
//! Group elements are encoded by their action on the positive roots (a
//! signed permutation). Positive roots are produced by closing the simple
//! roots under the reflections `s_i(β)` for `β ≠ α_i`, which always yields
//! positive roots, so no sign test on ring elements is ever performed.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::Serialize;

use crate::atoms::{AtomSet, MAX_RANK};
use crate::error::{GarsideError, Result};
use crate::ring::{CycloInt, GoldenInt, RootRing};

/// Upper bound on the number of positive roots the closure will produce.
const ROOT_CAP: usize = 30_000;

/// A symmetric Coxeter matrix with `m(s,s) = 1` and `m(s,t) ≥ 2` off the diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CoxeterMatrix {
    entries: Vec<Vec<u32>>,
}

impl CoxeterMatrix {
    pub fn new(entries: Vec<Vec<u32>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(GarsideError::MalformedMatrix("empty matrix".into()));
        }
        if n > MAX_RANK {
            return Err(GarsideError::MalformedMatrix(format!("rank {n} exceeds {MAX_RANK}")));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(GarsideError::MalformedMatrix("matrix is not square".into()));
            }
            for (j, &m) in row.iter().enumerate() {
                if i == j && m != 1 {
                    return Err(GarsideError::MalformedMatrix(format!("m({0},{0}) = {m} ≠ 1", i + 1)));
                }
                if i != j && m < 2 {
                    return Err(GarsideError::MalformedMatrix(format!(
                        "m({},{}) = {m} < 2",
                        i + 1,
                        j + 1
                    )));
                }
                if entries[j][i] != m {
                    return Err(GarsideError::MalformedMatrix("matrix is not symmetric".into()));
                }
            }
        }
        Ok(CoxeterMatrix { entries })
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    /// `m(i,j)` for 0-based atom indices.
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<u32>] {
        &self.entries
    }

    pub fn commute(&self, i: usize, j: usize) -> bool {
        self.entries[i][j] == 2
    }

    /// The same matrix with atoms renamed: new atom `k` is old atom `perm[k]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.rank();
        let entries = (0..n)
            .map(|i| (0..n).map(|j| self.entries[perm[i]][perm[j]]).collect())
            .collect();
        CoxeterMatrix::new(entries)
    }

    /// Catalog matrix for a family in the conventional linear labeling.
    pub fn catalog(family: Family) -> Self {
        let n = family.rank();
        let mut e = vec![vec![2u32; n]; n];
        for (i, row) in e.iter_mut().enumerate() {
            row[i] = 1;
        }
        let mut link = |i: usize, j: usize, m: u32| {
            e[i][j] = m;
            e[j][i] = m;
        };
        match family {
            Family::A(n) => (1..n).for_each(|i| link(i - 1, i, 3)),
            Family::B(n) => {
                (1..n).for_each(|i| link(i - 1, i, 3));
                link(0, 1, 4);
            }
            Family::D(n) => {
                (1..n - 1).for_each(|i| link(i - 1, i, 3));
                link(n - 3, n - 1, 3);
            }
            Family::E6 | Family::E7 | Family::E8 => {
                (1..n - 1).for_each(|i| link(i - 1, i, 3));
                link(2, n - 1, 3);
            }
            Family::F4 => {
                link(0, 1, 3);
                link(1, 2, 4);
                link(2, 3, 3);
            }
            Family::H3 | Family::H4 => {
                (1..n).for_each(|i| link(i - 1, i, 3));
                link(0, 1, 5);
            }
            Family::I2(m) => link(0, 1, m),
        }
        CoxeterMatrix { entries: e }
    }
}

/// The ten irreducible spherical families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A(usize),
    B(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    H3,
    H4,
    I2(u32),
}

impl Family {
    pub fn rank(self) -> usize {
        match self {
            Family::A(n) | Family::B(n) | Family::D(n) => n,
            Family::E6 => 6,
            Family::E7 => 7,
            Family::E8 => 8,
            Family::F4 | Family::H4 => 4,
            Family::H3 => 3,
            Family::I2(_) => 2,
        }
    }

    /// `A1`, `A2`, or a dihedral `I2(m)`: the systems without two commuting atoms.
    pub fn is_small(self) -> bool {
        matches!(self, Family::A(1) | Family::A(2) | Family::I2(_))
    }

    /// Canonical spelling of aliases: `B2 = I2(4)`, `D3 = A3`, `I2(3) = A2`.
    fn canonical(self) -> Family {
        match self {
            Family::B(2) => Family::I2(4),
            Family::D(3) => Family::A(3),
            Family::I2(3) => Family::A(2),
            f => f,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A(n) => write!(f, "A{n}"),
            Family::B(n) => write!(f, "B{n}"),
            Family::D(n) => write!(f, "D{n}"),
            Family::E6 => write!(f, "E6"),
            Family::E7 => write!(f, "E7"),
            Family::E8 => write!(f, "E8"),
            Family::F4 => write!(f, "F4"),
            Family::H3 => write!(f, "H3"),
            Family::H4 => write!(f, "H4"),
            Family::I2(m) => write!(f, "I2({m})"),
        }
    }
}

fn parse_family(spec: &str) -> Result<Family> {
    let s = spec.trim();
    let unknown = || GarsideError::UnknownFamily(spec.to_string());
    let range = || GarsideError::RankOutOfRange(spec.to_string());
    if let Some(rest) = s.strip_prefix("I2") {
        let inner = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(unknown)?;
        let m: u32 = inner.trim().parse().map_err(|_| unknown())?;
        if m < 3 {
            return Err(range());
        }
        return Ok(Family::I2(m));
    }
    let mut chars = s.chars();
    let letter = chars.next().ok_or_else(unknown)?;
    let digits = chars.as_str();
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(unknown());
    }
    let n: usize = digits.parse().map_err(|_| range())?;
    let fam = match letter {
        'A' if (1..=MAX_RANK).contains(&n) => Family::A(n),
        'B' if (2..=MAX_RANK).contains(&n) => Family::B(n),
        'D' if (3..=MAX_RANK).contains(&n) => Family::D(n),
        'E' if n == 6 => Family::E6,
        'E' if n == 7 => Family::E7,
        'E' if n == 8 => Family::E8,
        'F' if n == 4 => Family::F4,
        'H' if n == 3 => Family::H3,
        'H' if n == 4 => Family::H4,
        'A' | 'B' | 'D' | 'E' | 'F' | 'H' => return Err(range()),
        _ => return Err(unknown()),
    };
    Ok(fam)
}

/// Identifies the family of an irreducible spherical Coxeter matrix, up to relabeling.
pub fn classify(matrix: &CoxeterMatrix) -> Result<Family> {
    let n = matrix.rank();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| j != i && matrix.get(i, j) >= 3).collect())
        .collect();

    // connectivity
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(GarsideError::Reducible);
    }

    match n {
        1 => return Ok(Family::A(1)),
        2 => {
            let m = matrix.get(0, 1);
            return Ok(Family::I2(m).canonical());
        }
        _ => {}
    }

    let edges: Vec<(usize, usize, u32)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter_map(|(i, j)| {
            let m = matrix.get(i, j);
            (m >= 3).then_some((i, j, m))
        })
        .collect();
    if edges.len() != n - 1 {
        return Err(GarsideError::NotFiniteType);
    }
    let degree: Vec<usize> = adj.iter().map(|a| a.len()).collect();
    let heavy: Vec<&(usize, usize, u32)> = edges.iter().filter(|e| e.2 >= 4).collect();
    let branch: Vec<usize> = (0..n).filter(|&v| degree[v] >= 3).collect();

    if heavy.is_empty() {
        if branch.is_empty() {
            return Ok(Family::A(n));
        }
        if branch.len() > 1 || degree[branch[0]] > 3 {
            return Err(GarsideError::NotFiniteType);
        }
        let c = branch[0];
        let mut arms: Vec<usize> = adj[c]
            .iter()
            .map(|&start| {
                let (mut prev, mut cur, mut len) = (c, start, 1);
                loop {
                    let next: Vec<usize> = adj[cur].iter().copied().filter(|&w| w != prev).collect();
                    match next.as_slice() {
                        [] => break len,
                        [w] => {
                            prev = cur;
                            cur = *w;
                            len += 1;
                        }
                        _ => unreachable!("a tree with one branch vertex"),
                    }
                }
            })
            .collect();
        arms.sort_unstable();
        return match arms.as_slice() {
            [1, 1, _] => Ok(Family::D(n).canonical()),
            [1, 2, 2] => Ok(Family::E6),
            [1, 2, 3] => Ok(Family::E7),
            [1, 2, 4] => Ok(Family::E8),
            _ => Err(GarsideError::NotFiniteType),
        };
    }

    if heavy.len() > 1 || !branch.is_empty() {
        return Err(GarsideError::NotFiniteType);
    }
    let &(i, j, m) = heavy[0];
    let at_end = degree[i] == 1 || degree[j] == 1;
    match (m, n, at_end) {
        (4, _, true) => Ok(Family::B(n)),
        (4, 4, false) => Ok(Family::F4),
        (5, 3, true) => Ok(Family::H3),
        (5, 4, true) => Ok(Family::H4),
        _ => Err(GarsideError::NotFiniteType),
    }
}

/// Root vectors in the simple-root basis, over the ring the system needs.
#[derive(Clone, Debug)]
pub enum RootCoords {
    Integer(Vec<Vec<i64>>),
    Golden(Vec<Vec<GoldenInt>>),
    Cyclotomic(Vec<Vec<CycloInt>>),
}

impl RootCoords {
    pub fn len(&self) -> usize {
        match self {
            RootCoords::Integer(v) => v.len(),
            RootCoords::Golden(v) => v.len(),
            RootCoords::Cyclotomic(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Human-readable coefficient strings, one vector per positive root.
    pub fn render(&self) -> Vec<Vec<String>> {
        fn r<T: fmt::Display>(v: &[Vec<T>]) -> Vec<Vec<String>> {
            v.iter().map(|x| x.iter().map(|c| c.to_string()).collect()).collect()
        }
        match self {
            RootCoords::Integer(v) => r(v),
            RootCoords::Golden(v) => r(v),
            RootCoords::Cyclotomic(v) => r(v),
        }
    }

    /// Floating-point coordinates, for diagnostics only.
    pub fn approx(&self) -> Vec<Vec<f64>> {
        match self {
            RootCoords::Integer(v) => v.iter().map(|x| x.iter().map(|&c| c as f64).collect()).collect(),
            RootCoords::Golden(v) => v.iter().map(|x| x.iter().map(|c| c.to_f64()).collect()).collect(),
            RootCoords::Cyclotomic(v) => v.iter().map(|x| x.iter().map(|c| c.to_f64()).collect()).collect(),
        }
    }
}

/// Positive roots plus the signed-permutation action of each simple reflection.
#[derive(Clone, Debug)]
pub struct RootSystemModel {
    pub coords: RootCoords,
    /// `action[a][b]` is the image of positive root `b` under `s_a`, encoded as
    /// `b'` for a positive root and `N + b'` for a negative root.
    action: Vec<Vec<u16>>,
    n_pos: usize,
}

impl RootSystemModel {
    pub fn n_positive(&self) -> usize {
        self.n_pos
    }

    /// Action table of simple reflection `a` on positive roots (signed indices).
    pub fn simple_action(&self, a: usize) -> &[u16] {
        &self.action[a]
    }
}

/// Closes the simple roots under reflections. `couplings[i][j]` is the
/// coefficient with `s_i(α_j) = α_j + couplings[i][j]·α_i`.
fn close_roots<R: RootRing>(couplings: &[Vec<R>], zero: &R) -> Result<(Vec<Vec<R>>, Vec<Vec<u16>>)> {
    let n = couplings.len();
    let one = zero.one_like();
    let mut roots: Vec<Vec<R>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { one.clone() } else { zero.clone() }).collect())
        .collect();
    let mut index: HashMap<Vec<R>, usize> = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();

    let reflect = |i: usize, v: &[R]| -> Vec<R> {
        // s_i(v) = v − (2 v_i − Σ_{j≠i} c_ij v_j) α_i
        let mut f = v[i].add(&v[i]);
        for (j, vj) in v.iter().enumerate() {
            if j != i {
                f = f.sub(&couplings[i][j].mul(vj));
            }
        }
        let mut out = v.to_vec();
        out[i] = out[i].sub(&f);
        out
    };

    let mut queue: VecDeque<usize> = (0..n).collect();
    while let Some(b) = queue.pop_front() {
        for i in 0..n {
            if b == i {
                continue;
            }
            let img = reflect(i, &roots[b]);
            if !index.contains_key(&img) {
                if roots.len() >= ROOT_CAP {
                    return Err(GarsideError::NotFiniteType);
                }
                index.insert(img.clone(), roots.len());
                queue.push_back(roots.len());
                roots.push(img);
            }
        }
    }

    let np = roots.len();
    let action = (0..n)
        .map(|i| {
            (0..np)
                .map(|b| if b == i { (np + i) as u16 } else { index[&reflect(i, &roots[b])] as u16 })
                .collect()
        })
        .collect();
    Ok((roots, action))
}

fn build_root_model(matrix: &CoxeterMatrix) -> Result<RootSystemModel> {
    let n = matrix.rank();
    let ms: HashSet<u32> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| matrix.get(i, j))
        .collect();

    let (coords, action) = if ms.iter().all(|m| matches!(m, 2 | 3 | 4 | 6)) {
        // crystallographic: split m = 4, 6 as (1,2), (1,3) with the larger entry below the diagonal
        let c: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match matrix.get(i, j) {
                        1 | 2 => 0,
                        3 => 1,
                        4 => if i < j { 1 } else { 2 },
                        6 => if i < j { 1 } else { 3 },
                        _ => unreachable!(),
                    })
                    .collect()
            })
            .collect();
        let (roots, action) = close_roots(&c, &0i64)?;
        (RootCoords::Integer(roots), action)
    } else if ms.iter().all(|m| matches!(m, 2 | 3 | 5)) {
        let c: Vec<Vec<GoldenInt>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match matrix.get(i, j) {
                        1 | 2 => GoldenInt::ZERO,
                        3 => GoldenInt::ONE,
                        5 => GoldenInt::PHI,
                        _ => unreachable!(),
                    })
                    .collect()
            })
            .collect();
        let (roots, action) = close_roots(&c, &GoldenInt::ZERO)?;
        (RootCoords::Golden(roots), action)
    } else if n == 2 {
        let m = matrix.get(0, 1);
        let c2 = CycloInt::two_cos_pi_over(m);
        let zero = c2.zero_like();
        let c = vec![vec![zero.clone(), c2.clone()], vec![c2, zero.clone()]];
        let (roots, action) = close_roots(&c, &zero)?;
        (RootCoords::Cyclotomic(roots), action)
    } else {
        return Err(GarsideError::NotFiniteType);
    };
    let n_pos = coords.len();
    Ok(RootSystemModel { coords, action, n_pos })
}

/// An element of the finite Coxeter group, encoded by its action on positive roots.
#[derive(Clone)]
pub struct CoxeterElement {
    images: Box<[u16]>,
    length: u32,
    left: AtomSet,
    right: AtomSet,
}

impl CoxeterElement {
    fn from_images(images: Box<[u16]>, rank: usize) -> Self {
        let n = images.len();
        let mut length = 0;
        let mut left = AtomSet::EMPTY;
        for &r in images.iter() {
            let r = r as usize;
            if r >= n {
                length += 1;
                if r - n < rank {
                    left.insert(r - n);
                }
            }
        }
        let right = AtomSet::from_indices((0..rank).filter(|&a| images[a] as usize >= n));
        CoxeterElement { images, length, left, right }
    }

    /// Number of inversions (positive roots sent negative).
    pub fn length(&self) -> usize {
        self.length as usize
    }

    pub fn left_descents(&self) -> AtomSet {
        self.left
    }

    pub fn right_descents(&self) -> AtomSet {
        self.right
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    pub fn n_roots(&self) -> usize {
        self.images.len()
    }
}

impl PartialEq for CoxeterElement {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
    }
}

impl Eq for CoxeterElement {}

impl Hash for CoxeterElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.images.hash(state);
    }
}

impl Ord for CoxeterElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.length.cmp(&other.length).then_with(|| self.images.cmp(&other.images))
    }
}

impl PartialOrd for CoxeterElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for CoxeterElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoxeterElement(len {}, L{:?}, R{:?})", self.length, self.left, self.right)
    }
}

/// Which side a descent or divisibility test acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// A validated irreducible spherical Artin–Tits system with its root model.
pub struct ArtinSystem {
    matrix: CoxeterMatrix,
    family: Family,
    roots: RootSystemModel,
    generators: Vec<CoxeterElement>,
    longest: CoxeterElement,
}

impl fmt::Debug for ArtinSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ArtinSystem")
            .field("family", &self.family)
            .field("n_positive_roots", &self.roots.n_pos)
            .finish()
    }
}

/// Parses a type string such as `A3`, `B4`, `E8` or `I2(7)`.
pub fn parse_system(spec: &str) -> Result<ArtinSystem> {
    let family = parse_family(spec)?;
    ArtinSystem::from_matrix(CoxeterMatrix::catalog(family))
}

impl ArtinSystem {
    /// Validates, classifies and builds the root model for an arbitrary labeling.
    pub fn from_matrix(matrix: CoxeterMatrix) -> Result<Self> {
        let family = classify(&matrix)?;
        let roots = build_root_model(&matrix)?;
        let rank = matrix.rank();
        let generators: Vec<CoxeterElement> = (0..rank)
            .map(|a| CoxeterElement::from_images(roots.action[a].clone().into_boxed_slice(), rank))
            .collect();
        let mut sys = ArtinSystem {
            longest: generators[0].clone(),
            matrix,
            family,
            roots,
            generators,
        };
        sys.longest = sys.parabolic_longest(AtomSet::full(rank));
        Ok(sys)
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn name(&self) -> String {
        self.family.to_string()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn all_atoms(&self) -> AtomSet {
        AtomSet::full(self.rank())
    }

    pub fn roots(&self) -> &RootSystemModel {
        &self.roots
    }

    pub fn n_positive_roots(&self) -> usize {
        self.roots.n_pos
    }

    pub fn identity(&self) -> CoxeterElement {
        let n = self.roots.n_pos;
        CoxeterElement::from_images((0..n as u16).collect(), self.rank())
    }

    pub fn generator(&self, atom: usize) -> &CoxeterElement {
        &self.generators[atom]
    }

    pub fn longest_element(&self) -> &CoxeterElement {
        &self.longest
    }

    fn check(&self, w: &CoxeterElement) -> Result<()> {
        if w.images.len() != self.roots.n_pos {
            return Err(GarsideError::MixedSystems);
        }
        Ok(())
    }

    pub fn multiply(&self, u: &CoxeterElement, v: &CoxeterElement) -> Result<CoxeterElement> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.mul(u, v))
    }

    pub fn inverse(&self, u: &CoxeterElement) -> Result<CoxeterElement> {
        self.check(u)?;
        Ok(self.inv(u))
    }

    /// `uv` without the system check.
    pub(crate) fn mul(&self, u: &CoxeterElement, v: &CoxeterElement) -> CoxeterElement {
        let n = u.images.len();
        let images: Box<[u16]> = v
            .images
            .iter()
            .map(|&r| {
                let r = r as usize;
                if r < n {
                    u.images[r]
                } else {
                    let x = u.images[r - n] as usize;
                    (if x < n { x + n } else { x - n }) as u16
                }
            })
            .collect();
        CoxeterElement::from_images(images, self.rank())
    }

    pub(crate) fn inv(&self, u: &CoxeterElement) -> CoxeterElement {
        let n = u.images.len();
        let mut images = vec![0u16; n];
        for (i, &r) in u.images.iter().enumerate() {
            let r = r as usize;
            if r < n {
                images[r] = i as u16;
            } else {
                images[r - n] = (i + n) as u16;
            }
        }
        CoxeterElement::from_images(images.into_boxed_slice(), self.rank())
    }

    /// Descent set computed by the negative-root test.
    pub fn descents(&self, w: &CoxeterElement, side: Side) -> AtomSet {
        match side {
            Side::Left => w.left,
            Side::Right => w.right,
        }
    }

    pub fn element_from_word(&self, word: &[usize]) -> CoxeterElement {
        word.iter().fold(self.identity(), |w, &a| self.mul(&w, &self.generators[a]))
    }

    /// A reduced word, extracting the smallest left descent at each step.
    pub fn reduced_word(&self, w: &CoxeterElement) -> Vec<usize> {
        let mut word = Vec::with_capacity(w.length());
        let mut cur = w.clone();
        while let Some(a) = cur.left.first() {
            word.push(a);
            cur = self.mul(&self.generators[a], &cur);
        }
        word
    }

    /// Longest element of the standard parabolic subgroup `W_X`.
    pub fn parabolic_longest(&self, x: AtomSet) -> CoxeterElement {
        let mut w = self.identity();
        while let Some(a) = x.difference(w.right).first() {
            w = self.mul(&w, &self.generators[a]);
        }
        w
    }

    /// If `w` equals a simple reflection, its atom.
    pub fn as_generator(&self, w: &CoxeterElement) -> Option<usize> {
        if w.length != 1 {
            return None;
        }
        w.left.first()
    }

    /// All elements of `W_X`, sorted by length then encoding. Fails past `budget` elements.
    pub fn enumerate(&self, x: AtomSet, budget: usize) -> Result<Vec<CoxeterElement>> {
        let mut seen: HashSet<CoxeterElement> = HashSet::new();
        let id = self.identity();
        seen.insert(id.clone());
        let mut frontier = vec![id];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for w in &frontier {
                for a in x.difference(w.right).iter() {
                    let v = self.mul(w, &self.generators[a]);
                    if seen.insert(v.clone()) {
                        if seen.len() > budget {
                            return Err(GarsideError::BudgetExceeded(budget));
                        }
                        next.push(v);
                    }
                }
            }
            frontier = next;
        }
        let mut all: Vec<CoxeterElement> = seen.into_iter().collect();
        all.sort();
        Ok(all)
    }
}

/// Convenience: an `Arc`-wrapped system.
pub fn system(spec: &str) -> Result<Arc<ArtinSystem>> {
    parse_system(spec).map(Arc::new)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(s: &str) -> ArtinSystem {
        parse_system(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        let a3 = sys("A3");
        assert_eq!(a3.rank(), 3);
        assert_eq!(a3.matrix().get(0, 1), 3);
        assert_eq!(a3.matrix().get(1, 2), 3);
        assert_eq!(a3.matrix().get(0, 2), 2);

        let a1 = sys("A1");
        assert_eq!(a1.rank(), 1);
        assert_eq!(a1.n_positive_roots(), 1);

        let i7 = sys("I2(7)");
        assert_eq!(i7.rank(), 2);
        assert_eq!(i7.matrix().get(0, 1), 7);
        assert_eq!(i7.n_positive_roots(), 7);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_system("Q3"), Err(GarsideError::UnknownFamily(_))));
        assert!(matches!(parse_system("E9"), Err(GarsideError::RankOutOfRange(_))));
        assert!(matches!(parse_system("B1"), Err(GarsideError::RankOutOfRange(_))));
        assert!(matches!(parse_system("I2(2)"), Err(GarsideError::RankOutOfRange(_))));
        assert!(matches!(parse_system("A0"), Err(GarsideError::RankOutOfRange(_))));
        assert!(matches!(parse_system("F5"), Err(GarsideError::RankOutOfRange(_))));
        assert!(matches!(parse_system(""), Err(GarsideError::UnknownFamily(_))));
    }

    #[test]
    fn aliases_resolve() {
        assert_eq!(sys("B2").family(), Family::I2(4));
        assert_eq!(sys("D3").family(), Family::A(3));
        assert_eq!(sys("I2(3)").family(), Family::A(2));
        assert_eq!(sys("I2(6)").family(), Family::I2(6));
    }

    #[test]
    fn positive_root_counts() {
        // counts from the classical tables: n(n+1)/2, n², n(n-1), 36, 63, 120, 24, 15, 60, m
        let expected = [
            ("A1", 1),
            ("A3", 6),
            ("A5", 15),
            ("B3", 9),
            ("B4", 16),
            ("D4", 12),
            ("D5", 20),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
            ("F4", 24),
            ("H3", 15),
            ("H4", 60),
            ("I2(5)", 5),
            ("I2(8)", 8),
            ("I2(12)", 12),
        ];
        for (s, n) in expected {
            let sy = sys(s);
            assert_eq!(sy.n_positive_roots(), n, "{s}");
            assert_eq!(sy.longest_element().length(), n, "{s}");
        }
    }

    #[test]
    fn classify_relabeled_and_rejections() {
        let a3 = CoxeterMatrix::catalog(Family::A(3));
        let relabeled = a3.relabel(&[2, 0, 1]).unwrap();
        assert_eq!(classify(&relabeled).unwrap(), Family::A(3));

        let tri = CoxeterMatrix::new(vec![vec![1, 3, 3], vec![3, 1, 3], vec![3, 3, 1]]).unwrap();
        assert_eq!(classify(&tri), Err(GarsideError::NotFiniteType));

        let split = CoxeterMatrix::new(vec![vec![1, 2], vec![2, 1]]).unwrap();
        assert_eq!(classify(&split), Err(GarsideError::Reducible));

        let b5 = CoxeterMatrix::catalog(Family::B(5));
        assert_eq!(classify(&b5.relabel(&[4, 3, 2, 1, 0]).unwrap()).unwrap(), Family::B(5));
        let e7 = CoxeterMatrix::catalog(Family::E7);
        assert_eq!(classify(&e7.relabel(&[6, 5, 4, 3, 2, 1, 0]).unwrap()).unwrap(), Family::E7);

        // affine D̃4: a vertex of degree four
        let mut d4t = vec![vec![2u32; 5]; 5];
        for (i, row) in d4t.iter_mut().enumerate() {
            row[i] = 1;
        }
        for leaf in 1..5 {
            d4t[0][leaf] = 3;
            d4t[leaf][0] = 3;
        }
        assert_eq!(classify(&CoxeterMatrix::new(d4t).unwrap()), Err(GarsideError::NotFiniteType));
    }

    #[test]
    fn malformed_matrices() {
        assert!(CoxeterMatrix::new(vec![vec![1, 3], vec![2, 1]]).is_err());
        assert!(CoxeterMatrix::new(vec![vec![2, 3], vec![3, 1]]).is_err());
        assert!(CoxeterMatrix::new(vec![vec![1, 1], vec![1, 1]]).is_err());
        assert!(CoxeterMatrix::new(vec![]).is_err());
    }

    #[test]
    fn descent_examples_a3() {
        let a3 = sys("A3");
        assert!(a3.descents(&a3.identity(), Side::Left).is_empty());
        assert_eq!(a3.descents(a3.longest_element(), Side::Left), a3.all_atoms());
        assert_eq!(a3.descents(a3.longest_element(), Side::Right), a3.all_atoms());
        let w = a3.element_from_word(&[0, 1]);
        assert_eq!(a3.descents(&w, Side::Left), AtomSet::single(0));
        assert_eq!(a3.descents(&w, Side::Right), AtomSet::single(1));
    }

    #[test]
    fn group_laws() {
        for s in ["A3", "B3", "H3", "I2(7)", "D4", "F4"] {
            let sy = sys(s);
            let n = sy.rank();
            for a in 0..n {
                let g = sy.generator(a);
                assert!(sy.mul(g, g).is_identity(), "{s}: s² ≠ 1");
                for b in 0..n {
                    if a == b {
                        continue;
                    }
                    let m = sy.matrix().get(a, b) as usize;
                    let st = sy.mul(g, sy.generator(b));
                    let mut p = sy.identity();
                    for _ in 0..m {
                        p = sy.mul(&p, &st);
                    }
                    assert!(p.is_identity(), "{s}: (st)^m ≠ 1");
                    let mut q = sy.identity();
                    for _ in 0..m - 1 {
                        q = sy.mul(&q, &st);
                    }
                    assert!(!q.is_identity() || m == 1, "{s}: order of st below m");
                }
            }
            let w0 = sy.longest_element();
            assert_eq!(sy.inv(w0), *w0);
        }
    }

    #[test]
    fn mixed_systems_rejected() {
        let a3 = sys("A3");
        let b3 = sys("B3");
        assert_eq!(a3.multiply(a3.generator(0), b3.generator(0)), Err(GarsideError::MixedSystems));
    }

    #[test]
    fn group_orders() {
        for (s, order) in [("A3", 24), ("B3", 48), ("H3", 120), ("D4", 192), ("I2(9)", 18), ("F4", 1152)] {
            let sy = sys(s);
            assert_eq!(sy.enumerate(sy.all_atoms(), 1 << 20).unwrap().len(), order, "{s}");
        }
        let e8 = sys("E8");
        assert!(matches!(e8.enumerate(e8.all_atoms(), 1000), Err(GarsideError::BudgetExceeded(1000))));
    }
}
