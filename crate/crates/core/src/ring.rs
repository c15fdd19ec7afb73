//! Exact coefficient rings for root-system arithmetic.
//!
//! Crystallographic systems use plain integers. `H3`/`H4` use the ring of
//! golden integers `Z[φ]`, and the remaining dihedral groups use the
//! cyclotomic integers `Z[ζ]` reduced modulo the cyclotomic polynomial, which
//! contains `2cos(π/m) = ζ + ζ⁻¹` for `ζ` a primitive `2m`-th root of unity.
//! None of the root-system code needs an ordering on these rings: positivity
//! of roots is tracked structurally, so only exact equality is required.

use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

/// The operations the root closure needs from a coefficient ring.
pub trait RootRing: Clone + Eq + Hash + fmt::Debug + fmt::Display {
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Additive identity of the same ring (cyclotomic values carry their modulus).
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;

    fn is_zero(&self) -> bool {
        *self == self.zero_like()
    }
}

impl RootRing for i64 {
    fn add(&self, other: &Self) -> Self {
        self.checked_add(*other).expect("root coefficient overflow")
    }
    fn sub(&self, other: &Self) -> Self {
        self.checked_sub(*other).expect("root coefficient overflow")
    }
    fn mul(&self, other: &Self) -> Self {
        self.checked_mul(*other).expect("root coefficient overflow")
    }
    fn zero_like(&self) -> Self {
        0
    }
    fn one_like(&self) -> Self {
        1
    }
}

/// `a + b·φ` with `φ² = φ + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GoldenInt {
    pub a: i64,
    pub b: i64,
}

impl GoldenInt {
    pub const ZERO: GoldenInt = GoldenInt { a: 0, b: 0 };
    pub const ONE: GoldenInt = GoldenInt { a: 1, b: 0 };
    pub const PHI: GoldenInt = GoldenInt { a: 0, b: 1 };

    pub fn new(a: i64, b: i64) -> Self {
        GoldenInt { a, b }
    }

    /// Galois conjugate `φ ↦ 1 − φ`.
    pub fn conjugate(&self) -> Self {
        GoldenInt::new(self.a + self.b, -self.b)
    }

    /// Field norm `x · conj(x)`, an ordinary integer.
    pub fn norm(&self) -> i64 {
        // (a + bφ)(a + b − bφ) = a² + ab − b²
        self.a * self.a + self.a * self.b - self.b * self.b
    }

    pub fn to_f64(&self) -> f64 {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        self.a as f64 + self.b as f64 * phi
    }
}

impl RootRing for GoldenInt {
    fn add(&self, o: &Self) -> Self {
        GoldenInt::new(self.a + o.a, self.b + o.b)
    }
    fn sub(&self, o: &Self) -> Self {
        GoldenInt::new(self.a - o.a, self.b - o.b)
    }
    fn mul(&self, o: &Self) -> Self {
        let bd = self.b * o.b;
        GoldenInt::new(self.a * o.a + bd, self.a * o.b + self.b * o.a + bd)
    }
    fn zero_like(&self) -> Self {
        GoldenInt::ZERO
    }
    fn one_like(&self) -> Self {
        GoldenInt::ONE
    }
}

impl fmt::Display for GoldenInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, 1) => write!(f, "φ"),
            (0, b) => write!(f, "{b}φ"),
            (a, 1) => write!(f, "{a}+φ"),
            (a, b) if b < 0 => write!(f, "{a}{b}φ"),
            (a, b) => write!(f, "{a}+{b}φ"),
        }
    }
}

/// Integer polynomial coefficients, lowest degree first.
type Poly = Vec<i64>;

fn poly_trim(p: &mut Poly) {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
}

/// Exact division by a monic polynomial; panics if the remainder is nonzero.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Poly {
    debug_assert_eq!(*den.last().unwrap(), 1);
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        assert!(rem.iter().all(|&c| c == 0), "inexact polynomial division");
        return vec![0];
    }
    let mut quot = vec![0i64; rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "inexact polynomial division");
    poly_trim(&mut quot);
    quot
}

/// The `n`-th cyclotomic polynomial, via `xⁿ − 1 = ∏_{d | n} Φ_d`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1);
    let mut p: Poly = vec![0; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            p = poly_div_exact(&p, &cyclotomic_polynomial(d));
        }
    }
    p
}

/// An element of `Z[ζ_n]`, stored reduced modulo `Φ_n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloInt {
    order: u32,
    modulus: Arc<Vec<i64>>,
    coeffs: Vec<i64>,
}

impl CycloInt {
    fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// `ζ_n^k` in the ring of order `n`.
    pub fn root_of_unity_power(order: u32, k: i64) -> Self {
        let modulus = Arc::new(cyclotomic_polynomial(order));
        let k = k.rem_euclid(order as i64) as usize;
        let mut raw = vec![0; k + 1];
        raw[k] = 1;
        Self::from_raw(order, modulus, raw)
    }

    /// `2cos(π/m)` as `ζ + ζ⁻¹` with `ζ` a primitive `2m`-th root of unity.
    pub fn two_cos_pi_over(m: u32) -> Self {
        let order = 2 * m;
        let z = Self::root_of_unity_power(order, 1);
        let zi = Self::root_of_unity_power(order, -1);
        RootRing::add(&z, &zi)
    }

    fn from_raw(order: u32, modulus: Arc<Vec<i64>>, mut raw: Vec<i64>) -> Self {
        let deg = modulus.len() - 1;
        for i in (deg..raw.len()).rev() {
            let c = raw[i];
            if c != 0 {
                for (j, &m) in modulus.iter().enumerate() {
                    raw[i - deg + j] -= c * m;
                }
            }
        }
        raw.resize(deg.max(1), 0);
        raw.truncate(deg.max(1));
        CycloInt { order, modulus, coeffs: raw }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Numerical value, used only for display and diagnostics.
    pub fn to_f64(&self) -> f64 {
        // all elements we build are real (sums ζ^k + ζ^-k), so the real part suffices
        let theta = 2.0 * std::f64::consts::PI / self.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| c as f64 * (theta * k as f64).cos())
            .sum()
    }
}

impl fmt::Debug for CycloInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloInt(ζ{}; {:?})", self.order, self.coeffs)
    }
}

impl fmt::Display for CycloInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            terms.push(match k {
                0 => format!("{c}"),
                1 => format!("{c}ζ"),
                _ => format!("{c}ζ^{k}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+").replace("+-", "-"))
        }
    }
}

impl RootRing for CycloInt {
    fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.order, o.order);
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect();
        CycloInt { order: self.order, modulus: self.modulus.clone(), coeffs }
    }
    fn sub(&self, o: &Self) -> Self {
        debug_assert_eq!(self.order, o.order);
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect();
        CycloInt { order: self.order, modulus: self.modulus.clone(), coeffs }
    }
    fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.order, o.order);
        let mut raw = vec![0i64; self.coeffs.len() + o.coeffs.len()];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                raw[i + j] += a * b;
            }
        }
        Self::from_raw(self.order, self.modulus.clone(), raw)
    }
    fn zero_like(&self) -> Self {
        CycloInt {
            order: self.order,
            modulus: self.modulus.clone(),
            coeffs: vec![0; self.degree().max(1)],
        }
    }
    fn one_like(&self) -> Self {
        let mut z = self.zero_like();
        z.coeffs[0] = 1;
        z
    }
}
