//! The numerical Grothendieck lattice of a Weierstraß elliptic surface,
//! restricted to the divisor sublattice spanned by the section Θ and the
//! fiber f.
//!
//! A class is stored as `(r, a, b, s)`: rank, `ch₁ = aΘ + bf`, and `ch₂` in
//! units of the point class. The intersection form on the divisor part is
//! `Θ² = −e`, `Θ·f = 1`, `f² = 0`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::divisors::DivisorClass;
use crate::error::{Error, Result};
use crate::rational::{int, parse_rational, Rational};

/// Surface-level constants shared by every computation.
///
/// `e = −Θ²`; the surface is K3 exactly when `e = 2`. `d_alpha` fixes the
/// integral polarization `α = Θ + (d_alpha + e)f` used after the relative
/// Fourier–Mukai transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Surface {
    e: i64,
    d_alpha: i64,
}

impl Default for Surface {
    fn default() -> Self {
        Surface::k3(0)
    }
}

impl Surface {
    pub fn new(e: i64, d_alpha: i64) -> Result<Self> {
        if e < 1 {
            return Err(Error::InvalidSurface(e));
        }
        Ok(Surface { e, d_alpha })
    }

    /// The Weierstraß elliptic K3 surface (`e = 2`).
    pub fn k3(d_alpha: i64) -> Self {
        Surface { e: 2, d_alpha }
    }

    pub fn e(&self) -> i64 {
        self.e
    }

    pub fn d_alpha(&self) -> i64 {
        self.d_alpha
    }

    pub fn with_d_alpha(self, d_alpha: i64) -> Self {
        Surface { d_alpha, ..self }
    }

    pub fn is_k3(&self) -> bool {
        self.e == 2
    }

    pub fn require_k3(&self) -> Result<()> {
        if self.is_k3() {
            Ok(())
        } else {
            Err(Error::NotK3(self.e))
        }
    }

    pub(crate) fn e_q(&self) -> Rational {
        int(self.e)
    }

    /// Intersection number `d1·d2 = −e·a₁a₂ + a₁b₂ + a₂b₁`.
    pub fn intersect(&self, d1: &DivisorClass, d2: &DivisorClass) -> Rational {
        -(self.e_q() * &d1.a * &d2.a) + &d1.a * &d2.b + &d2.a * &d1.b
    }

    /// `Θ·ch₁(v)`.
    pub fn theta_pairing(&self, v: &ChernVector) -> Rational {
        self.intersect(&DivisorClass::theta(), &v.ch1())
    }

    /// `f·ch₁(v)`, which is just the Θ-coefficient.
    pub fn fiber_pairing(&self, v: &ChernVector) -> Rational {
        v.a.clone()
    }

    /// Recovers `aΘ + bf` from the pairings `(Θ·D, f·D)`. The pairing matrix
    /// is unimodular, so this is exact.
    pub fn divisor_from_pairings(&self, theta_deg: &Rational, fiber_deg: &Rational) -> DivisorClass {
        let a = fiber_deg.clone();
        let b = theta_deg + self.e_q() * &a;
        DivisorClass::new(a, b)
    }

    /// `ch(O_X(D)) = (1, D, D²/2)`.
    pub fn ch_line_bundle(&self, d: &DivisorClass) -> ChernVector {
        let s = self.intersect(d, d) / int(2);
        ChernVector::new(Rational::one(), d.a.clone(), d.b.clone(), s)
    }

    /// `ch(O_Θ(m)) = (0, Θ, m + 1)`, from Grothendieck–Riemann–Roch on a K3.
    pub fn ch_section_sheaf(&self, m: i64) -> Result<ChernVector> {
        self.require_k3()?;
        Ok(ChernVector::from_ints(0, 1, 0, m + 1))
    }

    /// `ch^B = e^{−B}·ch = (r, c₁ − rB, s − B·c₁ + r·B²/2)`.
    pub fn twist(&self, v: &ChernVector, b: &DivisorClass) -> ChernVector {
        let c1 = v.ch1();
        let half_b_sq = self.intersect(b, b) / int(2);
        let s = &v.s - self.intersect(b, &c1) + &v.r * half_b_sq;
        let c1b = c1 - b.clone() * &v.r;
        ChernVector::new(v.r.clone(), c1b.a, c1b.b, s)
    }

    /// Mukai vector `(r, c₁, r + ch₂)`, i.e. `ch·√td` on a K3.
    pub fn mukai_vector(&self, v: &ChernVector) -> Result<MukaiVector> {
        self.require_k3()?;
        Ok(MukaiVector {
            r: v.r.clone(),
            c1: v.ch1(),
            s_tilde: &v.r + &v.s,
        })
    }

    /// `(v, w) = c₁·c₁' − r·s̃' − r'·s̃`.
    pub fn mukai_pairing(&self, v: &MukaiVector, w: &MukaiVector) -> Result<Rational> {
        self.require_k3()?;
        Ok(self.intersect(&v.c1, &w.c1) - &v.r * &w.s_tilde - &w.r * &v.s_tilde)
    }

    /// `χ(v, w) = −(v(v), v(w))` on a K3.
    pub fn euler_characteristic(&self, v: &ChernVector, w: &ChernVector) -> Result<Rational> {
        let mv = self.mukai_vector(v)?;
        let mw = self.mukai_vector(w)?;
        Ok(-self.mukai_pairing(&mv, &mw)?)
    }
}

/// Numerical class `(ch₀, ch₁ = aΘ + bf, ch₂)` with exact rational entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChernVector {
    pub r: Rational,
    pub a: Rational,
    pub b: Rational,
    pub s: Rational,
}

impl ChernVector {
    pub fn new(r: Rational, a: Rational, b: Rational, s: Rational) -> Self {
        ChernVector { r, a, b, s }
    }

    pub fn from_ints(r: i64, a: i64, b: i64, s: i64) -> Self {
        ChernVector::new(int(r), int(a), int(b), int(s))
    }

    pub fn zero() -> Self {
        ChernVector::from_ints(0, 0, 0, 0)
    }

    /// Class of a skyscraper sheaf.
    pub fn point() -> Self {
        ChernVector::from_ints(0, 0, 0, 1)
    }

    /// `ch(O_X)`.
    pub fn structure_sheaf() -> Self {
        ChernVector::from_ints(1, 0, 0, 0)
    }

    /// The four coordinate vectors `(1,0,0,0)`, …, `(0,0,0,1)`.
    pub fn basis() -> [ChernVector; 4] {
        [
            ChernVector::from_ints(1, 0, 0, 0),
            ChernVector::from_ints(0, 1, 0, 0),
            ChernVector::from_ints(0, 0, 1, 0),
            ChernVector::from_ints(0, 0, 0, 1),
        ]
    }

    pub fn ch1(&self) -> DivisorClass {
        DivisorClass::new(self.a.clone(), self.b.clone())
    }

    /// Class of `E[1]`, which is `−[E]`.
    pub fn shift(&self) -> ChernVector {
        -self.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.a.is_zero() && self.b.is_zero() && self.s.is_zero()
    }

    pub fn coords(&self) -> [&Rational; 4] {
        [&self.r, &self.a, &self.b, &self.s]
    }

    pub(crate) fn from_coords(c: [Rational; 4]) -> Self {
        let [r, a, b, s] = c;
        ChernVector { r, a, b, s }
    }
}

impl Add for ChernVector {
    type Output = ChernVector;
    fn add(self, o: ChernVector) -> ChernVector {
        ChernVector::new(self.r + o.r, self.a + o.a, self.b + o.b, self.s + o.s)
    }
}

impl<'a> Add<&'a ChernVector> for &'a ChernVector {
    type Output = ChernVector;
    fn add(self, o: &ChernVector) -> ChernVector {
        ChernVector::new(&self.r + &o.r, &self.a + &o.a, &self.b + &o.b, &self.s + &o.s)
    }
}

impl Sub for ChernVector {
    type Output = ChernVector;
    fn sub(self, o: ChernVector) -> ChernVector {
        self + (-o)
    }
}

impl Neg for ChernVector {
    type Output = ChernVector;
    fn neg(self) -> ChernVector {
        ChernVector::new(-self.r, -self.a, -self.b, -self.s)
    }
}

impl Mul<&Rational> for ChernVector {
    type Output = ChernVector;
    fn mul(self, k: &Rational) -> ChernVector {
        ChernVector::new(self.r * k, self.a * k, self.b * k, self.s * k)
    }
}

/// Colon form `r:a:b:s`.
impl fmt::Display for ChernVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}:{}", self.r, self.a, self.b, self.s)
    }
}

impl FromStr for ChernVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 4 {
            return Err(Error::Parse {
                what: "Chern vector r:a:b:s",
                input: s.to_string(),
            });
        }
        Ok(ChernVector::new(
            parse_rational(parts[0])?,
            parse_rational(parts[1])?,
            parse_rational(parts[2])?,
            parse_rational(parts[3])?,
        ))
    }
}

impl Serialize for ChernVector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ChernVector {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Mukai vector `(r, c₁, s̃)` with `s̃ = r + ch₂`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MukaiVector {
    pub r: Rational,
    pub c1: DivisorClass,
    pub s_tilde: Rational,
}

impl MukaiVector {
    pub fn new(r: Rational, c1: DivisorClass, s_tilde: Rational) -> Self {
        MukaiVector { r, c1, s_tilde }
    }
}

impl fmt::Display for MukaiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.r, self.c1, self.s_tilde)
    }
}
