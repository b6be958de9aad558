//! Central charges, exact phases and slopes, and the limit phases assigned
//! to kernel objects.
//!
//! Every charge used here has the shape
//!
//! ```text
//! Z(E) = −ch₂^B(E) + c·ch₀^B(E) + i·ω·ch₁^B(E)
//! ```
//!
//! for some divisor ω, B-field B and rational `c`; the variants of
//! [`ChargeSpec`] only differ in how those three ingredients are chosen.
//! Phases are kept as exact direction vectors so that comparisons never
//! touch floating point.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::divisors::{DivisorClass, RdvCoords};
use crate::error::{Error, Result};
use crate::lattice::{ChernVector, Surface};
use crate::rational::{int, parse_rational, to_f64, Rational};

/// One of the central charges studied on the elliptic K3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChargeSpec {
    /// `Z_{ω,B}` with ω and B given in RDV coordinates; `V_ω = R_ω²(D_ω + e/2)`.
    GeneralRdv {
        r_omega: Rational,
        d_omega: Rational,
        r_b: Rational,
        d_b: Rational,
    },
    /// `Z_{V,D} = −ch₂ + V·ch₀ + i(Θ + (D + e)f)·ch₁`, the charge with its
    /// imaginary part rescaled by `1/R_ω`.
    RescaledVd { v: Rational, d: Rational },
    /// `Z_H = −ch₂ + iH·ch₁` with `H = Θ + ef`.
    Origin,
    /// `Z_{V,H} = −ch₂ + V·ch₀ + iH·ch₁`.
    VAxis { v: Rational },
    /// `Z_D = −ch₂ + i(Θ + (D + e)f)·ch₁`.
    DAxis { d: Rational },
    /// Todd-corrected charge `−ch₂^B + (V_ω − 1)ch₀^B + iω·ch₁^B`.
    Todd {
        r_omega: Rational,
        d_omega: Rational,
        r_b: Rational,
        d_b: Rational,
    },
    /// The Todd-corrected charge at the special point `(ω'₀, B'₀)`.
    ToddSpecial { d_alpha: i64 },
}

impl ChargeSpec {
    /// The continuous parameters of the charge, in declaration order.
    pub fn parameters(&self) -> Vec<Rational> {
        match self {
            ChargeSpec::GeneralRdv {
                r_omega,
                d_omega,
                r_b,
                d_b,
            }
            | ChargeSpec::Todd {
                r_omega,
                d_omega,
                r_b,
                d_b,
            } => vec![r_omega.clone(), d_omega.clone(), r_b.clone(), d_b.clone()],
            ChargeSpec::RescaledVd { v, d } => vec![v.clone(), d.clone()],
            ChargeSpec::VAxis { v } => vec![v.clone()],
            ChargeSpec::DAxis { d } => vec![d.clone()],
            ChargeSpec::Origin | ChargeSpec::ToddSpecial { .. } => Vec::new(),
        }
    }

    /// Same variant with its parameters replaced. `params` must have the
    /// length returned by [`ChargeSpec::parameters`].
    pub fn with_parameters(&self, params: &[Rational]) -> ChargeSpec {
        let p = |i: usize| params[i].clone();
        match self {
            ChargeSpec::GeneralRdv { .. } => ChargeSpec::GeneralRdv {
                r_omega: p(0),
                d_omega: p(1),
                r_b: p(2),
                d_b: p(3),
            },
            ChargeSpec::Todd { .. } => ChargeSpec::Todd {
                r_omega: p(0),
                d_omega: p(1),
                r_b: p(2),
                d_b: p(3),
            },
            ChargeSpec::RescaledVd { .. } => ChargeSpec::RescaledVd { v: p(0), d: p(1) },
            ChargeSpec::VAxis { .. } => ChargeSpec::VAxis { v: p(0) },
            ChargeSpec::DAxis { .. } => ChargeSpec::DAxis { d: p(0) },
            other => other.clone(),
        }
    }
}

impl fmt::Display for ChargeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChargeSpec::GeneralRdv {
                r_omega,
                d_omega,
                r_b,
                d_b,
            } => write!(f, "general:{r_omega}:{d_omega}:{r_b}:{d_b}"),
            ChargeSpec::Todd {
                r_omega,
                d_omega,
                r_b,
                d_b,
            } => write!(f, "todd:{r_omega}:{d_omega}:{r_b}:{d_b}"),
            ChargeSpec::RescaledVd { v, d } => write!(f, "vd:{v}:{d}"),
            ChargeSpec::Origin => write!(f, "origin"),
            ChargeSpec::VAxis { v } => write!(f, "v-axis:{v}"),
            ChargeSpec::DAxis { d } => write!(f, "d-axis:{d}"),
            ChargeSpec::ToddSpecial { d_alpha } => write!(f, "todd-special:{d_alpha}"),
        }
    }
}

/// Parses the forms produced by `Display`, e.g. `vd:1/2:1` or `origin`.
impl FromStr for ChargeSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "charge spec",
            input: s.to_string(),
        };
        let mut parts = s.split(':');
        let kind = parts.next().ok_or_else(err)?;
        let rest: Vec<&str> = parts.collect();
        let nums = |n: usize| -> Result<Vec<Rational>> {
            if rest.len() != n {
                return Err(err());
            }
            rest.iter().map(|x| parse_rational(x)).collect()
        };
        Ok(match kind {
            "general" | "todd" => {
                let [r_omega, d_omega, r_b, d_b]: [Rational; 4] =
                    nums(4)?.try_into().map_err(|_| err())?;
                if kind == "todd" {
                    ChargeSpec::Todd {
                        r_omega,
                        d_omega,
                        r_b,
                        d_b,
                    }
                } else {
                    ChargeSpec::GeneralRdv {
                        r_omega,
                        d_omega,
                        r_b,
                        d_b,
                    }
                }
            }
            "vd" => {
                let p = nums(2)?;
                ChargeSpec::RescaledVd {
                    v: p[0].clone(),
                    d: p[1].clone(),
                }
            }
            "origin" => {
                nums(0)?;
                ChargeSpec::Origin
            }
            "v-axis" => ChargeSpec::VAxis {
                v: nums(1)?[0].clone(),
            },
            "d-axis" => ChargeSpec::DAxis {
                d: nums(1)?[0].clone(),
            },
            "todd-special" => {
                if rest.len() != 1 {
                    return Err(err());
                }
                ChargeSpec::ToddSpecial {
                    d_alpha: rest[0].trim().parse().map_err(|_| err())?,
                }
            }
            _ => return Err(err()),
        })
    }
}

/// An exact complex number `re + i·im`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChargeValue {
    pub re: Rational,
    pub im: Rational,
}

impl ChargeValue {
    pub fn new(re: Rational, im: Rational) -> Self {
        ChargeValue { re, im }
    }

    pub fn zero() -> Self {
        ChargeValue::new(Rational::zero(), Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Multiplication by `−i`: `(x + iy) ↦ y − ix`.
    pub fn times_minus_i(&self) -> ChargeValue {
        ChargeValue::new(self.im.clone(), -self.re.clone())
    }

    pub fn to_f64(&self) -> ChargeValueF64 {
        ChargeValueF64 {
            re: to_f64(&self.re),
            im: to_f64(&self.im),
        }
    }
}

impl std::ops::Add for ChargeValue {
    type Output = ChargeValue;
    fn add(self, o: ChargeValue) -> ChargeValue {
        ChargeValue::new(self.re + o.re, self.im + o.im)
    }
}

impl std::ops::Neg for ChargeValue {
    type Output = ChargeValue;
    fn neg(self) -> ChargeValue {
        ChargeValue::new(-self.re, -self.im)
    }
}

impl fmt::Display for ChargeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.re, self.im)
    }
}

impl Serialize for ChargeValue {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("ChargeValue", 2)?;
        st.serialize_field("re", &self.re.to_string())?;
        st.serialize_field("im", &self.im.to_string())?;
        st.end()
    }
}

/// Floating-point charge value, used where the parameters leave ℚ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChargeValueF64 {
    pub re: f64,
    pub im: f64,
}

impl ChargeValueF64 {
    pub fn norm(&self) -> f64 {
        self.re.hypot(self.im)
    }

    /// Phase on the same branches as [`Phase`]: `(0, 1]` for the closed
    /// upper half plane, `(−1, 0]` otherwise.
    pub fn phase(&self) -> f64 {
        let im = if self.im == 0.0 { 0.0 } else { self.im };
        let t = im.atan2(self.re) / std::f64::consts::PI;
        if im == 0.0 && self.re > 0.0 {
            0.0
        } else {
            t
        }
    }

    /// Phase taken in `(0, 2]`.
    pub fn phase_positive(&self) -> f64 {
        let t = self.phase();
        if t <= 0.0 {
            t + 2.0
        } else {
            t
        }
    }
}

/// An exact phase `branch + arg(dir)/π`, with `arg(dir)/π ∈ (0, 1]`.
///
/// Ordering compares branches first and then angles through the sign of a
/// cross product, which is valid because both directions lie in `(0, π]`.
#[derive(Debug, Clone)]
pub struct Phase {
    branch: i64,
    dir_re: Rational,
    dir_im: Rational,
}

impl Phase {
    /// Phase of the direction `(re, im)` on `branch`; directions outside the
    /// closed upper half plane move to `branch − 1`.
    pub fn from_direction(branch: i64, re: Rational, im: Rational) -> Result<Phase> {
        if re.is_zero() && im.is_zero() {
            return Err(Error::ZeroCharge);
        }
        if im.is_positive() || (im.is_zero() && re.is_negative()) {
            Ok(Phase {
                branch,
                dir_re: re,
                dir_im: im,
            })
        } else {
            Ok(Phase {
                branch: branch - 1,
                dir_re: -re,
                dir_im: -im,
            })
        }
    }

    /// `φ = 1`.
    pub fn one() -> Phase {
        Phase {
            branch: 0,
            dir_re: -Rational::one(),
            dir_im: Rational::zero(),
        }
    }

    /// `φ = 1/2`.
    pub fn half() -> Phase {
        Phase {
            branch: 0,
            dir_re: Rational::zero(),
            dir_im: Rational::one(),
        }
    }

    /// `φ = 1/4`.
    pub fn quarter() -> Phase {
        Phase {
            branch: 0,
            dir_re: Rational::one(),
            dir_im: Rational::one(),
        }
    }

    /// `φ = 3/4`.
    pub fn three_quarters() -> Phase {
        Phase {
            branch: 0,
            dir_re: -Rational::one(),
            dir_im: Rational::one(),
        }
    }

    pub fn branch(&self) -> i64 {
        self.branch
    }

    pub fn direction(&self) -> (&Rational, &Rational) {
        (&self.dir_re, &self.dir_im)
    }

    /// Phase of `E[k]`.
    pub fn shifted(&self, k: i64) -> Phase {
        Phase {
            branch: self.branch + k,
            ..self.clone()
        }
    }

    pub fn approx(&self) -> f64 {
        self.branch as f64 + to_f64(&self.dir_im).atan2(to_f64(&self.dir_re)) / std::f64::consts::PI
    }

    /// The phase as an exact rational when it is one. A rational direction
    /// makes a rational multiple of π only on the axes and the diagonals, so
    /// the result is always a multiple of 1/4.
    pub fn exact_fraction(&self) -> Option<Rational> {
        let quarters = if self.dir_im.is_zero() {
            4
        } else if self.dir_re.is_zero() {
            2
        } else if self.dir_re == self.dir_im {
            1
        } else if self.dir_re == -self.dir_im.clone() {
            3
        } else {
            return None;
        };
        Some(int(self.branch) + Rational::new(quarters.into(), 4.into()))
    }

    /// Slope `−cot(πφ)` of the direction, ignoring the branch.
    pub fn slope(&self) -> Slope {
        slope_of(&self.dir_re, &self.dir_im)
    }
}

impl PartialEq for Phase {
    fn eq(&self, other: &Phase) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Phase {}

impl PartialOrd for Phase {
    fn partial_cmp(&self, other: &Phase) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Phase {
    fn cmp(&self, other: &Phase) -> Ordering {
        self.branch.cmp(&other.branch).then_with(|| {
            // angle(self) < angle(other) iff cross(self, other) > 0
            let cross = &self.dir_re * &other.dir_im - &self.dir_im * &other.dir_re;
            Rational::zero().cmp(&cross)
        })
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact_fraction() {
            Some(q) => write!(f, "{q}"),
            None => write!(f, "{}", self.approx()),
        }
    }
}

impl Serialize for Phase {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Phase", 3)?;
        st.serialize_field("branch", &self.branch)?;
        st.serialize_field("dir", &[self.dir_re.to_string(), self.dir_im.to_string()])?;
        st.serialize_field("approx", &self.approx())?;
        st.end()
    }
}

/// Slope `ρ = −Re/Im`, infinite on the real axis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Slope {
    Finite(Rational),
    Infinite,
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(q) => write!(f, "{q}"),
            Slope::Infinite => write!(f, "inf"),
        }
    }
}

fn slope_of(re: &Rational, im: &Rational) -> Slope {
    if im.is_zero() {
        Slope::Infinite
    } else {
        Slope::Finite(-(re / im))
    }
}

/// `Z ∈ ℍ ∪ ℝ_{≤0}`.
pub fn in_closed_upper_half(z: &ChargeValue) -> bool {
    z.im.is_positive() || (z.im.is_zero() && !z.re.is_positive())
}

/// `φ(Z) = arg(Z)/π`, on branch 0 for the closed upper half plane and
/// branch −1 otherwise.
pub fn phase(z: &ChargeValue) -> Result<Phase> {
    Phase::from_direction(0, z.re.clone(), z.im.clone())
}

pub fn slope(z: &ChargeValue) -> Result<Slope> {
    if z.is_zero() {
        return Err(Error::ZeroCharge);
    }
    Ok(slope_of(&z.re, &z.im))
}

pub fn compare_phase(p1: &Phase, p2: &Phase) -> Ordering {
    p1.cmp(p2)
}

impl Surface {
    /// Evaluates `spec` on a numerical class.
    pub fn eval(&self, spec: &ChargeSpec, v: &ChernVector) -> Result<ChargeValue> {
        let e = self.e_q();
        let (omega, ch0_coeff, b) = match spec {
            ChargeSpec::GeneralRdv {
                r_omega,
                d_omega,
                r_b,
                d_b,
            }
            | ChargeSpec::Todd {
                r_omega,
                d_omega,
                r_b,
                d_b,
            } => {
                if !r_omega.is_positive() {
                    return Err(Error::NonPositiveParameter {
                        name: "R_omega",
                        value: r_omega.to_string(),
                    });
                }
                let omega_rdv = RdvCoords::new(r_omega.clone(), d_omega.clone());
                let mut coeff = omega_rdv.volume(self);
                if matches!(spec, ChargeSpec::Todd { .. }) {
                    coeff -= Rational::one();
                }
                let b = self.from_rdv(&RdvCoords::new(r_b.clone(), d_b.clone()));
                (self.from_rdv(&omega_rdv), coeff, b)
            }
            ChargeSpec::RescaledVd { v, d } => (
                DivisorClass::new(Rational::one(), d + &e),
                v.clone(),
                DivisorClass::zero(),
            ),
            ChargeSpec::Origin => (
                DivisorClass::new(Rational::one(), e),
                Rational::zero(),
                DivisorClass::zero(),
            ),
            ChargeSpec::VAxis { v } => (
                DivisorClass::new(Rational::one(), e),
                v.clone(),
                DivisorClass::zero(),
            ),
            ChargeSpec::DAxis { d } => (
                DivisorClass::new(Rational::one(), d + &e),
                Rational::zero(),
                DivisorClass::zero(),
            ),
            ChargeSpec::ToddSpecial { d_alpha } => {
                self.require_k3()?;
                let (omega, b) = crate::fm::special_point(*d_alpha);
                let coeff = self.volume(&omega) - Rational::one();
                (omega, coeff, b)
            }
        };
        Ok(self.twisted_charge(&omega, &ch0_coeff, &b, v))
    }

    /// `−ch₂^B + c·ch₀^B + i·ω·ch₁^B`.
    pub(crate) fn twisted_charge(
        &self,
        omega: &DivisorClass,
        ch0_coeff: &Rational,
        b: &DivisorClass,
        v: &ChernVector,
    ) -> ChargeValue {
        let vb = self.twist(v, b);
        let re = -vb.s.clone() + ch0_coeff * &vb.r;
        let im = self.intersect(omega, &vb.ch1());
        ChargeValue::new(re, im)
    }
}

/// Floating-point counterpart of `−ch₂^B + c·ch₀^B + i·ω·ch₁^B`, for
/// parameters that are not rational (for instance `R_ω = √(V/(D + e/2))`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FloatCharge {
    /// `ω = omega.0·Θ + omega.1·f`
    pub omega: (f64, f64),
    pub ch0_coeff: f64,
    /// `B = b.0·Θ + b.1·f`
    pub b: (f64, f64),
}

impl FloatCharge {
    /// `Z_{ω,B}` (or its Todd correction) with real RDV parameters.
    pub fn from_rdv(e: f64, r_omega: f64, d_omega: f64, r_b: f64, d_b: f64, todd: bool) -> Self {
        let v_omega = r_omega * r_omega * (d_omega + e / 2.0);
        FloatCharge {
            omega: (r_omega, r_omega * (d_omega + e)),
            ch0_coeff: if todd { v_omega - 1.0 } else { v_omega },
            b: (r_b, r_b * (d_b + e)),
        }
    }

    pub fn eval(&self, e: f64, v: &ChernVector) -> ChargeValueF64 {
        let dot = |x: (f64, f64), y: (f64, f64)| -e * x.0 * y.0 + x.0 * y.1 + x.1 * y.0;
        let r = to_f64(&v.r);
        let c1 = (to_f64(&v.a), to_f64(&v.b));
        let s = to_f64(&v.s);
        let c1b = (c1.0 - r * self.b.0, c1.1 - r * self.b.1);
        let s_b = s - dot(self.b, c1) + r * dot(self.b, self.b) / 2.0;
        ChargeValueF64 {
            re: -s_b + self.ch0_coeff * r,
            im: dot(self.omega, c1b),
        }
    }
}

/// The four families of weak stability conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `Z_H`; kernel generated by `O_Θ(−1)` and `O_X[1]`.
    Origin,
    /// `Z_{V,H}`; kernel generated by `O_Θ(−1)`.
    VAxis,
    /// `Z_D`; kernel generated by `O_X[1]`.
    DAxis,
    /// `Z'₀`; kernel generated by `L₀[1]` and `L₁`.
    AfterFm,
}

impl Regime {
    pub fn name(&self) -> &'static str {
        match self {
            Regime::Origin => "origin",
            Regime::VAxis => "v_axis",
            Regime::DAxis => "d_axis",
            Regime::AfterFm => "after_fm",
        }
    }

    /// Number of kernel generators.
    pub fn rank(&self) -> usize {
        match self {
            Regime::Origin | Regime::AfterFm => 2,
            Regime::VAxis | Regime::DAxis => 1,
        }
    }

    pub fn all() -> [Regime; 4] {
        [Regime::Origin, Regime::VAxis, Regime::DAxis, Regime::AfterFm]
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Accepts both `after_fm` and `after-fm` spellings.
impl FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "origin" => Ok(Regime::Origin),
            "v_axis" => Ok(Regime::VAxis),
            "d_axis" => Ok(Regime::DAxis),
            "after_fm" => Ok(Regime::AfterFm),
            _ => Err(Error::Parse {
                what: "regime",
                input: s.to_string(),
            }),
        }
    }
}

impl Serialize for Regime {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// A kernel object up to isomorphism: multiplicities over the regime's
/// generators (a direct sum of copies of them).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KernelClass {
    regime: Regime,
    mult: Vec<u64>,
}

impl KernelClass {
    pub fn new(regime: Regime, mult: Vec<u64>) -> Result<Self> {
        if mult.len() != regime.rank() {
            return Err(Error::KernelArity {
                regime: regime.name(),
                expected: regime.rank(),
                got: mult.len(),
            });
        }
        Ok(KernelClass { regime, mult })
    }

    pub fn origin(m0: u64, m1: u64) -> Self {
        KernelClass {
            regime: Regime::Origin,
            mult: vec![m0, m1],
        }
    }

    pub fn after_fm(n0: u64, n1: u64) -> Self {
        KernelClass {
            regime: Regime::AfterFm,
            mult: vec![n0, n1],
        }
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.mult
    }

    pub fn is_zero(&self) -> bool {
        self.mult.iter().all(|&m| m == 0)
    }

    /// Componentwise sum; this is the middle term of a split extension.
    pub fn sum(&self, other: &KernelClass) -> Result<KernelClass> {
        if self.regime != other.regime {
            return Err(Error::RegimeMismatch(self.regime.name(), other.regime.name()));
        }
        Ok(KernelClass {
            regime: self.regime,
            mult: self.mult.iter().zip(&other.mult).map(|(a, b)| a + b).collect(),
        })
    }

    fn pair(&self) -> (Rational, Rational) {
        (int(self.mult[0] as i64), int(self.mult[1] as i64))
    }
}

/// A ray `[V : D] = [p : q]` of approach to the origin of the `(V, D)` plane.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RayParam {
    p: Rational,
    q: Rational,
}

impl RayParam {
    pub fn new(p: Rational, q: Rational) -> Result<Self> {
        if p.is_negative() || q.is_negative() || (p.is_zero() && q.is_zero()) {
            return Err(Error::InvalidRay(format!("{p}:{q}")));
        }
        Ok(RayParam { p, q })
    }

    /// The diagonal `V = D`.
    pub fn diagonal() -> Self {
        RayParam {
            p: Rational::one(),
            q: Rational::one(),
        }
    }

    /// The V-coordinate weight.
    pub fn p(&self) -> &Rational {
        &self.p
    }

    /// The D-coordinate weight.
    pub fn q(&self) -> &Rational {
        &self.q
    }

    /// Both coordinates strictly positive.
    pub fn is_interior(&self) -> bool {
        self.p.is_positive() && self.q.is_positive()
    }
}

impl fmt::Display for RayParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.p, self.q)
    }
}

impl FromStr for RayParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (p, q) = s.split_once(':').ok_or_else(|| Error::Parse {
            what: "ray p:q",
            input: s.to_string(),
        })?;
        RayParam::new(parse_rational(p)?, parse_rational(q)?)
    }
}

fn require_regime(k: &KernelClass, regime: Regime) -> Result<()> {
    if k.regime != regime {
        return Err(Error::RegimeMismatch(k.regime.name(), regime.name()));
    }
    if k.is_zero() {
        return Err(Error::ZeroMultiplicity);
    }
    Ok(())
}

/// Limit phase of `O_Θ(−1)^{m₀} ⊕ O_X[1]^{m₁}` as `(V, D) → 0` along `ray`.
///
/// Along `V = tp`, `D = tq` the charge `Z_{V,D}` of such an object is
/// `t(−m₁p + i·m₀q)`, so its phase is constant on the ray.
pub fn limit_phase_origin(k: &KernelClass, ray: &RayParam) -> Result<Phase> {
    require_regime(k, Regime::Origin)?;
    let (m0, m1) = k.pair();
    if m1.is_zero() {
        return Ok(Phase::half());
    }
    if m0.is_zero() {
        return Ok(Phase::one());
    }
    Phase::from_direction(0, -(m1 * &ray.p), m0 * &ray.q)
}

/// Limit phase of `L₀[1]^{n₀} ⊕ L₁^{n₁}` as `(V, D) → 0` along `ray`; the
/// limiting slope is `(n₀q − n₁p)/(n₀q + n₁p)`.
pub fn limit_phase_after_fm(k: &KernelClass, ray: &RayParam) -> Result<Phase> {
    require_regime(k, Regime::AfterFm)?;
    let (n0, n1) = k.pair();
    if n1.is_zero() {
        return Ok(Phase::three_quarters());
    }
    if n0.is_zero() {
        return Ok(Phase::quarter());
    }
    let num = &n0 * &ray.q - &n1 * &ray.p;
    let den = n0 * &ray.q + n1 * &ray.p;
    Phase::from_direction(0, -num, den)
}

/// The constant phase given to every kernel object on an axis.
pub fn fixed_kernel_phase(regime: Regime) -> Result<Phase> {
    match regime {
        Regime::VAxis => Ok(Phase::half()),
        Regime::DAxis => Ok(Phase::one()),
        other => Err(Error::RayDependentRegime(other.name())),
    }
}

/// Phase of any kernel object, dispatching on its regime.
pub fn kernel_phase(k: &KernelClass, ray: &RayParam) -> Result<Phase> {
    match k.regime {
        Regime::Origin => limit_phase_origin(k, ray),
        Regime::AfterFm => limit_phase_after_fm(k, ray),
        axis => {
            if k.is_zero() {
                return Err(Error::ZeroMultiplicity);
            }
            fixed_kernel_phase(axis)
        }
    }
}

/// Checks the weak see-saw property on `0 → k1 → k1 ⊕ k2 → k2 → 0`.
pub fn seesaw_audit(k1: &KernelClass, k2: &KernelClass, ray: &RayParam) -> Result<bool> {
    let k = k1.sum(k2)?;
    let p1 = kernel_phase(k1, ray)?;
    let p2 = kernel_phase(k2, ray)?;
    let p = kernel_phase(&k, ray)?;
    Ok((p1 <= p && p <= p2) || (p2 <= p && p <= p1))
}

/// True iff the phases strictly decrease, as the factors of a
/// Harder–Narasimhan filtration must.
pub fn hn_audit(phases: &[Phase]) -> bool {
    phases.windows(2).all(|w| w[0] > w[1])
}
