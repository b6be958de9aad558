//! Divisors `aΘ + bf` and their RDV coordinates `M = R(Θ + (D + e)f)`,
//! `V = M²/2 = R²(D + e/2)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Surface;
use crate::rational::{int, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorClass {
    pub a: Rational,
    pub b: Rational,
}

impl DivisorClass {
    pub fn new(a: Rational, b: Rational) -> Self {
        DivisorClass { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        DivisorClass::new(int(a), int(b))
    }

    pub fn zero() -> Self {
        DivisorClass::from_ints(0, 0)
    }

    /// The section class Θ.
    pub fn theta() -> Self {
        DivisorClass::from_ints(1, 0)
    }

    /// The fiber class f.
    pub fn fiber() -> Self {
        DivisorClass::from_ints(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, o: DivisorClass) -> DivisorClass {
        DivisorClass::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, o: DivisorClass) -> DivisorClass {
        DivisorClass::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass::new(-self.a, -self.b)
    }
}

impl Mul<&Rational> for DivisorClass {
    type Output = DivisorClass;
    fn mul(self, k: &Rational) -> DivisorClass {
        DivisorClass::new(self.a * k, self.b * k)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.a, self.b)
    }
}

impl FromStr for DivisorClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(':') {
            Some((a, b)) if !b.contains(':') => {
                Ok(DivisorClass::new(parse_rational(a)?, parse_rational(b)?))
            }
            _ => Err(Error::Parse {
                what: "divisor a:b",
                input: s.to_string(),
            }),
        }
    }
}

impl Serialize for DivisorClass {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DivisorClass {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// RDV coordinates `(R, D)` of a divisor with nonzero Θ-coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RdvCoords {
    pub r: Rational,
    pub d: Rational,
}

impl RdvCoords {
    pub fn new(r: Rational, d: Rational) -> Self {
        RdvCoords { r, d }
    }

    /// `V = R²(D + e/2)`.
    pub fn volume(&self, surface: &Surface) -> Rational {
        &self.r * &self.r * (&self.d + surface.e_q() / int(2))
    }
}

impl fmt::Display for RdvCoords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.r, self.d)
    }
}

impl FromStr for RdvCoords {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let d: DivisorClass = s.parse().map_err(|_| Error::Parse {
            what: "RDV coordinates R:D",
            input: s.to_string(),
        })?;
        Ok(RdvCoords::new(d.a, d.b))
    }
}

/// Where a divisor sits relative to the ample cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Positivity {
    Ample,
    NefNotAmple,
    NotNef,
}

impl Surface {
    pub fn to_rdv(&self, d: &DivisorClass) -> Result<RdvCoords> {
        if d.a.is_zero() {
            return Err(Error::NoRdvForm(d.to_string()));
        }
        Ok(RdvCoords::new(d.a.clone(), &d.b / &d.a - self.e_q()))
    }

    pub fn from_rdv(&self, m: &RdvCoords) -> DivisorClass {
        DivisorClass::new(m.r.clone(), &m.r * (&m.d + self.e_q()))
    }

    /// `V = d²/2`.
    pub fn volume(&self, d: &DivisorClass) -> Rational {
        self.intersect(d, d) / int(2)
    }

    /// `Θ·d`, which equals `R·D` in RDV coordinates.
    pub fn theta_degree(&self, d: &DivisorClass) -> Rational {
        self.intersect(&DivisorClass::theta(), d)
    }

    /// `M·W = R_M R_W (D_M + D_W + e)`.
    pub fn rdv_product(&self, m: &RdvCoords, w: &RdvCoords) -> Rational {
        &m.r * &w.r * (&m.d + &w.d + self.e_q())
    }

    /// Ampleness test on span{Θ, f}.
    ///
    /// For `a > 0` the only curve that can pair non-positively with
    /// `aΘ + bf` is Θ itself, so the divisor is ample iff `b/a > e` and nef
    /// iff `b/a ≥ e`. Multiples of f with `b ≥ 0` are nef but never ample,
    /// and anything with `a < 0` meets f negatively.
    pub fn positivity_class(&self, d: &DivisorClass) -> Positivity {
        if d.a.is_positive() {
            let slope = &d.b / &d.a;
            match slope.cmp(&self.e_q()) {
                std::cmp::Ordering::Greater => Positivity::Ample,
                std::cmp::Ordering::Equal => Positivity::NefNotAmple,
                std::cmp::Ordering::Less => Positivity::NotNef,
            }
        } else if d.a.is_zero() {
            if d.b.is_negative() {
                Positivity::NotNef
            } else {
                Positivity::NefNotAmple
            }
        } else {
            Positivity::NotNef
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn omega0() -> DivisorClass {
        DivisorClass::new(frac(1, 2), frac(3, 2))
    }

    #[test]
    fn rdv_of_known_divisors() {
        let x = Surface::k3(0);
        assert_eq!(x.to_rdv(&omega0()).unwrap(), RdvCoords::new(frac(1, 2), int(1)));
        assert_eq!(
            x.to_rdv(&DivisorClass::from_ints(1, 2)).unwrap(),
            RdvCoords::new(int(1), int(0))
        );
        assert_eq!(
            x.to_rdv(&DivisorClass::theta()).unwrap(),
            RdvCoords::new(int(1), int(-2))
        );
        assert!(matches!(
            x.to_rdv(&DivisorClass::fiber()),
            Err(Error::NoRdvForm(_))
        ));
    }

    #[test]
    fn volumes() {
        let x = Surface::k3(0);
        assert_eq!(x.volume(&omega0()), frac(1, 2));
        assert_eq!(x.volume(&DivisorClass::from_ints(1, 2)), int(1));
        assert_eq!(x.volume(&DivisorClass::fiber()), int(0));
        let rdv = x.to_rdv(&omega0()).unwrap();
        assert_eq!(rdv.volume(&x), frac(1, 2));
    }

    #[test]
    fn theta_degrees() {
        let x = Surface::k3(0);
        assert_eq!(x.theta_degree(&omega0()), frac(1, 2));
        assert_eq!(x.theta_degree(&DivisorClass::from_ints(1, 2)), int(0));
        assert_eq!(x.theta_degree(&DivisorClass::from_ints(1, 3)), int(1));
    }

    #[test]
    fn rdv_products() {
        let x = Surface::k3(0);
        let h = RdvCoords::new(int(1), int(0));
        let w = RdvCoords::new(frac(1, 2), int(1));
        let t = RdvCoords::new(int(1), int(-2));
        assert_eq!(x.rdv_product(&h, &w), frac(3, 2));
        assert_eq!(x.rdv_product(&t, &t), int(-2));
        assert_eq!(x.rdv_product(&h, &h), int(2));
    }

    #[test]
    fn positivity() {
        let x = Surface::k3(0);
        let p = |a: Rational, b: Rational| x.positivity_class(&DivisorClass::new(a, b));
        assert_eq!(p(int(1), frac(9, 2)), Positivity::Ample);
        assert_eq!(p(int(1), int(2)), Positivity::NefNotAmple);
        assert_eq!(p(int(1), int(1)), Positivity::NotNef);
        assert_eq!(p(int(0), int(3)), Positivity::NefNotAmple);
        assert_eq!(p(int(0), int(0)), Positivity::NefNotAmple);
        assert_eq!(p(int(0), int(-1)), Positivity::NotNef);
        assert_eq!(p(int(-1), int(10)), Positivity::NotNef);
        assert_eq!(x.positivity_class(&omega0()), Positivity::Ample);
    }

    #[test]
    fn string_forms() {
        let d: DivisorClass = "1/2:-3/2".parse().unwrap();
        assert_eq!(d, DivisorClass::new(frac(1, 2), frac(-3, 2)));
        assert_eq!(d.to_string(), "1/2:-3/2");
        let r: RdvCoords = "1/2:1".parse().unwrap();
        assert_eq!(r.to_string(), "1/2:1");
        assert!("1:2:3".parse::<DivisorClass>().is_err());
    }
}
