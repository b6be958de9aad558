//! The numerical relative Fourier–Mukai transform, the central charge
//! equation it induces, and the special point reached from the origin.
//!
//! Write `(n, c, d, s) = (ch₀, Θ·ch₁, f·ch₁, ch₂)`. The transform sends this
//! to `ch₀ = d`, `f·ch₁ = −n`, `Θ·ch₁ = s − (e/2)d + en`,
//! `ch₂ = −c − ed + (e/2)n`.
//!
//! A charge `Z_{ω,B}` with `ω = R_ω(Θ + (D_ω + e)f)` and
//! `B = R_B(Θ + (D_B + e)f)` becomes, after dividing its imaginary part by
//! `R_ω` and subtracting `R_B/R_ω` times it from its real part,
//!
//! ```text
//! Z'(E) = −s + L·d + M·n + i(c + (D_ω + e)d + N·n)
//! ```
//!
//! which is rational in the parameters. The central charge equation
//! `Z_{ω',B'}(ΦE) = T·Z_{ω,B}(E)` with `T` equivalent to `−i` then reduces
//! to four rational equations solved by [`solve_cce`].

use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::charges::{ChargeValue, FloatCharge};
use crate::divisors::DivisorClass;
use crate::error::{Error, Result};
use crate::lattice::{ChernVector, Surface};
use crate::rational::{frac, int, to_f64, Rational};

impl Surface {
    /// The induced action of the relative Fourier–Mukai transform on the K3.
    pub fn fm_transform(&self, v: &ChernVector) -> Result<ChernVector> {
        self.require_k3()?;
        Ok(self.fm_transform_any(v))
    }

    /// Same formulas for any `e`; used by the plain central charge equation.
    pub(crate) fn fm_transform_any(&self, v: &ChernVector) -> ChernVector {
        let e = self.e_q();
        let half_e = &e / int(2);
        let n = &v.r;
        let c = self.theta_pairing(v);
        let d = self.fiber_pairing(v);
        let theta_deg = &v.s - &half_e * &d + &e * n;
        let fiber_deg = -n.clone();
        let ch2 = -c - &e * &d + &half_e * n;
        let ch1 = self.divisor_from_pairings(&theta_deg, &fiber_deg);
        ChernVector::new(d, ch1.a, ch1.b, ch2)
    }

    /// `Z'₀ = Z^td_{ω'₀,B'₀}` for this surface's `D_α`.
    pub fn eval_z0(&self, v: &ChernVector) -> Result<ChargeValue> {
        self.eval(
            &crate::charges::ChargeSpec::ToddSpecial {
                d_alpha: self.d_alpha(),
            },
            v,
        )
    }
}

/// Coefficients of the rescaled charge `Z'`; see the module docs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RescaledChargeCoeffs {
    pub l: Rational,
    pub m: Rational,
    pub n: Rational,
    /// The f-coefficient `D_ω + e` of the imaginary part.
    pub d_shift: Rational,
}

impl RescaledChargeCoeffs {
    pub fn eval(&self, surface: &Surface, v: &ChernVector) -> ChargeValue {
        let c = surface.theta_pairing(v);
        let d = surface.fiber_pairing(v);
        let re = -v.s.clone() + &self.l * &d + &self.m * &v.r;
        let im = c + &self.d_shift * &d + &self.n * &v.r;
        ChargeValue::new(re, im)
    }
}

/// `L = R_B(D_B − D_ω)`, `M = V_ω − V_B + R_B²(D_B + D_ω + e)`,
/// `N = −R_B(D_B + D_ω + e)` with `V_B = R_B²(D_B + e/2)`.
pub fn rescaled_charge_coeffs(
    d_omega: &Rational,
    v_omega: &Rational,
    r_b: &Rational,
    d_b: &Rational,
    e: i64,
) -> RescaledChargeCoeffs {
    let e = int(e);
    let half_e = &e / int(2);
    let r_b2 = r_b * r_b;
    let v_b = &r_b2 * (d_b + &half_e);
    let sum = d_b + d_omega + &e;
    RescaledChargeCoeffs {
        l: r_b * (d_b - d_omega),
        m: v_omega - v_b + &r_b2 * &sum,
        n: -(r_b * &sum),
        d_shift: d_omega + &e,
    }
}

/// Which charge the transformed side uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// `−ch₂^{B'} + V_{ω'}ch₀^{B'} + iω'·ch₁^{B'}`
    Plain,
    /// `−ch₂^{B'} + (V_{ω'} − 1)ch₀^{B'} + iω'·ch₁^{B'}`
    Todd,
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Variant::Plain),
            "td" | "todd" => Ok(Variant::Todd),
            _ => Err(Error::Parse {
                what: "variant",
                input: s.to_string(),
            }),
        }
    }
}

/// Source parameters. `V_ω` is an independent input: it is not tied to
/// `D_ω` through a chosen `R_ω`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CceInput {
    pub d_omega: Rational,
    pub v_omega: Rational,
    pub r_b: Rational,
    pub d_b: Rational,
    pub e: i64,
    pub variant: Variant,
}

impl CceInput {
    fn half_e(&self) -> Rational {
        frac(self.e, 2)
    }
}

/// Target parameters `(D_{ω'}, R_{B'}, V_{ω'}, R_{B'}D_{B'})` and the
/// matrix `T`, which exists only when both `R_ω` and `R_{ω'}` are real.
///
/// `D_{B'}` is never formed on its own, since `R_{B'}` may vanish;
/// `B' = R_{B'}Θ + (R_{B'}D_{B'} + eR_{B'})f`.
#[derive(Debug, Clone, PartialEq)]
pub struct CceOutput {
    pub d_omega_p: Rational,
    pub r_b_p: Rational,
    pub v_omega_p: Rational,
    pub rbp_dbp: Rational,
    pub t: Option<[[f64; 2]; 2]>,
}

impl CceOutput {
    pub fn t_exists(&self) -> bool {
        self.t.is_some()
    }

    /// `B'` as a divisor class.
    pub fn b_prime(&self, e: i64) -> DivisorClass {
        DivisorClass::new(self.r_b_p.clone(), &self.rbp_dbp + &self.r_b_p * int(e))
    }

    /// The four exact values, in output order.
    pub fn values(&self) -> [&Rational; 4] {
        [&self.d_omega_p, &self.r_b_p, &self.v_omega_p, &self.rbp_dbp]
    }
}

impl Serialize for CceOutput {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("CceOutput", 6)?;
        st.serialize_field("D_omega_p", &self.d_omega_p.to_string())?;
        st.serialize_field("R_B_p", &self.r_b_p.to_string())?;
        st.serialize_field("V_omega_p", &self.v_omega_p.to_string())?;
        st.serialize_field("RBp_DBp", &self.rbp_dbp.to_string())?;
        st.serialize_field("T", &self.t)?;
        st.serialize_field("T_exists", &self.t_exists())?;
        st.end()
    }
}

fn check_input(input: &CceInput) -> Result<()> {
    Surface::new(input.e, 0)?;
    if input.variant == Variant::Todd && input.e != 2 {
        return Err(Error::NotK3(input.e));
    }
    Ok(())
}

/// Solves the central charge equation for `(ω', B')`:
///
/// ```text
/// D_{ω'}         = V_ω + R_B²(D_ω + e/2)
/// R_{B'}         = −R_B(2D_ω + e)/(2D_{ω'} + e)
/// V_{ω'}         = D_ω − R_B²(2D_ω + e)²/(2(2D_{ω'} + e))   (+1 for Todd)
/// R_{B'}D_{B'}   = R_B D_B + (e/2)(R_B − R_{B'} − 1)
/// ```
pub fn solve_cce(input: &CceInput) -> Result<CceOutput> {
    check_input(input)?;
    let e = int(input.e);
    let half_e = input.half_e();
    let two = int(2);
    let r_b2 = &input.r_b * &input.r_b;
    let d_p = &input.v_omega + &r_b2 * (&input.d_omega + &half_e);
    let denom = &two * &d_p + &e;
    if denom.is_zero() {
        return Err(Error::SingularDenominator("2D_omega' + e"));
    }
    let k = &two * &input.d_omega + &e;
    let r_p = -(&input.r_b * &k) / &denom;
    let mut v_p = &input.d_omega - &r_b2 * &k * &k / (&two * &denom);
    if input.variant == Variant::Todd {
        v_p += Rational::one();
    }
    let rbp_dbp = &input.r_b * &input.d_b + &half_e * (&input.r_b - &r_p - Rational::one());
    let t = t_matrix(input, &d_p, &r_p, &v_p);
    Ok(CceOutput {
        d_omega_p: d_p,
        r_b_p: r_p,
        v_omega_p: v_p,
        rbp_dbp,
        t,
    })
}

/// `R = √(V/(D + e/2))` when it is real and positive.
fn real_r(v: &Rational, d: &Rational, half_e: &Rational) -> Option<f64> {
    let denom = d + half_e;
    (v.is_positive() && denom.is_positive()).then(|| (to_f64(v) / to_f64(&denom)).sqrt())
}

/// `T = A'⁻¹·J·A` with `A = [[1, −R_B/R_ω], [0, 1/R_ω]]`,
/// `A'⁻¹ = [[1, R_{B'}], [0, R_{ω'}]]` and `J = [[0, 1], [−1, 0]]`
/// (multiplication by `−i` on `(Re, Im)`). `det T = R_{ω'}/R_ω > 0`.
fn t_matrix(input: &CceInput, d_p: &Rational, r_p: &Rational, v_p: &Rational) -> Option<[[f64; 2]; 2]> {
    let half_e = input.half_e();
    let r_w = real_r(&input.v_omega, &input.d_omega, &half_e)?;
    let r_wp = real_r(v_p, d_p, &half_e)?;
    let r_b = to_f64(&input.r_b);
    let r_p = to_f64(r_p);
    let a = [[1.0, -r_b / r_w], [0.0, 1.0 / r_w]];
    let a_inv_p = [[1.0, r_p], [0.0, r_wp]];
    let j = [[0.0, 1.0], [-1.0, 0.0]];
    Some(mat_mul(&mat_mul(&a_inv_p, &j), &a))
}

fn mat_mul(x: &[[f64; 2]; 2], y: &[[f64; 2]; 2]) -> [[f64; 2]; 2] {
    let mut out = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        }
    }
    out
}

/// Rescaled coefficients of the target charge at `(ω', B')`.
pub fn target_coeffs(input: &CceInput, output: &CceOutput) -> RescaledChargeCoeffs {
    let e = int(input.e);
    let half_e = input.half_e();
    let r_p = &output.r_b_p;
    let d_p = &output.d_omega_p;
    let mut v_eff = output.v_omega_p.clone();
    if input.variant == Variant::Todd {
        v_eff -= Rational::one();
    }
    RescaledChargeCoeffs {
        l: &output.rbp_dbp - r_p * d_p,
        m: v_eff + r_p * r_p * (d_p + &half_e),
        n: -(&output.rbp_dbp + r_p * (d_p + &e)),
        d_shift: d_p + &e,
    }
}

/// Outcome of checking a proposed solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CceResidual {
    /// `Z''(Φv) = −i·Z'(v)` holds exactly on the four basis vectors.
    pub exact_zero: bool,
    /// Largest relative deviation of `Z_{ω',B'}(Φv) = T·Z_{ω,B}(v)` over the
    /// basis, when `T` exists.
    pub float_residual: Option<f64>,
}

pub fn cce_residual(input: &CceInput, output: &CceOutput) -> Result<CceResidual> {
    check_input(input)?;
    let surface = Surface::new(input.e, 0)?;
    let source = rescaled_charge_coeffs(&input.d_omega, &input.v_omega, &input.r_b, &input.d_b, input.e);
    let target = target_coeffs(input, output);
    let exact_zero = ChernVector::basis().iter().all(|v| {
        let lhs = target.eval(&surface, &surface.fm_transform_any(v));
        lhs == source.eval(&surface, v).times_minus_i()
    });
    let float_residual = output.t.map(|t| float_residual(input, output, &t, &surface));
    Ok(CceResidual {
        exact_zero,
        float_residual,
    })
}

fn float_residual(input: &CceInput, output: &CceOutput, t: &[[f64; 2]; 2], surface: &Surface) -> f64 {
    let e = input.e as f64;
    let half_e = input.half_e();
    // t exists, so both radicands are positive
    let r_w = real_r(&input.v_omega, &input.d_omega, &half_e).unwrap_or(f64::NAN);
    let r_wp = real_r(&output.v_omega_p, &output.d_omega_p, &half_e).unwrap_or(f64::NAN);
    let source = FloatCharge::from_rdv(
        e,
        r_w,
        to_f64(&input.d_omega),
        to_f64(&input.r_b),
        to_f64(&input.d_b),
        false,
    );
    let target = target_float_charge(input, output, r_wp);
    ChernVector::basis()
        .iter()
        .map(|v| {
            let z = source.eval(e, v);
            let rhs = (t[0][0] * z.re + t[0][1] * z.im, t[1][0] * z.re + t[1][1] * z.im);
            let lhs = target.eval(e, &surface.fm_transform_any(v));
            let dev = (lhs.re - rhs.0).hypot(lhs.im - rhs.1);
            dev / rhs.0.hypot(rhs.1).max(1.0)
        })
        .fold(0.0, f64::max)
}

fn target_float_charge(input: &CceInput, output: &CceOutput, r_wp: f64) -> FloatCharge {
    let e = input.e as f64;
    let d_p = to_f64(&output.d_omega_p);
    let mut coeff = to_f64(&output.v_omega_p);
    if input.variant == Variant::Todd {
        coeff -= 1.0;
    }
    let b = output.b_prime(input.e);
    FloatCharge {
        omega: (r_wp, r_wp * (d_p + e)),
        ch0_coeff: coeff,
        b: (to_f64(&b.a), to_f64(&b.b)),
    }
}

/// The Todd solution from `B = −(Θ + (D_α + 2)f)` on the K3, i.e.
/// [`solve_cce`] at `R_B = −1`, `D_B = D_α`, in closed form:
///
/// ```text
/// D_{ω'} = V + D + 1            R_{B'} = (D + 1)/(D + V + 2)
/// V_{ω'} = (DV − 1)/(D + V + 2) + 1
/// R_{B'}D_{B'} = −(D + 1)/(D + V + 2) − (D_α + 2)
/// ```
pub fn phi_z(d_omega: &Rational, v_omega: &Rational, d_alpha: i64) -> Result<CceOutput> {
    let s = d_omega + v_omega + int(2);
    if s.is_zero() {
        return Err(Error::SingularDenominator("D_omega + V_omega + 2"));
    }
    let input = phi_z_input(d_omega, v_omega, d_alpha);
    let d_p = v_omega + d_omega + Rational::one();
    let r_p = (d_omega + Rational::one()) / &s;
    let v_p = (d_omega * v_omega - Rational::one()) / &s + Rational::one();
    let rbp_dbp = -r_p.clone() - int(d_alpha + 2);
    let t = t_matrix(&input, &d_p, &r_p, &v_p);
    Ok(CceOutput {
        d_omega_p: d_p,
        r_b_p: r_p,
        v_omega_p: v_p,
        rbp_dbp,
        t,
    })
}

/// The [`CceInput`] that [`phi_z`] specializes.
pub fn phi_z_input(d_omega: &Rational, v_omega: &Rational, d_alpha: i64) -> CceInput {
    CceInput {
        d_omega: d_omega.clone(),
        v_omega: v_omega.clone(),
        r_b: -Rational::one(),
        d_b: int(d_alpha),
        e: 2,
        variant: Variant::Todd,
    }
}

/// `ω'₀ = ½(Θ + 3f)` and `B'₀ = ½(Θ + (−2D_α − 3)f)`, the image of the
/// origin `V = D = 0` under [`phi_z`].
pub fn special_point(d_alpha: i64) -> (DivisorClass, DivisorClass) {
    (
        DivisorClass::new(frac(1, 2), frac(3, 2)),
        DivisorClass::new(frac(1, 2), frac(-2 * d_alpha - 3, 2)),
    )
}

/// `Z^td_{ω',B'}(E)` near the special point for a line bundle `E` with
/// `f·ch₁(E) = y` in the kernel class family, as `im_coeff·√im_radicand`
/// and `re`. With `S = D + V + 2`:
///
/// ```text
/// Im = √((D + 1)(V + 1))·(y(D + V) − D)/S
/// Re = ((V − D)y + DV + D)/S
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImRe {
    pub im_coeff: Rational,
    pub im_radicand: Rational,
    pub re: Rational,
}

impl ImRe {
    pub fn im_f64(&self) -> f64 {
        to_f64(&self.im_coeff) * to_f64(&self.im_radicand).sqrt()
    }

    pub fn re_f64(&self) -> f64 {
        to_f64(&self.re)
    }
}

/// `y = 0` gives `L₀`, `y = 1` gives `L₁`.
pub fn imre_formulas(y: u8, d_omega: &Rational, v_omega: &Rational) -> Result<ImRe> {
    if y > 1 {
        return Err(Error::InvalidFiberDegree(y.to_string()));
    }
    for (name, value) in [("D_omega", d_omega), ("V_omega", v_omega)] {
        if !value.is_positive() {
            return Err(Error::NonPositiveParameter {
                name,
                value: value.to_string(),
            });
        }
    }
    let y = int(y as i64);
    let s = d_omega + v_omega + int(2);
    let one = Rational::one();
    Ok(ImRe {
        im_coeff: (&y * (d_omega + v_omega) - d_omega) / &s,
        im_radicand: (d_omega + &one) * (v_omega + &one),
        re: ((v_omega - d_omega) * &y + d_omega * v_omega + d_omega) / &s,
    })
}

/// Floating-point `Z^td` at `phi_z(D, V, D_α)` for real `D, V`, used for
/// trajectories along rays.
pub fn phi_z_charge_f64(d_omega: f64, v_omega: f64, d_alpha: i64) -> FloatCharge {
    let s = d_omega + v_omega + 2.0;
    let d_p = v_omega + d_omega + 1.0;
    let r_p = (d_omega + 1.0) / s;
    let v_p = (d_omega * v_omega - 1.0) / s + 1.0;
    let rbp_dbp = -r_p - (d_alpha as f64 + 2.0);
    let r_wp = (v_p / (d_p + 1.0)).sqrt();
    FloatCharge {
        omega: (r_wp, r_wp * (d_p + 2.0)),
        ch0_coeff: v_p - 1.0,
        b: (r_p, rbp_dbp + 2.0 * r_p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisors::{Positivity, RdvCoords};

    fn k3() -> Surface {
        Surface::k3(0)
    }

    #[test]
    fn fm_examples() {
        let x = k3();
        assert_eq!(
            x.fm_transform(&ChernVector::point()).unwrap(),
            ChernVector::from_ints(0, 0, 1, 0)
        );
        assert_eq!(
            x.fm_transform(&ChernVector::structure_sheaf()).unwrap(),
            ChernVector::from_ints(0, -1, 0, 1)
        );
        assert_eq!(
            x.fm_transform(&ChernVector::from_ints(0, 1, 0, 0)).unwrap(),
            ChernVector::from_ints(1, 0, -1, 0)
        );
        assert_eq!(
            Surface::new(3, 0).unwrap().fm_transform(&ChernVector::point()),
            Err(Error::NotK3(3))
        );
    }

    #[test]
    fn coeff_examples() {
        for da in -2..=3 {
            let c = rescaled_charge_coeffs(&int(0), &int(0), &int(-1), &int(da), 2);
            assert_eq!((c.l, c.m, c.n), (int(-da), int(1), int(da + 2)));
        }
        let c = rescaled_charge_coeffs(&frac(1, 3), &int(5), &int(0), &int(7), 2);
        assert_eq!((c.l, c.m, c.n, c.d_shift), (int(0), int(5), int(0), frac(7, 3)));
        let c = rescaled_charge_coeffs(&int(1), &int(1), &int(-1), &int(0), 2);
        assert_eq!((c.l, c.m, c.n), (int(1), int(3), int(3)));
    }

    #[test]
    fn rescaled_charge_matches_general_charge() {
        // Z' is A·Z with A = [[1, −R_B/R_ω], [0, 1/R_ω]]
        let x = k3();
        let (r_w, d_w, r_b, d_b) = (frac(2, 3), frac(1, 4), frac(-3, 2), frac(1, 5));
        let v_w = RdvCoords::new(r_w.clone(), d_w.clone()).volume(&x);
        let spec = crate::charges::ChargeSpec::GeneralRdv {
            r_omega: r_w.clone(),
            d_omega: d_w.clone(),
            r_b: r_b.clone(),
            d_b: d_b.clone(),
        };
        let c = rescaled_charge_coeffs(&d_w, &v_w, &r_b, &d_b, 2);
        for v in ChernVector::basis() {
            let z = x.eval(&spec, &v).unwrap();
            let zp = c.eval(&x, &v);
            assert_eq!(zp.re, &z.re - &r_b / &r_w * &z.im);
            assert_eq!(zp.im, &z.im / &r_w);
        }
    }

    fn special_input(d_alpha: i64, variant: Variant) -> CceInput {
        CceInput {
            variant,
            ..phi_z_input(&int(0), &int(0), d_alpha)
        }
    }

    #[test]
    fn cce_special_point() {
        for da in -3..=5 {
            let out = solve_cce(&special_input(da, Variant::Todd)).unwrap();
            assert_eq!(out.d_omega_p, int(1));
            assert_eq!(out.r_b_p, frac(1, 2));
            assert_eq!(out.v_omega_p, frac(1, 2));
            assert_eq!(out.rbp_dbp, frac(-2 * da - 5, 2));
            assert!(!out.t_exists());
            let res = cce_residual(&special_input(da, Variant::Todd), &out).unwrap();
            assert!(res.exact_zero);
            let plain = solve_cce(&special_input(da, Variant::Plain)).unwrap();
            assert_eq!(&out.v_omega_p - &plain.v_omega_p, int(1));
            assert_eq!(plain.d_omega_p, out.d_omega_p);
            assert_eq!(plain.r_b_p, out.r_b_p);
            assert_eq!(plain.rbp_dbp, out.rbp_dbp);
        }
    }

    #[test]
    fn cce_perturbed_fails() {
        let input = special_input(0, Variant::Todd);
        let mut out = solve_cce(&input).unwrap();
        out.d_omega_p += frac(1, 100);
        assert!(!cce_residual(&input, &out).unwrap().exact_zero);
    }

    #[test]
    fn cce_with_t_matrix() {
        let input = CceInput {
            d_omega: frac(1, 2),
            v_omega: frac(3, 2),
            r_b: frac(-1, 2),
            d_b: frac(1, 3),
            e: 2,
            variant: Variant::Todd,
        };
        let out = solve_cce(&input).unwrap();
        let res = cce_residual(&input, &out).unwrap();
        assert!(res.exact_zero);
        let t = out.t.unwrap();
        let det = t[0][0] * t[1][1] - t[0][1] * t[1][0];
        assert!(det > 0.0);
        assert!(res.float_residual.unwrap() < 1e-12);
    }

    #[test]
    fn cce_plain_general_e() {
        for e in 1..=4 {
            let input = CceInput {
                d_omega: frac(2, 3),
                v_omega: frac(5, 4),
                r_b: frac(-3, 4),
                d_b: frac(-1, 2),
                e,
                variant: Variant::Plain,
            };
            let out = solve_cce(&input).unwrap();
            let res = cce_residual(&input, &out).unwrap();
            assert!(res.exact_zero, "e = {e}");
            if let Some(r) = res.float_residual {
                assert!(r < 1e-12);
            }
        }
        let todd3 = CceInput {
            e: 3,
            ..special_input(0, Variant::Todd)
        };
        assert_eq!(solve_cce(&todd3), Err(Error::NotK3(3)));
    }

    #[test]
    fn cce_singular() {
        let input = CceInput {
            d_omega: int(0),
            v_omega: int(-1),
            r_b: int(0),
            d_b: int(0),
            e: 2,
            variant: Variant::Plain,
        };
        assert!(matches!(solve_cce(&input), Err(Error::SingularDenominator(_))));
    }

    #[test]
    fn phi_z_examples() {
        let out = phi_z(&int(0), &int(0), 3).unwrap();
        assert_eq!(
            out.values(),
            [&int(1), &frac(1, 2), &frac(1, 2), &frac(-11, 2)]
        );
        let out = phi_z(&int(1), &int(1), 0).unwrap();
        assert_eq!(out.values(), [&int(3), &frac(1, 2), &int(1), &frac(-5, 2)]);
        assert!(out.t_exists());
        assert!(phi_z(&int(-1), &int(-1), 0).is_err());
        let (d, v) = (frac(2, 7), frac(5, 3));
        let closed = phi_z(&d, &v, -2).unwrap();
        let solved = solve_cce(&phi_z_input(&d, &v, -2)).unwrap();
        assert_eq!(closed.values(), solved.values());
    }

    #[test]
    fn special_point_values() {
        let x = k3();
        let (w, b) = special_point(0);
        assert_eq!(w, DivisorClass::new(frac(1, 2), frac(3, 2)));
        assert_eq!(b, DivisorClass::new(frac(1, 2), frac(-3, 2)));
        assert_eq!(x.positivity_class(&w), Positivity::Ample);
        assert_eq!(x.to_rdv(&w).unwrap(), RdvCoords::new(frac(1, 2), int(1)));
        let out = phi_z(&int(0), &int(0), 4).unwrap();
        assert_eq!(out.b_prime(2), special_point(4).1);
    }

    #[test]
    fn z0_values() {
        for da in -3..=5 {
            let x = Surface::k3(da);
            let [l0, l1] = x.after_fm_line_bundles();
            assert!(x.eval_z0(&l0).unwrap().is_zero());
            assert!(x.eval_z0(&l1).unwrap().is_zero());
            assert_eq!(x.eval_z0(&ChernVector::point()).unwrap(), ChargeValue::new(int(-1), int(0)));
        }
        assert!(Surface::new(3, 0).unwrap().eval_z0(&ChernVector::point()).is_err());
    }

    #[test]
    fn imre_examples() {
        let (d, v) = (frac(1, 3), frac(1, 2));
        let s = &d + &v + int(2);
        let r0 = imre_formulas(0, &d, &v).unwrap();
        assert_eq!(r0.re, (&d * &v + &d) / &s);
        assert_eq!(r0.im_coeff, -d.clone() / &s);
        let r1 = imre_formulas(1, &d, &v).unwrap();
        assert_eq!(r1.re, (&d * &v + &v) / &s);
        assert!(imre_formulas(2, &d, &v).is_err());
        assert!(imre_formulas(0, &int(0), &v).is_err());
    }

    #[test]
    fn imre_matches_float_charge() {
        for da in [-1, 0, 2] {
            let x = Surface::k3(da);
            let [l0, l1] = x.after_fm_line_bundles();
            for (dd, vv) in [(0.3, 0.7), (1.0, 1.0), (2.5, 0.1)] {
                let z = phi_z_charge_f64(dd, vv, da);
                let d = crate::rational::parse_rational(&dd.to_string()).unwrap();
                let v = crate::rational::parse_rational(&vv.to_string()).unwrap();
                for (y, l) in [(0, &l0), (1, &l1)] {
                    let f = imre_formulas(y, &d, &v).unwrap();
                    let w = z.eval(2.0, l);
                    assert!((w.re - f.re_f64()).abs() < 1e-10, "re y={y} {dd},{vv}");
                    assert!((w.im - f.im_f64()).abs() < 1e-10, "im y={y} {dd},{vv}");
                }
            }
        }
    }
}
