//! The built-in verification suite behind `ellstab selftest`.
//!
//! Each check recomputes one family of constants or one property sweep and
//! reports pass or fail with a short detail line. Random draws come from a
//! seeded ChaCha stream, so reports are reproducible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::charges::{
    fixed_kernel_phase, kernel_phase, limit_phase_after_fm, limit_phase_origin, seesaw_audit,
    ChargeValueF64, KernelClass, Phase, RayParam, Regime,
};
use crate::divisors::{DivisorClass, Positivity, RdvCoords};
use crate::error::Result;
use crate::fm::{cce_residual, imre_formulas, phi_z, phi_z_charge_f64, phi_z_input, solve_cce, special_point, CceInput, Variant};
use crate::inequalities::hit_family_feasible;
use crate::lattice::{ChernVector, Surface};
use crate::rational::{frac, int, Rational};

pub const DEFAULT_SEED: u64 = 0x05ee_de11;
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub id: u8,
    pub anchor: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

type Check = fn(&Surface, &mut ChaCha8Rng) -> Result<std::result::Result<String, String>>;

const CHECKS: [(&str, Check); 12] = [
    ("kernel-annihilation", kernel_annihilation),
    ("kernel-bruteforce", kernel_bruteforce),
    ("limit-phases", limit_phases),
    ("central-charge-equation", central_charge_equation),
    ("special-point", special_point_check),
    ("euler-characteristics", euler_characteristics),
    ("fm-isometry", fm_isometry),
    ("hit-family", hit_family),
    ("sharp-bg-tightness", sharp_bg),
    ("hodge-index", hodge_index),
    ("seesaw-mediant", seesaw_mediant),
    ("positivity-trichotomy", positivity),
];

/// Runs every check on `surface` (whose `e` should be 2) with the default
/// tolerance.
pub fn run_selftest(surface: &Surface, seed: u64) -> Report {
    run_selftest_with_tol(surface, seed, DEFAULT_TOL)
}

/// As [`run_selftest`]; `tol` bounds the float cross-check of the Im/Re
/// closed forms.
pub fn run_selftest_with_tol(surface: &Surface, seed: u64, tol: f64) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks: Vec<CheckResult> = CHECKS
        .iter()
        .enumerate()
        .map(|(i, (anchor, check))| {
            let (passed, detail) = match check(surface, &mut rng) {
                Ok(Ok(d)) => (true, d),
                Ok(Err(d)) => (false, d),
                Err(e) => (false, e.to_string()),
            };
            CheckResult {
                id: i as u8 + 1,
                anchor,
                passed,
                detail,
            }
        })
        .collect();
    let (passed, detail) = match imre_cross_check(surface, tol) {
        Ok(Ok(d)) => (true, d),
        Ok(Err(d)) => (false, d),
        Err(e) => (false, e.to_string()),
    };
    checks.push(CheckResult {
        id: CHECKS.len() as u8 + 1,
        anchor: "imre-limit-formulas",
        passed,
        detail,
    });
    Report {
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

fn verdict(ok: bool, detail: String) -> Result<std::result::Result<String, String>> {
    Ok(if ok { Ok(detail) } else { Err(detail) })
}

/// Uniform draw from `{lo/den, …, hi/den}`.
fn rand_q(rng: &mut ChaCha8Rng, lo: i64, hi: i64, den: i64) -> Rational {
    frac(rng.gen_range(lo..=hi), den)
}

fn rand_vector(rng: &mut ChaCha8Rng) -> ChernVector {
    let mut c = || {
        let den = rng.gen_range(1..=6);
        rand_q(rng, -40, 40, den)
    };
    ChernVector::new(c(), c(), c(), c())
}

fn kernel_annihilation(s: &Surface, _: &mut ChaCha8Rng) -> Result<std::result::Result<String, String>> {
    for da in -3..=5 {
        let x = s.with_d_alpha(da);
        for l in x.after_fm_line_bundles() {
            let z = x.eval_z0(&l)?;
            if !z.is_zero() {
                return verdict(false, format!("Z'0({l}) = {z} at D_alpha = {da}"));
            }
        }
    }
    verdict(true, "Z'0(L0) = Z'0(L1) = 0 for D_alpha in [-3, 5]".into())
}

fn kernel_bruteforce(s: &Surface, _: &mut ChaCha8Rng) -> Result<std::result::Result<String, String>> {
    for da in -3..=5i64 {
        let x = s.with_d_alpha(da);
        let found = x.classify_kernel_after_fm_bruteforce(da.unsigned_abs() + 8)?;
        let basis = x.classify_kernel(Regime::AfterFm)?;
        let expected = vec![basis.generators[0].shift(), basis.generators[1].clone()];
        if found.truncated || found.classes != expected {
            return verdict(false, format!("D_alpha = {da}: found {:?}", found.classes));
        }
    }
    verdict(true, "brute force recovers {L0, L1} for D_alpha in [-3, 5]".into())
}

fn limit_phases(s: &Surface, _: &mut ChaCha8Rng) -> Result<std::result::Result<String, String>> {
    s.require_k3()?;
    let diag = RayParam::diagonal();
    let exact = [
        (limit_phase_origin(&KernelClass::origin(1, 0), &diag)?, frac(1, 2)),
        (limit_phase_origin(&KernelClass::origin(0, 1), &diag)?, int(1)),
        (fixed_kernel_phase(Regime::VAxis)?, frac(1, 2)),
        (fixed_kernel_phase(Regime::DAxis)?, int(1)),
        (limit_phase_after_fm(&KernelClass::after_fm(1, 0), &diag)?, frac(3, 4)),
        (limit_phase_after_fm(&KernelClass::after_fm(0, 1), &diag)?, frac(1, 4)),
    ];
    for (p, want) in &exact {
        if p.exact_fraction().as_ref() != Some(want) {
            return verdict(false, format!("phase {p} != {want}"));
        }
    }
    let rays = [RayParam::diagonal(), RayParam::new(int(3), int(1))?, RayParam::new(int(1), int(2))?];
    let mut worst: f64 = 0.0;
    for ray in &rays {
        for (n0, n1) in [(1, 0), (0, 1), (1, 1), (2, 1), (1, 3)] {
            let k = KernelClass::after_fm(n0, n1);
            let target = limit_phase_after_fm(&k, ray)?.approx();
            worst = worst.max((extrapolated_after_fm_phase(s, &k, ray)? - target).abs());
        }
    }
    verdict(
        worst < 1e-4,
        format!("exact limits match; worst extrapolation gap {worst:.2e}"),
    )
}

/// Phase of `Z^td_{σ'}` on an after-FM kernel class at `D = t·q, V = t·p`,
/// extrapolated linearly to `t = 0` from `t = 10⁻⁵, 10⁻⁶`.
fn extrapolated_after_fm_phase(s: &Surface, k: &KernelClass, ray: &RayParam) -> Result<f64> {
    let [l0, l1] = s.after_fm_line_bundles();
    let m = k.multiplicities();
    let class = l0.shift() * &int(m[0] as i64) + l1 * &int(m[1] as i64);
    let (p, q) = (crate::rational::to_f64(ray.p()), crate::rational::to_f64(ray.q()));
    let scale = p.max(q);
    let at = |t: f64| -> f64 {
        let z: ChargeValueF64 = phi_z_charge_f64(t * q / scale, t * p / scale, s.d_alpha()).eval(2.0, &class);
        z.phase()
    };
    let (a, b) = (at(1e-5), at(1e-6));
    Ok((10.0 * b - a) / 9.0)
}

fn central_charge_equation(s: &Surface, rng: &mut ChaCha8Rng) -> Result<std::result::Result<String, String>> {
    s.require_k3()?;
    let mut with_t = 0;
    let mut worst: f64 = 0.0;
    for i in 0..200 {
        let input = CceInput {
            d_omega: rand_q(rng, 1, 36, 12),
            v_omega: rand_q(rng, 1, 36, 12),
            r_b: rand_q(rng, -16, -2, 8),
            d_b: rand_q(rng, -24, 24, 12),
            e: s.e(),
            variant: if i % 2 == 0 { Variant::Todd } else { Variant::Plain },
        };
        let out = solve_cce(&input)?;
        let res = cce_residual(&input, &out)?;
        if !res.exact_zero {
            return verdict(false, format!("exact residual nonzero for {input:?}"));
        }
        if let Some(r) = res.float_residual {
            with_t += 1;
            worst = worst.max(r);
        }
        if input.variant == Variant::Todd {
            let closed = phi_z(&input.d_omega, &input.v_omega, 0)?;
            let solved = solve_cce(&phi_z_input(&input.d_omega, &input.v_omega, 0))?;
            if closed.values() != solved.values() {
                return verdict(false, "closed-form specialization disagrees".into());
            }
        }
    }
    verdict(
        worst < 1e-9,
        format!("200 draws exact; T existed for {with_t}, worst float residual {worst:.2e}"),
    )
}

fn special_point_check(s: &Surface, _: &mut ChaCha8Rng) -> Result<std::result::Result<String, String>> {
    s.require_k3()?;
    for da in -3..=5 {
        let out = phi_z(&int(0), &int(0), da)?;
        let want = [int(1), frac(1, 2), frac(1, 2), frac(-2 * da - 5, 2)];
        if out.values() != [&want[0], &want[1], &want[2], &want[3]] {
            return verdict(false, format!("phi_Z(0, 0, {da}) = {:?}", out.values()));
        }
        if out.b_prime(2) != special_point(da).1 {
            return verdict(false, format!("B' mismatch at D_alpha = {da}"));
        }
    }
    let (w, _) = special_point(s.d_alpha());
    let ok = s.to_rdv(&w)? == RdvCoords::new(frac(1, 2), int(1)) && s.positivity_class(&w) == Positivity::Ample;
    verdict(ok, "omega'0 = (Theta + 3f)/2 is ample with RDV (1/2, 1)".into())
}

fn euler_characteristics(s: &Surface, _: &mut ChaCha8Rng) -> Result<std::result::Result<String, String>> {
    for i in -5..=5 {
        let o = s.ch_section_sheaf(i)?;
        let chi = s.euler_characteristic(&o, &o)?;
        if chi != int(2) {
            return verdict(false, format!("chi(O_Theta({i}), O_Theta({i})) = {chi}"));
        }
    }
    let chi = s.euler_characteristic(&ChernVector::structure_sheaf(), &s.ch_section_sheaf(-1)?)?;
    verdict(chi == int(0), format!("chi(O_X, O_Theta(-1)) = {chi}"))
}

fn fm_isometry(s: &Surface, rng: &mut ChaCha8Rng) -> Result<std::result::Result<String, String>> {
    let basis = ChernVector::basis();
    let mut pairs: Vec<(ChernVector, ChernVector)> = Vec::new();
    for v in &basis {
        for w in &basis {
            pairs.push((v.clone(), w.clone()));
        }
    }
    for _ in 0..500 {
        pairs.push((rand_vector(rng), rand_vector(rng)));
    }
    for (v, w) in &pairs {
        let before = s.euler_characteristic(v, w)?;
        let after = s.euler_characteristic(&s.fm_transform(v)?, &s.fm_transform(w)?)?;
        if before != after {
            return verdict(false, format!("chi({v}, {w}) = {before} but {after} after FM"));
        }
    }
    verdict(true, format!("{} pairs preserved", pairs.len()))
}

fn hit_family(_: &Surface, _: &mut ChaCha8Rng) -> Result<std::result::Result<String, String>> {
    for k in -24..=32 {
        let y = frac(k, 8);
        let grid_ok = (-40..=40).all(|j| {
            let a = frac(j, 4);
            &a * &a + int(2) * &y * &a + &y >= int(0)
        });
        if grid_ok != hit_family_feasible(&y) {
            return verdict(false, format!("disagreement at y = {y}"));
        }
    }
    verdict(true, "feasible exactly on [0, 1] for y in {-3, -3 + 1/8, ..., 4}".into())
}

fn sharp_bg(s: &Surface, _: &mut ChaCha8Rng) -> Result<std::result::Result<String, String>> {
    let zero = DivisorClass::zero();
    let o = s.bg_sharp(&ChernVector::structure_sheaf(), &zero)?;
    let l1 = s.bg_sharp(&s.after_fm_line_bundles()[1], &zero)?;
    let two = s.bg_sharp(&ChernVector::from_ints(2, 0, 0, 0), &zero)?;
    verdict(
        o.slack == int(0) && l1.slack == int(0) && !two.holds && two.slack == frac(-3, 2),
        format!("slacks: O_X {}, L1 {}, (2,0,0,0) {}", o.slack, l1.slack, two.slack),
    )
}

fn hodge_index(s: &Surface, rng: &mut ChaCha8Rng) -> Result<std::result::Result<String, String>> {
    let e = int(s.e());
    for _ in 0..1000 {
        let h_a = rand_q(rng, 1, 24, 4);
        let h_b = &h_a * (&e + rand_q(rng, 1, 40, 8));
        let h = DivisorClass::new(h_a.clone(), h_b.clone());
        let den = rng.gen_range(1..=5);
        let c_a = rand_q(rng, -30, 30, den);
        let c_b = (&e * &h_a - &h_b) * &c_a / &h_a;
        let c = DivisorClass::new(c_a, c_b);
        if !s.hodge_index_check(&h, &c)? {
            return verdict(false, format!("c^2 > 0 for H = {h}, c = {c}"));
        }
    }
    verdict(true, "1000 orthogonal classes with c^2 <= 0".into())
}

fn seesaw_mediant(_: &Surface, rng: &mut ChaCha8Rng) -> Result<std::result::Result<String, String>> {
    let mut strict = 0;
    for regime in Regime::all() {
        for _ in 0..1000 {
            let ray = loop {
                let (p, q) = (rand_q(rng, 0, 20, 4), rand_q(rng, 0, 20, 4));
                if let Ok(r) = RayParam::new(p, q) {
                    break r;
                }
            };
            let draw = |rng: &mut ChaCha8Rng| loop {
                let m: Vec<u64> = (0..regime.rank()).map(|_| rng.gen_range(0..=6)).collect();
                if m.iter().any(|&x| x > 0) {
                    return KernelClass::new(regime, m);
                }
            };
            let (k1, k2) = (draw(rng)?, draw(rng)?);
            if !seesaw_audit(&k1, &k2, &ray)? {
                return verdict(false, format!("see-saw fails for {k1:?} + {k2:?} on {ray}"));
            }
            if regime == Regime::Origin && ray.is_interior() {
                let m = k1.multiplicities();
                if m[0] > 0 && m[1] > 0 {
                    let p = kernel_phase(&k1, &ray)?;
                    if !(p > Phase::half() && p < Phase::one()) {
                        return verdict(false, format!("mixed origin phase {p} not in (1/2, 1)"));
                    }
                    strict += 1;
                }
            }
        }
    }
    verdict(true, format!("4000 splits pass; {strict} mixed interior phases strictly inside"))
}

fn positivity(s: &Surface, _: &mut ChaCha8Rng) -> Result<std::result::Result<String, String>> {
    for k in 0..=16 {
        let a = frac(k, 4);
        let class = s.positivity_class(&DivisorClass::new(int(1), a.clone()));
        let ample = class == Positivity::Ample;
        let nef = class != Positivity::NotNef;
        if ample != (a > int(2)) || nef != (a >= int(2)) {
            return verdict(false, format!("Theta + {a}f classified {class:?}"));
        }
    }
    verdict(true, "Theta + af ample iff a > 2, nef iff a >= 2".into())
}

/// Closed forms for `Z^td` on `L₀`, `L₁` near the special point against a
/// direct float evaluation.
fn imre_cross_check(s: &Surface, tol: f64) -> Result<std::result::Result<String, String>> {
    s.require_k3()?;
    let [l0, l1] = s.after_fm_line_bundles();
    let mut worst: f64 = 0.0;
    for dn in 1..=8 {
        for vn in 1..=8 {
            let (d, v) = (frac(dn, 4), frac(vn, 4));
            let z = phi_z_charge_f64(dn as f64 / 4.0, vn as f64 / 4.0, s.d_alpha());
            for (y, l) in [(0u8, &l0), (1, &l1)] {
                let f = imre_formulas(y, &d, &v)?;
                let w = z.eval(2.0, l);
                worst = worst.max((w.re - f.re_f64()).abs()).max((w.im - f.im_f64()).abs());
            }
        }
    }
    verdict(worst <= tol, format!("64 grid points, worst deviation {worst:.2e} (tol {tol:.0e})"))
}
