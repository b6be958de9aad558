use std::cmp::Ordering;

use ellstab::{
    cce_residual, compare_phase, limit_phase_after_fm, limit_phase_origin, phase, phi_z, slope,
    solve_cce, CceInput, ChargeSpec, ChargeValue, ChernVector, DivisorClass, KernelClass,
    RayParam, Rational, RdvCoords, Regime, Slope, Surface, Variant,
};
use ellstab::rational::int;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn q() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=9).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn pos_q() -> impl Strategy<Value = Rational> {
    (1i64..=60, 1i64..=9).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn vector() -> impl Strategy<Value = ChernVector> {
    (q(), q(), q(), q()).prop_map(|(r, a, b, s)| ChernVector::new(r, a, b, s))
}

fn divisor() -> impl Strategy<Value = DivisorClass> {
    (q(), q()).prop_map(|(a, b)| DivisorClass::new(a, b))
}

fn spec() -> impl Strategy<Value = ChargeSpec> {
    prop_oneof![
        (pos_q(), q(), q(), q()).prop_map(|(r_omega, d_omega, r_b, d_b)| ChargeSpec::GeneralRdv {
            r_omega,
            d_omega,
            r_b,
            d_b
        }),
        (pos_q(), q(), q(), q()).prop_map(|(r_omega, d_omega, r_b, d_b)| ChargeSpec::Todd {
            r_omega,
            d_omega,
            r_b,
            d_b
        }),
        (q(), q()).prop_map(|(v, d)| ChargeSpec::RescaledVd { v, d }),
        Just(ChargeSpec::Origin),
        q().prop_map(|v| ChargeSpec::VAxis { v }),
        q().prop_map(|d| ChargeSpec::DAxis { d }),
        (-5i64..=5).prop_map(|d_alpha| ChargeSpec::ToddSpecial { d_alpha }),
    ]
}

fn ray() -> impl Strategy<Value = RayParam> {
    (0i64..=20, 0i64..=20)
        .prop_filter("not both zero", |(p, q)| p + q > 0)
        .prop_map(|(p, q)| RayParam::new(int(p), int(q)).unwrap())
}

fn kernel(regime: Regime) -> impl Strategy<Value = KernelClass> {
    proptest::collection::vec(0u64..=9, regime.rank())
        .prop_filter("nonzero", |m| m.iter().any(|&x| x > 0))
        .prop_map(move |m| KernelClass::new(regime, m).unwrap())
}

fn value() -> impl Strategy<Value = ChargeValue> {
    (q(), q())
        .prop_filter("nonzero", |(re, im)| !(re.is_zero() && im.is_zero()))
        .prop_map(|(re, im)| ChargeValue::new(re, im))
}

proptest! {
    #[test]
    fn charge_is_linear(s in spec(), v in vector(), w in vector()) {
        let x = Surface::k3(0);
        let sum = x.eval(&s, &(&v + &w)).unwrap();
        prop_assert_eq!(sum, x.eval(&s, &v).unwrap() + x.eval(&s, &w).unwrap());
        prop_assert_eq!(x.eval(&s, &v.shift()).unwrap(), -x.eval(&s, &v).unwrap());
    }

    #[test]
    fn phase_is_scale_invariant(z in value(), k in pos_q()) {
        let scaled = ChargeValue::new(&z.re * &k, &z.im * &k);
        prop_assert_eq!(compare_phase(&phase(&z).unwrap(), &phase(&scaled).unwrap()), Ordering::Equal);
    }

    #[test]
    fn phase_order_matches_slope(z in value(), w in value()) {
        prop_assume!(z.im.is_positive() && w.im.is_positive());
        let (Slope::Finite(sz), Slope::Finite(sw)) = (slope(&z).unwrap(), slope(&w).unwrap()) else {
            unreachable!()
        };
        prop_assert_eq!(compare_phase(&phase(&z).unwrap(), &phase(&w).unwrap()), sz.cmp(&sw));
    }

    #[test]
    fn phase_approx_is_monotone(z in value(), w in value()) {
        let (pz, pw) = (phase(&z).unwrap(), phase(&w).unwrap());
        if pz < pw {
            prop_assert!(pz.approx() <= pw.approx() + 1e-12);
        }
    }

    #[test]
    fn mediant_lower_bound(k1 in kernel(Regime::AfterFm), k2 in kernel(Regime::AfterFm), r in ray()) {
        let p1 = limit_phase_after_fm(&k1, &r).unwrap();
        let p2 = limit_phase_after_fm(&k2, &r).unwrap();
        let p = limit_phase_after_fm(&k1.sum(&k2).unwrap(), &r).unwrap();
        let lo = p1.clone().min(p2.clone());
        prop_assert!(p >= lo);
        if p1 != p2 && r.is_interior() {
            prop_assert!(p > lo);
        }
        prop_assert!(p >= ellstab::Phase::quarter() && p <= ellstab::Phase::three_quarters());
    }

    #[test]
    fn origin_mixed_is_strict(m0 in 1u64..=9, m1 in 1u64..=9, p in 1i64..=20, qq in 1i64..=20) {
        let r = RayParam::new(int(p), int(qq)).unwrap();
        let ph = limit_phase_origin(&KernelClass::origin(m0, m1), &r).unwrap();
        prop_assert!(ph > ellstab::Phase::half() && ph < ellstab::Phase::one());
    }

    #[test]
    fn seesaw_holds(k1 in kernel(Regime::Origin), k2 in kernel(Regime::Origin), r in ray()) {
        prop_assert!(ellstab::seesaw_audit(&k1, &k2, &r).unwrap());
    }

    #[test]
    fn hodge_index_on_orthogonal_classes(h_a in pos_q(), k in pos_q(), t in q()) {
        let x = Surface::k3(0);
        let h = DivisorClass::new(h_a.clone(), &h_a * (Rational::from_integer(2.into()) + &k));
        // H·(Θ − k f) = h_a(−2 + 2 + k − k) = 0
        let c = DivisorClass::new(t.clone(), -(&t * &k));
        prop_assert!(x.hodge_index_check(&h, &c).unwrap());
    }

    #[test]
    fn fm_is_an_isometry(v in vector(), w in vector()) {
        let x = Surface::k3(0);
        let (fv, fw) = (x.fm_transform(&v).unwrap(), x.fm_transform(&w).unwrap());
        prop_assert_eq!(x.euler_characteristic(&v, &w).unwrap(), x.euler_characteristic(&fv, &fw).unwrap());
    }

    #[test]
    fn mukai_pairing_is_minus_chi(v in vector(), w in vector()) {
        let x = Surface::k3(0);
        let mv = x.mukai_vector(&v).unwrap();
        let mw = x.mukai_vector(&w).unwrap();
        prop_assert_eq!(-x.mukai_pairing(&mv, &mw).unwrap(), x.euler_characteristic(&v, &w).unwrap());
    }

    #[test]
    fn twists_compose(v in vector(), b1 in divisor(), b2 in divisor(), e in 1i64..=4) {
        let x = Surface::new(e, 0).unwrap();
        let once = x.twist(&v, &(b1.clone() + b2.clone()));
        prop_assert_eq!(x.twist(&x.twist(&v, &b1), &b2), once);
    }

    #[test]
    fn rdv_round_trip(r in q(), d in q(), r2 in q(), d2 in q(), e in 1i64..=4) {
        prop_assume!(!r.is_zero());
        let x = Surface::new(e, 0).unwrap();
        let m = RdvCoords::new(r, d);
        let w = RdvCoords::new(r2, d2);
        let md = x.from_rdv(&m);
        prop_assert_eq!(x.to_rdv(&md).unwrap(), m.clone());
        prop_assert_eq!(x.volume(&md), m.volume(&x));
        prop_assert_eq!(x.rdv_product(&m, &w), x.intersect(&md, &x.from_rdv(&w)));
        prop_assert_eq!(x.theta_degree(&md), &m.r * &m.d);
    }

    #[test]
    fn cce_solutions_have_zero_residual(
        d in q(), v in q(), r_b in q(), d_b in q(), e in 1i64..=4, todd in any::<bool>()
    ) {
        let variant = if todd { Variant::Todd } else { Variant::Plain };
        let e = if todd { 2 } else { e };
        let input = CceInput { d_omega: d, v_omega: v, r_b, d_b, e, variant };
        if let Ok(out) = solve_cce(&input) {
            let res = cce_residual(&input, &out).unwrap();
            prop_assert!(res.exact_zero);
            if let Some(r) = res.float_residual {
                prop_assert!(r < 1e-9);
            }
        }
    }

    #[test]
    fn phi_z_is_the_specialization(d in q(), v in q(), da in -5i64..=5) {
        if let Ok(closed) = phi_z(&d, &v, da) {
            let solved = solve_cce(&ellstab::fm::phi_z_input(&d, &v, da)).unwrap();
            prop_assert_eq!(closed.values(), solved.values());
        }
    }

    #[test]
    fn kernel_sublattice_is_annihilated(s in spec(), generic in any::<bool>()) {
        let x = Surface::k3(0);
        let k = x.kernel_sublattice(&s, generic).unwrap();
        for b in &k.basis {
            prop_assert!(x.eval(&s, b).unwrap().is_zero());
        }
        let g = x.kernel_sublattice(&s, true).unwrap();
        prop_assert!(g.basis.len() <= x.kernel_sublattice(&s, false).unwrap().basis.len());
    }

    #[test]
    fn display_round_trips(v in vector(), d in divisor()) {
        prop_assert_eq!(v.to_string().parse::<ChernVector>().unwrap(), v);
        prop_assert_eq!(d.to_string().parse::<DivisorClass>().unwrap(), d);
    }
}

#[test]
fn kernel_classification_matches_bruteforce() {
    for da in -3..=5i64 {
        let x = Surface::k3(da);
        let basis = x.classify_kernel(Regime::AfterFm).unwrap();
        let brute = x.classify_kernel_after_fm_bruteforce(da.unsigned_abs() + 8).unwrap();
        assert_eq!(brute.classes, vec![basis.generators[0].shift(), basis.generators[1].clone()]);
        for regime in Regime::all() {
            assert!(x.classify_kernel(regime).unwrap().is_annihilated(&x).unwrap());
        }
    }
}
