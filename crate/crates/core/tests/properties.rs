use legendre_mm::bounds::{
    fiber_point_height_bound, mm_curve_bound, solve_log_inequality, torsion_coset_count_bound, Expr, LogBound,
};
use legendre_mm::galois::{orbit_size_scaling_invariant, HomothetySubgroup, ModElem};
use legendre_mm::legendre::curve::{torsion_order, torsion_order_by_divpoly, LegendreFiber};
use legendre_mm::numbers::poly::Q;
use legendre_mm::scanner::{scan_fiber, scan_section, CurveSpec};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;
use std::cmp::Ordering;
use std::collections::BTreeSet;

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn qr(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

/// exp(a + b·ln p + c·p^(1/2)) with small nonnegative pieces, plus plain integers.
fn logbound() -> impl Strategy<Value = LogBound> {
    prop_oneof![
        (1u64..100_000).prop_map(LogBound::from_u64),
        (0i64..50, 0i64..20, prop::sample::select(vec![2u64, 3, 5, 7]), 0i64..10).prop_map(|(a, b, p, c)| {
            let e = Expr::int(a)
                .add(&Expr::ln_u64(p).scale(&q(b)))
                .add(&Expr::pow(&q(p as i64), &qr(1, 2)).unwrap().scale(&q(c)));
            LogBound::from_log(e).unwrap()
        }),
    ]
}

fn small_q() -> impl Strategy<Value = Q> {
    (1i64..200, 1i64..20).prop_map(|(n, d)| qr(n, d))
}

/// X − tZ for t = n/d, the curve of a constant abscissa.
fn constant_x(t: &Q) -> CurveSpec {
    CurveSpec::single(&[([0, 0, 1, 0, 0], q(1)), ([0, 0, 0, 0, 1], -t.clone())]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn logbound_order_is_antisymmetric(a in logbound(), b in logbound()) {
        prop_assert_eq!(a.cmp_bound(&b), b.cmp_bound(&a).reverse());
        prop_assert_eq!(a.cmp_bound(&a), Ordering::Equal);
    }

    #[test]
    fn logbound_order_is_transitive(a in logbound(), b in logbound(), c in logbound()) {
        if a.le(&b) && b.le(&c) {
            prop_assert!(a.le(&c));
        }
    }

    #[test]
    fn logbound_text_roundtrip(a in logbound()) {
        let back = LogBound::parse(&a.expr_string()).unwrap();
        prop_assert_eq!(back.cmp_bound(&a), Ordering::Equal);
    }

    #[test]
    fn logbound_mul_adds_logs(a in logbound(), b in logbound()) {
        let p = a.mul(&b);
        prop_assert!((p.ln_approx() - a.ln_approx() - b.ln_approx()).abs() < 1e-9 * (1.0 + p.ln_approx()));
        prop_assert!(a.le(&p) && b.le(&p));
    }

    #[test]
    fn mm_curve_bound_is_monotone(c in logbound(), d in logbound(), d2 in 1u64..10_000, e2 in 1u64..10_000) {
        let (lo_c, hi_c) = if c.le(&d) { (c, d) } else { (d, c) };
        let (lo_d, hi_d) = (d2.min(e2), d2.max(e2));
        let small = mm_curve_bound(&lo_c, lo_d).unwrap();
        prop_assert!(small.le(&mm_curve_bound(&hi_c, lo_d).unwrap()));
        prop_assert!(small.le(&mm_curve_bound(&lo_c, hi_d).unwrap()));
        prop_assert!(LogBound::exp(Expr::pow(&q(2), &qr(18, 5)).unwrap()).unwrap().le(&small));
    }

    #[test]
    fn log_inequality_bound_is_a_bound(a1 in small_q(), a2 in small_q(), a3 in small_q(), t in 0.0f64..1.0) {
        let b = solve_log_inequality(&a1, &a2, &a3).unwrap();
        let (a1f, a2f, a3f, bf) = (a1.to_f64().unwrap(), a2.to_f64().unwrap(), a3.to_f64().unwrap(), b.to_f64().unwrap());
        // Past B the left side wins, at B and at points beyond it.
        for x in [bf * (1.0 + 1e-9), bf * (1.0 + t) + 1.0, bf * 10.0] {
            prop_assert!(a3f * x > a1f + a2f * x.ln());
        }
        prop_assert!(b <= solve_log_inequality(&(&a1 + q(1)), &a2, &a3).unwrap());
        prop_assert!(b <= solve_log_inequality(&a1, &(&a2 + q(1)), &a3).unwrap());
        prop_assert!(b >= solve_log_inequality(&a1, &a2, &(&a3 + q(1))).unwrap());
    }

    #[test]
    fn fiber_height_bound_is_monotone(d1 in 1u64..50, d2 in 1u64..50, h in small_q(), hl in small_q()) {
        let b = fiber_point_height_bound(d1, d2, &h, &hl).unwrap();
        prop_assert!(b <= fiber_point_height_bound(d1 + 1, d2, &h, &hl).unwrap());
        prop_assert!(b <= fiber_point_height_bound(d1, d2 + 1, &h, &hl).unwrap());
        prop_assert!(b <= fiber_point_height_bound(d1, d2, &(&h + q(1)), &hl).unwrap());
        prop_assert!(b <= fiber_point_height_bound(d1, d2, &h, &(&hl + q(1))).unwrap());
    }

    #[test]
    fn coset_count_is_monotone_in_n(c in logbound(), n in 1u64..1000, g in 1u64..5, dv in 0u64..5) {
        let dv = dv.min(g);
        let a = torsion_coset_count_bound(&c, n, g, 0, dv, 1, 1).unwrap();
        let b = torsion_coset_count_bound(&c, n + 1, g, 0, dv, 1, 1).unwrap();
        prop_assert!(a.le(&b));
    }

    #[test]
    fn orbit_size_is_invariant_under_units(n in 2u64..60, x in 0i64..60, y in 0i64..60, c in 1u64..4) {
        let p = ModElem::new(n, &[x, y]).unwrap();
        let g = HomothetySubgroup::full(n).unwrap();
        prop_assert!(orbit_size_scaling_invariant(&p, &g, c).unwrap());
        // Direct count: {a^(2c)·p : a a unit}, for p and for every unit multiple of p.
        let units: Vec<u64> = (1..n).filter(|a| a.gcd(&n) == 1).collect();
        let size = |v: (u64, u64)| -> usize {
            units.iter().map(|&a| {
                let s = (0..2 * c).fold(1u64, |acc, _| acc * a % n);
                (s * v.0 % n, s * v.1 % n)
            }).collect::<BTreeSet<_>>().len()
        };
        let base = (x as u64 % n, y as u64 % n);
        for &u in &units {
            prop_assert_eq!(size((u * base.0 % n, u * base.1 % n)), size(base));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn scan_is_stable_under_scaling(t in (-30i64..30, 1i64..6).prop_map(|(n, d)| qr(n, d)), k in (1i64..50, 1i64..9, any::<bool>()), n in 2u64..5) {
        let spec = constant_x(&t);
        let scale = if k.2 { qr(k.0, k.1) } else { -qr(k.0, k.1) };
        let a = scan_section(&spec, n).unwrap();
        let b = scan_section(&spec.scaled(&scale), n).unwrap();
        prop_assert_eq!(a.is_generic(), b.is_generic());
        let texts = |s: &legendre_mm::scanner::SectionScan| s.hits().iter().map(|h| h.canonical_text()).collect::<BTreeSet<_>>();
        prop_assert_eq!(texts(&a), texts(&b));
    }

    #[test]
    fn scan_hit_count_respects_bezout(t in (-30i64..30, 1i64..6).prop_map(|(n, d)| qr(n, d)), n in 2u64..5) {
        let spec = constant_x(&t);
        let s = scan_section(&spec, n).unwrap();
        prop_assert!(s.hits().len() as u64 <= 3 * spec.d2 as u64 * n * n);
        for h in s.hits() {
            prop_assert_eq!(h.order, n);
            prop_assert!(h.certificate.valid_for(n));
        }
    }

    #[test]
    fn section_and_fiber_scans_agree(t in (-12i64..12, 1i64..4).prop_map(|(n, d)| qr(n, d)), n in 2u64..5) {
        let spec = constant_x(&t);
        let s = scan_section(&spec, n).unwrap();
        let rational: BTreeSet<Q> = s.hits().iter().filter_map(|h| h.lambda().to_rational()).collect();
        for l in rational {
            let f = scan_fiber(&l, &spec, n).unwrap();
            let found: BTreeSet<u64> = f.hits.iter().map(|h| h.order).collect();
            prop_assert!(found.contains(&n), "fiber {} lacks order {}", l, n);
        }
        // A fiber missed by the section scan has no point of order exactly n on the curve,
        // unless the curve meets the n-torsion in every fiber.
        for l0 in [q(-5), q(7), qr(5, 2)] {
            let hit = s.is_generic() || s.hits().iter().any(|h| h.lambda().to_rational() == Some(l0.clone()));
            let f = scan_fiber(&l0, &spec, n).unwrap();
            prop_assert_eq!(hit, f.hits.iter().any(|h| h.order == n));
        }
    }

    #[test]
    fn torsion_orders_agree(s in (1i64..9, 1i64..4).prop_map(|(n, d)| qr(n, d))) {
        // λ = 1 − s² carries the rational 4-torsion point (1 + s, s(1 + s)).
        let lam = q(1) - &s * &s;
        prop_assume!(!lam.is_zero());
        let e = LegendreFiber::rational(lam).unwrap();
        let x = q(1) + &s;
        let p = e.point_q(x.clone(), &s * &x).unwrap();
        prop_assert_eq!(torsion_order(&p, 20), Some(4));
        prop_assert_eq!(torsion_order_by_divpoly(&p, 20), Some(4));
    }
}
