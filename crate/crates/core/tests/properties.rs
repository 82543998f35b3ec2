use proptest::prelude::*;

use realslice::interval::{certify_empty, Budget, ConstraintSystem, Interval, IntervalBox, IntervalPoly, Verdict};
use realslice::poly::{int, parse_polynomial, rat, variables, Monomial, Polynomial, Rational};
use realslice::topology::{build_shell_complex, build_sublevel_complex, GridSpec, MIN_RESOLUTION};

const NAMES: [&str; 3] = ["x", "y", "z"];

fn poly_strategy(nvars: usize, max_exp: u32) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, nvars), -12i64..=12, 1i64..=6),
        0..6,
    )
    .prop_map(move |terms| {
        let vars = variables(&NAMES[..nvars]);
        Polynomial::from_terms(vars, terms.into_iter().map(|(e, n, d)| (Monomial::new(e), rat(n, d))))
    })
}

fn homogeneous_strategy(degree: u32) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((0..=degree, 0..=degree, -9i64..=9), 1..6).prop_map(move |terms| {
        let vars = variables(&NAMES);
        Polynomial::from_terms(
            vars,
            terms.into_iter().filter(|(a, b, _)| a + b <= degree).map(|(a, b, c)| {
                (Monomial::new(vec![a, b, degree - a - b]), int(c))
            }),
        )
    })
}

fn box_strategy(dim: usize) -> impl Strategy<Value = (Vec<Interval>, Vec<f64>)> {
    prop::collection::vec((-3.0f64..3.0, 0.0f64..2.0, 0.0f64..=1.0), dim).prop_map(|v| {
        let b: Vec<Interval> = v.iter().map(|&(lo, w, _)| Interval::new(lo, lo + w)).collect();
        let x: Vec<f64> = v.iter().map(|&(lo, w, t)| (lo + t * w).min(lo + w)).collect();
        (b, x)
    })
}

fn exact(x: &[f64]) -> Vec<Rational> {
    x.iter().map(|&v| Rational::from_float(v).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(a in poly_strategy(3, 3), b in poly_strategy(3, 3), c in poly_strategy(3, 3)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn print_then_parse_is_identity(p in poly_strategy(3, 4)) {
        let back = parse_polynomial(&p.to_string(), p.vars()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn enclosure_contains_exact_value(p in poly_strategy(3, 3), (b, x) in box_strategy(3)) {
        let v = p.evaluate(&exact(&x)).unwrap();
        prop_assert!(IntervalPoly::new(&p).eval(&b).contains_rational(&v));
    }

    #[test]
    fn interval_operations_contain_point_results(
        (a, x) in (-5.0f64..5.0, 0.0f64..3.0, 0.0f64..=1.0).prop_map(|(lo, w, t)| (Interval::new(lo, lo + w), lo + t * w)),
        (b, y) in (-5.0f64..5.0, 0.0f64..3.0, 0.0f64..=1.0).prop_map(|(lo, w, t)| (Interval::new(lo, lo + w), lo + t * w)),
        k in 0u32..6,
    ) {
        let (ex, ey) = (Rational::from_float(x).unwrap(), Rational::from_float(y).unwrap());
        prop_assert!((a + b).contains_rational(&(&ex + &ey)));
        prop_assert!((a - b).contains_rational(&(&ex - &ey)));
        prop_assert!((a * b).contains_rational(&(&ex * &ey)));
        let mut ek = int(1);
        for _ in 0..k {
            ek = &ek * &ex;
        }
        prop_assert!(a.powi(k).contains_rational(&ek));
        prop_assert!(a.sqr().contains_rational(&(&ex * &ex)));
    }

    #[test]
    fn enclosure_is_monotone(p in poly_strategy(3, 3), (b, x) in box_strategy(3), s in 0.0f64..1.0) {
        // Shrink toward the point; the sub-box enclosure nests in the outer one.
        let inner: Vec<Interval> = b.iter().zip(&x)
            .map(|(i, &c)| Interval::new(c - s * (c - i.lo()), c + s * (i.hi() - c)))
            .collect();
        let ip = IntervalPoly::new(&p);
        prop_assert!(ip.eval(&inner).subset_of(&ip.eval(&b)));
    }

    #[test]
    fn gradient_matches_central_differences(p in poly_strategy(3, 3), x in prop::collection::vec(-1.5f64..1.5, 3)) {
        let h = 1e-5;
        for i in 0..3 {
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[i] += h;
            xm[i] -= h;
            let fd = (p.eval_f64(&xp) - p.eval_f64(&xm)) / (2.0 * h);
            let d = p.derivative(i).eval_f64(&x);
            prop_assert!((fd - d).abs() <= 1e-4 * (1.0 + d.abs()), "∂{i}: {d} vs {fd}");
        }
    }

    #[test]
    fn euler_relation_for_forms((d, p) in (1u32..6).prop_flat_map(|d| (Just(d), homogeneous_strategy(d)))) {
        let mut lhs = Polynomial::zero(p.vars().clone());
        for i in 0..3 {
            lhs = &lhs + &(&Polynomial::var(p.vars().clone(), i) * &p.derivative(i));
        }
        prop_assert!((&lhs - &p.scale(&int(i64::from(d)))).is_zero());
        prop_assert!(p.euler_defect(d).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn planted_witness_is_never_certified_empty(
        f in poly_strategy(2, 3),
        g in poly_strategy(2, 3),
        r in prop::collection::vec((-7i64..=7, 8i64..=12), 2),
    ) {
        let r: Vec<Rational> = r.into_iter().map(|(n, d)| rat(n, d)).collect();
        let plant = |p: &Polynomial| {
            let c = p.evaluate(&r).unwrap();
            p - &Polynomial::constant(p.vars().clone(), c)
        };
        let sys = ConstraintSystem::new(vec![plant(&f), plant(&g)], IntervalBox::cube(2, -1.0, 1.0));
        let cert = certify_empty(&sys, &Budget { max_boxes: 5_000, ..Budget::default() });
        prop_assert_ne!(cert.verdict, Verdict::Certified);
    }

    #[test]
    fn boundary_of_boundary_vanishes(p in poly_strategy(2, 4), level in -4i64..4, n in MIN_RESOLUTION..MIN_RESOLUTION + 10) {
        let grid = GridSpec::uniform(IntervalBox::cube(2, -2.0, 2.0), n).unwrap();
        let c = int(level);
        if let Ok(cx) = build_sublevel_complex(&p, &c, &grid) {
            prop_assert!(cx.check_chain_complex().is_ok());
            let b = cx.betti_mod2().unwrap();
            let alt: i64 = b.betti.iter().enumerate().map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
            prop_assert_eq!(alt, b.euler);
        }
        if let Ok(cx) = build_shell_complex(&p, &c, &rat(1, 4), &grid) {
            prop_assert!(cx.check_chain_complex().is_ok());
        }
    }
}
