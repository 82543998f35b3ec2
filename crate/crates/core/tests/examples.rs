use std::collections::HashSet;
use std::fs;

use realslice::catalog::{build_entry, export_mesh, export_report, mesh_entry, run_verification, ClaimVerdict, VerifyConfig};
use realslice::interval::{
    certify_bounded_locus, certify_empty, certify_regular_value, enclose_critical_values, Budget, ConstraintSystem,
    EnclosureOptions, IntervalBox, Verdict,
};
use realslice::poly::{int, parse_polynomial, rat, variables, Polynomial, Rational};
use realslice::projective::{
    analyze_cover, certify_affine_containment, choose_pole, pole_at, quotient_invariants, stereographic_pullback,
    CoverAnalysis, Orientation,
};
use realslice::topology::{build_shell_complex, build_sublevel_complex, marching_cubes, marching_squares, GridSpec};

fn poly(text: &str, names: &[&str]) -> Polynomial {
    parse_polynomial(text, &variables(names)).unwrap()
}

fn q0() -> Polynomial {
    poly("(x1^2 + x2^2 - 1)^2 + x3^4", &["x1", "x2", "x3"])
}

fn fermat() -> Polynomial {
    poly("X0^4 + X1^4 - X2^4 - X3^4", &["X0", "X1", "X2", "X3"])
}

fn cube(k: usize) -> IntervalBox {
    IntervalBox::cube(k, -2.0, 2.0)
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("realslice-examples-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn regular_values_of_the_torus_potential() {
    let b = Budget::default();
    assert!(certify_regular_value(&q0(), &rat(1, 2), &cube(3), &b).is_certified());
    assert!(!certify_regular_value(&q0(), &int(1), &cube(3), &b).is_certified());
    assert!(certify_bounded_locus(&q0(), &rat(1, 2), &cube(3), &b).is_certified());
    let q = poly("(x1^2 + x2^2 - 1)^2 + (x3^2 + x4^2 - 1)^2", &["x1", "x2", "x3", "x4"]);
    assert!(certify_bounded_locus(&q, &rat(1, 4), &cube(4), &b).is_certified());
    assert!(certify_bounded_locus(&poly("x^2 + y^2", &["x", "y"]), &int(1), &cube(2), &b).is_certified());
}

#[test]
fn odd_cubic_enclosures_are_tight() {
    let q = poly("x^3 - 3*x", &["x"]);
    let cv = enclose_critical_values(&q, &cube(1), &EnclosureOptions::default());
    assert!(cv.covers(-2.0) && cv.covers(2.0));
    assert!(cv.total_width() <= 0.01, "{:?}", cv.enclosures);
}

#[test]
fn fermat_singular_locus_is_empty_on_the_sphere() {
    let cert = certify_empty(&ConstraintSystem::on_unit_sphere(fermat().gradient()), &Budget::default());
    assert_eq!(cert.verdict, Verdict::Certified);
}

#[test]
fn plane_level_curves() {
    let grid = GridSpec::uniform(cube(2), 128).unwrap();
    let c = marching_squares(&poly("x^4 + y^4 - 1", &["x", "y"]), &int(0), &grid).unwrap();
    assert_eq!(c.num_components(), 1);
    assert!(c.all_closed());
    assert_eq!(c.euler_characteristic(), 0);
}

#[test]
fn level_torus_mesh() {
    let grid = GridSpec::uniform(cube(3), 96).unwrap();
    let m = marching_cubes(&q0(), &rat(1, 2), &grid).unwrap();
    let stats = m.component_stats();
    assert_eq!(stats.len(), 1);
    assert_eq!((stats[0].chi, stats[0].genus), (0, Some(1)));
    assert_eq!(m.euler_characteristic(), 0);
}

#[test]
fn solid_torus_and_its_boundary() {
    let grid = GridSpec::uniform(cube(3), 48).unwrap();
    let sub = build_sublevel_complex(&q0(), &rat(1, 2), &grid).unwrap();
    assert_eq!(sub.betti_mod2().unwrap().betti, [1, 1, 0, 0]);
    let shell = build_shell_complex(&q0(), &rat(1, 2), &rat(1, 20), &grid).unwrap();
    let b = shell.betti_mod2().unwrap();
    assert_eq!(b.betti, [1, 2, 1, 0]);
    assert_eq!(shell.euler_characteristic(), 0);
}

#[test]
fn three_torus_shell_has_zero_euler_characteristic() {
    let q = poly("(x1^2 + x2^2 - 1)^2 + (x3^2 + x4^2 - 1)^2", &["x1", "x2", "x3", "x4"]);
    let grid = GridSpec::uniform(IntervalBox::cube(4, -1.3, 1.3), 24).unwrap();
    let shell = build_shell_complex(&q, &rat(1, 4), &rat(1, 20), &grid).unwrap();
    assert_eq!(shell.euler_characteristic(), 0);
    assert_eq!(shell.betti_mod2().unwrap().betti, [1, 3, 3, 1, 0]);
}

#[test]
fn default_poles() {
    let p4 = ["X0", "X1", "X2", "X3", "X4"];
    let q = poly("(X1^2 + X2^2 - X0^2)^2 + (X3^2 + X4^2 - X0^2)^2 - (1/4)*X0^4", &p4);
    let cubic = poly("X0^3 + X1^3 + X2^3 - 6*X0*X1*X2", &["X0", "X1", "X2"]);
    for (p, value) in [(fermat(), int(1)), (cubic, int(1)), (q.clone(), rat(7, 4))] {
        let pole = choose_pole(&p).unwrap();
        let mut e0 = vec![int(0); p.nvars()];
        e0[0] = int(1);
        assert_eq!(pole.coordinates(), &e0[..]);
        assert_eq!(p.evaluate(pole.coordinates()).unwrap(), value);
    }
}

/// Unit-sphere point for chart coordinates with the pole at e₀.
fn inverse_stereographic(t: &[Rational]) -> Vec<Rational> {
    let n2: Rational = t.iter().map(|v| v * v).sum();
    let den = &n2 + int(1);
    let mut x = vec![(&n2 - int(1)) / &den];
    x.extend(t.iter().map(|v| v * int(2) / &den));
    x
}

#[test]
fn fermat_pullback_agrees_with_composed_maps() {
    let p = fermat();
    let pole = choose_pole(&p).unwrap();
    let cc = stereographic_pullback(&p, &pole).unwrap();
    assert_eq!(cc.pullback.degree(), 8);
    assert_eq!(cc.chart_dim(), 3);
    let mut state = 0x2545_f491_u64;
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        rat((state % 41) as i64 - 20, (state >> 8) as i64 % 9 + 1)
    };
    let mut ratio = None;
    for _ in 0..20 {
        let t = [next(), next(), next()];
        let x = inverse_stereographic(&t);
        assert_eq!(cc.chart_to_sphere(&t), x);
        let on_sphere = p.evaluate(&x).unwrap();
        let pulled = cc.pullback.evaluate(&t).unwrap();
        let n2: Rational = t.iter().map(|v| v * v).sum();
        let scale: Rational = num_pow(&n2 + int(1), 4);
        // pullback = c · (1 + |t|²)⁴ · P(x(t)) for one constant c.
        let scaled = on_sphere * scale;
        if scaled == int(0) {
            assert_eq!(pulled, int(0));
            continue;
        }
        let r = pulled / scaled;
        assert_eq!(*ratio.get_or_insert_with(|| r.clone()), r);
    }
}

fn num_pow(x: Rational, k: u32) -> Rational {
    (0..k).fold(int(1), |acc, _| acc * &x)
}

#[test]
fn pullback_of_circle_line_has_two_roots() {
    let p = poly("X0 + X1", &["X0", "X1"]);
    let cc = stereographic_pullback(&p, &choose_pole(&p).unwrap()).unwrap();
    let f = |t: f64| cc.pullback.eval_f64(&[t]);
    // Roots −1 ± √2 are bracketed by sign changes.
    assert!(f(0.0) * f(1.0) < 0.0);
    assert!(f(-3.0) * f(-2.0) < 0.0);
    assert_eq!(cc.pullback.degree(), 2);
    // Both roots map to the projective point [1, −1].
    for t in [2f64.sqrt() - 1.0, -(2f64.sqrt()) - 1.0] {
        assert!(f(t).abs() < 1e-12);
        let (x0, x1) = (t * t - 1.0, 2.0 * t);
        assert!((x0 + x1).abs() < 1e-12);
    }
}

#[test]
fn positive_source_has_no_cover() {
    let p = poly("X0^2 + X1^2 + X2^2", &["X0", "X1", "X2"]);
    let cc = stereographic_pullback(&p, &choose_pole(&p).unwrap()).unwrap();
    let ca = analyze_cover(&cc, &cc.grid(32).unwrap(), &Budget::default()).unwrap();
    assert!(ca.components.is_empty());
}

fn cover(p: &Polynomial, pole: Option<Vec<Rational>>, n: usize) -> CoverAnalysis {
    let pole = match pole {
        Some(x) => pole_at(p, x).unwrap(),
        None => choose_pole(p).unwrap(),
    };
    let cc = stereographic_pullback(p, &pole).unwrap();
    let ca = analyze_cover(&cc, &cc.grid(n).unwrap(), &Budget::default()).unwrap();
    assert!(ca.is_sound());
    ca
}

#[test]
fn cubic_cover_has_one_invariant_circle_and_one_swapped_pair() {
    let p = poly("X0^3 + X1^3 + X2^3 - 6*X0*X1*X2", &["X0", "X1", "X2"]);
    let ca = cover(&p, None, 128);
    assert_eq!(ca.components.len(), 3);
    assert_eq!((ca.invariant_count(), ca.swapped_pairs()), (1, 1));
    assert!(ca.components.iter().all(|c| c.closed && c.chi == 0));
}

#[test]
fn fermat_cover_is_independent_of_the_pole() {
    let signature = |ca: &CoverAnalysis| {
        let mut chis: Vec<i64> = ca.components.iter().map(|c| c.chi).collect();
        chis.sort_unstable();
        (ca.components.len(), chis, ca.invariant_count(), ca.swapped_pairs())
    };
    let a = cover(&fermat(), None, 96);
    let b = cover(&fermat(), Some(vec![rat(2, 3), rat(2, 3), rat(1, 3), int(0)]), 96);
    assert_eq!(signature(&a), signature(&b));
    assert_eq!(signature(&a), (1, vec![0], 1, 0));
    assert_eq!(a.components[0].orientation, Orientation::Preserving);
    let quotient = quotient_invariants(&a).unwrap();
    assert_eq!((quotient.count(), quotient.components[0].label.as_str()), (1, "torus"));
}

#[test]
fn affine_containment() {
    let q2 = poly("(X1^2 + X2^2 - X0^2)^2 + X3^4 - (1/2)*X0^4", &["X0", "X1", "X2", "X3"]);
    let q3 = poly(
        "(X1^2 + X2^2 - X0^2)^2 + (X3^2 + X4^2 - X0^2)^2 - (1/4)*X0^4",
        &["X0", "X1", "X2", "X3", "X4"],
    );
    let b = Budget::default();
    assert!(certify_affine_containment(&q2, 0, &b).is_certified());
    assert!(certify_affine_containment(&q3, 0, &b).is_certified());
    let c = certify_affine_containment(&fermat(), 0, &b);
    assert_eq!(c.verdict, Verdict::RefutedByWitness);
    let w: Vec<Rational> = c.witness.unwrap().iter().map(|s| s.parse().unwrap()).collect();
    assert_eq!(w[0], int(0));
    assert_eq!(fermat().evaluate(&w).unwrap(), int(0));
    assert!(w.iter().any(|v| *v != int(0)));
}

#[test]
fn cubic_component_counts_through_the_catalog() {
    let config = VerifyConfig { grid: None, budget: Budget::default(), stability: false };
    for (sigma, count) in [("2", 2), ("0", 1)] {
        let e = build_entry("cubic", &[("sigma".into(), sigma.into())]).unwrap();
        let r = run_verification(&e, &config).unwrap();
        let c = r.claim("component-count").unwrap();
        assert_eq!(c.verdict, ClaimVerdict::Consistent, "σ = {sigma}: {:?}", c.evidence);
        assert_eq!(c.evidence["found"], count, "{:?}", c.evidence);
    }
}

#[test]
fn even_quartic_report_is_consistent_with_a_torus() {
    let e = build_entry("even-quartic", &[]).unwrap();
    let r = run_verification(&e, &VerifyConfig { grid: Some(64), ..VerifyConfig::default() }).unwrap();
    assert_eq!(r.exit_code(), 0);
    assert_eq!(r.claim("torus").unwrap().verdict, ClaimVerdict::Consistent);
    assert_eq!(r.claim("affine-containment").unwrap().verdict, ClaimVerdict::Certified);
    assert_eq!(r.claim("critical-values").unwrap().verdict, ClaimVerdict::Certified);
}

#[test]
fn fermat_report_export() {
    let e = build_entry("fermat-quartic", &[]).unwrap();
    let r = run_verification(&e, &VerifyConfig { grid: Some(64), stability: false, ..VerifyConfig::default() }).unwrap();
    let path = tmp("fermat.json");
    export_report(&r, &path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert!(v["claims"].as_array().unwrap().len() >= 4);
    assert_eq!(v["entry"], "fermat-quartic");
}

#[test]
fn torus_obj_export_and_empty_mesh() {
    let e = build_entry("even-quartic", &[]).unwrap();
    let m = mesh_entry(&e, Some(48)).unwrap();
    let path = tmp("torus.obj");
    export_mesh(&m, &path).unwrap();
    let text = fs::read_to_string(&path).unwrap();
    let v = text.lines().filter(|l| l.starts_with("v ")).count() as i64;
    let faces: Vec<Vec<usize>> = text
        .lines()
        .filter_map(|l| l.strip_prefix("f "))
        .map(|l| l.split_whitespace().map(|t| t.split('/').next().unwrap().parse().unwrap()).collect())
        .collect();
    let edges: HashSet<(usize, usize)> = faces
        .iter()
        .flat_map(|f| (0..f.len()).map(move |i| (f[i].min(f[(i + 1) % f.len()]), f[i].max(f[(i + 1) % f.len()]))))
        .collect();
    assert_eq!(v - edges.len() as i64 + faces.len() as i64, 0);

    let empty = marching_cubes(&q0(), &int(-1), &GridSpec::uniform(cube(3), 16).unwrap()).unwrap();
    let none = tmp("empty.obj");
    assert!(export_mesh(&empty, &none).is_err());
    assert!(!none.exists());
}
