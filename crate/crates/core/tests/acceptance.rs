//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Polynomials are written out here; catalog entries are used only where a
//! criterion names one.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use realslice::catalog::{build_entry, load_catalog, mesh_entry};
use realslice::interval::{
    certify_empty, enclose_critical_values, Budget, ConstraintSystem, EnclosureOptions, Interval, IntervalBox,
    IntervalPoly, Verdict,
};
use realslice::poly::{
    int, monomials_of_degree, parse_polynomial, rat, space_dimension, variables, GaussianRational, Polynomial,
    Rational,
};
use realslice::projective::{analyze_cover, choose_pole, quotient_invariants, stereographic_pullback, CoverAnalysis};
use realslice::topology::{build_shell_complex, build_sublevel_complex, GridSpec};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn ensure_time(t: Instant, limit_s: u64, what: &str) -> Result<(), String> {
    let e = t.elapsed();
    ensure(e <= Duration::from_secs(limit_s), format!("{what} took {e:.1?}, limit {limit_s} s"))
}

fn poly(text: &str, names: &[&str]) -> Polynomial {
    parse_polynomial(text, &variables(names)).expect("test polynomial parses")
}

const A3: [&str; 3] = ["x1", "x2", "x3"];
const A4: [&str; 4] = ["x1", "x2", "x3", "x4"];
const P2: [&str; 3] = ["X0", "X1", "X2"];
const P3: [&str; 4] = ["X0", "X1", "X2", "X3"];
const P4: [&str; 5] = ["X0", "X1", "X2", "X3", "X4"];

fn q0() -> Polynomial {
    poly("(x1^2 + x2^2 - 1)^2 + x3^4", &A3)
}

fn q_quintic() -> Polynomial {
    poly("(x1^2 + x2^2 - 1)^2 + (x3^2 + x4^2 - 1)^2", &A4)
}

fn quartic_q() -> Polynomial {
    poly("(X1^2 + X2^2 - X0^2)^2 + X3^4 - (1/2)*X0^4", &P3)
}

fn quintic_q() -> Polynomial {
    poly("(X1^2 + X2^2 - X0^2)^2 + (X3^2 + X4^2 - X0^2)^2 - (1/4)*X0^4", &P4)
}

fn enclosures_summary(enc: &[Interval]) -> String {
    enc.iter().map(|i| format!("[{:.4}, {:.4}]", i.lo(), i.hi())).collect::<Vec<_>>().join(" ")
}

fn critical_value_check(q: &Polynomial, k: usize, targets: &[f64], gaps: &[Interval], limit_s: u64) -> Outcome {
    let t = Instant::now();
    let cv = enclose_critical_values(q, &IntervalBox::cube(k, -2.0, 2.0), &EnclosureOptions::default());
    ensure_time(t, limit_s, "enclosure")?;
    let summary = enclosures_summary(&cv.enclosures);
    ensure(cv.certificate.verdict == Verdict::Certified, format!("search inconclusive: {summary}"))?;
    ensure(cv.adequacy.radial_growth_on_shell, "domain adequacy not established")?;
    for &v in targets {
        ensure(cv.covers(v), format!("{v} not covered by {summary}"))?;
    }
    for g in gaps {
        ensure(!cv.meets(g), format!("an enclosure meets [{}, {}]: {summary}", g.lo(), g.hi()))?;
    }
    Ok(format!("total width {:.2e}; {summary}", cv.total_width()))
}

fn criterion_1() -> Outcome {
    let detail = critical_value_check(&q0(), 3, &[0.0, 1.0], &[Interval::new(0.1, 0.9)], 60)?;
    let cv = enclose_critical_values(&q0(), &IntervalBox::cube(3, -2.0, 2.0), &EnclosureOptions::default());
    ensure(cv.total_width() <= 0.05, format!("total width {} > 0.05", cv.total_width()))?;
    Ok(detail)
}

fn criterion_2() -> Outcome {
    critical_value_check(
        &q_quintic(),
        4,
        &[0.0, 1.0, 2.0],
        &[Interval::new(0.1, 0.9), Interval::new(1.1, 1.9)],
        600,
    )
}

fn criterion_3() -> Outcome {
    let entry = build_entry("even-quartic", &[("eps".into(), "1/2".into())]).map_err(|e| e.to_string())?;
    let mut out = Vec::new();
    for n in [96, 144] {
        let t = Instant::now();
        let m = mesh_entry(&entry, Some(n)).map_err(|e| e.to_string())?;
        ensure_time(t, 120, &format!("mesh at {n}³"))?;
        let stats = m.component_stats();
        ensure(stats.len() == 1, format!("{} components at {n}³", stats.len()))?;
        let s = &stats[0];
        ensure(s.closed && s.chi == 0 && s.genus == Some(1), format!("at {n}³: {s:?}"))?;
        out.push(format!("{n}³: V={} E={} F={} χ=0 genus 1", s.vertices, s.edges, s.faces));
    }
    Ok(out.join("; "))
}

fn criterion_4() -> Outcome {
    let q = q_quintic();
    let level = rat(1, 4);
    let delta = rat(1, 20);
    let h = 1.3;
    let mut out = Vec::new();
    for n in [24, 32] {
        let t = Instant::now();
        let grid = GridSpec::uniform(IntervalBox::cube(4, -h, h), n).map_err(|e| e.to_string())?;
        let shell = build_shell_complex(&q, &level, &delta, &grid).map_err(|e| e.to_string())?;
        let sub = build_sublevel_complex(&q, &level, &grid).map_err(|e| e.to_string())?;
        shell.check_chain_complex().map_err(|e| e.to_string())?;
        sub.check_chain_complex().map_err(|e| e.to_string())?;
        let bs = shell.betti_mod2().map_err(|e| e.to_string())?.betti;
        let bl = sub.betti_mod2().map_err(|e| e.to_string())?.betti;
        if n == 24 {
            ensure_time(t, 1200, "homology at 24⁴")?;
        }
        ensure(bs == [1, 3, 3, 1, 0], format!("shell at {n}⁴: {bs:?}"))?;
        ensure(bl == [1, 2, 1, 0, 0], format!("sublevel at {n}⁴: {bl:?}"))?;
        out.push(format!("{n}⁴ on [−{h}, {h}]⁴: shell {bs:?}, sublevel {bl:?}"));
    }
    Ok(out.join("; "))
}

fn sphere_emptiness(label: &str, eqs: Vec<Polynomial>) -> Result<String, String> {
    let t = Instant::now();
    let cert = certify_empty(&ConstraintSystem::on_unit_sphere(eqs), &Budget::default());
    ensure_time(t, 300, label)?;
    ensure(cert.verdict == Verdict::Certified, format!("{label}: {:?}", cert.verdict))?;
    Ok(format!("{label} empty ({} boxes)", cert.boxes_examined))
}

fn criterion_5() -> Outcome {
    let a = sphere_emptiness("{∇Q=0}∩S³", quartic_q().gradient())?;
    let b = sphere_emptiness("{∇Q=0}∩S⁴", quintic_q().gradient())?;
    let c = sphere_emptiness("{Q=0, X0=0}∩S⁴", vec![quintic_q(), poly("X0", &P4)])?;
    Ok(format!("{a}; {b}; {c}"))
}

fn g(re: Rational, im: Rational) -> GaussianRational {
    GaussianRational::new(re, im)
}

fn singular_at(p: &Polynomial, x: &[GaussianRational]) -> bool {
    let zero = GaussianRational::new(int(0), int(0));
    p.evaluate_complex(x).unwrap() == zero && p.gradient().iter().all(|d| d.evaluate_complex(x).unwrap() == zero)
}

fn criterion_6() -> Outcome {
    let t = Instant::now();
    let z = || g(int(0), int(0));
    let one = || g(int(1), int(0));
    for s in [1, -1] {
        let x = [z(), one(), g(int(0), int(s)), z()];
        ensure(singular_at(&quartic_q(), &x), format!("(0,1,{s}i,0) not singular"))?;
    }
    let samples = [
        (g(int(1), int(0)), g(int(0), int(0))),
        (g(int(0), int(0)), g(int(1), int(0))),
        (g(int(1), int(0)), g(int(1), int(0))),
        (g(rat(1, 2), int(1)), g(int(-3), rat(2, 5))),
        (g(int(2), int(-1)), g(rat(-1, 3), int(0))),
    ];
    let mut checked = 0;
    let q = quintic_q();
    for m in [1, -1] {
        for n in [1, -1] {
            for (a, b) in &samples {
                let ia = a * &g(int(0), int(m));
                let ib = b * &g(int(0), int(n));
                let x = [z(), a.clone(), ia, b.clone(), ib];
                ensure(singular_at(&q, &x), format!("L_{{{m},{n}}} sample {x:?} not singular"))?;
                checked += 1;
            }
        }
    }
    let cubic = poly("X0^3 + X1^3 + X2^3 - 3*X0*X1*X2", &P2);
    let ones = [one(), one(), one()];
    ensure(singular_at(&cubic, &ones), "(1,1,1) not singular for σ = 1")?;
    let l = poly("X0 + X1 + X2", &P2);
    ensure(l.evaluate(&[int(1), int(1), int(1)]).unwrap() == int(3), "L(1,1,1) ≠ 3")?;
    ensure_time(t, 1, "exact witnesses")?;
    Ok(format!("2 points of Σ_Q, {checked} line samples, cubic point [1,1,1] with L = 3"))
}

fn cover_of(p: &Polynomial, n: usize) -> Result<CoverAnalysis, String> {
    let pole = choose_pole(p).map_err(|e| e.to_string())?;
    let cc = stereographic_pullback(p, &pole).map_err(|e| e.to_string())?;
    let grid = cc.grid(n).map_err(|e| e.to_string())?;
    let ca = analyze_cover(&cc, &grid, &Budget::default()).map_err(|e| e.to_string())?;
    ensure(ca.is_sound(), "cover analysis preconditions not certified")?;
    Ok(ca)
}

/// 3 × 3 determinant of second partials, by cofactor expansion.
fn hessian3(p: &Polynomial) -> Polynomial {
    let h: Vec<Vec<Polynomial>> = (0..3).map(|i| (0..3).map(|j| p.derivative(i).derivative(j)).collect()).collect();
    let minor = |r: usize, c: usize| {
        let rows: Vec<usize> = (0..3).filter(|&x| x != r).collect();
        let cols: Vec<usize> = (0..3).filter(|&x| x != c).collect();
        &(&h[rows[0]][cols[0]] * &h[rows[1]][cols[1]]) - &(&h[rows[0]][cols[1]] * &h[rows[1]][cols[0]])
    };
    let t0 = &h[0][0] * &minor(0, 0);
    let t1 = &h[0][1] * &minor(0, 1);
    let t2 = &h[0][2] * &minor(0, 2);
    &(&t0 - &t1) + &t2
}

fn criterion_7() -> Outcome {
    let t = Instant::now();
    let mut out = Vec::new();
    for (sigma, want) in [("2", 2), ("0", 1)] {
        let p = poly(&format!("X0^3 + X1^3 + X2^3 - 3*{sigma}*X0*X1*X2"), &P2);
        let quotient = quotient_invariants(&cover_of(&p, 128)?).map_err(|e| e.to_string())?;
        ensure(quotient.count() == want, format!("σ = {sigma}: {} components", quotient.count()))?;
        let odd = quotient.components.iter().filter(|c| c.odd == Some(true)).count();
        ensure(odd == 1, format!("σ = {sigma}: {odd} odd components"))?;
        let hess = hessian3(&p);
        for f in [[0, 1, -1], [-1, 0, 1], [1, -1, 0]] {
            let x: Vec<Rational> = f.iter().map(|&c| int(c)).collect();
            ensure(p.evaluate(&x).unwrap() == int(0), format!("flex {f:?} off the curve"))?;
            ensure(hess.evaluate(&x).unwrap() == int(0), format!("flex {f:?} off the Hessian"))?;
        }
        out.push(format!("σ = {sigma}: {want} component(s), one odd"));
    }
    ensure_time(t, 120, "cubic covers")?;
    Ok(format!("{}; flexes exact", out.join("; ")))
}

fn criterion_8() -> Outcome {
    let t = Instant::now();
    let fermat = poly("X0^4 + X1^4 - X2^4 - X3^4", &P3);
    let ca = cover_of(&fermat, 96)?;
    let inv: Vec<i64> = ca.components.iter().enumerate().filter(|(i, c)| c.is_invariant(*i)).map(|(_, c)| c.chi).collect();
    ensure(inv == [0] && ca.components.len() == 1, format!("fermat cover: {:?}", ca.components))?;
    let quotient = quotient_invariants(&ca).map_err(|e| e.to_string())?;
    ensure(quotient.count() == 1 && quotient.components[0].label == "torus", format!("fermat quotient: {quotient:?}"))?;
    ensure_time(t, 300, "fermat-quartic")?;

    let t = Instant::now();
    let tori = poly("(X0^2 + X1^2 - (X2^2 + X3^2))*(X0^2 + X1^2 - 2*(X2^2 + X3^2))", &P3);
    let entry = build_entry("two-tori", &[]).map_err(|e| e.to_string())?;
    ensure(entry.polynomial == tori, "two-tori(1, 2) differs from the product of its quadrics")?;
    let ca = cover_of(&tori, 160)?;
    let inv: Vec<i64> = ca.components.iter().enumerate().filter(|(i, c)| c.is_invariant(*i)).map(|(_, c)| c.chi).collect();
    ensure(inv == [0, 0], format!("two-tori cover: {:?}", ca.components))?;
    ensure_time(t, 300, "two-tori")?;
    Ok("fermat: 1 invariant χ=0 component, quotient torus; two-tori: 2 invariant χ=0 components".into())
}

fn random_poly(rng: &mut ChaCha8Rng, names: &[&str]) -> Polynomial {
    let vars = variables(names);
    let mut p = Polynomial::zero(vars.clone());
    for _ in 0..rng.gen_range(1..6) {
        let mut term = Polynomial::constant(vars.clone(), rat(rng.gen_range(-9..=9), rng.gen_range(1..=4)));
        for i in 0..names.len() {
            term = &term * &Polynomial::var(vars.clone(), i).pow(rng.gen_range(0..3));
        }
        p = &p + &term;
    }
    p
}

fn rational(x: f64) -> Rational {
    Rational::from_float(x).expect("finite")
}

fn criterion_9() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);

    // Containment: the exact value at a point of the box lies in the enclosure.
    let mut violations = 0;
    for _ in 0..1000 {
        let p = random_poly(&mut rng, &A3);
        let b: Vec<Interval> = (0..3)
            .map(|_| {
                let lo: f64 = rng.gen_range(-3.0..3.0);
                Interval::new(lo, lo + rng.gen_range(0.0..2.0))
            })
            .collect();
        let x: Vec<f64> = b.iter().map(|i| rng.gen_range(i.lo()..=i.hi())).collect();
        let exact = p.evaluate(&x.iter().map(|&v| rational(v)).collect::<Vec<_>>()).unwrap();
        if !IntervalPoly::new(&p).eval(&b).contains_rational(&exact) {
            violations += 1;
        }
    }
    ensure(violations == 0, format!("{violations} containment violations"))?;

    // Euler identity: Σ xᵢ ∂P/∂xᵢ − d·P vanishes identically.
    let catalog = load_catalog();
    for e in &catalog {
        let p = &e.polynomial;
        let d = p.degree();
        let mut lhs = Polynomial::zero(p.vars().clone());
        for i in 0..p.nvars() {
            lhs = &lhs + &(&Polynomial::var(p.vars().clone(), i) * &p.derivative(i));
        }
        let rhs = p.scale(&int(i64::from(d)));
        ensure((&lhs - &rhs).is_zero(), format!("Euler identity fails for {e}"))?;
    }

    // ∂∘∂ = 0 on sublevel and shell complexes of a few potentials.
    let mut complexes = 0;
    for (text, level) in [("x1^2 + x2^2 + x3^2", rat(1, 2)), ("(x1^2 + x2^2 - 1)^2 + x3^4", rat(1, 2))] {
        let q = poly(text, &A3);
        let grid = GridSpec::uniform(IntervalBox::cube(3, -1.6, 1.6), 20).map_err(|e| e.to_string())?;
        for c in [
            build_sublevel_complex(&q, &level, &grid).map_err(|e| e.to_string())?,
            build_shell_complex(&q, &level, &rat(1, 10), &grid).map_err(|e| e.to_string())?,
        ] {
            c.check_chain_complex().map_err(|e| format!("{text}: {e}"))?;
            complexes += 1;
        }
    }

    // Planted witnesses inside the domain are never certified empty.
    let budget = Budget {
        max_boxes: 20_000,
        ..Budget::default()
    };
    for _ in 0..40 {
        let r: Vec<Rational> = (0..2).map(|_| rat(rng.gen_range(-8..=8), rng.gen_range(9..=12))).collect();
        let eqs: Vec<Polynomial> = (0..2)
            .map(|_| {
                let f = random_poly(&mut rng, &["x", "y"]);
                let c = f.evaluate(&r).unwrap();
                &f - &Polynomial::constant(f.vars().clone(), c)
            })
            .collect();
        let cert = certify_empty(&ConstraintSystem::new(eqs.clone(), IntervalBox::cube(2, -1.0, 1.0)), &budget);
        ensure(cert.verdict != Verdict::Certified, format!("planted system certified empty: {eqs:?}"))?;
    }

    // Form-space dimension against monomial enumeration.
    for n in 1..=6u32 {
        let count = monomials_of_degree(n as usize + 1, n + 1).len() as u64;
        ensure(space_dimension(n).dim == count, format!("n = {n}: {} vs {count}", space_dimension(n).dim))?;
    }
    ensure_time(t, 120, "property suites")?;
    Ok(format!(
        "1000 triples, 0 violations; Euler identity on {} entries; ∂∘∂ = 0 on {complexes} complexes; 40 planted systems; n ≤ 6",
        catalog.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("critical values of q₀", criterion_1),
        ("critical values of the quintic potential", criterion_2),
        ("even-quartic torus mesh", criterion_3),
        ("quintic 3-torus homology", criterion_4),
        ("real-emptiness certificates", criterion_5),
        ("exact singular witnesses", criterion_6),
        ("cubic component counts and flexes", criterion_7),
        ("fermat and two-tori covers", criterion_8),
        ("property suites", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("criterion {}: PASS ({secs:.1} s) {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL ({secs:.1} s) {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
