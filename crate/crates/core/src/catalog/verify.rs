use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use super::report::{ClaimRecord, ClaimVerdict, Environment, StageTiming, VerificationReport};
use super::witness::{verify_singular_witnesses, SingularLocusReport};
use super::{affine_potential, chart_factor, CatalogEntry, CatalogError, Family, Route};
use crate::interval::{
    certify_bounded_locus, certify_empty, certify_regular_value, enclose_critical_values, is_exact_critical_point,
    Budget, Certificate, ConstraintSystem, CriticalValues, EnclosureOptions, Interval, IntervalBox, Verdict,
};
use crate::poly::{int, parse_complex_polynomial, rat, rational_to_f64, Polynomial, Rational};
use crate::projective::{
    analyze_cover, certify_affine_containment, choose_pole, quotient_invariants, stereographic_pullback, ChartedCover,
    CoverAnalysis, QuotientReport,
};
use crate::topology::{
    build_shell_complex, build_sublevel_complex, default_shell_halfwidth, marching_cubes, marching_squares, BettiProfile,
    GridSpec, SurfaceMesh,
};

/// Grid and budget settings for [`run_verification`].
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    /// Primary resolution; `None` uses the entry default.
    pub grid: Option<usize>,
    pub budget: Budget,
    /// Repeat grid-based stages at 1.5× resolution and compare.
    pub stability: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            grid: None,
            budget: Budget::default(),
            stability: true,
        }
    }
}

/// Default primary resolution per entry, in cells per axis.
pub fn default_grid(entry: &CatalogEntry) -> usize {
    match entry.family {
        Family::Cubic { .. } => 128,
        Family::FermatQuartic | Family::EvenQuartic { .. } => 96,
        // Coarser grids merge the two nested tori in the chart.
        Family::TwoTori { .. } => 160,
        Family::Quintic { .. } => 24,
        Family::CubicSingular | Family::CubicLines => 0,
    }
}

fn stability_grid(n: usize) -> usize {
    n * 3 / 2
}

/// Shell half-width used for cubical complexes.
const SHELL_HALFWIDTH: (i64, i64) = (1, 20);
/// Half-widths tried for the quintic meshing window, smallest first.
const QUINTIC_WINDOWS: [(i64, i64); 4] = [(13, 10), (3, 2), (7, 4), (2, 1)];
/// Domain half-width for critical-value enclosures.
const ENCLOSURE_HALFWIDTH: f64 = 2.0;

struct Run<'a> {
    entry: &'a CatalogEntry,
    config: &'a VerifyConfig,
    grid: usize,
    results: BTreeMap<&'static str, (ClaimVerdict, Value)>,
    timings: Vec<StageTiming>,
    notes: Vec<String>,
}

impl Run<'_> {
    fn set(&mut self, id: &'static str, verdict: ClaimVerdict, evidence: Value) {
        debug_assert!(self.entry.claims.iter().any(|c| c.id == id), "unknown claim {id}");
        self.results.insert(id, (verdict, evidence));
    }

    fn verdict(&self, id: &str) -> Option<ClaimVerdict> {
        self.results.get(id).map(|r| r.0)
    }

    fn timed<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timings.push(StageTiming {
            stage: stage.into(),
            millis: start.elapsed().as_millis() as u64,
        });
        out
    }

    fn budget(&self) -> Budget {
        self.config.budget
    }
}

fn exact(ok: bool) -> ClaimVerdict {
    if ok {
        ClaimVerdict::Certified
    } else {
        ClaimVerdict::Refuted
    }
}

/// Verdict for a claim that a real locus is empty.
fn emptiness_verdict(c: &Certificate) -> ClaimVerdict {
    match c.verdict {
        Verdict::Certified => ClaimVerdict::Certified,
        Verdict::RefutedByWitness => ClaimVerdict::Refuted,
        Verdict::Inconclusive => ClaimVerdict::Inconclusive,
    }
}

/// Verdict for grid evidence whose preconditions are certified.
fn grid_verdict(preconditions: bool, matches: bool) -> ClaimVerdict {
    if preconditions && matches {
        ClaimVerdict::Consistent
    } else {
        ClaimVerdict::Inconclusive
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable evidence")
}

fn all_certified(ids: &[&str], run: &Run) -> bool {
    ids.iter().all(|id| run.verdict(id) == Some(ClaimVerdict::Certified))
}

/// Runs every stage of the entry's pipeline and assigns a verdict to each of
/// its claims. Claims whose stages cannot run are reported inconclusive.
pub fn run_verification(entry: &CatalogEntry, config: &VerifyConfig) -> Result<VerificationReport, CatalogError> {
    let grid = config.grid.unwrap_or_else(|| default_grid(entry));
    let mut run = Run {
        entry,
        config,
        grid,
        results: BTreeMap::new(),
        timings: Vec::new(),
        notes: vec!["only real points of singular loci are searched; complex emptiness is not certified".into()],
    };
    match entry.family {
        Family::Cubic { .. } => run.notes.push(
            "membership of σ in the open set where Σ_P is empty is not decided; only real emptiness is certified".into(),
        ),
        Family::Quintic { .. } => run.notes.push(
            "GF(2) Betti numbers (1, 3, 3, 1) are homology-consistent with T³; they do not prove a diffeomorphism".into(),
        ),
        Family::EvenQuartic { .. } | Family::FermatQuartic | Family::TwoTori { .. } => run.notes.push(
            "torus conclusions rest on Euler characteristic and orientability of meshes; they are reported as consistent, not certified".into(),
        ),
        Family::CubicSingular | Family::CubicLines => {}
    }
    if entry.route == Route::Cover && entry.n == 2 {
        run.notes.push("odd components are those whose spherical lift is connected; no ℤ₂-homology class is computed".into());
    }

    let p = &entry.polynomial;
    run.set(
        "real-structure",
        exact(p.to_complex().has_real_structure()),
        json!({"coefficients": "rational"}),
    );
    let degree = p.homogeneous_degree()?.unwrap_or(0);
    let defect = p.euler_defect(degree);
    run.set(
        "euler-identity",
        exact(degree >= 1 && defect.is_zero()),
        json!({"degree": degree, "defect": defect.to_string()}),
    );

    let budget = run.budget();
    let singular = run.timed("singular-locus", || verify_singular_witnesses(entry, &budget))?;

    match &entry.family {
        Family::Cubic { sigma } => {
            let sigma = sigma.clone();
            verify_cubic(&mut run, &singular, &sigma)?
        }
        Family::CubicSingular => verify_cubic_singular(&mut run, &singular)?,
        Family::CubicLines => verify_cubic_lines(&mut run, &singular),
        Family::FermatQuartic => verify_fermat(&mut run, &singular)?,
        Family::TwoTori { .. } => verify_two_tori(&mut run, &singular)?,
        Family::EvenQuartic { .. } => verify_even_quartic(&mut run, &singular)?,
        Family::Quintic { .. } => verify_quintic(&mut run, &singular)?,
    }

    let mut results = std::mem::take(&mut run.results);
    let claims = entry
        .claims
        .iter()
        .map(|c| {
            let (verdict, evidence) = results
                .remove(c.id)
                .unwrap_or((ClaimVerdict::Inconclusive, json!({"reason": "not evaluated"})));
            ClaimRecord {
                id: c.id.into(),
                claim: c.text.clone(),
                method: c.method.into(),
                verdict,
                evidence,
            }
        })
        .collect();
    let uses_grid = grid > 0;
    Ok(VerificationReport {
        entry: entry.id.into(),
        params: entry.params.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
        polynomial: p.to_string(),
        route: entry.route,
        claims,
        singular_locus: singular,
        environment: Environment {
            grid,
            stability_grid: (uses_grid && config.stability).then(|| stability_grid(grid)),
            budget: config.budget,
            threads: crate::par::thread_count(),
            timings: run.timings,
        },
        notes: run.notes,
    })
}

fn set_emptiness(run: &mut Run, id: &'static str, singular: &SingularLocusReport, locus: &str) {
    match singular.check(locus) {
        Some(c) => run.set(id, emptiness_verdict(c), to_json(c)),
        None => run.set(id, ClaimVerdict::Inconclusive, json!({"reason": "no emptiness search"})),
    }
}

// ---------------------------------------------------------------- cover route

/// Cover analysis plus the invariants compared across resolutions.
struct CoverRun {
    cc: ChartedCover,
    analysis: CoverAnalysis,
    quotient: QuotientReport,
    stable: Option<bool>,
    evidence: Value,
}

fn signature(ca: &CoverAnalysis) -> (usize, usize, Vec<i64>) {
    let mut chis: Vec<i64> = ca.components.iter().map(|c| c.chi).collect();
    chis.sort_unstable();
    (ca.invariant_count(), ca.swapped_pairs(), chis)
}

fn run_cover(run: &mut Run) -> Result<CoverRun, CatalogError> {
    let p = run.entry.polynomial.clone();
    let budget = run.budget();
    let (cc, pole) = run.timed("pole-and-pullback", || -> Result<_, CatalogError> {
        let pole = choose_pole(&p)?;
        Ok((stereographic_pullback(&p, &pole)?, pole))
    })?;
    let grid = cc.grid(run.grid)?;
    let analysis = run.timed("cover-analysis", || analyze_cover(&cc, &grid, &budget))?;
    let quotient = quotient_invariants(&analysis)?;
    let mut stable = None;
    let mut stability = Value::Null;
    if run.config.stability {
        let fine = cc.grid(stability_grid(run.grid))?;
        let rerun = run.timed("cover-analysis-rerun", || analyze_cover(&cc, &fine, &budget))?;
        let same = rerun.is_sound() && signature(&rerun) == signature(&analysis);
        stable = Some(same);
        stability = json!({
            "resolution": rerun.resolution,
            "components": rerun.components,
            "agrees": same,
        });
    }
    let evidence = json!({
        "pole": pole,
        "chart_window_halfwidth": cc.window.intervals()[0].hi(),
        "pullback_degree": cc.pullback.degree(),
        "resolution": analysis.resolution,
        "regular_value": analysis.regular,
        "bounded_locus": analysis.bounded,
        "pairing_complete": analysis.pairing_complete,
        "components": analysis.components,
        "level_shift": analysis.level_shift,
        "quotient": quotient,
        "stability": stability,
    });
    Ok(CoverRun {
        cc,
        analysis,
        quotient,
        stable,
        evidence,
    })
}

impl CoverRun {
    fn sound(&self) -> bool {
        self.analysis.is_sound() && self.stable != Some(false)
    }
}

fn flex_points() -> [[i64; 3]; 3] {
    [[0, 1, -1], [-1, 0, 1], [1, -1, 0]]
}

fn verify_cubic(run: &mut Run, singular: &SingularLocusReport, sigma: &Rational) -> Result<(), CatalogError> {
    set_emptiness(run, "singular-real-empty", singular, "Σ_P");
    let p = run.entry.polynomial.clone();
    let hessian = p.hessian_determinant()?;
    let mut on_curve = true;
    let mut on_hessian = true;
    for f in flex_points() {
        let x: Vec<Rational> = f.iter().map(|&c| int(c)).collect();
        on_curve &= p.evaluate(&x)?.is_zero();
        on_hessian &= hessian.evaluate(&x)?.is_zero();
    }
    run.set(
        "flexes",
        exact(on_curve && on_hessian),
        json!({"on_curve": on_curve, "on_hessian": on_hessian, "hessian": hessian.to_string()}),
    );

    let cover = run_cover(run)?;
    let expected = if *sigma > int(1) { 2 } else { 1 };
    let count = cover.quotient.count();
    let sound = cover.sound();
    run.set(
        "component-count",
        grid_verdict(sound, count == expected),
        json!({"expected": expected, "found": count, "cover": cover.evidence}),
    );
    let odd: Vec<usize> = cover
        .quotient
        .components
        .iter()
        .enumerate()
        .filter(|(_, c)| c.odd == Some(true))
        .map(|(i, _)| i)
        .collect();
    run.set(
        "odd-component",
        grid_verdict(sound, odd.len() == 1),
        json!({"odd_components": odd.len(), "quotient": cover.quotient}),
    );

    // Locate the sphere lifts of each flex on the cover mesh.
    let resolution = cover.analysis.resolution;
    let grid = cover.cc.grid(resolution)?;
    let curve = marching_squares(&cover.cc.pullback, &int(0), &grid)?;
    let tol = 2.0 * grid.cell_diagonal();
    let mut located = Vec::new();
    for f in flex_points() {
        let norm = f.iter().map(|&c| (c * c) as f64).sum::<f64>().sqrt();
        for s in [1.0, -1.0] {
            let x: Vec<f64> = f.iter().map(|&c| s * c as f64 / norm).collect();
            let hit = cover.cc.sphere_to_chart(&x).and_then(|t| {
                curve
                    .vertices
                    .iter()
                    .zip(&curve.vertex_component)
                    .map(|(v, &c)| (((v[0] - t[0]).powi(2) + (v[1] - t[1]).powi(2)).sqrt(), c))
                    .min_by(|a, b| a.0.total_cmp(&b.0))
            });
            if let Some((d, c)) = hit {
                if d <= tol {
                    located.push(c);
                }
            }
        }
    }
    let invariant: Vec<usize> = cover
        .analysis
        .components
        .iter()
        .enumerate()
        .filter(|(i, c)| c.is_invariant(*i))
        .map(|(i, _)| i)
        .collect();
    let on_odd = located.len() == 6 && invariant.len() == 1 && located.iter().all(|c| *c == invariant[0]);
    run.set(
        "flexes-on-odd-component",
        grid_verdict(sound, on_odd),
        json!({"lifts_located": located.len(), "components_hit": located, "odd_cover_component": invariant}),
    );
    let has_circle = cover.analysis.components.iter().any(|c| c.closed);
    let in_t = run.verdict("singular-real-empty") == Some(ClaimVerdict::Certified)
        && run.verdict("component-count") == Some(ClaimVerdict::Consistent);
    run.set(
        "in-T",
        grid_verdict(in_t, has_circle),
        json!({"requires": ["singular-real-empty", "component-count"]}),
    );
    Ok(())
}

fn verify_cubic_singular(run: &mut Run, singular: &SingularLocusReport) -> Result<(), CatalogError> {
    let e = run.entry;
    let (l, c) = (&e.factors[0], &e.factors[1]);
    run.set(
        "line-factor",
        exact(&(l * c) == &e.polynomial),
        json!({"L": l.to_string(), "C": c.to_string()}),
    );
    let vars = c.vars().clone();
    let d = |i: usize, j: usize| &Polynomial::var(vars.clone(), i) - &Polynomial::var(vars.clone(), j);
    let sos = &(&(&d(0, 1) * &d(0, 1)) + &(&d(1, 2) * &d(1, 2))) + &(&d(0, 2) * &d(0, 2));
    let identity = c.scale(&int(2)) == sos;
    let ones = vec![int(1); 3];
    let c_at = c.evaluate(&ones)?;
    run.set(
        "residual-real-point",
        exact(identity && c_at.is_zero()),
        json!({"identity": format!("2·C = {sos}"), "C(1,1,1)": c_at.to_string()}),
    );
    let witnessed = singular.witnesses.iter().any(|w| w.real && w.point == ["1", "1", "1"]);
    let l_at = l.evaluate(&ones)?;
    run.set(
        "real-singular-point",
        exact(witnessed && !l_at.is_zero()),
        json!({"point": [1, 1, 1], "L(1,1,1)": l_at.to_string()}),
    );
    set_emptiness(run, "singular-real-empty", singular, "Σ_P");
    // Real singular points lie on H_C, whose only real point is off H_L.
    let ok = all_certified(&["line-factor", "residual-real-point", "real-singular-point"], run);
    run.set(
        "in-T",
        if ok { ClaimVerdict::Certified } else { ClaimVerdict::Inconclusive },
        json!({
            "argument": "points of H_L off H_C are smooth points of H_P, and the only real point of H_C is [1,1,1] with L(1,1,1) ≠ 0",
            "requires": ["line-factor", "residual-real-point", "real-singular-point"],
        }),
    );
    Ok(())
}

fn verify_cubic_lines(run: &mut Run, singular: &SingularLocusReport) {
    let e = run.entry;
    let product = e.factors.iter().skip(1).fold(e.factors[0].clone(), |acc, f| &acc * f);
    let rows: Vec<Vec<Rational>> = e
        .factors
        .iter()
        .map(|f| (0..3).map(|i| f.derivative(i).evaluate(&[int(0), int(0), int(0)]).expect("3 variables")).collect())
        .collect();
    let det = &rows[0][0] * (&rows[1][1] * &rows[2][2] - &rows[1][2] * &rows[2][1])
        - &rows[0][1] * (&rows[1][0] * &rows[2][2] - &rows[1][2] * &rows[2][0])
        + &rows[0][2] * (&rows[1][0] * &rows[2][1] - &rows[1][1] * &rows[2][0]);
    run.set(
        "three-lines",
        exact(product == e.polynomial && !det.is_zero()),
        json!({"factors": e.factors.iter().map(ToString::to_string).collect::<Vec<_>>(), "coefficient_determinant": det.to_string()}),
    );
    let real = singular.witnesses.iter().filter(|w| w.real).count();
    run.set(
        "no-smooth-component",
        exact(real == 3 && !det.is_zero()),
        json!({"real_singular_points": real, "argument": "the lines meet pairwise in the three witnesses, so the real locus is connected and singular"}),
    );
    set_emptiness(run, "singular-real-empty", singular, "Σ_P");
}

fn verify_fermat(run: &mut Run, singular: &SingularLocusReport) -> Result<(), CatalogError> {
    set_emptiness(run, "singular-real-empty", singular, "Σ_P");
    let p = run.entry.polynomial.clone();
    let budget = run.budget();
    let cert = run.timed("chart-hyperplane", || certify_affine_containment(&p, 0, &budget));
    let verdict = match cert.verdict {
        Verdict::RefutedByWitness => ClaimVerdict::Certified,
        Verdict::Certified => ClaimVerdict::Refuted,
        Verdict::Inconclusive => ClaimVerdict::Inconclusive,
    };
    run.set("meets-chart-hyperplane", verdict, to_json(&cert));

    let cover = run_cover(run)?;
    let sound = cover.sound();
    let q = &cover.quotient;
    let torus = q.count() == 1 && q.components[0].invariant && q.components[0].chi == 0 && q.components[0].label == "torus";
    run.set("torus", grid_verdict(sound, torus), cover.evidence.clone());
    let connected_lift = cover.analysis.components.len() == 1 && cover.analysis.invariant_count() == 1;
    run.set(
        "non-contractible",
        grid_verdict(sound, connected_lift),
        json!({"cover_components": cover.analysis.components.len(), "invariant": cover.analysis.invariant_count()}),
    );
    let pre = run.verdict("singular-real-empty") == Some(ClaimVerdict::Certified);
    run.set(
        "in-T",
        grid_verdict(pre && sound, torus),
        json!({"requires": ["singular-real-empty", "torus"]}),
    );
    Ok(())
}

fn verify_two_tori(run: &mut Run, singular: &SingularLocusReport) -> Result<(), CatalogError> {
    let e = run.entry;
    run.set(
        "factorization",
        exact(&(&e.factors[0] * &e.factors[1]) == &e.polynomial),
        json!({"factors": e.factors.iter().map(ToString::to_string).collect::<Vec<_>>()}),
    );
    let line_witnesses = singular.witnesses.iter().filter(|w| w.locus.starts_with("L_")).count();
    run.set(
        "singular-lines",
        exact(line_witnesses == 20),
        json!({"lines": 4, "exact_samples_per_line": 5, "verified": line_witnesses}),
    );
    set_emptiness(run, "singular-real-empty", singular, "Σ_R");

    let cover = run_cover(run)?;
    let sound = cover.sound();
    let q = &cover.quotient;
    let two = q.count() == 2 && q.components.iter().all(|c| c.invariant && c.chi == 0 && c.label == "torus");
    run.set("two-tori", grid_verdict(sound, two), cover.evidence.clone());
    let lifts = cover.analysis.components.len() == 2 && cover.analysis.invariant_count() == 2;
    run.set(
        "non-contractible",
        grid_verdict(sound, lifts),
        json!({"cover_components": cover.analysis.components.len(), "invariant": cover.analysis.invariant_count()}),
    );
    let pre = run.verdict("singular-real-empty") == Some(ClaimVerdict::Certified);
    run.set(
        "in-T",
        grid_verdict(pre && sound, two),
        json!({"requires": ["singular-real-empty", "two-tori"]}),
    );
    Ok(())
}

// --------------------------------------------------------------- affine route

fn known_critical_points(entry: &CatalogEntry) -> Vec<Vec<Rational>> {
    match entry.family {
        Family::EvenQuartic { .. } => vec![vec![int(0); 3], vec![int(1), int(0), int(0)]],
        Family::Quintic { .. } => vec![
            vec![int(0); 4],
            vec![int(1), int(0), int(0), int(0)],
            vec![int(1), int(0), int(1), int(0)],
        ],
        _ => Vec::new(),
    }
}

/// Encloses the critical values of `q` and checks them against exactly
/// verified critical points.
fn critical_values_claim(run: &mut Run, q: &Polynomial) -> Result<CriticalValues, CatalogError> {
    let k = q.nvars();
    let domain = IntervalBox::cube(k, -ENCLOSURE_HALFWIDTH, ENCLOSURE_HALFWIDTH);
    let opts = EnclosureOptions {
        budget: run.budget(),
        ..EnclosureOptions::default()
    };
    let cv = run.timed("critical-values", || enclose_critical_values(q, &domain, &opts));
    let mut values = Vec::new();
    let mut all_exact = true;
    for x in known_critical_points(run.entry) {
        all_exact &= is_exact_critical_point(q, &x);
        values.push(q.evaluate(&x)?);
    }
    let each_attained = cv
        .enclosures
        .iter()
        .all(|iv| values.iter().any(|v| iv.contains_rational(v)));
    let each_covered = values.iter().all(|v| cv.enclosures.iter().any(|iv| iv.contains_rational(v)));
    let verdict = if !all_exact || !each_covered {
        ClaimVerdict::Refuted
    } else if cv.certificate.is_certified() && each_attained {
        ClaimVerdict::Certified
    } else {
        ClaimVerdict::Inconclusive
    };
    run.set(
        "critical-values",
        verdict,
        json!({
            "domain": domain.as_pairs(),
            "enclosures": cv.enclosures.iter().map(|iv| [iv.lo(), iv.hi()]).collect::<Vec<_>>(),
            "total_width": cv.total_width(),
            "exact_critical_values": values.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "every_enclosure_contains_an_exact_value": each_attained,
            "certificate": cv.certificate,
            "adequacy": cv.adequacy,
        }),
    );
    Ok(cv)
}

/// Regularity of `level`, boundedness on `window`, and absence of the level
/// set from the enclosure domain outside `window`.
fn regular_level_claim(run: &mut Run, q: &Polynomial, level: &Rational, window: &IntervalBox, cv: &CriticalValues) -> bool {
    let budget = run.budget();
    let (regular, bounded) = run.timed("regular-level", || {
        (
            certify_regular_value(q, level, window, &budget),
            certify_bounded_locus(q, level, window, &budget),
        )
    });
    let k = q.nvars();
    let h = window.intervals()[0].hi();
    let mut exterior = Vec::new();
    if h < ENCLOSURE_HALFWIDTH {
        let shifted = q - &Polynomial::constant(q.vars().clone(), level.clone());
        for axis in 0..k {
            for (lo, hi) in [(-ENCLOSURE_HALFWIDTH, -h), (h, ENCLOSURE_HALFWIDTH)] {
                let mut b = vec![Interval::new(-ENCLOSURE_HALFWIDTH, ENCLOSURE_HALFWIDTH); k];
                b[axis] = Interval::new(lo, hi);
                let sys = ConstraintSystem::new(vec![shifted.clone()], IntervalBox::new(b));
                exterior.push(certify_empty(&sys, &budget));
            }
        }
    }
    let lv = rational_to_f64(level);
    let off_enclosures = !cv.meets(&Interval::point(lv));
    let ok = regular.is_certified() && bounded.is_certified() && exterior.iter().all(Certificate::is_certified);
    let verdict = if ok {
        ClaimVerdict::Certified
    } else if regular.verdict == Verdict::RefutedByWitness {
        ClaimVerdict::Refuted
    } else {
        ClaimVerdict::Inconclusive
    };
    run.set(
        "regular-level",
        verdict,
        json!({
            "level": level.to_string(),
            "window": window.as_pairs(),
            "regular_value": regular,
            "bounded_locus": bounded,
            "exterior_slabs_empty": exterior.iter().map(|c| c.verdict).collect::<Vec<_>>(),
            "level_outside_critical_enclosures": off_enclosures,
        }),
    );
    ok
}

fn mesh_summary(m: &SurfaceMesh) -> Value {
    json!({
        "vertices": m.vertices.len(),
        "triangles": m.triangles.len(),
        "components": m.component_stats(),
        "euler_characteristic": m.euler_characteristic(),
        "closed": m.is_closed(),
        "level_shift": m.level_shift,
    })
}

fn is_single_torus(m: &SurfaceMesh) -> bool {
    let s = m.component_stats();
    s.len() == 1 && s[0].closed && s[0].oriented && s[0].chi == 0 && s[0].genus == Some(1)
}

fn shell_halfwidth(cv: &CriticalValues, level: &Rational, grid: &GridSpec, q: &Polynomial) -> Rational {
    let fixed = rat(SHELL_HALFWIDTH.0, SHELL_HALFWIDTH.1);
    let default = default_shell_halfwidth(cv.gap_to(rational_to_f64(level)), grid, q);
    if default >= rational_to_f64(&fixed) {
        fixed
    } else {
        // Largest 1/2^k below the default keeps δ exact and deterministic.
        let mut d = fixed;
        while rational_to_f64(&d) > default && d.is_positive() {
            d /= int(2);
        }
        d
    }
}

struct Complexes {
    shell: BettiProfile,
    sublevel: BettiProfile,
    delta: Rational,
}

fn complexes(q: &Polynomial, level: &Rational, grid: &GridSpec, cv: &CriticalValues) -> Result<Complexes, CatalogError> {
    let delta = shell_halfwidth(cv, level, grid, q);
    let shell = build_shell_complex(q, level, &delta, grid)?;
    shell.check_chain_complex()?;
    let sublevel = build_sublevel_complex(q, level, grid)?;
    sublevel.check_chain_complex()?;
    Ok(Complexes {
        shell: shell.betti_mod2()?,
        sublevel: sublevel.betti_mod2()?,
        delta,
    })
}

fn complexes_json(c: &Complexes, resolution: usize) -> Value {
    json!({
        "resolution": resolution,
        "shell_halfwidth": c.delta.to_string(),
        "shell": c.shell,
        "sublevel": c.sublevel,
    })
}

fn chart_identity_claim(run: &mut Run, q: &Polynomial, level: &Rational) {
    let factor = chart_factor(run.entry);
    let chart = factor.dehomogenize(0);
    let expected = q - &Polynomial::constant(q.vars().clone(), level.clone());
    run.set(
        "chart-identity",
        exact(chart == expected),
        json!({"dehomogenized": chart.to_string()}),
    );
}

fn verify_even_quartic(run: &mut Run, singular: &SingularLocusReport) -> Result<(), CatalogError> {
    let (q, level) = affine_potential(run.entry).expect("affine entry");
    chart_identity_claim(run, &q, &level);
    let points = singular.witnesses.iter().filter(|w| w.locus == "Σ_Q").count();
    run.set("singular-points", exact(points == 2), json!({"verified_points": points}));
    set_emptiness(run, "singular-real-empty", singular, "Σ_Q");

    let cv = critical_values_claim(run, &q)?;
    let window = IntervalBox::cube(3, -ENCLOSURE_HALFWIDTH, ENCLOSURE_HALFWIDTH);
    let regular = regular_level_claim(run, &q, &level, &window, &cv);

    let p = run.entry.polynomial.clone();
    let budget = run.budget();
    let cert = run.timed("affine-containment", || certify_affine_containment(&p, 0, &budget));
    run.set("affine-containment", emptiness_verdict(&cert), to_json(&cert));

    let n = run.grid;
    let grid = GridSpec::uniform(window.clone(), n)?;
    let mesh = run.timed("mesh", || marching_cubes(&q, &level, &grid))?;
    let mut torus = is_single_torus(&mesh);
    let mut evidence = json!({"mesh": mesh_summary(&mesh)});
    let cn = (n / 2).max(crate::topology::MIN_RESOLUTION);
    let cgrid = GridSpec::uniform(window.clone(), cn)?;
    let cx = run.timed("cubical-homology", || complexes(&q, &level, &cgrid, &cv))?;
    let mut solid = cx.sublevel.betti == [1, 1, 0, 0] && cx.shell.betti == [1, 2, 1, 0];
    let chi_match = mesh.euler_characteristic() == cx.shell.euler;
    let mut cxv = json!({"primary": complexes_json(&cx, cn), "mesh_chi_equals_shell_chi": chi_match});
    if run.config.stability {
        let fine = GridSpec::uniform(window.clone(), stability_grid(n))?;
        let m2 = run.timed("mesh-rerun", || marching_cubes(&q, &level, &fine))?;
        torus &= is_single_torus(&m2);
        evidence["stability"] = mesh_summary(&m2);
        let cfine = GridSpec::uniform(window.clone(), stability_grid(cn))?;
        let cx2 = run.timed("cubical-homology-rerun", || complexes(&q, &level, &cfine, &cv))?;
        solid &= cx2.sublevel.betti == cx.sublevel.betti && cx2.shell.betti == cx.shell.betti;
        cxv["stability"] = complexes_json(&cx2, stability_grid(cn));
    }
    run.set("torus", grid_verdict(regular, torus), evidence);
    run.set("retracts-to-circle", grid_verdict(regular, solid && chi_match), cxv);

    let contained = run.verdict("affine-containment") == Some(ClaimVerdict::Certified);
    run.set(
        "contractible",
        if contained { ClaimVerdict::Certified } else { ClaimVerdict::Inconclusive },
        json!({"argument": "the slice lies in the affine chart X0 ≠ 0 ≅ ℝ³, which misses the plane X0 = 0", "requires": ["affine-containment"]}),
    );
    let pre = contained && run.verdict("singular-real-empty") == Some(ClaimVerdict::Certified);
    run.set(
        "in-T",
        grid_verdict(pre && regular, torus),
        json!({"requires": ["singular-real-empty", "affine-containment", "torus"]}),
    );
    Ok(())
}

/// Smallest listed window half-width whose exterior provably avoids the level
/// set: `(h² − 1)² ≥ 3/2 · level` bounds `q` from below there.
fn quintic_window(level: &Rational) -> Rational {
    QUINTIC_WINDOWS
        .iter()
        .map(|&(a, b)| rat(a, b))
        .find(|h| {
            let t = h * h - int(1);
            &t * &t * int(2) >= level * int(3)
        })
        .unwrap_or_else(|| int(2))
}

fn verify_quintic(run: &mut Run, singular: &SingularLocusReport) -> Result<(), CatalogError> {
    let e = run.entry;
    let (x0, qh) = (e.factors[0].clone(), e.factors[1].clone());
    run.set(
        "factorization",
        exact(&(&x0 * &qh) == &e.polynomial),
        json!({"factors": [x0.to_string(), qh.to_string()]}),
    );
    let (q, level) = affine_potential(e).expect("affine entry");
    chart_identity_claim(run, &q, &level);
    let lines = singular.witnesses.iter().filter(|w| w.locus.starts_with("L_")).count();
    run.set(
        "singular-lines",
        exact(lines == 20),
        json!({"lines": 4, "exact_samples_per_line": 5, "verified": lines}),
    );
    set_emptiness(run, "lines-real-empty", singular, "L_{m,n}");

    // Q restricted to X0 = 0 factors as (A + iB)(A − iB).
    let vars = qh.vars().clone();
    let mut images: Vec<Polynomial> = (0..vars.len()).map(|i| Polynomial::var(vars.clone(), i)).collect();
    images[0] = Polynomial::zero(vars.clone());
    let restricted = qh.compose(&images)?.to_complex();
    let plus = parse_complex_polynomial("(X1^2 + X2^2) + i*(X3^2 + X4^2)", &vars).expect("fixed text");
    let minus = parse_complex_polynomial("(X1^2 + X2^2) - i*(X3^2 + X4^2)", &vars).expect("fixed text");
    let s_witnesses = singular.witnesses.iter().filter(|w| w.locus.starts_with("S_")).count();
    run.set(
        "surfaces",
        exact(&plus * &minus == restricted && s_witnesses == 2),
        json!({"S+": plus.to_string(), "S-": minus.to_string(), "singular_samples_verified": s_witnesses}),
    );
    set_emptiness(run, "surfaces-real-empty", singular, "S±");

    let cv = critical_values_claim(run, &q)?;
    let h = quintic_window(&level);
    let hw = Interval::from_rational(&h).hi();
    let window = IntervalBox::cube(4, -hw, hw);
    let regular = regular_level_claim(run, &q, &level, &window, &cv);

    run.set(
        "hyperplane-component",
        exact(x0.degree() == 1 && x0.num_terms() == 1),
        json!({"argument": "the real points of a linear hyperplane form ℝP³", "factor": x0.to_string()}),
    );

    let n = run.grid;
    let grid = GridSpec::uniform(window.clone(), n)?;
    let cx = run.timed("cubical-homology", || complexes(&q, &level, &grid, &cv))?;
    let mut three = cx.shell.betti == [1, 3, 3, 1, 0];
    let mut retract = cx.sublevel.betti == [1, 2, 1, 0, 0];
    let mut ev = json!({"primary": complexes_json(&cx, n)});
    if run.config.stability {
        let fine = GridSpec::uniform(window.clone(), stability_grid(n))?;
        let cx2 = run.timed("cubical-homology-rerun", || complexes(&q, &level, &fine, &cv))?;
        three &= cx2.shell.betti == cx.shell.betti;
        retract &= cx2.sublevel.betti == cx.sublevel.betti;
        ev["stability"] = complexes_json(&cx2, stability_grid(n));
    }
    run.set("three-torus", grid_verdict(regular, three), ev.clone());
    run.set("retracts-to-clifford-torus", grid_verdict(regular, retract), ev);

    let smooth = all_certified(&["factorization", "lines-real-empty", "surfaces-real-empty"], run);
    run.set(
        "smooth-disjoint-union",
        if smooth { ClaimVerdict::Certified } else { ClaimVerdict::Inconclusive },
        json!({
            "argument": "Σ_P = S₊ ∪ S₋ together with the lines L_{m,n}; all are real-empty, and H_{X0} ∩ H_Q has no real points",
            "requires": ["factorization", "lines-real-empty", "surfaces-real-empty"],
        }),
    );
    run.set(
        "in-T",
        grid_verdict(smooth && regular, three),
        json!({"requires": ["smooth-disjoint-union", "three-torus"]}),
    );
    Ok(())
}

/// Surface mesh for entries with a two-dimensional real slice: the affine
/// torus of even-quartic, or the sphere cover of the cover-route quartics.
pub fn mesh_entry(entry: &CatalogEntry, grid: Option<usize>) -> Result<SurfaceMesh, CatalogError> {
    let n = grid.unwrap_or_else(|| default_grid(entry));
    match entry.family {
        Family::EvenQuartic { .. } => {
            let (q, level) = affine_potential(entry).expect("affine entry");
            let g = GridSpec::uniform(IntervalBox::cube(3, -ENCLOSURE_HALFWIDTH, ENCLOSURE_HALFWIDTH), n)?;
            Ok(marching_cubes(&q, &level, &g)?)
        }
        Family::FermatQuartic | Family::TwoTori { .. } => {
            let pole = choose_pole(&entry.polynomial)?;
            let cc = stereographic_pullback(&entry.polynomial, &pole)?;
            Ok(marching_cubes(&cc.pullback, &int(0), &cc.grid(n)?)?)
        }
        _ => Err(CatalogError::NoSurfaceMesh(entry.id.into())),
    }
}
