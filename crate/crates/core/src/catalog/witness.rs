use num_traits::Zero;
use serde::Serialize;

use super::{CatalogEntry, CatalogError, Family};
use crate::interval::{certify_empty, Budget, Certificate, ConstraintSystem};
use crate::poly::{int, rat, GaussianRational, Polynomial, Rational};

/// An exactly verified singular point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessRecord {
    /// Name of the singular locus the point belongs to.
    pub locus: String,
    pub point: Vec<String>,
    pub real: bool,
}

/// Real-emptiness search for one singular system on the unit sphere.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EmptinessCheck {
    pub locus: String,
    pub system: String,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingularLocusReport {
    pub emptiness: Vec<EmptinessCheck>,
    pub witnesses: Vec<WitnessRecord>,
    pub notes: Vec<String>,
}

impl SingularLocusReport {
    pub fn check(&self, locus: &str) -> Option<&Certificate> {
        self.emptiness.iter().find(|c| c.locus == locus).map(|c| &c.certificate)
    }
}

fn g(re: Rational, im: Rational) -> GaussianRational {
    GaussianRational::new(re, im)
}

fn r(x: Rational) -> GaussianRational {
    GaussianRational::real(x)
}

/// Exact parameter pairs `[a, b]` sampled along a projective line.
fn line_parameters() -> Vec<(GaussianRational, GaussianRational)> {
    vec![
        (r(int(1)), r(int(0))),
        (r(int(0)), r(int(1))),
        (r(int(1)), r(int(1))),
        (r(rat(2, 3)), r(int(-5))),
        (g(int(1), int(1)), g(rat(1, 2), int(-3))),
    ]
}

fn signed_i(m: u32) -> GaussianRational {
    if m == 0 {
        GaussianRational::i()
    } else {
        g(int(0), int(-1))
    }
}

/// Points of `L_{m,n}`, optionally preceded by a zero coordinate.
fn line_points(leading_zero: bool) -> Vec<(String, Vec<GaussianRational>)> {
    let mut out = Vec::new();
    for m in 0..2 {
        for n in 0..2 {
            for (a, b) in line_parameters() {
                let mut pt = Vec::new();
                if leading_zero {
                    pt.push(r(int(0)));
                }
                pt.extend([a.clone(), &signed_i(m) * &a, b.clone(), &signed_i(n) * &b]);
                out.push((format!("L_{{{m},{n}}}"), pt));
            }
        }
    }
    out
}

fn is_singular_at(p: &Polynomial, x: &[GaussianRational]) -> Result<bool, CatalogError> {
    if !p.evaluate_complex(x)?.is_zero() {
        return Ok(false);
    }
    for d in p.gradient() {
        if !d.evaluate_complex(x)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn real_points(pts: &[[i64; 3]]) -> Vec<Vec<GaussianRational>> {
    pts.iter().map(|p| p.iter().map(|&c| r(int(c))).collect()).collect()
}

fn sphere_check(locus: &str, system: &str, equations: Vec<Polynomial>, budget: &Budget) -> EmptinessCheck {
    EmptinessCheck {
        locus: locus.into(),
        system: system.into(),
        certificate: certify_empty(&ConstraintSystem::on_unit_sphere(equations), budget),
    }
}

/// Exactly verifies the entry's catalogued singular points and searches the
/// singular system for real points on the unit sphere.
///
/// A catalogued witness that fails exact verification is a catalog bug and
/// is reported as an error.
pub fn verify_singular_witnesses(entry: &CatalogEntry, budget: &Budget) -> Result<SingularLocusReport, CatalogError> {
    let p = &entry.polynomial;
    let mut notes = Vec::new();
    // (locus label, polynomial, points)
    let mut claimed: Vec<(String, &Polynomial, Vec<GaussianRational>)> = Vec::new();
    let mut emptiness = Vec::new();
    match &entry.family {
        Family::Cubic { .. } | Family::FermatQuartic => {
            notes.push("no singular points are catalogued; only real emptiness is checked".into());
        }
        Family::CubicSingular => {
            for pt in real_points(&[[1, 1, 1]]) {
                claimed.push(("Σ_P".into(), p, pt));
            }
            notes.push(
                "the two nonreal singular points involve cube roots of unity and are outside Gaussian-rational arithmetic"
                    .into(),
            );
        }
        Family::CubicLines => {
            for pt in real_points(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]) {
                claimed.push(("Σ_P".into(), p, pt));
            }
        }
        Family::TwoTori { .. } => {
            for (label, pt) in line_points(false) {
                claimed.push((label, p, pt));
            }
        }
        Family::EvenQuartic { .. } => {
            for s in [1, -1] {
                claimed.push(("Σ_Q".into(), p, vec![r(int(0)), r(int(1)), g(int(0), int(s)), r(int(0))]));
            }
        }
        Family::Quintic { .. } => {
            let q = &entry.factors[1];
            for (label, pt) in line_points(true) {
                claimed.push((label, q, pt));
            }
            let half = rat(1, 2);
            for (label, s) in [("S_+", 1), ("S_-", -1)] {
                let z = g(half.clone(), &half * int(s));
                claimed.push((label.into(), p, vec![r(int(0)), r(int(1)), r(int(0)), z.clone(), z]));
            }
        }
    }

    let mut witnesses = Vec::new();
    for (locus, poly, pt) in claimed {
        if !is_singular_at(poly, &pt)? {
            let shown: Vec<String> = pt.iter().map(ToString::to_string).collect();
            return Err(CatalogError::WitnessFailed(format!("{locus} at ({})", shown.join(", "))));
        }
        witnesses.push(WitnessRecord {
            locus,
            real: pt.iter().all(GaussianRational::is_real),
            point: pt.iter().map(ToString::to_string).collect(),
        });
    }

    match &entry.family {
        Family::Quintic { .. } => {
            let q = &entry.factors[1];
            emptiness.push(sphere_check("L_{m,n}", "∇Q = 0 on S⁴", q.gradient(), budget));
            emptiness.push(sphere_check("S±", "Q = X0 = 0 on S⁴", vec![q.clone(), entry.factors[0].clone()], budget));
        }
        _ => {
            let name = match entry.family {
                Family::TwoTori { .. } => "Σ_R",
                Family::EvenQuartic { .. } => "Σ_Q",
                _ => "Σ_P",
            };
            let system = format!("∇P = 0 on S{}", superscript(entry.n));
            emptiness.push(sphere_check(name, &system, p.gradient(), budget));
        }
    }
    Ok(SingularLocusReport {
        emptiness,
        witnesses,
        notes,
    })
}

fn superscript(n: usize) -> &'static str {
    ["⁰", "¹", "²", "³", "⁴", "⁵"].get(n).copied().unwrap_or("ⁿ")
}
