//! Real projective loci through their double covers on the unit sphere.
//!
//! A homogeneous `P` in `n + 1` variables is pulled back to `ℝⁿ` by the
//! inverse stereographic projection from a pole where `P ≠ 0`:
//!
//! ```text
//! x(t) = H · (|t|² − 1, 2t) / (1 + |t|²),   H e₀ = pole,
//! ```
//!
//! with `H` the rational reflection exchanging `e₀` and the pole. The pole
//! sits at infinity, the antipodal map becomes `t ↦ −t/|t|²`, and a cap of
//! angular radius `ρ` around the pole maps to `|t| ≥ 1/tan(ρ/2)`.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::interval::{
    certify_bounded_locus, certify_empty, certify_regular_value, Budget, Certificate, ConstraintSystem, Interval,
    IntervalBox, IntervalPoly, Verdict,
};
use crate::poly::{int, rat, rational_to_f64, variables, PolyError, Polynomial, Rational};
use crate::topology::{marching_cubes, marching_squares, GridSpec, TopologyError};

/// Samples per component for pairing and orientation transport.
pub const SAMPLES_PER_COMPONENT: usize = 32;
/// Pullback degree cap: `2·deg(source)` for sources up to this degree.
pub const MAX_SOURCE_DEGREE: u32 = 8;
/// Candidate values of `tan(ρ/2)` for the certified pole cap, largest first.
const CAP_TANGENTS: [(i64, i64); 14] = [
    (1, 1),
    (7, 8),
    (3, 4),
    (5, 8),
    (1, 2),
    (7, 16),
    (3, 8),
    (5, 16),
    (1, 4),
    (3, 16),
    (1, 8),
    (1, 16),
    (1, 32),
    (1, 64),
];
const CAP_BUDGET: u64 = 200_000;

#[derive(Debug, thiserror::Error)]
pub enum ProjectiveError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error("source polynomial must be homogeneous of positive degree")]
    NotHomogeneous,
    #[error("source degree {0} exceeds the supported maximum of {MAX_SOURCE_DEGREE}")]
    DegreeTooLarge(u32),
    #[error("no candidate pole avoids the locus; supply a pole manually")]
    NoPole,
    #[error("pole is not on the unit sphere or has the wrong dimension")]
    BadPole,
    #[error("pole lies on the locus")]
    PoleOnLocus,
    #[error("no spherical cap around the pole could be certified free of the locus")]
    CapNotCertified,
    #[error("antipodal pairing is not an involution")]
    PairingNotInvolution,
    #[error("antipodally invariant component has odd Euler characteristic {0}")]
    OddInvariantChi(i64),
}

/// A rational point of the sphere off the locus, with a certified cap.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Pole {
    /// Exact coordinates, printed as rationals.
    pub point: Vec<String>,
    /// Exact `P(pole)`.
    pub value: String,
    /// `tan(ρ/2)` for the certified cap of angular radius `ρ`.
    pub cap_tangent: String,
    pub cap_radius: f64,
    #[serde(skip)]
    exact: Vec<Rational>,
    #[serde(skip)]
    tangent: Rational,
}

impl Pole {
    pub fn coordinates(&self) -> &[Rational] {
        &self.exact
    }
}

/// Fixed candidate list: coordinate points, then Pythagorean points.
pub fn pole_candidates(nvars: usize) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    let unit = |i: usize, s: i64| {
        let mut v = vec![int(0); nvars];
        v[i] = int(s);
        v
    };
    for i in 0..nvars {
        out.push(unit(i, 1));
    }
    for i in 0..nvars {
        out.push(unit(i, -1));
    }
    for (a, b) in [(3, 4), (4, 3), (3, -4), (-4, 3)] {
        for i in 0..nvars {
            for j in i + 1..nvars {
                let mut v = vec![int(0); nvars];
                v[i] = rat(a, 5);
                v[j] = rat(b, 5);
                out.push(v);
            }
        }
    }
    for (a, b, c) in [(1, 2, 2), (2, 1, 2), (2, 2, 1), (2, 3, 6), (6, 2, 3)] {
        for i in 0..nvars {
            for j in i + 1..nvars {
                for k in j + 1..nvars {
                    let mut v = vec![int(0); nvars];
                    let den = if c == 6 || a == 6 { 7 } else { 3 };
                    v[i] = rat(a, den);
                    v[j] = rat(b, den);
                    v[k] = rat(c, den);
                    out.push(v);
                }
            }
        }
    }
    out
}

fn source_degree(p: &Polynomial) -> Result<u32, ProjectiveError> {
    match p.homogeneous_degree() {
        Ok(Some(d)) if d >= 1 => {
            if d > MAX_SOURCE_DEGREE {
                Err(ProjectiveError::DegreeTooLarge(d))
            } else {
                Ok(d)
            }
        }
        _ => Err(ProjectiveError::NotHomogeneous),
    }
}

/// Reflection `H = I − 2vvᵀ/(vᵀv)` with `v = e₀ − pole`, so `H e₀ = pole`.
fn reflection(pole: &[Rational]) -> Vec<Vec<Rational>> {
    let n = pole.len();
    let mut v: Vec<Rational> = pole.iter().map(|c| -c.clone()).collect();
    v[0] += int(1);
    let vv: Rational = v.iter().map(|c| c * c).fold(Rational::zero(), |a, b| a + b);
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let id = if i == j { int(1) } else { int(0) };
                    if vv.is_zero() {
                        id
                    } else {
                        id - int(2) * &v[i] * &v[j] / &vv
                    }
                })
                .collect()
        })
        .collect()
}

/// Pullback numerators and shared denominator in chart variables `t`.
fn chart_map(pole: &[Rational]) -> (Vec<Polynomial>, Polynomial) {
    let n = pole.len() - 1;
    let names: Vec<String> = (1..=n).map(|i| format!("t{i}")).collect();
    let vars = variables(&names);
    let one = Polynomial::constant(vars.clone(), int(1));
    let mut norm = Polynomial::zero(vars.clone());
    for i in 0..n {
        let t = Polynomial::var(vars.clone(), i);
        norm = &norm + &(&t * &t);
    }
    let mut base = vec![&norm - &one];
    for i in 0..n {
        base.push(Polynomial::var(vars.clone(), i).scale(&int(2)));
    }
    let h = reflection(pole);
    let numerators = h
        .iter()
        .map(|row| {
            row.iter()
                .zip(&base)
                .fold(Polynomial::zero(vars.clone()), |acc, (c, b)| &acc + &b.scale(c))
        })
        .collect();
    (numerators, &norm + &one)
}

fn raw_pullback(p: &Polynomial, pole: &[Rational]) -> Result<Polynomial, ProjectiveError> {
    let (num, den) = chart_map(pole);
    Ok(p.substitute_rational_map(&num, &den)?)
}

/// Largest listed `τ` such that the pullback has no zero on `[−τ, τ]ⁿ`.
/// That box contains the image of the cap around the antipode of the pole,
/// and the locus is antipodally symmetric, so the cap around the pole is
/// free of the locus as well.
fn certify_cap(pullback: &Polynomial) -> Option<Rational> {
    let n = pullback.nvars();
    let budget = Budget {
        max_boxes: CAP_BUDGET,
        min_width: 1e-6,
    };
    CAP_TANGENTS.iter().map(|&(a, b)| rat(a, b)).find(|tau| {
        let w = Interval::from_rational(tau).hi();
        if has_sign_change(pullback, w) {
            return false;
        }
        let sys = ConstraintSystem::new(vec![pullback.clone()], IntervalBox::cube(n, -w, w));
        certify_empty(&sys, &budget).verdict == Verdict::Certified
    })
}

/// Lattice points per axis for the cap pre-check.
const CAP_PROBE: usize = 9;

/// Some lattice sample of `[−w, w]ⁿ` has the opposite sign to the center, so
/// the box contains a zero and cannot be certified.
fn has_sign_change(pullback: &Polynomial, w: f64) -> bool {
    let n = pullback.nvars();
    let center = pullback.eval_f64(&vec![0.0; n]);
    let total = CAP_PROBE.pow(n as u32);
    let mut x = vec![0.0; n];
    (0..total).any(|mut k| {
        for xi in x.iter_mut() {
            *xi = -w + 2.0 * w * (k % CAP_PROBE) as f64 / (CAP_PROBE - 1) as f64;
            k /= CAP_PROBE;
        }
        pullback.eval_f64(&x) * center < 0.0
    })
}

fn make_pole(p: &Polynomial, point: Vec<Rational>) -> Result<Pole, ProjectiveError> {
    if point.len() != p.nvars() {
        return Err(ProjectiveError::BadPole);
    }
    let norm: Rational = point.iter().map(|c| c * c).fold(Rational::zero(), |a, b| a + b);
    if !norm.is_one() {
        return Err(ProjectiveError::BadPole);
    }
    let value = p.evaluate(&point)?;
    if value.is_zero() {
        return Err(ProjectiveError::PoleOnLocus);
    }
    let pb = raw_pullback(p, &point)?;
    let tangent = certify_cap(&pb).ok_or(ProjectiveError::CapNotCertified)?;
    Ok(Pole {
        point: point.iter().map(ToString::to_string).collect(),
        value: value.to_string(),
        cap_tangent: tangent.to_string(),
        cap_radius: 2.0 * rational_to_f64(&tangent).atan(),
        exact: point,
        tangent,
    })
}

/// First candidate pole with exact `P(pole) ≠ 0` and a certified cap.
pub fn choose_pole(p: &Polynomial) -> Result<Pole, ProjectiveError> {
    choose_pole_from(p, pole_candidates(p.nvars()))
}

/// As [`choose_pole`] over a caller-supplied candidate list.
pub fn choose_pole_from(p: &Polynomial, candidates: Vec<Vec<Rational>>) -> Result<Pole, ProjectiveError> {
    source_degree(p)?;
    for c in candidates {
        match make_pole(p, c) {
            Ok(pole) => return Ok(pole),
            Err(ProjectiveError::PoleOnLocus | ProjectiveError::CapNotCertified) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(ProjectiveError::NoPole)
}

/// Uses the given pole (checked exactly and cap-certified).
pub fn pole_at(p: &Polynomial, point: Vec<Rational>) -> Result<Pole, ProjectiveError> {
    source_degree(p)?;
    make_pole(p, point)
}

/// A homogeneous polynomial pulled back to a stereographic chart.
#[derive(Clone, Debug)]
pub struct ChartedCover {
    pub source: Polynomial,
    pub pole: Pole,
    pub pullback: Polynomial,
    /// `[−1/τ, 1/τ]ⁿ`; the locus lies in the open ball of radius `1/τ`.
    pub window: IntervalBox,
    numerators: Vec<Polynomial>,
    denominator: Polynomial,
}

impl ChartedCover {
    /// Exact point of the sphere for chart coordinates `t`.
    pub fn chart_to_sphere(&self, t: &[Rational]) -> Vec<Rational> {
        let d = self.denominator.evaluate(t).expect("chart dimension");
        self.numerators
            .iter()
            .map(|q| q.evaluate(t).expect("chart dimension") / &d)
            .collect()
    }

    /// Chart coordinates of a point of the unit sphere; `None` at the pole.
    pub fn sphere_to_chart(&self, x: &[f64]) -> Option<Vec<f64>> {
        let h = reflection(&self.pole.exact);
        let b: Vec<f64> = h
            .iter()
            .map(|row| row.iter().zip(x).map(|(c, v)| rational_to_f64(c) * v).sum())
            .collect();
        let den = 1.0 - b[0];
        (den.abs() > f64::EPSILON).then(|| b[1..].iter().map(|v| v / den).collect())
    }

    pub fn chart_dim(&self) -> usize {
        self.pullback.nvars()
    }

    pub fn grid(&self, n: usize) -> Result<GridSpec, TopologyError> {
        GridSpec::uniform(self.window.clone(), n)
    }
}

/// Builds the chart from `pole`.
pub fn stereographic_pullback(source: &Polynomial, pole: &Pole) -> Result<ChartedCover, ProjectiveError> {
    source_degree(source)?;
    if pole.exact.len() != source.nvars() {
        return Err(ProjectiveError::BadPole);
    }
    let (numerators, denominator) = chart_map(&pole.exact);
    let pullback = source.substitute_rational_map(&numerators, &denominator)?;
    let w = Interval::from_rational(&(Rational::one() / &pole.tangent)).hi();
    Ok(ChartedCover {
        source: source.clone(),
        pole: pole.clone(),
        window: IntervalBox::cube(pullback.nvars(), -w, w),
        pullback,
        numerators,
        denominator,
    })
}

/// The antipodal map `t ↦ −t/|t|²` in chart coordinates.
pub fn antipode_in_chart(t: &[f64]) -> Vec<f64> {
    let r2: f64 = t.iter().map(|x| x * x).sum();
    t.iter().map(|x| -x / r2).collect()
}

fn antipode_jacobian(t: &[f64]) -> Vec<Vec<f64>> {
    let r2: f64 = t.iter().map(|x| x * x).sum();
    let n = t.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let id = if i == j { 1.0 } else { 0.0 };
                    -(id / r2 - 2.0 * t[i] * t[j] / (r2 * r2))
                })
                .collect()
        })
        .collect()
}

fn det(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut d = 1.0;
    for c in 0..n {
        let p = (c..n)
            .max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs()))
            .expect("nonempty");
        if m[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= m[c][c];
        for r in c + 1..n {
            let f = m[r][c] / m[c][c];
            for k in c..n {
                m[r][k] -= f * m[c][k];
            }
        }
    }
    d
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    Preserving,
    Reversing,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoverComponent {
    pub vertices: usize,
    pub chi: i64,
    pub closed: bool,
    /// Component containing the antipodal images of this one's samples.
    pub partner: usize,
    pub orientation: Orientation,
    /// Samples on which the antipodal map preserved / reversed orientation.
    pub orientation_votes: [usize; 2],
}

impl CoverComponent {
    pub fn is_invariant(&self, index: usize) -> bool {
        self.partner == index
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoverAnalysis {
    /// Dimension of the locus (chart dimension minus one).
    pub locus_dim: usize,
    pub resolution: usize,
    pub components: Vec<CoverComponent>,
    /// Pairing was unambiguous for every sample.
    pub pairing_complete: bool,
    pub regular: Certificate,
    pub bounded: Certificate,
    pub level_shift: Option<String>,
}

impl CoverAnalysis {
    pub fn invariant_count(&self) -> usize {
        self.components.iter().enumerate().filter(|(i, c)| c.is_invariant(*i)).count()
    }

    pub fn swapped_pairs(&self) -> usize {
        (self.components.len() - self.invariant_count()) / 2
    }

    pub fn pairing(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.partner).collect()
    }

    /// Preconditions certified and pairing unambiguous.
    pub fn is_sound(&self) -> bool {
        self.pairing_complete && self.regular.is_certified() && self.bounded.is_certified()
    }
}

/// Meshed cover with per-vertex labels, independent of dimension.
struct Cover {
    points: Vec<Vec<f64>>,
    labels: Vec<usize>,
    stats: Vec<(usize, i64, bool)>,
    level_shift: Option<String>,
}

fn mesh_cover(cc: &ChartedCover, grid: &GridSpec) -> Result<Cover, ProjectiveError> {
    let zero = int(0);
    match cc.chart_dim() {
        2 => {
            let c = marching_squares(&cc.pullback, &zero, grid)?;
            let stats = c
                .components
                .iter()
                .map(|k| (k.vertices, k.vertices as i64 - k.segments as i64, k.closed))
                .collect();
            Ok(Cover {
                points: c.vertices.iter().map(|v| v.to_vec()).collect(),
                labels: c.vertex_component,
                stats,
                level_shift: c.level_shift,
            })
        }
        3 => {
            let m = marching_cubes(&cc.pullback, &zero, grid)?;
            let stats = m
                .component_stats()
                .iter()
                .map(|s| (s.vertices, s.chi, s.closed && s.oriented))
                .collect();
            Ok(Cover {
                points: m.vertices.iter().map(|v| v.to_vec()).collect(),
                labels: m.vertex_component,
                stats,
                level_shift: m.level_shift,
            })
        }
        d => Err(TopologyError::DimensionMismatch { expected: 3, got: d }.into()),
    }
}

struct Field {
    f: IntervalPoly,
    grad: Vec<IntervalPoly>,
}

impl Field {
    fn grad_at(&self, t: &[f64]) -> Vec<f64> {
        self.grad.iter().map(|g| g.eval_f64(t)).collect()
    }

    /// A few Newton steps along the gradient toward `F = 0`.
    fn project(&self, t: &[f64]) -> Vec<f64> {
        let mut x = t.to_vec();
        for _ in 0..8 {
            let f = self.f.eval_f64(&x);
            let g = self.grad_at(&x);
            let g2: f64 = g.iter().map(|c| c * c).sum();
            if g2 == 0.0 || !f.is_finite() {
                break;
            }
            for (xi, gi) in x.iter_mut().zip(&g) {
                *xi -= f * gi / g2;
            }
        }
        x
    }
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Sign of `det[∇F(A t), dA v₁, …]` relative to `det[∇F(t), v₁, …]` for a
/// tangent frame `vᵢ` at `t`.
fn orientation_sign(field: &Field, t: &[f64], at: &[f64]) -> Option<bool> {
    let n = t.len();
    let g = field.grad_at(t);
    let norm = g.iter().map(|c| c * c).sum::<f64>().sqrt();
    if norm == 0.0 {
        return None;
    }
    let nh: Vec<f64> = g.iter().map(|c| c / norm).collect();
    let skip = (0..n).max_by(|&a, &b| nh[a].abs().total_cmp(&nh[b].abs())).expect("n >= 1");
    let frame: Vec<Vec<f64>> = (0..n)
        .filter(|&j| j != skip)
        .map(|j| (0..n).map(|i| if i == j { 1.0 } else { 0.0 } - nh[j] * nh[i]).collect())
        .collect();
    let mut m0 = vec![g.clone()];
    m0.extend(frame.iter().cloned());
    let s0 = det(transpose(&m0));
    let jac = antipode_jacobian(t);
    let mut m1 = vec![field.grad_at(at)];
    for v in &frame {
        m1.push((0..n).map(|i| (0..n).map(|k| jac[i][k] * v[k]).sum()).collect());
    }
    let s1 = det(transpose(&m1));
    if s0 == 0.0 || s1 == 0.0 {
        return None;
    }
    Some((s0 > 0.0) == (s1 > 0.0))
}

fn transpose(rows: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = rows.len();
    (0..n).map(|i| rows.iter().map(|r| r[i]).collect()).collect()
}

fn pair_components(cc: &ChartedCover, cover: &Cover, grid: &GridSpec) -> (Vec<Option<usize>>, Vec<[usize; 2]>) {
    let field = Field {
        f: IntervalPoly::new(&cc.pullback),
        grad: cc.pullback.gradient().iter().map(IntervalPoly::new).collect(),
    };
    let ncomp = cover.stats.len();
    let diag2 = grid.cell_diagonal().powi(2);
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); ncomp];
    for (v, &c) in cover.labels.iter().enumerate() {
        members[c].push(v);
    }
    let mut partners = Vec::with_capacity(ncomp);
    let mut votes = Vec::with_capacity(ncomp);
    for list in &members {
        let k = SAMPLES_PER_COMPONENT.min(list.len());
        let mut partner = None;
        let mut consistent = true;
        let mut vote = [0usize; 2];
        for s in 0..k {
            let t = field.project(&cover.points[list[s * list.len() / k]]);
            let at = field.project(&antipode_in_chart(&t));
            let mut best = vec![f64::INFINITY; ncomp];
            for (p, &c) in cover.points.iter().zip(&cover.labels) {
                let d = dist2(p, &at);
                if d < best[c] {
                    best[c] = d;
                }
            }
            let mut order: Vec<usize> = (0..ncomp).collect();
            order.sort_by(|&a, &b| best[a].total_cmp(&best[b]));
            let nearest = order[0];
            let ambiguous = best[nearest] > 4.0 * diag2 || (ncomp > 1 && best[order[1]] < diag2);
            if ambiguous || partner.is_some_and(|p| p != nearest) {
                consistent = false;
            }
            partner.get_or_insert(nearest);
            match orientation_sign(&field, &t, &at) {
                Some(true) => vote[0] += 1,
                Some(false) => vote[1] += 1,
                None => {}
            }
        }
        partners.push(if consistent { partner } else { None });
        votes.push(vote);
    }
    (partners, votes)
}

/// Meshes the cover and pairs its components under the antipodal map.
/// An ambiguous pairing is retried once at 1.5× resolution.
pub fn analyze_cover(cc: &ChartedCover, grid: &GridSpec, budget: &Budget) -> Result<CoverAnalysis, ProjectiveError> {
    let zero = int(0);
    let regular = certify_regular_value(&cc.pullback, &zero, &cc.window, budget);
    let bounded = certify_bounded_locus(&cc.pullback, &zero, &cc.window, budget);
    let mut grid = grid.clone();
    let mut retried = false;
    loop {
        let cover = mesh_cover(cc, &grid)?;
        let (partners, votes) = pair_components(cc, &cover, &grid);
        let complete = partners.iter().all(Option::is_some);
        if !complete && !retried {
            retried = true;
            let finer: Vec<usize> = grid.resolution().iter().map(|r| r * 3 / 2).collect();
            grid = GridSpec::new(grid.window().clone(), finer)?;
            continue;
        }
        let components: Vec<CoverComponent> = cover
            .stats
            .iter()
            .zip(partners.iter().zip(&votes))
            .enumerate()
            .map(|(i, (&(vertices, chi, closed), (p, v)))| CoverComponent {
                vertices,
                chi,
                closed,
                partner: p.unwrap_or(i),
                orientation: match v {
                    [a, 0] if *a > 0 => Orientation::Preserving,
                    [0, b] if *b > 0 => Orientation::Reversing,
                    _ => Orientation::Undetermined,
                },
                orientation_votes: *v,
            })
            .collect();
        let involution = components.iter().enumerate().all(|(i, c)| components[c.partner].partner == i);
        if complete && !involution {
            return Err(ProjectiveError::PairingNotInvolution);
        }
        return Ok(CoverAnalysis {
            locus_dim: cc.chart_dim() - 1,
            resolution: grid.resolution()[0],
            components,
            pairing_complete: complete,
            regular,
            bounded,
            level_shift: cover.level_shift,
        });
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Confidence {
    /// Exact combinatorics on the cover mesh.
    Combinatorial,
    /// Orientation samples were unanimous.
    SampledUnanimous,
    /// Orientation samples disagreed or were missing.
    SampledSplit,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuotientComponent {
    pub cover_components: Vec<usize>,
    pub invariant: bool,
    pub chi: i64,
    pub label: String,
    pub confidence: Confidence,
    /// For curves: the lift is connected (odd) or splits in two (even).
    pub odd: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuotientReport {
    pub components: Vec<QuotientComponent>,
}

impl QuotientReport {
    pub fn count(&self) -> usize {
        self.components.len()
    }
}

fn surface_label(chi: i64, orientable: Option<bool>) -> String {
    match (orientable, chi) {
        (Some(true), 2) => "sphere".into(),
        (Some(true), 0) => "torus".into(),
        (Some(true), c) => format!("orientable surface of genus {}", (2 - c) / 2),
        (Some(false), 0) => "Klein-bottle-or-torus (undetermined)".into(),
        (Some(false), 1) => "projective plane".into(),
        (Some(false), _) => "non-orientable surface (undetermined)".into(),
        (None, _) => "undetermined".into(),
    }
}

/// Quotient component count, Euler characteristics and labels.
pub fn quotient_invariants(ca: &CoverAnalysis) -> Result<QuotientReport, ProjectiveError> {
    let mut components = Vec::new();
    for (i, c) in ca.components.iter().enumerate() {
        if c.partner < i {
            continue;
        }
        let invariant = c.partner == i;
        let comp = if invariant {
            if c.chi % 2 != 0 {
                return Err(ProjectiveError::OddInvariantChi(c.chi));
            }
            let chi = c.chi / 2;
            let (label, confidence) = if ca.locus_dim == 1 {
                ("circle".to_string(), Confidence::Combinatorial)
            } else {
                let orientable = match c.orientation {
                    Orientation::Preserving => Some(true),
                    Orientation::Reversing => Some(false),
                    Orientation::Undetermined => None,
                };
                let conf = if orientable.is_some() {
                    Confidence::SampledUnanimous
                } else {
                    Confidence::SampledSplit
                };
                (surface_label(chi, orientable), conf)
            };
            QuotientComponent {
                cover_components: vec![i],
                invariant,
                chi,
                label,
                confidence,
                odd: (ca.locus_dim == 1).then_some(true),
            }
        } else {
            let label = if ca.locus_dim == 1 {
                "circle".to_string()
            } else {
                surface_label(c.chi, Some(true))
            };
            QuotientComponent {
                cover_components: vec![i, c.partner],
                invariant,
                chi: c.chi,
                label,
                confidence: Confidence::Combinatorial,
                odd: (ca.locus_dim == 1).then_some(false),
            }
        };
        components.push(comp);
    }
    Ok(QuotientReport { components })
}

/// Certifies `{p = 0, x_chart = 0} ∩ Sⁿ` is empty, so the real slice lies in
/// the affine chart `x_chart ≠ 0`.
pub fn certify_affine_containment(p: &Polynomial, chart: usize, budget: &Budget) -> Certificate {
    let xc = Polynomial::var(p.vars().clone(), chart);
    certify_empty(&ConstraintSystem::on_unit_sphere(vec![p.clone(), xc]), budget)
}

/// Exact sign of the source at the pole.
pub fn pole_sign(pole: &Pole, p: &Polynomial) -> i8 {
    let v = p.evaluate(&pole.exact).expect("pole dimension");
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}
