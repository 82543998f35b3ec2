//! Certificates built on branch-and-prune: real emptiness, regular values,
//! critical-value enclosures and boundary sign conditions.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::search::{branch_and_prune, Action, Budget, SearchOutcome};
use super::{Enclosure, Interval, IntervalBox};
use crate::poly::{rational_from_f64, Polynomial, Rational};

/// Residual boxes kept in a serialized certificate.
const MAX_REPORTED_BOXES: usize = 32;
/// Residual boxes collected before an uncertifiable search gives up.
const RESIDUAL_LIMIT: usize = 64;
/// Coarse-pass boxes tried as witness seeds.
const MAX_WITNESS_SEEDS: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CertificateKind {
    Empty,
    RegularValue,
    Enclosure,
    BoundedLocus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Certified,
    RefutedByWitness,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub verdict: Verdict,
    pub boxes_examined: u64,
    pub budget: Budget,
    /// Total residual boxes; only the first few are listed.
    pub residual_count: usize,
    pub residual_boxes: Vec<Vec<[f64; 2]>>,
    pub enclosures: Vec<[f64; 2]>,
    /// Exact witness coordinates (rationals printed as `a/b`).
    pub witness: Option<Vec<String>>,
    pub notes: Vec<String>,
}

impl Certificate {
    fn new(kind: CertificateKind, budget: &Budget) -> Self {
        Self {
            kind,
            verdict: Verdict::Inconclusive,
            boxes_examined: 0,
            budget: *budget,
            residual_count: 0,
            residual_boxes: Vec::new(),
            enclosures: Vec::new(),
            witness: None,
            notes: Vec::new(),
        }
    }

    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }

    fn record_residual(&mut self, boxes: &[IntervalBox]) {
        self.residual_count += boxes.len();
        for b in boxes {
            if self.residual_boxes.len() >= MAX_REPORTED_BOXES {
                break;
            }
            self.residual_boxes.push(b.as_pairs());
        }
    }

    fn set_witness(&mut self, x: &[Rational]) {
        self.verdict = Verdict::RefutedByWitness;
        self.witness = Some(x.iter().map(ToString::to_string).collect());
    }
}

/// Polynomial equalities on a box, optionally restricted to the unit sphere.
#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    pub equalities: Vec<Polynomial>,
    pub domain: IntervalBox,
    pub sphere: bool,
}

impl ConstraintSystem {
    /// Panics if the equations and the domain disagree on the variable count.
    pub fn new(equalities: Vec<Polynomial>, domain: IntervalBox) -> Self {
        for e in &equalities {
            assert_eq!(e.nvars(), domain.dim(), "equation and domain dimensions differ");
            assert!(
                e.vars() == equalities[0].vars(),
                "equations over different variable lists"
            );
        }
        Self {
            equalities,
            domain,
            sphere: false,
        }
    }

    /// The system restricted to `Σ xᵢ² = 1` inside `[−1, 1]^n`.
    pub fn on_unit_sphere(equalities: Vec<Polynomial>) -> Self {
        let n = equalities.first().map_or(0, Polynomial::nvars);
        let mut s = Self::new(equalities, IntervalBox::cube(n, -1.0, 1.0));
        s.sphere = true;
        s
    }

    fn all_homogeneous(&self) -> bool {
        self.equalities.iter().all(|e| e.is_zero() || e.is_homogeneous())
    }
}

/// Shrinks `b` using `Σ xᵢ² = 1`. Returns false if the box misses the sphere.
pub(crate) fn contract_sphere(b: &mut IntervalBox) -> bool {
    let sq: Vec<Interval> = b.intervals().iter().map(|iv| iv.sqr()).collect();
    let total = sq.iter().fold(Interval::point(0.0), |a, &s| a + s);
    if !total.contains(1.0) {
        return false;
    }
    for i in 0..b.dim() {
        let rest = sq
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(Interval::point(0.0), |a, (_, &s)| a + s);
        let target = Interval::point(1.0) - rest;
        let Some(root) = target.sqrt() else {
            return false;
        };
        let iv = b.intervals()[i];
        let allowed = if iv.lo() >= 0.0 {
            Interval::new(root.lo(), root.hi())
        } else if iv.hi() <= 0.0 {
            Interval::new(-root.hi(), -root.lo())
        } else {
            Interval::new(-root.hi(), root.hi())
        };
        match iv.intersect(&allowed) {
            Some(shrunk) => b.intervals_mut()[i] = shrunk,
            None => return false,
        }
    }
    true
}

/// Coordinates along which every polynomial has constant exponent parity, so
/// that flipping the sign of that coordinate maps the common zero set to
/// itself.
fn sign_symmetric_coords(polys: &[&Polynomial], nvars: usize) -> Vec<usize> {
    (0..nvars)
        .filter(|&j| {
            polys.iter().all(|p| {
                let mut parity = None;
                p.terms().all(|(m, _)| {
                    let par = m.exponents()[j] % 2;
                    *parity.get_or_insert(par) == par
                })
            })
        })
        .collect()
}

fn reduce_by_symmetry(domain: &IntervalBox, coords: &[usize]) -> (IntervalBox, Vec<usize>) {
    let mut b = domain.clone();
    let mut used = Vec::new();
    for &j in coords {
        let iv = b.intervals()[j];
        if iv.lo() == -iv.hi() && iv.hi() > 0.0 {
            b.intervals_mut()[j] = Interval::new(0.0, iv.hi());
            used.push(j);
        }
    }
    (b, used)
}

/// Best rational approximation of `x` with denominator at most `max_den`.
fn rationalize(x: f64, max_den: i64) -> Rational {
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut v = x;
    for _ in 0..40 {
        let a = v.floor();
        if a.abs() > 1e12 {
            break;
        }
        let a = a as i64;
        let h2 = a.saturating_mul(h1).saturating_add(h0);
        let k2 = a.saturating_mul(k1).saturating_add(k0);
        if k2 > max_den || k2 <= 0 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = v - a as f64;
        if frac.abs() < 1e-12 {
            break;
        }
        v = 1.0 / frac;
    }
    if k1 == 0 {
        return rational_from_f64(x);
    }
    Rational::new(h1.into(), k1.into())
}

/// Small-denominator rational points near `x` (after optional rescaling so
/// that the largest coordinate has magnitude one).
fn candidate_points(x: &[f64], rescale: bool) -> Vec<Vec<Rational>> {
    let scale = if rescale {
        x.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    } else {
        1.0
    };
    if scale == 0.0 {
        return Vec::new();
    }
    let mut out: Vec<Vec<Rational>> = Vec::new();
    let mut den = 1;
    while den <= 1024 {
        let c: Vec<Rational> = x.iter().map(|&v| rationalize(v / scale, den)).collect();
        if !out.contains(&c) {
            out.push(c);
        }
        den *= 2;
    }
    out.push(x.iter().map(|&v| rational_from_f64(v / scale)).collect());
    out
}

fn all_vanish(polys: &[Polynomial], x: &[Rational]) -> bool {
    polys
        .iter()
        .all(|p| p.evaluate(x).map(|v| v.is_zero()).unwrap_or(false))
}

fn sphere_norm_is_one(x: &[Rational]) -> bool {
    x.iter().map(|v| v * v).fold(Rational::zero(), |a, b| a + b).is_one()
}

/// Searches near the given boxes for an exact rational solution of `sys`.
///
/// For a homogeneous system on the sphere any nonzero rational common zero
/// is accepted: its normalization is a real solution on the sphere.
fn find_system_witness(sys: &ConstraintSystem, boxes: &[IntervalBox]) -> Option<Vec<Rational>> {
    let projective = sys.sphere && sys.all_homogeneous();
    for b in boxes.iter().take(MAX_WITNESS_SEEDS) {
        for cand in candidate_points(&b.midpoint(), projective) {
            if projective && cand.iter().all(Zero::is_zero) {
                continue;
            }
            let located = if projective {
                true
            } else if sys.sphere {
                sphere_norm_is_one(&cand) && sys.domain.contains_rational(&cand)
            } else {
                sys.domain.contains_rational(&cand)
            };
            if located && all_vanish(&sys.equalities, &cand) {
                return Some(cand);
            }
        }
    }
    None
}

fn system_classifier<'a>(encs: &'a [Enclosure], sphere: bool) -> impl Fn(&mut IntervalBox) -> Action + Sync + Send + 'a {
    move |b: &mut IntervalBox| {
        if sphere && !contract_sphere(b) {
            return Action::Discard;
        }
        let iv = b.intervals();
        if encs.iter().any(|e| !e.natural(iv).contains_zero()) {
            return Action::Discard;
        }
        if encs.iter().any(|e| !e.mean_value(iv).contains_zero()) {
            return Action::Discard;
        }
        Action::Split
    }
}

fn coarse_budget(domain: &IntervalBox, budget: &Budget) -> Budget {
    Budget {
        max_boxes: budget.max_boxes,
        min_width: (domain.max_width() / 64.0).max(budget.min_width),
    }
}

fn remaining(budget: &Budget, used: u64) -> Budget {
    Budget {
        max_boxes: budget.max_boxes.saturating_sub(used),
        min_width: budget.min_width,
    }
}

/// Tries to prove that `sys` has no real solution in its domain.
pub fn certify_empty(sys: &ConstraintSystem, budget: &Budget) -> Certificate {
    let mut cert = Certificate::new(CertificateKind::Empty, budget);
    let refs: Vec<&Polynomial> = sys.equalities.iter().collect();
    let sym = sign_symmetric_coords(&refs, sys.domain.dim());
    let (domain, used) = reduce_by_symmetry(&sys.domain, &sym);
    if !used.is_empty() {
        cert.notes.push(format!(
            "search folded to the nonnegative half-space in coordinates {used:?} (sign symmetry of the system)"
        ));
    }
    if sys.sphere {
        cert.notes.push("restricted to the unit sphere".into());
    }
    let encs: Vec<Enclosure> = sys.equalities.iter().map(Enclosure::new).collect();
    let classify = system_classifier(&encs, sys.sphere);

    let coarse = branch_and_prune(vec![domain], &coarse_budget(&sys.domain, budget), None, &classify);
    cert.boxes_examined = coarse.examined;
    if coarse.complete() && coarse.residual.is_empty() {
        cert.verdict = Verdict::Certified;
        return cert;
    }
    if let Some(w) = find_system_witness(sys, &coarse.residual) {
        cert.set_witness(&w);
        return cert;
    }
    let mut roots = coarse.residual;
    roots.extend(coarse.unexplored);
    let fine = branch_and_prune(roots, &remaining(budget, cert.boxes_examined), Some(RESIDUAL_LIMIT), &classify);
    cert.boxes_examined += fine.examined;
    finish_search(&mut cert, &fine, || find_system_witness(sys, &fine.residual));
    cert
}

fn finish_search(cert: &mut Certificate, out: &SearchOutcome, witness: impl FnOnce() -> Option<Vec<Rational>>) {
    if out.complete() && out.residual.is_empty() {
        cert.verdict = Verdict::Certified;
        return;
    }
    if let Some(w) = witness() {
        cert.set_witness(&w);
        return;
    }
    cert.record_residual(&out.residual);
    cert.record_residual(&out.unexplored);
    if out.exhausted {
        cert.notes.push("box budget exhausted".into());
    }
}

/// Tries to prove that `level` is a regular value of `q` on `domain`: no point
/// with `q = level` and `∇q = 0`.
pub fn certify_regular_value(q: &Polynomial, level: &Rational, domain: &IntervalBox, budget: &Budget) -> Certificate {
    let mut cert = Certificate::new(CertificateKind::RegularValue, budget);
    let shifted = q - &Polynomial::constant(q.vars().clone(), level.clone());
    let grad = q.gradient();
    let mut system: Vec<Polynomial> = vec![shifted];
    system.extend(grad.iter().cloned());
    let sys = ConstraintSystem::new(system, domain.clone());
    let refs: Vec<&Polynomial> = sys.equalities.iter().collect();
    let sym = sign_symmetric_coords(&refs, domain.dim());
    let (reduced, used) = reduce_by_symmetry(domain, &sym);
    if !used.is_empty() {
        cert.notes.push(format!(
            "search folded to the nonnegative half-space in coordinates {used:?} (sign symmetry of q)"
        ));
    }
    let encs: Vec<Enclosure> = sys.equalities.iter().map(Enclosure::new).collect();
    let classify = system_classifier(&encs, false);
    let coarse = branch_and_prune(vec![reduced], &coarse_budget(domain, budget), None, &classify);
    cert.boxes_examined = coarse.examined;
    if coarse.complete() && coarse.residual.is_empty() {
        cert.verdict = Verdict::Certified;
        return cert;
    }
    if let Some(w) = find_system_witness(&sys, &coarse.residual) {
        cert.set_witness(&w);
        return cert;
    }
    let mut roots = coarse.residual;
    roots.extend(coarse.unexplored);
    let fine = branch_and_prune(roots, &remaining(budget, cert.boxes_examined), Some(RESIDUAL_LIMIT), &classify);
    cert.boxes_examined += fine.examined;
    finish_search(&mut cert, &fine, || find_system_witness(&sys, &fine.residual));
    cert
}

/// Tries to prove that `q − level` has one constant sign on the boundary of
/// `domain`, so the level set cannot meet the boundary.
pub fn certify_bounded_locus(q: &Polynomial, level: &Rational, domain: &IntervalBox, budget: &Budget) -> Certificate {
    let mut cert = Certificate::new(CertificateKind::BoundedLocus, budget);
    let shifted = q - &Polynomial::constant(q.vars().clone(), level.clone());
    let enc = Enclosure::new(&shifted);
    let mut faces = Vec::new();
    for j in 0..domain.dim() {
        let iv = domain.intervals()[j];
        for x in [iv.lo(), iv.hi()] {
            let mut f = domain.clone();
            f.intervals_mut()[j] = Interval::point(x);
            faces.push(f);
        }
    }
    let signs = std::sync::Mutex::new((false, false));
    let classify = |b: &mut IntervalBox| {
        let r = enc.range(b.intervals());
        if r.lo() > 0.0 {
            signs.lock().expect("lock").0 = true;
            Action::Discard
        } else if r.hi() < 0.0 {
            signs.lock().expect("lock").1 = true;
            Action::Discard
        } else {
            Action::Split
        }
    };
    let out = branch_and_prune(faces, budget, Some(RESIDUAL_LIMIT), classify);
    cert.boxes_examined = out.examined;
    let (pos, neg) = *signs.lock().expect("lock");
    if out.complete() && out.residual.is_empty() && !(pos && neg) {
        cert.verdict = Verdict::Certified;
        cert.notes.push(format!(
            "q - level is {} on every boundary face",
            if pos { "positive" } else { "negative" }
        ));
        return cert;
    }
    if pos && neg {
        cert.notes.push("q - level takes both signs on the boundary".into());
    }
    cert.record_residual(&out.residual);
    cert.record_residual(&out.unexplored);
    cert
}

/// Options for [`enclose_critical_values`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnclosureOptions {
    pub budget: Budget,
    /// Stop refining a box once its value enclosure is this narrow.
    pub value_tolerance: f64,
}

impl Default for EnclosureOptions {
    fn default() -> Self {
        Self {
            budget: Budget::default(),
            value_tolerance: 1e-3,
        }
    }
}

/// Evidence that the box contains every critical point of interest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DomainAdequacy {
    /// The radial derivative `(x − c)·∇q` is positive on the shell between the
    /// domain and its 2× enlargement about the center `c`; in particular `∇q`
    /// has no zero there and `q` increases along rays leaving the domain.
    pub radial_growth_on_shell: bool,
    pub boxes_examined: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalValues {
    /// Disjoint, sorted intervals covering every critical value in the domain.
    pub enclosures: Vec<Interval>,
    pub certificate: Certificate,
    pub adequacy: DomainAdequacy,
}

impl CriticalValues {
    pub fn total_width(&self) -> f64 {
        self.enclosures.iter().map(Interval::width).sum()
    }

    pub fn covers(&self, x: f64) -> bool {
        self.enclosures.iter().any(|iv| iv.contains(x))
    }

    pub fn meets(&self, window: &Interval) -> bool {
        self.enclosures.iter().any(|iv| iv.intersects(window))
    }

    /// Whether `[lo, hi]` is certified free of critical values.
    pub fn is_regular_interval(&self, window: &Interval) -> bool {
        self.certificate.is_certified() && !self.meets(window)
    }

    /// Gap from `level` to the nearest enclosure endpoint.
    pub fn gap_to(&self, level: f64) -> f64 {
        self.enclosures
            .iter()
            .map(|iv| {
                if iv.contains(level) {
                    0.0
                } else {
                    (iv.lo() - level).abs().min((iv.hi() - level).abs())
                }
            })
            .fold(f64::INFINITY, f64::min)
    }
}

fn merge(mut v: Vec<Interval>) -> Vec<Interval> {
    v.sort_by(|a, b| a.lo().total_cmp(&b.lo()).then(a.hi().total_cmp(&b.hi())));
    let mut out: Vec<Interval> = Vec::new();
    for iv in v {
        match out.last_mut() {
            Some(last) if iv.lo() <= last.hi() => *last = last.hull(&iv),
            _ => out.push(iv),
        }
    }
    out
}

fn check_radial_growth(q: &Polynomial, domain: &IntervalBox, budget: &Budget) -> DomainAdequacy {
    let vars = q.vars().clone();
    let center: Vec<f64> = domain.midpoint();
    let mut radial = Polynomial::zero(vars.clone());
    for (i, g) in q.gradient().iter().enumerate() {
        let offset = &Polynomial::var(vars.clone(), i) - &Polynomial::constant(vars.clone(), rational_from_f64(center[i]));
        radial = &radial + &(&offset * g);
    }
    let enc = Enclosure::new(&radial);
    let k = domain.dim();
    let mut shell = Vec::new();
    let total = 3usize.pow(k as u32);
    for code in 0..total {
        let mut c = code;
        let mut ivs = Vec::with_capacity(k);
        let mut central = true;
        for (j, iv) in domain.intervals().iter().enumerate() {
            let h = iv.width() / 2.0;
            let piece = match c % 3 {
                0 => Interval::new(center[j] - 2.0 * h, iv.lo()),
                1 => *iv,
                _ => Interval::new(iv.hi(), center[j] + 2.0 * h),
            };
            central &= c % 3 == 1;
            c /= 3;
            ivs.push(piece);
        }
        if !central {
            shell.push(IntervalBox::new(ivs));
        }
    }
    let out = branch_and_prune(shell, budget, Some(1), |b: &mut IntervalBox| {
        let iv = b.intervals();
        if enc.natural(iv).lo() > 0.0 || enc.mean_value(iv).lo() > 0.0 {
            Action::Discard
        } else {
            Action::Split
        }
    });
    DomainAdequacy {
        radial_growth_on_shell: out.complete() && out.residual.is_empty(),
        boxes_examined: out.examined,
    }
}

/// Encloses the set of critical values `{q(x) : ∇q(x) = 0, x ∈ domain}`.
///
/// Only values are enclosed, so non-isolated critical sets are handled.
pub fn enclose_critical_values(q: &Polynomial, domain: &IntervalBox, opts: &EnclosureOptions) -> CriticalValues {
    let budget = &opts.budget;
    let mut cert = Certificate::new(CertificateKind::Enclosure, budget);
    let grad: Vec<Polynomial> = q.gradient();
    let grad_refs: Vec<&Polynomial> = grad.iter().collect();
    // Values are preserved under a reflection only when q is even in that
    // coordinate.
    let sym: Vec<usize> = sign_symmetric_coords(&[&[q], grad_refs.as_slice()].concat(), domain.dim())
        .into_iter()
        .filter(|&j| q.terms().all(|(m, _)| m.exponents()[j] % 2 == 0))
        .collect();
    let (reduced, used) = reduce_by_symmetry(domain, &sym);
    if !used.is_empty() {
        cert.notes.push(format!(
            "search folded to the nonnegative half-space in coordinates {used:?} (sign symmetry of q)"
        ));
    }
    let value = Enclosure::new(q);
    let encs: Vec<Enclosure> = grad.iter().map(Enclosure::new).collect();
    let tol = opts.value_tolerance;
    let classify = |b: &mut IntervalBox| {
        let iv = b.intervals();
        if encs.iter().any(|e| !e.natural(iv).contains_zero()) {
            return Action::Discard;
        }
        if encs.iter().any(|e| !e.mean_value(iv).contains_zero()) {
            return Action::Discard;
        }
        if value.range(iv).width() <= tol {
            Action::Keep
        } else {
            Action::Split
        }
    };
    let out = branch_and_prune(vec![reduced], budget, None, classify);
    cert.boxes_examined = out.examined;
    let ranges: Vec<Interval> = out
        .residual
        .iter()
        .chain(&out.unexplored)
        .map(|b| value.range(b.intervals()))
        .collect();
    let enclosures = merge(ranges);
    cert.residual_count = out.residual.len() + out.unexplored.len();
    cert.enclosures = enclosures.iter().map(|iv| [iv.lo(), iv.hi()]).collect();
    let adequacy = check_radial_growth(q, domain, budget);
    if !adequacy.radial_growth_on_shell {
        cert.notes.push("domain adequacy not established: radial growth check failed".into());
    }
    if out.exhausted {
        cert.notes.push("box budget exhausted; unexplored boxes contribute whole-box ranges".into());
    }
    cert.verdict = if out.complete() && adequacy.radial_growth_on_shell {
        Verdict::Certified
    } else {
        Verdict::Inconclusive
    };
    CriticalValues {
        enclosures,
        certificate: cert,
        adequacy,
    }
}

/// Exact check that `x` is a critical point of `q`.
pub fn is_exact_critical_point(q: &Polynomial, x: &[Rational]) -> bool {
    all_vanish(&q.gradient(), x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, parse_polynomial, rat, variables};

    #[test]
    fn rationalize_finds_simple_fractions() {
        assert_eq!(rationalize(0.333333333, 10), rat(1, 3));
        assert_eq!(rationalize(-0.4, 10), rat(-2, 5));
        assert_eq!(rationalize(5e-7, 1), int(0));
        assert_eq!(rationalize(2.0, 4), int(2));
    }

    #[test]
    fn empty_system_without_real_points() {
        let v = variables(&["x", "y"]);
        let p = parse_polynomial("x^2 + y^2 + 1", &v).unwrap();
        let sys = ConstraintSystem::new(vec![p], IntervalBox::cube(2, -2.0, 2.0));
        let c = certify_empty(&sys, &Budget::default());
        assert_eq!(c.verdict, Verdict::Certified);
    }

    #[test]
    fn planted_witness_is_found() {
        let v = variables(&["x", "y"]);
        let sys = ConstraintSystem::new(
            vec![
                parse_polynomial("x - 1/3", &v).unwrap(),
                parse_polynomial("y + 2/5", &v).unwrap(),
            ],
            IntervalBox::cube(2, -1.0, 1.0),
        );
        let c = certify_empty(&sys, &Budget::default());
        assert_eq!(c.verdict, Verdict::RefutedByWitness);
        assert_eq!(c.witness.unwrap(), vec!["1/3".to_string(), "-2/5".to_string()]);
    }

    #[test]
    fn sphere_contraction_discards_far_boxes() {
        let mut b = IntervalBox::cube(3, 0.0, 0.1);
        assert!(!contract_sphere(&mut b));
        let mut b = IntervalBox::new(vec![Interval::new(0.0, 2.0), Interval::new(0.0, 0.1), Interval::new(0.0, 0.1)]);
        assert!(contract_sphere(&mut b));
        assert!(b.intervals()[0].hi() <= 1.0 + 1e-12 && b.intervals()[0].lo() >= 0.98);
    }

    #[test]
    fn double_well_critical_values() {
        let v = variables(&["x", "y"]);
        let q = parse_polynomial("x^4 - 2*x^2 + y^2 + x", &v).unwrap();
        let cv = enclose_critical_values(&q, &IntervalBox::cube(2, -2.0, 2.0), &EnclosureOptions::default());
        assert!(cv.certificate.is_certified());
        // Critical points solve 4x^3 - 4x + 1 = 0, y = 0.
        for x0 in [-1.1_f64, 0.27, 0.84] {
            let mut x = x0;
            for _ in 0..50 {
                x -= (4.0 * x.powi(3) - 4.0 * x + 1.0) / (12.0 * x * x - 4.0);
            }
            let val = x.powi(4) - 2.0 * x * x + x;
            assert!(cv.covers(val), "{val} not in {:?}", cv.enclosures);
        }
        assert!(cv.total_width() <= 0.01, "{:?}", cv.enclosures);
    }

    #[test]
    fn odd_cubic_is_not_adequate() {
        let v = variables(&["x"]);
        let q = parse_polynomial("x^3 - 3*x", &v).unwrap();
        let cv = enclose_critical_values(&q, &IntervalBox::cube(1, -2.0, 2.0), &EnclosureOptions::default());
        assert!(!cv.adequacy.radial_growth_on_shell);
        assert!(cv.covers(-2.0) && cv.covers(2.0));
        assert_eq!(cv.certificate.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn circle_regular_and_bounded() {
        let v = variables(&["x", "y"]);
        let q = parse_polynomial("x^2 + y^2", &v).unwrap();
        let dom = IntervalBox::cube(2, -2.0, 2.0);
        assert!(certify_regular_value(&q, &int(1), &dom, &Budget::default()).is_certified());
        assert!(certify_bounded_locus(&q, &int(1), &dom, &Budget::default()).is_certified());
        let c = certify_regular_value(&q, &int(0), &dom, &Budget::default());
        assert_eq!(c.verdict, Verdict::RefutedByWitness);
    }
}
