//! Built-in example hypersurfaces, their claims, and end-to-end verification.
//!
//! Every entry carries its defining polynomial over exact rationals, the
//! list of claims a report must address, and the pipeline used to check
//! them: an affine chart when the real slice is certified to avoid a
//! coordinate hyperplane, the sphere double cover otherwise.

mod files;
mod report;
mod verify;
mod witness;

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::poly::{int, parse_polynomial, rat, variables, PolyError, Polynomial, Rational};
use crate::projective::ProjectiveError;
use crate::topology::TopologyError;

pub use files::{parse_system_document, SystemFile};
pub use report::{export_mesh, export_report, ClaimRecord, ClaimVerdict, Environment, StageTiming, VerificationReport};
pub use verify::{mesh_entry, run_verification, VerifyConfig};
pub use witness::{verify_singular_witnesses, EmptinessCheck, SingularLocusReport, WitnessRecord};

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown catalog entry '{0}' (run `list` for the catalog)")]
    UnknownEntry(String),
    #[error("entry '{entry}' has no parameter '{name}'")]
    UnknownParameter { entry: String, name: String },
    #[error("cannot read '{value}' as a rational value for '{name}'")]
    BadParameterValue { name: String, value: String },
    #[error("parameter out of range: {entry} requires {constraint}, got {got}")]
    OutOfRange { entry: String, constraint: String, got: String },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Projective(#[from] ProjectiveError),
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error("catalog witness failed exact verification: {0}")]
    WitnessFailed(String),
    #[error("entry '{0}' has no surface to mesh")]
    NoSurfaceMesh(String),
    #[error("the mesh is empty; nothing written")]
    EmptyMesh,
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("line {line}: {message}")]
    SystemFile { line: usize, message: String },
}

/// Family and parameters of an entry.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    /// `X0³ + X1³ + X2³ − 3σ X0X1X2` with `σ ≠ 1`.
    Cubic { sigma: Rational },
    /// The cubic family at `σ = 1`.
    CubicSingular,
    /// The `σ → ∞` limit, normalized to `X0X1X2`.
    CubicLines,
    FermatQuartic,
    TwoTori { r1: Rational, r2: Rational },
    EvenQuartic { eps: Rational },
    Quintic { eps: Rational },
}

/// How the real slice is analyzed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// The slice lies in the chart `X0 ≠ 0`; analyze the affine level set.
    AffineChart,
    /// Analyze the double cover on the sphere through a stereographic chart.
    Cover,
    /// Singular member; only exact structure and witnesses are checked.
    Singular,
}

/// One assertion a report must address.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimSpec {
    pub id: &'static str,
    pub text: String,
    pub method: &'static str,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: &'static str,
    /// Projective dimension.
    pub n: usize,
    pub family: Family,
    pub params: BTreeMap<String, Rational>,
    pub polynomial: Polynomial,
    /// Stored factorization, when the entry is reducible by construction.
    pub factors: Vec<Polynomial>,
    pub route: Route,
    pub claims: Vec<ClaimSpec>,
    pub summary: &'static str,
}

impl fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id)?;
        for (k, v) in &self.params {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

/// Entry ids accepted by [`build_entry`].
pub const ENTRY_IDS: [&str; 7] = [
    "cubic",
    "cubic-singular",
    "cubic-lines",
    "fermat-quartic",
    "two-tori",
    "even-quartic",
    "quintic",
];

/// The catalog at its default parameters, including both cubic regimes.
pub fn load_catalog() -> Vec<CatalogEntry> {
    let mut out = vec![
        build_entry("cubic", &[]).expect("default parameters"),
        build_entry("cubic", &[("sigma".into(), "0".into())]).expect("default parameters"),
    ];
    for id in &ENTRY_IDS[1..] {
        out.push(build_entry(id, &[]).expect("default parameters"));
    }
    out
}

/// Reads `a`, `a/b` or a finite decimal `a.b` exactly.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let s = text.trim();
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let num: BigInt = digits.parse().ok()?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let r = Rational::new(num, den);
        return Some(if negative { -r } else { r });
    }
    s.parse::<Rational>().ok()
}

fn param_key(name: &str) -> &str {
    match name {
        "σ" => "sigma",
        "ε" | "epsilon" => "eps",
        "r₁" => "r1",
        "r₂" => "r2",
        other => other,
    }
}

fn resolve_params(
    entry: &str,
    defaults: &[(&str, Rational)],
    given: &[(String, String)],
) -> Result<BTreeMap<String, Rational>, CatalogError> {
    let mut out: BTreeMap<String, Rational> = defaults.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
    for (k, v) in given {
        let key = param_key(k.trim());
        if !out.contains_key(key) {
            return Err(CatalogError::UnknownParameter {
                entry: entry.into(),
                name: k.clone(),
            });
        }
        let value = parse_rational(v).ok_or_else(|| CatalogError::BadParameterValue {
            name: k.clone(),
            value: v.clone(),
        })?;
        out.insert(key.to_string(), value);
    }
    Ok(out)
}

fn out_of_range(entry: &str, constraint: &str, got: String) -> CatalogError {
    CatalogError::OutOfRange {
        entry: entry.into(),
        constraint: constraint.into(),
        got,
    }
}

fn poly(text: &str, names: &[&str]) -> Polynomial {
    parse_polynomial(text, &variables(names)).expect("catalog polynomial text")
}

const P2: [&str; 3] = ["X0", "X1", "X2"];
const P3: [&str; 4] = ["X0", "X1", "X2", "X3"];
const P4: [&str; 5] = ["X0", "X1", "X2", "X3", "X4"];

fn claim(id: &'static str, text: impl Into<String>, method: &'static str) -> ClaimSpec {
    ClaimSpec {
        id,
        text: text.into(),
        method,
    }
}

pub(crate) const EXACT: &str = "exact rational arithmetic";
pub(crate) const EXACT_COMPLEX: &str = "exact Gaussian-rational arithmetic";
pub(crate) const BRANCH_AND_PRUNE: &str = "interval branch-and-prune";
pub(crate) const ENCLOSURE: &str = "interval critical-value enclosure";
pub(crate) const COVER: &str = "stereographic cover meshing with antipodal pairing";
pub(crate) const MESH: &str = "marching cubes with dual-resolution rerun";
pub(crate) const HOMOLOGY: &str = "GF(2) cubical homology with dual-resolution rerun";
pub(crate) const STRUCTURAL: &str = "structural consequence of certified claims";

fn common_claims(degree: u32) -> Vec<ClaimSpec> {
    vec![
        claim("real-structure", "P has real coefficients, so P∘c = P̄ for the standard conjugation", EXACT),
        claim(
            "euler-identity",
            format!("P is homogeneous of degree {degree} and Σ Xᵢ ∂P/∂Xᵢ = {degree}·P"),
            EXACT,
        ),
    ]
}

/// Builds an entry, validating parameters against their allowed ranges.
pub fn build_entry(id: &str, params: &[(String, String)]) -> Result<CatalogEntry, CatalogError> {
    match id {
        "cubic" => {
            let p = resolve_params(id, &[("sigma", int(2))], params)?;
            let sigma = p["sigma"].clone();
            if sigma.is_one() {
                return Err(out_of_range(id, "σ ≠ 1 (the σ = 1 member is the entry cubic-singular)", format!("σ = {sigma}")));
            }
            let polynomial = poly(&format!("X0^3 + X1^3 + X2^3 - 3*({sigma})*X0*X1*X2"), &P2);
            let count = if sigma > int(1) { 2 } else { 1 };
            let regime = if sigma > int(1) { "σ > 1" } else { "σ < 1" };
            let mut claims = common_claims(3);
            claims.extend([
                claim("singular-real-empty", "Σ_P has no real points", BRANCH_AND_PRUNE),
                claim(
                    "flexes",
                    "the flexes [0,1,−1], [−1,0,1], [1,−1,0] lie on H_P and on its Hessian curve",
                    EXACT,
                ),
                claim(
                    "component-count",
                    format!("H_P ∩ ℝP² has {count} real component{} when {regime}", if count == 1 { "" } else { "s" }),
                    COVER,
                ),
                claim("odd-component", "exactly one real component is odd (its spherical lift is connected)", COVER),
                claim("flexes-on-odd-component", "the odd component contains the three real flexes", COVER),
                claim("in-T", "the real slice contains a circle disjoint from Σ_P, so P ∈ 𝒯", STRUCTURAL),
            ]);
            Ok(CatalogEntry {
                id: "cubic",
                n: 2,
                family: Family::Cubic { sigma },
                params: p,
                polynomial,
                factors: Vec::new(),
                route: Route::Cover,
                claims,
                summary: "plane cubic X0³ + X1³ + X2³ − 3σX0X1X2, σ ≠ 1",
            })
        }
        "cubic-singular" => {
            resolve_params(id, &[], params)?;
            let polynomial = poly("X0^3 + X1^3 + X2^3 - 3*X0*X1*X2", &P2);
            let factors = vec![
                poly("X0 + X1 + X2", &P2),
                poly("X0^2 + X1^2 + X2^2 - X0*X1 - X1*X2 - X0*X2", &P2),
            ];
            let mut claims = common_claims(3);
            claims.extend([
                claim("line-factor", "P = L·C with L = X0 + X1 + X2, so H_P contains the real line H_L", EXACT),
                claim(
                    "residual-real-point",
                    "the residual conic C is a pair of conjugate lines whose only real point is [1,1,1]",
                    EXACT,
                ),
                claim("real-singular-point", "[1,1,1] is a real singular point of H_P not lying on H_L", EXACT),
                claim("singular-real-empty", "Σ_P has no real points (fails for this singular member)", BRANCH_AND_PRUNE),
                claim("in-T", "H_L ∩ ℝP² is a circle disjoint from Σ_P, so P ∈ 𝒯", STRUCTURAL),
            ]);
            Ok(CatalogEntry {
                id: "cubic-singular",
                n: 2,
                family: Family::CubicSingular,
                params: BTreeMap::new(),
                polynomial,
                factors,
                route: Route::Singular,
                claims,
                summary: "the singular cubic σ = 1, a real line plus two conjugate lines",
            })
        }
        "cubic-lines" => {
            resolve_params(id, &[], params)?;
            let polynomial = poly("X0*X1*X2", &P2);
            let factors = vec![poly("X0", &P2), poly("X1", &P2), poly("X2", &P2)];
            let mut claims = common_claims(3);
            claims.extend([
                claim("three-lines", "the real locus is three real non-concurrent lines", EXACT),
                claim(
                    "no-smooth-component",
                    "the real locus is connected and contains real singular points, so it has no smooth component",
                    EXACT,
                ),
                claim("singular-real-empty", "Σ_P has no real points (fails for the limit σ = ∞)", BRANCH_AND_PRUNE),
            ]);
            Ok(CatalogEntry {
                id: "cubic-lines",
                n: 2,
                family: Family::CubicLines,
                params: BTreeMap::new(),
                polynomial,
                factors,
                route: Route::Singular,
                claims,
                summary: "the σ = ∞ limit of the cubic family, normalized to X0X1X2",
            })
        }
        "fermat-quartic" => {
            resolve_params(id, &[], params)?;
            let polynomial = poly("X0^4 + X1^4 - X2^4 - X3^4", &P3);
            let mut claims = common_claims(4);
            claims.extend([
                claim("singular-real-empty", "Σ_P has no real points", BRANCH_AND_PRUNE),
                claim(
                    "meets-chart-hyperplane",
                    "the real slice meets X0 = 0, so the cover route is needed",
                    BRANCH_AND_PRUNE,
                ),
                claim("torus", "H_P ∩ ℝP³ ≅ (C × C)/∼ is a 2-torus", COVER),
                claim(
                    "non-contractible",
                    "the preimage in S³ is a connected (nontrivial) double cover, so the torus is not contractible in ℝP³",
                    COVER,
                ),
                claim("in-T", "the real slice is a 2-torus disjoint from Σ_P, so P ∈ 𝒯", STRUCTURAL),
            ]);
            Ok(CatalogEntry {
                id: "fermat-quartic",
                n: 3,
                family: Family::FermatQuartic,
                params: BTreeMap::new(),
                polynomial,
                factors: Vec::new(),
                route: Route::Cover,
                claims,
                summary: "Fermat-type quartic X0⁴ + X1⁴ − X2⁴ − X3⁴",
            })
        }
        "two-tori" => {
            let p = resolve_params(id, &[("r1", int(1)), ("r2", int(2))], params)?;
            let (r1, r2) = (p["r1"].clone(), p["r2"].clone());
            if !(r1.is_positive() && r1 < r2) {
                return Err(out_of_range(id, "0 < r1 < r2", format!("r1 = {r1}, r2 = {r2}")));
            }
            let f1 = poly(&format!("X0^2 + X1^2 - ({r1})*(X2^2 + X3^2)"), &P3);
            let f2 = poly(&format!("X0^2 + X1^2 - ({r2})*(X2^2 + X3^2)"), &P3);
            let polynomial = &f1 * &f2;
            let mut claims = common_claims(4);
            claims.extend([
                claim("factorization", "R is the product of the two stored quadrics", EXACT),
                claim(
                    "singular-lines",
                    "Σ_R contains the four lines L_{m,n} = {[a, ±ia, b, ±ib]}",
                    EXACT_COMPLEX,
                ),
                claim("singular-real-empty", "the lines L_{m,n}, and Σ_R, have no real points", BRANCH_AND_PRUNE),
                claim("two-tori", "ℝP³ ∩ H_R consists of two disjoint 2-tori", COVER),
                claim("non-contractible", "neither torus is contractible in ℝP³ (each lifts to a connected cover)", COVER),
                claim("in-T", "the real slice contains a 2-torus disjoint from Σ_R, so R ∈ 𝒯", STRUCTURAL),
            ]);
            Ok(CatalogEntry {
                id: "two-tori",
                n: 3,
                family: Family::TwoTori { r1, r2 },
                params: p,
                polynomial,
                factors: vec![f1, f2],
                route: Route::Cover,
                claims,
                summary: "product of two quadrics (X0² + X1² − r(X2² + X3²)), 0 < r1 < r2",
            })
        }
        "even-quartic" => {
            let p = resolve_params(id, &[("eps", rat(1, 2))], params)?;
            let eps = p["eps"].clone();
            if !(eps.is_positive() && eps < int(1)) {
                return Err(out_of_range(id, "0 < ε < 1", format!("ε = {eps}")));
            }
            let polynomial = poly(&format!("(X1^2 + X2^2 - X0^2)^2 + X3^4 - ({eps})*X0^4"), &P3);
            let mut claims = common_claims(4);
            claims.extend([
                claim("chart-identity", format!("Q = X0⁴·q_ε(X1/X0, X2/X0, X3/X0) with q_ε = q₀ − {eps}"), EXACT),
                claim("singular-points", "Σ_Q contains the two nonreal points [0, 1, ±i, 0]", EXACT_COMPLEX),
                claim("singular-real-empty", "Σ_Q has no real points", BRANCH_AND_PRUNE),
                claim("critical-values", "the critical values of q₀ are 0 and 1", ENCLOSURE),
                claim("regular-level", "the zero locus of q_ε is smooth and compact", BRANCH_AND_PRUNE),
                claim(
                    "affine-containment",
                    "Q = X0 = 0 only at the origin of ℝ⁴, so the real slice lies in the chart X0 ≠ 0",
                    BRANCH_AND_PRUNE,
                ),
                claim("torus", "the real slice T is a torus", MESH),
                claim("retracts-to-circle", "R_ε = q₀⁻¹([0, ε]) retracts onto the circle C", HOMOLOGY),
                claim("contractible", "T misses a linear ℝP² and so is contractible in ℝP³", STRUCTURAL),
                claim("in-T", "the real slice is a torus disjoint from Σ_Q, so Q ∈ 𝒯", STRUCTURAL),
            ]);
            Ok(CatalogEntry {
                id: "even-quartic",
                n: 3,
                family: Family::EvenQuartic { eps },
                params: p,
                polynomial,
                factors: Vec::new(),
                route: Route::AffineChart,
                claims,
                summary: "(X1² + X2² − X0²)² + X3⁴ − εX0⁴, 0 < ε < 1",
            })
        }
        "quintic" => {
            let p = resolve_params(id, &[("eps", rat(1, 2))], params)?;
            let eps = p["eps"].clone();
            if !(eps.is_positive() && eps < int(1)) {
                return Err(out_of_range(id, "0 < ε < 1", format!("ε = {eps}")));
            }
            let e2 = &eps * &eps;
            let q = poly(
                &format!("(X1^2 + X2^2 - X0^2)^2 + (X3^2 + X4^2 - X0^2)^2 - ({e2})*X0^4"),
                &P4,
            );
            let x0 = poly("X0", &P4);
            let polynomial = poly(
                &format!("X0*((X1^2 + X2^2 - X0^2)^2 + (X3^2 + X4^2 - X0^2)^2 - ({e2})*X0^4)"),
                &P4,
            );
            let mut claims = common_claims(5);
            claims.extend([
                claim("factorization", "P = X0·Q matches the stored factorization", EXACT),
                claim("chart-identity", format!("Q = X0⁴·(q(X/X0) − {e2})"), EXACT),
                claim("singular-lines", "Σ_Q contains the four lines L_{m,n} = {[0, a, ±ia, b, ±ib]}", EXACT_COMPLEX),
                claim("lines-real-empty", "none of the lines L_{m,n} has real points", BRANCH_AND_PRUNE),
                claim(
                    "surfaces",
                    "H_{X0} ∩ H_Q is the union of S± = {X0 = 0, (X1² + X2²) ± i(X3² + X4²) = 0}",
                    EXACT_COMPLEX,
                ),
                claim("surfaces-real-empty", "neither S₊ nor S₋ has real points", BRANCH_AND_PRUNE),
                claim("critical-values", "the critical values of q are 0, 1 and 2", ENCLOSURE),
                claim("regular-level", format!("q − {e2} has 0 as a regular value with compact zero locus"), BRANCH_AND_PRUNE),
                claim("hyperplane-component", "H_{X0} ∩ ℝP⁴ ≅ ℝP³", STRUCTURAL),
                claim("three-torus", "T_ε is a 3-torus (GF(2) Betti numbers 1, 3, 3, 1)", HOMOLOGY),
                claim(
                    "retracts-to-clifford-torus",
                    "the domain bounded by T_ε retracts onto the Clifford torus T",
                    HOMOLOGY,
                ),
                claim(
                    "smooth-disjoint-union",
                    "the real slice is smooth and is the disjoint union of ℝP³ and T_ε",
                    STRUCTURAL,
                ),
                claim("in-T", "the real slice contains a 3-torus disjoint from Σ_P, so P ∈ 𝒯", STRUCTURAL),
            ]);
            Ok(CatalogEntry {
                id: "quintic",
                n: 4,
                family: Family::Quintic { eps },
                params: p,
                polynomial,
                factors: vec![x0, q],
                route: Route::AffineChart,
                claims,
                summary: "X0·[(X1² + X2² − X0²)² + (X3² + X4² − X0²)² − ε²X0⁴], 0 < ε < 1",
            })
        }
        other => Err(CatalogError::UnknownEntry(other.into())),
    }
}

/// Affine potential `q` in `X1..Xk` and level `c` with `Q = X0^d (q − c)`.
pub(crate) fn affine_potential(entry: &CatalogEntry) -> Option<(Polynomial, Rational)> {
    match &entry.family {
        Family::EvenQuartic { eps } => Some((poly("(X1^2 + X2^2 - 1)^2 + X3^4", &P3[1..]), eps.clone())),
        Family::Quintic { eps } => Some((
            poly("(X1^2 + X2^2 - 1)^2 + (X3^2 + X4^2 - 1)^2", &P4[1..]),
            eps * eps,
        )),
        _ => None,
    }
}

/// The factor whose zero set is analyzed in the affine chart.
pub(crate) fn chart_factor(entry: &CatalogEntry) -> &Polynomial {
    match entry.family {
        Family::Quintic { .. } => &entry.factors[1],
        _ => &entry.polynomial,
    }
}
