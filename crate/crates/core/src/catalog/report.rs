use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use super::{CatalogError, Route, SingularLocusReport};
use crate::interval::Budget;
use crate::topology::SurfaceMesh;

/// Verdict levels, weakest evidence last. Mesh and homology evidence never
/// exceeds `Consistent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimVerdict {
    Certified,
    Consistent,
    Refuted,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClaimRecord {
    pub id: String,
    pub claim: String,
    pub method: String,
    pub verdict: ClaimVerdict,
    pub evidence: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StageTiming {
    pub stage: String,
    pub millis: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Environment {
    /// Primary grid resolution (cells per axis).
    pub grid: usize,
    /// Resolution of the stability rerun, if any.
    pub stability_grid: Option<usize>,
    pub budget: Budget,
    pub threads: usize,
    pub timings: Vec<StageTiming>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub entry: String,
    pub params: BTreeMap<String, String>,
    pub polynomial: String,
    pub route: Route,
    pub claims: Vec<ClaimRecord>,
    pub singular_locus: SingularLocusReport,
    pub environment: Environment,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn claim(&self, id: &str) -> Option<&ClaimRecord> {
        self.claims.iter().find(|c| c.id == id)
    }

    /// 0 when every claim is certified or consistent, 2 when any is
    /// refuted, otherwise 3.
    pub fn exit_code(&self) -> i32 {
        if self.claims.iter().any(|c| c.verdict == ClaimVerdict::Refuted) {
            2
        } else if self.claims.iter().any(|c| c.verdict == ClaimVerdict::Inconclusive) {
            3
        } else {
            0
        }
    }

    /// Pretty JSON with lexicographically sorted object keys.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("report serializes");
        let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
        s.push('\n');
        s
    }
}

fn io_error(path: &Path, source: std::io::Error) -> CatalogError {
    CatalogError::Io {
        path: path.to_path_buf(),
        source,
    }
}

pub fn export_report(report: &VerificationReport, path: &Path) -> Result<(), CatalogError> {
    fs::write(path, report.to_json()).map_err(|e| io_error(path, e))
}

/// Writes the mesh as OBJ. An empty mesh is an error and no file is created.
pub fn export_mesh(mesh: &SurfaceMesh, path: &Path) -> Result<(), CatalogError> {
    if mesh.triangles.is_empty() {
        return Err(CatalogError::EmptyMesh);
    }
    let mut buf = Vec::new();
    mesh.write_obj(&mut buf).map_err(|e| io_error(path, e))?;
    fs::write(path, buf).map_err(|e| io_error(path, e))
}
