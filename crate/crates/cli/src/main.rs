//! `realslice`: verify catalog entries, export meshes, and run standalone
//! certification searches.
//!
//! Exit codes: 0 when every claim is certified or consistent, 2 when any is
//! refuted, 3 when any is inconclusive, 1 on usage or I/O errors. The only
//! environment variable consulted is `RAYON_NUM_THREADS`.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use realslice::catalog::{
    build_entry, export_mesh, export_report, load_catalog, mesh_entry, parse_rational, parse_system_document,
    run_verification, CatalogError, ClaimVerdict, VerifyConfig,
};
use realslice::interval::{certify_empty, enclose_critical_values, Budget, EnclosureOptions, Interval, IntervalBox, Verdict};
use realslice::poly::parse_poly_document;

#[derive(Parser)]
#[command(name = "realslice", version, about = "Certified analysis of real slices of projective hypersurfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct BudgetArgs {
    /// Maximum number of boxes per branch-and-prune search.
    #[arg(long, value_name = "B")]
    budget: Option<u64>,
    /// Boxes narrower than this are not split further.
    #[arg(long, value_name = "W")]
    min_width: Option<f64>,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        let d = Budget::default();
        Budget {
            max_boxes: self.budget.unwrap_or(d.max_boxes),
            min_width: self.min_width.unwrap_or(d.min_width),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run every check for a catalog entry and print one verdict per claim.
    Verify {
        #[arg(long, value_name = "ID")]
        entry: String,
        /// Entry parameter, e.g. `sigma=0` or `eps=1/4`; repeatable.
        #[arg(long = "param", value_name = "K=V", value_parser = parse_param)]
        params: Vec<(String, String)>,
        /// Grid resolution (cells per axis) for meshing and homology.
        #[arg(long, value_name = "N")]
        grid: Option<usize>,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Write the full report as JSON.
        #[arg(long, value_name = "PATH")]
        report: Option<PathBuf>,
        /// Skip the 1.5× resolution rerun of grid-based stages.
        #[arg(long)]
        single_resolution: bool,
    },
    /// Write the surface mesh of an entry as OBJ.
    Mesh {
        #[arg(long, value_name = "ID")]
        entry: String,
        #[arg(long = "param", value_name = "K=V", value_parser = parse_param)]
        params: Vec<(String, String)>,
        #[arg(long, value_name = "N")]
        grid: Option<usize>,
        #[arg(long, value_name = "PATH")]
        obj: PathBuf,
    },
    /// Enclose the critical values of a polynomial on the cube [lo, hi]^k.
    CriticalValues {
        #[arg(long, value_name = "FILE")]
        poly: PathBuf,
        #[arg(long, value_name = "LO:HI", value_parser = parse_window, allow_hyphen_values = true)]
        window: (f64, f64),
        /// Stop refining once a value enclosure is this narrow.
        #[arg(long, value_name = "T")]
        tolerance: Option<f64>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Certify that a polynomial system has no real solution.
    CertifyEmpty {
        #[arg(long, value_name = "FILE")]
        system: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// List the catalog.
    List,
}

fn parse_param(s: &str) -> Result<(String, String), String> {
    s.split_once('=')
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .ok_or_else(|| format!("expected K=V, found '{s}'"))
}

fn parse_window(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("expected LO:HI, found '{s}'"))?;
    let lo = parse_rational(lo).ok_or_else(|| format!("bad bound '{lo}'"))?;
    let hi = parse_rational(hi).ok_or_else(|| format!("bad bound '{hi}'"))?;
    if lo >= hi {
        return Err(format!("empty window {s}"));
    }
    Ok((Interval::from_rational(&lo).lo(), Interval::from_rational(&hi).hi()))
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Certified => 0,
        Verdict::RefutedByWitness => 2,
        Verdict::Inconclusive => 3,
    }
}

fn label(v: ClaimVerdict) -> &'static str {
    match v {
        ClaimVerdict::Certified => "certified",
        ClaimVerdict::Consistent => "consistent",
        ClaimVerdict::Refuted => "refuted",
        ClaimVerdict::Inconclusive => "inconclusive",
    }
}

fn run(cmd: Command) -> Result<u8, String> {
    let err = |e: CatalogError| e.to_string();
    match cmd {
        Command::List => {
            for e in load_catalog() {
                let params: Vec<String> = e.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                println!(
                    "{:<16} {:<14} n={} {:<13} {:>2} claims  {}",
                    e.id,
                    params.join(","),
                    e.n,
                    serde_json::to_value(e.route).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default(),
                    e.claims.len(),
                    e.summary
                );
            }
            Ok(0)
        }
        Command::Verify {
            entry,
            params,
            grid,
            budget,
            report,
            single_resolution,
        } => {
            let e = build_entry(&entry, &params).map_err(err)?;
            let config = VerifyConfig {
                grid,
                budget: budget.budget(),
                stability: !single_resolution,
            };
            let r = run_verification(&e, &config).map_err(err)?;
            println!("{e}");
            for c in &r.claims {
                println!("  {:<12} {:<28} {}", label(c.verdict), c.id, c.claim);
            }
            if let Some(path) = report {
                export_report(&r, &path).map_err(err)?;
                println!("report written to {}", path.display());
            }
            Ok(r.exit_code() as u8)
        }
        Command::Mesh { entry, params, grid, obj } => {
            let e = build_entry(&entry, &params).map_err(err)?;
            let mesh = mesh_entry(&e, grid).map_err(err)?;
            export_mesh(&mesh, &obj).map_err(err)?;
            for (i, s) in mesh.component_stats().iter().enumerate() {
                println!(
                    "component {i}: V={} E={} F={} chi={} genus={}",
                    s.vertices,
                    s.edges,
                    s.faces,
                    s.chi,
                    s.genus.map_or("-".into(), |g| g.to_string())
                );
            }
            println!("wrote {}", obj.display());
            Ok(0)
        }
        Command::CriticalValues {
            poly,
            window,
            tolerance,
            budget,
        } => {
            let q = parse_poly_document(&read(&poly)?).map_err(|e| format!("{}: {e}", poly.display()))?;
            let domain = IntervalBox::cube(q.nvars(), window.0, window.1);
            let mut opts = EnclosureOptions {
                budget: budget.budget(),
                ..EnclosureOptions::default()
            };
            if let Some(t) = tolerance {
                opts.value_tolerance = t;
            }
            let cv = enclose_critical_values(&q, &domain, &opts);
            let out = json!({
                "enclosures": cv.enclosures.iter().map(|iv| [iv.lo(), iv.hi()]).collect::<Vec<_>>(),
                "total_width": cv.total_width(),
                "certificate": cv.certificate,
                "adequacy": cv.adequacy,
            });
            println!("{}", serde_json::to_string_pretty(&out).expect("json"));
            Ok(verdict_code(cv.certificate.verdict))
        }
        Command::CertifyEmpty { system, budget } => {
            let sys = parse_system_document(&read(&system)?).map_err(|e| format!("{}: {e}", system.display()))?;
            let cert = certify_empty(&sys.system, &budget.budget());
            println!("{}", serde_json::to_string_pretty(&cert).expect("json"));
            Ok(verdict_code(cert.verdict))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
