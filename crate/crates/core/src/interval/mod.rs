//! Validated interval arithmetic and branch-and-prune certification.

mod certify;
mod eval;
#[allow(clippy::module_inception)]
mod interval;
mod search;

pub use certify::{
    certify_bounded_locus, certify_empty, certify_regular_value, enclose_critical_values, is_exact_critical_point,
    Certificate, CertificateKind, ConstraintSystem, CriticalValues, DomainAdequacy, EnclosureOptions, Verdict,
};
pub use eval::{exact_point, interval_evaluate, Enclosure, IntervalBox, IntervalPoly};
pub use interval::Interval;
pub use search::{branch_and_prune, Action, Budget, SearchOutcome};
