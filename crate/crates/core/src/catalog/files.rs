//! The `.sys` constraint-system format.
//!
//! ```text
//! # comment
//! vars: x y z
//! domain: -2:2            # one range for every axis, or one per axis
//! sphere                  # optional: also require x² + y² + z² = 1
//! x^2 + y^2 - z^2 = 0     # one equation per line; "= 0" may be omitted
//! ```
//!
//! With `sphere` the domain defaults to `[−1, 1]ⁿ`; otherwise it is required.

use std::sync::Arc;

use super::{parse_rational, CatalogError};
use crate::interval::{ConstraintSystem, Interval, IntervalBox};
use crate::poly::{parse_polynomial, parse_vars_header, Polynomial};

#[derive(Clone, Debug)]
pub struct SystemFile {
    pub variables: Arc<[String]>,
    pub system: ConstraintSystem,
}

fn err(line: usize, message: impl Into<String>) -> CatalogError {
    CatalogError::SystemFile {
        line,
        message: message.into(),
    }
}

fn parse_range(line: usize, text: &str) -> Result<Interval, CatalogError> {
    let (lo, hi) = text
        .split_once(':')
        .ok_or_else(|| err(line, format!("expected lo:hi, found '{text}'")))?;
    let lo = parse_rational(lo).ok_or_else(|| err(line, format!("bad bound '{lo}'")))?;
    let hi = parse_rational(hi).ok_or_else(|| err(line, format!("bad bound '{hi}'")))?;
    if lo > hi {
        return Err(err(line, format!("empty range {text}")));
    }
    Ok(Interval::new(
        Interval::from_rational(&lo).lo(),
        Interval::from_rational(&hi).hi(),
    ))
}

pub fn parse_system_document(text: &str) -> Result<SystemFile, CatalogError> {
    let mut vars: Option<Arc<[String]>> = None;
    let mut domain: Option<(usize, Vec<Interval>)> = None;
    let mut sphere = false;
    let mut equations: Vec<Polynomial> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some(names) = &vars else {
            vars = Some(parse_vars_header(line).ok_or_else(|| err(line_no, "expected a 'vars:' header"))?);
            continue;
        };
        if let Some(rest) = line.strip_prefix("domain:") {
            let ranges = rest
                .split_whitespace()
                .map(|t| parse_range(line_no, t))
                .collect::<Result<Vec<_>, _>>()?;
            if ranges.len() != 1 && ranges.len() != names.len() {
                return Err(err(line_no, format!("expected 1 or {} ranges, found {}", names.len(), ranges.len())));
            }
            domain = Some((line_no, ranges));
        } else if line == "sphere" {
            sphere = true;
        } else {
            let (lhs, rhs) = line.split_once('=').unwrap_or((line, "0"));
            let column_shift = raw.find(lhs.trim()).unwrap_or(0);
            let parse = |s: &str| {
                parse_polynomial(s, names).map_err(|e| err(line_no, format!("column {}: {}", e.column + column_shift, e.message)))
            };
            let eq = &parse(lhs)? - &parse(rhs)?;
            equations.push(eq);
        }
    }
    let vars = vars.ok_or_else(|| err(1, "missing 'vars:' header"))?;
    if equations.is_empty() {
        return Err(err(text.lines().count().max(1), "no equations"));
    }
    let n = vars.len();
    let domain = match domain {
        Some((_, r)) if r.len() == 1 => IntervalBox::new(vec![r[0]; n]),
        Some((_, r)) => IntervalBox::new(r),
        None if sphere => IntervalBox::cube(n, -1.0, 1.0),
        None => return Err(err(1, "a 'domain:' line is required without 'sphere'")),
    };
    let mut system = ConstraintSystem::new(equations, domain);
    system.sphere = sphere;
    Ok(SystemFile { variables: vars, system })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_domain_and_sphere() {
        let s = parse_system_document("vars: x y\ndomain: -2:2\nx^2 + y^2 + 1 = 0\n").unwrap();
        assert_eq!(s.system.equalities.len(), 1);
        assert!(!s.system.sphere);
        assert_eq!(s.system.domain.intervals()[1], Interval::new(-2.0, 2.0));

        let s = parse_system_document("# singular system\nvars: a b c\nsphere\na\nb = c\n").unwrap();
        assert!(s.system.sphere);
        assert_eq!(s.system.equalities[1].to_string(), "b - c");
        assert_eq!(s.system.domain.intervals()[0], Interval::new(-1.0, 1.0));
    }

    #[test]
    fn reports_line_numbers() {
        let e = parse_system_document("vars: x\ndomain: 0:1\nx + y\n").unwrap_err();
        assert!(e.to_string().starts_with("line 3"), "{e}");
        assert!(parse_system_document("vars: x\nx\n").is_err());
        assert!(parse_system_document("x\n").is_err());
        assert!(parse_system_document("vars: x y\ndomain: 0:1 0:1 0:1\nx\n").is_err());
    }
}
