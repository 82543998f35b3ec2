//! Exact sparse multivariate polynomials and their calculus.

mod monomial;
mod parse;
mod polynomial;
mod rational;

use serde::Serialize;

pub use monomial::{monomials_of_degree, Monomial};
pub use parse::{
    parse_complex_polynomial, parse_poly_document, parse_polynomial, parse_vars_header, variables,
    ParseError,
};
pub use polynomial::{ComplexPolynomial, Polynomial};
pub use rational::{int, rat, rational_from_f64, rational_to_f64, Coeff, GaussianRational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("point has {got} coordinates, polynomial has {expected} variables")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operands use different variable lists")]
    VariableMismatch,
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("a nonzero constant is not a hypersurface (degree must be at least 1)")]
    ConstantPolynomial,
    #[error("expected {expected} variables, found {got}")]
    WrongVariableCount { expected: usize, got: usize },
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("missing 'vars:' header line")]
    MissingHeader,
}

/// Dimension of the real space of degree-`n+1` forms in `n+1` variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolySpaceInfo {
    pub n: u32,
    pub dim: u64,
}

/// `C(2n+1, n)`, the number of degree-`(n+1)` monomials in `n+1` variables.
///
/// Panics for `n = 0` or when the count overflows `u64` (`n > 31`).
pub fn space_dimension(n: u32) -> PolySpaceInfo {
    assert!(n >= 1, "projective dimension must be positive");
    assert!(n <= 31, "dimension count overflows u64");
    let top = u128::from(2 * n + 1);
    let mut dim: u128 = 1;
    for k in 0..u128::from(n) {
        dim = dim * (top - k) / (k + 1);
    }
    PolySpaceInfo {
        n,
        dim: u64::try_from(dim).expect("fits"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn vars(names: &[&str]) -> std::sync::Arc<[String]> {
        variables(names)
    }

    #[test]
    fn space_dimension_values() {
        assert_eq!(space_dimension(2).dim, 10);
        assert_eq!(space_dimension(3).dim, 35);
        assert_eq!(space_dimension(4).dim, 126);
    }

    #[test]
    fn space_dimension_matches_enumeration() {
        for n in 1..=6u32 {
            let count = monomials_of_degree(n as usize + 1, n + 1).len();
            assert_eq!(space_dimension(n).dim, count as u64);
        }
    }

    #[test]
    fn gradient_examples() {
        let v = vars(&["X0", "X1"]);
        let p = parse_polynomial("X0^2*X1", &v).unwrap();
        let g = p.gradient();
        assert_eq!(g[0], parse_polynomial("2*X0*X1", &v).unwrap());
        assert_eq!(g[1], parse_polynomial("X0^2", &v).unwrap());

        let v = vars(&["X0", "X1", "X2", "X3"]);
        let fermat = parse_polynomial("X0^4 + X1^4 - X2^4 - X3^4", &v).unwrap();
        let expected = ["4*X0^3", "4*X1^3", "-4*X2^3", "-4*X3^3"];
        for (g, e) in fermat.gradient().iter().zip(expected) {
            assert_eq!(*g, parse_polynomial(e, &v).unwrap());
        }
        assert!(fermat.euler_defect(4).is_zero());
    }

    #[test]
    fn homogeneity_checks() {
        let v = vars(&["X0", "X1"]);
        assert_eq!(parse_polynomial("X0 + X1^2", &v).unwrap().homogeneous_degree(), Ok(None));
        assert_eq!(
            parse_polynomial("1", &v).unwrap().homogeneous_degree(),
            Err(PolyError::ConstantPolynomial)
        );
        assert_eq!(
            parse_polynomial("X0 - X0", &v).unwrap().homogeneous_degree(),
            Err(PolyError::ZeroPolynomial)
        );
    }

    #[test]
    fn evaluation_examples() {
        let v = vars(&["x", "y"]);
        let p = parse_polynomial("x^2 - y", &v).unwrap();
        assert!(p.evaluate(&[int(2), int(4)]).unwrap().is_zero());
        assert_eq!(
            p.evaluate(&[int(1)]),
            Err(PolyError::DimensionMismatch { expected: 2, got: 1 })
        );
    }

    #[test]
    fn rational_map_substitution() {
        let v = vars(&["X0", "X1"]);
        let t = vars(&["t"]);
        let p = parse_polynomial("X0 + X1", &v).unwrap();
        let nums = [
            parse_polynomial("1 - t^2", &t).unwrap(),
            parse_polynomial("2*t", &t).unwrap(),
        ];
        let den = parse_polynomial("1 + t^2", &t).unwrap();
        let pulled = p.substitute_rational_map(&nums, &den).unwrap();
        assert_eq!(pulled, parse_polynomial("1 + 2*t - t^2", &t).unwrap());

        let identity = [Polynomial::var(v.clone(), 0), Polynomial::var(v.clone(), 1)];
        let one = parse_polynomial("1", &v).unwrap();
        assert_eq!(p.substitute_rational_map(&identity, &one).unwrap(), p);

        let zero = parse_polynomial("0", &t).unwrap();
        assert_eq!(
            p.substitute_rational_map(&nums, &zero),
            Err(PolyError::ZeroDenominator)
        );
    }

    #[test]
    fn hessian_examples() {
        let v = vars(&["X0", "X1", "X2"]);
        let fermat = parse_polynomial("X0^3 + X1^3 + X2^3", &v).unwrap();
        assert_eq!(
            fermat.hessian_determinant().unwrap(),
            parse_polynomial("216*X0*X1*X2", &v).unwrap()
        );
        let cube = parse_polynomial("X0^3", &v).unwrap();
        let h = cube.hessian_determinant().unwrap();
        assert!(h.evaluate(&[int(1), int(0), int(0)]).unwrap().is_zero());
        let two = vars(&["x", "y"]);
        assert!(parse_polynomial("x*y", &two).unwrap().hessian_determinant().is_err());
    }

    #[test]
    fn dehomogenize_and_back() {
        let v = vars(&["X0", "X1", "X2"]);
        let p = parse_polynomial("X0^2*X1 + X2^3 - X0*X1*X2", &v).unwrap();
        let a = p.dehomogenize(0);
        assert_eq!(a.vars().as_ref(), &["X1".to_string(), "X2".to_string()]);
        assert_eq!(a.homogenize(0, "X0", 3).unwrap(), p);
        let sq = parse_polynomial("X0^2", &v).unwrap().dehomogenize(0);
        assert_eq!(sq.to_string(), "1");
    }
}
