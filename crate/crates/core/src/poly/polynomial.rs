use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::One;

use super::monomial::Monomial;
use super::rational::{Coeff, GaussianRational, Rational};
use super::PolyError;

/// Sparse multivariate polynomial over an exact coefficient ring.
///
/// Terms are kept in a graded-lex ordered map with zero coefficients pruned,
/// so structural equality is mathematical equality.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<C = Rational> {
    vars: Arc<[String]>,
    terms: BTreeMap<Monomial, C>,
}

/// Polynomial with Gaussian-rational coefficients.
pub type ComplexPolynomial = Polynomial<GaussianRational>;

impl<C: Coeff> Polynomial<C> {
    pub fn zero(vars: Arc<[String]>) -> Self {
        Self {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Arc<[String]>, c: C) -> Self {
        let n = vars.len();
        let mut p = Self::zero(vars);
        p.add_term(Monomial::one(n), c);
        p
    }

    /// The `index`-th coordinate function.
    pub fn var(vars: Arc<[String]>, index: usize) -> Self {
        let n = vars.len();
        let mut p = Self::zero(vars);
        p.add_term(Monomial::var(n, index), C::one());
        p
    }

    pub fn from_terms(vars: Arc<[String]>, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c·m` in place, pruning the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: C) {
        debug_assert_eq!(m.nvars(), self.vars.len());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// Total degree; zero for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().next_back().map_or(0, Monomial::degree)
    }

    /// Largest exponent of each variable.
    pub fn max_exponents(&self) -> Vec<u32> {
        let mut out = vec![0; self.nvars()];
        for m in self.terms.keys() {
            for (o, &e) in out.iter_mut().zip(m.exponents()) {
                *o = (*o).max(e);
            }
        }
        out
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_constant)
    }

    fn check_same_vars(&self, other: &Self) {
        assert!(
            self.vars == other.vars,
            "polynomials over different variable lists: {:?} vs {:?}",
            self.vars,
            other.vars
        );
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| {
                let mut a = a.clone();
                a *= c;
                (m.clone(), a)
            })
            .collect();
        Self {
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::constant(self.vars.clone(), C::one());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `Some(d)` when every term has total degree `d ≥ 1`, `None` when the
    /// degrees differ. The zero polynomial and nonzero constants are rejected.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>, PolyError> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let Some(d) = degrees.next() else {
            return Err(PolyError::ZeroPolynomial);
        };
        if degrees.any(|e| e != d) {
            return Ok(None);
        }
        if d == 0 {
            return Err(PolyError::ConstantPolynomial);
        }
        Ok(Some(d))
    }

    pub fn is_homogeneous(&self) -> bool {
        matches!(self.homogeneous_degree(), Ok(Some(_)))
    }

    pub fn derivative(&self, index: usize) -> Self {
        let mut out = Self::zero(self.vars.clone());
        for (m, c) in &self.terms {
            let e = m.exponents()[index];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.exponents_mut()[index] -= 1;
            let mut dc = c.clone();
            dc *= &C::from(Rational::from_integer(e.into()));
            out.add_term(dm, dc);
        }
        out
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars()).map(|i| self.derivative(i)).collect()
    }

    /// `Σ xᵢ ∂p/∂xᵢ − d·p`; the zero polynomial whenever `p` is homogeneous of
    /// degree `d`.
    pub fn euler_defect(&self, d: u32) -> Self {
        let mut acc = self.scale(&-C::from(Rational::from_integer(d.into())));
        for (i, g) in self.gradient().iter().enumerate() {
            acc = &acc + &(&Self::var(self.vars.clone(), i) * g);
        }
        acc
    }

    /// Evaluates with values lifted from coefficients by `lift`.
    /// `one` is the unit of the value ring; the zero polynomial evaluates to
    /// `one - one`.
    pub fn evaluate_with<V>(&self, point: &[V], one: V, lift: impl Fn(&C) -> V) -> Result<V, PolyError>
    where
        V: Clone,
        for<'a> &'a V: Mul<&'a V, Output = V> + Add<&'a V, Output = V> + Sub<&'a V, Output = V>,
    {
        if point.len() != self.nvars() {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars(),
                got: point.len(),
            });
        }
        let maxe = self.max_exponents();
        let powers: Vec<Vec<V>> = point
            .iter()
            .zip(&maxe)
            .map(|(x, &e)| {
                let mut pw = Vec::with_capacity(e as usize + 1);
                pw.push(one.clone());
                for k in 1..=e as usize {
                    let next = &pw[k - 1] * x;
                    pw.push(next);
                }
                pw
            })
            .collect();
        let mut acc: Option<V> = None;
        for (m, c) in &self.terms {
            let mut t = lift(c);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            acc = Some(match acc {
                Some(a) => &a + &t,
                None => t,
            });
        }
        Ok(acc.unwrap_or_else(|| &one - &one))
    }

    /// Exact evaluation at a Gaussian-rational point.
    pub fn evaluate_complex(&self, point: &[GaussianRational]) -> Result<GaussianRational, PolyError> {
        self.evaluate_with(point, GaussianRational::one(), |c| c.to_gaussian())
    }

    pub fn to_complex(&self) -> ComplexPolynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.to_gaussian()))
                .collect(),
        }
    }

    /// True iff every coefficient is real, i.e. `p ∘ conj = conj ∘ p` for the
    /// standard coordinate conjugation.
    pub fn has_real_structure(&self) -> bool {
        self.terms.values().all(Coeff::is_real)
    }

    /// Substitutes `1` for variable `chart` and drops it from the variable list.
    pub fn dehomogenize(&self, chart: usize) -> Self {
        let vars: Arc<[String]> = self
            .vars
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != chart)
            .map(|(_, v)| v.clone())
            .collect();
        let mut out = Self::zero(vars);
        for (m, c) in &self.terms {
            let mut e = m.exponents().to_vec();
            e.remove(chart);
            out.add_term(Monomial::new(e), c.clone());
        }
        out
    }

    /// Inserts variable `name` at position `chart` and pads every term to total
    /// degree `degree`. Returns `None` if some term already exceeds `degree`.
    pub fn homogenize(&self, chart: usize, name: &str, degree: u32) -> Option<Self> {
        let mut vars: Vec<String> = self.vars.to_vec();
        vars.insert(chart, name.to_string());
        let mut out = Self::zero(vars.into());
        for (m, c) in &self.terms {
            let d = m.degree();
            if d > degree {
                return None;
            }
            let mut e = m.exponents().to_vec();
            e.insert(chart, degree - d);
            out.add_term(Monomial::new(e), c.clone());
        }
        Some(out)
    }

    /// Composes with a polynomial map: variable `i` is replaced by `images[i]`.
    pub fn compose(&self, images: &[Self]) -> Result<Self, PolyError> {
        if images.len() != self.nvars() {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars(),
                got: images.len(),
            });
        }
        let Some(first) = images.first() else {
            return Ok(self.clone());
        };
        let target = first.vars.clone();
        if images.iter().any(|q| q.vars != target) {
            return Err(PolyError::VariableMismatch);
        }
        let lift = |c: &C| Self::constant(target.clone(), c.clone());
        self.evaluate_with(images, Self::constant(target.clone(), C::one()), lift)
    }

    /// `den^deg(p) · p(num₀/den, …, num_{k−1}/den)`, a polynomial in the
    /// variables of the map.
    pub fn substitute_rational_map(&self, numerators: &[Self], denominator: &Self) -> Result<Self, PolyError> {
        if denominator.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        if numerators.len() != self.nvars() {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars(),
                got: numerators.len(),
            });
        }
        if numerators.iter().any(|q| q.vars != denominator.vars) {
            return Err(PolyError::VariableMismatch);
        }
        let vars = denominator.vars.clone();
        let d = self.degree();
        let den_powers: Vec<Self> = {
            let mut v = vec![Self::constant(vars.clone(), C::one())];
            for k in 1..=d as usize {
                let next = &v[k - 1] * denominator;
                v.push(next);
            }
            v
        };
        let maxe = self.max_exponents();
        let num_powers: Vec<Vec<Self>> = numerators
            .iter()
            .zip(&maxe)
            .map(|(q, &e)| {
                let mut v = vec![Self::constant(vars.clone(), C::one())];
                for k in 1..=e as usize {
                    let next = &v[k - 1] * q;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = Self::zero(vars.clone());
        for (m, c) in &self.terms {
            let mut t = den_powers[(d - m.degree()) as usize].scale(c);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = &t * &num_powers[i][e as usize];
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Determinant of the 3×3 matrix of second partial derivatives.
    pub fn hessian_determinant(&self) -> Result<Self, PolyError> {
        if self.nvars() != 3 {
            return Err(PolyError::WrongVariableCount {
                expected: 3,
                got: self.nvars(),
            });
        }
        let g = self.gradient();
        let h: Vec<Vec<Self>> = g.iter().map(|gi| gi.gradient()).collect();
        let minor = |a: usize, b: usize, c: usize, d: usize| &(&h[1][a] * &h[2][b]) - &(&h[1][c] * &h[2][d]);
        let t0 = &h[0][0] * &minor(1, 2, 2, 1);
        let t1 = &h[0][1] * &minor(0, 2, 2, 0);
        let t2 = &h[0][2] * &minor(0, 1, 1, 0);
        Ok(&(&t0 - &t1) + &t2)
    }
}

impl Polynomial<Rational> {
    /// Exact evaluation at a rational point.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        self.evaluate_with(point, Rational::one(), Clone::clone)
    }

    /// Double-precision evaluation (meshing path; not validated).
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        debug_assert_eq!(point.len(), self.nvars());
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut t = super::rational::rational_to_f64(c);
                for (x, &e) in point.iter().zip(m.exponents()) {
                    if e > 0 {
                        t *= x.powi(e as i32);
                    }
                }
                t
            })
            .sum()
    }
}

impl ComplexPolynomial {
    /// The same polynomial with rational coefficients, if all are real.
    pub fn real_part_exact(&self) -> Option<Polynomial<Rational>> {
        self.has_real_structure().then(|| Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.re.clone())).collect(),
        })
    }
}

impl<'a, C: Coeff> Add<&'a Polynomial<C>> for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        self.check_same_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a, C: Coeff> Sub<&'a Polynomial<C>> for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        self.check_same_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a, C: Coeff> Mul<&'a Polynomial<C>> for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        self.check_same_vars(rhs);
        let mut out = Polynomial::zero(self.vars.clone());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let mut c = ca.clone();
                c *= cb;
                out.add_term(ma.mul(mb), c);
            }
        }
        out
    }
}

impl<C: Coeff> Add for Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<C: Coeff> Sub for Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<C: Coeff> Mul for Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<C: Coeff> Neg for Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Self {
        Polynomial {
            vars: self.vars,
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

/// Prints in the polynomial text grammar, highest graded-lex term first.
impl<C: Coeff> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let (negative, mag) = c.term_parts();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if let Some(mag) = mag {
                factors.push(mag);
            }
            for (v, &e) in self.vars.iter().zip(m.exponents()) {
                match e {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            if factors.is_empty() {
                factors.push("1".to_string());
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
