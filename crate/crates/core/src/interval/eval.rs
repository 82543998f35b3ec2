//! Interval boxes and validated polynomial range enclosures.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::Interval;
use crate::poly::{rational_from_f64, Polynomial, Rational};

/// Axis-aligned box, one interval per variable.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntervalBox(Vec<Interval>);

impl IntervalBox {
    /// Panics on an empty interval list.
    pub fn new(intervals: Vec<Interval>) -> Self {
        assert!(!intervals.is_empty(), "a box needs at least one coordinate");
        Self(intervals)
    }

    /// `[lo, hi]^dim`.
    pub fn cube(dim: usize, lo: f64, hi: f64) -> Self {
        Self::new(vec![Interval::new(lo, hi); dim])
    }

    pub fn point(x: &[f64]) -> Self {
        Self::new(x.iter().map(|&v| Interval::point(v)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.0
    }

    pub fn intervals_mut(&mut self) -> &mut [Interval] {
        &mut self.0
    }

    pub fn widths(&self) -> Vec<f64> {
        self.0.iter().map(Interval::width).collect()
    }

    pub fn max_width(&self) -> f64 {
        self.0.iter().map(Interval::width).fold(0.0, f64::max)
    }

    /// Index of the widest coordinate (first on ties).
    pub fn widest(&self) -> usize {
        let mut best = 0;
        for (i, iv) in self.0.iter().enumerate() {
            if iv.width() > self.0[best].width() {
                best = i;
            }
        }
        best
    }

    pub fn midpoint(&self) -> Vec<f64> {
        self.0.iter().map(Interval::mid).collect()
    }

    /// Splits the widest coordinate at its midpoint; lower half first.
    pub fn bisect(&self) -> (IntervalBox, IntervalBox) {
        let k = self.widest();
        let (a, b) = self.0[k].bisect();
        let mut left = self.clone();
        let mut right = self.clone();
        left.0[k] = a;
        right.0[k] = b;
        (left, right)
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim() && self.0.iter().zip(x).all(|(iv, &v)| iv.contains(v))
    }

    pub fn contains_rational(&self, x: &[Rational]) -> bool {
        x.len() == self.dim() && self.0.iter().zip(x).all(|(iv, v)| iv.contains_rational(v))
    }

    pub fn as_pairs(&self) -> Vec<[f64; 2]> {
        self.0.iter().map(|iv| [iv.lo(), iv.hi()]).collect()
    }

    pub(crate) fn lex_key(&self) -> Vec<(f64, f64)> {
        self.0.iter().map(|iv| (iv.lo(), iv.hi())).collect()
    }
}

impl fmt::Display for IntervalBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// A polynomial compiled for fast interval evaluation over the expanded
/// monomial form (the natural interval extension).
#[derive(Clone, Debug)]
pub struct IntervalPoly {
    nvars: usize,
    max_exp: Vec<u32>,
    terms: Vec<(Interval, Vec<u32>)>,
}

impl IntervalPoly {
    pub fn new(p: &Polynomial) -> Self {
        Self {
            nvars: p.nvars(),
            max_exp: p.max_exponents(),
            terms: p
                .terms()
                .map(|(m, c)| (Interval::from_rational(c), m.exponents().to_vec()))
                .collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, b: &[Interval]) -> Interval {
        debug_assert_eq!(b.len(), self.nvars);
        let powers: Vec<Vec<Interval>> = b
            .iter()
            .zip(&self.max_exp)
            .map(|(&x, &e)| (0..=e).map(|k| x.powi(k)).collect())
            .collect();
        let mut acc = Interval::point(0.0);
        for (c, exps) in &self.terms {
            let mut t = *c;
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    t = t * powers[i][e as usize];
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Float evaluation (no validation).
    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(c, exps)| {
                let mut t = c.mid();
                for (v, &e) in x.iter().zip(exps) {
                    if e > 0 {
                        t *= v.powi(e as i32);
                    }
                }
                t
            })
            .sum()
    }
}

/// Natural interval extension of `p` over `b`.
pub fn interval_evaluate(p: &Polynomial, b: &IntervalBox) -> Interval {
    IntervalPoly::new(p).eval(b.intervals())
}

/// Range enclosure combining the natural extension with the mean-value form
/// `f(m) + ∇f(B)·(B − m)`, which is second-order tight on small boxes.
#[derive(Clone, Debug)]
pub struct Enclosure {
    f: IntervalPoly,
    grad: Vec<IntervalPoly>,
}

impl Enclosure {
    pub fn new(p: &Polynomial) -> Self {
        Self {
            f: IntervalPoly::new(p),
            grad: p.gradient().iter().map(IntervalPoly::new).collect(),
        }
    }

    pub fn natural(&self, b: &[Interval]) -> Interval {
        self.f.eval(b)
    }

    pub fn mean_value(&self, b: &[Interval]) -> Interval {
        let m: Vec<Interval> = b.iter().map(|iv| Interval::point(iv.mid())).collect();
        let mut acc = self.f.eval(&m);
        for ((g, iv), mi) in self.grad.iter().zip(b).zip(&m) {
            if g.is_zero() || iv.width() == 0.0 {
                continue;
            }
            acc = acc + g.eval(b) * (*iv - *mi);
        }
        acc
    }

    pub fn range(&self, b: &[Interval]) -> Interval {
        let nat = self.natural(b);
        let mv = self.mean_value(b);
        nat.intersect(&mv).unwrap_or(nat)
    }

    /// True when the polynomial provably has no zero in `b`.
    pub fn excludes_zero(&self, b: &[Interval]) -> bool {
        !self.natural(b).contains_zero() || !self.mean_value(b).contains_zero()
    }

    /// Enclosure refined by bisecting `b` `depth` times along its widest axes.
    pub fn refined_range(&self, b: &IntervalBox, depth: u32) -> Interval {
        if depth == 0 {
            return self.range(b.intervals());
        }
        let (l, r) = b.bisect();
        self.refined_range(&l, depth - 1)
            .hull(&self.refined_range(&r, depth - 1))
    }

    pub fn poly(&self) -> &IntervalPoly {
        &self.f
    }

    pub fn gradient(&self) -> &[IntervalPoly] {
        &self.grad
    }
}

/// Exact rational coordinates of a float point.
pub fn exact_point(x: &[f64]) -> Vec<Rational> {
    x.iter().map(|&v| rational_from_f64(v)).collect()
}
