//! Uniform grids and exact node classification against a level.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::TopologyError;
use crate::interval::{Interval, IntervalBox, IntervalPoly};
use crate::par::map_range;
use crate::poly::{rational_from_f64, Polynomial, Rational};

pub const MIN_RESOLUTION: usize = 8;
/// Level shifts tried before giving up on a degenerate grid.
const MAX_SHIFTS: u32 = 4;

/// A window subdivided into `resolution[i]` cells along axis `i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    window: IntervalBox,
    resolution: Vec<usize>,
}

impl GridSpec {
    pub fn new(window: IntervalBox, resolution: Vec<usize>) -> Result<Self, TopologyError> {
        if resolution.len() != window.dim() {
            return Err(TopologyError::DimensionMismatch {
                expected: window.dim(),
                got: resolution.len(),
            });
        }
        if let Some(&r) = resolution.iter().find(|&&r| r < MIN_RESOLUTION) {
            return Err(TopologyError::ResolutionTooSmall(r));
        }
        if window.intervals().iter().any(|iv| !(iv.width() > 0.0) || !iv.width().is_finite()) {
            return Err(TopologyError::DegenerateWindow);
        }
        Ok(Self { window, resolution })
    }

    /// `n` cells along every axis of `window`.
    pub fn uniform(window: IntervalBox, n: usize) -> Result<Self, TopologyError> {
        let d = window.dim();
        Self::new(window, vec![n; d])
    }

    pub fn window(&self) -> &IntervalBox {
        &self.window
    }

    pub fn resolution(&self) -> &[usize] {
        &self.resolution
    }

    pub fn dim(&self) -> usize {
        self.resolution.len()
    }

    /// Nodes per axis (`resolution + 1`).
    pub fn node_counts(&self) -> Vec<usize> {
        self.resolution.iter().map(|r| r + 1).collect()
    }

    pub fn num_nodes(&self) -> usize {
        self.node_counts().iter().product()
    }

    pub fn num_cells(&self) -> usize {
        self.resolution.iter().product()
    }

    /// Coordinate of node `i` along `axis`; the last node is the window edge.
    pub fn coord(&self, axis: usize, i: usize) -> f64 {
        let iv = self.window.intervals()[axis];
        let n = self.resolution[axis];
        if i == n {
            iv.hi()
        } else {
            iv.lo() + iv.width() * (i as f64) / (n as f64)
        }
    }

    pub fn cell_width(&self, axis: usize) -> f64 {
        self.window.intervals()[axis].width() / self.resolution[axis] as f64
    }

    /// Length of a cell diagonal.
    pub fn cell_diagonal(&self) -> f64 {
        (0..self.dim()).map(|a| self.cell_width(a).powi(2)).sum::<f64>().sqrt()
    }

    /// Multi-index of the node with linear index `lin` (axis 0 fastest).
    pub fn node_index(&self, mut lin: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.dim());
        for n in self.node_counts() {
            out.push(lin % n);
            lin /= n;
        }
        out
    }

    pub fn node_linear(&self, idx: &[usize]) -> usize {
        let counts = self.node_counts();
        let mut lin = 0;
        for a in (0..self.dim()).rev() {
            lin = lin * counts[a] + idx[a];
        }
        lin
    }

    pub fn node_point(&self, idx: &[usize]) -> Vec<f64> {
        idx.iter().enumerate().map(|(a, &i)| self.coord(a, i)).collect()
    }

    /// The box of the cell whose lowest corner is node `idx`.
    pub fn cell_box(&self, idx: &[usize]) -> IntervalBox {
        IntervalBox::new(
            idx.iter()
                .enumerate()
                .map(|(a, &i)| Interval::new(self.coord(a, i), self.coord(a, i + 1)))
                .collect(),
        )
    }

    /// Multi-index of the cell with linear index `lin` (axis 0 fastest).
    pub fn cell_index(&self, mut lin: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.dim());
        for &n in &self.resolution {
            out.push(lin % n);
            lin /= n;
        }
        out
    }
}

/// Side of the level at every grid node.
#[derive(Clone, Debug)]
pub struct NodeSigns {
    /// `true` where `q > level`.
    pub above: Vec<bool>,
    /// Float values of `q − level`, sign-consistent with `above`.
    pub values: Vec<f64>,
    /// Level actually used (after any shift).
    pub level: Rational,
    /// Total shift applied because a node lay exactly on the level.
    pub shift: Option<Rational>,
}

/// Exact sign of `q(x) − level`, using interval evaluation and falling back
/// to rational arithmetic.
pub(crate) fn exact_sign(shifted: &Polynomial, ip: &IntervalPoly, x: &[f64]) -> i8 {
    let pt: Vec<Interval> = x.iter().map(|&v| Interval::point(v)).collect();
    let r = ip.eval(&pt);
    if r.lo() > 0.0 {
        return 1;
    }
    if r.hi() < 0.0 {
        return -1;
    }
    let xr: Vec<Rational> = x.iter().map(|&v| rational_from_f64(v)).collect();
    let v = shifted.evaluate(&xr).expect("dimension checked");
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

pub(crate) fn shift_unit(level: &Rational) -> Rational {
    let scale = if level.is_zero() { Rational::from_integer(1.into()) } else { level.abs() };
    scale / Rational::from_integer(BigInt::from(1u64 << 40))
}

/// Classifies every node of `grid`. A node exactly on the level triggers a
/// shift of the level by `2⁻⁴⁰·max(|level|, 1)`-sized steps.
pub fn classify_nodes(q: &Polynomial, level: &Rational, grid: &GridSpec) -> Result<NodeSigns, TopologyError> {
    if q.nvars() != grid.dim() {
        return Err(TopologyError::DimensionMismatch {
            expected: grid.dim(),
            got: q.nvars(),
        });
    }
    let step = shift_unit(level);
    let mut current = level.clone();
    for _ in 0..=MAX_SHIFTS {
        let shifted = q - &Polynomial::constant(q.vars().clone(), current.clone());
        let ip = IntervalPoly::new(&shifted);
        let res: Vec<(i8, f64)> = map_range(grid.num_nodes(), |lin| {
            let x = grid.node_point(&grid.node_index(lin));
            let s = exact_sign(&shifted, &ip, &x);
            let v = ip.eval_f64(&x);
            let v = match s {
                1 if v <= 0.0 => f64::MIN_POSITIVE,
                -1 if v >= 0.0 => -f64::MIN_POSITIVE,
                _ => v,
            };
            (s, v)
        });
        if res.iter().all(|&(s, _)| s != 0) {
            let shift = (current != *level).then(|| &current - level);
            return Ok(NodeSigns {
                above: res.iter().map(|&(s, _)| s > 0).collect(),
                values: res.iter().map(|&(_, v)| v).collect(),
                level: current,
                shift,
            });
        }
        current += &step;
    }
    Err(TopologyError::DegenerateLevel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, parse_polynomial, variables};

    #[test]
    fn grid_indexing_round_trips() {
        let g = GridSpec::new(IntervalBox::cube(3, -1.0, 1.0), vec![8, 9, 10]).unwrap();
        assert_eq!(g.num_nodes(), 9 * 10 * 11);
        for lin in [0, 5, 123, g.num_nodes() - 1] {
            assert_eq!(g.node_linear(&g.node_index(lin)), lin);
        }
        assert_eq!(g.coord(0, 8), 1.0);
        assert!(GridSpec::uniform(IntervalBox::cube(2, 0.0, 1.0), 4).is_err());
    }

    #[test]
    fn node_on_level_shifts() {
        let v = variables(&["x", "y"]);
        let q = parse_polynomial("x^2 + y^2", &v).unwrap();
        let g = GridSpec::uniform(IntervalBox::cube(2, -2.0, 2.0), 8).unwrap();
        let s = classify_nodes(&q, &int(1), &g).unwrap();
        assert!(s.shift.is_some());
        assert!(s.level > int(1));
        let s = classify_nodes(&q, &Rational::new(3.into(), 2.into()), &g).unwrap();
        assert!(s.shift.is_none());
    }
}
