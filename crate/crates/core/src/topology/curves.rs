//! Level curves of bivariate polynomials by marching squares.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::grid::{classify_nodes, exact_sign, GridSpec};
use super::{TopologyError, UnionFind};
use crate::interval::IntervalPoly;
use crate::poly::{Polynomial, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveComponent {
    pub vertices: usize,
    pub segments: usize,
    /// Every vertex has exactly two incident segments.
    pub closed: bool,
}

/// Polyline approximation of `{q = level}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurveComplex {
    pub vertices: Vec<[f64; 2]>,
    pub segments: Vec<[usize; 2]>,
    /// Component id of each vertex.
    pub vertex_component: Vec<usize>,
    pub components: Vec<CurveComponent>,
    /// Level shift applied for degenerate nodes, as an exact rational string.
    pub level_shift: Option<String>,
}

impl CurveComplex {
    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn all_closed(&self) -> bool {
        self.components.iter().all(|c| c.closed)
    }

    /// `V − E`; zero for a union of closed curves.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.segments.len() as i64
    }
}

struct EdgePoints<'a> {
    grid: &'a GridSpec,
    values: &'a [f64],
    map: HashMap<(usize, usize), usize>,
    vertices: Vec<[f64; 2]>,
}

impl EdgePoints<'_> {
    fn get(&mut self, a: [usize; 2], b: [usize; 2]) -> usize {
        let la = self.grid.node_linear(&a);
        let lb = self.grid.node_linear(&b);
        let key = (la.min(lb), la.max(lb));
        if let Some(&v) = self.map.get(&key) {
            return v;
        }
        let pa = self.grid.node_point(&a);
        let pb = self.grid.node_point(&b);
        let (fa, fb) = (self.values[la], self.values[lb]);
        let t = (fa / (fa - fb)).clamp(0.0, 1.0);
        let id = self.vertices.len();
        self.vertices.push([pa[0] + t * (pb[0] - pa[0]), pa[1] + t * (pb[1] - pa[1])]);
        self.map.insert(key, id);
        id
    }
}

/// Traces `{q = level}` on `grid`. Saddle cells are resolved by the sign of
/// `q − level` at the cell center: when the center lies on the same side as
/// the lower-left corner, that diagonal is joined.
pub fn marching_squares(q: &Polynomial, level: &Rational, grid: &GridSpec) -> Result<CurveComplex, TopologyError> {
    if grid.dim() != 2 {
        return Err(TopologyError::DimensionMismatch {
            expected: 2,
            got: grid.dim(),
        });
    }
    let signs = classify_nodes(q, level, grid)?;
    let shifted = q - &Polynomial::constant(q.vars().clone(), signs.level.clone());
    let ip = IntervalPoly::new(&shifted);
    let mut pts = EdgePoints {
        grid,
        values: &signs.values,
        map: HashMap::new(),
        vertices: Vec::new(),
    };
    let mut segments = Vec::new();
    let (nx, ny) = (grid.resolution()[0], grid.resolution()[1]);
    for j in 0..ny {
        for i in 0..nx {
            let c = [[i, j], [i + 1, j], [i + 1, j + 1], [i, j + 1]];
            let s: Vec<bool> = c.iter().map(|n| signs.above[grid.node_linear(n)]).collect();
            let crossing: Vec<usize> = (0..4).filter(|&e| s[e] != s[(e + 1) % 4]).collect();
            match crossing.len() {
                0 => {}
                2 => {
                    let a = pts.get(c[crossing[0]], c[(crossing[0] + 1) % 4]);
                    let b = pts.get(c[crossing[1]], c[(crossing[1] + 1) % 4]);
                    segments.push([a, b]);
                }
                _ => {
                    let center = [
                        0.5 * (grid.coord(0, i) + grid.coord(0, i + 1)),
                        0.5 * (grid.coord(1, j) + grid.coord(1, j + 1)),
                    ];
                    let sc = exact_sign(&shifted, &ip, &center) >= 0;
                    let e: Vec<usize> = (0..4).map(|k| pts.get(c[k], c[(k + 1) % 4])).collect();
                    if sc == s[0] {
                        segments.push([e[0], e[1]]);
                        segments.push([e[2], e[3]]);
                    } else {
                        segments.push([e[3], e[0]]);
                        segments.push([e[1], e[2]]);
                    }
                }
            }
        }
    }
    let vertices = pts.vertices;
    let mut uf = UnionFind::new(vertices.len());
    let mut degree = vec![0usize; vertices.len()];
    for &[a, b] in &segments {
        uf.union(a, b);
        degree[a] += 1;
        degree[b] += 1;
    }
    let (vertex_component, ncomp) = uf.labels();
    let mut components = vec![
        CurveComponent {
            vertices: 0,
            segments: 0,
            closed: true,
        };
        ncomp
    ];
    for (v, &c) in vertex_component.iter().enumerate() {
        components[c].vertices += 1;
        components[c].closed &= degree[v] == 2;
    }
    for &[a, _] in &segments {
        components[vertex_component[a]].segments += 1;
    }
    Ok(CurveComplex {
        vertices,
        segments,
        vertex_component,
        components,
        level_shift: signs.shift.map(|s| s.to_string()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::IntervalBox;
    use crate::poly::{int, parse_polynomial, variables};

    fn curve(text: &str, half: f64, n: usize) -> CurveComplex {
        let v = variables(&["x", "y"]);
        let q = parse_polynomial(text, &v).unwrap();
        let g = GridSpec::uniform(IntervalBox::cube(2, -half, half), n).unwrap();
        marching_squares(&q, &int(0), &g).unwrap()
    }

    #[test]
    fn quartic_oval_is_one_closed_curve() {
        let c = curve("x^4 + y^4 - 1", 2.0, 128);
        assert_eq!(c.num_components(), 1);
        assert!(c.all_closed());
        assert_eq!(c.euler_characteristic(), 0);
    }

    #[test]
    fn circle_and_concentric_circles() {
        let c = curve("x^2 + y^2 - 1", 2.0, 64);
        assert_eq!(c.num_components(), 1);
        assert!(c.all_closed());
        let c = curve("(x^2 + y^2 - 1)*(x^2 + y^2 - 4)", 3.0, 128);
        assert_eq!(c.num_components(), 2);
        assert!(c.all_closed());
    }

    #[test]
    fn saddle_uses_center() {
        // Hyperbola branches x*y = 1/100 near the origin pass through saddle cells.
        let c = curve("x*y - 1/100", 1.0, 8);
        assert_eq!(c.num_components(), 2);
        assert!(!c.all_closed());
    }
}
