//! Isosurfaces of trivariate polynomials.
//!
//! Each grid cube is split into six tetrahedra sharing the main diagonal
//! (Kuhn triangulation). The split is compatible across cube faces, so the
//! extracted surface is a closed PL manifold whenever no node lies on the
//! level and the level set stays inside the window.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use super::grid::{classify_nodes, GridSpec};
use super::{TopologyError, UnionFind};
use crate::interval::IntervalPoly;
use crate::poly::{Polynomial, Rational};

const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentStats {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub chi: i64,
    /// `(2 − χ)/2` for closed, consistently oriented components.
    pub genus: Option<i64>,
    pub closed: bool,
    pub oriented: bool,
}

/// Triangle mesh with normals from `∇q` and per-vertex component labels.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SurfaceMesh {
    pub vertices: Vec<[f64; 3]>,
    pub normals: Vec<[f64; 3]>,
    pub triangles: Vec<[usize; 3]>,
    pub vertex_component: Vec<usize>,
    /// Level shift applied for degenerate nodes, as an exact rational string.
    pub level_shift: Option<String>,
}

fn edge_key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl SurfaceMesh {
    pub fn num_components(&self) -> usize {
        self.vertex_component.iter().max().map_or(0, |m| m + 1)
    }

    fn edge_uses(&self) -> HashMap<(usize, usize), (u32, i32)> {
        let mut uses: HashMap<(usize, usize), (u32, i32)> = HashMap::new();
        for t in &self.triangles {
            for k in 0..3 {
                let (a, b) = (t[k], t[(k + 1) % 3]);
                let e = uses.entry(edge_key(a, b)).or_default();
                e.0 += 1;
                e.1 += if a < b { 1 } else { -1 };
            }
        }
        uses
    }

    /// `V − E + F` of the whole mesh.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edge_uses().len() as i64 + self.triangles.len() as i64
    }

    /// Every edge is shared by exactly two triangles.
    pub fn is_closed(&self) -> bool {
        self.edge_uses().values().all(|&(n, _)| n == 2)
    }

    pub fn component_stats(&self) -> Vec<ComponentStats> {
        let n = self.num_components();
        let mut stats = vec![
            ComponentStats {
                vertices: 0,
                edges: 0,
                faces: 0,
                chi: 0,
                genus: None,
                closed: true,
                oriented: true,
            };
            n
        ];
        for &c in &self.vertex_component {
            stats[c].vertices += 1;
        }
        for t in &self.triangles {
            stats[self.vertex_component[t[0]]].faces += 1;
        }
        let mut uses: Vec<_> = self.edge_uses().into_iter().collect();
        uses.sort_unstable_by_key(|&(k, _)| k);
        for ((a, _), (count, balance)) in uses {
            let s = &mut stats[self.vertex_component[a]];
            s.edges += 1;
            s.closed &= count == 2;
            s.oriented &= balance == 0;
        }
        for s in &mut stats {
            s.chi = s.vertices as i64 - s.edges as i64 + s.faces as i64;
            s.genus = (s.closed && s.oriented && s.chi % 2 == 0).then_some((2 - s.chi) / 2);
        }
        stats
    }

    /// Wavefront OBJ with `v`, `vn` and `f` records.
    pub fn write_obj<W: Write>(&self, mut w: W) -> io::Result<()> {
        if self.triangles.is_empty() {
            return Err(io::Error::new(io::ErrorKind::InvalidInput, "mesh is empty"));
        }
        let mut buf = String::new();
        for v in &self.vertices {
            let _ = writeln!(buf, "v {} {} {}", fmt_g9(v[0]), fmt_g9(v[1]), fmt_g9(v[2]));
        }
        for n in &self.normals {
            let _ = writeln!(buf, "vn {} {} {}", fmt_g9(n[0]), fmt_g9(n[1]), fmt_g9(n[2]));
        }
        for t in &self.triangles {
            let _ = writeln!(buf, "f {0}//{0} {1}//{1} {2}//{2}", t[0] + 1, t[1] + 1, t[2] + 1);
        }
        w.write_all(buf.as_bytes())
    }
}

/// `%.9g`-style formatting.
pub fn fmt_g9(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.8e}");
    let (mant, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if (-5..9).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        let m = if mant.contains('.') {
            mant.trim_end_matches('0').trim_end_matches('.')
        } else {
            mant
        };
        format!("{m}e{exp}")
    }
}

fn det3(a: [i32; 3], b: [i32; 3], c: [i32; 3]) -> i32 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])
}

/// Sign of `det[v1 − v0, v2 − v0, v3 − v0]` for integer corner offsets.
fn orientation(v: [[i32; 3]; 4]) -> i32 {
    let d = |i: usize| [v[i][0] - v[0][0], v[i][1] - v[0][1], v[i][2] - v[0][2]];
    det3(d(1), d(2), d(3)).signum()
}

struct Builder<'a> {
    grid: &'a GridSpec,
    values: &'a [f64],
    map: HashMap<(usize, usize), usize>,
    vertices: Vec<[f64; 3]>,
    triangles: Vec<[usize; 3]>,
}

impl Builder<'_> {
    fn point(&mut self, a: usize, b: usize) -> usize {
        let key = edge_key(a, b);
        if let Some(&v) = self.map.get(&key) {
            return v;
        }
        let pa = self.grid.node_point(&self.grid.node_index(a));
        let pb = self.grid.node_point(&self.grid.node_index(b));
        let (fa, fb) = (self.values[a], self.values[b]);
        let t = (fa / (fa - fb)).clamp(0.0, 1.0);
        let id = self.vertices.len();
        self.vertices
            .push([0, 1, 2].map(|k| pa[k] + t * (pb[k] - pa[k])));
        self.map.insert(key, id);
        id
    }

    /// Emits the piece of surface inside one tetrahedron, oriented so that
    /// normals point toward `q > level`.
    fn tetra(&mut self, nodes: [usize; 4], offs: [[i32; 3]; 4], above: [bool; 4]) {
        let pos: Vec<usize> = (0..4).filter(|&i| above[i]).collect();
        let neg: Vec<usize> = (0..4).filter(|&i| !above[i]).collect();
        let reorder = |order: [usize; 4]| orientation(order.map(|i| offs[i]));
        match pos.len() {
            1 | 3 => {
                let (apex, base) = if pos.len() == 1 { (pos[0], &neg) } else { (neg[0], &pos) };
                let s = reorder([apex, base[0], base[1], base[2]]);
                let e = [0, 1, 2].map(|k| self.point(nodes[apex], nodes[base[k]]));
                // For positively ordered (apex, b0, b1, b2) the triangle
                // (e0, e1, e2) faces away from the apex.
                let away_from_apex = s > 0;
                let want_away = pos.len() == 3;
                if away_from_apex == want_away {
                    self.triangles.push([e[0], e[1], e[2]]);
                } else {
                    self.triangles.push([e[0], e[2], e[1]]);
                }
            }
            2 => {
                let (p1, p2, n1, n2) = (pos[0], pos[1], neg[0], neg[1]);
                let s = reorder([p1, p2, n1, n2]);
                let a = self.point(nodes[p1], nodes[n1]);
                let b = self.point(nodes[p1], nodes[n2]);
                let c = self.point(nodes[p2], nodes[n2]);
                let d = self.point(nodes[p2], nodes[n1]);
                // For positively ordered (p1, p2, n1, n2) the cycle (a, b, c, d)
                // faces the negative side.
                if s > 0 {
                    self.triangles.push([a, d, c]);
                    self.triangles.push([a, c, b]);
                } else {
                    self.triangles.push([a, b, c]);
                    self.triangles.push([a, c, d]);
                }
            }
            _ => {}
        }
    }
}

/// Extracts `{q = level}` on a 3-dimensional grid.
pub fn marching_cubes(q: &Polynomial, level: &Rational, grid: &GridSpec) -> Result<SurfaceMesh, TopologyError> {
    if grid.dim() != 3 {
        return Err(TopologyError::DimensionMismatch {
            expected: 3,
            got: grid.dim(),
        });
    }
    let signs = classify_nodes(q, level, grid)?;
    let mut b = Builder {
        grid,
        values: &signs.values,
        map: HashMap::new(),
        vertices: Vec::new(),
        triangles: Vec::new(),
    };
    let r = grid.resolution();
    for k in 0..r[2] {
        for j in 0..r[1] {
            for i in 0..r[0] {
                let corner = |o: [i32; 3]| grid.node_linear(&[i + o[0] as usize, j + o[1] as usize, k + o[2] as usize]);
                let first = signs.above[corner([0, 0, 0])];
                let mixed = (0..8).any(|m| signs.above[corner([m & 1, (m >> 1) & 1, (m >> 2) & 1])] != first);
                if !mixed {
                    continue;
                }
                for perm in PERMUTATIONS {
                    let mut offs = [[0i32; 3]; 4];
                    for step in 0..3 {
                        offs[step + 1] = offs[step];
                        offs[step + 1][perm[step]] = 1;
                    }
                    let nodes = offs.map(corner);
                    let above = nodes.map(|n| signs.above[n]);
                    b.tetra(nodes, offs, above);
                }
            }
        }
    }
    let Builder {
        vertices, triangles, ..
    } = b;
    let mut uf = UnionFind::new(vertices.len());
    for t in &triangles {
        uf.union(t[0], t[1]);
        uf.union(t[0], t[2]);
    }
    let (vertex_component, _) = uf.labels();
    let grad: Vec<IntervalPoly> = q.gradient().iter().map(IntervalPoly::new).collect();
    let normals = vertices
        .iter()
        .map(|v| {
            let g = [0, 1, 2].map(|k| grad[k].eval_f64(v));
            let n = (g[0] * g[0] + g[1] * g[1] + g[2] * g[2]).sqrt();
            if n > 0.0 {
                g.map(|c| c / n)
            } else {
                [0.0; 3]
            }
        })
        .collect();
    Ok(SurfaceMesh {
        vertices,
        normals,
        triangles,
        vertex_component,
        level_shift: signs.shift.map(|s| s.to_string()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::IntervalBox;
    use crate::poly::{int, parse_polynomial, variables};

    fn mesh(text: &str, n: usize) -> SurfaceMesh {
        let v = variables(&["x", "y", "z"]);
        let q = parse_polynomial(text, &v).unwrap();
        let g = GridSpec::uniform(IntervalBox::cube(3, -2.0, 2.0), n).unwrap();
        marching_cubes(&q, &int(0), &g).unwrap()
    }

    #[test]
    fn sphere_has_genus_zero() {
        let m = mesh("x^2 + y^2 + z^2 - 1", 32);
        let st = m.component_stats();
        assert_eq!(st.len(), 1);
        assert_eq!(st[0].chi, 2);
        assert_eq!(st[0].genus, Some(0));
        assert!(m.is_closed());
    }

    #[test]
    fn normals_agree_with_triangle_orientation() {
        let m = mesh("x^2 + y^2 + z^2 - 1", 16);
        for t in &m.triangles {
            let p = t.map(|i| m.vertices[i]);
            let u = [0, 1, 2].map(|k| p[1][k] - p[0][k]);
            let w = [0, 1, 2].map(|k| p[2][k] - p[0][k]);
            let n = [u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0]];
            let c = [0, 1, 2].map(|k| (p[0][k] + p[1][k] + p[2][k]) / 3.0);
            // Outward normal points toward q > 0.
            assert!(n[0] * c[0] + n[1] * c[1] + n[2] * c[2] > 0.0);
        }
    }

    #[test]
    fn torus_of_revolution() {
        let m = mesh("(x^2 + y^2 + z^2 + 3/4)^2 - 4*(x^2 + y^2)", 48);
        let st = m.component_stats();
        assert_eq!(st.len(), 1);
        assert_eq!(st[0].chi, 0);
        assert_eq!(st[0].genus, Some(1));
    }

    #[test]
    fn obj_format() {
        assert_eq!(fmt_g9(1.0), "1");
        assert_eq!(fmt_g9(-0.125), "-0.125");
        assert_eq!(fmt_g9(1.0 / 3.0), "0.333333333");
        assert_eq!(fmt_g9(1.5e-7), "1.5e-7");
        let m = mesh("x^2 + y^2 + z^2 - 1", 8);
        let mut out = Vec::new();
        m.write_obj(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), m.triangles.len());
        let empty = mesh("x^2 + y^2 + z^2 + 1", 8);
        assert!(empty.write_obj(Vec::new()).is_err());
    }
}
