//! Level-set topology: curves, surface meshes and cubical homology.

mod cubical;
mod curves;
mod grid;
mod mesh;

pub use cubical::{build_shell_complex, build_sublevel_complex, default_shell_halfwidth, BettiProfile, CubicalComplex};
pub use curves::{marching_squares, CurveComplex, CurveComponent};
pub use grid::{classify_nodes, GridSpec, NodeSigns, MIN_RESOLUTION};
pub use mesh::{fmt_g9, marching_cubes, ComponentStats, SurfaceMesh};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TopologyError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("resolution {0} is below the minimum of 8 cells per axis")]
    ResolutionTooSmall(usize),
    #[error("window has an empty or unbounded side")]
    DegenerateWindow,
    #[error("grid nodes keep landing on the level after repeated shifts")]
    DegenerateLevel,
    #[error("cubical complexes are limited to 4 dimensions, got {0}")]
    DimensionTooLarge(usize),
    #[error("complex is not closed under faces")]
    NotClosed,
    #[error("boundary of a boundary is nonzero")]
    BoundaryNotNilpotent,
    #[error("Euler characteristic mismatch: cells give {cells}, Betti numbers give {betti}")]
    EulerMismatch { cells: i64, betti: i64 },
}

/// Disjoint-set forest with path halving and union by size.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
    }

    /// Dense labels numbered by first occurrence, and the label count.
    pub(crate) fn labels(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut map = vec![usize::MAX; n];
        let mut out = Vec::with_capacity(n);
        let mut next = 0;
        for x in 0..n {
            let r = self.find(x);
            if map[r] == usize::MAX {
                map[r] = next;
                next += 1;
            }
            out.push(map[r]);
        }
        (out, next)
    }
}
