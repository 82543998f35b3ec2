//! Cubical complexes on a grid and their mod-2 homology.
//!
//! Cells are addressed in doubled coordinates: along each axis an even
//! coordinate `2i` is the node `i` and an odd coordinate `2i + 1` is the
//! interval between nodes `i` and `i + 1`. A cell's dimension is its number
//! of odd coordinates.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::grid::GridSpec;
use super::TopologyError;
use crate::interval::{Enclosure, Interval, IntervalBox};
use crate::par::map_range;
use crate::poly::{Polynomial, Rational};

/// Bisection depth used to sharpen per-cell range enclosures.
const REFINE_DEPTH: u32 = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiProfile {
    /// `b₀, …, b_k` over GF(2).
    pub betti: Vec<usize>,
    /// Number of cells in each dimension.
    pub cell_counts: Vec<usize>,
    pub euler: i64,
}

/// Subcomplex of the cubical structure of a grid, closed under faces.
#[derive(Clone, Debug)]
pub struct CubicalComplex {
    /// Cells per axis.
    resolution: Vec<usize>,
    /// Doubled extents `2·resolution + 1`.
    extent: Vec<usize>,
    present: Vec<bool>,
}

impl CubicalComplex {
    pub fn empty(resolution: &[usize]) -> Self {
        let extent: Vec<usize> = resolution.iter().map(|r| 2 * r + 1).collect();
        let size = extent.iter().product();
        Self {
            resolution: resolution.to_vec(),
            extent,
            present: vec![false; size],
        }
    }

    pub fn dim(&self) -> usize {
        self.resolution.len()
    }

    fn linear(&self, c: &[usize]) -> usize {
        let mut lin = 0;
        for a in (0..self.dim()).rev() {
            lin = lin * self.extent[a] + c[a];
        }
        lin
    }

    fn coords(&self, mut lin: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.dim());
        for &e in &self.extent {
            out.push(lin % e);
            lin /= e;
        }
        out
    }

    fn strides(&self) -> Vec<usize> {
        let mut s = vec![1; self.dim()];
        for a in 1..self.dim() {
            s[a] = s[a - 1] * self.extent[a - 1];
        }
        s
    }

    fn cell_dim(&self, lin: usize) -> usize {
        self.coords(lin).iter().filter(|&&c| c % 2 == 1).count()
    }

    /// Adds the top cell with lowest node `idx` and all its faces.
    pub fn insert_top_cell(&mut self, idx: &[usize]) {
        let k = self.dim();
        let base: Vec<usize> = idx.iter().map(|&i| 2 * i).collect();
        for m in 0..3usize.pow(k as u32) {
            let mut c = base.clone();
            let mut code = m;
            for x in c.iter_mut() {
                *x += code % 3;
                code /= 3;
            }
            let lin = self.linear(&c);
            self.present[lin] = true;
        }
    }

    /// Adds a single vertex.
    pub fn insert_vertex(&mut self, idx: &[usize]) {
        let c: Vec<usize> = idx.iter().map(|&i| 2 * i).collect();
        let lin = self.linear(&c);
        self.present[lin] = true;
    }

    pub fn is_empty(&self) -> bool {
        !self.present.iter().any(|&p| p)
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.dim() + 1];
        for (lin, &p) in self.present.iter().enumerate() {
            if p {
                counts[self.cell_dim(lin)] += 1;
            }
        }
        counts
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating(&self.cell_counts())
    }

    /// Faces of codimension one, as linear indices (present or not).
    fn faces(&self, lin: usize, coords: &[usize], strides: &[usize], out: &mut Vec<usize>) {
        out.clear();
        for a in 0..coords.len() {
            if coords[a] % 2 == 1 {
                out.push(lin - strides[a]);
                out.push(lin + strides[a]);
            }
        }
    }

    fn cofaces(&self, lin: usize, coords: &[usize], strides: &[usize], out: &mut Vec<usize>) {
        out.clear();
        for a in 0..coords.len() {
            if coords[a] % 2 == 0 {
                if coords[a] > 0 {
                    out.push(lin - strides[a]);
                }
                if coords[a] + 1 < self.extent[a] {
                    out.push(lin + strides[a]);
                }
            }
        }
    }

    /// Checks closure under faces and `∂∘∂ = 0` over GF(2) cell by cell.
    pub fn check_chain_complex(&self) -> Result<(), TopologyError> {
        let strides = self.strides();
        let mut f1 = Vec::new();
        let mut f2 = Vec::new();
        let mut acc: Vec<usize> = Vec::new();
        for (lin, &p) in self.present.iter().enumerate() {
            if !p {
                continue;
            }
            let c = self.coords(lin);
            self.faces(lin, &c, &strides, &mut f1);
            acc.clear();
            for &f in &f1 {
                if !self.present[f] {
                    return Err(TopologyError::NotClosed);
                }
                let fc = self.coords(f);
                self.faces(f, &fc, &strides, &mut f2);
                acc.extend_from_slice(&f2);
            }
            acc.sort_unstable();
            let mut i = 0;
            while i < acc.len() {
                let mut j = i;
                while j < acc.len() && acc[j] == acc[i] {
                    j += 1;
                }
                if (j - i) % 2 == 1 {
                    return Err(TopologyError::BoundaryNotNilpotent);
                }
                i = j;
            }
        }
        Ok(())
    }

    /// Removes free face pairs until none remain; preserves homotopy type.
    fn collapse(&self) -> Vec<bool> {
        let mut present = self.present.clone();
        let strides = self.strides();
        let top = self.dim();
        let mut queue: VecDeque<usize> = (0..present.len())
            .filter(|&l| present[l] && self.cell_dim(l) < top)
            .collect();
        let mut buf = Vec::new();
        let mut faces = Vec::new();
        while let Some(s) = queue.pop_front() {
            if !present[s] {
                continue;
            }
            let c = self.coords(s);
            self.cofaces(s, &c, &strides, &mut buf);
            let mut only = None;
            let mut count = 0;
            for &t in &buf {
                if present[t] {
                    count += 1;
                    only = Some(t);
                }
            }
            if count != 1 {
                continue;
            }
            let t = only.expect("one coface");
            present[s] = false;
            present[t] = false;
            let tc = self.coords(t);
            self.faces(t, &tc, &strides, &mut faces);
            for &f in &faces {
                if present[f] {
                    queue.push_back(f);
                }
            }
            self.faces(s, &c, &strides, &mut faces);
            for &f in &faces {
                if present[f] {
                    queue.push_back(f);
                }
            }
        }
        present
    }

    /// Betti numbers over GF(2): elementary collapses followed by sparse
    /// column reduction of the remaining boundary matrices.
    pub fn betti_mod2(&self) -> Result<BettiProfile, TopologyError> {
        self.check_chain_complex()?;
        let k = self.dim();
        let cell_counts = self.cell_counts();
        let euler = alternating(&cell_counts);
        let reduced = self.collapse();
        let strides = self.strides();
        let mut index = vec![u32::MAX; reduced.len()];
        let mut by_dim: Vec<Vec<usize>> = vec![Vec::new(); k + 1];
        for (lin, &p) in reduced.iter().enumerate() {
            if p {
                let d = self.cell_dim(lin);
                index[lin] = by_dim[d].len() as u32;
                by_dim[d].push(lin);
            }
        }
        let mut ranks = vec![0usize; k + 2];
        let mut cleared: Vec<Vec<bool>> = by_dim.iter().map(|v| vec![false; v.len()]).collect();
        let mut faces = Vec::new();
        for d in (1..=k).rev() {
            let mut pivot_owner: Vec<u32> = vec![u32::MAX; by_dim[d - 1].len()];
            let mut reduced_cols: Vec<Vec<u32>> = Vec::new();
            let mut rank = 0;
            for (ci, &lin) in by_dim[d].iter().enumerate() {
                if cleared[d][ci] {
                    continue;
                }
                let c = self.coords(lin);
                self.faces(lin, &c, &strides, &mut faces);
                let mut col: Vec<u32> = faces
                    .iter()
                    .filter(|&&f| reduced[f])
                    .map(|&f| index[f])
                    .collect();
                col.sort_unstable();
                while let Some(&low) = col.last() {
                    let owner = pivot_owner[low as usize];
                    if owner == u32::MAX {
                        break;
                    }
                    col = xor_sorted(&col, &reduced_cols[owner as usize]);
                }
                if let Some(&low) = col.last() {
                    pivot_owner[low as usize] = reduced_cols.len() as u32;
                    reduced_cols.push(col);
                    cleared[d - 1][low as usize] = true;
                    rank += 1;
                }
            }
            ranks[d] = rank;
        }
        let betti: Vec<usize> = (0..=k)
            .map(|d| by_dim[d].len() - ranks[d] - ranks[d + 1])
            .collect();
        if alternating(&betti) != euler {
            return Err(TopologyError::EulerMismatch {
                cells: euler,
                betti: alternating(&betti),
            });
        }
        Ok(BettiProfile {
            betti,
            cell_counts,
            euler,
        })
    }
}

fn alternating(v: &[usize]) -> i64 {
    v.iter()
        .enumerate()
        .map(|(i, &n)| if i % 2 == 0 { n as i64 } else { -(n as i64) })
        .sum()
}

fn xor_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Whether `q` takes some value in `[lo, hi]` on `b`; undecided boxes at the
/// depth limit count as meeting the band.
fn meets_band(enc: &Enclosure, b: &IntervalBox, lo: f64, hi: f64, depth: u32) -> bool {
    let r = enc.range(b.intervals());
    if r.hi() < lo || r.lo() > hi {
        return false;
    }
    if r.lo() >= lo && r.hi() <= hi {
        return true;
    }
    let m: Vec<Interval> = b.midpoint().iter().map(|&x| Interval::point(x)).collect();
    let v = enc.natural(&m);
    if v.lo() >= lo && v.hi() <= hi {
        return true;
    }
    if depth == 0 {
        return true;
    }
    let (l, r) = b.bisect();
    meets_band(enc, &l, lo, hi, depth - 1) || meets_band(enc, &r, lo, hi, depth - 1)
}

/// Whether `q ≤ level` provably holds on all of `b`.
fn below(enc: &Enclosure, b: &IntervalBox, level: f64, depth: u32) -> bool {
    let r = enc.range(b.intervals());
    if r.hi() <= level {
        return true;
    }
    if r.lo() > level || depth == 0 {
        return false;
    }
    let m: Vec<Interval> = b.midpoint().iter().map(|&x| Interval::point(x)).collect();
    if enc.natural(&m).lo() > level {
        return false;
    }
    let (l, r) = b.bisect();
    below(enc, &l, level, depth - 1) && below(enc, &r, level, depth - 1)
}

fn check_dims(q: &Polynomial, grid: &GridSpec) -> Result<(), TopologyError> {
    if q.nvars() != grid.dim() {
        return Err(TopologyError::DimensionMismatch {
            expected: grid.dim(),
            got: q.nvars(),
        });
    }
    if grid.dim() > 4 {
        return Err(TopologyError::DimensionTooLarge(grid.dim()));
    }
    Ok(())
}

fn complex_from(grid: &GridSpec, keep: impl Fn(&IntervalBox) -> bool + Sync + Send) -> CubicalComplex {
    let flags = map_range(grid.num_cells(), |lin| keep(&grid.cell_box(&grid.cell_index(lin))));
    let mut c = CubicalComplex::empty(grid.resolution());
    for (lin, f) in flags.into_iter().enumerate() {
        if f {
            c.insert_top_cell(&grid.cell_index(lin));
        }
    }
    c
}

/// Closed top cells whose `q`-range meets `[level − δ, level + δ]`.
pub fn build_shell_complex(q: &Polynomial, level: &Rational, delta: &Rational, grid: &GridSpec) -> Result<CubicalComplex, TopologyError> {
    check_dims(q, grid)?;
    let enc = Enclosure::new(q);
    let lo = Interval::from_rational(&(level - delta)).lo();
    let hi = Interval::from_rational(&(level + delta)).hi();
    Ok(complex_from(grid, |b| meets_band(&enc, b, lo, hi, REFINE_DEPTH)))
}

/// Closed top cells on which `q ≤ level` is proved.
pub fn build_sublevel_complex(q: &Polynomial, level: &Rational, grid: &GridSpec) -> Result<CubicalComplex, TopologyError> {
    check_dims(q, grid)?;
    let enc = Enclosure::new(q);
    let lv = Interval::from_rational(level).lo();
    Ok(complex_from(grid, |b| below(&enc, b, lv, REFINE_DEPTH)))
}

/// Default shell half-width: half the gap from `level` to the nearest
/// critical value enclosure, capped at two cell diagonals of `q`'s variation.
pub fn default_shell_halfwidth(gap: f64, grid: &GridSpec, q: &Polynomial) -> f64 {
    let enc = Enclosure::new(q);
    let diag = grid.cell_diagonal();
    let slope = enc
        .gradient()
        .iter()
        .map(|g| g.eval(grid.window().intervals()).mag())
        .fold(0.0, f64::max);
    let cap = 2.0 * diag * slope.max(f64::MIN_POSITIVE);
    (gap / 2.0).min(cap)
}
