//! Deterministic branch-and-prune driver.
//!
//! The search first expands the domain breadth-first until the frontier has
//! [`FRONTIER_TARGET`] boxes, then explores each frontier box depth-first.
//! Frontier boxes are handed to workers in fixed-size chunks and results are
//! concatenated in frontier order, so the outcome (including the examined
//! count at budget exhaustion) does not depend on the number of threads.

use serde::{Deserialize, Serialize};

use super::IntervalBox;
use crate::par::map_ordered;

const FRONTIER_TARGET: usize = 64;
const CHUNK: usize = 16;

/// Search limits.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Budget {
    pub max_boxes: u64,
    pub min_width: f64,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_boxes: 10_000_000,
            min_width: 1e-6,
        }
    }
}

/// What to do with a box after pruning. The classifier may shrink the box in
/// place before answering.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Action {
    /// Provably contains nothing of interest.
    Discard,
    /// Stop refining; report as residual.
    Keep,
    /// Undecided; bisect unless already at the minimum width.
    Split,
}

#[derive(Clone, Debug, Default)]
pub struct SearchOutcome {
    pub examined: u64,
    /// Boxes that were neither discarded nor refined further.
    pub residual: Vec<IntervalBox>,
    /// Boxes never examined because the search stopped early.
    pub unexplored: Vec<IntervalBox>,
    /// The box budget ran out.
    pub exhausted: bool,
    /// The residual limit was reached.
    pub stopped_early: bool,
}

impl SearchOutcome {
    pub fn complete(&self) -> bool {
        !self.exhausted && !self.stopped_early
    }
}

struct SubtreeResult {
    examined: u64,
    residual: Vec<IntervalBox>,
    leftover: Vec<IntervalBox>,
    hit_cap: bool,
}

fn step<F>(mut b: IntervalBox, min_width: f64, classify: &F, residual: &mut Vec<IntervalBox>) -> Option<(IntervalBox, IntervalBox)>
where
    F: Fn(&mut IntervalBox) -> Action,
{
    match classify(&mut b) {
        Action::Discard => None,
        Action::Keep => {
            residual.push(b);
            None
        }
        Action::Split => {
            if b.max_width() <= min_width {
                residual.push(b);
                None
            } else {
                Some(b.bisect())
            }
        }
    }
}

fn dfs<F>(root: IntervalBox, cap: u64, residual_limit: usize, min_width: f64, classify: &F) -> SubtreeResult
where
    F: Fn(&mut IntervalBox) -> Action,
{
    let mut stack = vec![root];
    let mut residual = Vec::new();
    let mut examined = 0u64;
    while let Some(b) = stack.pop() {
        if examined >= cap || residual.len() >= residual_limit {
            stack.push(b);
            return SubtreeResult {
                examined,
                residual,
                hit_cap: examined >= cap,
                leftover: stack,
            };
        }
        examined += 1;
        if let Some((l, r)) = step(b, min_width, classify, &mut residual) {
            stack.push(r);
            stack.push(l);
        }
    }
    SubtreeResult {
        examined,
        residual,
        leftover: Vec::new(),
        hit_cap: false,
    }
}

/// Runs branch-and-prune from `roots`. `residual_limit` stops the search once
/// that many residual boxes have been collected.
pub fn branch_and_prune<F>(roots: Vec<IntervalBox>, budget: &Budget, residual_limit: Option<usize>, classify: F) -> SearchOutcome
where
    F: Fn(&mut IntervalBox) -> Action + Sync + Send,
{
    let limit = residual_limit.unwrap_or(usize::MAX);
    let mut out = SearchOutcome::default();
    let mut frontier = roots;

    while !frontier.is_empty() && frontier.len() < FRONTIER_TARGET {
        if out.examined + frontier.len() as u64 > budget.max_boxes {
            out.exhausted = true;
            out.unexplored = frontier;
            return out;
        }
        out.examined += frontier.len() as u64;
        let results = map_ordered(frontier, |b| {
            let mut res = Vec::new();
            let kids = step(b, budget.min_width, &classify, &mut res);
            (res, kids)
        });
        frontier = Vec::new();
        for (res, kids) in results {
            out.residual.extend(res);
            if let Some((l, r)) = kids {
                frontier.push(l);
                frontier.push(r);
            }
        }
        if out.residual.len() >= limit {
            out.stopped_early = true;
            out.unexplored = frontier;
            return out;
        }
    }

    let mut pending = frontier.into_iter();
    loop {
        let chunk: Vec<IntervalBox> = pending.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        let cap = budget.max_boxes.saturating_sub(out.examined);
        let room = limit.saturating_sub(out.residual.len());
        let results = map_ordered(chunk, |b| dfs(b, cap, room, budget.min_width, &classify));
        let mut hit_cap = false;
        for r in results {
            out.examined += r.examined;
            out.residual.extend(r.residual);
            out.unexplored.extend(r.leftover);
            hit_cap |= r.hit_cap;
        }
        if hit_cap || out.examined > budget.max_boxes {
            out.exhausted = true;
        } else if out.residual.len() >= limit {
            out.stopped_early = true;
        } else {
            continue;
        }
        out.unexplored.extend(pending);
        break;
    }
    out.residual.sort_by(|a, b| cmp_boxes(a, b));
    out.unexplored.sort_by(|a, b| cmp_boxes(a, b));
    out
}

fn cmp_boxes(a: &IntervalBox, b: &IntervalBox) -> std::cmp::Ordering {
    a.lex_key()
        .partial_cmp(&b.lex_key())
        .unwrap_or(std::cmp::Ordering::Equal)
}
