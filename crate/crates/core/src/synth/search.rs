//! Brute-force circuit synthesis by iterative deepening.
//!
//! All placed-gate sequences of length 0, 1, 2, … are enumerated in a fixed
//! lexicographic branch order until one lands within ε of the target, so the
//! returned g is the exact minimum for the gate set. Leaves are screened with
//! the Frobenius / max-entry bracket (max|entry| ≤ ‖·‖_op ≤ ‖·‖_F); the
//! certified eigensolver only runs on the rare leaves the bracket cannot
//! decide, and once on the final witness.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Range;
use num_bigint::BigUint;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use super::matrix::{opnorm_dist, CMatrix};
use super::{placement, right_apply_placed, Circuit, GateSet, Placement, PlacedGate, SynthError};

/// Search dimension cap: dense enumeration is only sensible for d^n ≤ 64.
pub const DEFAULT_SEARCH_DIM_CAP: usize = 64;
const DEFAULT_G_MAX_CAP: usize = 12;

/// Knobs for [`brute_force_cost`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthesisOptions {
    pub epsilon: f64,
    pub g_max: usize,
    /// Skip subtrees whose prefix product matches an already-seen matrix at
    /// the same depth (hash of entries rounded to 1e−9). Off by default; must
    /// not change the returned g.
    pub prune: bool,
}

impl SynthesisOptions {
    pub fn new(epsilon: f64, g_max: usize) -> Self {
        SynthesisOptions {
            epsilon,
            g_max,
            prune: false,
        }
    }
}

/// Outcome of the exhaustive search.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthesisResult {
    pub target_label: String,
    pub requested_epsilon: f64,
    /// ε actually used (ε = 0 is served as 1e−9; exactness lives in the
    /// certificate calculus, not in floating-point products).
    pub effective_epsilon: f64,
    pub found_g: Option<usize>,
    /// Present iff found; re-evaluating it reproduces `distance`.
    pub witness: Option<Circuit>,
    /// Certified operator-norm distance of the witness (or of the closest
    /// leaf seen, when nothing was found).
    pub distance: f64,
    /// Total sequences evaluated.
    pub explored: u64,
    /// Sequences evaluated per depth 0..=g.
    pub explored_per_depth: Vec<u64>,
}

/// One placed-gate choice in the fixed branch order (gate-major, then ordered
/// site pairs).
#[derive(Clone)]
struct Branch {
    placement: Placement,
    gate_t: CMatrix,
}

fn enumerate_branches(gs: &GateSet, n: usize, dim: usize) -> Vec<Branch> {
    let d = gs.d() as usize;
    let mut out = Vec::new();
    for gate in gs.gates() {
        let gate_t = gate.matrix().transpose();
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    continue;
                }
                out.push(Branch {
                    placement: placement(n, d, a, b, dim),
                    gate_t: gate_t.clone(),
                });
            }
        }
    }
    out
}

/// Number of placed sequences of length g over k gates on n sites with
/// ordered site pairs: (k·n·(n−1))^g.
pub fn sequence_count(k: usize, n: usize, g: usize) -> BigUint {
    BigUint::from(k * n * (n - 1)).pow(g as u32)
}

/// Result of exhausting one depth over a subset of first branches.
#[derive(Debug, Clone, PartialEq)]
pub struct DepthOutcome {
    /// First hit, keyed by the first-branch index it sits under (the search
    /// inside a subtree is depth-first in branch order).
    pub found: Option<(usize, Vec<usize>)>,
    /// Leaves evaluated.
    pub leaves: u64,
    /// Closest leaf by Frobenius distance: (distance, branch indices).
    pub best: Option<(f64, Vec<usize>)>,
}

struct DepthSearcher<'a> {
    target: &'a CMatrix,
    branches: &'a [Branch],
    epsilon: f64,
    d: usize,
    prune: bool,
    seen: BTreeSet<(usize, Vec<i64>)>,
    leaves: u64,
    best: Option<(f64, Vec<usize>)>,
    path: Vec<usize>,
}

impl<'a> DepthSearcher<'a> {
    fn quantize(m: &CMatrix) -> Vec<i64> {
        m.data()
            .iter()
            .flat_map(|z| {
                [
                    (z.re * 1e9).round() as i64,
                    (z.im * 1e9).round() as i64,
                ]
            })
            .collect()
    }

    /// Returns Some(branch path) on the first hit in DFS order.
    fn descend(&mut self, acc: &CMatrix, remaining: usize) -> Result<Option<Vec<usize>>, SynthError> {
        if remaining == 0 {
            self.leaves += 1;
            let (fro, maxabs) = acc.distance_screen(self.target);
            if self
                .best
                .as_ref()
                .is_none_or(|(best_fro, _)| fro < *best_fro)
            {
                self.best = Some((fro, self.path.clone()));
            }
            if fro <= self.epsilon {
                return Ok(Some(self.path.clone()));
            }
            if maxabs > self.epsilon {
                return Ok(None);
            }
            // bracket inconclusive: certify
            let dist = opnorm_dist(acc, self.target)?;
            if dist <= self.epsilon {
                return Ok(Some(self.path.clone()));
            }
            return Ok(None);
        }
        for (idx, branch) in self.branches.iter().enumerate() {
            let mut next = acc.clone();
            right_apply_placed(&mut next, &branch.gate_t, &branch.placement, self.d);
            if self.prune {
                let key = (remaining - 1, Self::quantize(&next));
                if !self.seen.insert(key) {
                    continue;
                }
            }
            self.path.push(idx);
            let hit = self.descend(&next, remaining - 1)?;
            self.path.pop();
            if hit.is_some() {
                return Ok(hit);
            }
        }
        Ok(None)
    }
}

/// Exhausts all sequences of exactly `depth` gates whose first branch lies in
/// `first_branches`. Pure in its arguments, so disjoint ranges merged in
/// branch order reproduce the full-range result exactly.
pub fn search_depth(
    target: &CMatrix,
    gs: &GateSet,
    n: usize,
    epsilon: f64,
    depth: usize,
    first_branches: Range<usize>,
    prune: bool,
) -> Result<DepthOutcome, SynthError> {
    let dim = target.dim();
    let d = gs.d() as usize;
    let branches = enumerate_branches(gs, n, dim);
    let mut searcher = DepthSearcher {
        target,
        branches: &branches,
        epsilon,
        d,
        prune,
        seen: BTreeSet::new(),
        leaves: 0,
        best: None,
        path: Vec::new(),
    };
    if depth == 0 {
        // the only length-0 sequence is the identity; owned by branch 0
        if first_branches.start == 0 {
            let acc = CMatrix::identity(dim);
            if let Some(path) = searcher.descend(&acc, 0)? {
                return Ok(DepthOutcome {
                    found: Some((0, path)),
                    leaves: searcher.leaves,
                    best: searcher.best,
                });
            }
            return Ok(DepthOutcome {
                found: None,
                leaves: searcher.leaves,
                best: searcher.best,
            });
        }
        return Ok(DepthOutcome {
            found: None,
            leaves: 0,
            best: None,
        });
    }
    let mut found = None;
    for first in first_branches {
        if first >= branches.len() {
            break;
        }
        let branch = &branches[first];
        let mut acc = CMatrix::identity(dim);
        right_apply_placed(&mut acc, &branch.gate_t, &branch.placement, d);
        if prune {
            let key = (depth - 1, DepthSearcher::quantize(&acc));
            if !searcher.seen.insert(key) {
                continue;
            }
        }
        searcher.path.clear();
        searcher.path.push(first);
        let hit = searcher.descend(&acc, depth - 1)?;
        searcher.path.pop();
        if let Some(path) = hit {
            found = Some((first, path));
            break;
        }
    }
    Ok(DepthOutcome {
        found,
        leaves: searcher.leaves,
        best: searcher.best,
    })
}

/// The fixed branch order as (gate label, ordered site pair), without
/// placement tables; used to reconstruct circuits from branch-index paths.
pub fn branch_specs(gs: &GateSet, n: usize) -> Vec<(String, (usize, usize))> {
    let mut out = Vec::new();
    for gate in gs.gates() {
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    out.push((gate.label().into(), (a, b)));
                }
            }
        }
    }
    out
}

/// Reconstructs the circuit a DFS branch-index path denotes.
pub fn path_to_circuit(path: &[usize], gs: &GateSet, n: usize) -> Result<Circuit, SynthError> {
    let specs = branch_specs(gs, n);
    let steps = path
        .iter()
        .map(|&i| {
            let (gate, sites) = specs[i].clone();
            PlacedGate { gate, sites }
        })
        .collect();
    Circuit::new(n, steps)
}

/// The exact circuit complexity C_ε(target, gs) for small instances, by
/// iterative deepening up to `g_max` gates.
pub fn brute_force_cost(
    target: &CMatrix,
    target_label: &str,
    gs: &GateSet,
    n: usize,
    opts: &SynthesisOptions,
) -> Result<SynthesisResult, SynthError> {
    let dim = target.dim();
    let mut check = 1usize;
    for _ in 0..n {
        check = check.saturating_mul(gs.d() as usize);
    }
    if check != dim {
        return Err(SynthError::DimensionMismatch {
            expected: check,
            got: dim,
        });
    }
    if dim > DEFAULT_SEARCH_DIM_CAP {
        return Err(SynthError::CapExceeded {
            dim: alloc::format!("{dim}"),
            cap: DEFAULT_SEARCH_DIM_CAP,
        });
    }
    if opts.g_max > DEFAULT_G_MAX_CAP {
        return Err(SynthError::CapExceeded {
            dim: alloc::format!("g_max {}", opts.g_max),
            cap: DEFAULT_G_MAX_CAP,
        });
    }
    if !(opts.epsilon >= 0.0 && opts.epsilon.is_finite()) {
        return Err(SynthError::BadParameter(alloc::format!(
            "ε must be finite and ≥ 0, got {}",
            opts.epsilon
        )));
    }
    let effective_epsilon = if opts.epsilon == 0.0 { 1e-9 } else { opts.epsilon };
    let branch_count = gs.k() * n * (n - 1);
    let mut explored_per_depth = Vec::new();
    let mut explored = 0u64;
    let mut best: Option<(f64, Vec<usize>)> = None;
    for depth in 0..=opts.g_max {
        let outcome = search_depth(
            target,
            gs,
            n,
            effective_epsilon,
            depth,
            0..branch_count.max(1),
            opts.prune,
        )?;
        explored += outcome.leaves;
        explored_per_depth.push(outcome.leaves);
        if let Some((fro, path)) = outcome.best {
            if best.as_ref().is_none_or(|(b, _)| fro < *b) {
                best = Some((fro, path));
            }
        }
        if let Some((_, path)) = outcome.found {
            let witness = path_to_circuit(&path, gs, n)?;
            let compiled = super::apply_circuit(&witness, gs, dim)?;
            let distance = opnorm_dist(&compiled, target)?;
            return Ok(SynthesisResult {
                target_label: target_label.into(),
                requested_epsilon: opts.epsilon,
                effective_epsilon,
                found_g: Some(depth),
                witness: Some(witness),
                distance,
                explored,
                explored_per_depth,
            });
        }
    }
    // nothing within g_max: certify the closest leaf for the report
    let distance = match &best {
        Some((_, path)) => {
            let closest = path_to_circuit(path, gs, n)?;
            let compiled = super::apply_circuit(&closest, gs, dim)?;
            opnorm_dist(&compiled, target)?
        }
        None => f64::INFINITY,
    };
    Ok(SynthesisResult {
        target_label: target_label.into(),
        requested_epsilon: opts.epsilon,
        effective_epsilon,
        found_g: None,
        witness: None,
        distance,
        explored,
        explored_per_depth,
    })
}

/// Gate-set-change overhead bound: c · C · ln(C/ε) circuits from a fixed
/// efficiently universal set suffice to 2ε-approximate anything that C gates
/// from the full two-qudit group ε-approximate.
pub fn sk_overhead(c_eps: u64, epsilon: f64, c: f64) -> Result<f64, SynthError> {
    if c_eps < 1 {
        return Err(SynthError::BadParameter(alloc::format!(
            "C_ε must be ≥ 1, got {c_eps}"
        )));
    }
    if epsilon <= 0.0 || c <= 0.0 || epsilon.is_nan() || c.is_nan() {
        return Err(SynthError::BadParameter(alloc::format!(
            "need ε > 0 and c > 0, got ε = {epsilon}, c = {c}"
        )));
    }
    Ok(c * c_eps as f64 * (c_eps as f64 / epsilon).ln())
}
