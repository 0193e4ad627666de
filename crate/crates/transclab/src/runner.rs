//! Worker-invariant parallel execution.
//!
//! Every parallel routine here produces bit-identical output for every thread
//! count: Monte Carlo work is chunked into fixed-size blocks of sample
//! indices (the RNG is counter-based, so a sample's value does not depend on
//! who computes it), point generation writes disjoint row ranges, and the
//! synthesis search merges per-chunk outcomes in branch order, reconstructing
//! exactly the sequential result.

use std::ops::Range;

use anyhow::Result;
use transclab_core::equidist::{assemble_sequence, fill_points, weyl_theta, WeylSequence};
use transclab_core::families::FamilySpec;
use transclab_core::hardness::{
    ball_hits, ball_report_from_hits, check_ball_run, check_overlap_run, mc_overlap_tail,
    overlap_hits, overlap_report_from_hits, McReport, OverlapVariant, SampleMode,
};
use transclab_core::synth::{
    apply_circuit, opnorm_dist, path_to_circuit, search_depth, CMatrix, GateSet,
    SynthesisOptions, SynthesisResult,
};

/// Fixed Monte Carlo block size; per-batch counts are reported at this
/// granularity regardless of thread count.
pub const BLOCK_SIZE: u64 = 1 << 16;

/// Hit count of one sample block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockCount {
    pub index: u64,
    pub samples: u64,
    pub hits: u64,
}

/// Resolves the worker count: CLI flag, then TRANSCLAB_THREADS, then 1.
pub fn resolve_threads(flag: Option<usize>) -> usize {
    flag.or_else(|| {
        std::env::var("TRANSCLAB_THREADS")
            .ok()
            .and_then(|s| s.parse().ok())
    })
    .filter(|&t| t >= 1)
    .unwrap_or(1)
}

fn block_range(index: u64, total: u64) -> Range<u64> {
    let start = index * BLOCK_SIZE;
    start..total.min(start + BLOCK_SIZE)
}

/// Runs `kernel` over all sample blocks, blocks distributed round-robin
/// across `threads` workers; returns counts in block order.
fn parallel_block_counts<F>(threads: usize, total: u64, kernel: F) -> Vec<BlockCount>
where
    F: Fn(Range<u64>) -> u64 + Sync,
{
    let n_blocks = total.div_ceil(BLOCK_SIZE);
    let mut counts: Vec<Option<BlockCount>> = vec![None; n_blocks as usize];
    if threads <= 1 {
        for (i, slot) in counts.iter_mut().enumerate() {
            let range = block_range(i as u64, total);
            let samples = range.end - range.start;
            *slot = Some(BlockCount {
                index: i as u64,
                samples,
                hits: kernel(range),
            });
        }
    } else {
        let kernel = &kernel;
        std::thread::scope(|scope| {
            let mut handles = Vec::new();
            for worker in 0..threads {
                handles.push(scope.spawn(move || {
                    let mut mine = Vec::new();
                    let mut b = worker as u64;
                    while b < n_blocks {
                        let range = block_range(b, total);
                        let samples = range.end - range.start;
                        mine.push(BlockCount {
                            index: b,
                            samples,
                            hits: kernel(range),
                        });
                        b += threads as u64;
                    }
                    mine
                }));
            }
            for h in handles {
                for c in h.join().expect("worker panicked") {
                    counts[c.index as usize] = Some(c);
                }
            }
        });
    }
    counts.into_iter().map(|c| c.expect("block missed")).collect()
}

/// Parallel ball-measure run; identical to the single-threaded
/// [`transclab_core::hardness::mc_ball_measure`] for every thread count.
pub fn run_ball(
    dim: usize,
    epsilon: f64,
    samples: u64,
    seed: u64,
    threads: usize,
) -> Result<(McReport, Vec<BlockCount>)> {
    check_ball_run(dim, epsilon, samples)?;
    let blocks = parallel_block_counts(threads, samples, |range| {
        ball_hits(dim, epsilon, seed, range)
    });
    let hits = blocks.iter().map(|b| b.hits).sum();
    Ok((
        ball_report_from_hits(dim, epsilon, samples, seed, hits),
        blocks,
    ))
}

/// Parallel overlap-tail run (exhaustive mode is delegated to the core and
/// is deterministic by construction).
pub fn run_overlap(
    dim: usize,
    epsilon: f64,
    variant: OverlapVariant,
    mode: SampleMode,
    threads: usize,
) -> Result<(McReport, Vec<BlockCount>)> {
    match mode {
        SampleMode::Exhaustive => {
            let report = mc_overlap_tail(dim, epsilon, variant, mode)?;
            Ok((report, Vec::new()))
        }
        SampleMode::Monte { samples, seed } => {
            check_overlap_run(dim, epsilon, variant, samples)?;
            let blocks = parallel_block_counts(threads, samples, |range| {
                overlap_hits(dim, epsilon, variant, seed, range)
            });
            let hits = blocks.iter().map(|b| b.hits).sum();
            Ok((
                overlap_report_from_hits(dim, epsilon, variant, samples, seed, hits)?,
                blocks,
            ))
        }
    }
}

/// Parallel Weyl point generation over disjoint row ranges.
pub fn run_weyl(
    spec: &FamilySpec,
    n_points: u64,
    precision: Option<u32>,
    point_cap: usize,
    threads: usize,
) -> Result<WeylSequence> {
    let (theta, digits) = weyl_theta(spec, n_points, precision, point_cap)?;
    let dim = theta.len();
    let rows = n_points as usize;
    let mut points = vec![0.0f64; rows * dim];
    if threads <= 1 {
        fill_points(&theta, 1..n_points + 1, &mut points);
    } else {
        let rows_per = rows.div_ceil(threads);
        let theta = &theta;
        std::thread::scope(|scope| {
            let mut rest: &mut [f64] = &mut points;
            let mut t0 = 1u64;
            while !rest.is_empty() {
                let take = (rows_per * dim).min(rest.len());
                let (chunk, tail) = rest.split_at_mut(take);
                let t1 = t0 + (take / dim) as u64;
                scope.spawn(move || fill_points(theta, t0..t1, chunk));
                rest = tail;
                t0 = t1;
            }
        });
    }
    Ok(assemble_sequence(spec, theta, points, digits)?)
}

/// Parallel iterative-deepening synthesis. Reproduces the sequential result
/// exactly: per depth, contiguous first-branch chunks are searched
/// concurrently and merged in branch order, and the reported leaf counts are
/// the canonical (sequential) ones.
pub fn run_synth(
    target: &CMatrix,
    target_label: &str,
    gs: &GateSet,
    n: usize,
    opts: &SynthesisOptions,
    threads: usize,
) -> Result<SynthesisResult> {
    use transclab_core::synth::brute_force_cost;
    if threads <= 1 || opts.prune {
        // pruning shares a seen-set across the whole depth, which does not
        // partition; keep it sequential
        return Ok(brute_force_cost(target, target_label, gs, n, opts)?);
    }
    // validate caps, dimensions and the ε = 0 mapping via a zero-depth
    // sequential call
    let probe = SynthesisOptions {
        g_max: 0,
        ..*opts
    };
    let base = brute_force_cost(target, target_label, gs, n, &probe)?;
    let effective_epsilon = base.effective_epsilon;
    if base.found_g.is_some() {
        return Ok(base);
    }
    let branch_count = gs.k() * n * (n - 1);
    let chunk = branch_count.div_ceil(threads).max(1);
    // canonical depth-0 outcome (single leaf), keeping the best-leaf
    // tracking aligned with the sequential search
    let depth0 = search_depth(
        target,
        gs,
        n,
        effective_epsilon,
        0,
        0..branch_count.max(1),
        false,
    )?;
    let mut explored = depth0.leaves;
    let mut explored_per_depth = vec![depth0.leaves];
    let mut best: Option<(f64, Vec<usize>)> = depth0.best;
    for depth in 1..=opts.g_max {
        let mut outcomes = Vec::new();
        std::thread::scope(|scope| {
            let mut handles = Vec::new();
            let mut start = 0usize;
            while start < branch_count {
                let end = (start + chunk).min(branch_count);
                handles.push(scope.spawn(move || {
                    search_depth(target, gs, n, effective_epsilon, depth, start..end, false)
                }));
                start = end;
            }
            for h in handles {
                outcomes.push(h.join().expect("search worker panicked"));
            }
        });
        let mut depth_leaves = 0u64;
        let mut winner: Option<(usize, Vec<usize>)> = None;
        for outcome in &outcomes {
            let outcome = outcome.as_ref().map_err(|e| anyhow::anyhow!("{e}"))?;
            if winner.is_none() {
                depth_leaves += outcome.leaves;
                if let Some(found) = &outcome.found {
                    winner = Some(found.clone());
                }
            }
            if winner.is_none() {
                if let Some((fro, path)) = &outcome.best {
                    if best.as_ref().is_none_or(|(b, _)| fro < b) {
                        best = Some((*fro, path.clone()));
                    }
                }
            }
        }
        explored += depth_leaves;
        explored_per_depth.push(depth_leaves);
        if let Some((_, path)) = winner {
            let witness = path_to_circuit(&path, gs, n)?;
            let compiled = apply_circuit(&witness, gs, target.dim())?;
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
    let distance = match &best {
        Some((_, path)) => {
            let closest = path_to_circuit(path, gs, n)?;
            let compiled = apply_circuit(&closest, gs, target.dim())?;
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
