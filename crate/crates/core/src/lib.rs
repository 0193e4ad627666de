//! Exact and numerical machinery for diagonal-phase families of exponential
//! circuit complexity.
//!
//! The crate is organized around a single pipeline:
//!
//! * [`algebra`] — exact arithmetic in the radical extension
//!   ℚ(p₁^{1/d}, …, p_n^{1/d}) over its monomial basis, plus exact rank
//!   computations over ℚ and rigorously bounded real evaluation.
//! * [`gamma`] — transcendence-degree values with provenance, the circuit and
//!   tensor-network lower-bound calculus, and Gibbs-spectrum bounds.
//! * [`families`] — the explicit hard families: phase tables, diagonal
//!   unitaries `U_t`, maximally coherent states `ψ_t`, diagonal Hamiltonians,
//!   and their complexity certificates.
//! * [`hardness`] — closed-form hardness-of-approximation bounds and Monte
//!   Carlo verification of the concentration inequalities behind them.
//! * [`equidist`] — Weyl phase sequences and uniform-distribution diagnostics
//!   (box measures, star-style discrepancy, Kolmogorov–Smirnov statistics).
//! * [`synth`] — a tiny-scale qudit circuit simulator and brute-force
//!   synthesis oracle computing the exact gate count needed to hit a target
//!   unitary within operator-norm ε.
//!
//! Everything here is deterministic: Monte Carlo routines use a counter-based
//! generator ([`rng`]) so results are reproducible and independent of how work
//! is split across workers.
//!
//! The crate is `no_std`-compatible (requires `alloc`); the default `std`
//! feature only switches float math from `libm` to the standard library.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod algebra;
pub mod equidist;
pub mod families;
pub mod gamma;
pub mod hardness;
pub mod rng;
pub mod synth;
