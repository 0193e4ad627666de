//! Tiny-scale qudit circuit simulator and brute-force synthesis oracle.
//!
//! Circuits are sequences of placed two-qudit gates; the represented unitary
//! is the product U₁U₂⋯U_g with the leftmost gate applied last. Site pairs
//! are ordered: a gate on (i, j) differs from (j, i) unless the gate is
//! swap-symmetric.
//!
//! [`search::brute_force_cost`] computes the exact minimum number of placed
//! gates needed to reach a target within operator-norm ε by iterative
//! deepening, which grounds the complexity definitions at sizes where
//! exhaustive enumeration is feasible.

mod matrix;
mod search;

pub use matrix::{hermitian_eigenvalues, operator_norm, opnorm_dist, CMatrix};
pub use search::{
    branch_specs, brute_force_cost, path_to_circuit, search_depth, sequence_count, sk_overhead,
    DepthOutcome, SynthesisOptions, SynthesisResult, DEFAULT_SEARCH_DIM_CAP,
};

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use num_complex::Complex64;
#[cfg(not(feature = "std"))]
use num_traits::Float;

/// Default cap on d^n for compiled circuit unitaries.
pub const DEFAULT_APPLY_CAP: usize = 4096;
/// Unitarity tolerance for gate-set validation.
pub const UNITARITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub enum SynthError {
    DimensionMismatch { expected: usize, got: usize },
    /// d^n exceeds the configured cap.
    CapExceeded { dim: String, cap: usize },
    UnknownGate(String),
    UnknownBuiltin(String),
    DuplicateLabel(String),
    NotUnitary { label: String, defect: f64 },
    /// Site pair invalid: out of range or not distinct.
    BadSites { n: usize, a: usize, b: usize },
    BadParameter(String),
    /// Jacobi failed to converge (does not happen on finite inputs).
    EigensolverStalled,
}

impl fmt::Display for SynthError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SynthError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            SynthError::CapExceeded { dim, cap } => {
                write!(f, "dimension {dim} exceeds cap {cap}")
            }
            SynthError::UnknownGate(label) => write!(f, "unknown gate label {label:?}"),
            SynthError::UnknownBuiltin(label) => write!(f, "no builtin named {label:?}"),
            SynthError::DuplicateLabel(label) => write!(f, "duplicate gate label {label:?}"),
            SynthError::NotUnitary { label, defect } => {
                write!(f, "gate {label:?} fails unitarity by {defect:e}")
            }
            SynthError::BadSites { n, a, b } => {
                write!(f, "sites ({a}, {b}) invalid for {n} qudits")
            }
            SynthError::BadParameter(msg) => write!(f, "{msg}"),
            SynthError::EigensolverStalled => write!(f, "eigensolver failed to converge"),
        }
    }
}

impl core::error::Error for SynthError {}

/// A labeled two-qudit gate: a d²×d² unitary.
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    label: String,
    matrix: CMatrix,
}

impl Gate {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }
}

/// A finite set of two-qudit gates over local dimension d.
#[derive(Debug, Clone, PartialEq)]
pub struct GateSet {
    d: u32,
    gates: Vec<Gate>,
}

impl GateSet {
    /// Validates dimensions, unitarity (‖G†G − 1‖ ≤ 1e−10) and label
    /// uniqueness.
    pub fn new(d: u32, gates: Vec<(String, CMatrix)>) -> Result<Self, SynthError> {
        let dim = (d * d) as usize;
        let mut seen: Vec<&str> = Vec::new();
        let mut out = Vec::with_capacity(gates.len());
        for (label, matrix) in &gates {
            if matrix.dim() != dim {
                return Err(SynthError::DimensionMismatch {
                    expected: dim,
                    got: matrix.dim(),
                });
            }
            if seen.contains(&label.as_str()) {
                return Err(SynthError::DuplicateLabel(label.clone()));
            }
            seen.push(label);
            let gram = matrix.dagger().matmul(matrix)?;
            let defect = opnorm_dist(&gram, &CMatrix::identity(dim))?;
            if defect > UNITARITY_TOL {
                return Err(SynthError::NotUnitary {
                    label: label.clone(),
                    defect,
                });
            }
            out.push(Gate {
                label: label.clone(),
                matrix: matrix.clone(),
            });
        }
        Ok(GateSet { d, gates: out })
    }

    /// Builds a gate set from builtin labels (see [`builtin_gate`]).
    pub fn from_builtin_labels(d: u32, labels: &[&str]) -> Result<Self, SynthError> {
        let gates = labels
            .iter()
            .map(|&l| Ok((l.to_string(), builtin_gate(l, d)?)))
            .collect::<Result<Vec<_>, SynthError>>()?;
        GateSet::new(d, gates)
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn k(&self) -> usize {
        self.gates.len()
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn find(&self, label: &str) -> Result<&Gate, SynthError> {
        self.gates
            .iter()
            .find(|g| g.label == label)
            .ok_or_else(|| SynthError::UnknownGate(label.to_string()))
    }
}

/// One placed gate: a label from the gate set on an ordered site pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlacedGate {
    pub gate: String,
    pub sites: (usize, usize),
}

/// An ordered gate sequence on n qudits; position 0 is the leftmost factor,
/// i.e. the gate applied last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    n: usize,
    steps: Vec<PlacedGate>,
}

impl Circuit {
    pub fn new(n: usize, steps: Vec<PlacedGate>) -> Result<Self, SynthError> {
        if n < 2 {
            return Err(SynthError::BadParameter(alloc::format!(
                "need at least 2 sites, got {n}"
            )));
        }
        for s in &steps {
            let (a, b) = s.sites;
            if a == b || a >= n || b >= n {
                return Err(SynthError::BadSites { n, a, b });
            }
        }
        Ok(Circuit { n, steps })
    }

    pub fn empty(n: usize) -> Result<Self, SynthError> {
        Circuit::new(n, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn steps(&self) -> &[PlacedGate] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// dᵏ with overflow guard against the cap.
fn checked_power(d: u32, n: usize, cap: usize) -> Result<usize, SynthError> {
    let mut dim = 1usize;
    for _ in 0..n {
        dim = dim
            .checked_mul(d as usize)
            .filter(|&v| v <= cap)
            .ok_or_else(|| SynthError::CapExceeded {
                dim: alloc::format!("{d}^{n}"),
                cap,
            })?;
    }
    Ok(dim)
}

/// Applies the transpose of a two-site operator to each row of `m`
/// (i.e. computes m ← m · emb(op) for the op whose transpose is given).
///
/// `bases` must list all basis indices whose digits at both sites are zero.
fn right_apply_transposed(
    m: &mut CMatrix,
    op_t: &CMatrix,
    bases: &[usize],
    stride_a: usize,
    stride_b: usize,
    d: usize,
) {
    let dd = d * d;
    let mut gathered = alloc::vec![Complex64::new(0.0, 0.0); dd];
    let dim = m.dim();
    for r in 0..dim {
        let row = m.row_mut(r);
        for &base in bases {
            for i in 0..d {
                for j in 0..d {
                    gathered[i * d + j] = row[base + i * stride_a + j * stride_b];
                }
            }
            for out in 0..dd {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, g) in gathered.iter().enumerate() {
                    acc += op_t.get(out, k) * g;
                }
                row[base + (out / d) * stride_a + (out % d) * stride_b] = acc;
            }
        }
    }
}

/// Precomputed placement data for applying gates on a fixed site pair.
#[derive(Clone)]
pub(crate) struct Placement {
    pub bases: Vec<usize>,
    pub stride_a: usize,
    pub stride_b: usize,
}

pub(crate) fn placement(n: usize, d: usize, a: usize, b: usize, dim: usize) -> Placement {
    let stride = |site: usize| {
        let mut s = 1usize;
        for _ in 0..(n - 1 - site) {
            s *= d;
        }
        s
    };
    let stride_a = stride(a);
    let stride_b = stride(b);
    let bases = (0..dim)
        .filter(|x| (x / stride_a) % d == 0 && (x / stride_b) % d == 0)
        .collect();
    Placement {
        bases,
        stride_a,
        stride_b,
    }
}

pub(crate) fn right_apply_placed(m: &mut CMatrix, gate_t: &CMatrix, p: &Placement, d: usize) {
    right_apply_transposed(m, gate_t, &p.bases, p.stride_a, p.stride_b, d);
}

/// Compiles a circuit to its d^n × d^n unitary, in the written product order
/// (U₁U₂⋯U_g, leftmost applied last).
pub fn apply_circuit(circuit: &Circuit, gs: &GateSet, cap: usize) -> Result<CMatrix, SynthError> {
    let d = gs.d() as usize;
    let dim = checked_power(gs.d(), circuit.n(), cap)?;
    let mut acc = CMatrix::identity(dim);
    for step in circuit.steps() {
        let gate = gs.find(&step.gate)?;
        let gate_t = gate.matrix().transpose();
        let p = placement(circuit.n(), d, step.sites.0, step.sites.1, dim);
        right_apply_placed(&mut acc, &gate_t, &p, d);
    }
    Ok(acc)
}

/// Builtin two-qudit gates, valid for any d ≥ 2 unless noted:
///
/// * `cnot` / `cx` — |i,j⟩ → |i, i+j mod d⟩
/// * `cz` — phase ω^{ij}, ω = e^{2πi/d}
/// * `swap` — |i,j⟩ → |j,i⟩
/// * `h0`, `h1` — discrete Fourier transform on one site (Hadamard at d = 2)
/// * `t0`, `t1` — T gate on one site (d = 2 only)
pub fn builtin_gate(label: &str, d: u32) -> Result<CMatrix, SynthError> {
    let dd = (d * d) as usize;
    let du = d as usize;
    let lower = label.to_lowercase();
    let mut m = CMatrix::zeros(dd);
    match lower.as_str() {
        "cnot" | "cx" => {
            for i in 0..du {
                for j in 0..du {
                    let col = i * du + j;
                    let row = i * du + (i + j) % du;
                    m.set(row, col, Complex64::new(1.0, 0.0));
                }
            }
        }
        "cz" => {
            let base = core::f64::consts::TAU / d as f64;
            for i in 0..du {
                for j in 0..du {
                    let idx = i * du + j;
                    let phase = base * (i * j) as f64;
                    m.set(idx, idx, Complex64::new(phase.cos(), phase.sin()));
                }
            }
        }
        "swap" => {
            for i in 0..du {
                for j in 0..du {
                    m.set(j * du + i, i * du + j, Complex64::new(1.0, 0.0));
                }
            }
        }
        "h0" | "h1" | "dft0" | "dft1" => {
            let scale = 1.0 / (d as f64).sqrt();
            let base = core::f64::consts::TAU / d as f64;
            let mut f = CMatrix::zeros(du);
            for a in 0..du {
                for b in 0..du {
                    let phase = base * (a * b) as f64;
                    f.set(
                        a,
                        b,
                        Complex64::new(phase.cos() * scale, phase.sin() * scale),
                    );
                }
            }
            let on_first = lower.ends_with('0');
            for a in 0..du {
                for b in 0..du {
                    for x in 0..du {
                        if on_first {
                            // F ⊗ 1
                            m.set(a * du + x, b * du + x, f.get(a, b));
                        } else {
                            m.set(x * du + a, x * du + b, f.get(a, b));
                        }
                    }
                }
            }
        }
        "t0" | "t1" => {
            if d != 2 {
                return Err(SynthError::UnknownBuiltin(alloc::format!(
                    "{label} is only defined for d = 2"
                )));
            }
            let t = Complex64::new(
                core::f64::consts::FRAC_PI_4.cos(),
                core::f64::consts::FRAC_PI_4.sin(),
            );
            let on_first = lower.ends_with('0');
            for i in 0..du {
                for j in 0..du {
                    let idx = i * du + j;
                    let bit = if on_first { i } else { j };
                    let v = if bit == 1 {
                        t
                    } else {
                        Complex64::new(1.0, 0.0)
                    };
                    m.set(idx, idx, v);
                }
            }
        }
        _ => return Err(SynthError::UnknownBuiltin(label.to_string())),
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cnot_set() -> GateSet {
        GateSet::from_builtin_labels(2, &["cnot"]).unwrap()
    }

    #[test]
    fn builtins_are_unitary() {
        for d in [2u32, 3] {
            for label in ["cnot", "cz", "swap", "h0", "h1"] {
                let g = builtin_gate(label, d).unwrap();
                let gram = g.dagger().matmul(&g).unwrap();
                let defect = opnorm_dist(&gram, &CMatrix::identity((d * d) as usize)).unwrap();
                assert!(defect < 1e-12, "{label} at d={d}: {defect}");
            }
        }
        assert!(builtin_gate("t0", 2).is_ok());
        assert!(builtin_gate("t0", 3).is_err());
        assert!(builtin_gate("nope", 2).is_err());
    }

    #[test]
    fn empty_circuit_is_identity() {
        let gs = cnot_set();
        let c = Circuit::empty(2).unwrap();
        let u = apply_circuit(&c, &gs, DEFAULT_APPLY_CAP).unwrap();
        assert!(opnorm_dist(&u, &CMatrix::identity(4)).unwrap() < 1e-14);
    }

    #[test]
    fn single_gate_on_01_is_the_gate() {
        let gs = cnot_set();
        let c = Circuit::new(
            2,
            alloc::vec![PlacedGate {
                gate: "cnot".into(),
                sites: (0, 1),
            }],
        )
        .unwrap();
        let u = apply_circuit(&c, &gs, DEFAULT_APPLY_CAP).unwrap();
        let expected = builtin_gate("cnot", 2).unwrap();
        assert!(opnorm_dist(&u, &expected).unwrap() < 1e-13);
    }

    #[test]
    fn reversed_placement_swaps_roles() {
        // cnot on (1,0): control on site 1
        let gs = cnot_set();
        let c = Circuit::new(
            2,
            alloc::vec![PlacedGate {
                gate: "cnot".into(),
                sites: (1, 0),
            }],
        )
        .unwrap();
        let u = apply_circuit(&c, &gs, DEFAULT_APPLY_CAP).unwrap();
        // |a,b⟩ → |a⊕b, b⟩: columns 00→00, 01→11, 10→10, 11→01
        let mut expected = CMatrix::zeros(4);
        expected.set(0b00, 0b00, Complex64::new(1.0, 0.0));
        expected.set(0b11, 0b01, Complex64::new(1.0, 0.0));
        expected.set(0b10, 0b10, Complex64::new(1.0, 0.0));
        expected.set(0b01, 0b11, Complex64::new(1.0, 0.0));
        assert!(opnorm_dist(&u, &expected).unwrap() < 1e-13);
    }

    #[test]
    fn inverse_pair_cancels() {
        let gs = cnot_set();
        let c = Circuit::new(
            2,
            alloc::vec![
                PlacedGate {
                    gate: "cnot".into(),
                    sites: (0, 1),
                },
                PlacedGate {
                    gate: "cnot".into(),
                    sites: (0, 1),
                },
            ],
        )
        .unwrap();
        let u = apply_circuit(&c, &gs, DEFAULT_APPLY_CAP).unwrap();
        assert!(opnorm_dist(&u, &CMatrix::identity(4)).unwrap() < 1e-12);
    }

    #[test]
    fn cnot_sandwich_makes_swap() {
        let gs = cnot_set();
        let steps = [(0, 1), (1, 0), (0, 1)]
            .iter()
            .map(|&(a, b)| PlacedGate {
                gate: "cnot".into(),
                sites: (a, b),
            })
            .collect();
        let c = Circuit::new(2, steps).unwrap();
        let u = apply_circuit(&c, &gs, DEFAULT_APPLY_CAP).unwrap();
        let swap = builtin_gate("swap", 2).unwrap();
        assert!(opnorm_dist(&u, &swap).unwrap() < 1e-12);
    }

    #[test]
    fn product_order_is_leftmost_applied_last() {
        // circuit [h0, cnot] must equal H₀·CNOT (CNOT applied first)
        let gs = GateSet::from_builtin_labels(2, &["cnot", "h0"]).unwrap();
        let c = Circuit::new(
            2,
            alloc::vec![
                PlacedGate {
                    gate: "h0".into(),
                    sites: (0, 1),
                },
                PlacedGate {
                    gate: "cnot".into(),
                    sites: (0, 1),
                },
            ],
        )
        .unwrap();
        let u = apply_circuit(&c, &gs, DEFAULT_APPLY_CAP).unwrap();
        let expected = builtin_gate("h0", 2)
            .unwrap()
            .matmul(&builtin_gate("cnot", 2).unwrap())
            .unwrap();
        assert!(opnorm_dist(&u, &expected).unwrap() < 1e-12);
    }

    #[test]
    fn three_site_embedding_matches_kronecker() {
        // gate on (0,2) of n=3: check one basis column by hand
        let gs = cnot_set();
        let c = Circuit::new(
            3,
            alloc::vec![PlacedGate {
                gate: "cnot".into(),
                sites: (0, 2),
            }],
        )
        .unwrap();
        let u = apply_circuit(&c, &gs, DEFAULT_APPLY_CAP).unwrap();
        // |1,x,0⟩ → |1,x,1⟩: column 100 (=4) maps to row 101 (=5)
        assert!((u.get(5, 4) - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        assert!((u.get(4, 4)).norm() < 1e-14);
        // site 1 untouched: |1,1,0⟩ (=6) → |1,1,1⟩ (=7)
        assert!((u.get(7, 6) - Complex64::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn validation_errors() {
        assert!(Circuit::new(
            2,
            alloc::vec![PlacedGate {
                gate: "cnot".into(),
                sites: (0, 0),
            }]
        )
        .is_err());
        assert!(Circuit::new(
            2,
            alloc::vec![PlacedGate {
                gate: "cnot".into(),
                sites: (0, 2),
            }]
        )
        .is_err());
        let gs = cnot_set();
        let c = Circuit::new(
            2,
            alloc::vec![PlacedGate {
                gate: "mystery".into(),
                sites: (0, 1),
            }],
        )
        .unwrap();
        assert!(matches!(
            apply_circuit(&c, &gs, DEFAULT_APPLY_CAP),
            Err(SynthError::UnknownGate(_))
        ));
        // cap
        let c = Circuit::empty(13).unwrap();
        assert!(matches!(
            apply_circuit(&c, &gs, DEFAULT_APPLY_CAP),
            Err(SynthError::CapExceeded { .. })
        ));
        // non-unitary gate rejected
        let bad = CMatrix::from_data(
            4,
            alloc::vec![Complex64::new(2.0, 0.0); 16],
        )
        .unwrap();
        assert!(matches!(
            GateSet::new(2, alloc::vec![("bad".into(), bad)]),
            Err(SynthError::NotUnitary { .. })
        ));
    }
}
