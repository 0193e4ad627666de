//! Tensor-network graphs and their parameter counts.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::GammaError;

/// A tensor-network graph: internal vertices carrying tensors, degree-one
/// external (physical) vertices, and edges with bond dimensions.
///
/// External vertices are implicit: every edge referenced by exactly one
/// internal vertex terminates at one of them, so the count of such edges must
/// equal `external` and their dimension must equal the physical dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorNetworkGraph {
    d: u64,
    external: usize,
    internal: Vec<Vec<usize>>,
    edge_dims: BTreeMap<usize, u64>,
}

/// Parameter counts of a network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TnParameterCount {
    /// N·D^δ: internal vertex count times max bond dimension to the max
    /// internal degree.
    pub coarse: BigUint,
    /// Σ_v ∏_{e∋v} d_e: the exact number of tensor entries.
    pub exact: BigUint,
    /// N = number of internal vertices.
    pub internal_vertices: usize,
    /// δ = maximum internal degree.
    pub max_degree: usize,
    /// D = maximum bond dimension over all edges.
    pub max_bond: u64,
}

/// Outcome of checking a network against a certified γ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TnVerdict {
    /// The parameter count is provably too small to represent the object.
    Infeasible,
    /// The one-directional bound does not rule the network out.
    Undecided,
}

impl TensorNetworkGraph {
    /// Validates and builds a graph.
    ///
    /// `internal[v]` lists the edge ids incident to internal vertex v;
    /// `edge_dims` maps each edge id to its bond dimension.
    pub fn new(
        d: u64,
        external: usize,
        internal: Vec<Vec<usize>>,
        edge_dims: BTreeMap<usize, u64>,
    ) -> Result<Self, GammaError> {
        if d < 1 {
            return Err(GammaError::MalformedGraph(alloc::format!(
                "physical dimension {d} must be ≥ 1"
            )));
        }
        let mut usage: BTreeMap<usize, usize> = BTreeMap::new();
        for edges in &internal {
            for &e in edges {
                *usage.entry(e).or_insert(0) += 1;
                if !edge_dims.contains_key(&e) {
                    return Err(GammaError::MalformedGraph(alloc::format!(
                        "edge {e} has no dimension assigned"
                    )));
                }
            }
        }
        for (&e, &dim) in &edge_dims {
            if dim < 1 {
                return Err(GammaError::MalformedGraph(alloc::format!(
                    "edge {e} has dimension {dim} < 1"
                )));
            }
            match usage.get(&e).copied().unwrap_or(0) {
                0 => {
                    return Err(GammaError::MalformedGraph(alloc::format!(
                        "edge {e} dangles: no incident vertex"
                    )))
                }
                1 => {
                    // terminates at an external vertex
                    if dim != d {
                        return Err(GammaError::MalformedGraph(alloc::format!(
                            "external edge {e} has dimension {dim} ≠ physical dimension {d}"
                        )));
                    }
                }
                2 => {}
                k => {
                    return Err(GammaError::MalformedGraph(alloc::format!(
                        "edge {e} has {k} endpoints"
                    )))
                }
            }
        }
        let external_edges = usage.values().filter(|&&c| c == 1).count();
        if external_edges != external {
            return Err(GammaError::MalformedGraph(alloc::format!(
                "{external_edges} degree-one edges but {external} external vertices declared"
            )));
        }
        Ok(TensorNetworkGraph {
            d,
            external,
            internal,
            edge_dims,
        })
    }

    pub fn physical_dim(&self) -> u64 {
        self.d
    }

    pub fn external_count(&self) -> usize {
        self.external
    }

    pub fn internal_vertices(&self) -> &[Vec<usize>] {
        &self.internal
    }

    pub fn edge_dims(&self) -> &BTreeMap<usize, u64> {
        &self.edge_dims
    }

    /// N, δ, D and both parameter counts, derived on demand.
    pub fn parameter_count(&self) -> TnParameterCount {
        let internal_vertices = self.internal.len();
        let max_degree = self.internal.iter().map(Vec::len).max().unwrap_or(0);
        let max_bond = self.edge_dims.values().copied().max().unwrap_or(1);
        let coarse =
            BigUint::from(internal_vertices) * BigUint::from(max_bond).pow(max_degree as u32);
        let mut exact = BigUint::zero();
        for edges in &self.internal {
            let mut prod = BigUint::one();
            for &e in edges {
                prod *= BigUint::from(self.edge_dims[&e]);
            }
            exact += prod;
        }
        TnParameterCount {
            coarse,
            exact,
            internal_vertices,
            max_degree,
            max_bond,
        }
    }

    /// Two-layer brickwork of six degree-4 internal vertices on six wires,
    /// all bonds at the physical dimension — the shape a six-gate circuit
    /// induces as a tensor network.
    pub fn six_gate_circuit(d: u64) -> Self {
        // Edges 0..5: layer-1 inputs wait, see layout below.
        // Layer 1 gates: g0(w0,w1) g1(w2,w3) g2(w4,w5); layer 2: g3(w1,w2)
        // g4(w3,w4) g5(w5,w0). 12 external legs, 6 internal bonds.
        let mut edge_dims = BTreeMap::new();
        for e in 0..18usize {
            edge_dims.insert(e, d);
        }
        // external inputs 0..5, internal bonds 6..11, external outputs 12..17
        let internal = alloc::vec![
            alloc::vec![0, 1, 6, 7],   // g0: in w0,w1 -> bonds to g5,g3
            alloc::vec![2, 3, 8, 9],   // g1
            alloc::vec![4, 5, 10, 11], // g2
            alloc::vec![7, 8, 12, 13], // g3: bonds from g0,g1 -> out
            alloc::vec![9, 10, 14, 15], // g4
            alloc::vec![11, 6, 16, 17], // g5
        ];
        TensorNetworkGraph::new(d, 12, internal, edge_dims).expect("fixed shape is valid")
    }

    /// Open-boundary matrix-product-state chain: `sites` internal vertices,
    /// physical dimension d, bond dimension `bond` between neighbors.
    pub fn mps_chain(d: u64, bond: u64, sites: usize) -> Result<Self, GammaError> {
        let mut edge_dims = BTreeMap::new();
        let mut internal = Vec::with_capacity(sites);
        // physical edges 0..sites, bonds sites..(2*sites-1)
        for e in 0..sites {
            edge_dims.insert(e, d);
        }
        for b in 0..sites.saturating_sub(1) {
            edge_dims.insert(sites + b, bond);
        }
        for v in 0..sites {
            let mut edges = alloc::vec![v];
            if v > 0 {
                edges.push(sites + v - 1);
            }
            if v + 1 < sites {
                edges.push(sites + v);
            }
            internal.push(edges);
        }
        TensorNetworkGraph::new(d, sites, internal, edge_dims)
    }
}
