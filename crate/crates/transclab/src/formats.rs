//! Wire formats: JSON schemas for field elements, tensor-network graphs,
//! gate sets, certificates and reports, plus the binary state export.
//!
//! Big integers and rationals are carried as decimal strings so that exact
//! values survive the trip through JSON.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use transclab_core::algebra::{FieldContext, RadicalElement};
use transclab_core::families::{DiagonalUnitary, FamilySpec, StateVector};
use transclab_core::gamma::{
    ComplexityCertificate, GammaKind, GammaValue, GibbsBounds, TensorNetworkGraph,
    TnParameterCount,
};
use transclab_core::hardness::{McReport, Verdict};
use transclab_core::synth::{CMatrix, Circuit, GateSet, PlacedGate, SynthesisResult};

// ---------------------------------------------------------------------------
// field elements

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RadicalElementJson {
    pub primes: Vec<String>,
    pub d: u32,
    pub coords: Vec<CoordJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoordJson {
    pub j: Vec<u32>,
    pub num: String,
    pub den: String,
}

pub fn element_to_json(e: &RadicalElement) -> RadicalElementJson {
    RadicalElementJson {
        primes: e.context().primes().iter().map(|p| p.to_string()).collect(),
        d: e.context().d(),
        coords: e
            .coords()
            .iter()
            .map(|(j, c)| CoordJson {
                j: j.clone(),
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })
            .collect(),
    }
}

fn context_from_json(primes: &[String], d: u32) -> Result<Arc<FieldContext>> {
    let primes = primes
        .iter()
        .map(|p| BigUint::from_str(p).with_context(|| format!("bad prime {p:?}")))
        .collect::<Result<Vec<_>>>()?;
    Ok(Arc::new(FieldContext::new(primes, d)?))
}

pub fn element_from_json(
    json: &RadicalElementJson,
    ctx: Option<&Arc<FieldContext>>,
) -> Result<RadicalElement> {
    let ctx = match ctx {
        Some(c) => c.clone(),
        None => context_from_json(&json.primes, json.d)?,
    };
    let terms = json
        .coords
        .iter()
        .map(|c| {
            let num = BigInt::from_str(&c.num).with_context(|| format!("bad num {:?}", c.num))?;
            let den = BigInt::from_str(&c.den).with_context(|| format!("bad den {:?}", c.den))?;
            if den == BigInt::from(0) {
                bail!("zero denominator");
            }
            Ok((c.j.clone(), BigRational::new(num, den)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RadicalElement::from_terms(ctx, terms)?)
}

/// Parses a list of elements that must share one field context.
pub fn elements_from_json(list: &[RadicalElementJson]) -> Result<Vec<RadicalElement>> {
    let first = list.first().ok_or_else(|| anyhow!("empty element list"))?;
    let ctx = context_from_json(&first.primes, first.d)?;
    list.iter()
        .map(|json| {
            if json.primes != first.primes || json.d != first.d {
                bail!("elements use different field contexts");
            }
            element_from_json(json, Some(&ctx))
        })
        .collect()
}

// ---------------------------------------------------------------------------
// tensor networks

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TnVertexJson {
    pub edges: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TnGraphJson {
    pub d: u64,
    pub external: usize,
    pub internal: Vec<TnVertexJson>,
    pub edge_dims: BTreeMap<String, u64>,
}

pub fn graph_from_json(json: &TnGraphJson) -> Result<TensorNetworkGraph> {
    let mut edge_dims = BTreeMap::new();
    for (k, &v) in &json.edge_dims {
        let id: usize = k
            .parse()
            .with_context(|| format!("edge id {k:?} is not an integer"))?;
        edge_dims.insert(id, v);
    }
    let internal = json.internal.iter().map(|v| v.edges.clone()).collect();
    Ok(TensorNetworkGraph::new(
        json.d,
        json.external,
        internal,
        edge_dims,
    )?)
}

pub fn graph_to_json(g: &TensorNetworkGraph) -> TnGraphJson {
    TnGraphJson {
        d: g.physical_dim(),
        external: g.external_count(),
        internal: g
            .internal_vertices()
            .iter()
            .map(|edges| TnVertexJson {
                edges: edges.clone(),
            })
            .collect(),
        edge_dims: g
            .edge_dims()
            .iter()
            .map(|(k, v)| (k.to_string(), *v))
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TnCountJson {
    pub coarse: String,
    pub exact: String,
    pub internal_vertices: usize,
    pub max_degree: usize,
    pub max_bond: u64,
}

pub fn tn_count_to_json(c: &TnParameterCount) -> TnCountJson {
    TnCountJson {
        coarse: c.coarse.to_string(),
        exact: c.exact.to_string(),
        internal_vertices: c.internal_vertices,
        max_degree: c.max_degree,
        max_bond: c.max_bond,
    }
}

// ---------------------------------------------------------------------------
// gate sets, circuits, synthesis

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GateJson {
    pub label: String,
    /// Row-major entries as [re, im] pairs, length (d²)².
    pub matrix: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GateSetJson {
    pub d: u32,
    pub gates: Vec<GateJson>,
}

pub fn matrix_from_pairs(dim: usize, pairs: &[[f64; 2]]) -> Result<CMatrix> {
    if pairs.len() != dim * dim {
        bail!("matrix has {} entries, expected {}", pairs.len(), dim * dim);
    }
    let data = pairs
        .iter()
        .map(|&[re, im]| num_complex::Complex64::new(re, im))
        .collect();
    Ok(CMatrix::from_data(dim, data)?)
}

pub fn gate_set_from_json(json: &GateSetJson) -> Result<GateSet> {
    let dim = (json.d * json.d) as usize;
    let gates = json
        .gates
        .iter()
        .map(|g| Ok((g.label.clone(), matrix_from_pairs(dim, &g.matrix)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(GateSet::new(json.d, gates)?)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub matrix: Vec<[f64; 2]>,
}

pub fn target_from_json(json: &MatrixJson) -> Result<CMatrix> {
    matrix_from_pairs(json.dim, &json.matrix)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlacedGateJson {
    pub gate: String,
    pub sites: [usize; 2],
}

#[derive(Debug, Clone, Serialize)]
pub struct SynthesisJson {
    pub target: String,
    pub requested_epsilon: f64,
    pub effective_epsilon: f64,
    pub found_g: serde_json::Value,
    pub witness: Option<Vec<PlacedGateJson>>,
    pub distance: f64,
    pub explored: u64,
    pub explored_per_depth: Vec<u64>,
}

pub fn circuit_to_json(c: &Circuit) -> Vec<PlacedGateJson> {
    c.steps()
        .iter()
        .map(|s| PlacedGateJson {
            gate: s.gate.clone(),
            sites: [s.sites.0, s.sites.1],
        })
        .collect()
}

pub fn circuit_from_json(n: usize, steps: &[PlacedGateJson]) -> Result<Circuit> {
    let placed = steps
        .iter()
        .map(|s| PlacedGate {
            gate: s.gate.clone(),
            sites: (s.sites[0], s.sites[1]),
        })
        .collect();
    Ok(Circuit::new(n, placed)?)
}

pub fn synthesis_to_json(r: &SynthesisResult) -> SynthesisJson {
    SynthesisJson {
        target: r.target_label.clone(),
        requested_epsilon: r.requested_epsilon,
        effective_epsilon: r.effective_epsilon,
        found_g: match r.found_g {
            Some(g) => serde_json::json!(g),
            None => serde_json::json!("NOT_FOUND"),
        },
        witness: r.witness.as_ref().map(circuit_to_json),
        distance: r.distance,
        explored: r.explored,
        explored_per_depth: r.explored_per_depth.clone(),
    }
}

// ---------------------------------------------------------------------------
// γ values and certificates

#[derive(Debug, Clone, Serialize)]
pub struct GammaJson {
    pub kind: &'static str,
    pub value: String,
    pub provenance: Vec<String>,
}

pub fn gamma_to_json(g: &GammaValue) -> GammaJson {
    GammaJson {
        kind: match g.kind {
            GammaKind::Exact => "exact",
            GammaKind::LowerBound => "lower_bound",
            GammaKind::UpperBound => "upper_bound",
        },
        value: g.value.to_string(),
        provenance: g.provenance.iter().map(|r| r.to_string()).collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyJson {
    pub primes: Vec<String>,
    pub d: u32,
    pub n: usize,
    pub t: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateJson {
    pub gamma: GammaJson,
    pub d: u32,
    pub n: usize,
    pub c0_lower: String,
    pub tn_param_lower: String,
    pub family: Option<FamilyJson>,
    pub derivation: Vec<String>,
}

pub fn certificate_to_json(c: &ComplexityCertificate) -> CertificateJson {
    CertificateJson {
        gamma: gamma_to_json(&c.gamma),
        d: c.d,
        n: c.n,
        c0_lower: c.c0_lower.to_string(),
        tn_param_lower: c.tn_param_lower.to_string(),
        family: c.family.as_ref().map(|f| FamilyJson {
            primes: f.primes.iter().map(|p| p.to_string()).collect(),
            d: f.d,
            n: f.n,
            t: rational_to_string(&f.t),
        }),
        derivation: c.derivation.iter().map(|r| r.to_string()).collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GibbsJson {
    pub dim: usize,
    pub gamma_lower: usize,
    pub gamma_upper: usize,
    pub provenance: Vec<String>,
}

pub fn gibbs_to_json(b: &GibbsBounds) -> GibbsJson {
    GibbsJson {
        dim: b.dim,
        gamma_lower: b.gamma_lower,
        gamma_upper: b.gamma_upper,
        provenance: b.provenance.iter().map(|r| r.to_string()).collect(),
    }
}

// ---------------------------------------------------------------------------
// Monte Carlo reports

#[derive(Debug, Clone, Serialize)]
pub struct McReportJson {
    pub samples: u64,
    pub seed: u64,
    pub hits: u64,
    pub empirical: f64,
    pub bound: f64,
    /// null when the bound is exactly zero (log10 = −∞)
    pub log10_bound: Option<f64>,
    pub standard_error: f64,
    pub verdict: &'static str,
}

pub fn mc_report_to_json(r: &McReport) -> McReportJson {
    McReportJson {
        samples: r.samples,
        seed: r.seed,
        hits: r.hits,
        empirical: r.empirical,
        bound: r.bound,
        log10_bound: r.log10_bound.is_finite().then_some(r.log10_bound),
        standard_error: r.standard_error,
        verdict: match r.verdict {
            Verdict::Consistent => "CONSISTENT",
            Verdict::Violation => "VIOLATION",
        },
    }
}

/// Per-batch CSV for plotting: `batch,samples,hits`.
pub fn write_batch_csv(path: &Path, batches: &[crate::runner::BlockCount]) -> Result<()> {
    let mut out = std::fs::File::create(path)
        .with_context(|| format!("cannot create {}", path.display()))?;
    writeln!(out, "batch,samples,hits")?;
    for b in batches {
        writeln!(out, "{},{},{}", b.index, b.samples, b.hits)?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// binary state export

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateSidecar {
    pub schema: String,
    pub kind: String,
    pub dim: usize,
    pub d: u32,
    pub n: usize,
    pub primes: Vec<String>,
    pub t: String,
    pub precision: u32,
    pub error_bound: f64,
    pub data_file: String,
    pub layout: String,
}

fn family_sidecar(
    spec: &FamilySpec,
    kind: &str,
    dim: usize,
    precision: u32,
    error_bound: f64,
    data_file: &str,
) -> StateSidecar {
    StateSidecar {
        schema: crate::SCHEMA.to_string(),
        kind: kind.to_string(),
        dim,
        d: spec.context().d(),
        n: spec.context().n(),
        primes: spec
            .context()
            .primes()
            .iter()
            .map(|p| p.to_string())
            .collect(),
        t: rational_to_string(spec.t()),
        precision,
        error_bound,
        data_file: data_file.to_string(),
        layout: "interleaved little-endian f64 (re, im)".to_string(),
    }
}

fn write_complex_f64le(path: &Path, entries: impl Iterator<Item = (f64, f64)>) -> Result<()> {
    let mut out = std::io::BufWriter::new(
        std::fs::File::create(path).with_context(|| format!("cannot create {}", path.display()))?,
    );
    for (re, im) in entries {
        out.write_all(&re.to_le_bytes())?;
        out.write_all(&im.to_le_bytes())?;
    }
    out.flush()?;
    Ok(())
}

/// Writes `prefix.bin` (diagonal entries e^{iα_j} as little-endian f64 pairs)
/// and `prefix.json` (sidecar); returns the sidecar.
pub fn export_diagonal_unitary(prefix: &Path, u: &DiagonalUnitary) -> Result<StateSidecar> {
    let bin = prefix.with_extension("bin");
    write_complex_f64le(&bin, u.entries().map(|z| (z.re, z.im)))?;
    let sidecar = family_sidecar(
        u.spec(),
        "diagonal_unitary",
        u.dim(),
        u.precision(),
        u.error_bound(),
        &bin.file_name().unwrap_or_default().to_string_lossy(),
    );
    std::fs::write(
        prefix.with_extension("json"),
        serde_json::to_string_pretty(&sidecar)?,
    )?;
    Ok(sidecar)
}

/// Writes `prefix.bin` (state amplitudes) and `prefix.json`.
pub fn export_state(prefix: &Path, s: &StateVector) -> Result<StateSidecar> {
    let bin = prefix.with_extension("bin");
    write_complex_f64le(&bin, s.amplitudes().iter().map(|z| (z.re, z.im)))?;
    let sidecar = family_sidecar(
        s.spec(),
        "coherent_state",
        s.dim(),
        s.precision(),
        s.error_bound(),
        &bin.file_name().unwrap_or_default().to_string_lossy(),
    );
    std::fs::write(
        prefix.with_extension("json"),
        serde_json::to_string_pretty(&sidecar)?,
    )?;
    Ok(sidecar)
}

// ---------------------------------------------------------------------------
// misc

pub fn rational_to_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses "7", "-3", "3/2" into an exact rational.
pub fn rational_from_string(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num = BigInt::from_str(num.trim()).with_context(|| format!("bad numerator {num:?}"))?;
        let den = BigInt::from_str(den.trim()).with_context(|| format!("bad denominator {den:?}"))?;
        if den == BigInt::from(0) {
            bail!("zero denominator in {s:?}");
        }
        Ok(BigRational::new(num, den))
    } else {
        let num = BigInt::from_str(s).with_context(|| format!("bad rational {s:?}"))?;
        Ok(BigRational::from_integer(num))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn element_json_round_trip() {
        let ctx = Arc::new(
            FieldContext::new(vec![BigUint::from(2u32), BigUint::from(3u32)], 2).unwrap(),
        );
        let e = RadicalElement::from_terms(
            ctx,
            vec![
                (vec![0, 0], BigRational::new(BigInt::from(3), BigInt::from(1))),
                (vec![1, 1], BigRational::new(BigInt::from(-1), BigInt::from(2))),
            ],
        )
        .unwrap();
        let json = element_to_json(&e);
        let text = serde_json::to_string(&json).unwrap();
        assert!(text.contains("\"num\":\"-1\""));
        let back = element_from_json(&serde_json::from_str(&text).unwrap(), None).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn graph_json_round_trip() {
        let g = TensorNetworkGraph::six_gate_circuit(2);
        let json = graph_to_json(&g);
        let text = serde_json::to_string(&json).unwrap();
        let back = graph_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.parameter_count(), g.parameter_count());
    }

    #[test]
    fn rational_string_round_trip() {
        for s in ["7", "-3", "3/2", "1000000000"] {
            let q = rational_from_string(s).unwrap();
            assert_eq!(rational_to_string(&q), s);
        }
        assert!(rational_from_string("1/0").is_err());
        assert!(rational_from_string("x").is_err());
        // zero normalizes
        assert!(rational_from_string("0/5").unwrap().is_zero());
    }

    #[test]
    fn gate_set_json_accepts_builtins_shape() {
        use transclab_core::synth::builtin_gate;
        let cnot = builtin_gate("cnot", 2).unwrap();
        let json = GateSetJson {
            d: 2,
            gates: vec![GateJson {
                label: "cnot".into(),
                matrix: cnot.data().iter().map(|z| [z.re, z.im]).collect(),
            }],
        };
        let gs = gate_set_from_json(&json).unwrap();
        assert_eq!(gs.k(), 1);
    }
}
