//! Exact state-vector simulation and checks of catalytic and twisted actions.

use serde::Serialize;

use crate::circuit::{Circuit, GateKind, GateSet, Node};
use crate::compilers::CompiledProgram;
use crate::error::{Error, Result};
use crate::exactmat::ExactMatrix;
use crate::numring::{CycElement, GaloisAutomorphism};

/// Largest simulated dimension.
pub const MAX_DIM: usize = 1 << 12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExactState {
    amplitudes: Vec<CycElement>,
    norm_sq: CycElement,
}

impl ExactState {
    pub fn new(amplitudes: Vec<CycElement>) -> Result<Self> {
        if amplitudes.len() > MAX_DIM {
            return Err(Error::TooLarge(amplitudes.len()));
        }
        let norm_sq = ExactMatrix::inner(&amplitudes, &amplitudes);
        if norm_sq.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(ExactState { amplitudes, norm_sq })
    }

    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::ShapeMismatch(format!("basis index {index} in dimension {dim}")));
        }
        let mut v = vec![CycElement::zero(); dim];
        v[index] = CycElement::one();
        Self::new(v)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[CycElement] {
        &self.amplitudes
    }

    pub fn norm_sq(&self) -> &CycElement {
        &self.norm_sq
    }

    pub fn tensor(&self, other: &ExactState) -> Result<ExactState> {
        let v = self.amplitudes.iter().flat_map(|a| other.amplitudes.iter().map(move |b| a * b)).collect();
        Self::new(v)
    }

    /// Equal up to a nonzero scalar.
    pub fn is_parallel_to(&self, other: &ExactState) -> bool {
        parallel(&self.amplitudes, &other.amplitudes)
    }
}

fn parallel(u: &[CycElement], v: &[CycElement]) -> bool {
    if u.len() != v.len() {
        return false;
    }
    let Some(i) = v.iter().position(|x| !x.is_zero()) else {
        return u.iter().all(CycElement::is_zero);
    };
    let Ok(s) = u[i].checked_div(&v[i]) else { return false };
    !s.is_zero() && u.iter().zip(v).all(|(a, b)| *a == &s * b)
}

fn apply_vec(c: &Circuit, gs: &GateSet, v: &mut [CycElement]) -> Result<()> {
    match c.node() {
        Node::Identity(_) => Ok(()),
        Node::Swap(m, n) => {
            let old = v.to_vec();
            for a in 0..*m {
                for b in 0..*n {
                    v[b * m + a] = old[a * n + b].clone();
                }
            }
            Ok(())
        }
        Node::Seq(first_applied_last, applied_first) => {
            apply_vec(applied_first, gs, v)?;
            apply_vec(first_applied_last, gs, v)
        }
        Node::Par(a, b) => {
            let (m, n) = (a.dim(), b.dim());
            if !matches!(b.node(), Node::Identity(_)) {
                for chunk in v.chunks_mut(n) {
                    apply_vec(b, gs, chunk)?;
                }
            }
            if !matches!(a.node(), Node::Identity(_)) {
                let mut buf = vec![CycElement::zero(); m];
                for j in 0..n {
                    for i in 0..m {
                        buf[i] = v[i * n + j].clone();
                    }
                    apply_vec(a, gs, &mut buf)?;
                    for i in 0..m {
                        v[i * n + j] = std::mem::take(&mut buf[i]);
                    }
                }
            }
            Ok(())
        }
        Node::Gate { name, .. } => {
            let g = gs.get(name)?;
            match &g.kind {
                GateKind::Decrement { .. } => {
                    let perm = g.permutation().expect("decrementer");
                    let old = v.to_vec();
                    for (i, p) in perm.into_iter().enumerate() {
                        v[p] = old[i].clone();
                    }
                }
                GateKind::Matrix(m) => {
                    let out = m.apply(v)?;
                    v.clone_from_slice(&out);
                }
            }
            Ok(())
        }
    }
}

/// Applies a circuit to a state without forming its matrix.
pub fn apply(c: &Circuit, gs: &GateSet, s: &ExactState) -> Result<ExactState> {
    if c.dim() != s.dim() {
        return Err(Error::DimensionMismatch { left: c.dim(), right: s.dim() });
    }
    let mut v = s.amplitudes.clone();
    apply_vec(c, gs, &mut v)?;
    ExactState::new(v)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeResult {
    pub probe: usize,
    /// Basis state of the borrowed wires, when there are any.
    pub borrowed: Option<usize>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActionReport {
    pub law: String,
    /// For twisted checks: whether the supplied catalysts are the conjugates of the originals.
    pub catalysts_conjugate: Option<bool>,
    pub probes: Vec<ProbeResult>,
}

impl ActionReport {
    pub fn all_pass(&self) -> bool {
        self.catalysts_conjugate != Some(false) && self.probes.iter().all(|p| p.pass)
    }
}

/// U(ψ⊗χ) = (Eψ)⊗χ for each probe ψ, with χ the catalysts and every basis state of the borrowed wires.
pub fn check_catalytic_action(p: &CompiledProgram, source: &ExactMatrix, probes: &[ExactState]) -> Result<ActionReport> {
    let probes = run_probes(p, source, probes, None)?;
    Ok(ActionReport { law: "catalytic".into(), catalysts_conjugate: None, probes })
}

/// U(ψ⊗χ') = (g(E)ψ)⊗χ' where χ' holds the given conjugate catalysts; each must be ∝ g(original).
pub fn check_galois_action(
    p: &CompiledProgram,
    g: &GaloisAutomorphism,
    conjugates: &[Vec<CycElement>],
    source: &ExactMatrix,
    probes: &[ExactState],
) -> Result<ActionReport> {
    let fixed: Vec<_> = p.catalysts.iter().filter(|c| !c.is_borrowed()).collect();
    if fixed.len() != conjugates.len() {
        return Err(Error::ShapeMismatch(format!("{} catalysts, {} conjugates given", fixed.len(), conjugates.len())));
    }
    let mut ok = true;
    for (c, w) in fixed.iter().zip(conjugates) {
        let gv: Vec<CycElement> = c.vector.as_ref().unwrap().iter().map(|x| apply_auto(g, x)).collect::<Result<_>>()?;
        ok &= parallel(w, &gv);
    }
    let twisted = source.galois(&lift_auto(g, source.conductor())?)?;
    let probes = run_probes(p, &twisted, probes, Some(conjugates))?;
    Ok(ActionReport { law: format!("twisted by zeta -> zeta^{}", g.exponent), catalysts_conjugate: Some(ok), probes })
}

/// g applied to every non-borrowed catalyst, in wire order.
pub fn conjugate_catalysts(p: &CompiledProgram, g: &GaloisAutomorphism) -> Result<Vec<Vec<CycElement>>> {
    p.catalysts
        .iter()
        .filter_map(|c| c.vector.as_ref())
        .map(|v| v.iter().map(|x| apply_auto(g, x)).collect())
        .collect()
}

fn lcm_with(n: u32, g: &GaloisAutomorphism) -> u32 {
    crate::numring::lcm(n, g.conductor)
}

fn lift_auto(g: &GaloisAutomorphism, n: u32) -> Result<GaloisAutomorphism> {
    let big = lcm_with(n, g);
    GaloisAutomorphism::new(big, crate::numring::lift_unit(g.exponent, g.conductor, big) as i64)
}

fn apply_auto(g: &GaloisAutomorphism, x: &CycElement) -> Result<CycElement> {
    lift_auto(g, x.conductor())?.apply(x)
}

fn run_probes(
    p: &CompiledProgram,
    source: &ExactMatrix,
    probes: &[ExactState],
    replacement: Option<&[Vec<CycElement>]>,
) -> Result<Vec<ProbeResult>> {
    let data_dim = 1usize << p.data_wires.len();
    if source.rows() != data_dim || source.cols() != data_dim {
        return Err(Error::DimensionMismatch { left: source.rows(), right: data_dim });
    }
    let total = 1usize << p.program.qubits;
    if total > MAX_DIM {
        return Err(Error::TooLarge(total));
    }
    let mut prog = p.clone();
    if let Some(r) = replacement {
        for (c, v) in prog.catalysts.iter_mut().filter(|c| !c.is_borrowed()).zip(r) {
            c.vector = Some(v.clone());
        }
    }
    let b = p.borrowed_wires();
    let mut out = Vec::new();
    for (i, probe) in probes.iter().enumerate() {
        if probe.dim() != data_dim {
            return Err(Error::DimensionMismatch { left: probe.dim(), right: data_dim });
        }
        let image = source.apply(probe.amplitudes())?;
        for borrowed in 0..1usize << b {
            let chi = prog.catalyst_state(borrowed);
            let input = kron(probe.amplitudes(), &chi);
            let want = kron(&image, &chi);
            let mut v = input;
            apply_vec(&p.circuit, &p.gate_set, &mut v)?;
            out.push(ProbeResult { probe: i, borrowed: (b > 0).then_some(borrowed), pass: v == want });
        }
    }
    Ok(out)
}

fn kron(u: &[CycElement], v: &[CycElement]) -> Vec<CycElement> {
    u.iter().flat_map(|a| v.iter().map(move |b| a * b)).collect()
}

/// Basis states and uniform superpositions of pairs, a fixed probe family for a register.
pub fn standard_probes(qubits: usize) -> Result<Vec<ExactState>> {
    let dim = 1usize << qubits;
    let mut out = Vec::new();
    for i in 0..dim {
        out.push(ExactState::basis(dim, i)?);
    }
    let mut v = vec![CycElement::zero(); dim];
    for (i, x) in v.iter_mut().enumerate() {
        *x = CycElement::zeta_pow(8, i as i64);
    }
    out.push(ExactState::new(v)?);
    Ok(out)
}
