use super::expand::expand_decrement;
use super::{Catalyst, CompiledProgram};
use crate::circuit::{GateSet, PlacedOp, Program, SWAP};
use crate::error::{Error, Result};
use crate::exactmat::ExactMatrix;
use crate::numring::CycElement;

/// ζ^{rc}/√N with N = 2ⁿ and ζ = ζ_N.
pub fn qft_matrix(n: u32) -> Result<ExactMatrix> {
    if n == 0 || n > 12 {
        return Err(Error::TooLarge(n as usize));
    }
    let dim = 1usize << n;
    let scale = CycElement::sqrt2().pow(n).inv()?;
    Ok(ExactMatrix::from_fn(dim, dim, |r, c| {
        &CycElement::zeta_pow(dim as u32, ((r * c) % dim) as i64) * &scale
    }))
}

/// H and controlled-R_k gates on wires 0..n, then a wire reversal.
pub fn build_qft(n: u32) -> Result<(Program, GateSet)> {
    if n == 0 {
        return Err(Error::Unsupported("QFT needs at least one qubit".into()));
    }
    let n = n as usize;
    let mut p = Program::new(n);
    for j in 0..n {
        p.push("H", &[j]);
        for k in 2..=n - j {
            p.push(format!("CR{k}"), &[j + k - 1, j]);
        }
    }
    for j in 0..n / 2 {
        p.push(SWAP, &[j, n - 1 - j]);
    }
    Ok((p, GateSet::qft_source(n as u32)))
}

/// Replaces each controlled-R_k by a doubly controlled decrementer on catalysts ψ₁…ψ_k,
/// where ψ_j = [1, ζ_{2^j}] sits on wire 2n − j. `inverse` conjugates every rotation.
/// With `expand`, decrementers on at most three bits are rewritten over {X, CX, CCX}.
pub fn compile_qft(n: u32, inverse: bool, expand: bool) -> Result<CompiledProgram> {
    let (src, _) = build_qft(n)?;
    let nn = n as usize;
    // A one-qubit QFT is a single H and needs no catalyst.
    let base = if nn > 1 { 2 * nn } else { 1 };
    let qubits = base;
    let mut ops = Vec::new();
    for op in &src.ops {
        match op.gate.strip_prefix("CR").and_then(|k| k.parse::<usize>().ok()) {
            Some(k) => {
                let (c, t) = (op.wires[0], op.wires[1]);
                let mut wires = vec![t, c];
                wires.extend((1..=k).map(|j| qubits - j));
                ops.push(PlacedOp::new(format!("CCDEC{k}"), &wires));
            }
            None => ops.push(op.clone()),
        }
    }
    let (ops, qubits) = if expand { expand_small(&ops, qubits)? } else { (ops, qubits) };

    let mut catalysts = Vec::new();
    let top = if nn > 1 { nn } else { 0 };
    for k in (1..=top).rev() {
        let z = CycElement::zeta(1 << k);
        let v = if inverse { vec![z, CycElement::one()] } else { vec![CycElement::one(), z] };
        catalysts.push(Catalyst::fixed(format!("psi{k}"), vec![2 * nn - k], v));
    }
    if qubits > base {
        catalysts.push(Catalyst::borrowed("scratch", base));
    }
    let desc = if inverse { format!("inverse QFT on {n} qubits") } else { format!("QFT on {n} qubits") };
    CompiledProgram::assemble(
        desc,
        GateSet::qft_target(n),
        Program { qubits, ops },
        (0..nn).collect(),
        catalysts,
        None,
    )
}

/// Expands CCDEC_k for k ≤ 3, adding one borrowed wire if some expansion lacks room.
fn expand_small(ops: &[PlacedOp], qubits: usize) -> Result<(Vec<PlacedOp>, usize)> {
    let attempt = |q: usize| -> Result<Vec<PlacedOp>> {
        let mut out = Vec::new();
        for op in ops {
            match op.gate.strip_prefix("CCDEC").and_then(|k| k.parse::<usize>().ok()) {
                Some(k) if k <= 3 => out.extend(expand_decrement(&op.wires[..2], &op.wires[2..], q)?),
                _ => out.push(op.clone()),
            }
        }
        Ok(out)
    };
    match attempt(qubits) {
        Ok(v) => Ok((v, qubits)),
        Err(Error::Unsupported(_)) => Ok((attempt(qubits + 1)?, qubits + 1)),
        Err(e) => Err(e),
    }
}
