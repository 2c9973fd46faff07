//! Qubit-level programs and their lowering to circuit trees.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Circuit, GateKind, GateSet};
use crate::error::{Error, Result};

/// Op name for a structural two-qubit swap; it needs no gate-set entry.
pub const SWAP: &str = "SWAP";

/// A gate applied to specific qubit wires; `wires[0]` is the gate's most significant qubit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlacedOp {
    pub gate: String,
    pub wires: Vec<usize>,
}

impl PlacedOp {
    pub fn new(gate: impl Into<String>, wires: &[usize]) -> Self {
        PlacedOp { gate: gate.into(), wires: wires.to_vec() }
    }
}

/// A time-ordered list of placed gates on `qubits` wires. Wire 0 is the most significant.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Program {
    pub qubits: usize,
    pub ops: Vec<PlacedOp>,
}

impl Program {
    pub fn new(qubits: usize) -> Self {
        Program { qubits, ops: Vec::new() }
    }

    pub fn push(&mut self, gate: impl Into<String>, wires: &[usize]) {
        self.ops.push(PlacedOp::new(gate, wires));
    }

    pub fn extend(&mut self, other: &Program) {
        self.ops.extend(other.ops.iter().cloned());
    }

    pub fn to_circuit(&self, gs: &GateSet) -> Result<Circuit> {
        let dim = 1usize
            .checked_shl(self.qubits as u32)
            .filter(|_| self.qubits < usize::BITS as usize)
            .ok_or(Error::TooLarge(self.qubits))?;
        if self.ops.is_empty() {
            return Ok(Circuit::identity(dim));
        }
        let placed = self
            .ops
            .iter()
            .map(|op| {
                let g = if op.gate == SWAP { Circuit::swap(2, 2) } else { Circuit::gate(gs, &op.gate)? };
                place(&g, &op.wires, self.qubits)
            })
            .collect::<Result<Vec<_>>>()?;
        Circuit::sequence(&placed)
    }

    pub fn gate_counts(&self) -> std::collections::BTreeMap<String, u64> {
        let mut m = std::collections::BTreeMap::new();
        for op in &self.ops {
            *m.entry(op.gate.clone()).or_insert(0) += 1;
        }
        m
    }

    /// OpenQASM 2.0 text. Decrementers are declared opaque.
    pub fn to_qasm(&self, gs: &GateSet) -> Result<String> {
        let mut out = String::from("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
        let mut opaque = BTreeSet::new();
        for op in self.ops.iter().filter(|op| op.gate != SWAP) {
            if let GateKind::Decrement { .. } = gs.get(&op.gate)?.kind {
                opaque.insert((op.gate.to_lowercase(), op.wires.len()));
            }
        }
        for (name, arity) in &opaque {
            let args: Vec<String> = (0..*arity).map(|i| format!("q{i}")).collect();
            writeln!(out, "opaque {name} {};", args.join(",")).unwrap();
        }
        writeln!(out, "qreg q[{}];", self.qubits).unwrap();
        for op in &self.ops {
            let args: Vec<String> = op.wires.iter().map(|w| format!("q[{w}]")).collect();
            if op.gate == SWAP {
                writeln!(out, "swap {};", args.join(",")).unwrap();
                continue;
            }
            let g = gs.get(&op.gate)?;
            let name = match (&g.kind, op.gate.as_str()) {
                (GateKind::Decrement { .. }, n) => n.to_lowercase(),
                (_, "H") => "h".into(),
                (_, "X") => "x".into(),
                (_, "Z") => "z".into(),
                (_, "S") => "s".into(),
                (_, "Sdg") => "sdg".into(),
                (_, "T") => "t".into(),
                (_, "Tdg") => "tdg".into(),
                (_, "CX") => "cx".into(),
                (_, "CCX") => "ccx".into(),
                (_, "E") => "u1(2*pi/3)".into(),
                (_, n) => match n.strip_prefix("CR").and_then(|k| k.parse::<u32>().ok()) {
                    Some(k) => format!("cu1(2*pi/{})", 1u64 << k),
                    None => return Err(Error::Unsupported(format!("no QASM name for `{n}`"))),
                },
            };
            writeln!(out, "{name} {};", args.join(",")).unwrap();
        }
        Ok(out)
    }
}

fn pad(left: usize, c: Circuit, right: usize) -> Circuit {
    let c = if left > 1 { Circuit::par(Circuit::identity(left), c) } else { c };
    if right > 1 {
        Circuit::par(c, Circuit::identity(right))
    } else {
        c
    }
}

/// Embeds a gate acting on `wires.len()` qubits into an `n`-qubit register as P⁻¹(G⊗I)P.
pub fn place(g: &Circuit, wires: &[usize], n: usize) -> Result<Circuit> {
    let k = wires.len();
    if g.dim() != 1 << k {
        return Err(Error::DimensionMismatch { left: g.dim(), right: 1 << k });
    }
    let distinct: BTreeSet<_> = wires.iter().collect();
    if distinct.len() != k || wires.iter().any(|&w| w >= n) {
        return Err(Error::ShapeMismatch(format!("bad wires {wires:?} on {n} qubits")));
    }
    let mut order: Vec<usize> = (0..n).collect();
    // (t, p): move the qubit at position p up to position t.
    let mut moves = Vec::new();
    for (t, &w) in wires.iter().enumerate() {
        let p = order.iter().position(|&x| x == w).unwrap();
        if p != t {
            let q = order.remove(p);
            order.insert(t, q);
            moves.push((t, p));
        }
    }
    let body = pad(1, g.clone(), 1 << (n - k));
    if moves.is_empty() {
        return Ok(body);
    }
    let fwd: Vec<Circuit> = moves
        .iter()
        .map(|&(t, p)| pad(1 << t, Circuit::swap(1 << (p - t), 2), 1 << (n - p - 1)))
        .collect();
    let back: Vec<Circuit> = moves
        .iter()
        .rev()
        .map(|&(t, p)| pad(1 << t, Circuit::swap(2, 1 << (p - t)), 1 << (n - p - 1)))
        .collect();
    let mut all = fwd;
    all.push(body);
    all.extend(back);
    Circuit::sequence(&all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmat::ExactMatrix;

    #[test]
    fn placement_matches_direct_construction() {
        let gs = GateSet::xccx();
        let cx = Circuit::gate(&gs, "CX").unwrap();
        // control on wire 2, target on wire 0, among 3 qubits.
        let c = place(&cx, &[2, 0], 3).unwrap();
        let m = c.evaluate(&gs).unwrap();
        let expect = ExactMatrix::from_fn(8, 8, |r, col| {
            let img = if col & 1 == 1 { col ^ 4 } else { col };
            if r == img {
                crate::numring::CycElement::one()
            } else {
                crate::numring::CycElement::zero()
            }
        });
        assert_eq!(m, expect);
    }

    #[test]
    fn program_roundtrip() {
        let gs = GateSet::xccx();
        let mut p = Program::new(3);
        p.push("CCX", &[2, 1, 0]);
        p.push("X", &[1]);
        let c = p.to_circuit(&gs).unwrap();
        assert_eq!(c.leaves(), vec!["CCX", "X"]);
        let q = p.to_qasm(&gs).unwrap();
        assert!(q.contains("ccx q[2],q[1],q[0];"));
        assert!(q.contains("qreg q[3];"));
    }
}
