use std::collections::BTreeMap;

use super::{Catalyst, CompiledProgram};
use crate::circuit::{Circuit, GateSet, Program};
use crate::companion::Catalog;
use crate::embed::{GateSetEmbedding, PreEmbedding};
use crate::error::Result;

pub const EGATE_CATALOG_ID: &str = "omega3/Domega8";

/// T-count of the hand-optimized controlled-Λ circuit.
pub const EGATE_T_COUNT_OPTIMIZED: u64 = 4;

/// Controlled-(ω₈⁵HS) on wires (control 0, catalyst 1) over Clifford+T.
pub fn e_template() -> Program {
    let mut p = Program::new(2);
    // controlled-S
    p.push("CX", &[0, 1]);
    p.push("Tdg", &[1]);
    p.push("CX", &[0, 1]);
    p.push("T", &[0]);
    p.push("T", &[1]);
    // controlled-H
    p.push("Sdg", &[1]);
    p.push("H", &[1]);
    p.push("Tdg", &[1]);
    p.push("CX", &[0, 1]);
    p.push("T", &[1]);
    p.push("H", &[1]);
    p.push("S", &[1]);
    // ω₈⁵ on the control
    p.push("T", &[0]);
    p.push("Z", &[0]);
    p
}

/// Φ(E) as a two-qubit program, with ψ on the catalyst wire.
pub fn compile_e(catalog: &Catalog) -> Result<CompiledProgram> {
    let entry = catalog.get(EGATE_CATALOG_ID)?;
    entry.verify()?;
    CompiledProgram::assemble(
        "E = diag(1, w3) on one qubit".into(),
        GateSet::clifford_t_ext(),
        e_template(),
        vec![0],
        vec![Catalyst::fixed("psi", vec![1], entry.catalyst_vector)],
        Some(EGATE_T_COUNT_OPTIMIZED),
    )
}

/// Clifford+T+E into Clifford+T: Clifford+T gates pass through, E uses the template.
pub fn egate_embedding(catalog: &Catalog) -> Result<(PreEmbedding, GateSetEmbedding)> {
    let pe = catalog.get(EGATE_CATALOG_ID)?.verify()?;
    let target = GateSet::clifford_t_ext();
    let mut templates = BTreeMap::new();
    for name in ["H", "T", "CX"] {
        let g = Circuit::gate(&target, name)?;
        templates.insert(name.to_string(), Circuit::par(g, Circuit::identity(2)));
    }
    templates.insert("E".to_string(), e_template().to_circuit(&target)?);
    let gse = GateSetEmbedding::from_pre_embedding(&pe, GateSet::clifford_t_e(), target, templates)?;
    Ok((pe, gse))
}
