//! Catalytic compilers for the order-3 phase gate and the quantum Fourier transform.

mod cost;
mod egate;
mod expand;
mod qft;

pub use cost::{cost_model, log2_approx, significant, CostKind, CostReport, REPORT_DIGITS};
pub use egate::{compile_e, e_template, egate_embedding, EGATE_CATALOG_ID, EGATE_T_COUNT_OPTIMIZED};
pub use expand::{classical_run, expand_decrement, mcx};
pub use qft::{build_qft, compile_qft, qft_matrix};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, GateSet, PlacedOp, Program};
use crate::error::{Error, Result};
use crate::exactmat::ExactMatrix;
use crate::numring::CycElement;

/// A catalyst register. Borrowed scratch wires carry no vector: any state must be restored.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Catalyst {
    pub label: String,
    pub wires: Vec<usize>,
    pub vector: Option<Vec<CycElement>>,
    pub norm_sq: Option<CycElement>,
}

impl Catalyst {
    pub fn fixed(label: impl Into<String>, wires: Vec<usize>, vector: Vec<CycElement>) -> Self {
        let norm_sq = ExactMatrix::inner(&vector, &vector);
        Catalyst { label: label.into(), wires, vector: Some(vector), norm_sq: Some(norm_sq) }
    }

    pub fn borrowed(label: impl Into<String>, wire: usize) -> Self {
        Catalyst { label: label.into(), wires: vec![wire], vector: None, norm_sq: None }
    }

    pub fn is_borrowed(&self) -> bool {
        self.vector.is_none()
    }
}

/// Output of a compiler: a program on data wires followed by catalyst wires.
#[derive(Clone, Debug)]
pub struct CompiledProgram {
    pub source_description: String,
    pub gate_set: GateSet,
    pub program: Program,
    pub circuit: Circuit,
    pub data_wires: Vec<usize>,
    pub catalysts: Vec<Catalyst>,
    /// T and T† gates in the emitted program.
    pub t_count: u64,
    /// Recorded T-count of a hand-optimized version, when one is known.
    pub t_count_optimized: Option<u64>,
}

impl CompiledProgram {
    pub(crate) fn assemble(
        source_description: String,
        gate_set: GateSet,
        program: Program,
        data_wires: Vec<usize>,
        catalysts: Vec<Catalyst>,
        t_count_optimized: Option<u64>,
    ) -> Result<Self> {
        let circuit = program.to_circuit(&gate_set)?;
        let t_count = circuit.t_count();
        let p = CompiledProgram {
            source_description,
            gate_set,
            program,
            circuit,
            data_wires,
            catalysts,
            t_count,
            t_count_optimized,
        };
        p.check_layout()?;
        Ok(p)
    }

    /// Data wires come first, then catalysts on consecutive wires, borrowed wires last.
    pub fn check_layout(&self) -> Result<()> {
        let mut expect = 0;
        for &w in &self.data_wires {
            if w != expect {
                return Err(Error::ShapeMismatch(format!("data wire {w} out of order")));
            }
            expect += 1;
        }
        let mut seen_borrowed = false;
        for c in &self.catalysts {
            if seen_borrowed && !c.is_borrowed() {
                return Err(Error::ShapeMismatch("borrowed wires must come last".into()));
            }
            seen_borrowed |= c.is_borrowed();
            if let Some(v) = &c.vector {
                if v.len() != 1 << c.wires.len() {
                    return Err(Error::ShapeMismatch(format!("catalyst {} has the wrong length", c.label)));
                }
            }
            for &w in &c.wires {
                if w != expect {
                    return Err(Error::ShapeMismatch(format!("catalyst wire {w} out of order")));
                }
                expect += 1;
            }
        }
        if expect != self.program.qubits {
            return Err(Error::ShapeMismatch(format!("{expect} wires laid out, program has {}", self.program.qubits)));
        }
        Ok(())
    }

    pub fn borrowed_wires(&self) -> usize {
        self.catalysts.iter().filter(|c| c.is_borrowed()).map(|c| c.wires.len()).sum()
    }

    /// Tensor product of the catalysts in wire order, with borrowed wires in basis state `borrowed`.
    pub fn catalyst_state(&self, borrowed: usize) -> Vec<CycElement> {
        let mut state = vec![CycElement::one()];
        let b = self.borrowed_wires();
        for c in self.catalysts.iter().filter(|c| !c.is_borrowed()) {
            let v = c.vector.as_ref().unwrap();
            state = state.iter().flat_map(|a| v.iter().map(move |x| a * x)).collect();
        }
        let mut out = vec![CycElement::zero(); state.len() << b];
        for (i, a) in state.into_iter().enumerate() {
            out[(i << b) | borrowed] = a;
        }
        out
    }

    pub fn layout(&self) -> BTreeMap<String, Vec<usize>> {
        let mut m = BTreeMap::new();
        m.insert("data".to_string(), self.data_wires.clone());
        for c in &self.catalysts {
            m.insert(c.label.clone(), c.wires.clone());
        }
        m
    }

    pub fn to_qasm(&self) -> Result<String> {
        self.program.to_qasm(&self.gate_set)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "source": self.source_description,
            "gate_set": self.gate_set.name,
            "qubits": self.program.qubits,
            "data_wires": self.data_wires,
            "catalysts": self.catalysts,
            "layout": self.layout(),
            "ops": self.program.ops,
            "gate_counts": self.program.gate_counts(),
            "t_count": self.t_count,
            "t_count_optimized": self.t_count_optimized,
            "circuit": self.circuit.to_json(),
        })
    }

    /// Rebuilds a program from `to_json` output; the circuit is regenerated from the ops.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        #[derive(Deserialize)]
        struct Stored {
            source: String,
            gate_set: String,
            qubits: usize,
            data_wires: Vec<usize>,
            catalysts: Vec<Catalyst>,
            ops: Vec<PlacedOp>,
            t_count_optimized: Option<u64>,
        }
        let s: Stored = serde_json::from_value(v.clone())?;
        for c in &s.catalysts {
            if let (Some(v), Some(n)) = (&c.vector, &c.norm_sq) {
                if ExactMatrix::inner(v, v) != *n {
                    return Err(Error::ShapeMismatch(format!("stored norm of {} is wrong", c.label)));
                }
            }
        }
        Self::assemble(
            s.source,
            GateSet::by_name(&s.gate_set)?,
            Program { qubits: s.qubits, ops: s.ops },
            s.data_wires,
            s.catalysts,
            s.t_count_optimized,
        )
    }
}
