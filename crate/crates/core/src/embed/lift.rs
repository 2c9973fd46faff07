use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::PreEmbedding;
use crate::circuit::{Circuit, Gate, GateSet, Node};
use crate::error::{Error, Result};
use crate::exactmat::ExactMatrix;
use crate::numring::RingTower;

#[derive(Clone, Debug)]
pub struct GateEmbedding {
    pub source: Arc<Gate>,
    pub template: Circuit,
}

/// Per-gate templates sharing one projector Π.
#[derive(Clone, Debug)]
pub struct GateSetEmbedding {
    pub source: GateSet,
    pub target: GateSet,
    pub k: usize,
    pub projector: ExactMatrix,
    pub gates: BTreeMap<String, GateEmbedding>,
}

impl GateSetEmbedding {
    /// Templates must evaluate exactly to Φ(e(G)).
    pub fn from_pre_embedding(
        pe: &PreEmbedding,
        source: GateSet,
        target: GateSet,
        templates: BTreeMap<String, Circuit>,
    ) -> Result<Self> {
        let mut gates = BTreeMap::new();
        for (name, t) in templates {
            let g = source.get(&name)?.clone();
            t.check(&target)?;
            if t.dim() != g.dim * pe.dim() {
                return Err(Error::DimensionMismatch { left: t.dim(), right: g.dim * pe.dim() });
            }
            if t.evaluate(&target)? != pe.phi(&g.evaluation())? {
                return Err(Error::TemplateMismatch(name));
            }
            gates.insert(name, GateEmbedding { source: g, template: t });
        }
        Ok(GateSetEmbedding { source, target, k: pe.dim(), projector: pe.projector.clone(), gates })
    }

    /// Templates only need to satisfy e(φ)(I⊗Π) = e(G)⊗Π.
    pub fn catalytic(
        source: GateSet,
        target: GateSet,
        projector: ExactMatrix,
        templates: BTreeMap<String, Circuit>,
    ) -> Result<Self> {
        if !projector.is_orthogonal_projector()? || projector.is_zero() {
            return Err(Error::Unsupported("catalyst projector must be a nonzero orthogonal projector".into()));
        }
        let k = projector.rows();
        let mut gates = BTreeMap::new();
        for (name, t) in templates {
            let g = source.get(&name)?.clone();
            t.check(&target)?;
            if t.dim() != g.dim * k {
                return Err(Error::DimensionMismatch { left: t.dim(), right: g.dim * k });
            }
            let lhs = t.evaluate(&target)?.mul(&ExactMatrix::identity(g.dim).tensor(&projector))?;
            if lhs != g.evaluation().tensor(&projector) {
                return Err(Error::TemplateMismatch(name));
            }
            gates.insert(name, GateEmbedding { source: g, template: t });
        }
        Ok(GateSetEmbedding { source, target, k, projector, gates })
    }

    pub fn lift(&self, c: &Circuit) -> Result<Circuit> {
        lift_circuit(self, c)
    }

    /// e(lift(C))(I⊗Π) = e(C)⊗Π.
    pub fn check_circuit(&self, c: &Circuit) -> Result<bool> {
        let lifted = self.lift(c)?.evaluate(&self.target)?;
        let ip = ExactMatrix::identity(c.dim()).tensor(&self.projector);
        Ok(lifted.mul(&ip)? == c.evaluate(&self.source)?.tensor(&self.projector))
    }
}

/// Lifts a source circuit by structural recursion; parallel composition conjugates by swaps
/// so that both halves meet the catalyst register.
pub fn lift_circuit(emb: &GateSetEmbedding, c: &Circuit) -> Result<Circuit> {
    let k = emb.k;
    Ok(match c.node() {
        Node::Identity(n) => Circuit::par(Circuit::identity(*n), Circuit::identity(k)),
        Node::Swap(m, n) => Circuit::par(Circuit::swap(*m, *n), Circuit::identity(k)),
        Node::Gate { name, .. } => {
            emb.gates.get(name).ok_or_else(|| Error::UncoveredGate(name.clone()))?.template.clone()
        }
        Node::Seq(a, b) => Circuit::seq(lift_circuit(emb, a)?, lift_circuit(emb, b)?)?,
        Node::Par(a, b) => {
            let (m, n) = (a.dim(), b.dim());
            let la = lift_circuit(emb, a)?;
            let lb = lift_circuit(emb, b)?;
            let im = || Circuit::identity(m);
            Circuit::sequence(&[
                Circuit::par(im(), Circuit::swap(n, k)),
                Circuit::par(la, Circuit::identity(n)),
                Circuit::par(im(), Circuit::swap(k, n)),
                Circuit::par(im(), lb),
            ])?
        }
    })
}

/// Serialized pre-embedding with circuit templates.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Bundle {
    pub tower: RingTower,
    pub lambda: ExactMatrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projector: Option<ExactMatrix>,
    #[serde(default)]
    pub source_gate_set: Option<String>,
    #[serde(default)]
    pub target_gate_set: Option<String>,
    #[serde(default)]
    pub templates: BTreeMap<String, String>,
}

impl Bundle {
    pub fn from_pre_embedding(pe: &PreEmbedding) -> Self {
        Bundle {
            tower: pe.tower.clone(),
            lambda: pe.lambda.clone(),
            projector: Some(pe.projector.clone()),
            source_gate_set: None,
            target_gate_set: None,
            templates: BTreeMap::new(),
        }
    }

    pub fn pre_embedding(&self) -> Result<PreEmbedding> {
        let pe = PreEmbedding::new(self.tower.clone(), self.lambda.clone())?;
        if let Some(p) = &self.projector {
            if *p != pe.projector {
                return Err(Error::Catalog { id: "bundle".into(), reason: "stored projector differs".into() });
            }
        }
        Ok(pe)
    }

    pub fn gate_set_embedding(&self) -> Result<(PreEmbedding, Option<GateSetEmbedding>)> {
        let pe = self.pre_embedding()?;
        let (Some(s), Some(t)) = (&self.source_gate_set, &self.target_gate_set) else {
            return Ok((pe, None));
        };
        let source = GateSet::by_name(s)?;
        let target = GateSet::by_name(t)?;
        let templates = self
            .templates
            .iter()
            .map(|(g, text)| Ok((g.clone(), Circuit::parse_any(text, &target)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let emb = GateSetEmbedding::from_pre_embedding(&pe, source, target, templates)?;
        Ok((pe, Some(emb)))
    }
}
