//! Circuits as words over a gate set, and their evaluation.

mod gates;
mod layout;

pub use gates::{controlled_phase, phase_matrix, std_gate, std_matrix, Gate, GateKind, GateSet};
pub use layout::{place, PlacedOp, Program, SWAP};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmat::ExactMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Identity(usize),
    Swap(usize, usize),
    Gate { name: String, dim: usize },
    /// C∘D: D is applied first.
    Seq(Circuit, Circuit),
    Par(Circuit, Circuit),
}

/// A circuit tree. Equality is structural, never by evaluation.
#[derive(Clone, PartialEq, Eq)]
pub struct Circuit {
    node: Arc<Node>,
    dim: usize,
}

impl Circuit {
    pub fn identity(n: usize) -> Self {
        Circuit { node: Arc::new(Node::Identity(n)), dim: n }
    }

    pub fn swap(m: usize, n: usize) -> Self {
        Circuit { node: Arc::new(Node::Swap(m, n)), dim: m * n }
    }

    pub fn gate(gs: &GateSet, name: &str) -> Result<Self> {
        let g = gs.get(name)?;
        Ok(Self::gate_ref(name, g.dim))
    }

    /// Leaf referring to a gate by name without consulting a gate set.
    pub fn gate_ref(name: impl Into<String>, dim: usize) -> Self {
        Circuit { node: Arc::new(Node::Gate { name: name.into(), dim }), dim }
    }

    pub fn seq(c: Circuit, d: Circuit) -> Result<Self> {
        if c.dim != d.dim {
            return Err(Error::DimensionMismatch { left: c.dim, right: d.dim });
        }
        let dim = c.dim;
        Ok(Circuit { node: Arc::new(Node::Seq(c, d)), dim })
    }

    pub fn par(c: Circuit, d: Circuit) -> Self {
        let dim = c.dim * d.dim;
        Circuit { node: Arc::new(Node::Par(c, d)), dim }
    }

    /// Composes circuits given in time order (first element applied first) as a balanced tree.
    pub fn sequence(ops: &[Circuit]) -> Result<Self> {
        match ops {
            [] => Err(Error::ShapeMismatch("empty sequence".into())),
            [c] => Ok(c.clone()),
            _ => {
                let (early, late) = ops.split_at(ops.len() / 2);
                Self::seq(Self::sequence(late)?, Self::sequence(early)?)
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn node(&self) -> &Node {
        &self.node
    }

    /// Gate leaves in application order.
    pub fn leaves(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a str>) {
        match &*self.node {
            Node::Gate { name, .. } => out.push(name),
            Node::Seq(c, d) => {
                d.collect_leaves(out);
                c.collect_leaves(out);
            }
            Node::Par(c, d) => {
                c.collect_leaves(out);
                d.collect_leaves(out);
            }
            Node::Identity(_) | Node::Swap(..) => {}
        }
    }

    pub fn gate_counts(&self) -> BTreeMap<String, u64> {
        let mut m = BTreeMap::new();
        for l in self.leaves() {
            *m.entry(l.to_string()).or_insert(0) += 1;
        }
        m
    }

    /// Σ weight(g) over gate leaves; missing names weigh 0.
    pub fn gate_count(&self, weights: &BTreeMap<String, u64>) -> u64 {
        self.leaves().iter().map(|l| weights.get(*l).copied().unwrap_or(0)).sum()
    }

    pub fn t_count(&self) -> u64 {
        let w: BTreeMap<String, u64> = [("T".to_string(), 1), ("Tdg".to_string(), 1)].into();
        self.gate_count(&w)
    }

    pub fn evaluate(&self, gs: &GateSet) -> Result<ExactMatrix> {
        match &*self.node {
            Node::Identity(n) => Ok(ExactMatrix::identity(*n)),
            Node::Swap(m, n) => Ok(ExactMatrix::swap_matrix(*m, *n)),
            Node::Gate { name, dim } => {
                let g = gs.get(name)?;
                if g.dim != *dim {
                    return Err(Error::DimensionMismatch { left: *dim, right: g.dim });
                }
                Ok((*g.evaluation()).clone())
            }
            Node::Seq(c, d) => c.evaluate(gs)?.mul(&d.evaluate(gs)?),
            Node::Par(c, d) => Ok(c.evaluate(gs)?.tensor(&d.evaluate(gs)?)),
        }
    }

    /// Checks every leaf against the gate set.
    pub fn check(&self, gs: &GateSet) -> Result<()> {
        match &*self.node {
            Node::Gate { name, dim } => {
                let g = gs.get(name)?;
                if g.dim != *dim {
                    return Err(Error::DimensionMismatch { left: *dim, right: g.dim });
                }
                Ok(())
            }
            Node::Seq(c, d) | Node::Par(c, d) => {
                c.check(gs)?;
                d.check(gs)
            }
            _ => Ok(()),
        }
    }

    pub fn parse(text: &str, gs: &GateSet) -> Result<Self> {
        let toks = tokenize(text);
        let mut pos = 0;
        let c = parse_expr(&toks, &mut pos, gs)?;
        if pos != toks.len() {
            return Err(Error::Parse(format!("trailing input after token {pos}")));
        }
        Ok(c)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_expr()).expect("plain data")
    }

    pub fn from_json(v: &serde_json::Value, gs: &GateSet) -> Result<Self> {
        let e: Expr = serde_json::from_value(v.clone())?;
        e.resolve(gs)
    }

    /// Accepts either the S-expression or the JSON form.
    pub fn parse_any(text: &str, gs: &GateSet) -> Result<Self> {
        let t = text.trim_start();
        if t.starts_with('{') {
            Self::from_json(&serde_json::from_str(t)?, gs)
        } else {
            Self::parse(t, gs)
        }
    }

    fn to_expr(&self) -> Expr {
        match &*self.node {
            Node::Identity(n) => Expr::Id(*n),
            Node::Swap(m, n) => Expr::Swap(*m, *n),
            Node::Gate { name, .. } => Expr::Gate(name.clone()),
            Node::Seq(c, d) => Expr::Seq(Box::new(c.to_expr()), Box::new(d.to_expr())),
            Node::Par(c, d) => Expr::Par(Box::new(c.to_expr()), Box::new(d.to_expr())),
        }
    }
}

impl Serialize for Circuit {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_expr().serialize(s)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Expr {
    Id(usize),
    Swap(usize, usize),
    Gate(String),
    Seq(Box<Expr>, Box<Expr>),
    Par(Box<Expr>, Box<Expr>),
}

impl Expr {
    fn resolve(self, gs: &GateSet) -> Result<Circuit> {
        Ok(match self {
            Expr::Id(n) => Circuit::identity(positive(n)?),
            Expr::Swap(m, n) => Circuit::swap(positive(m)?, positive(n)?),
            Expr::Gate(g) => Circuit::gate(gs, &g)?,
            Expr::Seq(c, d) => Circuit::seq(c.resolve(gs)?, d.resolve(gs)?)?,
            Expr::Par(c, d) => Circuit::par(c.resolve(gs)?, d.resolve(gs)?),
        })
    }
}

fn positive(n: usize) -> Result<usize> {
    if n == 0 {
        Err(Error::Parse("dimensions must be positive".into()))
    } else {
        Ok(n)
    }
}

fn tokenize(text: &str) -> Vec<String> {
    text.replace('(', " ( ").replace(')', " ) ").split_whitespace().map(str::to_string).collect()
}

fn identity_dim(tok: &str) -> Option<usize> {
    let rest = tok.strip_prefix('I')?;
    if rest.is_empty() || !rest.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    rest.parse().ok()
}

fn parse_expr(toks: &[String], pos: &mut usize, gs: &GateSet) -> Result<Circuit> {
    let tok = toks.get(*pos).ok_or_else(|| Error::Parse("unexpected end of input".into()))?;
    *pos += 1;
    if tok == ")" {
        return Err(Error::Parse("unexpected `)`".into()));
    }
    if tok != "(" {
        if let Some(n) = identity_dim(tok) {
            return Ok(Circuit::identity(positive(n)?));
        }
        return Circuit::gate(gs, tok);
    }
    let head = toks.get(*pos).ok_or_else(|| Error::Parse("unexpected end of input".into()))?.clone();
    *pos += 1;
    let c = match head.as_str() {
        "swap" => {
            let mut num = || -> Result<usize> {
                let t = toks.get(*pos).ok_or_else(|| Error::Parse("unexpected end of input".into()))?;
                *pos += 1;
                positive(t.parse().map_err(|_| Error::Parse(format!("bad dimension `{t}`")))?)
            };
            let m = num()?;
            let n = num()?;
            Circuit::swap(m, n)
        }
        "seq" | "par" => {
            let a = parse_expr(toks, pos, gs)?;
            let b = parse_expr(toks, pos, gs)?;
            if head == "seq" {
                Circuit::seq(a, b)?
            } else {
                Circuit::par(a, b)
            }
        }
        other => return Err(Error::Parse(format!("unknown form `{other}`"))),
    };
    match toks.get(*pos) {
        Some(t) if t == ")" => {
            *pos += 1;
            Ok(c)
        }
        _ => Err(Error::Parse(format!("expected `)` after ({head} ...)"))),
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.node {
            Node::Identity(n) => write!(f, "I{n}"),
            Node::Swap(m, n) => write!(f, "(swap {m} {n})"),
            Node::Gate { name, .. } => write!(f, "{name}"),
            Node::Seq(c, d) => write!(f, "(seq {c} {d})"),
            Node::Par(c, d) => write!(f, "(par {c} {d})"),
        }
    }
}

impl fmt::Debug for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Circuit[{}] {}", self.dim, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let gs = GateSet::clifford_t();
        let c = Circuit::parse("(seq (par I2 H) CX)", &gs).unwrap();
        assert_eq!(c.dim(), 4);
        assert_eq!(c.to_string(), "(seq (par I2 H) CX)");
        assert_eq!(
            Circuit::parse("(seq H CX)", &gs).unwrap_err(),
            Error::DimensionMismatch { left: 2, right: 4 }
        );
        assert!(matches!(Circuit::parse("(seq H Q)", &gs), Err(Error::UnknownGate(_))));
        assert!(Circuit::parse("(seq H H", &gs).is_err());
        assert!(Circuit::parse("H H", &gs).is_err());
    }

    #[test]
    fn json_form() {
        let gs = GateSet::clifford_t();
        let c = Circuit::parse("(par (swap 2 2) (seq H T))", &gs).unwrap();
        let j = c.to_json();
        assert_eq!(j.to_string(), r#"{"par":[{"swap":[2,2]},{"seq":[{"gate":"H"},{"gate":"T"}]}]}"#);
        assert_eq!(Circuit::from_json(&j, &gs).unwrap(), c);
        assert_eq!(Circuit::parse_any(&j.to_string(), &gs).unwrap(), c);
    }

    #[test]
    fn x_from_h_and_t() {
        let gs = GateSet::clifford_t();
        let x = Circuit::parse("(seq H (seq T (seq T (seq T (seq T H)))))", &gs).unwrap();
        assert_eq!(x.evaluate(&gs).unwrap(), ExactMatrix::from_ints(&[&[0, 1], &[1, 0]]));
    }

    #[test]
    fn counts() {
        let gs = GateSet::clifford_t();
        let c = Circuit::parse("(seq (seq (par I2 H) CX) (par T T))", &gs).unwrap();
        assert_eq!(c.t_count(), 2);
        assert_eq!(Circuit::identity(8).t_count(), 0);
        assert_eq!(c.leaves(), vec!["T", "T", "CX", "H"]);
    }

    #[test]
    fn sequence_is_time_ordered() {
        let gs = GateSet::clifford_t();
        let h = Circuit::gate(&gs, "H").unwrap();
        let t = Circuit::gate(&gs, "T").unwrap();
        let c = Circuit::sequence(&[h.clone(), t.clone(), t.clone()]).unwrap();
        let expect = t.evaluate(&gs).unwrap().pow(2).unwrap().mul(&h.evaluate(&gs).unwrap()).unwrap();
        assert_eq!(c.evaluate(&gs).unwrap(), expect);
        assert_eq!(c.leaves(), vec!["H", "T", "T"]);
    }

    #[test]
    fn distinct_words_same_matrix() {
        let gs = GateSet::clifford_t();
        let a = Circuit::parse("(par H T)", &gs).unwrap();
        let b = Circuit::parse("(seq (par H I2) (par I2 T))", &gs).unwrap();
        assert_ne!(a, b);
        assert_eq!(a.evaluate(&gs).unwrap(), b.evaluate(&gs).unwrap());
    }
}
