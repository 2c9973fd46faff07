use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::exactmat::ExactMatrix;
use crate::numring::CycElement;

#[derive(Clone, Debug)]
pub enum GateKind {
    Matrix(Arc<ExactMatrix>),
    /// |c⟩|B⟩ ↦ |c⟩|B - [all controls set] mod 2^bits⟩, controls first, B big-endian.
    Decrement { controls: u32, bits: u32 },
}

#[derive(Debug)]
pub struct Gate {
    pub name: String,
    pub dim: usize,
    pub kind: GateKind,
    cache: OnceLock<Arc<ExactMatrix>>,
}

impl Gate {
    pub fn from_matrix(name: impl Into<String>, m: ExactMatrix) -> Result<Self> {
        let name = name.into();
        if !m.is_square() || !m.is_unitary()? {
            return Err(Error::NotUnitary(name));
        }
        let dim = m.rows();
        let m = Arc::new(m);
        let cache = OnceLock::new();
        let _ = cache.set(m.clone());
        Ok(Gate { name, dim, kind: GateKind::Matrix(m), cache })
    }

    pub fn decrement(name: impl Into<String>, controls: u32, bits: u32) -> Self {
        Gate {
            name: name.into(),
            dim: 1usize << (controls + bits),
            kind: GateKind::Decrement { controls, bits },
            cache: OnceLock::new(),
        }
    }

    /// For permutation gates: image index of each basis index.
    pub fn permutation(&self) -> Option<Vec<usize>> {
        match self.kind {
            GateKind::Decrement { controls, bits } => {
                let modulus = 1usize << bits;
                let all = (1usize << controls) - 1;
                Some(
                    (0..self.dim)
                        .map(|i| {
                            let c = i >> bits;
                            let b = i & (modulus - 1);
                            let b2 = if c == all { (b + modulus - 1) % modulus } else { b };
                            (c << bits) | b2
                        })
                        .collect(),
                )
            }
            GateKind::Matrix(_) => None,
        }
    }

    pub fn evaluation(&self) -> Arc<ExactMatrix> {
        self.cache
            .get_or_init(|| {
                let perm = self.permutation().expect("matrix gates are cached at construction");
                let d = self.dim;
                let mut e = vec![CycElement::zero(); d * d];
                for (src, dst) in perm.into_iter().enumerate() {
                    e[dst * d + src] = CycElement::one();
                }
                Arc::new(ExactMatrix::new(d, d, e).expect("positive shape"))
            })
            .clone()
    }
}

#[derive(Clone, Debug)]
pub struct GateSet {
    pub name: String,
    gates: BTreeMap<String, Arc<Gate>>,
}

impl GateSet {
    pub fn new(name: impl Into<String>) -> Self {
        GateSet { name: name.into(), gates: BTreeMap::new() }
    }

    pub fn insert(&mut self, g: Gate) -> Result<()> {
        if self.gates.contains_key(&g.name) {
            return Err(Error::Parse(format!("duplicate gate `{}`", g.name)));
        }
        self.gates.insert(g.name.clone(), Arc::new(g));
        Ok(())
    }

    pub fn with(mut self, g: Gate) -> Self {
        self.insert(g).expect("unique gate names");
        self
    }

    pub fn get(&self, name: &str) -> Result<&Arc<Gate>> {
        self.gates.get(name).ok_or_else(|| Error::UnknownGate(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.gates.contains_key(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &String> {
        self.gates.keys()
    }

    pub fn gates(&self) -> impl Iterator<Item = &Arc<Gate>> {
        self.gates.values()
    }

    pub fn union(&self, other: &GateSet, name: impl Into<String>) -> Self {
        let mut out = self.clone();
        out.name = name.into();
        for (k, g) in &other.gates {
            out.gates.entry(k.clone()).or_insert_with(|| g.clone());
        }
        out
    }

    pub fn clifford_t() -> Self {
        GateSet::new("clifford_t").with(std_gate("H")).with(std_gate("T")).with(std_gate("CX"))
    }

    /// Clifford+T with the common derived gates registered as primitives.
    pub fn clifford_t_ext() -> Self {
        let mut g = Self::clifford_t();
        g.name = "clifford_t_ext".into();
        for n in ["S", "Sdg", "Z", "Tdg", "X"] {
            g.insert(std_gate(n)).unwrap();
        }
        g
    }

    /// Clifford+T together with E = diag(1, ω₃).
    pub fn clifford_t_e() -> Self {
        let mut g = Self::clifford_t_ext();
        g.name = "clifford_t_e".into();
        g.insert(std_gate("E")).unwrap();
        g
    }

    pub fn xccx() -> Self {
        GateSet::new("xccx").with(std_gate("X")).with(std_gate("CX")).with(std_gate("CCX"))
    }

    /// {H} ∪ {CR_k : 2 ≤ k ≤ n}.
    pub fn qft_source(n: u32) -> Self {
        let mut g = GateSet::new(format!("qft_source:{n}")).with(std_gate("H"));
        for k in 2..=n.max(2) {
            g.insert(controlled_phase(k)).unwrap();
        }
        g
    }

    /// {H, X, CX, CCX} ∪ {CDEC_k, CCDEC_k : 1 ≤ k ≤ n}.
    pub fn qft_target(n: u32) -> Self {
        let mut g = GateSet::new(format!("qft_target:{n}"));
        for name in ["H", "X", "CX", "CCX"] {
            g.insert(std_gate(name)).unwrap();
        }
        for k in 1..=n.max(1) {
            g.insert(Gate::decrement(format!("CDEC{k}"), 1, k)).unwrap();
            g.insert(Gate::decrement(format!("CCDEC{k}"), 2, k)).unwrap();
        }
        g
    }

    /// Registry lookup: `clifford_t`, `clifford_t_ext`, `clifford_t_e`, `xccx`, `qft_source:n`, `qft_target:n`.
    pub fn by_name(name: &str) -> Result<Self> {
        let parse_n = |s: &str| s.parse::<u32>().map_err(|_| Error::Parse(format!("bad gate set `{name}`")));
        match name.split_once(':') {
            Some(("qft_source", n)) => Ok(Self::qft_source(parse_n(n)?)),
            Some(("qft_target", n)) => Ok(Self::qft_target(parse_n(n)?)),
            None => match name {
                "clifford_t" => Ok(Self::clifford_t()),
                "clifford_t_ext" => Ok(Self::clifford_t_ext()),
                "clifford_t_e" => Ok(Self::clifford_t_e()),
                "xccx" => Ok(Self::xccx()),
                _ => Err(Error::Parse(format!("unknown gate set `{name}`"))),
            },
            _ => Err(Error::Parse(format!("unknown gate set `{name}`"))),
        }
    }
}

fn c(v: i64) -> CycElement {
    CycElement::from_int(v)
}

/// Matrix of a named standard gate.
pub fn std_matrix(name: &str) -> Option<ExactMatrix> {
    let w = CycElement::omega8();
    let m = match name {
        "H" => ExactMatrix::from_ints(&[&[1, 1], &[1, -1]]).scale(&CycElement::sqrt2().inv().unwrap()),
        "X" => ExactMatrix::from_ints(&[&[0, 1], &[1, 0]]),
        "Z" => ExactMatrix::diag(&[c(1), c(-1)]),
        "S" => ExactMatrix::diag(&[c(1), CycElement::i()]),
        "Sdg" => ExactMatrix::diag(&[c(1), -CycElement::i()]),
        "T" => ExactMatrix::diag(&[c(1), w]),
        "Tdg" => ExactMatrix::diag(&[c(1), w.conj()]),
        "E" => ExactMatrix::diag(&[c(1), CycElement::omega3()]),
        "CX" => ExactMatrix::identity(2).direct_sum(&std_matrix("X")?),
        "CCX" => ExactMatrix::identity(6).direct_sum(&std_matrix("X")?),
        _ => return None,
    };
    Some(m)
}

pub fn std_gate(name: &str) -> Gate {
    Gate::from_matrix(name, std_matrix(name).expect("known gate")).expect("standard gates are unitary")
}

/// R_k = diag(1, e^{2πi/2^k}).
pub fn phase_matrix(k: u32) -> ExactMatrix {
    ExactMatrix::diag(&[c(1), CycElement::zeta(1 << k)])
}

/// Controlled R_k, named `CR{k}`.
pub fn controlled_phase(k: u32) -> Gate {
    let m = ExactMatrix::identity(2).direct_sum(&phase_matrix(k));
    Gate::from_matrix(format!("CR{k}"), m).expect("unitary")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decrement_permutation() {
        let g = Gate::decrement("CDEC2", 1, 2);
        let p = g.permutation().unwrap();
        assert_eq!(&p[..4], &[0, 1, 2, 3]);
        assert_eq!(&p[4..], &[7, 4, 5, 6]);
        assert!(g.evaluation().is_unitary().unwrap());
        let g = Gate::decrement("CCDEC1", 2, 1);
        assert_eq!(g.permutation().unwrap(), vec![0, 1, 2, 3, 4, 5, 7, 6]);
    }

    #[test]
    fn registry() {
        assert_eq!(GateSet::by_name("qft_target:3").unwrap().get("CCDEC3").unwrap().dim, 32);
        assert!(GateSet::by_name("nope").is_err());
        assert!(GateSet::clifford_t().get("E").is_err());
    }
}
