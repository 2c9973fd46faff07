use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{shift_companion, shifted_rotation_companion, sum_of_squares_companion};
use crate::embed::PreEmbedding;
use crate::error::{Error, Result};
use crate::exactmat::ExactMatrix;
use crate::numring::{CycElement, Denominators, RingSpec, RingTower};

pub const MAX_TOWER_K: u32 = 20;

const BUILTIN: &str = include_str!("../../data/catalog.json");

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub id: String,
    pub tower: RingTower,
    pub lambda: ExactMatrix,
    /// Unnormalized α-eigenvector of Λ.
    pub catalyst_vector: Vec<CycElement>,
    /// ⟨v, v⟩.
    pub norm_sq: CycElement,
    pub provenance: String,
}

impl CatalogEntry {
    /// Re-runs every pre-embedding check and the catalyst identities.
    pub fn verify(&self) -> Result<PreEmbedding> {
        let pe = PreEmbedding::new(self.tower.clone(), self.lambda.clone())?;
        let fail = |reason: &str| Error::Catalog { id: self.id.clone(), reason: reason.into() };
        let v = &self.catalyst_vector;
        if v.len() != pe.dim() || v.iter().all(CycElement::is_zero) {
            return Err(fail("catalyst has the wrong length or is zero"));
        }
        let lv = self.lambda.apply(v)?;
        if lv.iter().zip(v).any(|(a, b)| *a != &self.tower.alpha * b) {
            return Err(fail("catalyst is not an eigenvector for alpha"));
        }
        if ExactMatrix::inner(v, v) != self.norm_sq {
            return Err(fail("stored norm does not match the catalyst"));
        }
        pe.projector_family()?;
        Ok(pe)
    }

    /// Catalytic, twisted and trace laws on fixed probe matrices over R[α].
    pub fn probe_laws(&self, pe: &PreEmbedding) -> Result<Vec<(String, bool)>> {
        let a = &self.tower.alpha;
        let one = CycElement::one();
        let probes = [
            ("diag(alpha)", ExactMatrix::diag(std::slice::from_ref(a))),
            ("[[1,alpha],[alpha^2,-1]]", ExactMatrix::from_rows(vec![vec![one.clone(), a.clone()], vec![a.pow(2), -&one]])?),
        ];
        let mut out = Vec::new();
        for (name, m) in &probes {
            let (right, left) = pe.catalytic_sides(m)?;
            out.push((format!("catalytic {name}"), right));
            out.push((format!("left-sided {name}"), left));
            for j in 0..pe.degree() {
                out.push((format!("twisted[{j}] {name}"), pe.twisted_check(j, m)?));
            }
            out.push((format!("trace {name}"), pe.trace_check(m)?));
        }
        Ok(out)
    }

    /// Catalyst as a column state.
    pub fn catalyst(&self) -> ExactMatrix {
        ExactMatrix::column(self.catalyst_vector.clone()).expect("nonempty")
    }
}

#[derive(Clone, Debug, Default)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(Catalog { entries: serde_json::from_str(text)? })
    }

    pub fn builtin() -> Self {
        Self::from_json(BUILTIN).expect("shipped catalog parses")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// The file named by `CATEMBED_CATALOG`, or the shipped catalog.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os("CATEMBED_CATALOG") {
            Some(p) => Self::load(Path::new(&p)),
            None => Ok(Self::builtin()),
        }
    }

    pub fn ids(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.id.as_str()).collect()
    }

    /// Stored entries by id; `zeta2k/tower(k)` is generated on demand.
    pub fn get(&self, id: &str) -> Result<CatalogEntry> {
        if let Some(e) = self.entries.iter().find(|e| e.id == id) {
            return Ok(e.clone());
        }
        if let Some(k) = id.strip_prefix("zeta2k/tower(").and_then(|r| r.strip_suffix(')')) {
            let k: u32 = k.parse().map_err(|_| Error::UnknownEntry(id.into()))?;
            return tower_entry(k);
        }
        Err(Error::UnknownEntry(id.into()))
    }

    /// One line per field, values compact.
    pub fn to_json(&self) -> String {
        const KEYS: [&str; 6] = ["id", "tower", "lambda", "catalyst_vector", "norm_sq", "provenance"];
        let blocks: Vec<String> = self
            .entries
            .iter()
            .map(|e| {
                let v = serde_json::to_value(e).expect("plain data");
                let fields: Vec<String> =
                    KEYS.iter().map(|k| format!("    \"{k}\": {}", v[*k])).collect();
                format!("  {{\n{}\n  }}", fields.join(",\n"))
            })
            .collect();
        if blocks.is_empty() {
            return "[]\n".into();
        }
        format!("[\n{}\n]\n", blocks.join(",\n"))
    }
}

fn dyadic_cyclotomic(m: u32) -> RingSpec {
    if m <= 2 {
        return RingSpec::dyadic();
    }
    RingSpec::new(format!("D[z{m}]"), m, vec![CycElement::zeta(m)], Denominators::primes(&[2])).unwrap()
}

fn entry_from(id: &str, pe: &PreEmbedding, catalyst: Option<Vec<CycElement>>, provenance: &str) -> CatalogEntry {
    let v = catalyst.unwrap_or_else(|| pe.catalyst_basis.basis[0].clone());
    CatalogEntry {
        id: id.into(),
        tower: pe.tower.clone(),
        lambda: pe.lambda.clone(),
        norm_sq: ExactMatrix::inner(&v, &v),
        catalyst_vector: v,
        provenance: provenance.into(),
    }
}

/// D[ζ_{2^{k−1}}] ⊂ D[ζ_{2^k}] with Λ_k = [[0,1],[ζ_{2^{k−1}},0]] and ψ_k = [1, ζ_{2^k}].
pub fn tower_entry(k: u32) -> Result<CatalogEntry> {
    if !(2..=MAX_TOWER_K).contains(&k) {
        return Err(Error::UnknownEntry(format!("zeta2k/tower({k})")));
    }
    let m = 1u32 << (k - 1);
    let alpha = CycElement::zeta(2 * m);
    let tower = RingTower::new(dyadic_cyclotomic(m), alpha.clone())?;
    let lambda = shift_companion(&CycElement::zeta(m))?;
    let v = vec![CycElement::one(), alpha];
    Ok(CatalogEntry {
        id: format!("zeta2k/tower({k})"),
        tower,
        lambda,
        norm_sq: ExactMatrix::inner(&v, &v),
        catalyst_vector: v,
        provenance: format!("shift companion of x^2 - z{m}; catalyst is the z{} eigenvector", 2 * m),
    })
}

/// (D[i] ⊂ D[ω₈], D ⊂ D[i]) with Λ₁ = [[0,1],[i,0]], Λ₂ = [[0,1],[−1,0]].
pub fn omega_pair() -> Result<(PreEmbedding, PreEmbedding)> {
    let t1 = RingTower::new(RingSpec::dyadic_i(), CycElement::omega8())?;
    let pe1 = PreEmbedding::new(t1, shift_companion(&CycElement::i())?)?;
    let t2 = RingTower::new(RingSpec::dyadic(), CycElement::i())?;
    let pe2 = PreEmbedding::new(t2, shift_companion(&CycElement::from_int(-1))?)?;
    Ok((pe1, pe2))
}

/// The ring ℤ[1/2, √2, i, cos(2π/5)].
pub fn clifford_t_cos5() -> RingSpec {
    RingSpec::new(
        "Z[1/2,sqrt2,i,c5]",
        40,
        vec![CycElement::sqrt2(), CycElement::i(), CycElement::cos_2pi_over(5)],
        Denominators::primes(&[2]),
    )
    .unwrap()
}

/// (R[c] ⊂ R[c][ζ₅], R ⊂ R[c]) for R = ℤ[1/2,√2,i] and c = cos(2π/5).
pub fn cos5_pair() -> Result<(PreEmbedding, PreEmbedding)> {
    let c = CycElement::cos_2pi_over(5);
    let (l1, _) = shifted_rotation_companion(&c)?;
    let pe1 = PreEmbedding::new(RingTower::new(clifford_t_cos5(), CycElement::zeta(5))?, l1)?;
    let half = CycElement::from_frac(1, 2);
    let l2 = ExactMatrix::from_rows(vec![vec![-&half, half.clone()], vec![half, CycElement::zero()]])?;
    let pe2 = PreEmbedding::new(RingTower::new(RingSpec::clifford_t(), c)?, l2)?;
    Ok((pe1, pe2))
}

/// Λ = ω₈⁵·H·S over D[ω₈] ⊂ D[ω₈][ω₃].
pub fn egate_lambda() -> ExactMatrix {
    let h = crate::circuit::std_matrix("H").unwrap();
    let s = crate::circuit::std_matrix("S").unwrap();
    h.mul(&s).unwrap().scale(&CycElement::omega8().pow(5))
}

/// The entries kept in the shipped catalog file.
pub fn reference_entries() -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();

    let t = RingTower::new(RingSpec::rationals(), CycElement::sqrt5())?;
    let l = sum_of_squares_companion(&CycElement::one(), &CycElement::from_int(2))?;
    let pe = PreEmbedding::new(t, l)?;
    out.push(entry_from("sqrt5/Q", &pe, None, "hermitian [[1,2],[2,-1]] with 1^2 + 2^2 = 5"));

    let (p1, p2) = omega_pair()?;
    let w = CycElement::omega8();
    out.push(entry_from("omega8/Di", &p1, Some(vec![CycElement::one(), w.clone()]), "shift companion of x^2 - i"));
    out.push(entry_from("i/D", &p2, Some(vec![CycElement::one(), CycElement::i()]), "shift companion of x^2 + 1"));
    let pc = p1.concat(&p2)?;
    let v = vec![CycElement::one(), w.pow(2), w.clone(), w.pow(3)];
    out.push(entry_from("omega/D (concat)", &pc, Some(v), "omega8/Di composed with i/D"));

    let t = RingTower::new(RingSpec::dyadic_omega8(), CycElement::omega3())?;
    let pe = PreEmbedding::new(t, egate_lambda())?;
    let w3 = CycElement::omega3();
    let v0 = -(&w3 + &(&CycElement::i() * &w3.pow(2)));
    out.push(entry_from("omega3/Domega8", &pe, Some(vec![v0, CycElement::one()]), "w8^5 H S; catalyst for the order-3 phase"));

    let (c1, c2) = cos5_pair()?;
    let pc = c1.concat(&c2)?;
    out.push(entry_from("zeta5/CliffordT", &pc, None, "rotation companion over cos(2pi/5) composed with [[-1/2,1/2],[1/2,0]]"));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_catalog_is_current() {
        let generated = Catalog { entries: reference_entries().unwrap() }.to_json();
        let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/catalog.json");
        if std::env::var_os("UPDATE_CATALOG").is_some() {
            std::fs::write(&path, &generated).unwrap();
            return;
        }
        assert_eq!(BUILTIN, generated, "run with UPDATE_CATALOG=1 to regenerate");
    }

    #[test]
    fn towers() {
        for k in 2..=6 {
            tower_entry(k).unwrap().verify().unwrap();
        }
        assert!(tower_entry(1).is_err());
        assert!(tower_entry(21).is_err());
        assert!(Catalog::default().get("zeta2k/tower(4)").is_ok());
        assert!(Catalog::default().get("nope").is_err());
    }
}
