//! Pre-embeddings M ↦ Σ Mᵢ⊗Λⁱ, the catalytic condition, and circuit lifting.

mod classify;
mod lift;

pub use classify::{classify, Candidate, CandidateGate, ClassificationReport, LinearRelation, Verdict, Witness};
pub use lift::{lift_circuit, Bundle, GateEmbedding, GateSetEmbedding};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmat::{char_poly, eigenspace_for, Eigenspace, ExactMatrix};
use crate::numring::{lcm, lift_unit, CycElement, GaloisAutomorphism, Polynomial, RingTower};

/// A validated pre-embedding for a tower R ⊂ R[α] and a normal pseudo-companion Λ.
#[derive(Clone, Debug)]
pub struct PreEmbedding {
    pub tower: RingTower,
    pub lambda: ExactMatrix,
    pub projector: ExactMatrix,
    pub catalyst_basis: Eigenspace,
    /// char_poly(Λ) = p^c.
    pub power: usize,
    lambda_powers: Vec<ExactMatrix>,
}

impl PreEmbedding {
    pub fn new(tower: RingTower, lambda: ExactMatrix) -> Result<Self> {
        if !lambda.is_square() {
            return Err(Error::NotSquare);
        }
        let k = lambda.rows();
        for r in 0..k {
            for c in 0..k {
                if !tower.base.contains(lambda.get(r, c)) {
                    return Err(Error::EntryOutsideRing { row: r, col: c, ring: tower.base.name.clone() });
                }
            }
        }
        if !lambda.is_normal()? {
            return Err(Error::NotNormal);
        }
        if !lambda.eval_poly(&tower.min_poly)?.is_zero() {
            return Err(Error::NotAnnihilated);
        }
        let d = tower.degree();
        if k % d != 0 || char_poly(&lambda)? != tower.min_poly.pow((k / d) as u32) {
            return Err(Error::NotPseudoCompanion);
        }
        // Integrality of p (checked by the tower) makes {αⁱ} a basis with coefficients in R.
        if !tower.min_poly.is_monic() {
            return Err(Error::RingViolation("minimal polynomial is not monic".into()));
        }
        let space = eigenspace_for(&lambda, &tower.alpha).map_err(|_| Error::AlphaNotEigenvalue)?;
        let mut lambda_powers = vec![ExactMatrix::identity(k)];
        for i in 1..d {
            lambda_powers.push(lambda_powers[i - 1].mul(&lambda)?);
        }
        Ok(PreEmbedding {
            power: k / d,
            projector: space.projector.clone(),
            catalyst_basis: space,
            tower,
            lambda,
            lambda_powers,
        })
    }

    /// Catalyst dimension k.
    pub fn dim(&self) -> usize {
        self.lambda.rows()
    }

    pub fn degree(&self) -> usize {
        self.tower.degree()
    }

    /// Σ Mᵢ⊗Λⁱ, requiring every Mᵢ to have entries in R.
    pub fn phi(&self, m: &ExactMatrix) -> Result<ExactMatrix> {
        self.phi_inner(m, true)
    }

    /// Linear extension over Frac(R): coefficients only need to lie in the base field.
    pub fn phi_field(&self, m: &ExactMatrix) -> Result<ExactMatrix> {
        self.phi_inner(m, false)
    }

    fn phi_inner(&self, m: &ExactMatrix, integral: bool) -> Result<ExactMatrix> {
        let k = self.dim();
        let (rows, cols) = (m.rows(), m.cols());
        let mut out = vec![CycElement::zero(); rows * k * cols * k];
        let w = cols * k;
        for r in 0..rows {
            for c in 0..cols {
                let a = m.get(r, c);
                if a.is_zero() {
                    continue;
                }
                let outside =
                    || Error::EntryOutsideRing { row: r, col: c, ring: self.tower.extension_ring().name };
                let coeffs = self.tower.decompose(a).map_err(|_| outside())?;
                if integral && !coeffs.iter().all(|x| self.tower.base.contains(x)) {
                    return Err(outside());
                }
                for (ci, lp) in coeffs.iter().zip(&self.lambda_powers) {
                    if ci.is_zero() {
                        continue;
                    }
                    for i in 0..k {
                        for j in 0..k {
                            let l = lp.get(i, j);
                            if l.is_zero() {
                                continue;
                            }
                            let slot = &mut out[(r * k + i) * w + c * k + j];
                            *slot = &*slot + &(ci * l);
                        }
                    }
                }
            }
        }
        ExactMatrix::new(rows * k, cols * k, out)
    }

    /// Both sides of the catalytic condition: Φ(M)(I⊗Π) = M⊗Π and (I⊗Π)Φ(M) = M⊗Π.
    pub fn catalytic_sides(&self, m: &ExactMatrix) -> Result<(bool, bool)> {
        let pm = self.phi(m)?;
        let ip = ExactMatrix::identity(m.cols()).tensor(&self.projector);
        let ipl = ExactMatrix::identity(m.rows()).tensor(&self.projector);
        let target = m.tensor(&self.projector);
        Ok((pm.mul(&ip)? == target, ipl.mul(&pm)? == target))
    }

    pub fn catalytic_check(&self, m: &ExactMatrix) -> Result<bool> {
        let (r, l) = self.catalytic_sides(m)?;
        Ok(r && l)
    }

    /// The automorphisms τ_j fixing R with τ_j(α) the j-th conjugate, at a conductor holding `m`.
    fn tau_for(&self, j: usize, conductor: u32) -> Result<GaloisAutomorphism> {
        let h = self.tower.conjugate_exponents()[j];
        let l = self.tower.ambient;
        let big = lcm(l, conductor);
        GaloisAutomorphism::new(big, lift_unit(h, l, big) as i64)
    }

    pub fn apply_tau(&self, j: usize, m: &ExactMatrix) -> Result<ExactMatrix> {
        let g = self.tau_for(j, m.conductor())?;
        m.galois(&g)
    }

    /// {τ(Π)} over the conjugates of α; verified complete and mutually orthogonal.
    pub fn projector_family(&self) -> Result<Vec<(GaloisAutomorphism, ExactMatrix)>> {
        let k = self.dim();
        let mut fam = Vec::new();
        for j in 0..self.degree() {
            let g = self.tau_for(j, self.projector.conductor())?;
            let p = self.projector.galois(&g)?;
            fam.push((g, p));
        }
        let mut sum = ExactMatrix::zeros(k, k);
        for (_, p) in &fam {
            sum = sum.add(p)?;
        }
        if sum != ExactMatrix::identity(k) {
            return Err(Error::Unsupported("Galois conjugates of the projector are not complete".into()));
        }
        for (a, (_, p)) in fam.iter().enumerate() {
            for (_, q) in fam.iter().skip(a + 1) {
                if !p.mul(q)?.is_zero() {
                    return Err(Error::Unsupported("Galois conjugates of the projector are not orthogonal".into()));
                }
            }
        }
        Ok(fam)
    }

    /// Φ(M)(I⊗τ_j(Π)) = τ_j(M)⊗τ_j(Π).
    pub fn twisted_check(&self, j: usize, m: &ExactMatrix) -> Result<bool> {
        let tp = self.apply_tau(j, &self.projector)?;
        let lhs = self.phi(m)?.mul(&ExactMatrix::identity(m.cols()).tensor(&tp))?;
        Ok(lhs == self.apply_tau(j, m)?.tensor(&tp))
    }

    /// Σ_j τ_j(M)⊗τ_j(Π) = Φ(M).
    pub fn trace_check(&self, m: &ExactMatrix) -> Result<bool> {
        let mut acc = ExactMatrix::zeros(m.rows() * self.dim(), m.cols() * self.dim());
        for j in 0..self.degree() {
            let tp = self.apply_tau(j, &self.projector)?;
            acc = acc.add(&self.apply_tau(j, m)?.tensor(&tp))?;
        }
        Ok(acc == self.phi(m)?)
    }

    /// Composite of `outer` (R ⊂ R[β]) after `self` (R[β] ⊂ R[β][α]): Λ' = Φ_outer(Λ), Π' = Π⊗Π_outer.
    pub fn concat(&self, outer: &PreEmbedding) -> Result<PreEmbedding> {
        let mid = outer.tower.extension_ring();
        if !mid.same_ring(&self.tower.base) {
            return Err(Error::RingChainMismatch(format!(
                "{} embeds {}, but the inner tower starts at {}",
                outer.tower.base.name, mid.name, self.tower.base.name
            )));
        }
        let tower = RingTower::new(outer.tower.base.clone(), self.tower.alpha.clone())?;
        let lambda = outer.phi(&self.lambda)?;
        let pe = PreEmbedding::new(tower, lambda)?;
        if pe.projector != self.projector.tensor(&outer.projector) {
            return Err(Error::RingChainMismatch("composite projector is not the tensor of the parts".into()));
        }
        Ok(pe)
    }

    pub fn min_poly(&self) -> &Polynomial {
        &self.tower.min_poly
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PreJson {
            tower: &self.tower,
            lambda: &self.lambda,
            projector: &self.projector,
            min_poly: self.tower.min_poly.to_string(),
            power: self.power,
        })
        .expect("plain data")
    }
}

#[derive(Serialize)]
struct PreJson<'a> {
    tower: &'a RingTower,
    lambda: &'a ExactMatrix,
    projector: &'a ExactMatrix,
    min_poly: String,
    power: usize,
}
