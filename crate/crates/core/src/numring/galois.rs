use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::CycElement;
use crate::error::{Error, Result};

/// σ_k : ζ_N ↦ ζ_N^k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GaloisAutomorphism {
    pub conductor: u32,
    pub exponent: u32,
}

impl GaloisAutomorphism {
    pub fn new(conductor: u32, exponent: i64) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::ZeroConductor);
        }
        let k = exponent.rem_euclid(conductor as i64) as u32;
        let k = if conductor == 1 { 0 } else { k };
        if conductor > 1 && k.gcd(&conductor) != 1 {
            return Err(Error::NotCoprime { k: exponent.unsigned_abs(), n: conductor as u64 });
        }
        Ok(GaloisAutomorphism { conductor, exponent: k })
    }

    pub fn identity(conductor: u32) -> Self {
        Self::new(conductor, 1).unwrap()
    }

    pub fn conjugation(conductor: u32) -> Self {
        Self::new(conductor, conductor as i64 - 1).unwrap()
    }

    pub fn is_identity(&self) -> bool {
        self.conductor <= 2 || self.exponent == 1
    }

    /// σ_a ∘ σ_b = σ_{ab}.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.conductor != other.conductor {
            return Err(Error::ConductorMismatch { have: other.conductor, want: self.conductor });
        }
        let k = (self.exponent as u64 * other.exponent as u64) % self.conductor.max(1) as u64;
        Self::new(self.conductor, k as i64)
    }

    /// Applies the automorphism; the element's conductor must divide N.
    pub fn apply(&self, a: &CycElement) -> Result<CycElement> {
        let m = a.conductor();
        if self.conductor % m != 0 {
            return Err(Error::ConductorMismatch { have: m, want: self.conductor });
        }
        Ok(a.galois_raw(self.exponent as u64))
    }
}

/// Units modulo n.
pub(crate) fn units(n: u32) -> impl Iterator<Item = u32> {
    (1..n.max(2)).filter(move |k| n == 1 || k.gcd(&n) == 1)
}

/// A subgroup of (ℤ/N)^× with a small generating set.
#[derive(Clone, Debug)]
pub struct UnitSubgroup {
    pub modulus: u32,
    pub elements: Vec<u32>,
    pub generators: Vec<u32>,
}

impl UnitSubgroup {
    pub fn from_predicate(n: u32, mut pred: impl FnMut(u32) -> bool) -> Self {
        let elements: Vec<u32> = if n <= 2 { vec![1 % n.max(2)] } else { units(n).filter(|&k| pred(k)).collect() };
        let generators = Self::generating_set(n, &elements);
        UnitSubgroup { modulus: n, elements, generators }
    }

    fn generating_set(n: u32, elements: &[u32]) -> Vec<u32> {
        if n <= 2 {
            return vec![];
        }
        let mut inside = vec![false; n as usize];
        inside[1] = true;
        let mut members = vec![1u32];
        let mut gens = Vec::new();
        for &g in elements {
            if inside[g as usize] {
                continue;
            }
            gens.push(g);
            // Closure of the current subgroup under the new generator.
            let mut frontier = members.clone();
            while let Some(x) = frontier.pop() {
                for &h in &gens {
                    let y = ((x as u64 * h as u64) % n as u64) as u32;
                    if !inside[y as usize] {
                        inside[y as usize] = true;
                        members.push(y);
                        frontier.push(y);
                    }
                }
            }
        }
        gens
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Whether every element of the subgroup fixes a.
    pub fn fixes(&self, a: &CycElement) -> bool {
        let m = a.conductor();
        debug_assert!(self.modulus % m == 0 || m == 1);
        self.generators.iter().all(|&g| a.galois_raw(g as u64 % m.max(1) as u64) == *a)
    }

    /// Orbit of a under the subgroup, starting with a itself, together with a witness exponent.
    pub fn orbit(&self, a: &CycElement) -> Vec<(u32, CycElement)> {
        let m = a.conductor().max(1) as u64;
        let mut out: Vec<(u32, CycElement)> = vec![(1, a.clone())];
        let mut i = 0;
        while i < out.len() {
            let (k, x) = out[i].clone();
            for &g in &self.generators {
                let y = x.galois_raw(g as u64 % m);
                if !out.iter().any(|(_, z)| *z == y) {
                    let kk = ((k as u64 * g as u64) % self.modulus as u64) as u32;
                    out.push((kk, y));
                }
            }
            i += 1;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn automorphism_examples() {
        let g = GaloisAutomorphism::new(8, 3).unwrap();
        assert_eq!(g.apply(&CycElement::omega8()).unwrap(), CycElement::zeta_pow(8, 3));
        let g = GaloisAutomorphism::new(8, 7).unwrap();
        assert_eq!(g.apply(&CycElement::sqrt2()).unwrap(), CycElement::sqrt2());
        let g = GaloisAutomorphism::new(5, 2).unwrap();
        assert_eq!(g.apply(&CycElement::sqrt5()).unwrap(), -CycElement::sqrt5());
        assert!(GaloisAutomorphism::new(8, 2).is_err());
    }

    #[test]
    fn subgroup_generators() {
        let all = UnitSubgroup::from_predicate(40, |_| true);
        assert_eq!(all.order(), 16);
        assert!(all.generators.len() <= 3);
        let orbit = all.orbit(&CycElement::zeta(40).lift(40).unwrap());
        assert_eq!(orbit.len(), 16);
    }
}
