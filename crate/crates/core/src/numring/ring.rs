use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::cyclotomic::{lcm, prime_factors};
use super::galois::UnitSubgroup;
use super::{CycElement, Polynomial};
use crate::error::{Error, Result};

/// Allowed denominators: every prime, or only the listed ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Denominators {
    All,
    Primes(BTreeSet<u64>),
}

impl Denominators {
    pub fn primes(ps: &[u64]) -> Self {
        Denominators::Primes(ps.iter().copied().collect())
    }

    pub fn allows(&self, den: &BigInt) -> bool {
        match self {
            Denominators::All => true,
            Denominators::Primes(ps) => {
                let mut d = den.clone();
                for p in ps {
                    let p = BigInt::from(*p);
                    while (&d % &p).is_zero_big() {
                        d /= &p;
                    }
                }
                d.is_one()
            }
        }
    }
}

trait ZeroBig {
    fn is_zero_big(&self) -> bool;
}

impl ZeroBig for BigInt {
    fn is_zero_big(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}

/// The localization O_K[1/P] of the ring of integers of a subfield K of ℚ(ζ_N).
#[derive(Clone, Debug)]
pub struct RingSpec {
    pub name: String,
    pub conductor: u32,
    pub generators: Vec<CycElement>,
    pub denominators: Denominators,
    /// lcm of the generator conductors; the stabilizer is computed there.
    core: u32,
    core_fixed: Vec<bool>,
}

impl RingSpec {
    pub fn new(
        name: impl Into<String>,
        conductor: u32,
        generators: Vec<CycElement>,
        denominators: Denominators,
    ) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::ZeroConductor);
        }
        let mut core = 1;
        for g in &generators {
            if conductor % g.conductor() != 0 {
                return Err(Error::ConductorMismatch { have: g.conductor(), want: conductor });
            }
            core = lcm(core, g.conductor());
        }
        let mut core_fixed = vec![false; core as usize + 1];
        for k in 0..=core {
            if core == 1 || (k > 0 && k.gcd(&core) == 1) {
                core_fixed[k as usize] = generators
                    .iter()
                    .all(|g| g.galois_raw((k % g.conductor().max(1)) as u64) == *g);
            }
        }
        let spec = RingSpec { name: name.into(), conductor, generators, denominators, core, core_fixed };
        for g in &spec.generators {
            if !spec.in_field(&g.conj()) {
                return Err(Error::RingViolation(format!("{} is not closed under conjugation", spec.name)));
            }
        }
        Ok(spec)
    }

    pub fn rationals() -> Self {
        Self::new("Q", 1, vec![], Denominators::All).unwrap()
    }

    pub fn integers() -> Self {
        Self::new("Z", 1, vec![], Denominators::primes(&[])).unwrap()
    }

    /// 𝔻 = ℤ[1/2]
    pub fn dyadic() -> Self {
        Self::new("D", 1, vec![], Denominators::primes(&[2])).unwrap()
    }

    pub fn dyadic_i() -> Self {
        Self::new("D[i]", 4, vec![CycElement::i()], Denominators::primes(&[2])).unwrap()
    }

    pub fn dyadic_omega8() -> Self {
        Self::new("D[w8]", 8, vec![CycElement::omega8()], Denominators::primes(&[2])).unwrap()
    }

    /// ℤ[1/2, √2, i], the ring of Clifford+T unitaries.
    pub fn clifford_t() -> Self {
        Self::new("Z[1/2,sqrt2,i]", 8, vec![CycElement::sqrt2(), CycElement::i()], Denominators::primes(&[2]))
            .unwrap()
    }

    pub fn cyclotomic_integers(n: u32) -> Self {
        Self::new(format!("Z[z{n}]"), n, vec![CycElement::zeta(n)], Denominators::primes(&[])).unwrap()
    }

    pub fn rational_subring(primes: &[u64]) -> Self {
        Self::new("Q-subring", 1, vec![], Denominators::primes(primes)).unwrap()
    }

    /// The subgroup of (ℤ/L)^× fixing the subfield, for any L that the generators' conductors divide.
    pub fn stabilizer(&self, l: u32) -> UnitSubgroup {
        let core = self.core;
        UnitSubgroup::from_predicate(l, |k| self.core_fixed[(k % core) as usize] || core == 1)
    }

    /// Membership in the field of fractions K.
    pub fn in_field(&self, a: &CycElement) -> bool {
        if a.as_rational().is_some() {
            return true;
        }
        let l = lcm(self.core, a.conductor());
        self.stabilizer(l).fixes(a)
    }

    /// Membership in the ring: a ∈ K and the power-basis denominators only involve allowed primes.
    pub fn contains(&self, a: &CycElement) -> bool {
        self.denominators.allows(a.common_denominator()) && self.in_field(a)
    }

    /// Minimal polynomial of a over the field of fractions.
    pub fn min_poly(&self, a: &CycElement) -> Polynomial {
        let l = lcm(self.core, a.conductor());
        let orbit = self.stabilizer(l).orbit(a);
        let roots: Vec<CycElement> = orbit.into_iter().map(|(_, x)| x).collect();
        let p = Polynomial::from_roots(&roots);
        Polynomial::new(p.coeffs.iter().map(|c| c.simplify()).collect())
    }

    /// Same subfield and same denominators.
    pub fn same_ring(&self, other: &RingSpec) -> bool {
        if self.denominators != other.denominators {
            return false;
        }
        self.generators.iter().all(|g| other.in_field(g)) && other.generators.iter().all(|g| self.in_field(g))
    }

    /// Whether every element of self lies in other.
    pub fn is_subring_of(&self, other: &RingSpec) -> bool {
        let dens_ok = match (&self.denominators, &other.denominators) {
            (_, Denominators::All) => true,
            (Denominators::All, _) => false,
            (Denominators::Primes(a), Denominators::Primes(b)) => a.is_subset(b),
        };
        dens_ok && self.generators.iter().all(|g| other.in_field(g))
    }

    pub(crate) fn core_conductor(&self) -> u32 {
        self.core
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

/// An extension R ⊂ R[α] with α's minimal polynomial over Frac(R).
#[derive(Clone, Debug)]
pub struct RingTower {
    pub base: RingSpec,
    pub alpha: CycElement,
    pub min_poly: Polynomial,
    /// Conductor holding both R and α.
    pub ambient: u32,
    conjugates: Vec<(u32, CycElement)>,
    vandermonde_inv: Vec<Vec<CycElement>>,
}

impl RingTower {
    pub fn new(base: RingSpec, alpha: CycElement) -> Result<Self> {
        let ambient = lcm(base.core_conductor(), alpha.conductor());
        let conjugates = base.stabilizer(ambient).orbit(&alpha);
        let roots: Vec<CycElement> = conjugates.iter().map(|(_, x)| x.clone()).collect();
        let min_poly = base.min_poly(&alpha);
        for (i, c) in min_poly.coeffs.iter().enumerate() {
            if !base.contains(c) {
                return Err(Error::RingViolation(format!(
                    "coefficient of x^{i} in the minimal polynomial of {alpha} is not in {}",
                    base.name
                )));
            }
        }
        let d = roots.len();
        let v: Vec<Vec<CycElement>> = roots.iter().map(|r| (0..d).map(|i| r.pow(i as u32)).collect()).collect();
        let vandermonde_inv = invert_small(&v)?;
        Ok(RingTower { base, alpha, min_poly, ambient, conjugates, vandermonde_inv })
    }

    pub fn degree(&self) -> usize {
        self.conjugates.len()
    }

    /// Exponents h_j (mod ambient) with σ_{h_j}(α) the j-th conjugate; h_0 = 1.
    pub fn conjugate_exponents(&self) -> Vec<u32> {
        self.conjugates.iter().map(|(k, _)| *k).collect()
    }

    pub fn conjugates(&self) -> Vec<CycElement> {
        self.conjugates.iter().map(|(_, x)| x.clone()).collect()
    }

    /// Unique c_i ∈ Frac(R) with a = Σ c_i α^i, if a ∈ Frac(R)[α].
    pub fn decompose(&self, a: &CycElement) -> Result<Vec<CycElement>> {
        let d = self.degree();
        if a.is_zero() {
            return Ok(vec![CycElement::zero(); d]);
        }
        if let Some(q) = a.as_rational() {
            let mut out = vec![CycElement::zero(); d];
            out[0] = CycElement::from_rational(q);
            return Ok(out);
        }
        let l = self.ambient;
        let big = lcm(l, a.conductor());
        let mut s = Vec::with_capacity(d);
        for (h, _) in &self.conjugates {
            let k = lift_unit(*h, l, big);
            s.push(a.galois_raw(k as u64 % a.conductor() as u64));
        }
        let mut c = Vec::with_capacity(d);
        for row in &self.vandermonde_inv {
            let mut acc = CycElement::zero();
            for (x, y) in row.iter().zip(&s) {
                acc = &acc + &(x * y);
            }
            c.push(acc.simplify());
        }
        let outside = || Error::RingViolation(format!("{a} is not in Frac({})[{}]", self.base.name, self.alpha));
        if !c.iter().all(|x| self.base.in_field(x)) {
            return Err(outside());
        }
        let mut back = CycElement::zero();
        for x in c.iter().rev() {
            back = &(&back * &self.alpha) + x;
        }
        if back != *a {
            return Err(outside());
        }
        Ok(c)
    }

    /// Membership in R[α] = ⊕ R α^i.
    pub fn contains(&self, a: &CycElement) -> bool {
        self.decompose(a).map(|c| c.iter().all(|x| self.base.contains(x))).unwrap_or(false)
    }

    /// R[α] as a ring spec over the ambient conductor.
    pub fn extension_ring(&self) -> RingSpec {
        let mut gens = self.base.generators.clone();
        gens.push(self.alpha.clone());
        let gens = gens.into_iter().map(|g| g.lift(self.ambient).unwrap()).collect();
        RingSpec::new(
            format!("{}[{}]", self.base.name, self.alpha),
            self.ambient,
            gens,
            self.base.denominators.clone(),
        )
        .expect("extension of a Kroneckerian ring is Kroneckerian")
    }
}

/// Some k ≡ h (mod l) that is a unit modulo big (l | big).
pub(crate) fn lift_unit(h: u32, l: u32, big: u32) -> u32 {
    if l == big {
        return h;
    }
    let mut k = h as u64;
    while k.gcd(&(big as u64)) != 1 {
        k += l as u64;
    }
    (k % big as u64) as u32
}

/// Gauss–Jordan inverse of a small square matrix of field elements.
fn invert_small(m: &[Vec<CycElement>]) -> Result<Vec<Vec<CycElement>>> {
    let d = m.len();
    let mut a: Vec<Vec<CycElement>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..d).map(|j| if i == j { CycElement::one() } else { CycElement::zero() }));
            r
        })
        .collect();
    for col in 0..d {
        let piv = (col..d).find(|&r| !a[r][col].is_zero()).ok_or(Error::DivisionByZero)?;
        a.swap(col, piv);
        let inv = a[col][col].inv()?;
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x = &*x - &(&f * p);
                }
            }
        }
    }
    Ok(a.into_iter().map(|r| r[d..].to_vec()).collect())
}

#[allow(dead_code)]
fn prime_set(n: u64) -> BTreeSet<u64> {
    prime_factors(n).into_iter().collect()
}
