//! Exact arithmetic in cyclotomic fields and the Kroneckerian rings inside them.

mod complex;
mod cyclotomic;
mod expr;
mod galois;
mod poly;
mod ring;

pub use complex::{to_complex, ComplexApprox};
pub use cyclotomic::{euler_phi, CycElement};
pub use expr::{parse_element, sqrt_int};
pub use galois::{GaloisAutomorphism, UnitSubgroup};
pub use poly::Polynomial;
pub use ring::{Denominators, RingSpec, RingTower};

pub(crate) use cyclotomic::lcm;
pub(crate) use ring::lift_unit;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Parses decimal text such as `1e-15`, `0.25` or `3/4` into an exact rational.
pub fn parse_decimal(s: &str) -> Result<BigRational> {
    let t = s.trim();
    if t.contains('/') {
        return parse_rational(t);
    }
    let bad = || Error::Parse(format!("bad decimal `{s}`"));
    let (mant, exp) = match t.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let mut num: BigInt = digits.parse().map_err(|_| bad())?;
    if neg {
        num = -num;
    }
    let shift = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    Ok(if shift >= 0 {
        BigRational::from_integer(num * ten.pow(shift as u32))
    } else {
        BigRational::new(num, ten.pow((-shift) as u32))
    })
}

#[derive(Serialize, Deserialize)]
struct CycJson {
    conductor: u32,
    coeffs: Vec<(i64, String)>,
}

impl Serialize for CycElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycJson {
            conductor: self.conductor(),
            coeffs: self.coeffs().into_iter().map(|(e, q)| (e as i64, q.to_string())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = CycJson::deserialize(d)?;
        let mut coeffs = Vec::with_capacity(j.coeffs.len());
        for (e, q) in j.coeffs {
            coeffs.push((e, parse_rational(&q).map_err(D::Error::custom)?));
        }
        CycElement::new(j.conductor, &coeffs).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum DenJson {
    All(String),
    Primes(Vec<u64>),
}

#[derive(Serialize, Deserialize)]
struct RingJson {
    name: String,
    conductor: u32,
    generators: Vec<CycElement>,
    denominator_primes: DenJson,
}

impl Serialize for RingSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RingJson {
            name: self.name.clone(),
            conductor: self.conductor,
            generators: self.generators.clone(),
            denominator_primes: match &self.denominators {
                Denominators::All => DenJson::All("all".into()),
                Denominators::Primes(p) => DenJson::Primes(p.iter().copied().collect()),
            },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RingSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = RingJson::deserialize(d)?;
        let dens = match j.denominator_primes {
            DenJson::All(s) if s == "all" => Denominators::All,
            DenJson::All(s) => return Err(D::Error::custom(format!("bad denominator set `{s}`"))),
            DenJson::Primes(p) => Denominators::primes(&p),
        };
        RingSpec::new(j.name, j.conductor, j.generators, dens).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct TowerJson {
    base: RingSpec,
    alpha: CycElement,
}

impl Serialize for RingTower {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TowerJson { base: self.base.clone(), alpha: self.alpha.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RingTower {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = TowerJson::deserialize(d)?;
        RingTower::new(j.base, j.alpha).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip() {
        let a = CycElement::sqrt5().scale(&BigRational::new(3.into(), 4.into()));
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"conductor":5,"coeffs":[[0,"-3/4"],[2,"-3/2"],[3,"-3/2"]]}"#);
        let b: CycElement = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
        let r = RingSpec::clifford_t();
        let back: RingSpec = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert!(back.same_ring(&r));
    }

    #[test]
    fn decimals() {
        assert_eq!(parse_decimal("1e-15").unwrap(), BigRational::new(1.into(), BigInt::from(10).pow(15)));
        assert_eq!(parse_decimal("0.25").unwrap(), BigRational::new(1.into(), 4.into()));
        assert_eq!(parse_decimal("2.5E2").unwrap(), BigRational::from_integer(250.into()));
        assert!(parse_decimal("abc").is_err());
    }
}
