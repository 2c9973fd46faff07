//! Analytic T-count comparison against synthesizing every rotation by approximation.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const PREC: u32 = 256;
/// Significant digits in reports.
pub const REPORT_DIGITS: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CostKind {
    Egate,
    Qft,
}

impl std::str::FromStr for CostKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "egate" => Ok(CostKind::Egate),
            "qft" => Ok(CostKind::Qft),
            _ => Err(Error::Parse(format!("unknown cost kind `{s}`"))),
        }
    }
}

/// atanh(num/den)·2^PREC for 0 ≤ num/den < 1.
fn atanh_fixed(num: &BigInt, den: &BigInt) -> BigInt {
    let z = (num << PREC) / den;
    let z2 = (&z * &z) >> PREC;
    let mut term = z;
    let mut sum = BigInt::zero();
    let mut k = 0u32;
    loop {
        let t = &term / BigInt::from(2 * k + 1);
        if t.is_zero() {
            return sum;
        }
        sum += t;
        term = (term * &z2) >> PREC;
        k += 1;
    }
}

/// log₂(x) to about 2⁻²⁵⁰, as a dyadic rational.
pub fn log2_approx(x: &BigRational) -> Result<BigRational> {
    if !x.is_positive() {
        return Err(Error::InvalidEpsilon);
    }
    let two = BigRational::from_integer(2.into());
    let mut e = x.numer().bits() as i64 - x.denom().bits() as i64;
    let mut y = if e >= 0 {
        x / BigRational::from_integer(BigInt::one() << e as u64)
    } else {
        x * BigRational::from_integer(BigInt::one() << (-e) as u64)
    };
    while y >= two {
        y /= &two;
        e += 1;
    }
    while y < BigRational::one() {
        y *= &two;
        e -= 1;
    }
    // ln y = 2·atanh((y−1)/(y+1)), ln 2 = 2·atanh(1/3).
    let one = BigRational::one();
    let z = (&y - &one) / (&y + &one);
    let ln_y = atanh_fixed(z.numer(), z.denom());
    let ln_2 = atanh_fixed(&BigInt::one(), &BigInt::from(3));
    let frac = (ln_y << PREC) / ln_2;
    let scale = BigInt::one() << PREC;
    Ok(BigRational::new(BigInt::from(e) * &scale + frac, scale))
}

/// Decimal rendering with `digits` significant digits, trailing zeros dropped.
pub fn significant(x: &BigRational, digits: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let sign = if x.is_negative() { "-" } else { "" };
    let a = x.abs();
    let e10 = a.to_f64().filter(|f| f.is_finite() && *f > 0.0).map(|f| f.log10().floor() as i64).unwrap_or(0);
    let mut s = digits as i64 - 1 - e10;
    let lo = BigInt::from(10).pow(digits as u32 - 1);
    let hi = BigInt::from(10).pow(digits as u32);
    let q = loop {
        let p = BigRational::from_integer(BigInt::from(10).pow(s.unsigned_abs() as u32));
        let q = if s >= 0 { &a * &p } else { &a / &p }.round().to_integer();
        if q >= hi {
            s -= 1;
        } else if q < lo {
            s += 1;
        } else {
            break q;
        }
    };
    let ds = q.to_string();
    let body = if s <= 0 {
        format!("{ds}{}", "0".repeat((-s) as usize))
    } else if (s as usize) < digits {
        let (a, b) = ds.split_at(digits - s as usize);
        format!("{a}.{b}")
    } else {
        format!("0.{}{ds}", "0".repeat(s as usize - digits))
    };
    let body = if body.contains('.') { body.trim_end_matches('0').trim_end_matches('.').to_string() } else { body };
    format!("{sign}{body}")
}

#[derive(Clone, Debug, PartialEq)]
pub struct CostReport {
    pub kind: CostKind,
    pub size: u64,
    pub epsilon: BigRational,
    pub approx_tcount: BigRational,
    pub catalytic_tcount: BigRational,
    /// catalytic / approx; absent when the baseline is zero.
    pub ratio: Option<BigRational>,
    pub asymptotic_ratio: Option<BigRational>,
    pub notes: Vec<String>,
}

impl CostReport {
    pub fn reduction(&self) -> Option<BigRational> {
        self.ratio.as_ref().map(|r| BigRational::one() - r)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let f = |x: &BigRational| significant(x, REPORT_DIGITS);
        serde_json::json!({
            "kind": self.kind,
            "size": self.size,
            "epsilon": self.epsilon.to_string(),
            "approx_tcount": f(&self.approx_tcount),
            "catalytic_tcount": f(&self.catalytic_tcount),
            "ratio": self.ratio.as_ref().map(f),
            "reduction": self.reduction().as_ref().map(f),
            "asymptotic_ratio": self.asymptotic_ratio.as_ref().map(f),
            "notes": self.notes,
        })
    }

    pub fn csv_header() -> &'static str {
        "kind,size,epsilon,approx_tcount,catalytic_tcount,ratio,reduction"
    }

    pub fn to_csv_row(&self) -> String {
        let f = |x: Option<&BigRational>| x.map(|x| significant(x, REPORT_DIGITS)).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{}",
            self.kind_name(),
            self.size,
            self.epsilon,
            f(Some(&self.approx_tcount)),
            f(Some(&self.catalytic_tcount)),
            f(self.ratio.as_ref()),
            f(self.reduction().as_ref())
        )
    }

    fn kind_name(&self) -> &'static str {
        match self.kind {
            CostKind::Egate => "egate",
            CostKind::Qft => "qft",
        }
    }
}

impl fmt::Display for CostReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |x: &BigRational| significant(x, REPORT_DIGITS);
        let size = if self.kind == CostKind::Egate { "m" } else { "n" };
        writeln!(f, "kind: {}", self.kind_name())?;
        writeln!(f, "{size}: {}", self.size)?;
        writeln!(f, "epsilon: {}", self.epsilon)?;
        writeln!(f, "approx_tcount: {}", s(&self.approx_tcount))?;
        writeln!(f, "catalytic_tcount: {}", s(&self.catalytic_tcount))?;
        if let (Some(r), Some(d)) = (&self.ratio, self.reduction()) {
            writeln!(f, "ratio: {}", s(r))?;
            let pct = &d * BigRational::from_integer(100.into());
            writeln!(f, "reduction: {}%", significant(&pct, 6))?;
        }
        if let Some(a) = &self.asymptotic_ratio {
            writeln!(f, "asymptotic_ratio: {}", s(a))?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

fn int(v: u64) -> BigRational {
    BigRational::from_integer(v.into())
}

pub fn cost_model(kind: CostKind, size: u64, epsilon: &BigRational) -> Result<CostReport> {
    if !epsilon.is_positive() || *epsilon > BigRational::one() {
        return Err(Error::InvalidEpsilon);
    }
    if size == 0 {
        return Err(Error::Unsupported("size must be at least 1".into()));
    }
    let log_inv_eps = log2_approx(&epsilon.recip())?;
    let three = int(3);
    let (approx, catalytic, asymptotic, notes) = match kind {
        CostKind::Egate => {
            let m = int(size);
            let approx = &m * &three * log2_approx(&(&m / epsilon))?;
            let catalytic = int(6) * &log_inv_eps + int(4) * &m;
            let denom = &three * (&log_inv_eps + log2_approx(&m)?);
            let asym = (!denom.is_zero()).then(|| int(4) / denom);
            let notes = vec![
                "approx: each of m order-3 phase gates synthesized to precision eps/m at 3 log2(m/eps) T gates".into(),
                "catalytic: one catalyst prepared to precision eps, then 4 T gates per use".into(),
                "asymptotic ratio: 4 / (3 (log2(1/eps) + log2 m))".into(),
            ];
            (approx, catalytic, asym, notes)
        }
        CostKind::Qft => {
            let n = size;
            let pairs = n * (n - 1) / 2;
            let rotations = int(3 * pairs);
            let approx = if pairs == 0 {
                BigRational::zero()
            } else {
                &rotations * &three * log2_approx(&(&rotations / epsilon))?
            };
            let decrement: u64 = (2..=n).map(|k| (n - k + 1) * 4 * (k - 1)).sum();
            let prep = if n >= 2 { int(n) * &three * log2_approx(&(int(n) / epsilon))? } else { BigRational::zero() };
            let catalytic = int(decrement) + prep;
            let notes = vec![
                "approx: each controlled rotation costs 3 single-qubit rotations, each synthesized to eps/R at 3 log2(R/eps) T gates".into(),
                "catalytic: a k-bit controlled decrement costs 4(k-1) T gates; n catalysts prepared to eps/n each".into(),
            ];
            (approx, catalytic, None, notes)
        }
    };
    let ratio = (!approx.is_zero()).then(|| &catalytic / &approx);
    Ok(CostReport {
        kind,
        size,
        epsilon: epsilon.clone(),
        approx_tcount: approx,
        catalytic_tcount: catalytic,
        ratio,
        asymptotic_ratio: asymptotic,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn logs() {
        assert_eq!(significant(&log2_approx(&q(8, 1)).unwrap(), 30), "3");
        assert_eq!(significant(&log2_approx(&q(1, 4)).unwrap(), 30), "-2");
        // log₂ 3 = 1.58496250072115618145373894394781…
        assert_eq!(significant(&log2_approx(&q(3, 1)).unwrap(), 30), "1.58496250072115618145373894395");
        // log₂ 10 = 3.32192809488736234787031942948939…
        assert_eq!(significant(&log2_approx(&q(10, 1)).unwrap(), 30), "3.32192809488736234787031942949");
    }

    #[test]
    fn formatting() {
        assert_eq!(significant(&q(1, 8), 30), "0.125");
        assert_eq!(significant(&q(-12345, 1), 3), "-12300");
        assert_eq!(significant(&q(1, 3), 5), "0.33333");
        assert_eq!(significant(&q(999_999, 1_000_000), 3), "1");
    }

    #[test]
    fn degenerate_egate() {
        let r = cost_model(CostKind::Egate, 1, &q(1, 1)).unwrap();
        assert_eq!(r.catalytic_tcount, q(4, 1));
        assert!(r.ratio.is_none());
        assert_eq!(cost_model(CostKind::Egate, 1, &q(0, 1)).unwrap_err(), Error::InvalidEpsilon);
        assert_eq!(cost_model(CostKind::Egate, 1, &q(3, 2)).unwrap_err(), Error::InvalidEpsilon);
    }
}
