use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::CycElement;

/// Dyadic rational approximation of a complex number.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexApprox {
    pub re: BigRational,
    pub im: BigRational,
    /// Guaranteed bound on |approx - exact| in each component.
    pub error_bound: BigRational,
}

impl ComplexApprox {
    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }

    /// Decimal rendering of a component with `digits` fractional digits (truncated).
    pub fn decimal(value: &BigRational, digits: u32) -> String {
        let scale = BigInt::from(10).pow(digits);
        let scaled = (value * BigRational::from_integer(scale.clone())).round().to_integer();
        let neg = scaled.is_negative();
        let abs = scaled.abs().to_string();
        let padded = format!("{:0>width$}", abs, width = digits as usize + 1);
        let (int, frac) = padded.split_at(padded.len() - digits as usize);
        format!("{}{}.{}", if neg { "-" } else { "" }, int, frac)
    }
}

/// atan(1/x) scaled by 2^bits.
fn atan_inv(x: u64, bits: u32) -> BigInt {
    let one = BigInt::one() << bits;
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut term = &one / &x;
    let mut sum = term.clone();
    let mut k: u64 = 1;
    loop {
        term = &term / &x2;
        if term.is_zero() {
            break;
        }
        let t = &term / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= t;
        } else {
            sum += t;
        }
        k += 1;
    }
    sum
}

fn pi_fixed(bits: u32) -> BigInt {
    (BigInt::from(16) * atan_inv(5, bits)) - (BigInt::from(4) * atan_inv(239, bits))
}

/// (cos θ, sin θ)·2^bits for θ = theta/2^bits with |θ| ≤ 4.
fn cos_sin_fixed(theta: &BigInt, bits: u32) -> (BigInt, BigInt) {
    let one = BigInt::one() << bits;
    let mut cos = one.clone();
    let mut sin = BigInt::zero();
    let mut term = one;
    let mut k: u64 = 1;
    loop {
        term = ((&term * theta) >> bits) / BigInt::from(k);
        if term.is_zero() {
            break;
        }
        match k % 4 {
            1 => sin += &term,
            2 => cos -= &term,
            3 => sin -= &term,
            _ => cos += &term,
        }
        k += 1;
    }
    (cos, sin)
}

/// Evaluates the distinguished embedding ζ_N ↦ e^{2πi/N} with error below 10^-digits.
pub fn to_complex(a: &CycElement, digits: u32) -> ComplexApprox {
    let digits = digits.max(1);
    let coeffs = a.coeffs();
    let mut mag = BigRational::zero();
    for (_, q) in &coeffs {
        mag += q.abs();
    }
    let mag_bits = mag.ceil().to_integer().bits() as u32;
    let bits = (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + mag_bits + 24;
    let work = bits + 16;
    let pi = pi_fixed(work);
    let n = a.conductor() as i64;
    let mut re = BigRational::zero();
    let mut im = BigRational::zero();
    let denom = BigRational::from_integer(BigInt::one() << work);
    for (e, q) in coeffs {
        // Reduce e/N into (-1/2, 1/2] so that |θ| ≤ π.
        let mut e = e as i64;
        if 2 * e > n {
            e -= n;
        }
        let theta = (&pi * BigInt::from(2 * e)) / BigInt::from(n);
        let (c, s) = cos_sin_fixed(&theta, work);
        re += &q * BigRational::new(c, BigInt::one()) / &denom;
        im += &q * BigRational::new(s, BigInt::one()) / &denom;
    }
    let round = |x: BigRational| {
        let scale = BigRational::from_integer(BigInt::one() << bits);
        (x * &scale).round() / scale
    };
    ComplexApprox {
        re: round(re),
        im: round(im),
        error_bound: BigRational::new(BigInt::one(), BigInt::from(10).pow(digits)),
    }
}
