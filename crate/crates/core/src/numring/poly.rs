use std::fmt;

use serde::{Deserialize, Serialize};

use super::CycElement;

/// Polynomial with CycElement coefficients, ascending degree.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polynomial {
    pub coeffs: Vec<CycElement>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<CycElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| CycElement::from_int(v)).collect())
    }

    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn constant(c: CycElement) -> Self {
        Self::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports None.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &CycElement) -> CycElement {
        let mut acc = CycElement::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(vec![]);
        }
        let mut out = vec![CycElement::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::from_ints(&[1]);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    /// Product of (x - r) over the given roots.
    pub fn from_roots(roots: &[CycElement]) -> Self {
        let mut p = Self::from_ints(&[1]);
        for r in roots {
            p = p.mul(&Self::new(vec![-r, CycElement::one()]));
        }
        p
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            let coef = c.to_string();
            let simple = !coef.contains([' ', 'z']);
            let term = if mono.is_empty() {
                coef
            } else if c.is_one() {
                mono
            } else if coef == "-1" {
                format!("-{mono}")
            } else if simple {
                format!("{coef}{mono}")
            } else {
                format!("({coef}){mono}")
            };
            parts.push(term);
        }
        let mut s = parts[0].clone();
        for p in &parts[1..] {
            match p.strip_prefix('-') {
                Some(rest) => s.push_str(&format!(" - {rest}")),
                None => s.push_str(&format!(" + {p}")),
            }
        }
        write!(f, "{s}")
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_product() {
        let p = Polynomial::from_roots(&[CycElement::sqrt5(), -CycElement::sqrt5()]);
        assert_eq!(p, Polynomial::from_ints(&[-5, 0, 1]));
        assert_eq!(p.to_string(), "x^2 - 5");
        assert!(p.eval(&CycElement::sqrt5()).is_zero());
    }
}
