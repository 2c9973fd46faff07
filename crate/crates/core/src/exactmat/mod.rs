//! Exact dense matrices over cyclotomic fields.

mod linalg;
pub mod rational;

pub use linalg::{char_poly, eigenspace_for, kernel, rref, Eigenspace};

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numring::{lcm, CycElement, GaloisAutomorphism, Polynomial};

#[derive(Clone)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    conductor: u32,
    entries: Vec<CycElement>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<CycElement>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!("{rows}x{cols} with {} entries", entries.len())));
        }
        let conductor = entries.iter().fold(1, |acc, e| lcm(acc, e.conductor()));
        Ok(Self::with_conductor(rows, cols, conductor, entries))
    }

    fn with_conductor(rows: usize, cols: usize, conductor: u32, entries: Vec<CycElement>) -> Self {
        let entries = entries
            .into_iter()
            .map(|e| if e.conductor() == conductor { e } else { e.lift(conductor).expect("divides") })
            .collect();
        ExactMatrix { rows, cols, conductor, entries }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> CycElement) -> Self {
        let mut f = f;
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Self::new(rows, cols, entries).expect("positive shape")
    }

    pub fn from_rows(rows: Vec<Vec<CycElement>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| CycElement::from_int(v)).collect()).collect())
            .expect("rectangular")
    }

    pub fn column(v: Vec<CycElement>) -> Result<Self> {
        let n = v.len();
        Self::new(n, 1, v)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| CycElement::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { CycElement::one() } else { CycElement::zero() })
    }

    pub fn diag(d: &[CycElement]) -> Self {
        let n = d.len();
        Self::from_fn(n, n, |r, c| if r == c { d[r].clone() } else { CycElement::zero() })
    }

    /// |a⟩⊗|b⟩ ↦ |b⟩⊗|a⟩ for a < m, b < n, with |a⟩⊗|b⟩ = |a·n + b⟩.
    pub fn swap_matrix(m: usize, n: usize) -> Self {
        let d = m * n;
        let mut e = vec![CycElement::zero(); d * d];
        for a in 0..m {
            for b in 0..n {
                e[(b * m + a) * d + (a * n + b)] = CycElement::one();
            }
        }
        Self::new(d, d, e).expect("positive shape")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &CycElement {
        &self.entries[r * self.cols + c]
    }

    pub fn entries(&self) -> &[CycElement] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> &[CycElement] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col_vec(&self, c: usize) -> Vec<CycElement> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn lift(&self, m: u32) -> Result<Self> {
        if m % self.conductor != 0 {
            return Err(Error::ConductorMismatch { have: self.conductor, want: m });
        }
        Ok(Self::with_conductor(self.rows, self.cols, m, self.entries.clone()))
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let e = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Self::new(self.rows, self.cols, e)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let e = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Self::new(self.rows, self.cols, e)
    }

    pub fn neg(&self) -> Self {
        self.map(|e| -e)
    }

    pub fn scale(&self, s: &CycElement) -> Self {
        self.map(|e| e * s)
    }

    pub fn map(&self, f: impl Fn(&CycElement) -> CycElement) -> Self {
        Self::new(self.rows, self.cols, self.entries.iter().map(f).collect()).expect("same shape")
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let (n, m, p) = (self.rows, self.cols, other.cols);
        let mut out = vec![CycElement::zero(); n * p];
        for i in 0..n {
            for k in 0..m {
                let a = &self.entries[i * m + k];
                if a.is_zero() {
                    continue;
                }
                let one = a.is_one();
                for j in 0..p {
                    let b = &other.entries[k * p + j];
                    if b.is_zero() {
                        continue;
                    }
                    let t = if one { b.clone() } else { a * b };
                    let slot = &mut out[i * p + j];
                    *slot = if slot.is_zero() { t } else { &*slot + &t };
                }
            }
        }
        Self::new(n, p, out)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Kronecker product with |a⟩⊗|b⟩ = |a·n + b⟩.
    pub fn tensor(&self, other: &Self) -> Self {
        let (r1, c1, r2, c2) = (self.rows, self.cols, other.rows, other.cols);
        let (rows, cols) = (r1 * r2, c1 * c2);
        let mut out = vec![CycElement::zero(); rows * cols];
        for i1 in 0..r1 {
            for j1 in 0..c1 {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..r2 {
                    for j2 in 0..c2 {
                        let b = other.get(i2, j2);
                        if b.is_zero() {
                            continue;
                        }
                        out[(i1 * r2 + i2) * cols + j1 * c2 + j2] = a * b;
                    }
                }
            }
        }
        Self::new(rows, cols, out).expect("positive shape")
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let (rows, cols) = (self.rows + other.rows, self.cols + other.cols);
        Self::from_fn(rows, cols, |r, c| {
            if r < self.rows && c < self.cols {
                self.get(r, c).clone()
            } else if r >= self.rows && c >= self.cols {
                other.get(r - self.rows, c - self.cols).clone()
            } else {
                CycElement::zero()
            }
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }

    pub fn conj(&self) -> Self {
        self.map(|e| e.conj())
    }

    pub fn trace(&self) -> Result<CycElement> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        Ok((0..self.rows).fold(CycElement::zero(), |acc, i| &acc + self.get(i, i)))
    }

    /// Entrywise Galois action.
    pub fn galois(&self, g: &GaloisAutomorphism) -> Result<Self> {
        let e = self.entries.iter().map(|x| g.apply(x)).collect::<Result<Vec<_>>>()?;
        Self::new(self.rows, self.cols, e)
    }

    pub fn is_normal(&self) -> Result<bool> {
        let d = self.dagger();
        Ok(self.mul(&d)? == d.mul(self)?)
    }

    pub fn is_unitary(&self) -> Result<bool> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        let id = Self::identity(self.rows);
        let d = self.dagger();
        Ok(d.mul(self)? == id && self.mul(&d)? == id)
    }

    pub fn is_hermitian(&self) -> Result<bool> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        Ok(*self == self.dagger())
    }

    pub fn is_orthogonal_projector(&self) -> Result<bool> {
        Ok(self.is_hermitian()? && self.mul(self)? == *self)
    }

    /// p(A) by Horner's rule.
    pub fn eval_poly(&self, p: &Polynomial) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        let n = self.rows;
        let mut acc = Self::zeros(n, n);
        for c in p.coeffs.iter().rev() {
            acc = acc.mul(self)?.add(&Self::identity(n).scale(c))?;
        }
        Ok(acc)
    }

    /// ⟨u, v⟩ = u†v for column vectors.
    pub fn inner(u: &[CycElement], v: &[CycElement]) -> CycElement {
        u.iter().zip(v).fold(CycElement::zero(), |acc, (a, b)| &acc + &(&a.conj() * b))
    }

    /// A·v for a vector v.
    pub fn apply(&self, v: &[CycElement]) -> Result<Vec<CycElement>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { left: self.cols, right: v.len() });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r).iter().zip(v).fold(CycElement::zero(), |acc, (a, b)| {
                    if a.is_zero() || b.is_zero() {
                        acc
                    } else {
                        &acc + &(a * b)
                    }
                })
            })
            .collect())
    }

    /// First position where the two matrices differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        if self.rows != other.rows || self.cols != other.cols {
            return Some((0, 0));
        }
        (0..self.entries.len())
            .find(|&i| self.entries[i] != other.entries[i])
            .map(|i| (i / self.cols, i % self.cols))
    }
}

impl PartialEq for ExactMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.entries == other.entries
    }
}

impl Eq for ExactMatrix {}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} over Q(z{}) [", self.rows, self.cols, self.conductor)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|e| e.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MatJson {
    rows: usize,
    cols: usize,
    conductor: u32,
    entries: Vec<CycElement>,
}

impl ExactMatrix {
    /// Reads the serialized form, or a list of rows whose entries are integers or element expressions.
    pub fn from_json_value(v: &serde_json::Value) -> Result<Self> {
        let Some(rows) = v.as_array() else {
            return serde_json::from_value(v.clone()).map_err(Error::from);
        };
        let parse = |x: &serde_json::Value| match x {
            serde_json::Value::String(s) => crate::numring::parse_element(s),
            serde_json::Value::Number(n) => crate::numring::parse_element(&n.to_string()),
            _ => Err(Error::Parse(format!("bad matrix entry {x}"))),
        };
        let rows = rows
            .iter()
            .map(|r| r.as_array().ok_or(Error::Parse("matrix rows must be arrays".into()))?.iter().map(parse).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        Self::from_rows(rows)
    }
}

impl Serialize for ExactMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatJson { rows: self.rows, cols: self.cols, conductor: self.conductor, entries: self.entries.clone() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MatJson::deserialize(d)?;
        let m = ExactMatrix::new(j.rows, j.cols, j.entries).map_err(D::Error::custom)?;
        if j.conductor == 0 || j.conductor % m.conductor != 0 {
            return Err(D::Error::custom("entries do not live over the stated conductor"));
        }
        m.lift(j.conductor).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h() -> ExactMatrix {
        let s = CycElement::sqrt2().inv().unwrap();
        ExactMatrix::from_ints(&[&[1, 1], &[1, -1]]).scale(&s)
    }

    #[test]
    fn hadamard_squares_to_identity() {
        assert_eq!(h().mul(&h()).unwrap(), ExactMatrix::identity(2));
        assert!(h().is_unitary().unwrap());
    }

    #[test]
    fn cx_is_diag_of_blocks() {
        let x = ExactMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        let cx = ExactMatrix::identity(2).direct_sum(&x);
        let p0 = ExactMatrix::from_ints(&[&[1, 0], &[0, 0]]);
        let p1 = ExactMatrix::from_ints(&[&[0, 0], &[0, 1]]);
        let via_tensor = p0.tensor(&ExactMatrix::identity(2)).add(&p1.tensor(&x)).unwrap();
        assert_eq!(cx, via_tensor);
    }

    #[test]
    fn swap_matrices() {
        assert_eq!(ExactMatrix::swap_matrix(1, 3), ExactMatrix::identity(3));
        let s = ExactMatrix::swap_matrix(2, 2);
        assert_eq!(s, ExactMatrix::from_ints(&[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]]));
        let s23 = ExactMatrix::swap_matrix(2, 3);
        assert_eq!(s23.mul(&ExactMatrix::swap_matrix(3, 2)).unwrap(), ExactMatrix::identity(6));
        // |1⟩⊗|2⟩ = index 5 in 2⊗3; its image |2⟩⊗|1⟩ = index 2·2+1 = 5 in 3⊗2.
        assert!(s23.get(5, 5).is_one());
        // |0⟩⊗|1⟩ = 1 ↦ |1⟩⊗|0⟩ = 2.
        assert!(s23.get(2, 1).is_one());
    }

    #[test]
    fn predicates() {
        assert!(ExactMatrix::from_ints(&[&[1, 2], &[2, -1]]).is_normal().unwrap());
        assert!(!ExactMatrix::from_ints(&[&[0, 1], &[0, 0]]).is_normal().unwrap());
        let w = CycElement::omega8();
        let half = CycElement::from_frac(1, 2);
        let p = ExactMatrix::from_rows(vec![vec![CycElement::one(), w.pow(7)], vec![w, CycElement::one()]])
            .unwrap()
            .scale(&half);
        assert!(p.is_orthogonal_projector().unwrap());
    }

    #[test]
    fn json_roundtrip() {
        let m = h();
        let s = serde_json::to_string(&m).unwrap();
        let back: ExactMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.conductor(), 8);
    }
}
