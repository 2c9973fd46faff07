use serde::Serialize;

use super::ExactMatrix;
use crate::error::{Error, Result};
use crate::numring::{CycElement, Polynomial};

/// det(xI - A) by Faddeev–LeVerrier.
pub fn char_poly(a: &ExactMatrix) -> Result<Polynomial> {
    if !a.is_square() {
        return Err(Error::NotSquare);
    }
    let n = a.rows();
    let mut c = vec![CycElement::zero(); n + 1];
    c[n] = CycElement::one();
    let id = ExactMatrix::identity(n);
    let mut m = ExactMatrix::zeros(n, n);
    for k in 1..=n {
        m = a.mul(&m)?.add(&id.scale(&c[n - k + 1]))?;
        let t = a.mul(&m)?.trace()?;
        c[n - k] = (-t).scale(&num_rational::BigRational::new(1.into(), (k as i64).into()));
    }
    Ok(Polynomial::new(c))
}

/// Reduced row echelon form; pivots on the first nonzero entry in each column.
pub fn rref(a: &ExactMatrix) -> Result<(ExactMatrix, Vec<usize>)> {
    let (rows, cols) = (a.rows(), a.cols());
    let mut m: Vec<Vec<CycElement>> = (0..rows).map(|r| a.row(r).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv()?;
        for x in m[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let pivot = m[r][c..cols].to_vec();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row[c..cols].iter_mut().zip(&pivot) {
                    if p.is_zero() {
                        continue;
                    }
                    *x = &*x - &(&f * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Ok((ExactMatrix::from_rows(m)?, pivots))
}

/// Basis of the right kernel, one vector per free column.
pub fn kernel(a: &ExactMatrix) -> Result<Vec<Vec<CycElement>>> {
    let (m, pivots) = rref(a)?;
    let cols = a.cols();
    Ok((0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![CycElement::zero(); cols];
            v[f] = CycElement::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -m.get(i, f);
            }
            v
        })
        .collect())
}

/// Eigenspace of a normal matrix: orthogonal unnormalized basis and its projector.
#[derive(Clone, Debug, Serialize)]
pub struct Eigenspace {
    pub eigenvalue: CycElement,
    pub basis: Vec<Vec<CycElement>>,
    /// ⟨u, u⟩ for each basis vector.
    pub norms_sq: Vec<CycElement>,
    pub projector: ExactMatrix,
    pub multiplicity: usize,
}

pub fn eigenspace_for(a: &ExactMatrix, lambda: &CycElement) -> Result<Eigenspace> {
    if !a.is_square() {
        return Err(Error::NotSquare);
    }
    let n = a.rows();
    let shifted = a.sub(&ExactMatrix::identity(n).scale(lambda))?;
    let raw = kernel(&shifted)?;
    if raw.is_empty() {
        return Err(Error::NotEigenvalue(lambda.to_string()));
    }
    let mut basis: Vec<Vec<CycElement>> = Vec::new();
    let mut norms: Vec<CycElement> = Vec::new();
    for v in raw {
        let mut u = v.clone();
        for (b, nb) in basis.iter().zip(&norms) {
            let f = ExactMatrix::inner(b, &v).checked_div(nb)?;
            if f.is_zero() {
                continue;
            }
            for (x, y) in u.iter_mut().zip(b) {
                *x = &*x - &(&f * y);
            }
        }
        norms.push(ExactMatrix::inner(&u, &u));
        basis.push(u);
    }
    let mut proj = ExactMatrix::zeros(n, n);
    for (u, nu) in basis.iter().zip(&norms) {
        let inv = nu.inv()?;
        let outer = ExactMatrix::from_fn(n, n, |r, c| &(&u[r] * &u[c].conj()) * &inv);
        proj = proj.add(&outer)?;
    }
    Ok(Eigenspace { eigenvalue: lambda.clone(), multiplicity: basis.len(), basis, norms_sq: norms, projector: proj })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn char_polys() {
        let a = ExactMatrix::from_ints(&[&[0, 1], &[-1, 0]]);
        assert_eq!(char_poly(&a).unwrap(), Polynomial::from_ints(&[1, 0, 1]));
        let i3 = ExactMatrix::identity(3);
        assert_eq!(char_poly(&i3).unwrap(), Polynomial::from_ints(&[-1, 3, -3, 1]));
    }

    #[test]
    fn sqrt5_projector() {
        let l = ExactMatrix::from_ints(&[&[1, 2], &[2, -1]]);
        let s5 = CycElement::sqrt5();
        let e = eigenspace_for(&l, &s5).unwrap();
        let fifth = s5.scale(&num_rational::BigRational::new(1.into(), 5.into()));
        let half = CycElement::from_frac(1, 2);
        let expected = ExactMatrix::from_rows(vec![
            vec![&half * &(&CycElement::one() + &fifth), fifth.clone()],
            vec![fifth.clone(), &half * &(&CycElement::one() - &fifth)],
        ])
        .unwrap();
        assert_eq!(e.projector, expected);
        assert_eq!(e.multiplicity, 1);
        assert!(eigenspace_for(&l, &CycElement::one()).is_err());
    }

    #[test]
    fn identity_eigenspace() {
        let e = eigenspace_for(&ExactMatrix::identity(2), &CycElement::one()).unwrap();
        assert_eq!(e.multiplicity, 2);
        assert_eq!(e.projector, ExactMatrix::identity(2));
    }
}
