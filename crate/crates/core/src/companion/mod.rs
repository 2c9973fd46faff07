//! Normal pseudo-companion matrices and the catalog of verified embeddings.

mod catalog;
mod linembed;

pub use catalog::{clifford_t_cos5, cos5_pair, egate_lambda, omega_pair, reference_entries, tower_entry, Catalog, CatalogEntry, MAX_TOWER_K};
pub use linembed::order3_candidates;

use crate::error::{Error, Result};
use crate::exactmat::{char_poly, ExactMatrix};
use crate::numring::{CycElement, Polynomial};

/// [[0,1],[s,0]], the normal companion of x² − s for unimodular s.
pub fn shift_companion(s: &CycElement) -> Result<ExactMatrix> {
    if !(s * &s.conj()).is_one() {
        return Err(Error::NotUnimodular);
    }
    ExactMatrix::from_rows(vec![vec![CycElement::zero(), CycElement::one()], vec![s.clone(), CycElement::zero()]])
}

/// [[a,b],[b,−a]] for real a, b: Hermitian with characteristic polynomial x² − (a² + b²).
pub fn sum_of_squares_companion(a: &CycElement, b: &CycElement) -> Result<ExactMatrix> {
    if a.conj() != *a || b.conj() != *b {
        return Err(Error::NotNormal);
    }
    ExactMatrix::from_rows(vec![vec![a.clone(), b.clone()], vec![b.clone(), -a]])
}

/// i·S + c·I with S = ½[[1, 1+2c],[1+2c, −1]], whose eigenvalues are c ± i·sin when
/// sin² = (½)² + (½+c)² = 1 − c². Returns the matrix and its characteristic polynomial.
pub fn shifted_rotation_companion(c: &CycElement) -> Result<(ExactMatrix, Polynomial)> {
    if c.conj() != *c {
        return Err(Error::NotNormal);
    }
    let half = CycElement::from_frac(1, 2);
    let one = CycElement::one();
    let b = &half + c;
    let sin_sq = &one - &(c * c);
    if sin_sq.is_zero() {
        return Err(Error::Unsupported("cosine ±1 gives a real root".into()));
    }
    if &(&half * &half) + &(&b * &b) != sin_sq {
        return Err(Error::Unsupported(format!("({half})² + ({b})² differs from 1 − c² for c = {c}")));
    }
    let s = sum_of_squares_companion(&half, &b)?;
    let m = s.scale(&CycElement::i()).add(&ExactMatrix::identity(2).scale(c))?;
    let expect = Polynomial::new(vec![one.clone(), c.scale(&num_rational::BigRational::from_integer((-2).into())), one]);
    let cp = char_poly(&m)?;
    if cp != expect {
        return Err(Error::NotPseudoCompanion);
    }
    Ok((m, cp))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift() {
        assert_eq!(shift_companion(&CycElement::one()).unwrap(), ExactMatrix::from_ints(&[&[0, 1], &[1, 0]]));
        assert_eq!(shift_companion(&CycElement::from_int(5)).unwrap_err(), Error::NotUnimodular);
        let l = shift_companion(&CycElement::zeta(4)).unwrap();
        assert!(l.is_normal().unwrap());
    }

    #[test]
    fn sums_of_squares() {
        let m = sum_of_squares_companion(&CycElement::one(), &CycElement::from_int(2)).unwrap();
        assert_eq!(m, ExactMatrix::from_ints(&[&[1, 2], &[2, -1]]));
        assert_eq!(char_poly(&m).unwrap(), Polynomial::from_ints(&[-5, 0, 1]));
        assert!(sum_of_squares_companion(&CycElement::i(), &CycElement::one()).is_err());
    }

    #[test]
    fn rotation() {
        let c = CycElement::cos_2pi_over(5);
        let (m, cp) = shifted_rotation_companion(&c).unwrap();
        let i = CycElement::i();
        let two_c = &c + &c;
        let half = CycElement::from_frac(1, 2);
        let off = &i + &(&i * &two_c);
        let expect = ExactMatrix::from_rows(vec![
            vec![&i + &two_c, off.clone()],
            vec![off, &two_c - &i],
        ])
        .unwrap()
        .scale(&half);
        assert_eq!(m, expect);
        // x² − 2c·x + 1 annihilates ζ₅.
        assert!(cp.eval(&CycElement::zeta(5)).is_zero());
        assert!(shifted_rotation_companion(&CycElement::cos_2pi_over(7)).is_err());
        assert!(shifted_rotation_companion(&CycElement::one()).is_err());
    }
}
