//! Three candidate embeddings of {R = diag(1, ω₃), X} into rational matrices with a catalyst.

use std::collections::BTreeMap;

use crate::embed::{Candidate, CandidateGate};
use crate::exactmat::ExactMatrix;
use crate::numring::CycElement;

fn q(num: i64, den: i64) -> CycElement {
    CycElement::from_frac(num, den)
}

fn rat(rows: &[&[i64]], den: i64) -> ExactMatrix {
    ExactMatrix::from_ints(rows).scale(&q(1, den))
}

fn candidate(name: &str, lambda: ExactMatrix, projector: ExactMatrix) -> Candidate {
    let k = lambda.rows();
    let source_r = ExactMatrix::diag(&[CycElement::one(), CycElement::omega3()]);
    let source_x = ExactMatrix::from_ints(&[&[0, 1], &[1, 0]]);
    let image_r = ExactMatrix::identity(k).direct_sum(&lambda);
    let image_x = source_x.tensor(&ExactMatrix::identity(k));
    let mut gates = BTreeMap::new();
    gates.insert("R".to_string(), CandidateGate { source: source_r, image: image_r });
    gates.insert("X".to_string(), CandidateGate { source: source_x, image: image_x });
    Candidate::new(name, projector, gates)
}

/// Embeddings 1, 2 and 3: φ_R = I ⊕ Λ, φ_X = X⊗I with the given Λ and catalyst projector.
pub fn order3_candidates() -> Vec<Candidate> {
    let a = CycElement::omega3();
    let a2 = a.pow(2);
    let one = CycElement::one();
    let p3 = ExactMatrix::from_rows(vec![
        vec![one.clone(), a.clone(), a2.clone()],
        vec![a2.clone(), one.clone(), a.clone()],
        vec![a.clone(), a2.clone(), one.clone()],
    ])
    .unwrap()
    .scale(&q(1, 3));

    let l1 = rat(&[&[-2, -2, 1], &[1, -2, -2], &[-2, 1, -2]], 3);
    let l2 = ExactMatrix::from_ints(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);

    let l3 = rat(&[&[-1, -1, -1, -1], &[1, -1, -1, 1], &[1, 1, -1, -1], &[1, -1, 1, -1]], 2);
    let b = &one + &(&a + &a); // 1 + 2α
    let c = &one + &(&a2 + &a2); // 1 + 2α²
    let three = CycElement::from_int(3);
    let p4 = ExactMatrix::from_rows(vec![
        vec![three.clone(), b.clone(), b.clone(), b.clone()],
        vec![c.clone(), three.clone(), b.clone(), c.clone()],
        vec![c.clone(), c.clone(), three.clone(), b.clone()],
        vec![c.clone(), b.clone(), c.clone(), three],
    ])
    .unwrap()
    .scale(&q(1, 6));

    vec![candidate("embedding-1", l1, p3.clone()), candidate("embedding-2", l2, p3), candidate("embedding-3", l3, p4)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn candidates_are_catalytic() {
        for c in order3_candidates() {
            assert!(c.projector.is_orthogonal_projector().unwrap(), "{}", c.name);
            assert_eq!(c.catalytic_failure().unwrap(), None, "{}", c.name);
        }
    }
}
