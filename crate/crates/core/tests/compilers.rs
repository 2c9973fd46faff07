use catembed_core::circuit::GateSet;
use catembed_core::companion::Catalog;
use catembed_core::compilers::{build_qft, compile_e, compile_qft, egate_embedding, qft_matrix};
use catembed_core::embed::lift_circuit;
use catembed_core::exactmat::ExactMatrix;
use catembed_core::numring::{CycElement, GaloisAutomorphism};
use catembed_core::sim::{check_catalytic_action, check_galois_action, standard_probes};
use catembed_core::Circuit;

fn e_matrix() -> ExactMatrix {
    ExactMatrix::diag(&[CycElement::one(), CycElement::omega3()])
}

#[test]
fn e_gate_template_is_phi_of_e() {
    let catalog = Catalog::builtin();
    let p = compile_e(&catalog).unwrap();
    let pe = catalog.get("omega3/Domega8").unwrap().verify().unwrap();
    assert_eq!(p.circuit.evaluate(&p.gate_set).unwrap(), pe.phi(&e_matrix()).unwrap());
    assert_eq!(p.t_count, 6);
    assert_eq!(p.t_count_optimized, Some(4));
    let report = check_catalytic_action(&p, &e_matrix(), &standard_probes(1).unwrap()).unwrap();
    assert!(report.all_pass());
    // The catalyst has squared norm 3 − √3.
    let three = CycElement::from_int(3);
    assert_eq!(p.catalysts[0].norm_sq.as_ref().unwrap(), &(&three - &(&CycElement::zeta(12) + &CycElement::zeta_pow(12, -1))));
}

#[test]
fn e_gate_lift_of_a_two_qubit_circuit() {
    let catalog = Catalog::builtin();
    let (pe, gse) = egate_embedding(&catalog).unwrap();
    let src = GateSet::clifford_t_e();
    let c = Circuit::parse("(seq (par E I2) CX)", &src).unwrap();
    let lifted = lift_circuit(&gse, &c).unwrap();
    let m = lifted.evaluate(&gse.target).unwrap();
    let ip = ExactMatrix::identity(4).tensor(&pe.projector);
    assert_eq!(m.mul(&ip).unwrap(), c.evaluate(&src).unwrap().tensor(&pe.projector));
}

#[test]
fn qft_circuit_is_the_fourier_matrix() {
    for n in 1..=4 {
        let (p, gs) = build_qft(n).unwrap();
        assert_eq!(p.to_circuit(&gs).unwrap().evaluate(&gs).unwrap(), qft_matrix(n).unwrap(), "n = {n}");
    }
}

#[test]
fn compiled_qft_acts_catalytically() {
    for n in 1..=4 {
        for expand in [false, true] {
            let p = compile_qft(n, false, expand).unwrap();
            let f = qft_matrix(n).unwrap();
            let r = check_catalytic_action(&p, &f, &standard_probes(n as usize).unwrap()).unwrap();
            assert!(r.all_pass(), "n = {n}, expand = {expand}");
            let inv = compile_qft(n, true, expand).unwrap();
            let r = check_catalytic_action(&inv, &f.dagger(), &standard_probes(n as usize).unwrap()).unwrap();
            assert!(r.all_pass(), "inverse n = {n}, expand = {expand}");
        }
    }
}

#[test]
fn expansion_uses_only_toffoli_gates_for_small_registers() {
    let p = compile_qft(3, false, true).unwrap();
    let counts = p.program.gate_counts();
    assert!(counts.keys().all(|g| ["H", "X", "CX", "CCX", "SWAP"].contains(&g.as_str())), "{counts:?}");
    assert_eq!(p.program.qubits, 6);
    // Two data qubits and two catalysts leave no spare wire for the three-control step.
    let p = compile_qft(2, false, true).unwrap();
    assert_eq!(p.program.qubits, 5);
    assert!(p.catalysts.last().unwrap().is_borrowed());
}

#[test]
fn conjugate_catalysts_give_the_conjugate_transform() {
    let n = 3;
    let p = compile_qft(n, false, false).unwrap();
    let f = qft_matrix(n).unwrap();
    // Conjugation fixes the entries of H, so only the rotations are twisted.
    let g = GaloisAutomorphism::conjugation(8);
    let conj: Vec<Vec<CycElement>> =
        (1..=n).rev().map(|k| vec![CycElement::one(), CycElement::zeta(1 << k).conj()]).collect();
    let r = check_galois_action(&p, &g, &conj, &f, &standard_probes(n as usize).unwrap()).unwrap();
    assert!(r.all_pass());
    // σ₅ sends √2 to −√2, which the untwisted H gates do not follow.
    let g5 = GaloisAutomorphism::new(8, 5).unwrap();
    let conj5: Vec<Vec<CycElement>> =
        (1..=n).rev().map(|k| vec![CycElement::one(), CycElement::zeta(1 << k).pow(5)]).collect();
    let r = check_galois_action(&p, &g5, &conj5, &f, &standard_probes(n as usize).unwrap()).unwrap();
    assert_eq!(r.catalysts_conjugate, Some(true));
    assert!(!r.all_pass());
    let wrong = vec![vec![CycElement::one(), CycElement::one()]; n as usize];
    let r = check_galois_action(&p, &g, &wrong, &f, &standard_probes(n as usize).unwrap()).unwrap();
    assert!(!r.all_pass());
}
