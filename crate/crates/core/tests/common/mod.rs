//! Random instances and law checks shared by the property suite and the acceptance target.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::OnceLock;

use catembed_core::circuit::{std_matrix, GateSet};
use catembed_core::companion::{Catalog, CatalogEntry};
use catembed_core::compilers::egate_embedding;
use catembed_core::embed::lift_circuit;
use catembed_core::numring::{CycElement, Denominators, RingSpec};
use catembed_core::sim::{apply, ExactState};
use catembed_core::{Circuit, ExactMatrix, Gate, GateSetEmbedding, PreEmbedding};
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{TestCaseError, TestRunner};

pub const CASES: u32 = 200;
pub const PER_ENTRY: usize = 24;

pub struct Fixture {
    pub entry: CatalogEntry,
    pub pe: PreEmbedding,
    pub unitaries: Vec<ExactMatrix>,
    /// Source gates U0, U1, … (the unitaries) and CX, each lifted to the gate phi_G = Φ(e(G)).
    pub gse: GateSetEmbedding,
}

pub fn fixtures() -> &'static [Fixture] {
    static F: OnceLock<Vec<Fixture>> = OnceLock::new();
    F.get_or_init(|| {
        Catalog::builtin()
            .entries
            .into_iter()
            .map(|entry| {
                let pe = entry.verify().unwrap();
                let unitaries = unitary_generators(&pe);
                let gse = matrix_gate_embedding(&pe, &unitaries);
                Fixture { entry, pe, unitaries, gse }
            })
            .collect()
    })
}

/// 2×2 unitaries with entries in R[α]: X, phases, and H or a √5 rotation when available.
fn unitary_generators(pe: &PreEmbedding) -> Vec<ExactMatrix> {
    let ext = pe.tower.extension_ring();
    let mut out = vec![ExactMatrix::from_ints(&[&[0, 1], &[1, 0]])];
    let a = pe.tower.ambient;
    let l = if a % 4 == 0 { a } else if a % 2 == 0 { 2 * a } else { 4 * a };
    for j in 1..l {
        let u = CycElement::zeta_pow(l, j as i64);
        if ext.contains(&u) {
            out.push(ExactMatrix::diag(&[CycElement::one(), u]));
        }
    }
    let h = std_matrix("H").unwrap();
    if h.entries().iter().all(|x| ext.contains(x)) {
        out.push(h);
    }
    let r5 = ExactMatrix::from_ints(&[&[1, -2], &[2, 1]]).scale(&CycElement::sqrt5().inv().unwrap());
    if r5.entries().iter().all(|x| ext.contains(x)) {
        out.push(r5);
    }
    out
}

fn matrix_gate_embedding(pe: &PreEmbedding, unitaries: &[ExactMatrix]) -> GateSetEmbedding {
    let mut source = GateSet::new("unitaries");
    let mut target = GateSet::new("phi(unitaries)");
    let mut templates = BTreeMap::new();
    let gates = unitaries.iter().enumerate().map(|(j, u)| (format!("U{j}"), u.clone()));
    for (name, m) in gates.chain([("CX".to_string(), std_matrix("CX").unwrap())]) {
        let image = pe.phi(&m).unwrap();
        let dim = image.rows();
        source.insert(Gate::from_matrix(name.clone(), m).unwrap()).unwrap();
        target.insert(Gate::from_matrix(format!("phi_{name}"), image).unwrap()).unwrap();
        templates.insert(name.clone(), Circuit::gate_ref(format!("phi_{name}"), dim));
    }
    GateSetEmbedding::from_pre_embedding(pe, source, target, templates).unwrap()
}

/// A small element of R from integer seeds: Σ cᵢ·mᵢ over monomials in the generators, over a ring denominator.
fn base_element(ring: &RingSpec, seed: &[i8]) -> CycElement {
    let g = &ring.generators;
    let mut monomials = vec![CycElement::one()];
    monomials.extend(g.iter().cloned());
    if let Some(first) = g.first() {
        monomials.extend(g.iter().map(|x| first * x));
    }
    let mut acc = CycElement::zero();
    for (m, &c) in monomials.iter().zip(seed) {
        acc = &acc + &m.scale(&BigRational::from_integer((c % 4).into()));
    }
    let shift = seed.last().copied().unwrap_or(0).unsigned_abs() % 3;
    let den: i64 = match &ring.denominators {
        Denominators::All => 1 + shift as i64,
        Denominators::Primes(ps) => ps.iter().next().map(|p| (*p as i64).pow(shift as u32)).unwrap_or(1),
    };
    acc.scale(&BigRational::new(1.into(), den.into()))
}

/// An element of R[α]: Σ bᵢ αⁱ with bᵢ ∈ R.
fn ext_element(pe: &PreEmbedding, seed: &[i8]) -> CycElement {
    let d = pe.degree();
    let chunk = seed.len() / d;
    let mut acc = CycElement::zero();
    for i in (0..d).rev() {
        acc = &(&acc * &pe.tower.alpha) + &base_element(&pe.tower.base, &seed[i * chunk..(i + 1) * chunk]);
    }
    acc
}

pub fn ext_matrix(pe: &PreEmbedding, rows: usize, cols: usize, seed: &[i8]) -> ExactMatrix {
    ExactMatrix::from_fn(rows, cols, |r, c| {
        let i = (r * cols + c) * PER_ENTRY;
        ext_element(pe, &seed[i..i + PER_ENTRY])
    })
}

fn base_matrix(pe: &PreEmbedding, rows: usize, cols: usize, seed: &[i8]) -> ExactMatrix {
    ExactMatrix::from_fn(rows, cols, |r, c| {
        let i = (r * cols + c) * 6;
        base_element(&pe.tower.base, &seed[i..i + 6])
    })
}

pub fn seed(n: usize) -> impl Strategy<Value = Vec<i8>> {
    proptest::collection::vec(any::<i8>(), n)
}

pub fn word() -> impl Strategy<Value = Vec<u8>> {
    proptest::collection::vec(any::<u8>(), 1..7)
}

pub fn config() -> ProptestConfig {
    ProptestConfig { cases: CASES, ..ProptestConfig::default() }
}

pub fn phi_mul(f: &Fixture, a: &[i8], b: &[i8]) -> Result<(), TestCaseError> {
    let (ma, mb) = (ext_matrix(&f.pe, 2, 2, a), ext_matrix(&f.pe, 2, 2, b));
    let lhs = f.pe.phi(&ma.mul(&mb).unwrap()).unwrap();
    let rhs = f.pe.phi(&ma).unwrap().mul(&f.pe.phi(&mb).unwrap()).unwrap();
    prop_assert_eq!(lhs, rhs, "{}", f.entry.id);
    prop_assert_eq!(
        f.pe.phi(&ma.add(&mb).unwrap()).unwrap(),
        f.pe.phi(&ma).unwrap().add(&f.pe.phi(&mb).unwrap()).unwrap()
    );
    Ok(())
}

pub fn phi_dagger(f: &Fixture, a: &[i8]) -> Result<(), TestCaseError> {
    let m = ext_matrix(&f.pe, 2, 3, a);
    prop_assert_eq!(f.pe.phi(&m.dagger()).unwrap(), f.pe.phi(&m).unwrap().dagger(), "{}", f.entry.id);
    Ok(())
}

pub fn phi_sums_and_tensors(f: &Fixture, a: &[i8], b: &[i8], c: &[i8]) -> Result<(), TestCaseError> {
    let (ma, mb) = (ext_matrix(&f.pe, 1, 1, a), ext_matrix(&f.pe, 2, 2, b));
    let ds = f.pe.phi(&ma.direct_sum(&mb)).unwrap();
    prop_assert_eq!(ds, f.pe.phi(&ma).unwrap().direct_sum(&f.pe.phi(&mb).unwrap()), "{}", f.entry.id);
    let base = base_matrix(&f.pe, 2, 2, c);
    prop_assert_eq!(f.pe.phi(&base.tensor(&mb)).unwrap(), base.tensor(&f.pe.phi(&mb).unwrap()));
    Ok(())
}

pub fn phi_unitary(f: &Fixture, word: &[u8]) -> Result<(), TestCaseError> {
    let u = word.iter().fold(ExactMatrix::identity(2), |acc, &w| {
        acc.mul(&f.unitaries[w as usize % f.unitaries.len()]).unwrap()
    });
    prop_assert!(u.is_unitary().unwrap());
    prop_assert!(f.pe.phi(&u).unwrap().is_unitary().unwrap(), "{}", f.entry.id);
    Ok(())
}

pub fn catalytic_sides(f: &Fixture, a: &[i8]) -> Result<(), TestCaseError> {
    let m = ext_matrix(&f.pe, 2, 2, a);
    prop_assert_eq!(f.pe.catalytic_sides(&m).unwrap(), (true, true), "{}", f.entry.id);
    Ok(())
}

pub fn twisted_and_trace(f: &Fixture, a: &[i8]) -> Result<(), TestCaseError> {
    let m = ext_matrix(&f.pe, 2, 2, a);
    for j in 0..f.pe.degree() {
        prop_assert!(f.pe.twisted_check(j, &m).unwrap(), "{} j={}", f.entry.id, j);
    }
    prop_assert!(f.pe.trace_check(&m).unwrap(), "{}", f.entry.id);
    Ok(())
}

pub fn projector_family(f: &Fixture) -> Result<(), TestCaseError> {
    let fam = f.pe.projector_family().unwrap();
    prop_assert_eq!(fam.len(), f.pe.degree());
    let k = f.pe.dim();
    let sum = fam.iter().fold(ExactMatrix::zeros(k, k), |acc, (_, p)| acc.add(p).unwrap());
    prop_assert_eq!(sum, ExactMatrix::identity(k), "{}", f.entry.id);
    for (i, (_, p)) in fam.iter().enumerate() {
        prop_assert!(p.is_orthogonal_projector().unwrap());
        for (_, q) in fam.iter().skip(i + 1) {
            prop_assert!(p.mul(q).unwrap().is_zero());
        }
    }
    Ok(())
}

pub fn clifford_t_e() -> &'static GateSet {
    static G: OnceLock<GateSet> = OnceLock::new();
    G.get_or_init(GateSet::clifford_t_e)
}

/// Random two-qubit circuits over {H, T, E, CX, SWAP}.
pub fn circuit() -> impl Strategy<Value = Circuit> {
    const ONE: &[&str] = &["H", "T", "E"];
    let gs = clifford_t_e();
    let leaf = prop_oneof![
        proptest::sample::select(ONE).prop_map(move |g| Circuit::par(Circuit::gate(gs, g).unwrap(), Circuit::identity(2))),
        proptest::sample::select(ONE).prop_map(move |g| Circuit::par(Circuit::identity(2), Circuit::gate(gs, g).unwrap())),
        Just(Circuit::gate(gs, "CX").unwrap()),
        Just(Circuit::swap(2, 2)),
    ];
    leaf.prop_recursive(4, 16, 2, |inner| (inner.clone(), inner).prop_map(|(c, d)| Circuit::seq(c, d).unwrap()))
}

pub fn evaluation_homomorphism(c: &Circuit, d: &Circuit) -> Result<(), TestCaseError> {
    let gs = clifford_t_e();
    let (ec, ed) = (c.evaluate(gs).unwrap(), d.evaluate(gs).unwrap());
    prop_assert_eq!(Circuit::seq(c.clone(), d.clone()).unwrap().evaluate(gs).unwrap(), ec.mul(&ed).unwrap());
    prop_assert_eq!(Circuit::par(c.clone(), d.clone()).evaluate(gs).unwrap(), ec.tensor(&ed));
    let psi = ExactState::new((0..4).map(|i| CycElement::zeta_pow(8, i)).collect()).unwrap();
    let out = apply(c, gs, &psi).unwrap();
    prop_assert_eq!(out.amplitudes(), &ec.apply(psi.amplitudes()).unwrap()[..]);
    Ok(())
}

pub fn ops() -> impl Strategy<Value = Vec<(u8, u8)>> {
    proptest::collection::vec(any::<(u8, u8)>(), 1..8)
}

/// A two-qubit circuit over the fixture's source gates, one op per pair.
pub fn fixture_circuit(f: &Fixture, ops: &[(u8, u8)]) -> Circuit {
    let gs = &f.gse.source;
    let one = |b: u8| Circuit::gate(gs, &format!("U{}", b as usize % f.unitaries.len())).unwrap();
    let leaf = |&(a, b): &(u8, u8)| match a % 4 {
        0 => Circuit::par(one(b), Circuit::identity(2)),
        1 => Circuit::par(Circuit::identity(2), one(b)),
        2 => Circuit::gate(gs, "CX").unwrap(),
        _ => Circuit::swap(2, 2),
    };
    ops.iter().map(leaf).reduce(|c, d| Circuit::seq(c, d).unwrap()).unwrap()
}

/// The lift of a circuit acts as e(C) on the catalyst space, from both sides, and is unitary.
pub fn fixture_lift_law(f: &Fixture, ops: &[(u8, u8)]) -> Result<(), TestCaseError> {
    let c = fixture_circuit(f, ops);
    let lifted = lift_circuit(&f.gse, &c).unwrap();
    let e = c.evaluate(&f.gse.source).unwrap();
    let m = lifted.evaluate(&f.gse.target).unwrap();
    let ip = ExactMatrix::identity(4).tensor(&f.pe.projector);
    let want = e.tensor(&f.pe.projector);
    prop_assert_eq!(m.mul(&ip).unwrap(), want.clone(), "{}", f.entry.id);
    prop_assert_eq!(ip.mul(&m).unwrap(), want, "{}", f.entry.id);
    prop_assert!(m.is_unitary().unwrap());
    Ok(())
}

fn egate() -> &'static (PreEmbedding, GateSetEmbedding) {
    static EMB: OnceLock<(PreEmbedding, GateSetEmbedding)> = OnceLock::new();
    EMB.get_or_init(|| egate_embedding(&Catalog::builtin()).unwrap())
}

pub fn lift_law(c: &Circuit) -> Result<(), TestCaseError> {
    let (pe, gse) = egate();
    let lifted = lift_circuit(gse, c).unwrap();
    let e = c.evaluate(clifford_t_e()).unwrap();
    let m = lifted.evaluate(&gse.target).unwrap();
    // Par lifts interleave the catalyst, so compare through the catalytic law rather than Φ directly.
    let ip = ExactMatrix::identity(4).tensor(&pe.projector);
    prop_assert_eq!(m.mul(&ip).unwrap(), e.tensor(&pe.projector));
    prop_assert_eq!(ip.mul(&m).unwrap(), e.tensor(&pe.projector));
    prop_assert!(m.is_unitary().unwrap());
    Ok(())
}

/// Every law, each over `CASES` random instances per catalog embedding; returns (law, instances, outcome).
pub fn run_all() -> Vec<(&'static str, usize, Result<(), String>)> {
    fn go<S: Strategy>(s: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
        let cfg = ProptestConfig { failure_persistence: None, ..config() };
        TestRunner::new(cfg).run(&s, test).map_err(|e| e.to_string())
    }
    let fx = fixtures();
    let n = fx.len() * CASES as usize;
    let each = |law: fn(&Fixture, &[i8]) -> Result<(), TestCaseError>| {
        move |a: Vec<i8>| fx.iter().try_for_each(|f| law(f, &a))
    };
    let seed4 = || seed(4 * PER_ENTRY);
    vec![
        ("phi multiplicative and additive", n, go((seed4(), seed4()), |(a, b)| fx.iter().try_for_each(|f| phi_mul(f, &a, &b)))),
        ("phi commutes with dagger", n, go(seed(6 * PER_ENTRY), each(phi_dagger))),
        (
            "phi respects direct sums and base tensors",
            n,
            go((seed(PER_ENTRY), seed4(), seed(24)), |(a, b, c)| fx.iter().try_for_each(|f| phi_sums_and_tensors(f, &a, &b, &c))),
        ),
        ("phi preserves unitarity", n, go(word(), |w| fx.iter().try_for_each(|f| phi_unitary(f, &w)))),
        ("catalytic and left-sided", n, go(seed4(), each(catalytic_sides))),
        ("twisted action and trace", n, go(seed4(), each(twisted_and_trace))),
        ("projector family complete and orthogonal", fx.len(), fx.iter().try_for_each(projector_family).map_err(|e| e.to_string())),
        ("evaluation homomorphism", CASES as usize, go((circuit(), circuit()), |(c, d)| evaluation_homomorphism(&c, &d))),
        ("lifted circuits obey the catalytic law", n, go(ops(), |o| fx.iter().try_for_each(|f| fixture_lift_law(f, &o)))),
        ("lifted E-gate circuits obey the catalytic law", CASES as usize, go(circuit(), |c| lift_law(&c))),
    ]
}
