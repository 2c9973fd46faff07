use criterion::{black_box, criterion_group, criterion_main, Criterion};

use catembed_core::companion::Catalog;
use catembed_core::exactmat::char_poly;
use catembed_core::numring::{parse_element, CycElement};
use catembed_core::ExactMatrix;

fn cyclotomic(c: &mut Criterion) {
    let a = parse_element("(1 + sqrt(2))/2 + i*cos2pi(5) - z40^7").unwrap();
    let b = parse_element("z5^2 - 3*z8 + 1/4").unwrap();
    c.bench_function("cyc mul, conductor 40", |bch| bch.iter(|| black_box(&a) * black_box(&b)));
    c.bench_function("cyc inverse, conductor 40", |bch| bch.iter(|| black_box(&a).inv().unwrap()));
    let z = CycElement::zeta(1 << 12);
    c.bench_function("cyc pow, zeta_4096^777", |bch| bch.iter(|| black_box(&z).pow(777)));
}

fn matrices(c: &mut Criterion) {
    let pe = Catalog::builtin().get("zeta5/CliffordT").unwrap().verify().unwrap();
    let lambda = pe.lambda.clone();
    c.bench_function("char poly 4x4 over Z[1/2,sqrt2,i]", |b| b.iter(|| char_poly(black_box(&lambda)).unwrap()));
    let m = ExactMatrix::from_rows(vec![
        vec![parse_element("z5").unwrap(), parse_element("sqrt(2)/2").unwrap()],
        vec![parse_element("i").unwrap(), parse_element("z5^3 + 1").unwrap()],
    ])
    .unwrap();
    c.bench_function("phi 2x2 over R[zeta5]", |b| b.iter(|| pe.phi(black_box(&m)).unwrap()));
    let big = pe.phi(&m).unwrap();
    c.bench_function("mul 8x8 conductor 40", |b| b.iter(|| black_box(&big).mul(&big).unwrap()));
}

criterion_group!(benches, cyclotomic, matrices);
criterion_main!(benches);
