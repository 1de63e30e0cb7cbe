use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use fockhall_core::fock::{act_hall, act_hayashi, act_z, decomposition_census, vacuum, FockVector};
use fockhall_core::hall::{mul, HallElement};
use fockhall_core::quiver::{generic_ext, m_of_partition, DimVector, Multisegment, Partition, QuiverKind};
use fockhall_core::wedge::{straighten, Generator, Sign, TensorMonomial};

fn hall(c: &mut Criterion) {
    let kind = QuiverKind::Cyclic(2);
    let x = HallElement::u(&Multisegment::from_segments(kind, [(0, 2, 1)]));
    let y = HallElement::u(&Multisegment::from_segments(kind, [(0, 1, 1), (1, 2, 1)]));
    c.bench_function("hall/mul dim 5 over Δ_2", |b| b.iter(|| mul(black_box(&x), black_box(&y)).unwrap()));
    let m1 = Multisegment::from_segments(kind, [(0, 3, 1), (1, 1, 2)]);
    let m2 = Multisegment::from_segments(kind, [(1, 2, 1), (0, 1, 1)]);
    c.bench_function("quiver/generic_ext", |b| b.iter(|| generic_ext(black_box(&m1), black_box(&m2)).unwrap()));
}

fn wedge(c: &mut Criterion) {
    let word = TensorMonomial::new(vec![-3, 2, -1, 4, 0, 1]);
    c.bench_function("wedge/straighten length 6, n = 3", |b| b.iter(|| straighten(black_box(&word), 3)));
}

fn fock(c: &mut Criterion) {
    let lam = Partition::from_parts(&[4, 3, 1]);
    let x = FockVector::basis(lam.clone());
    c.bench_function("fock/F_i on |(4,3,1)⟩, n = 3", |b| {
        b.iter(|| (0..3).map(|i| act_hayashi(&Generator::f(i), black_box(&x), 3).unwrap()).count())
    });
    c.bench_function("fock/z_2^- on |(4,3,1)⟩, n = 2", |b| b.iter(|| act_z(2, Sign::Minus, black_box(&x), 2).unwrap()));
    let u = HallElement::u_tilde(&m_of_partition(&lam, QuiverKind::Cyclic(2)));
    c.bench_function("fock/ũ_{m_λ}^- on |∅⟩, λ = (4,3,1), n = 2", |b| {
        b.iter(|| act_hall(black_box(&u), Sign::Minus, &vacuum()).unwrap())
    });
    let beta = DimVector::from_pairs([(0, 4), (1, 3), (2, 3)]);
    c.bench_function("fock/decomposition_census |β| = 10, n = 3", |b| {
        b.iter(|| decomposition_census(black_box(&beta), 3).unwrap())
    });
}

criterion_group!(benches, hall, wedge, fock);
criterion_main!(benches);
