use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wavicle::sampling::random_density;
use wavicle::{
    accessible_info_search, asym_encoding_ensemble, builtin_irreps, capacity_bounds, global_representation,
    path_interchange_representation, BuiltinGroup, FiniteGroup, Ket, ReferenceFrame, SearchConfig,
};

fn frame(kind: BuiltinGroup) -> ReferenceFrame {
    let group = Arc::new(FiniteGroup::builtin(kind).unwrap());
    ReferenceFrame::from_irreps(&builtin_irreps(&group).unwrap()).unwrap()
}

fn bounds(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for kind in [BuiltinGroup::Cyclic(4), BuiltinGroup::Symmetric3] {
        let f = frame(kind);
        let rho = random_density(&mut rng, f.rep().dim());
        c.bench_function(&format!("capacity_bounds/{kind}"), |b| {
            b.iter(|| capacity_bounds(black_box(f.rep()), black_box(&rho)).unwrap())
        });
    }
    let f = frame(BuiltinGroup::Symmetric3);
    let global = global_representation(f.rep(), 2).unwrap();
    let rho = random_density(&mut rng, global.dim());
    c.bench_function("capacity_bounds/symmetric3^2", |b| {
        b.iter(|| capacity_bounds(black_box(global.rep()), black_box(&rho)).unwrap())
    });
}

fn search(c: &mut Criterion) {
    let rep = path_interchange_representation();
    let rho = Ket::from_slice(&[wavicle::linalg::c64(0.8, 0.), wavicle::linalg::c64(0.6, 0.)]).unwrap().density();
    let ens = asym_encoding_ensemble(&rep, &rho).unwrap();
    let cfg = SearchConfig::default();
    c.bench_function("accessible_info_search/qubit", |b| {
        b.iter(|| accessible_info_search(black_box(&ens), &cfg).unwrap())
    });
}

criterion_group!(benches, bounds, search);
criterion_main!(benches);
