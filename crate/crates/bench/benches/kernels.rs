use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use colorhom::ce_cohomology::lie_cohomology_dims;
use colorhom::enveloping::Enveloping;
use colorhom::fixtures;
use colorhom::gmodules::{GradedBimodule, GradedModule};
use colorhom::grading::DegreeWindow;
use colorhom::hochschild::compare_theorem5;
use colorhom::{CyclotomicField, ExactMatrix};

fn rank(c: &mut Criterion) {
    let field = CyclotomicField::get(3).unwrap();
    let n = 24;
    let mut m = ExactMatrix::zeros(field, n, n);
    for r in 0..n {
        for col in 0..n {
            let k = ((r * 7 + col * 3) % 5) as i64 - 2;
            m.set(r, col, field.from_int(k).mul_root((r + col) as i64));
        }
    }
    c.bench_function("rank 24x24 over Q(zeta_3)", |b| b.iter(|| m.rank()));
}

fn normal_form(c: &mut Criterion) {
    let lie = fixtures::glcolor();
    let word: Vec<usize> = (0..lie.dim())
        .rev()
        .chain((0..lie.dim()).rev())
        .take(6)
        .collect();
    c.bench_function("normal form, glcolor, reversed word of length 6", |b| {
        b.iter_batched(
            || Enveloping::new(lie.clone()),
            |u| u.normal_form(&word, lie.field().one()).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

fn cohomology(c: &mut Criterion) {
    let heis = fixtures::heis3();
    let adj = GradedModule::lie_adjoint(&heis);
    c.bench_function("H^n(heis3, ad), n <= 3", |b| {
        b.iter(|| lie_cohomology_dims(&heis, &adj, 3, &DegreeWindow::All).unwrap())
    });
    let u = Enveloping::new(fixtures::abelian_odd(2));
    let reg = GradedBimodule::regular(&u, 256).unwrap();
    c.bench_function("compare, abelian_odd_2, regular, n <= 3", |b| {
        b.iter(|| compare_theorem5(&u, &reg, 3, &DegreeWindow::All).unwrap())
    });
}

criterion_group!(benches, rank, normal_form, cohomology);
criterion_main!(benches);
