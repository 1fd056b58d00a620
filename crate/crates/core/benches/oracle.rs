use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use quiver_hilbert::{
    build_presentation, graded_quotient_dims_with, Execution, Field, OracleConfig, PresentationKind, Quiver,
    WeightVector,
};

fn kronecker(arrows: usize) -> Quiver {
    let names: Vec<String> = (1..=arrows).map(|k| format!("a{k}")).collect();
    let edges: Vec<(&str, usize, usize)> = names.iter().map(|n| (n.as_str(), 1, 2)).collect();
    Quiver::from_edges(2, &edges).unwrap()
}

fn oracle(c: &mut Criterion) {
    let q3 = kronecker(3);
    let square = Quiver::from_edges(4, &[("a", 1, 2), ("b", 2, 3), ("c", 3, 4), ("d", 1, 4)]).unwrap();
    let v = WeightVector::from_integers(Field::Rational, &[1, 2, 3, 4]);
    let v7 = WeightVector::from_integers(Field::Prime(7), &[1, 2, 3, 4]);
    let cases = [
        (
            "preproj-3kronecker-q-deg9",
            build_presentation(PresentationKind::PreprojectivePerVertex, &q3, Field::Rational, None).unwrap(),
            9,
        ),
        (
            "qha-square-q-deg10",
            build_presentation(PresentationKind::QhaZ, &square, Field::Rational, Some(&v)).unwrap(),
            10,
        ),
        (
            "qha-square-f7-deg12",
            build_presentation(PresentationKind::QhaZ, &square, Field::Prime(7), Some(&v7)).unwrap(),
            12,
        ),
    ];
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    for (name, pres, degree) in &cases {
        for exec in [Execution::Sequential, Execution::Parallel] {
            let config = OracleConfig::default().with_execution(exec).with_cap(usize::MAX);
            group.bench_with_input(BenchmarkId::new(*name, format!("{exec:?}")), degree, |b, &n| {
                b.iter(|| graded_quotient_dims_with(pres, n, &config).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, oracle);
criterion_main!(benches);
