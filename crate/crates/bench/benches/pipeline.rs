use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use pocketcut::generators::random_problem;
use pocketcut::{build_constrained, insert_segment, triangulate_points, SegmentConstraint};

fn pipeline(c: &mut Criterion) {
    let input = random_problem(100, 30, 7);
    c.bench_function("build_constrained/100x30", |b| {
        b.iter(|| build_constrained(&input).unwrap())
    });

    let base = triangulate_points(&input.points).unwrap();
    c.bench_function("insert_segments/100x30", |b| {
        b.iter_batched(
            || base.clone(),
            |mut mesh| {
                for &s in &input.segments {
                    insert_segment(&mut mesh, SegmentConstraint::from(s)).unwrap();
                }
                mesh
            },
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(benches, pipeline);
criterion_main!(benches);
