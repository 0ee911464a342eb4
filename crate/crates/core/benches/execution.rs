use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use cusp_strata::certify::{certify_with, CertifyOptions, Mode};
use cusp_strata::exec::{map_slice, Execution};
use cusp_strata::factorization::{betti_elements_with, verify_supersymmetric_structure_with, GroundSet};
use cusp_strata::{NumericalSemigroup, StratumInput};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn betti(c: &mut Criterion) {
    let mut group = c.benchmark_group("betti_elements");
    let ground = GroundSet::new(vec![35, 55, 77]).unwrap();
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, "35,55,77"), &exec, |b, &exec| {
            b.iter(|| betti_elements_with(&ground, 770, exec))
        });
    }
    group.finish();
}

fn structure(c: &mut Criterion) {
    let mut group = c.benchmark_group("supersymmetric_structure");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, "(7,11,13)"), &exec, |b, &exec| {
            b.iter(|| verify_supersymmetric_structure_with(7, 11, 13, exec).unwrap())
        });
    }
    group.finish();
}

/// Independent certifications fanned out over the hyperelliptic family.
fn sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("hyperelliptic_sweep");
    group.sample_size(10);
    let inputs: Vec<StratumInput> = (2..=5u64)
        .flat_map(|n| (n..=9).map(move |g| (n, g)))
        .map(|(n, g)| {
            let k = (1..=n).map(|i| 2 * i).collect();
            StratumInput::new(NumericalSemigroup::hyperelliptic(g).unwrap(), k).unwrap()
        })
        .collect();
    let opts = CertifyOptions::with_mode(Mode::modular(0));
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, inputs.len()), |b| {
            b.iter(|| map_slice(exec, &inputs, |i| certify_with(i, &opts).unwrap().b_p))
        });
    }
    group.finish();
}

criterion_group!(benches, betti, structure, sweep);
criterion_main!(benches);
