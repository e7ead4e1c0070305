use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use wittmod::cover::check_theta_equivariance;
use wittmod::kweight::KWeightModule;
use wittmod::par::Exec;
use wittmod::series::{find_ann_degree, AnnFamily};
use wittmod::tensormod::{check_module_axiom, GlnSpec, TensorModule, Window};
use wittmod::uea::{NormalOrderer, WeightBox};

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn module_axiom(c: &mut Criterion) {
    let f = TensorModule::from_spec(KWeightModule::polynomial(2), &GlnSpec::Ext { k: 1 }).unwrap();
    let w = Window::around_anchor(&f, 3);
    let mut g = c.benchmark_group("module_axiom");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| check_module_axiom(&f, &w, 2, exec).unwrap())
        });
    }
    g.finish();
}

fn ann_degree(c: &mut Criterion) {
    let f =
        TensorModule::from_spec(KWeightModule::polynomial(1), &"hw:1/3".parse().unwrap()).unwrap();
    let w = WeightBox::new(vec![6], 4);
    let o = NormalOrderer::default();
    let family = AnnFamily::Omega1 { max_k: 2, max_s: 2 };
    let mut g = c.benchmark_group("ann_degree");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| find_ann_degree(&f, &family, &w, 4, &o, exec).unwrap())
        });
    }
    g.finish();
}

fn theta_equivariance(c: &mut Criterion) {
    let f = TensorModule::from_spec(KWeightModule::polynomial(2), &GlnSpec::Ext { k: 1 }).unwrap();
    let w = WeightBox::new(vec![4, 4], 1);
    let mut g = c.benchmark_group("theta_equivariance");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| check_theta_equivariance(&f, &w, 2, exec))
        });
    }
    g.finish();
}

criterion_group!(benches, module_axiom, ann_degree, theta_equivariance);
criterion_main!(benches);
