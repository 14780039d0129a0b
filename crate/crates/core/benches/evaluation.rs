use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use opdp::freegamma::{Gamma, Method};
use opdp::par::Exec;
use opdp::permcomb::Composition;
use opdp::scalar::FieldSpec;
use opdp::setoperad::{Op, Operad};
use opdp::verifier::{run_suite, Bounds, CheckConfig, Suite};

fn verifier_cases(c: &mut Criterion) {
    let mut group = c.benchmark_group("verifier");
    group.sample_size(10);
    let bounds = Bounds { max_arity: 4, max_degree: 6, max_index: 4 };
    for suite in [Suite::Beta, Suite::Step, Suite::Permrep] {
        for exec in [Exec::Sequential, Exec::Parallel] {
            let cfg = CheckConfig { operad: Operad::Lev, bounds, exec, ..CheckConfig::default() };
            group.bench_with_input(BenchmarkId::new(suite.to_string(), format!("{exec:?}")), &cfg, |b, cfg| {
                b.iter(|| run_suite(suite, cfg))
            });
        }
    }
    group.finish();
}

fn mu_tilde_cosets(c: &mut Criterion) {
    let mut group = c.benchmark_group("mu_tilde_cosets");
    group.sample_size(10);
    // γ_3(γ_2(x)) in Γ(Com) sums over Σ_6 / Σ_2 ≀ Σ_3
    let base = Gamma::new(Operad::Com, FieldSpec::Rationals).with_method(Method::Cosets);
    let x = base.generator(0);
    let inner = base.gamma_eval(&Op::com(2), &Composition::new(vec![2]), &[x]).unwrap();
    for exec in [Exec::Sequential, Exec::Parallel] {
        let g = base.with_exec(exec);
        group.bench_function(format!("{exec:?}"), |b| {
            b.iter(|| g.gamma_eval(&Op::com(3), &Composition::new(vec![3]), std::slice::from_ref(&inner)).unwrap())
        });
    }
    let lev = Gamma::new(Operad::Lev, FieldSpec::Rationals).with_method(Method::Cosets);
    let y = lev.generator(0);
    let sq = lev.gamma_eval(&Op::lev(vec![1, 1]).unwrap(), &Composition::new(vec![2]), &[y]).unwrap();
    let outer = Op::lev(vec![1, 2, 2]).unwrap();
    for exec in [Exec::Sequential, Exec::Parallel] {
        let g = lev.with_exec(exec);
        group.bench_function(format!("lev/{exec:?}"), |b| {
            b.iter(|| g.gamma_eval(&outer, &Composition::new(vec![3]), std::slice::from_ref(&sq)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, verifier_cases, mu_tilde_cosets);
criterion_main!(benches);
