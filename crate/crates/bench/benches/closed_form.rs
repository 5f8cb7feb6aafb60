use criterion::{black_box, criterion_group, criterion_main, Criterion};
use risnoma_bench::{rate_config, reference};
use risnoma_core::analytic::ClosedFormContext;
use risnoma_core::{User, Variant};

fn outage(c: &mut Criterion) {
    let cfg = reference(20.0);
    c.bench_function("context_new", |b| b.iter(|| ClosedFormContext::new(black_box(&cfg)).unwrap()));
    let ctx = ClosedFormContext::new(&cfg).unwrap();
    c.bench_function("outage_all_variants", |b| {
        b.iter(|| {
            let mut s = 0.0;
            for v in Variant::ALL {
                for u in User::ALL {
                    s += ctx.outage(black_box(u), v);
                }
            }
            s
        })
    });
}

fn rates(c: &mut Criterion) {
    let cfg = rate_config(20.0);
    let mut g = c.benchmark_group("ergodic_rate");
    for v in Variant::ALL {
        let ctx = ClosedFormContext::for_variant(&cfg, v).unwrap();
        g.bench_function(v.label(), |b| b.iter(|| ctx.ergodic_rate(black_box(User::G), v)));
    }
    g.finish();
}

criterion_group!(benches, outage, rates);
criterion_main!(benches);
