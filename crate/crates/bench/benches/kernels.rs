use criterion::{black_box, criterion_group, criterion_main, Criterion};
use mukai_bench::{even_system, random_slice_generators};
use mukai_core::forms::{hilbert_symbol_small, Place};
use mukai_core::groebner::{buchberger, BuchbergerOptions};
use mukai_core::variety::enumerate_points_f2;

fn f2_enumeration(c: &mut Criterion) {
    let sys = even_system(2);
    c.bench_function("enumerate Σ+(F_2)", |b| b.iter(|| enumerate_points_f2(black_box(&sys), 5).unwrap()));
}

fn buchberger_slice(c: &mut Criterion) {
    let (field, gens) = random_slice_generators(3, 11);
    c.bench_function("Groebner basis of a P^5-slice over F_3", |b| {
        b.iter(|| buchberger(&field, black_box(&gens), BuchbergerOptions::default()).unwrap())
    });
}

fn hilbert_symbols(c: &mut Criterion) {
    let pairs: Vec<(i64, i64)> = (1..=40).flat_map(|a| (1..=10).map(move |b| (a * 7 - 150, b * 13 - 60))).collect();
    c.bench_function("Hilbert symbols at 2, 3 and 7", |b| {
        b.iter(|| {
            let mut acc = 0i32;
            for &(x, y) in &pairs {
                if x == 0 || y == 0 {
                    continue;
                }
                for p in [2u64, 3, 7] {
                    acc += hilbert_symbol_small(x, y, Place::Prime(p));
                }
            }
            black_box(acc)
        })
    });
}

criterion_group!(benches, f2_enumeration, buchberger_slice, hilbert_symbols);
criterion_main!(benches);
