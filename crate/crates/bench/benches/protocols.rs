// Copyright 2026 The superpose Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use superpose_core::analysis::{pulse_pipeline, table1_datasets, verify_probability_formulas};
use superpose_core::{
    make_qubit, run_direct, run_enhanced, run_hybrid, QubitParams, ReferenceSpec, SpinSystem, StateVector, C64,
};

fn direct(c: &mut Criterion) {
    let specs: Vec<_> = table1_datasets().iter().map(|d| d.spec().unwrap()).collect();
    c.bench_function("run_direct/table1", |b| {
        b.iter(|| {
            for s in &specs {
                black_box(run_direct(black_box(s)).unwrap());
            }
        })
    });
}

fn hybrid(c: &mut Criterion) {
    let mut group = c.benchmark_group("run_hybrid");
    for (n, d) in [(2, 2), (3, 3), (4, 3)] {
        let states: Vec<StateVector> = (0..n)
            .map(|k| {
                let mut amps = vec![C64::new(0.3, 0.1); d];
                amps[k % d] = C64::new(1.0, 0.0);
                StateVector::new(vec![d], amps).unwrap().normalize().unwrap()
            })
            .collect();
        let w = C64::new((n as f64).sqrt().recip(), 0.0);
        let spec = ReferenceSpec::new(vec![w; n], states, StateVector::basis(vec![d], 0).unwrap()).unwrap();
        group.bench_function(format!("n{n}_d{d}"), |b| {
            b.iter(|| black_box(run_hybrid(black_box(&spec)).unwrap()))
        });
    }
    group.finish();
}

fn enhanced(c: &mut Criterion) {
    let p1 = make_qubit(QubitParams::new(2.0, 0.7, 0.0).unwrap());
    let p2 = make_qubit(QubitParams::new(1.0, 0.7, 0.4).unwrap());
    let chi = StateVector::basis(vec![2], 0).unwrap();
    let (a, b) = (C64::new(0.6, 0.0), C64::new(0.8, 0.0));
    c.bench_function("run_enhanced/longitudinal", |bench| {
        bench.iter(|| black_box(run_enhanced(a, b, &p1, &p2, &chi).unwrap()))
    });
}

fn pulse(c: &mut Criterion) {
    let sys = SpinSystem::default();
    let spec = table1_datasets()[5].spec().unwrap();
    c.bench_function("pulse_pipeline/dataset6", |b| {
        b.iter(|| black_box(pulse_pipeline(black_box(&spec), &sys, 1.0).unwrap()))
    });
}

fn verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    group.bench_function("100_trials", |b| {
        b.iter(|| black_box(verify_probability_formulas(100, 0).unwrap()))
    });
    group.finish();
}

criterion_group!(benches, direct, hybrid, enhanced, pulse, verify);
criterion_main!(benches);
