use std::f64::consts::PI;
use std::time::Instant;

use sphconv_bench::{
    from_json, read_csv, run_grid, timing_summary, to_json, write_csv, AlphaGrid, GridSpec,
    MonomialPrecision, Preset, Reference, Timing,
};
use sphconv_core::spectral::{build_galerkin, TridiagonalSystem};
use sphconv_core::{ErrorClass, Method, Problem};

fn spec(n: Vec<u32>, methods: Vec<Method>, count: usize) -> GridSpec {
    let mut s = GridSpec::new(n, AlphaGrid::new(0.3, PI - 0.3, count).unwrap(), methods);
    s.timing = Timing::single();
    s
}

#[test]
fn repeated_runs_give_identical_values() {
    let s = spec(
        vec![4, 9],
        vec![Method::Method1, Method::Galerkin, Method::Gegenbauer],
        4,
    );
    let a = run_grid(&s).unwrap();
    let b = run_grid(&s).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.value().unwrap().to_bits(), y.value().unwrap().to_bits());
        assert_eq!(x.reference.to_bits(), y.reference.to_bits());
    }
}

#[test]
fn references_agree_where_both_apply() {
    let mut with_oracle = spec(vec![3, 15], vec![Method::Asymptotic], 5);
    with_oracle.reference = Reference::Oracle2d;
    let mut with_m6 = with_oracle.clone();
    with_m6.reference = Reference::Method6;
    let a = run_grid(&with_oracle).unwrap();
    let b = run_grid(&with_m6).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert!(
            (x.reference - y.reference).abs() < 1e-7,
            "N={} alpha={}",
            x.n,
            x.alpha
        );
    }
    assert_eq!(
        GridSpec::new(vec![10, 40], AlphaGrid::default_grid(), vec![]).reference,
        Reference::Method6
    );
}

#[test]
fn failure_rows_survive_both_encodings() {
    let mut s = spec(vec![20], vec![Method::Method2, Method::Volterra], 3);
    s.precisions = vec![MonomialPrecision::Native, MonomialPrecision::Certified];
    s.reference = Reference::Method6;
    let records = run_grid(&s).unwrap();
    assert_eq!(records.len(), 9);
    assert!(records
        .iter()
        .any(|r| r.failure() == Some(ErrorClass::PrecisionFailure)));

    let mut csv = Vec::new();
    write_csv(&records, &mut csv).unwrap();
    let back_csv = read_csv(csv.as_slice()).unwrap();
    let back_json = from_json(&to_json(&records).unwrap()).unwrap();
    assert_eq!(back_csv, records);
    assert_eq!(back_json, records);
}

#[test]
fn summary_covers_each_method_and_precision() {
    let mut s = spec(vec![5], vec![Method::Method3, Method::Gegenbauer], 3);
    s.precisions = vec![MonomialPrecision::Certified, MonomialPrecision::Digits(90)];
    let rows = timing_summary(&run_grid(&s).unwrap()).unwrap();
    let keys: Vec<(Method, u32)> = rows.iter().map(|r| (r.method, r.digits)).collect();
    assert_eq!(
        keys,
        vec![
            (Method::Method3, 60),
            (Method::Method3, 90),
            (Method::Gegenbauer, 16)
        ]
    );
    assert!(rows.iter().all(|r| r.samples == 3 && r.median <= r.p95));
}

#[test]
fn fig1_preset_meets_its_gap() {
    let mut s = Preset::Fig1.spec();
    s.timing = Timing::single();
    let records = run_grid(&s).unwrap();
    assert_eq!(records.len(), 48);
    assert!(records.iter().all(|r| r.abs_error() < 1e-7));
}

fn best_solve_seconds(system: &TridiagonalSystem) -> f64 {
    (0..5)
        .map(|_| {
            let t = Instant::now();
            std::hint::black_box(system.solve().unwrap());
            t.elapsed().as_secs_f64()
        })
        .fold(f64::INFINITY, f64::min)
}

#[test]
fn galerkin_solve_is_linear_in_dimension() {
    let p = Problem::new(10, 1.0).unwrap();
    let small = build_galerkin(&p, 200_000).unwrap();
    let large = build_galerkin(&p, 400_000).unwrap();
    let ratio = best_solve_seconds(&large) / best_solve_seconds(&small);
    assert!(
        ratio < 3.0,
        "doubling the dimension scaled the solve by {ratio}"
    );
}
