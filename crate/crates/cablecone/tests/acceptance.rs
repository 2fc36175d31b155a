//! Acceptance gate: one test per shipping criterion, each delegating to
//! the same check functions the `verify` subcommand runs, plus wall-clock
//! ceilings where a criterion states one. Timing margins are generous
//! enough to hold on a loaded machine in debug builds.

use std::time::{Duration, Instant};

use cablecone::cli::pipeline;
use cablecone::cli::verify;
use cablecone::knot_complex::KnotComplex;
use cablecone::mapping_cone::SurgerySpec;

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t0 = Instant::now();
    let out = f();
    (out, t0.elapsed())
}

#[test]
fn criterion_01_trefoil_cable_family() {
    let trefoil = KnotComplex::staircase_t2(3).unwrap();
    for n in 1..=5 {
        let (run, took) = timed(|| pipeline(&trefoil, n, SurgerySpec::PlusOne, None).unwrap());
        run.z.expect("trefoil cable standardizes");
        assert!(took < Duration::from_secs(1), "n={n} took {took:?}, budget 1s");
    }
    verify::trefoil_cable_sequences().unwrap();
}

#[test]
fn criterion_02_phi_grid() {
    let (r, took) = timed(verify::cable_phi_table_grid);
    r.unwrap();
    assert!(took < Duration::from_secs(30), "grid took {took:?}, budget 30s");
}

#[test]
fn criterion_03_seven_generator_example() {
    let (r, took) = timed(verify::seven_generator_reduction);
    r.unwrap();
    assert!(took < Duration::from_secs(5), "took {took:?}, budget 5s");
}

#[test]
fn criterion_04_filtration_drop_forms() {
    verify::filtration_drop_ladder().unwrap();
}

#[test]
fn criterion_05_property_suite() {
    let (r, took) = timed(verify::cone_property_suite);
    r.unwrap();
    assert!(took < Duration::from_secs(120), "suite took {took:?}, budget 2min");
}

#[test]
fn criterion_06_window_independence() {
    verify::window_truncation_independence().unwrap();
}

#[test]
fn criterion_07_d_invariant_oracle_pins() {
    verify::d_invariant_pins().unwrap();
}

#[test]
fn criterion_08_symmetry_and_additivity() {
    verify::symmetry_and_additivity().unwrap();
}

#[test]
fn criterion_09_middle_tower_stabilization() {
    verify::middle_tower_stabilization().unwrap();
}

#[test]
fn criterion_10_local_equivalence_oracle() {
    // The whole sweep inside one per-item budget bounds every item.
    let (r, took) = timed(verify::local_equivalence_spot_checks);
    r.unwrap();
    assert!(took < Duration::from_secs(60), "sweep took {took:?}, budget 1min per item");
}
