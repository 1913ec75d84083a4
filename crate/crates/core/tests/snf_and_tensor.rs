#[path = "common/oracle.rs"]
mod oracle;

use bspid::arith::Euclidean;
use bspid::par::Execution;
use bspid::snf::{smith_normal_form, FinPresModule, Matrix};
use bspid::ts::{random_sweep, run_trials, Mode};
use oracle::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn check_snf<R: Euclidean + std::fmt::Debug>(m: &Matrix<R>) {
    let snf = smith_normal_form(m);
    assert_eq!(snf.u.mul(m).mul(&snf.v), snf.diagonal(m.rows(), m.cols()));
    assert!(snf.u.det().is_unit() && snf.v.det().is_unit());
    for w in snf.d.windows(2) {
        assert!(w[0].divides(&w[1]), "{:?}", snf.d);
    }
    assert_eq!(snf.d, invariant_factors_by_minors(m));
}

#[test]
fn smith_forms_match_determinantal_divisors() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        check_snf(&random_int_matrix(&mut rng, 4, 12));
        check_snf(&random_poly_matrix(&mut rng, 3, 2));
    }
}

#[test]
fn annihilators_match_exhaustive_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in 1..=3 {
        for _ in 0..20 {
            let m = random_nonsingular_int_matrix(&mut rng, n, 6);
            let delta: Vec<_> = random_int_matrix_shape(&mut rng, 1, n, 5).row(0).to_vec();
            let module = FinPresModule::new(m.clone());
            assert_eq!(module.element_annihilator(&delta), exhaustive_int_annihilator(&m, &delta));
        }
    }
}

#[test]
fn tensor_trials_pass_in_every_mode_and_schedule() {
    for mode in Mode::ALL {
        let par = run_trials(mode, 21, 40, Execution::Parallel);
        assert!(par.iter().all(|r| r.pass && r.snf.is_some()), "{mode}");
        assert_eq!(par, run_trials(mode, 21, 40, Execution::Sequential));
    }
}

#[test]
fn exponent_identity_on_random_tables() {
    let summary = random_sweep(8, 2000, Execution::default());
    assert_eq!((summary.checked, summary.passed), (2000, 2000));
}
