//! The annihilator of a product element in a tensor product of quotient
//! modules: the per-factor formula, two independent routes to the tensor
//! annihilator, the exponent identity that links them, and seeded random
//! instances.

mod exponents;
mod format;
mod lemma;
mod random;

pub use exponents::{
    counterexample_without_hypothesis, exhaustive_sweep, max_identity_check, random_sweep, random_table,
    ExponentTable, MaxIdentityReport, SweepSummary,
};
pub use format::{FactorJson, InstanceJson, TrialReport};
pub use lemma::{
    factor_b, index_tuples, product_of_factor_bs, tensor_annihilator_bruteforce, tensor_annihilator_formula,
    verify_main_lemma, DiagonalPresentation, FactorData, Instance, LemmaReport, LemmaRing, Mode, RawInclusion,
    TsError, TsInstance,
};
pub use random::{random_instance, random_instance_with, trial_rng, Bounds};

use crate::par::Execution;

/// Generate and verify one seeded trial. Errors are reported as failures.
pub fn run_trial(mode: Mode, seed: u64, trial: u64) -> TrialReport {
    let inst = random_instance(seed, trial, mode);
    let report = inst.verify().unwrap_or_else(|e| LemmaReport {
        b: format!("error: {e}"),
        l: String::new(),
        bruteforce: String::new(),
        snf: None,
        pass: false,
    });
    TrialReport {
        trial,
        seed,
        mode,
        b: report.b,
        l: report.l,
        bruteforce: report.bruteforce,
        snf: report.snf,
        pass: report.pass,
    }
}

/// Trials `0..trials`, in trial order whatever the execution.
pub fn run_trials(mode: Mode, seed: u64, trials: u64, exec: Execution) -> Vec<TrialReport> {
    exec.map(trials as usize, |k| run_trial(mode, seed, k as u64))
}
