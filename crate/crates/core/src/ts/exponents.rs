//! The exponent identity behind the lemma: for a fixed prime, `gamma` are
//! its exponents in the element coordinates and `alpha` in the invariant
//! factors.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::lemma::TsError;
use crate::par::Execution;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentTable {
    pub gamma: Vec<Vec<u32>>,
    pub alpha: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxIdentityReport {
    /// Max over tuples of the exponent of the tuple's colon ideal.
    pub first: u64,
    /// Sum over factors of the per-factor maxima.
    pub second: u64,
    pub witnesses_hold: bool,
    pub pass: bool,
}

impl ExponentTable {
    pub fn new(gamma: Vec<Vec<u32>>, alpha: Vec<Vec<u32>>) -> Result<ExponentTable, TsError> {
        if gamma.is_empty() || gamma.len() != alpha.len() {
            return Err(TsError::Input("gamma and alpha need the same positive number of factors".into()));
        }
        for (i, (g, a)) in gamma.iter().zip(&alpha).enumerate() {
            if g.is_empty() || g.len() != a.len() {
                return Err(TsError::Shape(i, "gamma and alpha rows need the same positive length".into()));
            }
        }
        Ok(ExponentTable { gamma, alpha })
    }

    pub fn factors(&self) -> usize {
        self.gamma.len()
    }

    /// Whether every factor has some index with `gamma = 0`.
    pub fn satisfies_hypothesis(&self) -> bool {
        self.gamma.iter().all(|g| g.contains(&0))
    }

    fn rows(&self) -> (Vec<&[u32]>, Vec<&[u32]>) {
        (self.gamma.iter().map(Vec::as_slice).collect(), self.alpha.iter().map(Vec::as_slice).collect())
    }

    pub fn first_display(&self) -> u64 {
        let (g, a) = self.rows();
        evaluate(&g, &a).first
    }

    pub fn second_display(&self) -> u64 {
        let (g, a) = self.rows();
        evaluate(&g, &a).second
    }

    /// Keep `p_i` where `gamma <= alpha`, otherwise jump to an index with
    /// `gamma = 0`.
    pub fn witness(&self, tuple: &[usize]) -> Vec<usize> {
        tuple
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                if self.gamma[i][p] <= self.alpha[i][p] {
                    p
                } else {
                    self.gamma[i].iter().position(|&g| g == 0).unwrap_or(p)
                }
            })
            .collect()
    }

    pub fn witnesses_hold(&self) -> bool {
        let (g, a) = self.rows();
        evaluate(&g, &a).witnesses_hold
    }
}

struct Evaluation {
    /// Max over tuples of `max(sum gamma, sum alpha) - sum gamma`.
    first: u64,
    /// Sum over factors of `max_p (max(gamma, alpha) - gamma)`.
    second: u64,
    /// At every tuple, `sum_i (max(gamma, alpha) - gamma)` is bounded by
    /// the first display's term at the witness tuple.
    witnesses_hold: bool,
}

/// One pass over all index tuples on borrowed rows; the sweeps call this
/// millions of times.
fn evaluate(gamma: &[&[u32]], alpha: &[&[u32]]) -> Evaluation {
    let r = gamma.len();
    let excess = |g: u32, a: u32| u64::from(g.max(a) - g);
    let second = (0..r).map(|i| gamma[i].iter().zip(alpha[i]).map(|(&g, &a)| excess(g, a)).max().unwrap_or(0)).sum();
    let zero_at: Vec<Option<usize>> = gamma.iter().map(|g| g.iter().position(|&x| x == 0)).collect();
    let mut idx = vec![0usize; r];
    let (mut first, mut witnesses_hold) = (0, true);
    loop {
        let (mut g, mut a, mut split, mut wg, mut wa) = (0u64, 0u64, 0u64, 0u64, 0u64);
        for i in 0..r {
            let (gi, ai) = (gamma[i][idx[i]], alpha[i][idx[i]]);
            g += u64::from(gi);
            a += u64::from(ai);
            split += excess(gi, ai);
            let w = if gi <= ai { idx[i] } else { zero_at[i].unwrap_or(idx[i]) };
            wg += u64::from(gamma[i][w]);
            wa += u64::from(alpha[i][w]);
        }
        first = first.max(g.max(a) - g);
        witnesses_hold &= split <= wg.max(wa) - wg;
        let mut k = r;
        loop {
            if k == 0 {
                return Evaluation { first, second, witnesses_hold };
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < gamma[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

pub fn max_identity_check(table: &ExponentTable) -> Result<MaxIdentityReport, TsError> {
    if !table.satisfies_hypothesis() {
        return Err(TsError::Hypothesis("some factor has no index with gamma = 0".into()));
    }
    let first = table.first_display();
    let second = table.second_display();
    let witnesses_hold = table.witnesses_hold();
    Ok(MaxIdentityReport { first, second, witnesses_hold, pass: first == second && witnesses_hold })
}

/// Every `(gamma, alpha)` row pair of length `1..=max_len` with entries in
/// `0..=max_value`.
fn all_rows(max_len: usize, max_value: u32, hypothesis: bool) -> Vec<(Vec<u32>, Vec<u32>)> {
    let mut out = Vec::new();
    let base = u64::from(max_value) + 1;
    for len in 1..=max_len {
        let count = base.pow(2 * len as u32);
        for code in 0..count {
            let mut c = code;
            let mut digit = || {
                let d = (c % base) as u32;
                c /= base;
                d
            };
            let gamma: Vec<u32> = (0..len).map(|_| digit()).collect();
            let alpha: Vec<u32> = (0..len).map(|_| digit()).collect();
            if !hypothesis || gamma.contains(&0) {
                out.push((gamma, alpha));
            }
        }
    }
    out
}

/// Outcome of a sweep over many tables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepSummary {
    pub checked: usize,
    pub passed: usize,
    pub first_failure: Option<ExponentTable>,
}

impl SweepSummary {
    fn from_results(tables: Vec<(ExponentTable, bool)>) -> SweepSummary {
        let checked = tables.len();
        let passed = tables.iter().filter(|(_, ok)| *ok).count();
        let first_failure = tables.into_iter().find(|(_, ok)| !ok).map(|(t, _)| t);
        SweepSummary { checked, passed, first_failure }
    }
}

fn check_passes(t: &ExponentTable) -> bool {
    max_identity_check(t).is_ok_and(|r| r.pass)
}

/// `check_passes` on borrowed rows that already satisfy the hypothesis.
fn rows_pass(gamma: &[&[u32]], alpha: &[&[u32]]) -> bool {
    let e = evaluate(gamma, alpha);
    e.first == e.second && e.witnesses_hold
}

/// All tables with one or two factors, up to `max_len` indices per factor
/// and entries up to `max_value`, satisfying the hypothesis.
pub fn exhaustive_sweep(max_len: usize, max_value: u32, exec: Execution) -> SweepSummary {
    let rows = all_rows(max_len, max_value, true);
    let mut summary = SweepSummary::from_results(exec.map(rows.len(), |k| {
        let t = ExponentTable { gamma: vec![rows[k].0.clone()], alpha: vec![rows[k].1.clone()] };
        let ok = check_passes(&t);
        (t, ok)
    }));
    // pairs: one job per first row; only failures are kept
    let per_row = exec.map(rows.len(), |k| {
        let mut failure = None;
        let mut passed = 0;
        let (g0, a0) = (&rows[k].0, &rows[k].1);
        for (g1, a1) in &rows {
            if rows_pass(&[g0, g1], &[a0, a1]) {
                passed += 1;
            } else if failure.is_none() {
                failure = Some(ExponentTable { gamma: vec![g0.clone(), g1.clone()], alpha: vec![a0.clone(), a1.clone()] });
            }
        }
        (passed, failure)
    });
    for (passed, failure) in per_row {
        summary.checked += rows.len();
        summary.passed += passed;
        if summary.first_failure.is_none() {
            summary.first_failure = failure;
        }
    }
    summary
}

/// A random table with `1..=4` factors, `1..=5` indices and entries up to
/// 10; one `gamma` per factor is forced to zero.
pub fn random_table<G: Rng>(rng: &mut G) -> ExponentTable {
    let r = rng.gen_range(1..=4);
    let mut gamma = Vec::with_capacity(r);
    let mut alpha = Vec::with_capacity(r);
    for _ in 0..r {
        let len = rng.gen_range(1..=5);
        let mut g: Vec<u32> = (0..len).map(|_| rng.gen_range(0..=10)).collect();
        g[rng.gen_range(0..len)] = 0;
        gamma.push(g);
        alpha.push((0..len).map(|_| rng.gen_range(0..=10)).collect());
    }
    ExponentTable { gamma, alpha }
}

pub fn random_sweep(seed: u64, trials: usize, exec: Execution) -> SweepSummary {
    SweepSummary::from_results(exec.map(trials, |k| {
        let t = random_table(&mut super::random::trial_rng(seed, k as u64));
        let ok = check_passes(&t);
        (t, ok)
    }))
}

/// The first table (in enumeration order, one or two factors) on which the
/// two displays differ once the `min gamma = 0` hypothesis is dropped.
pub fn counterexample_without_hypothesis(max_len: usize, max_value: u32) -> Option<ExponentTable> {
    let rows = all_rows(max_len, max_value, false);
    for a in &rows {
        for b in &rows {
            let e = evaluate(&[&a.0, &b.0], &[&a.1, &b.1]);
            if e.first != e.second {
                return Some(ExponentTable { gamma: vec![a.0.clone(), b.0.clone()], alpha: vec![a.1.clone(), b.1.clone()] });
            }
        }
    }
    None
}
