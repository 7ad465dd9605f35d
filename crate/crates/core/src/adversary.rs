//! Random-restart hill climbing for worst-case test functions.
//!
//! Each move perturbs one function at one element by a complex step whose
//! magnitude decays geometrically over the restart's share of the budget,
//! re-imposes the objective's constraints, and is kept only if the
//! objective strictly increases. Iterates are always feasible, so every
//! recorded value is a genuine lower bound for the supremum.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harmonic::{
    lemma_gap_gram, matrix_coefficient_variance, random_disc_function, random_unit_function,
    step1_reduced_lhs, theorem_lhs, Action, DiscSampling, GroupFunction,
};
use crate::seeds::stream_rng;
use crate::spectra::GroupAnalysis;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    /// Quadruple discrepancy over disc-valued triples.
    Theorem,
    /// Reduced correlation with `f1 = f - mean f`.
    Step1,
    /// Tensor-projection gap over unit pairs.
    Lemma,
    /// Matrix-coefficient variance over unit pairs.
    Corollary,
}

impl Objective {
    pub fn arity(self) -> usize {
        match self {
            Objective::Theorem | Objective::Step1 => 3,
            Objective::Lemma | Objective::Corollary => 2,
        }
    }

    /// `(constant, exponent)` of the bound `constant * D^-exponent` for unit
    /// or disc-normalized inputs.
    pub fn bound_shape(self) -> (f64, f64) {
        match self {
            Objective::Theorem => (4.0, 0.125),
            Objective::Step1 => (3.0, 0.125),
            Objective::Lemma => (1.0, 0.5),
            Objective::Corollary => (1.0, 0.5),
        }
    }

    fn unit_normalized(self) -> bool {
        matches!(self, Objective::Lemma | Objective::Corollary)
    }
}

impl std::str::FromStr for Objective {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "theorem" => Ok(Objective::Theorem),
            "step1" => Ok(Objective::Step1),
            "lemma" => Ok(Objective::Lemma),
            "corollary" => Ok(Objective::Corollary),
            other => Err(Error::Search(format!("unknown objective {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub objective: Objective,
    /// Number of perturbation moves evaluated across all restarts.
    pub budget: usize,
    pub restarts: usize,
    pub step_initial: f64,
    pub step_final: f64,
    pub seed: u64,
    pub sampling: DiscSampling,
}

impl SearchConfig {
    pub fn new(objective: Objective, budget: usize, seed: u64) -> Self {
        Self {
            objective,
            budget,
            restarts: 4,
            step_initial: 0.5,
            step_final: 0.01,
            seed,
            sampling: DiscSampling::Phase,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::Search("restarts must be at least 1".into()));
        }
        if !(self.step_initial > 0.0 && self.step_final > 0.0) {
            return Err(Error::Search("step magnitudes must be positive".into()));
        }
        if self.step_final > self.step_initial {
            return Err(Error::Search(
                "step magnitudes must be non-increasing".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult {
    pub best_value: f64,
    pub best_inputs: Vec<GroupFunction>,
    pub best_restart: usize,
    pub evaluations_used: usize,
    /// Best value so far after each move, restarts concatenated in order.
    pub trace: Vec<f64>,
}

/// Evaluates `objective` on already-normalized inputs via the harmonic module.
pub fn evaluate(a: &GroupAnalysis, objective: Objective, inputs: &[GroupFunction]) -> Result<f64> {
    if inputs.len() != objective.arity() {
        return Err(Error::Search(format!(
            "objective {objective:?} takes {} functions, got {}",
            objective.arity(),
            inputs.len()
        )));
    }
    Ok(match objective {
        Objective::Theorem => theorem_lhs(a, &inputs[0], &inputs[1], &inputs[2])?.observed,
        Objective::Step1 => step1_reduced_lhs(a, &inputs[0], &inputs[1], &inputs[2])?.observed,
        Objective::Lemma => lemma_gap_gram(
            &a.group,
            &a.classes,
            Action::Conjugation,
            &inputs[0],
            &inputs[1],
        ),
        Objective::Corollary => matrix_coefficient_variance(
            &a.group,
            &a.classes,
            Action::Conjugation,
            &inputs[0],
            &inputs[1],
        ),
    })
}

struct RestartOutcome {
    best: f64,
    inputs: Vec<GroupFunction>,
    trace: Vec<f64>,
}

/// Random-restart hill climbing on `objective`.
///
/// Restarts may run in parallel; each has its own seeded stream and the
/// winner is the best value with ties going to the lowest restart index.
pub fn maximize(a: &GroupAnalysis, config: &SearchConfig) -> Result<SearchResult> {
    config.validate()?;
    let r = config.restarts;
    let shares: Vec<usize> = (0..r)
        .map(|i| config.budget / r + usize::from(i < config.budget % r))
        .collect();
    let outcomes: Vec<RestartOutcome> = shares
        .par_iter()
        .enumerate()
        .map(|(i, &share)| run_restart(a, config, i, share))
        .collect::<Result<_>>()?;

    let mut best_restart = 0;
    for (i, o) in outcomes.iter().enumerate() {
        if o.best > outcomes[best_restart].best {
            best_restart = i;
        }
    }
    let mut trace = Vec::with_capacity(config.budget);
    let mut running = f64::NEG_INFINITY;
    for o in &outcomes {
        for &v in &o.trace {
            running = running.max(v);
            trace.push(running);
        }
    }
    let evaluations_used = trace.len();
    let winner = outcomes
        .into_iter()
        .nth(best_restart)
        .expect("restarts >= 1");
    Ok(SearchResult {
        best_value: winner.best,
        best_inputs: winner.inputs,
        best_restart,
        evaluations_used,
        trace,
    })
}

fn run_restart(
    a: &GroupAnalysis,
    config: &SearchConfig,
    index: usize,
    moves: usize,
) -> Result<RestartOutcome> {
    let mut rng = stream_rng(config.seed, "search-restart", index as u64);
    let n = a.order();
    let objective = config.objective;
    let mut state = initial_state(a, config, index, &mut rng);
    let mut best = evaluate(a, objective, &to_inputs(objective, &state))?;
    let mut trace = Vec::with_capacity(moves);

    let ratio = config.step_final / config.step_initial;
    for m in 0..moves {
        let t = if moves > 1 {
            m as f64 / (moves - 1) as f64
        } else {
            0.0
        };
        let step = config.step_initial * ratio.powf(t);
        let which = rng.random_range(0..state.len());
        let x = rng.random_range(0..n);
        let delta = Complex64::from_polar(step, rng.random_range(0.0..TAU));

        let mut candidate = state[which].clone().into_values();
        candidate[x] += delta;
        let candidate = project(objective, GroupFunction::new(candidate));
        let previous = std::mem::replace(&mut state[which], candidate);
        let value = evaluate(a, objective, &to_inputs(objective, &state))?;
        if value > best {
            best = value;
        } else {
            state[which] = previous;
        }
        trace.push(best);
    }
    Ok(RestartOutcome {
        best,
        inputs: to_inputs(objective, &state),
        trace,
    })
}

/// Even restarts start from random functions, odd restarts from lifted
/// irreducible characters `chi_r / d_r`.
fn initial_state(
    a: &GroupAnalysis,
    config: &SearchConfig,
    index: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<GroupFunction> {
    let n = a.order();
    let objective = config.objective;
    (0..objective.arity())
        .map(|_| {
            let f = if index.is_multiple_of(2) {
                if objective.unit_normalized() {
                    random_unit_function(n, rng)
                } else {
                    random_disc_function(n, config.sampling, rng)
                }
            } else {
                let row = rng.random_range(0..a.table.num_characters());
                let d = a.table.degree(row) as f64;
                GroupFunction::new(
                    (0..n)
                        .map(|x| a.table.value(row, a.classes.class_of(x)) / d)
                        .collect(),
                )
            };
            project(objective, f)
        })
        .collect()
}

fn project(objective: Objective, f: GroupFunction) -> GroupFunction {
    if objective.unit_normalized() {
        let norm = f.l2_norm();
        if norm == 0.0 {
            let n = f.len();
            return GroupFunction::constant(n, Complex64::new(1.0, 0.0));
        }
        f.scale(Complex64::new(1.0 / norm, 0.0))
    } else {
        let clipped = f.map(|v| if v.norm() > 1.0 { v / v.norm() } else { v });
        clipped
            .require_disc()
            .expect("radially clipped values lie in the disc")
    }
}

/// Step one evaluates `f1 = f - mean f`; the state keeps the disc-valued `f`.
fn to_inputs(objective: Objective, state: &[GroupFunction]) -> Vec<GroupFunction> {
    match objective {
        Objective::Step1 => {
            let mut v = state.to_vec();
            v[0] = state[0].centered();
            v
        }
        _ => state.to_vec(),
    }
}

/// `f_i(x) = omega^(e_i x)` on `Z_n` with `omega = exp(2 pi i / n)`.
///
/// With `e1 + e2 + e3 = 0 mod n` the inner correlation
/// `(1/n) sum_x f1(x) f2(g + x) f3(x + g) = omega^((e2 + e3) g)` has unit
/// modulus for every `g`; when also `e1 != 0 mod n` the product term vanishes
/// and the discrepancy equals 1.
pub fn witness_abelian_character(n: usize, exponents: [i64; 3]) -> Result<[GroupFunction; 3]> {
    if n < 2 {
        return Err(Error::InvalidParameter("witness needs n >= 2".into()));
    }
    let m = n as i64;
    let reduced = exponents.map(|e| e.rem_euclid(m));
    if reduced.iter().sum::<i64>() % m != 0 {
        return Err(Error::InvalidParameter(format!(
            "exponents {exponents:?} do not sum to 0 mod {n}"
        )));
    }
    if reduced.iter().all(|&e| e == 0) {
        return Err(Error::InvalidParameter("all exponents are 0 mod n".into()));
    }
    Ok(reduced.map(|e| {
        GroupFunction::new(
            (0..n as i64)
                .map(|x| Complex64::from_polar(1.0, TAU * ((e * x) % m) as f64 / n as f64))
                .collect(),
        )
    }))
}
