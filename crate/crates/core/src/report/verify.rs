use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::{json, GroupInfo, FORMAT_VERSION, TOOL_NAME, TOOL_VERSION};
use crate::error::{Error, Result};
use crate::harmonic::{
    corollary_lhs, lemma_gap, matrix_coefficient_variance, random_disc_function,
    random_unit_function, step1_reduced_lhs, step2_squared, step3_intermediate, step4_final,
    step4_lemma_sweep, theorem_lhs, Action, BoundCheck, DiscSampling, GroupFunction,
};
use crate::seeds::{derive_seed, stream_rng};
use crate::spectra::{conjugation_multiplicity, isotypic_project, GroupAnalysis};

/// Deviation allowed between the variance on an irreducible component and `1/d`.
pub const SCHUR_TOL: f64 = 1e-8;

/// Multiplicity-one detection slack.
const MULTIPLICITY_TOL: f64 = 1e-6;

/// One verified quantity. Variants are listed in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckKind {
    Lemma,
    Corollary,
    CorollaryErratum,
    SchurExact,
    Theorem,
    Step1,
    Step2,
    Step3,
    Step4,
    Step4Lemma,
}

impl CheckKind {
    pub const ALL: [CheckKind; 10] = [
        CheckKind::Lemma,
        CheckKind::Corollary,
        CheckKind::CorollaryErratum,
        CheckKind::SchurExact,
        CheckKind::Theorem,
        CheckKind::Step1,
        CheckKind::Step2,
        CheckKind::Step3,
        CheckKind::Step4,
        CheckKind::Step4Lemma,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Lemma => "lemma",
            CheckKind::Corollary => "corollary",
            CheckKind::CorollaryErratum => "corollary_erratum",
            CheckKind::SchurExact => "schur_exact",
            CheckKind::Theorem => "theorem",
            CheckKind::Step1 => "step1",
            CheckKind::Step2 => "step2",
            CheckKind::Step3 => "step3",
            CheckKind::Step4 => "step4",
            CheckKind::Step4Lemma => "step4_lemma",
        }
    }

    /// Seed stream for trial inputs; both corollary constants see the same pairs.
    fn input_stream(self) -> &'static str {
        match self {
            CheckKind::CorollaryErratum => CheckKind::Corollary.name(),
            other => other.name(),
        }
    }

    /// Parses a comma-separated list. `corollary` selects both constants and
    /// `all` selects everything. The result is deduplicated and in report order.
    pub fn parse_list(list: &str) -> Result<Vec<CheckKind>> {
        let mut out = Vec::new();
        for token in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match token {
                "all" => out.extend(CheckKind::ALL),
                "corollary" => out.extend([CheckKind::Corollary, CheckKind::CorollaryErratum]),
                other => out.push(other.parse()?),
            }
        }
        if out.is_empty() {
            return Err(Error::InvalidParameter("no checks selected".into()));
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let normalized = s.replace('-', "_");
        CheckKind::ALL
            .into_iter()
            .find(|k| {
                k.name() == normalized || (normalized == "schur" && *k == CheckKind::SchurExact)
            })
            .ok_or_else(|| Error::InvalidParameter(format!("unknown check {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyOptions {
    pub checks: Vec<CheckKind>,
    pub trials: usize,
    pub seed: u64,
    pub threads: usize,
    pub sampling: DiscSampling,
    /// Record wall-clock seconds per check. Off keeps reports byte-stable.
    pub timings: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            checks: CheckKind::ALL.to_vec(),
            trials: 200,
            seed: 0,
            threads: 1,
            sampling: DiscSampling::Phase,
            timings: false,
        }
    }
}

impl Serialize for CheckKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// One trial of one check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub check: CheckKind,
    pub trial: usize,
    pub seed: u64,
    pub observed: f64,
    pub bound: f64,
    pub margin: f64,
    pub inputs_digest: String,
    #[serde(skip)]
    identity_residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckSummary {
    pub name: CheckKind,
    pub trials: usize,
    /// Run seed; trial `t` uses `derive_seed(seed, stream, t)`.
    pub seed: u64,
    /// Largest bound over trials.
    pub bound: f64,
    pub max_observed: f64,
    pub min_margin: f64,
    /// Trial attaining `min_margin`.
    pub worst_trial: Option<usize>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_identity_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<usize>,
    pub runtime_seconds: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Parameters {
    pub trials: usize,
    pub seed: u64,
    pub threads: usize,
    pub sampling: DiscSampling,
    pub orthogonality_tolerance: f64,
    pub checks: Vec<CheckKind>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub format: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub group: GroupInfo,
    pub parameters: Parameters,
    pub checks: Vec<CheckSummary>,
    pub notes: Vec<String>,
    pub passed: bool,
}

/// A report with the per-trial values behind it.
#[derive(Debug, Clone)]
pub struct VerificationRun {
    pub report: VerificationReport,
    pub trials: Vec<TrialRecord>,
}

/// Inputs needed to replay a failing trial.
#[derive(Debug, Clone, Serialize)]
pub struct Reproducer {
    pub format: u32,
    pub group: String,
    pub check: CheckKind,
    pub trial: usize,
    pub run_seed: u64,
    pub trial_seed: u64,
    pub sampling: DiscSampling,
    pub record: TrialRecord,
    pub inputs: Vec<GroupFunction>,
}

/// Nontrivial rows whose isotypic component is a single irreducible.
pub fn multiplicity_free_rows(a: &GroupAnalysis) -> Vec<usize> {
    let t = &a.table;
    (0..t.num_characters())
        .filter(|&r| r != t.trivial_row())
        .filter(|&r| (conjugation_multiplicity(t, r) - 1.0).abs() < MULTIPLICITY_TOL)
        .collect()
}

fn disc(n: usize, sampling: DiscSampling, rng: &mut rand_chacha::ChaCha8Rng) -> GroupFunction {
    random_disc_function(n, sampling, rng)
}

/// Regenerates the inputs of a trial from its seed.
///
/// For [`CheckKind::SchurExact`] the inputs are the raw vectors before
/// projection, two per multiplicity-free row.
pub fn trial_inputs(
    a: &GroupAnalysis,
    kind: CheckKind,
    trial_seed: u64,
    sampling: DiscSampling,
) -> Vec<GroupFunction> {
    let n = a.order();
    let mut rng = stream_rng(trial_seed, kind.input_stream(), 0);
    match kind {
        CheckKind::Lemma | CheckKind::Corollary | CheckKind::CorollaryErratum => {
            vec![
                random_unit_function(n, &mut rng),
                random_unit_function(n, &mut rng),
            ]
        }
        CheckKind::SchurExact => (0..2 * multiplicity_free_rows(a).len())
            .map(|_| random_unit_function(n, &mut rng))
            .collect(),
        CheckKind::Theorem => (0..3).map(|_| disc(n, sampling, &mut rng)).collect(),
        CheckKind::Step1 | CheckKind::Step2 => {
            let f1 = disc(n, sampling, &mut rng).centered();
            vec![f1, disc(n, sampling, &mut rng), disc(n, sampling, &mut rng)]
        }
        CheckKind::Step3 | CheckKind::Step4 => {
            let f1 = disc(n, sampling, &mut rng).centered();
            vec![f1, disc(n, sampling, &mut rng)]
        }
        CheckKind::Step4Lemma => vec![disc(n, sampling, &mut rng)],
    }
}

fn normalized(f: GroupFunction) -> Option<GroupFunction> {
    let norm = f.l2_norm();
    (norm > 1e-8).then(|| f.scale(Complex64::new(1.0 / norm, 0.0)))
}

/// Largest `|(1/n) sum_g |<u, g.v>|^2 - 1/d|` over multiplicity-free rows,
/// with `u`, `v` unit vectors in the row's component.
fn schur_deviation(a: &GroupAnalysis, rows: &[usize], inputs: &[GroupFunction]) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, &r) in rows.iter().enumerate() {
        let project = |f: &GroupFunction| isotypic_project(&a.group, &a.classes, &a.table, r, f);
        let (Some(u), Some(v)) = (
            normalized(project(&inputs[2 * i])),
            normalized(project(&inputs[2 * i + 1])),
        ) else {
            continue;
        };
        let value = matrix_coefficient_variance(&a.group, &a.classes, Action::Conjugation, &u, &v);
        worst = worst.max((value - 1.0 / a.table.degree(r) as f64).abs());
    }
    worst
}

/// Evaluates one trial; returns the check and, for step two, the identity residual.
pub fn evaluate_trial(
    a: &GroupAnalysis,
    kind: CheckKind,
    inputs: &[GroupFunction],
) -> Result<(BoundCheck, Option<f64>)> {
    let check = match kind {
        CheckKind::Lemma => lemma_gap(a, &inputs[0], &inputs[1])?,
        CheckKind::Corollary => corollary_lhs(a, &inputs[0], &inputs[1])?.published,
        CheckKind::CorollaryErratum => corollary_lhs(a, &inputs[0], &inputs[1])?.erratum,
        CheckKind::SchurExact => {
            let rows = multiplicity_free_rows(a);
            let dev = schur_deviation(a, &rows, inputs);
            let refs: Vec<&GroupFunction> = inputs.iter().collect();
            BoundCheck::new("schur_exact", dev, SCHUR_TOL, &refs)
        }
        CheckKind::Theorem => theorem_lhs(a, &inputs[0], &inputs[1], &inputs[2])?,
        CheckKind::Step1 => step1_reduced_lhs(a, &inputs[0], &inputs[1], &inputs[2])?,
        CheckKind::Step2 => {
            let s = step2_squared(a, &inputs[0], &inputs[1], &inputs[2])?;
            return Ok((s.check, Some(s.identity_residual)));
        }
        CheckKind::Step3 => step3_intermediate(a, &inputs[0], &inputs[1])?,
        CheckKind::Step4 => step4_final(a, &inputs[0], &inputs[1])?,
        CheckKind::Step4Lemma => step4_lemma_sweep(a, &inputs[0])?
            .into_iter()
            .reduce(|best, c| if c.margin < best.margin { c } else { best })
            .expect("groups are nonempty"),
    };
    Ok((check, None))
}

fn run_trial(
    a: &GroupAnalysis,
    kind: CheckKind,
    opts: &VerifyOptions,
    trial: usize,
) -> Result<TrialRecord> {
    let seed = derive_seed(opts.seed, kind.input_stream(), trial as u64);
    let inputs = trial_inputs(a, kind, seed, opts.sampling);
    let (check, identity_residual) = evaluate_trial(a, kind, &inputs)?;
    Ok(TrialRecord {
        check: kind,
        trial,
        seed,
        observed: check.observed,
        bound: check.bound,
        margin: check.margin,
        inputs_digest: check.inputs_digest,
        identity_residual,
    })
}

fn summarize(
    a: &GroupAnalysis,
    kind: CheckKind,
    opts: &VerifyOptions,
    records: &[TrialRecord],
    runtime: Option<f64>,
) -> CheckSummary {
    let mut worst: Option<&TrialRecord> = None;
    for r in records {
        if worst.is_none_or(|w| r.margin < w.margin) {
            worst = Some(r);
        }
    }
    let max_observed = records.iter().map(|r| r.observed).fold(0.0, f64::max);
    let bound = records.iter().map(|r| r.bound).fold(0.0, f64::max);
    let min_margin = worst.map_or(0.0, |w| w.margin);
    let max_identity_residual = (kind == CheckKind::Step2).then(|| {
        records
            .iter()
            .filter_map(|r| r.identity_residual)
            .fold(0.0, f64::max)
    });
    CheckSummary {
        name: kind,
        trials: records.len(),
        seed: opts.seed,
        bound,
        max_observed,
        min_margin,
        worst_trial: worst.map(|w| w.trial),
        passed: records.iter().all(|r| r.margin >= 0.0),
        max_identity_residual,
        components: (kind == CheckKind::SchurExact).then(|| multiplicity_free_rows(a).len()),
        runtime_seconds: runtime,
    }
}

fn notes(a: &GroupAnalysis, opts: &VerifyOptions) -> Vec<String> {
    let mut notes = Vec::new();
    if opts.checks.contains(&CheckKind::Theorem) {
        let bound = 4.0 * a.d_power(0.125);
        if a.degree.degree.is_none() {
            notes.push("theorem: trivial group, every discrepancy vanishes".into());
        } else if bound >= 2.0 {
            notes.push(format!(
                "theorem: bound 4 D^-1/8 = {} is at least 2, the largest possible value for \
                 disc-valued inputs, so this check is vacuous here; the sharp checks are the \
                 D^-1/2-scale ones",
                json::fmt_float(bound)
            ));
        }
    }
    if opts.checks.contains(&CheckKind::SchurExact) && multiplicity_free_rows(a).is_empty() {
        notes.push("schur_exact: no multiplicity-free nontrivial component".into());
    }
    if a.degree.degree.is_none() {
        notes.push("trivial group: D is infinite and every bound is 0".into());
    }
    notes
}

/// Runs every selected check and assembles the report in check order.
pub fn verify(
    a: &GroupAnalysis,
    opts: &VerifyOptions,
    orthogonality_tolerance: f64,
) -> Result<VerificationRun> {
    if opts.threads == 0 {
        return Err(Error::InvalidParameter("threads must be at least 1".into()));
    }
    let mut plan = opts.checks.clone();
    plan.sort();
    plan.dedup();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;

    let mut summaries = Vec::with_capacity(plan.len());
    let mut all_trials = Vec::new();
    for &kind in &plan {
        let start = Instant::now();
        let records: Vec<TrialRecord> = pool.install(|| {
            (0..opts.trials)
                .into_par_iter()
                .map(|t| run_trial(a, kind, opts, t))
                .collect::<Result<_>>()
        })?;
        let runtime = opts.timings.then(|| start.elapsed().as_secs_f64());
        summaries.push(summarize(a, kind, opts, &records, runtime));
        all_trials.extend(records);
    }

    let report = VerificationReport {
        format: FORMAT_VERSION,
        tool: TOOL_NAME,
        version: TOOL_VERSION,
        group: GroupInfo::new(a),
        parameters: Parameters {
            trials: opts.trials,
            seed: opts.seed,
            threads: opts.threads,
            sampling: opts.sampling,
            orthogonality_tolerance,
            checks: plan,
        },
        passed: summaries.iter().all(|s| s.passed),
        checks: summaries,
        notes: notes(a, opts),
    };
    Ok(VerificationRun {
        report,
        trials: all_trials,
    })
}

impl VerificationRun {
    pub fn to_json(&self) -> Result<String> {
        Ok(json::to_json(&self.report)?)
    }

    /// `check,trial,seed,observed,bound,margin`, one row per trial.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("check,trial,seed,observed,bound,margin\n");
        for r in &self.trials {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.check,
                r.trial,
                r.seed,
                json::fmt_float(r.observed),
                json::fmt_float(r.bound),
                json::fmt_float(r.margin)
            ));
        }
        out
    }

    /// One reproducer per failed check, for its worst trial.
    pub fn reproducers(&self, a: &GroupAnalysis, sampling: DiscSampling) -> Vec<Reproducer> {
        self.report
            .checks
            .iter()
            .filter(|s| !s.passed)
            .filter_map(|s| {
                let trial = s.worst_trial?;
                let record = self
                    .trials
                    .iter()
                    .find(|r| r.check == s.name && r.trial == trial)?;
                Some(Reproducer {
                    format: FORMAT_VERSION,
                    group: a.group.name().to_string(),
                    check: s.name,
                    trial,
                    run_seed: s.seed,
                    trial_seed: record.seed,
                    sampling,
                    record: record.clone(),
                    inputs: trial_inputs(a, s.name, record.seed, sampling),
                })
            })
            .collect()
    }
}
