//! Report assembly: spectral summaries, verification runs and search results,
//! all serialized through [`json::to_json`].

pub mod json;
mod verify;

pub use verify::{
    evaluate_trial, multiplicity_free_rows, trial_inputs, verify, CheckKind, CheckSummary,
    Parameters, Reproducer, TrialRecord, VerificationReport, VerificationRun, VerifyOptions,
    SCHUR_TOL,
};

use serde::Serialize;

use crate::adversary::{SearchConfig, SearchResult};
use crate::error::Result;
use crate::group::AssociativityCheck;
use crate::harmonic::GroupFunction;
use crate::spectra::{conjugation_multiplicity, isotypic_rank, GroupAnalysis};

pub const FORMAT_VERSION: u32 = 1;
pub const TOOL_NAME: &str = env!("CARGO_PKG_NAME");
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupInfo {
    pub name: String,
    pub order: usize,
    pub associativity: AssociativityCheck,
    pub class_count: usize,
    pub class_sizes: Vec<usize>,
    /// Sorted ascending.
    pub degrees: Vec<usize>,
    /// `None` for the trivial group.
    pub d: Option<usize>,
    pub commutator_order: usize,
    pub perfect: bool,
}

impl GroupInfo {
    pub fn new(a: &GroupAnalysis) -> Self {
        Self {
            name: a.group.name().to_string(),
            order: a.order(),
            associativity: a.group.associativity(),
            class_count: a.classes.num_classes(),
            class_sizes: a.classes.class_sizes(),
            degrees: a.table.sorted_degrees(),
            d: a.degree.degree,
            commutator_order: a.commutator_order,
            perfect: a.is_perfect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CharacterRow {
    pub degree: usize,
    /// `[re, im]` per class.
    pub values: Vec<[f64; 2]>,
    /// Multiplicity in the conjugation representation.
    pub conjugation_multiplicity: f64,
    /// Rank of the isotypic projection.
    pub isotypic_rank: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralReport {
    pub format: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub group: GroupInfo,
    pub seed: u64,
    pub orthogonality_tolerance: f64,
    pub attempts: usize,
    pub row_orthogonality_error: f64,
    pub column_orthogonality_error: f64,
    pub witness_row: Option<usize>,
    pub trivial_row: usize,
    pub characters: Vec<CharacterRow>,
}

impl SpectralReport {
    pub fn new(a: &GroupAnalysis, seed: u64, orthogonality_tolerance: f64) -> Self {
        let t = &a.table;
        let characters = (0..t.num_characters())
            .map(|r| CharacterRow {
                degree: t.degree(r),
                values: t.row(r).iter().map(|v| [v.re, v.im]).collect(),
                conjugation_multiplicity: conjugation_multiplicity(t, r),
                isotypic_rank: isotypic_rank(&a.group, &a.classes, t, r),
            })
            .collect();
        Self {
            format: FORMAT_VERSION,
            tool: TOOL_NAME,
            version: TOOL_VERSION,
            group: GroupInfo::new(a),
            seed,
            orthogonality_tolerance,
            attempts: t.attempts(),
            row_orthogonality_error: t.row_orthogonality_error(),
            column_orthogonality_error: t.column_orthogonality_error(),
            witness_row: a.degree.witness_row,
            trivial_row: t.trivial_row(),
            characters,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(json::to_json(self)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchReport {
    pub format: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub group: GroupInfo,
    pub config: SearchConfig,
    /// `constant * D^-exponent` for the objective.
    pub bound: f64,
    pub best_value: f64,
    pub margin: f64,
    pub passed: bool,
    pub best_restart: usize,
    pub evaluations_used: usize,
    pub best_inputs: Vec<GroupFunction>,
    /// Running maximum after each move.
    pub trace: Vec<f64>,
}

impl SearchReport {
    pub fn new(a: &GroupAnalysis, config: &SearchConfig, result: SearchResult) -> Self {
        let (constant, exponent) = config.objective.bound_shape();
        let bound = constant * a.d_power(exponent);
        let margin = bound - result.best_value;
        Self {
            format: FORMAT_VERSION,
            tool: TOOL_NAME,
            version: TOOL_VERSION,
            group: GroupInfo::new(a),
            config: config.clone(),
            bound,
            best_value: result.best_value,
            margin,
            passed: margin >= 0.0,
            best_restart: result.best_restart,
            evaluations_used: result.evaluations_used,
            best_inputs: result.best_inputs,
            trace: result.trace,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(json::to_json(self)?)
    }
}
