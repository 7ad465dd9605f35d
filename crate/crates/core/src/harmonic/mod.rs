//! Functions on a finite group, the left/right/conjugation actions, the two
//! conditional expectations and the bounded quantities built from them.

mod actions;
mod bounds;
mod expectation;
mod function;
mod sampling;

pub use actions::{act_s, act_t, conj_action, Action};
pub use bounds::{
    corollary_lhs, fixed_projection, inputs_digest, lemma_gap, lemma_gap_gram,
    matrix_coefficient_variance, step1_reduced_lhs, step2_squared, step3_intermediate, step4_final,
    step4_lemma_substitution, step4_lemma_sweep, theorem_lhs, BoundCheck, CorollaryCheck,
    Step2Check, IDENTITY_TOL, IMAGINARY_TOL,
};
pub use expectation::{
    cond_exp_conj, cond_exp_diag, diag_profile, proj_fixed_tensor, PAIR_ORDER_CAP,
};
pub use function::{Constraints, GroupFunction, PairFunction, MEAN_TOL, RANGE_TOL};
pub use sampling::{random_disc_function, random_unit_function, DiscSampling};
