//! Acceptance gate. Runs every criterion in order, prints one PASS/FAIL line
//! per criterion with its evidence underneath, and exits non-zero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use num_complex::Complex64;
use quasirandom::adversary::{maximize, witness_abelian_character, Objective, SearchConfig};
use quasirandom::harmonic::{
    cond_exp_conj, cond_exp_diag, step2_squared, theorem_lhs, PairFunction,
};
use quasirandom::report::{
    multiplicity_free_rows, verify, CheckKind, VerificationRun, VerifyOptions,
};
use quasirandom::spectra::{isotypic_project, GroupAnalysis};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ORTHOGONALITY_TOL: f64 = 1e-8;

/// Evidence lines for one criterion; it passes iff every line passes.
#[derive(Default)]
struct Evidence {
    lines: Vec<(bool, String)>,
}

impl Evidence {
    fn check(&mut self, ok: bool, message: impl Into<String>) {
        self.lines.push((ok, message.into()));
    }

    fn passed(&self) -> bool {
        self.lines.iter().all(|(ok, _)| *ok)
    }
}

fn analyze(name: &str) -> GroupAnalysis {
    GroupAnalysis::from_name(name, 0).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn run_checks(
    a: &GroupAnalysis,
    checks: &[CheckKind],
    trials: usize,
    seed: u64,
    threads: usize,
) -> VerificationRun {
    let opts = VerifyOptions {
        checks: checks.to_vec(),
        trials,
        seed,
        threads,
        ..VerifyOptions::default()
    };
    verify(a, &opts, ORTHOGONALITY_TOL).unwrap_or_else(|e| panic!("{}: {e}", a.group.name()))
}

fn record_run(ev: &mut Evidence, run: &VerificationRun) {
    for c in &run.report.checks {
        ev.check(
            c.passed && c.trials > 0,
            format!(
                "{} {}: {} trials, max observed {:.6e}, bound {:.6e}, min margin {:.6e}",
                run.report.group.name, c.name, c.trials, c.max_observed, c.bound, c.min_margin
            ),
        );
    }
}

fn spectral_correctness() -> Evidence {
    let mut ev = Evidence::default();
    let start = Instant::now();
    let mut names: Vec<String> = (2..=12).map(|n| format!("z:{n}")).collect();
    names.extend(
        [
            "s:3", "s:4", "a:4", "a:5", "sl2:3", "sl2:5", "psl2:7", "sl2:7",
        ]
        .map(String::from),
    );
    for name in &names {
        let a = analyze(name);
        let t = &a.table;
        let row = t.row_orthogonality_error();
        let col = t.column_orthogonality_error();
        let sum_sq: usize = t.degrees().iter().map(|d| d * d).sum();
        let mut msg = format!(
            "{name}: order {}, {} classes, row err {row:.1e}, column err {col:.1e}, sum d^2 = {sum_sq}",
            a.order(),
            t.num_characters()
        );
        let mut ok = row <= ORTHOGONALITY_TOL && col <= ORTHOGONALITY_TOL && sum_sq == a.order();
        if a.order() <= 60 {
            let oracle = regular_degree_oracle(&a.group, 7);
            ok &= oracle == t.sorted_degrees();
            msg.push_str(&format!(
                ", degrees {:?} (oracle {:?})",
                t.sorted_degrees(),
                oracle
            ));
        }
        ev.check(ok, msg);
    }
    let elapsed = start.elapsed();
    ev.check(
        elapsed < Duration::from_secs(30),
        format!("runtime {:.2} s (limit 30 s)", elapsed.as_secs_f64()),
    );
    ev
}

fn quasirandomness_degrees() -> Evidence {
    let mut ev = Evidence::default();
    let mut expected: Vec<(String, usize)> = (2..=12).map(|n| (format!("z:{n}"), 1)).collect();
    expected.extend(
        [
            ("a:5", 3),
            ("sl2:5", 2),
            ("psl2:7", 3),
            ("sl2:7", 3),
            ("sl2:11", 5),
        ]
        .map(|(g, d)| (g.to_string(), d)),
    );
    for (name, d) in expected {
        let a = analyze(&name);
        let got = a.degree.degree;
        let perfect = a.is_perfect();
        // D = 1 exactly when the commutator subgroup is proper
        let consistent = (got == Some(1)) != perfect;
        ev.check(
            got == Some(d) && consistent,
            format!(
                "{name}: D = {got:?} (expected {d}), perfect = {perfect}, |[G,G]| = {}",
                a.commutator_order
            ),
        );
    }
    ev
}

const SUITE_GROUPS: [&str; 3] = ["sl2:5", "psl2:7", "sl2:7"];

fn lemma_suite() -> Evidence {
    let mut ev = Evidence::default();
    let start = Instant::now();
    for name in SUITE_GROUPS {
        let a = analyze(name);
        record_run(&mut ev, &run_checks(&a, &[CheckKind::Lemma], 200, 0, 1));
    }
    let elapsed = start.elapsed();
    ev.check(
        elapsed < Duration::from_secs(300),
        format!("runtime {:.2} s (limit 300 s)", elapsed.as_secs_f64()),
    );
    ev
}

fn corollary_suite() -> Evidence {
    let mut ev = Evidence::default();
    for name in SUITE_GROUPS {
        let a = analyze(name);
        let run = run_checks(
            &a,
            &[
                CheckKind::Corollary,
                CheckKind::CorollaryErratum,
                CheckKind::SchurExact,
            ],
            200,
            0,
            1,
        );
        record_run(&mut ev, &run);
        ev.check(
            true,
            format!(
                "{name}: {} multiplicity-free nontrivial components",
                multiplicity_free_rows(&a).len()
            ),
        );
    }
    // groups with multiplicity-free nontrivial components, so the exact value is exercised
    let mut exercised = 0;
    for name in ["s:3", "s:4", "a:4", "s:5", "sl2:3"] {
        let a = analyze(name);
        let rows = multiplicity_free_rows(&a);
        let degrees: Vec<usize> = rows.iter().map(|&r| a.table.degree(r)).collect();
        exercised += rows.len();
        let run = run_checks(&a, &[CheckKind::SchurExact], 20, 0, 1);
        let c = &run.report.checks[0];
        ev.check(
            c.passed,
            format!(
                "{name}: components of degree {degrees:?}, max |observed - 1/d| = {:.1e} (tolerance 1e-8)",
                c.max_observed
            ),
        );
    }
    ev.check(exercised > 0, format!("{exercised} components exercised"));
    ev
}

fn proof_chain_suite() -> Evidence {
    let mut ev = Evidence::default();
    let steps = [
        CheckKind::Theorem,
        CheckKind::Step1,
        CheckKind::Step2,
        CheckKind::Step3,
        CheckKind::Step4,
        CheckKind::Step4Lemma,
    ];
    for name in ["sl2:5", "sl2:7"] {
        let a = analyze(name);
        let start = Instant::now();
        let run = run_checks(&a, &steps, 100, 0, 1);
        record_run(&mut ev, &run);
        let residual = run
            .report
            .checks
            .iter()
            .find_map(|c| c.max_identity_residual)
            .unwrap_or(f64::NAN);
        ev.check(
            residual <= 1e-10,
            format!("{name} step2 order-swap residual {residual:.1e}"),
        );
        let vacuous = run.report.notes.iter().any(|n| n.contains("vacuous"));
        ev.check(
            vacuous,
            format!("{name}: report states the theorem bound is vacuous"),
        );
        ev.check(
            true,
            format!("{name}: {:.1} s", start.elapsed().as_secs_f64()),
        );
    }
    ev
}

fn oracle_equivalences() -> Evidence {
    let mut ev = Evidence::default();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for name in ["s:3", "a:4"] {
        let a = analyze(name);
        let n = a.order();
        let mut worst: f64 = 0.0;
        for _ in 0..10 {
            let f = PairFunction::from_fn(n, |_, _| {
                c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
            });
            let fast = cond_exp_diag(&a.group, &f).unwrap();
            let brute = PairFunction::from_fn(n, |x, y| {
                (0..n)
                    .map(|g| f.eval(a.group.mul(g, x), a.group.mul(g, y)))
                    .sum::<Complex64>()
                    / n as f64
            });
            worst = worst.max(fast.max_abs_diff(&brute));
        }
        ev.check(
            worst <= 1e-12,
            format!("{name}: diagonal expectation vs triple loop, max diff {worst:.1e}"),
        );
    }

    let s3 = analyze("s:3");
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let f1 = random_phase(6, &mut rng).centered();
        let (f2, f3) = (random_phase(6, &mut rng), random_phase(6, &mut rng));
        let s = step2_squared(&s3, &f1, &f2, &f3).unwrap();
        let oracle = step2_quadruple_loop(&s3.group, &f1, &f2, &f3);
        worst = worst
            .max((s.check.observed - oracle.re).abs())
            .max(oracle.im.abs());
    }
    ev.check(
        worst <= 1e-12,
        format!("s:3: step2 vs quadruple loop, max diff {worst:.1e}"),
    );

    for name in ["s:3", "s:4", "a:4", "a:5", "sl2:3", "sl2:5", "psl2:7"] {
        let a = analyze(name);
        let n = a.order();
        let mut worst: f64 = 0.0;
        for _ in 0..10 {
            let f = random_function(n, &mut rng);
            let p = isotypic_project(&a.group, &a.classes, &a.table, a.table.trivial_row(), &f);
            worst = worst.max((&p - &cond_exp_conj(&a.classes, &f)).sup_norm());
        }
        ev.check(
            worst <= 1e-10,
            format!("{name}: class average vs trivial projection, max diff {worst:.1e}"),
        );
    }
    ev
}

fn abelian_control() -> Evidence {
    let mut ev = Evidence::default();
    let z3 = analyze("z:3");
    let w = witness_abelian_character(3, [1, 1, 1]).unwrap();
    let value = theorem_lhs(&z3, &w[0], &w[1], &w[2]).unwrap().observed;
    let brute = theorem_brute(&z3.group, [&w[0], &w[1], &w[2]]);
    ev.check(
        (value - 1.0).abs() <= 1e-12 && (brute - 1.0).abs() <= 1e-12,
        format!("z:3 witness: {value:.15} (brute force {brute:.15})"),
    );
    let result = maximize(&z3, &SearchConfig::new(Objective::Theorem, 10_000, 0)).unwrap();
    ev.check(
        result.best_value >= 0.9,
        format!(
            "z:3 search, budget 10000: best {:.6} (needs >= 0.9)",
            result.best_value
        ),
    );
    ev
}

fn determinism() -> Evidence {
    let mut ev = Evidence::default();
    for name in ["s:4", "sl2:5"] {
        let a = analyze(name);
        let first = run_checks(&a, &CheckKind::ALL, 25, 11, 1);
        let second = run_checks(&a, &CheckKind::ALL, 25, 11, 1);
        let (j1, j2) = (first.to_json().unwrap(), second.to_json().unwrap());
        ev.check(
            j1 == j2,
            format!(
                "{name}: two serial reports byte-identical ({} bytes)",
                j1.len()
            ),
        );
        let threaded = run_checks(&a, &CheckKind::ALL, 25, 11, 4);
        let worst = first
            .trials
            .iter()
            .zip(&threaded.trials)
            .map(|(x, y)| {
                assert_eq!((x.check, x.trial, x.seed), (y.check, y.trial, y.seed));
                (x.observed - y.observed).abs()
            })
            .fold(0.0, f64::max);
        ev.check(
            first.trials.len() == threaded.trials.len() && worst <= 1e-12,
            format!(
                "{name}: 4-thread run, {} values, max diff {worst:.1e}",
                first.trials.len()
            ),
        );
    }
    ev
}

type Criterion = (&'static str, fn() -> Evidence);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("spectral correctness", spectral_correctness),
        ("quasi-randomness degrees", quasirandomness_degrees),
        ("tensor projection suite", lemma_suite),
        ("matrix coefficient suite", corollary_suite),
        ("proof chain suite", proof_chain_suite),
        ("oracle equivalences", oracle_equivalences),
        ("abelian control", abelian_control),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (title, criterion)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let ev = criterion();
        let verdict = if ev.passed() { "PASS" } else { "FAIL" };
        println!(
            "[{verdict}] criterion {} {title} ({:.1} s)",
            i + 1,
            start.elapsed().as_secs_f64()
        );
        for (ok, line) in &ev.lines {
            println!("    {} {line}", if *ok { "ok  " } else { "FAIL" });
        }
        failed += usize::from(!ev.passed());
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
