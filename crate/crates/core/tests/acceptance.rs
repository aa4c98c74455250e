//! The ten acceptance criteria. One driver runs them all, prints a
//! PASS/FAIL line for each, and fails if any criterion failed.

mod common;

use std::time::{Duration, Instant};

use msp::analysis::{
    brute_force_mwb, certify_no_size1_strong_fs, check_claw_blocker, check_first_after_sample,
    check_forbidden_consistency, check_modified_hat_lemma1, estimate_with_check,
    modified_hat_bounds, CheckOutcome, EstimateReport, HatForbiddenTable,
};
use msp::fixtures::Fixture;
use msp::instances::{hat_graph, modified_hat_graph, random_graphic, uniform_instance, WeightSpec};
use msp::matroid::ElementSet;
use msp::policy::PolicyName;
use msp::sim::{draw_schedule, run_trial, trial_rng, SimConfig};
use msp::suites::{equivalences, mwb_lemmas};
use rand::Rng;

const SEED: u64 = 42;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: String) -> Verdict {
    Verdict { pass, detail }
}

fn sigma(freq: f64, trials: u64) -> f64 {
    (freq * (1.0 - freq) / trials as f64).sqrt()
}

fn e_inf_freq(report: &EstimateReport, id: msp::matroid::ElementId) -> f64 {
    report.freq(id).expect("e_inf is optimal").freq
}

fn within(elapsed: Duration, limit_secs: u64) -> bool {
    elapsed < Duration::from_secs(limit_secs)
}

fn oracle_equivalence() -> Verdict {
    let start = Instant::now();
    let mut mismatches = 0;
    let mut cases = 0;
    for case in 0..250u64 {
        let rng = &mut trial_rng(SEED, case);
        let bundle = if case < 200 {
            let edges = rng.random_range(1..=8);
            random_graphic(rng.random_range(1..=5), edges, rng).unwrap()
        } else {
            let n = rng.random_range(1..=10);
            uniform_instance(n, rng.random_range(0..=n), WeightSpec::Shuffled(rng.random())).unwrap()
        };
        let ground = bundle.view.ground();
        let greedy = bundle.view.greedy_mwb(&bundle.weights, &ground).unwrap();
        let library = brute_force_mwb(&bundle.view, &bundle.weights, &ground).unwrap();
        let ours = common::max_weight_independent(
            bundle.view.base(),
            &bundle.weights,
            &ElementSet::new(),
            &ground,
        );
        cases += 1;
        if greedy != library || greedy != ours {
            mismatches += 1;
        }
    }
    let elapsed = start.elapsed();
    verdict(
        mismatches == 0 && within(elapsed, 10),
        format!("{cases} instances, {mismatches} mismatches, {elapsed:.2?}"),
    )
}

fn lemma_suite() -> Verdict {
    let start = Instant::now();
    let report = mwb_lemmas(10_000, SEED);
    let elapsed = start.elapsed();
    verdict(
        report.passed() && report.cases >= 10_000 && within(elapsed, 60),
        format!("{report}, {elapsed:.2?}"),
    )
}

fn equivalence_traces() -> Verdict {
    let report = equivalences(1000, SEED).unwrap();
    verdict(report.passed() && report.cases == 3000, report.to_string())
}

fn counterexample_replays() -> Verdict {
    let expected: [(&str, &[&str], &[&str]); 3] = [
        ("triangle-sample", &["e1", "e2"], &[]),
        ("triangle-greedy", &["e2"], &["e1"]),
        ("uniform-virtual-stream", &["2", "5"], &["4"]),
    ];
    let mut failures = Vec::new();
    for (name, accepted, rejected) in expected {
        let fixture = Fixture::load(name).unwrap();
        let trace = fixture.replay().unwrap().trace;
        let b = &fixture.bundle;
        let ok = trace.accepted == b.ids(accepted)
            && rejected.iter().all(|r| {
                let rec = trace.record(b.id(r)).unwrap();
                !rec.accepted && rec.phase == msp::sim::Phase::Live
            });
        if !ok {
            failures.push(name);
        }
    }
    verdict(failures.is_empty(), format!("3 replays, mismatched: {failures:?}"))
}

/// Runs criteria 5 and 6 on the same trials.
fn hat_graph_bound() -> (Verdict, Verdict) {
    let trials = 100_000;
    let bundle = hat_graph(10).unwrap();
    let config = SimConfig::new(0.5, SEED, trials).unwrap();
    let start = Instant::now();
    let (report, tally) = estimate_with_check(&PolicyName::VirtualMsp, &bundle, &config, |trace, _| {
        check_claw_blocker(trace, &bundle)
    })
    .unwrap();
    let elapsed = start.elapsed();

    let e_inf = e_inf_freq(&report, bundle.id("e_inf"));
    let e_inf_ok = e_inf >= 0.125 - 3.0 * sigma(e_inf, trials);
    let min = report.min_over_mwb;
    let min_ok = min >= 0.25 - 3.0 * sigma(min, trials);
    let bound = verdict(
        e_inf_ok && min_ok && within(elapsed, 300),
        format!(
            "Pr[e_inf] = {e_inf:.5} (bound 0.125), min over MWB = {min:.5} (bound 0.25), {elapsed:.2?}"
        ),
    );
    let blocker = verdict(
        tally.failed == 0 && tally.held > 0,
        format!("{} trials met the premise, {} failed", tally.held + tally.failed, tally.failed),
    );
    (bound, blocker)
}

fn modified_hat_degradation() -> Verdict {
    let trials = 20_000;
    let p = 0.5;
    let mut lines = Vec::new();
    let mut bound_ok = true;
    let mut lemma_failures = 0;
    let mut lemma_applied = 0;
    let mut freqs = Vec::new();
    for n in [4, 16, 64] {
        let bundle = modified_hat_graph(n).unwrap();
        let config = SimConfig::new(p, SEED, trials).unwrap();
        let (report, tally) =
            estimate_with_check(&PolicyName::VirtualMsp, &bundle, &config, |trace, schedule| {
                check_modified_hat_lemma1(trace, schedule, &bundle)
            })
            .unwrap();
        let f = e_inf_freq(&report, bundle.id("e_inf"));
        let upper = 1.0 - modified_hat_bounds(n, p).unwrap().rejection_lower_bound;
        bound_ok &= f <= upper + 3.0 * sigma(f, trials);
        lemma_failures += tally.failed;
        lemma_applied += tally.held + tally.failed;
        lines.push(format!("n={n}: Pr[e_inf] = {f:.5} (upper {upper:.5})"));
        freqs.push(f);
    }
    let monotone = freqs.windows(2).all(|w| {
        let radius = 3.0 * (sigma(w[0], trials).powi(2) + sigma(w[1], trials).powi(2)).sqrt();
        w[1] <= w[0] + radius
    });
    verdict(
        bound_ok && monotone && lemma_failures == 0,
        format!(
            "{}; under bounds: {bound_ok}; non-increasing: {monotone}; lemma checker failed in {lemma_failures} of {lemma_applied} applicable trials",
            lines.join(", ")
        ),
    )
}

fn forbidden_set_consistency() -> Verdict {
    let trials = 10_000;
    let bundle = hat_graph(5).unwrap();
    let table = HatForbiddenTable::new(&bundle).unwrap();
    let mut table_violations = 0;
    let mut first_violation = None;
    let mut lemma_failures = 0;
    for trial in 0..trials {
        let schedule = draw_schedule(bundle.len(), &mut trial_rng(SEED, trial));
        let trace =
            run_trial(&PolicyName::VirtualMsp, &bundle.view, &bundle.weights, &schedule, 0.5).unwrap();
        let report = check_forbidden_consistency(&trace, &table, &bundle.view, &bundle.weights).unwrap();
        if !report.consistent {
            table_violations += 1;
            first_violation.get_or_insert(trial);
        }
        if check_first_after_sample(&trace, &bundle.view, &bundle.weights).unwrap() == CheckOutcome::Failed {
            lemma_failures += 1;
        }
    }
    verdict(
        table_violations == 0 && lemma_failures == 0,
        format!(
            "{trials} traces, table violations {table_violations} (first trial {first_violation:?}), first-after-sample failures {lemma_failures}"
        ),
    )
}

fn impossibility_certificate() -> Verdict {
    let start = Instant::now();
    let cert = certify_no_size1_strong_fs().unwrap();
    let elapsed = start.elapsed();
    let bundle = msp::instances::double_triangle();
    // Re-check every forced set with the independent oracle.
    let all_dependent = cert.violations.iter().all(|v| {
        let ids: ElementSet = v.forced_accepted.iter().map(|l| bundle.id(l)).collect();
        !common::independent(bundle.view.base(), &ids)
    });
    let cycle = cert.violations.iter().any(|v| {
        v.stage == 2 && v.forced_accepted == ["e_{1,2}", "e_{2,2}", "e_{3,2}"]
    });
    verdict(
        cert.complete() && all_dependent && cycle && within(elapsed, 1),
        format!(
            "{} of {} assignments violated, three-cycle found: {cycle}, {elapsed:.2?}",
            cert.violations.len(),
            cert.checked_assignments
        ),
    )
}

fn dynkin_sanity() -> Verdict {
    let trials = 100_000;
    let p = (-1.0f64).exp();
    let bundle = uniform_instance(200, 1, WeightSpec::Identity).unwrap();
    let config = SimConfig::new(p, SEED, trials).unwrap();
    let (report, _) =
        estimate_with_check(&PolicyName::Dynkin, &bundle, &config, |_, _| Ok(CheckOutcome::Vacuous))
            .unwrap();
    let f = report.min_over_mwb;
    let analytic = p * (1.0 / p).ln();
    let exact = common::dynkin_exact(200, p);
    let ok = (f - p).abs() <= 0.02
        && (f - analytic).abs() <= 0.02
        && (f - exact).abs() <= 3.0 * sigma(exact, trials);
    verdict(
        ok,
        format!("Pr[best] = {f:.5}, p ln(1/p) = {analytic:.5}, exact n=200 value {exact:.5}"),
    )
}

#[test]
fn acceptance_criteria() {
    let mut results = vec![
        ("oracle equivalence", oracle_equivalence()),
        ("lemma suite", lemma_suite()),
        ("equivalence traces", equivalence_traces()),
        ("counterexample replays", counterexample_replays()),
    ];
    let (bound, blocker) = hat_graph_bound();
    results.push(("hat graph bound", bound));
    results.push(("claw-blocker invariant", blocker));
    results.push(("modified hat degradation", modified_hat_degradation()));
    results.push(("forbidden-set consistency", forbidden_set_consistency()));
    results.push(("impossibility certificate", impossibility_certificate()));
    results.push(("dynkin sanity", dynkin_sanity()));

    for (i, (name, v)) in results.iter().enumerate() {
        let tag = if v.pass { "PASS" } else { "FAIL" };
        println!("{tag} criterion {}: {name}: {}", i + 1, v.detail);
    }
    let failed: Vec<_> = results
        .iter()
        .enumerate()
        .filter(|(_, (_, v))| !v.pass)
        .map(|(i, _)| i + 1)
        .collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
