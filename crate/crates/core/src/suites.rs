//! Named invariant suites run by `msp verify`.
//!
//! Each suite draws its cases from `trial_rng(seed, case)` and collects
//! failures instead of stopping at the first one.

use std::fmt;

use rand::seq::IteratorRandom;
use rand::Rng;
use serde::Serialize;

use crate::analysis::{
    check_claw_blocker, check_first_after_sample, check_forbidden_consistency, check_top_element,
    estimate_with_check, AnalysisError, CheckOutcome, HatForbiddenTable,
};
use crate::instances::{hat_graph, random_graphic, uniform_instance, InstanceBundle, WeightSpec};
use crate::matroid::{ElementId, ElementSet, MatroidView, WeightedGroundSet};
use crate::policy::{PolicyName, ReferenceRule, VirtualMsp};
use crate::sim::{draw_schedule, run_policy, run_trial, trial_rng, DecisionTrace, SimConfig};

pub const SUITES: [&str; 5] = [
    "matroid-axioms",
    "mwb-lemmas",
    "equivalences",
    "claw-blocker",
    "forbidden-consistency",
];

const KEPT_FAILURES: usize = 20;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SuiteReport {
    pub suite: String,
    pub cases: u64,
    pub failure_count: u64,
    /// The first few failure descriptions.
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        Self {
            suite: suite.to_owned(),
            cases: 0,
            failure_count: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} cases, {} failures",
            self.suite, self.cases, self.failure_count
        )?;
        for line in &self.failures {
            write!(f, "\n  {line}")?;
        }
        Ok(())
    }
}

/// Parameters shared by the suites; each suite reads what it needs.
#[derive(Clone, Copy, Debug)]
pub struct SuiteParams {
    pub cases: u64,
    pub seed: u64,
    pub n: usize,
    pub p: f64,
}

pub fn run_suite(name: &str, params: &SuiteParams) -> Result<SuiteReport, AnalysisError> {
    match name {
        "matroid-axioms" => Ok(matroid_axioms(params.cases, params.seed)),
        "mwb-lemmas" => Ok(mwb_lemmas(params.cases, params.seed)),
        "equivalences" => equivalences(params.cases, params.seed),
        "claw-blocker" => claw_blocker(params.n, params.p, params.cases, params.seed),
        "forbidden-consistency" => forbidden_consistency(params.n, params.p, params.cases, params.seed),
        other => panic!("unknown suite `{other}`; callers check against SUITES"),
    }
}

/// A small instance for exhaustive checks: a random multigraph with at
/// most `max` edges, or a shuffled uniform matroid.
pub fn fuzz_instance<R: Rng + ?Sized>(rng: &mut R, max: usize) -> InstanceBundle {
    if rng.random_bool(0.75) {
        let vertices = rng.random_range(1..=5);
        let edges = rng.random_range(1..=max);
        random_graphic(vertices, edges, rng).expect("non-empty graph")
    } else {
        let n = rng.random_range(1..=max);
        let k = rng.random_range(0..=n);
        uniform_instance(n, k, WeightSpec::Shuffled(rng.random())).expect("k <= n")
    }
}

fn subset<R: Rng + ?Sized>(rng: &mut R, of: &ElementSet) -> ElementSet {
    of.iter().copied().filter(|_| rng.random_bool(0.5)).collect()
}

fn with(set: &ElementSet, u: ElementId) -> ElementSet {
    let mut out = set.clone();
    out.insert(u);
    out
}

fn subsets(items: &[ElementId]) -> impl Iterator<Item = ElementSet> + '_ {
    (0u32..1 << items.len()).map(move |mask| {
        items
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &id)| id)
            .collect()
    })
}

/// Empty set independent, downward closure and augmentation, checked
/// exhaustively on small instances and on a random minor of each.
pub fn matroid_axioms(cases: u64, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("matroid-axioms");
    for case in 0..cases {
        let rng = &mut trial_rng(seed, case);
        let bundle = fuzz_instance(rng, 8);
        let full = bundle.view.clone();
        let minor = random_minor(rng, &full);
        for view in [full, minor] {
            report.cases += 1;
            if let Err(msg) = axioms_hold(&view) {
                report.check(false, || format!("case {case}: {msg}"));
            }
        }
    }
    report
}

fn random_minor<R: Rng + ?Sized>(rng: &mut R, view: &MatroidView) -> MatroidView {
    let ground = view.ground();
    let pick = subset(rng, &ground);
    let contraction: ElementSet = {
        let mut acc = Vec::new();
        for &id in &pick {
            if view.independent_unchecked(acc.iter().copied().chain([id])) {
                acc.push(id);
            }
        }
        acc.into_iter().collect()
    };
    let rest: ElementSet = ground.difference(&contraction).copied().collect();
    let keep = subset(rng, &rest);
    view.contract(&contraction)
        .and_then(|v| v.restrict(&keep))
        .expect("contraction set is independent")
}

fn axioms_hold(view: &MatroidView) -> Result<(), String> {
    let ground: Vec<ElementId> = view.ground().into_iter().collect();
    let independent: Vec<ElementSet> = subsets(&ground)
        .filter(|s| view.is_independent(s).expect("members"))
        .collect();
    if !independent.iter().any(ElementSet::is_empty) {
        return Err("empty set is dependent".into());
    }
    let is_ind = |s: &ElementSet| independent.contains(s);
    for s in &independent {
        for &x in s {
            let mut smaller = s.clone();
            smaller.remove(&x);
            if !is_ind(&smaller) {
                return Err(format!("{s:?} independent but {smaller:?} is not"));
            }
        }
    }
    for a in &independent {
        for b in &independent {
            if b.len() > a.len() && !b.difference(a).any(|&x| is_ind(&with(a, x))) {
                return Err(format!("cannot augment {a:?} from {b:?}"));
            }
        }
    }
    Ok(())
}

/// Rank and span lemmas and the max-weight-basis lemmas on random
/// `(S, T, u)` draws. Each draw counts as one case.
pub fn mwb_lemmas(cases: u64, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("mwb-lemmas");
    for case in 0..cases {
        let rng = &mut trial_rng(seed, case);
        let bundle = fuzz_instance(rng, 10);
        let view = if rng.random_bool(0.3) {
            random_minor(rng, &bundle.view)
        } else {
            bundle.view.clone()
        };
        report.cases += 1;
        if let Err(msg) = lemmas_hold(rng, &view, &bundle.weights) {
            report.check(false, || format!("case {case}: {msg}"));
        }
    }
    report
}

fn lemmas_hold<R: Rng + ?Sized>(
    rng: &mut R,
    view: &MatroidView,
    w: &WeightedGroundSet,
) -> Result<(), String> {
    let ground = view.ground();
    let mwb = |s: &ElementSet| view.greedy_mwb(w, s).expect("members");
    let rank = |s: &ElementSet| view.rank(s).expect("members");
    let span = |s: &ElementSet| view.span(s).expect("members");
    let s = subset(rng, &ground);
    let t = subset(rng, &s);
    let other = subset(rng, &ground);
    let outside = ground.difference(&s).copied().choose(rng);

    // MWB(S) ∩ T ⊆ MWB(T), with equality for weight prefixes of S.
    let ms = mwb(&s);
    let mt = mwb(&t);
    if !ms.intersection(&t).all(|x| mt.contains(x)) {
        return Err(format!("MWB(S) ∩ T ⊄ MWB(T) for S={s:?} T={t:?}"));
    }
    let mut sorted: Vec<ElementId> = s.iter().copied().collect();
    w.sort_descending(&mut sorted);
    let cut = rng.random_range(0..=sorted.len());
    let prefix: ElementSet = sorted[..cut].iter().copied().collect();
    let inter: ElementSet = ms.intersection(&prefix).copied().collect();
    if inter != mwb(&prefix) {
        return Err(format!("prefix equality fails for S={s:?} prefix={prefix:?}"));
    }

    // Greedy accepts u_i iff u_i ∉ span(heavier accepted).
    let mut accepted = ElementSet::new();
    for &x in &sorted {
        let free = !span(&accepted).contains(&x);
        if free != ms.contains(&x) {
            return Err(format!("greedy criterion fails at {x} in S={s:?}"));
        }
        if free {
            accepted.insert(x);
        }
    }

    if let Some(u) = outside {
        let su = with(&s, u);
        let msu = mwb(&su);
        if ms.difference(&msu).count() > 1 {
            return Err(format!("adding {u} to {s:?} drops more than one element"));
        }
        if msu != mwb(&with(&ms, u)) {
            return Err(format!("MWB(S ∪ u) ≠ MWB(MWB(S) ∪ u) for S={s:?} u={u}"));
        }
        let (r, ru) = (rank(&s), rank(&su));
        if ru < r || ru > r + 1 {
            return Err(format!("rank jumps from {r} to {ru} adding {u}"));
        }
    }

    if rank(&s) + rank(&other)
        < rank(&s.union(&other).copied().collect()) + rank(&s.intersection(&other).copied().collect())
    {
        return Err(format!("submodularity fails for {s:?}, {other:?}"));
    }
    if !span(&t).is_subset(&span(&s)) {
        return Err(format!("span not monotone for T={t:?} ⊆ S={s:?}"));
    }

    // SpanTheSame on I = MWB(other) and every pair outside span(I).
    let i = mwb(&other);
    let span_i = span(&i);
    let free: Vec<ElementId> = ground.difference(&span_i).copied().collect();
    for &a in &free {
        for &b in &free {
            if a != b && span(&with(&i, b)).contains(&a) && span(&with(&i, a)) != span(&with(&i, b)) {
                return Err(format!("span(I ∪ {a}) ≠ span(I ∪ {b}) for I={i:?}"));
            }
        }
    }
    Ok(())
}

fn accept_flags(trace: &DecisionTrace) -> Vec<bool> {
    trace.records.iter().map(|r| r.accepted).collect()
}

/// Policy pairs that must decide identically, over `runs` seeded runs per
/// pair: SAMPLE-CONTRACTED vs the greedy framework (any matroid),
/// SAMPLE-CONTRACTED vs Optimistic and the virtual algorithm vs its
/// uniform form (k-uniform). The virtual runs also recompute `MWB(V_t)`
/// from scratch at every arrival, and greedy traces must satisfy the
/// top-element property.
pub fn equivalences(runs: u64, seed: u64) -> Result<SuiteReport, AnalysisError> {
    let mut report = SuiteReport::new("equivalences");
    let greedy = PolicyName::Greedy(ReferenceRule::SampleContracted);
    for run in 0..runs {
        let rng = &mut trial_rng(seed, run);
        let graphic = if rng.random_bool(0.5) {
            random_graphic(rng.random_range(2..=6), rng.random_range(1..=12), rng)?
        } else {
            random_uniform(rng)?
        };
        let uniform = random_uniform(rng)?;
        let k = uniform.view.base().uniform_rank().expect("uniform");
        let p = rng.random_range(0.05..0.95);
        let s1 = draw_schedule(graphic.len(), rng);
        let s2 = draw_schedule(uniform.len(), rng);

        let run_named = |policy: &PolicyName, b: &InstanceBundle, s| {
            run_trial(policy, &b.view, &b.weights, s, p)
        };

        let a = run_named(&PolicyName::SampleContracted, &graphic, &s1)?;
        let b = run_named(&greedy, &graphic, &s1)?;
        report.cases += 1;
        report.check(accept_flags(&a) == accept_flags(&b), || {
            format!("run {run}: sample-contracted {:?} vs greedy {:?}", a.accepted, b.accepted)
        });
        report.check(check_top_element(&b, &graphic.view, &graphic.weights).is_none(), || {
            format!("run {run}: greedy skipped a top element")
        });

        let a = run_named(&PolicyName::SampleContracted, &uniform, &s2)?;
        let b = run_named(&PolicyName::Optimistic { k }, &uniform, &s2)?;
        report.cases += 1;
        report.check(accept_flags(&a) == accept_flags(&b), || {
            format!("run {run}: sample-contracted {:?} vs optimistic {:?}", a.accepted, b.accepted)
        });

        let mut checked = VirtualMsp::cross_checked();
        let a = run_policy(&mut checked, &uniform.view, &uniform.weights, &s2, p)?;
        let b = run_named(&PolicyName::VirtualUniform { k }, &uniform, &s2)?;
        report.cases += 1;
        report.check(accept_flags(&a) == accept_flags(&b), || {
            format!("run {run}: virtual-msp {:?} vs virtual-uniform {:?}", a.accepted, b.accepted)
        });
    }
    Ok(report)
}

fn random_uniform<R: Rng + ?Sized>(rng: &mut R) -> Result<InstanceBundle, AnalysisError> {
    let n = rng.random_range(1..=12);
    let k = rng.random_range(1..=n.min(4));
    Ok(uniform_instance(n, k, WeightSpec::Shuffled(rng.random()))?)
}

/// Virtual algorithm on the hat graph: the leftmost sampled claw blocks the
/// others and `e_inf` is accepted.
pub fn claw_blocker(n: usize, p: f64, trials: u64, seed: u64) -> Result<SuiteReport, AnalysisError> {
    let bundle = hat_graph(n)?;
    let config = SimConfig::new(p, seed, trials)?;
    let (_, tally) = estimate_with_check(&PolicyName::VirtualMsp, &bundle, &config, |trace, _| {
        check_claw_blocker(trace, &bundle)
    })?;
    let mut report = SuiteReport::new("claw-blocker");
    report.cases = tally.held + tally.vacuous + tally.failed;
    report.failure_count = tally.failed;
    if let Some(trial) = tally.first_failure {
        report.failures.push(format!("trial {trial} breaks the claw blocker"));
    }
    Ok(report)
}

/// The hat-graph forbidden-set table and the first-after-sample lemma
/// against virtual-algorithm traces.
pub fn forbidden_consistency(
    n: usize,
    p: f64,
    trials: u64,
    seed: u64,
) -> Result<SuiteReport, AnalysisError> {
    let bundle = hat_graph(n)?;
    let table = HatForbiddenTable::new(&bundle)?;
    let mut report = SuiteReport::new("forbidden-consistency");
    for trial in 0..trials {
        let schedule = draw_schedule(bundle.len(), &mut trial_rng(seed, trial));
        let trace = run_trial(&PolicyName::VirtualMsp, &bundle.view, &bundle.weights, &schedule, p)?;
        report.cases += 1;
        let table_check = check_forbidden_consistency(&trace, &table, &bundle.view, &bundle.weights)?;
        report.check(table_check.consistent, || {
            let r = table_check.first_violation.as_ref().expect("inconsistent");
            format!(
                "trial {trial}: {} rejected with no forbidden element live before it",
                bundle.weights.label(r.element)
            )
        });
        let first = check_first_after_sample(&trace, &bundle.view, &bundle.weights)?;
        report.check(first != CheckOutcome::Failed, || {
            format!("trial {trial}: first live optimal arrival rejected")
        });
    }
    Ok(report)
}
