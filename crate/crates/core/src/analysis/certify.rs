//! Exhaustive check that no policy has strong forbidden sets of size 1 on
//! the double triangle.
//!
//! Stage 1: for each side `i`, each `Y ⊇ {e_{i,1}, e_{i,2}}` with
//! `e_{i,2} ∈ MWB(Y)`, and each choice `F(Y, e_{i,2}) = {f}` with
//! `f ∉ {e_{i,1}, e_{i,2}}` (or `∅`): sample `f`, send `e_{i,1}` first
//! live, then the rest of `Y`, then `e_{i,2}`. Both parallel edges are
//! forced in. Stage 2 covers the remaining family `F(Y, e_{i,2}) = {e_{i,1}}`:
//! sampling every `e_{i,1}` forces the cycle `e_{1,2}, e_{2,2}, e_{3,2}`.

use serde::Serialize;

use crate::instances::{double_triangle, InstanceBundle};
use crate::matroid::{ElementId, ElementSet};
use crate::sim::{forced_schedule, ArrivalSchedule};

use super::AnalysisError;

const P: f64 = 0.5;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CertificateViolation {
    pub stage: u8,
    /// Human-readable `F(Y, u) = ...` assignment.
    pub assignment: String,
    /// `(label, time)` in arrival order.
    pub schedule: Vec<(String, f64)>,
    pub p: f64,
    /// Live elements the forbidden-set rule forces into `A`; dependent.
    pub forced_accepted: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ImpossibilityCertificate {
    pub checked_assignments: usize,
    pub violations: Vec<CertificateViolation>,
}

impl ImpossibilityCertificate {
    /// Every checked assignment produced a dependent forced set.
    pub fn complete(&self) -> bool {
        self.checked_assignments > 0 && self.violations.len() == self.checked_assignments
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

/// A partial strong forbidden-set assignment: `Some(F)` where fixed.
type Assignment<'a> = dyn Fn(&ElementSet, ElementId) -> Option<ElementSet> + 'a;

/// Live elements that any policy consistent with `assign` must accept.
/// Where `F(Y, u)` is not fixed, only the first live arrival is forced,
/// since then no earlier live element can be forbidden.
fn forced_acceptances(
    bundle: &InstanceBundle,
    schedule: &ArrivalSchedule,
    assign: &Assignment<'_>,
) -> Result<ElementSet, AnalysisError> {
    let mut y = ElementSet::new();
    let mut live_before: Vec<ElementId> = Vec::new();
    let mut forced = ElementSet::new();
    for &u in schedule.order() {
        y.insert(u);
        if schedule.time(u).expect("scheduled") < P {
            continue;
        }
        if bundle.view.greedy_mwb(&bundle.weights, &y)?.contains(&u) {
            let free = match assign(&y, u) {
                Some(f) => !live_before.iter().any(|x| f.contains(x)),
                None => live_before.is_empty(),
            };
            if free {
                forced.insert(u);
            }
        }
        live_before.push(u);
    }
    Ok(forced)
}

fn schedule_for(
    sampled: &[ElementId],
    live: &[ElementId],
) -> Result<ArrivalSchedule, AnalysisError> {
    let mut times = Vec::new();
    for (k, &id) in sampled.iter().enumerate() {
        times.push((id, 0.1 + 0.05 * k as f64));
    }
    for (k, &id) in live.iter().enumerate() {
        times.push((id, P + 0.05 * k as f64));
    }
    Ok(forced_schedule(&times)?)
}

fn violation(
    bundle: &InstanceBundle,
    stage: u8,
    assignment: String,
    schedule: &ArrivalSchedule,
    forced: &ElementSet,
) -> Result<Option<CertificateViolation>, AnalysisError> {
    if bundle.view.is_independent(forced)? {
        return Ok(None);
    }
    let label = |id: ElementId| bundle.weights.label(id).to_owned();
    Ok(Some(CertificateViolation {
        stage,
        assignment,
        schedule: schedule
            .order()
            .iter()
            .map(|&id| (label(id), schedule.time(id).expect("scheduled")))
            .collect(),
        p: P,
        forced_accepted: forced.iter().map(|&id| label(id)).collect(),
    }))
}

fn names(bundle: &InstanceBundle, set: &ElementSet) -> String {
    let labels: Vec<&str> = set.iter().map(|&id| bundle.weights.label(id)).collect();
    format!("{{{}}}", labels.join(", "))
}

pub fn certify_no_size1_strong_fs() -> Result<ImpossibilityCertificate, AnalysisError> {
    let bundle = double_triangle();
    let e = |i: usize, j: usize| bundle.id(&format!("e_{{{i},{j}}}"));
    let all: Vec<ElementId> = bundle.view.ground().into_iter().collect();
    let mut checked = 0;
    let mut violations = Vec::new();

    for i in 1..=3 {
        let (low, high) = (e(i, 1), e(i, 2));
        let others: Vec<ElementId> = all.iter().copied().filter(|&x| x != low && x != high).collect();
        for mask in 0u32..(1 << others.len()) {
            let rest: Vec<ElementId> = others
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &x)| x)
                .collect();
            let mut y: ElementSet = rest.iter().copied().collect();
            y.extend([low, high]);
            if !bundle.view.greedy_mwb(&bundle.weights, &y)?.contains(&high) {
                continue;
            }
            let choices = rest.iter().copied().map(Some).chain([None]);
            for f in choices {
                checked += 1;
                let mut live = vec![low];
                live.extend(rest.iter().copied().filter(|&x| Some(x) != f));
                live.push(high);
                live.extend(all.iter().copied().filter(|x| !y.contains(x)));
                let sampled: Vec<ElementId> = f.into_iter().collect();
                let schedule = schedule_for(&sampled, &live)?;

                let fixed: ElementSet = f.into_iter().collect();
                let target_y = y.clone();
                let assign = move |yy: &ElementSet, u: ElementId| {
                    (u == high && *yy == target_y).then(|| fixed.clone())
                };
                let forced = forced_acceptances(&bundle, &schedule, &assign)?;
                let text = format!(
                    "F({}, {}) = {}",
                    names(&bundle, &y),
                    bundle.weights.label(high),
                    names(&bundle, &f.into_iter().collect()),
                );
                violations.extend(violation(&bundle, 1, text, &schedule, &forced)?);
            }
        }
    }

    // Stage 2: F(Y, e_{i,2}) = {e_{i,1}} whenever e_{i,1} ∈ Y.
    checked += 1;
    let sampled = [e(1, 1), e(2, 1), e(3, 1)];
    let live = [e(1, 2), e(2, 2), e(3, 2)];
    let schedule = schedule_for(&sampled, &live)?;
    let assign = |y: &ElementSet, u: ElementId| {
        (1..=3)
            .find(|&i| u == e(i, 2) && y.contains(&e(i, 1)))
            .map(|i| [e(i, 1)].into_iter().collect())
    };
    let forced = forced_acceptances(&bundle, &schedule, &assign)?;
    let text = "F(Y, e_{i,2}) = {e_{i,1}} for every Y containing e_{i,1}".to_owned();
    violations.extend(violation(&bundle, 2, text, &schedule, &forced)?);

    Ok(ImpossibilityCertificate {
        checked_assignments: checked,
        violations,
    })
}
