//! Trace checkers for the hat-graph lemmas and the top-element property.

use crate::instances::InstanceBundle;
use crate::matroid::{ElementSet, MatroidView, WeightedGroundSet};
use crate::sim::{ArrivalSchedule, DecisionRecord, DecisionTrace, Phase};

use super::{AnalysisError, CheckOutcome};

fn outcome(ok: bool) -> CheckOutcome {
    if ok {
        CheckOutcome::Held
    } else {
        CheckOutcome::Failed
    }
}

/// If `t_1, b_1` are sampled and `e_inf` is not, then no claw has both
/// edges accepted before `e_inf` arrives, and `e_inf` is accepted.
pub fn check_claw_blocker(
    trace: &DecisionTrace,
    bundle: &InstanceBundle,
) -> Result<CheckOutcome, AnalysisError> {
    if bundle.family != "hat" {
        return Err(AnalysisError::WrongFamily("hat graph"));
    }
    let n = (bundle.len() - 1) / 2;
    let e_inf = bundle.id("e_inf");
    let s = &trace.sample_set;
    if !s.contains(&bundle.id("t_1")) || !s.contains(&bundle.id("b_1")) || s.contains(&e_inf) {
        return Ok(CheckOutcome::Vacuous);
    }
    let before = trace.accepted_before(e_inf);
    let claw_accepted = (1..=n).any(|i| {
        before.contains(&bundle.id(&format!("t_{i}")))
            && before.contains(&bundle.id(&format!("b_{i}")))
    });
    Ok(outcome(!claw_accepted && trace.accepted.contains(&e_inf)))
}

/// For every claw `i` with `2_i` sampled, `1_i, 3_i, 4_i, e_inf` live in
/// that order, and some `j < i` with `2_j, 3_j, 4_j` sampled, both `1_i`
/// and `4_i` are accepted.
pub fn check_modified_hat_lemma1(
    trace: &DecisionTrace,
    schedule: &ArrivalSchedule,
    bundle: &InstanceBundle,
) -> Result<CheckOutcome, AnalysisError> {
    if bundle.family != "modified-hat" {
        return Err(AnalysisError::WrongFamily("modified hat graph"));
    }
    let n = (bundle.len() - 1) / 4;
    let s = &trace.sample_set;
    let edge = |class: usize, i: usize| bundle.id(&format!("{class}_{i}"));
    let time = |name| schedule.time(name).expect("schedule covers the instance");
    let e_inf = bundle.id("e_inf");
    if s.contains(&e_inf) {
        return Ok(CheckOutcome::Vacuous);
    }

    // Smallest j whose 2_j, 3_j, 4_j are all sampled.
    let blocker = (1..=n).find(|&j| (2..=4).all(|c| s.contains(&edge(c, j))));
    let Some(j) = blocker else {
        return Ok(CheckOutcome::Vacuous);
    };
    let mut applies = false;
    for i in (j + 1)..=n {
        let chain = [edge(1, i), edge(3, i), edge(4, i), e_inf];
        let ordered = chain.windows(2).all(|w| time(w[0]) < time(w[1]));
        let live = chain.iter().all(|x| !s.contains(x));
        if s.contains(&edge(2, i)) && live && ordered {
            applies = true;
            if !trace.accepted.contains(&edge(1, i)) || !trace.accepted.contains(&edge(4, i)) {
                return Ok(CheckOutcome::Failed);
            }
        }
    }
    Ok(if applies {
        CheckOutcome::Held
    } else {
        CheckOutcome::Vacuous
    })
}

/// Greedy-framework property: a live `u` heavier than everything seen so
/// far with `A_t ∪ {u}` independent is accepted. Returns the first record
/// where this fails, or `None`.
pub fn check_top_element(
    trace: &DecisionTrace,
    view: &MatroidView,
    weights: &WeightedGroundSet,
) -> Option<DecisionRecord> {
    let mut heaviest = None;
    let mut accepted = ElementSet::new();
    for r in &trace.records {
        let u = r.element;
        let top = heaviest.is_none_or(|h| weights.heavier(u, h));
        if top {
            heaviest = Some(u);
        }
        if r.phase == Phase::Live {
            let free = view.independent_unchecked(accepted.iter().copied().chain([u]));
            if top && free && !r.accepted {
                return Some(r.clone());
            }
            if r.accepted {
                accepted.insert(u);
            }
        }
    }
    None
}
