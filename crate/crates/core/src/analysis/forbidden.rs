//! Strong forbidden sets: `F(Y, u) ⊆ Y \ {u}` of bounded size such that a
//! live `u ∈ MWB(V_t ∪ {u})` must be accepted whenever no earlier live
//! arrival lies in `F(V_t ∪ {u}, u)`.

use serde::Serialize;

use crate::instances::InstanceBundle;
use crate::matroid::{ElementId, ElementSet, MatroidView, WeightedGroundSet};
use crate::sim::{DecisionRecord, DecisionTrace, Phase};

use super::{AnalysisError, CheckOutcome};

pub trait ForbiddenSetOracle {
    fn size_bound(&self) -> usize;

    /// `F(Y, u)`. Only asked for `u ∈ MWB(Y)`.
    fn forbidden(&self, y: &ElementSet, u: ElementId) -> Result<ElementSet, AnalysisError>;
}

/// The size-2 table for the virtual algorithm on the hat graph.
///
/// With `m(Y) = min { i | t_i, b_i ∈ Y }` and
/// `next(Y, i) = min { j > i | t_j, b_j ∈ Y }`:
///
/// | `u`     | condition                          | `F(Y, u)`        |
/// |---------|------------------------------------|------------------|
/// | `e_inf` |                                    | `{t_1, b_1}`     |
/// | `t_i`   | `e_inf ∉ Y`, `i = m(Y)`            | `{b_next(Y, i)}` |
/// | `t_i`   | otherwise                          | `{b_i}`          |
/// | `b_i`   | `e_inf ∉ Y`, `i = m(Y)`            | `{b_next(Y, i)}` |
/// | `b_i`   | `t_i ∉ Y`                          | `∅`              |
///
/// A missing minimum gives the empty set. Sets are intersected with `Y`:
/// elements outside `Y` never arrive before `u`, so this does not change
/// which traces are consistent. Any other `(Y, b_i)` is reported as
/// [`AnalysisError::Uncovered`].
#[derive(Clone, Debug)]
pub struct HatForbiddenTable {
    n: usize,
    e_inf: ElementId,
    tops: Vec<ElementId>,
    bottoms: Vec<ElementId>,
}

enum HatRole {
    Infinity,
    Top(usize),
    Bottom(usize),
}

impl HatForbiddenTable {
    pub fn new(bundle: &InstanceBundle) -> Result<Self, AnalysisError> {
        if bundle.family != "hat" {
            return Err(AnalysisError::WrongFamily("hat graph"));
        }
        let n = (bundle.len() - 1) / 2;
        Ok(Self {
            n,
            e_inf: bundle.id("e_inf"),
            tops: (1..=n).map(|i| bundle.id(&format!("t_{i}"))).collect(),
            bottoms: (1..=n).map(|i| bundle.id(&format!("b_{i}"))).collect(),
        })
    }

    fn role(&self, u: ElementId) -> HatRole {
        if u == self.e_inf {
            return HatRole::Infinity;
        }
        if let Some(i) = self.tops.iter().position(|&t| t == u) {
            return HatRole::Top(i + 1);
        }
        let i = self
            .bottoms
            .iter()
            .position(|&b| b == u)
            .expect("element belongs to the hat graph");
        HatRole::Bottom(i + 1)
    }

    fn complete(&self, y: &ElementSet, i: usize) -> bool {
        y.contains(&self.tops[i - 1]) && y.contains(&self.bottoms[i - 1])
    }

    fn leftmost_complete(&self, y: &ElementSet) -> Option<usize> {
        (1..=self.n).find(|&i| self.complete(y, i))
    }

    fn next_bottom(&self, y: &ElementSet, i: usize) -> ElementSet {
        ((i + 1)..=self.n)
            .find(|&j| self.complete(y, j))
            .map(|j| self.bottoms[j - 1])
            .into_iter()
            .collect()
    }
}

impl ForbiddenSetOracle for HatForbiddenTable {
    fn size_bound(&self) -> usize {
        2
    }

    fn forbidden(&self, y: &ElementSet, u: ElementId) -> Result<ElementSet, AnalysisError> {
        let becomes_leftmost =
            |i: usize| !y.contains(&self.e_inf) && self.leftmost_complete(y) == Some(i);
        let set = match self.role(u) {
            HatRole::Infinity => [self.tops[0], self.bottoms[0]].into_iter().collect(),
            HatRole::Top(i) if becomes_leftmost(i) => self.next_bottom(y, i),
            HatRole::Top(i) => [self.bottoms[i - 1]].into_iter().collect(),
            HatRole::Bottom(i) if becomes_leftmost(i) => self.next_bottom(y, i),
            HatRole::Bottom(i) if !y.contains(&self.tops[i - 1]) => ElementSet::new(),
            HatRole::Bottom(_) => {
                return Err(AnalysisError::Uncovered {
                    element: u,
                    y: y.iter().copied().collect(),
                })
            }
        };
        Ok(set.intersection(y).copied().collect())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConsistencyReport {
    pub consistent: bool,
    /// Live arrivals whose implication was tested (`u ∈ MWB(V_t ∪ {u})`).
    pub checked: usize,
    pub first_violation: Option<DecisionRecord>,
}

/// Replays `trace` against `oracle`. For every live `u` in
/// `MWB(V_t ∪ {u})`, recomputed from scratch, if no earlier live arrival
/// lies in `F(V_t ∪ {u}, u)` then `u` must have been accepted.
pub fn check_forbidden_consistency(
    trace: &DecisionTrace,
    oracle: &dyn ForbiddenSetOracle,
    view: &MatroidView,
    weights: &WeightedGroundSet,
) -> Result<ConsistencyReport, AnalysisError> {
    let mut y = ElementSet::new();
    let mut live_before: Vec<ElementId> = Vec::new();
    let mut checked = 0;
    for record in &trace.records {
        let u = record.element;
        y.insert(u);
        if record.phase == Phase::Live {
            let mwb = view.greedy_mwb(weights, &y)?;
            if mwb.contains(&u) {
                checked += 1;
                let forbidden = oracle.forbidden(&y, u)?;
                validate(&forbidden, &y, u, oracle.size_bound())?;
                let blocked = live_before.iter().any(|x| forbidden.contains(x));
                if !blocked && !record.accepted {
                    return Ok(ConsistencyReport {
                        consistent: false,
                        checked,
                        first_violation: Some(record.clone()),
                    });
                }
            }
            live_before.push(u);
        }
    }
    Ok(ConsistencyReport {
        consistent: true,
        checked,
        first_violation: None,
    })
}

fn validate(
    forbidden: &ElementSet,
    y: &ElementSet,
    u: ElementId,
    bound: usize,
) -> Result<(), AnalysisError> {
    let fail = |reason: String| AnalysisError::Oracle { element: u, reason };
    if forbidden.len() > bound {
        return Err(fail(format!("{} elements, bound {bound}", forbidden.len())));
    }
    if let Some(x) = forbidden.iter().find(|x| **x == u || !y.contains(x)) {
        return Err(fail(format!("contains {x}")));
    }
    Ok(())
}

/// Any policy with forbidden sets accepts the first live arrival whenever
/// it lies in `MWB(V_t ∪ {u})`.
pub fn check_first_after_sample(
    trace: &DecisionTrace,
    view: &MatroidView,
    weights: &WeightedGroundSet,
) -> Result<CheckOutcome, AnalysisError> {
    let Some(at) = trace.records.iter().position(|r| r.phase == Phase::Live) else {
        return Ok(CheckOutcome::Vacuous);
    };
    let first = &trace.records[at];
    let y: ElementSet = trace.records[..=at].iter().map(|r| r.element).collect();
    if !view.greedy_mwb(weights, &y)?.contains(&first.element) {
        return Ok(CheckOutcome::Vacuous);
    }
    Ok(if first.accepted {
        CheckOutcome::Held
    } else {
        CheckOutcome::Failed
    })
}
